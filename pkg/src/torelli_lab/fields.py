"""Exact arithmetic for the rationals and for finite fields GF(p^k).

Field contexts are immutable and interned: ``GF(5)`` always returns the same
object, and two contexts are interoperable only when structurally equal.
Elements are thin wrappers (:class:`FieldElem`) around a raw canonical value:

* rationals -- ``fractions.Fraction`` (lowest terms, positive denominator),
* GF(p)     -- an ``int`` residue in ``[0, p)``,
* GF(p^k)   -- an ``int`` code whose base-p digits are the coefficients of
  the representative polynomial in ``t``, constant digit first.

The raw layer is what the polynomial and linear-algebra layers operate on;
wrappers appear only at API boundaries.  Everything is exact -- there is no
floating point anywhere in this package.
"""

from fractions import Fraction

from .errors import (
    CtxMismatch,
    DegreeZero,
    DivideByZero,
    NotPrime,
    ParseError,
    WrongCharacteristic,
)

_TABLE_MAX = 1 << 16  # largest extension-field order given exp/log tables
_PAIR_TABLE_MAX = 512  # largest order given full 2D add/sub/mul tables


def is_prime(n):
    """Deterministic trial-division primality check."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class FieldElem:
    """An element of a field context, stored in canonical reduced form."""

    __slots__ = ("field", "v")

    def __init__(self, field, v):
        self.field = field
        self.v = v

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.field is self.field or other.field == self.field:
                return other.v
            raise CtxMismatch(f"cannot mix {self.field} and {other.field}")
        if isinstance(other, int) or (
            isinstance(other, Fraction) and self.field.char == 0
        ):
            return self.field.rfrom_int(other) if isinstance(other, int) else other
        return None

    def __add__(self, other):
        w = self._coerce(other)
        if w is None:
            return NotImplemented
        return FieldElem(self.field, self.field.radd(self.v, w))

    __radd__ = __add__

    def __sub__(self, other):
        w = self._coerce(other)
        if w is None:
            return NotImplemented
        return FieldElem(self.field, self.field.rsub(self.v, w))

    def __rsub__(self, other):
        w = self._coerce(other)
        if w is None:
            return NotImplemented
        return FieldElem(self.field, self.field.rsub(w, self.v))

    def __mul__(self, other):
        w = self._coerce(other)
        if w is None:
            return NotImplemented
        return FieldElem(self.field, self.field.rmul(self.v, w))

    __rmul__ = __mul__

    def __truediv__(self, other):
        w = self._coerce(other)
        if w is None:
            return NotImplemented
        return FieldElem(self.field, self.field.rdiv(self.v, w))

    def __rtruediv__(self, other):
        w = self._coerce(other)
        if w is None:
            return NotImplemented
        return FieldElem(self.field, self.field.rdiv(w, self.v))

    def __neg__(self):
        return FieldElem(self.field, self.field.rneg(self.v))

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        f = self.field
        base = self.v
        if n < 0:
            base = f.rinv(base)
            n = -n
        acc = f.rone
        while n:
            if n & 1:
                acc = f.rmul(acc, base)
            base = f.rmul(base, base)
            n >>= 1
        return FieldElem(f, acc)

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field == other.field and self.v == other.v
        if isinstance(other, int):
            return self.v == self.field.rfrom_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.v))

    def __bool__(self):
        return self.v != self.field.rzero

    @property
    def is_zero(self):
        return self.v == self.field.rzero

    def sort_key(self):
        """Total order on elements of one field, used for canonical output."""
        return self.field.rsort_key(self.v)

    def __str__(self):
        return self.field.rstr(self.v)

    def __repr__(self):
        return f"<{self} in {self.field}>"


class Field:
    """Base class for field contexts.  Subclasses implement the raw ops."""

    char = None
    order = None  # None means infinite

    @property
    def is_finite(self):
        return self.order is not None

    def __call__(self, v):
        """Canonicalize ``v`` into a FieldElem of this field."""
        return FieldElem(self, self.rcanon(v))

    @property
    def zero(self):
        return FieldElem(self, self.rzero)

    @property
    def one(self):
        return FieldElem(self, self.rone)

    def rdiv(self, a, b):
        return self.rmul(a, self.rinv(b))

    def rsort_key(self, v):
        return v

    def random(self, rng):
        """Uniform random element (finite fields) via the given rng."""
        return FieldElem(self, self.relement_at(rng.randrange(self.order)))

    def random_nonzero(self, rng):
        return FieldElem(self, self.relement_at(rng.randrange(1, self.order)))

    def elements(self):
        return (FieldElem(self, self.relement_at(i)) for i in range(self.order))


class RationalField(Field):
    """The field of rational numbers, elements held as Fractions."""

    char = 0
    rzero = Fraction(0)
    rone = Fraction(1)

    def rcanon(self, v):
        if isinstance(v, FieldElem):
            if v.field == self:
                return v.v
            raise CtxMismatch(f"cannot coerce from {v.field}")
        if isinstance(v, (int, Fraction)):
            return Fraction(v)
        if isinstance(v, tuple) and len(v) == 2:
            return Fraction(v[0], v[1])
        raise TypeError(f"cannot make a rational from {v!r}")

    def rfrom_int(self, n):
        return Fraction(n)

    def radd(self, a, b):
        return a + b

    def rsub(self, a, b):
        return a - b

    def rmul(self, a, b):
        return a * b

    def rneg(self, a):
        return -a

    def rinv(self, a):
        if a == 0:
            raise DivideByZero("division by zero in Q")
        return 1 / a

    def rstr(self, v):
        return str(v)

    def random(self, rng):
        return FieldElem(self, Fraction(rng.randint(-999, 999), rng.randint(1, 60)))

    def random_nonzero(self, rng):
        while True:
            e = self.random(rng)
            if not e.is_zero:
                return e

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __str__(self):
        return "Q"

    __repr__ = __str__


QQ = RationalField()


class PrimeField(Field):
    """GF(p) with int residues in [0, p)."""

    rzero = 0
    rone = 1

    def __init__(self, p):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        self.p = p
        self.char = p
        self.order = p

    def rcanon(self, v):
        if isinstance(v, FieldElem):
            if v.field == self:
                return v.v
            raise CtxMismatch(f"cannot coerce from {v.field}")
        if isinstance(v, int):
            return v % self.p
        raise TypeError(f"cannot make a GF({self.p}) element from {v!r}")

    def rfrom_int(self, n):
        return n % self.p

    def radd(self, a, b):
        return (a + b) % self.p

    def rsub(self, a, b):
        return (a - b) % self.p

    def rmul(self, a, b):
        return (a * b) % self.p

    def rneg(self, a):
        return -a % self.p

    def rinv(self, a):
        if a == 0:
            raise DivideByZero(f"division by zero in GF({self.p})")
        return pow(a, self.p - 2, self.p)

    def relement_at(self, i):
        return i

    def rstr(self, v):
        return str(v)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __str__(self):
        return f"GF({self.p})"

    __repr__ = __str__


# --- integer-coded polynomials over GF(p), used only to build extensions ---

def _zp_normalize(c, p):
    c = [x % p for x in c]
    while c and c[-1] == 0:
        c.pop()
    return c


def _zp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _zp_normalize(out, p)


def _zp_mod(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - dm
            for i, mi in enumerate(m):
                a[shift + i] = (a[shift + i] - lead * mi) % p
        a.pop()
    return _zp_normalize(a, p)


def _zp_divides(d, a, p):
    """Does monic d divide a over GF(p)?"""
    return not _zp_mod(a, d, p)


def _modulus_digits(n, p, deg):
    """nth candidate lower-coefficient vector, little-endian, length deg."""
    out = []
    for _ in range(deg):
        out.append(n % p)
        n //= p
    return out


def _find_modulus(p, k):
    """Lexicographically least monic irreducible of degree k over GF(p).

    Candidates are enumerated with the high coefficients most significant
    (i.e. by the integer whose base-p digits they are), and irreducibility is
    decided by an exhaustive sieve: trial division by every monic polynomial
    of degree 1..k//2.
    """
    divisors = []
    for d in range(1, k // 2 + 1):
        for n in range(p**d):
            divisors.append(_modulus_digits(n, p, d) + [1])
    for n in range(p**k):
        cand = _modulus_digits(n, p, k) + [1]
        if all(not _zp_divides(dv, cand, p) for dv in divisors):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # unreachable


class ExtField(Field):
    """GF(p^k), k >= 2, with elements coded as base-p digit integers.

    Multiplication and inversion go through exp/log tables (the
    multiplicative group is cyclic); addition is an XOR when p = 2 and a
    digit-wise sum otherwise.
    """

    rzero = 0
    rone = 1

    def __init__(self, p, k):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if k < 2:
            raise ValueError("ExtField needs k >= 2; use PrimeField")
        self.p = p
        self.k = k
        self.char = p
        self.order = p**k
        self.modulus = _find_modulus(p, k)  # little-endian, monic, length k+1
        self._exp = None
        self._log = None
        self._pair_tables_cache = None
        if self.order <= _TABLE_MAX:
            self._build_tables()

    # -- digit/code helpers --

    def _digits(self, code):
        p, k = self.p, self.k
        out = []
        for _ in range(k):
            out.append(code % p)
            code //= p
        return out

    def _code(self, digits):
        code = 0
        for d in reversed(digits):
            code = code * self.p + d
        return code

    def _mul_slow(self, a, b):
        prod = _zp_mul(self._digits(a), self._digits(b), self.p)
        return self._code(_zp_mod(prod, list(self.modulus), self.p) + [0] * self.k)

    def _build_tables(self):
        q = self.order
        n = q - 1
        factors = []
        m = n
        d = 2
        while d * d <= m:
            if m % d == 0:
                factors.append(d)
                while m % d == 0:
                    m //= d
            d += 1
        if m > 1:
            factors.append(m)

        def pow_slow(a, e):
            acc = 1
            while e:
                if e & 1:
                    acc = self._mul_slow(acc, a)
                a = self._mul_slow(a, a)
                e >>= 1
            return acc

        gen = None
        for cand in range(2, q):
            if all(pow_slow(cand, n // r) != 1 for r in factors):
                gen = cand
                break
        assert gen is not None
        exp = [1] * (2 * n)
        log = [0] * q
        acc = 1
        for i in range(n):
            exp[i] = acc
            exp[i + n] = acc
            log[acc] = i
            acc = self._mul_slow(acc, gen)
        self._exp = exp
        self._log = log

    # -- raw ops --

    def rcanon(self, v):
        if isinstance(v, FieldElem):
            if v.field == self:
                return v.v
            raise CtxMismatch(f"cannot coerce from {v.field}")
        if isinstance(v, int):
            return v % self.p  # integers embed through the prime subfield
        if isinstance(v, (list, tuple)):
            digits = _zp_mod([x % self.p for x in v], list(self.modulus), self.p)
            return self._code(digits + [0] * self.k)
        raise TypeError(f"cannot make a {self} element from {v!r}")

    def rfrom_int(self, n):
        return n % self.p

    def radd(self, a, b):
        if self.p == 2:
            return a ^ b
        p = self.p
        out = 0
        mult = 1
        while a or b:
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def rsub(self, a, b):
        return self.radd(a, self.rneg(b))

    def rneg(self, a):
        if self.p == 2:
            return a
        p = self.p
        out = 0
        mult = 1
        while a:
            out += (-a % p) * mult
            a //= p
            mult *= p
        return out

    def rmul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_slow(a, b)

    def rinv(self, a):
        if a == 0:
            raise DivideByZero(f"division by zero in {self}")
        if self._exp is not None:
            return self._exp[self.order - 1 - self._log[a]]
        # extended Euclid in the rare un-tabled case
        acc, e = 1, self.order - 2
        b = a
        while e:
            if e & 1:
                acc = self._mul_slow(acc, b)
            b = self._mul_slow(b, b)
            e >>= 1
        return acc

    def relement_at(self, i):
        return i

    def gen(self):
        """The residue of t, a root of the modulus."""
        return FieldElem(self, self.p)

    def pair_tables(self):
        """Full 2D sub/mul tables for the elimination hot path, or None.

        Only built for small orders; rows are lists indexed by raw codes.
        """
        if self.order > _PAIR_TABLE_MAX:
            return None
        if self._pair_tables_cache is None:
            q = self.order
            rng_q = range(q)
            sub = [[self.rsub(a, b) for b in rng_q] for a in rng_q]
            mul = [[self.rmul(a, b) for b in rng_q] for a in rng_q]
            inv = [0] + [self.rinv(a) for a in range(1, q)]
            self._pair_tables_cache = (sub, mul, inv)
        return self._pair_tables_cache

    def rstr(self, v):
        if v == 0:
            return "0"
        digits = self._digits(v)
        parts = []
        for i in range(self.k - 1, -1, -1):
            c = digits[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("t" if c == 1 else f"{c}*t")
            else:
                parts.append(f"t^{i}" if c == 1 else f"{c}*t^{i}")
        return "+".join(parts)

    def __eq__(self, other):
        return (
            isinstance(other, ExtField)
            and other.p == self.p
            and other.k == self.k
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("GF", self.p, self.k, self.modulus))

    def __str__(self):
        return f"GF({self.p}^{self.k})"

    __repr__ = __str__


_FIELD_CACHE = {}


def GF(p, k=1):
    """Construct GF(p^k); k = 1 gives the prime field.

    The extension modulus is chosen deterministically (lexicographically
    least monic irreducible), so repeated runs agree.
    """
    if k < 1:
        raise DegreeZero(f"extension degree must be >= 1, got {k}")
    key = (p, k)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = PrimeField(p) if k == 1 else ExtField(p, k)
    return _FIELD_CACHE[key]


make_ext_field = GF


def sqrt_char2(a):
    """The unique square root in characteristic 2, via repeated Frobenius.

    In GF(2^k) squaring is bijective, so b = a^(2^(k-1)) satisfies b^2 = a.
    """
    field = a.field
    if field.char != 2:
        raise WrongCharacteristic(f"sqrt_char2 needs characteristic 2, not {field}")
    k = getattr(field, "k", 1)
    b = a.v
    for _ in range(k - 1):
        b = field.rmul(b, b)
    return FieldElem(field, b)


def artin_schreier_preimage(field, c):
    """Solve e^2 + e = c over a finite field of characteristic 2.

    The map e -> e^2 + e is F2-linear with kernel {0, 1}; a solution exists
    iff c lies in its (index-2) image.  Returns the smaller of the two
    solutions as a raw code, or None when there is none.
    """
    if field.char != 2:
        raise WrongCharacteristic(f"{field} does not have characteristic 2")
    if isinstance(field, PrimeField):
        return 0 if c == 0 else None
    # codes over GF(2^k) are bitmasks; eliminate on the images of the basis
    pivots = []  # (lead_bit, image, preimage) rows of a reduced system
    for j in range(field.k):
        e = 1 << j
        vec = field.rmul(e, e) ^ e
        combo = e
        for lb, v2, c2 in pivots:
            if (vec >> lb) & 1:
                vec ^= v2
                combo ^= c2
        if vec:
            pivots.append((vec.bit_length() - 1, vec, combo))
    res, combo = c, 0
    for lb, v2, c2 in pivots:
        if (res >> lb) & 1:
            res ^= v2
            combo ^= c2
    if res:
        return None
    return min(combo, combo ^ 1)


# --- spec-string parsing -----------------------------------------------------

def _scan_uint(s, i):
    j = i
    while j < len(s) and s[j].isdigit():
        j += 1
    if j == i:
        raise ParseError("expected a digit", i)
    return int(s[i:j]), j


def _skip_ws(s, i):
    while i < len(s) and s[i].isspace():
        i += 1
    return i


def parse_field_spec(s):
    """Parse "Q", "GF(p)" or "GF(p^k)" into a field context."""
    i = _skip_ws(s, 0)
    if i < len(s) and s[i] == "Q":
        j = _skip_ws(s, i + 1)
        if j != len(s):
            raise ParseError("trailing characters after Q", j)
        return QQ
    if not s.startswith("GF(", i):
        raise ParseError('expected "Q" or "GF(...)"', i)
    i += 3
    p, i = _scan_uint(s, i)
    k = 1
    if i < len(s) and s[i] == "^":
        k, i = _scan_uint(s, i + 1)
    if i >= len(s) or s[i] != ")":
        raise ParseError('expected ")"', i)
    i = _skip_ws(s, i + 1)
    if i != len(s):
        raise ParseError("trailing characters after field spec", i)
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise DegreeZero("extension degree must be >= 1")
    return GF(p, k)


def field_spec_string(field):
    """Inverse of parse_field_spec, canonical form."""
    if field.char == 0:
        return "Q"
    if isinstance(field, PrimeField):
        return f"GF({field.p})"
    return f"GF({field.p}^{field.k})"


def scan_element(field, s, i):
    """Scan one element literal from s at offset i; return (raw, end).

    Grammar: rationals "[-]n[/d]"; prime fields "[-]n"; extension fields a
    sum of t-terms like "t^3+2*t+1" (a '*' between coefficient and t is
    optional).  Offsets in errors are absolute within s.
    """
    i = _skip_ws(s, i)
    if i >= len(s):
        raise ParseError("expected a field element", i)
    if field.char == 0:
        neg = s[i] == "-"
        if s[i] in "+-":
            i += 1
        num, i = _scan_uint(s, i)
        den = 1
        if i < len(s) and s[i] == "/":
            den, i = _scan_uint(s, i + 1)
            if den == 0:
                raise DivideByZero("zero denominator in rational literal")
        fr = Fraction(-num if neg else num, den)
        return fr, i
    if isinstance(field, PrimeField):
        neg = s[i] == "-"
        if s[i] in "+-":
            i += 1
        n, i = _scan_uint(s, i)
        return (-n if neg else n) % field.p, i

    # extension field: signed sum of t-terms
    acc = 0
    first = True
    while True:
        mark = i
        i = _skip_ws(s, i)
        sign = 1
        if i < len(s) and s[i] in "+-":
            sign = -1 if s[i] == "-" else 1
            i = _skip_ws(s, i + 1)
        elif not first:
            break
        if i >= len(s):
            if first:
                raise ParseError("expected a field element", i)
            i = mark
            break
        if s[i].isdigit():
            c, i = _scan_uint(s, i)
            if i < len(s) and s[i] == "*" and i + 1 < len(s) and s[i + 1] == "t":
                i += 1
        elif s[i] == "t":
            c = 1
        else:
            if first:
                raise ParseError("expected a field element", i)
            i = mark
            break
        e = 0
        if i < len(s) and s[i] == "t":
            e = 1
            i += 1
            if i < len(s) and s[i] == "^":
                e, i = _scan_uint(s, i + 1)
        digits = [0] * (e + 1)
        digits[e] = sign * c
        acc = field.radd(acc, field.rcanon(digits))
        first = False
    return acc, i


def parse_element(field, s):
    """Parse a complete element literal (the whole string must be consumed)."""
    v, i = scan_element(field, s, 0)
    i = _skip_ws(s, i)
    if i != len(s):
        raise ParseError("trailing characters after element", i)
    return FieldElem(field, v)
