"""Univariate polynomials and reduced rational functions over a field context.

Coefficients are stored densely as raw field values, constant term first,
with no trailing zeros (the zero polynomial has an empty tuple and degree
-1).  Rational functions are kept fully reduced: gcd(num, den) = 1 and a
monic denominator, so equality is plain structural equality.

The partial-fraction decomposition here is the exact, characteristic-free
cover-up method: the top coefficient at each pole is read off by evaluation
and the remainder is divided down by the linear factor, so no factorials (and
hence no divisions by the characteristic) ever appear.
"""

from .errors import (
    BothZero,
    CtxMismatch,
    DivideByZero,
    NonSplitDenominator,
    ParseError,
)
from .fields import FieldElem, _skip_ws, _scan_uint, scan_element


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs=()):
        raw = []
        for c in coeffs:
            if isinstance(c, FieldElem):
                if not (c.field is field or c.field == field):
                    raise CtxMismatch(f"coefficient from {c.field} in {field}[x]")
                raw.append(c.v)
            else:
                raw.append(field.rcanon(c))
        while raw and raw[-1] == field.rzero:
            raw.pop()
        self.field = field
        self.coeffs = tuple(raw)

    @classmethod
    def _raw(cls, field, raw):
        """Trusted constructor: raw is a list of canonical raw values."""
        while raw and raw[-1] == field.rzero:
            raw.pop()
        p = object.__new__(cls)
        p.field = field
        p.coeffs = tuple(raw)
        return p

    @classmethod
    def zero(cls, field):
        return cls._raw(field, [])

    @classmethod
    def one(cls, field):
        return cls._raw(field, [field.rone])

    @classmethod
    def x(cls, field):
        return cls._raw(field, [field.rzero, field.rone])

    @classmethod
    def const(cls, field, c):
        return cls._raw(field, [c.v if isinstance(c, FieldElem) else field.rcanon(c)])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def lead(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.field.rone

    def coeff(self, i):
        """Raw coefficient of x^i (zero beyond the degree)."""
        return self.coeffs[i] if i < len(self.coeffs) else self.field.rzero

    def _check(self, other):
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if not (other.field is self.field or other.field == self.field):
            raise CtxMismatch(f"cannot mix {self.field}[x] and {other.field}[x]")

    def __add__(self, other):
        self._check(other)
        f = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = f.radd(out[i], c)
        return Poly._raw(f, out)

    def __sub__(self, other):
        self._check(other)
        f = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        out = [
            f.rsub(self.coeff(i), other.coeff(i))
            for i in range(n)
        ]
        return Poly._raw(f, out)

    def __neg__(self):
        f = self.field
        return Poly._raw(f, [f.rneg(c) for c in self.coeffs])

    def __mul__(self, other):
        self._check(other)
        f = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(f)
        out = [f.rzero] * (len(a) + len(b) - 1)
        radd, rmul = f.radd, f.rmul
        for i, ai in enumerate(a):
            if ai == f.rzero:
                continue
            for j, bj in enumerate(b):
                out[i + j] = radd(out[i + j], rmul(ai, bj))
        return Poly._raw(f, out)

    def scale(self, c):
        """Multiply by a raw scalar."""
        f = self.field
        if c == f.rzero:
            return Poly.zero(f)
        return Poly._raw(f, [f.rmul(c, a) for a in self.coeffs])

    def shift(self, n):
        """Multiply by x^n."""
        if self.is_zero:
            return self
        return Poly._raw(self.field, [self.field.rzero] * n + list(self.coeffs))

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        acc = Poly.one(self.field)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def __divmod__(self, other):
        self._check(other)
        f = self.field
        if other.is_zero:
            raise DivideByZero("polynomial division by zero")
        if self.degree < other.degree:
            return Poly.zero(f), self
        rem = list(self.coeffs)
        dlead = other.coeffs[-1]
        dinv = f.rinv(dlead)
        dd = other.degree
        quo = [f.rzero] * (len(rem) - dd)
        rsub, rmul = f.rsub, f.rmul
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c == f.rzero:
                continue
            q = rmul(c, dinv)
            quo[i - dd] = q
            for j, oc in enumerate(other.coeffs):
                rem[i - dd + j] = rsub(rem[i - dd + j], rmul(q, oc))
        return Poly._raw(f, quo), Poly._raw(f, rem[:dd])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ValueError("division was not exact")
        return q

    def monic(self):
        if self.is_zero:
            return self
        return self.scale(self.field.rinv(self.coeffs[-1]))

    def derivative(self):
        """Formal derivative, coefficientwise in the field characteristic."""
        f = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            out.append(f.rmul(f.rfrom_int(i), self.coeffs[i]))
        return Poly._raw(f, out)

    def eval_raw(self, x):
        f = self.field
        acc = f.rzero
        for c in reversed(self.coeffs):
            acc = f.radd(f.rmul(acc, x), c)
        return acc

    def __call__(self, x):
        if isinstance(x, FieldElem):
            return FieldElem(self.field, self.eval_raw(x.v))
        return FieldElem(self.field, self.eval_raw(self.field.rcanon(x)))

    def taylor_shift(self, a):
        """The polynomial p(x + a) for a raw value a."""
        f = self.field
        lin = Poly._raw(f, [a, f.rone])
        acc = Poly.zero(f)
        for c in reversed(self.coeffs):
            acc = acc * lin + Poly._raw(f, [c])
        return acc

    def reverse(self, n=None):
        """x^n * p(1/x); n defaults to deg p."""
        if n is None:
            n = self.degree
        if n < self.degree:
            raise ValueError("reversal bound below degree")
        out = [self.field.rzero] * (n + 1)
        for i, c in enumerate(self.coeffs):
            out[n - i] = c
        return Poly._raw(self.field, out)

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __str__(self):
        return poly_string(self)

    def __repr__(self):
        return f"<{self} over {self.field}>"


def poly_gcd(a, b):
    """Monic gcd by the Euclidean algorithm."""
    if a.is_zero and b.is_zero:
        raise BothZero("gcd(0, 0) is undefined")
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def formal_derivative(a):
    return a.derivative()


class RatFunc:
    """A reduced rational function num/den with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = Poly.one(num.field)
        if den.is_zero:
            raise DivideByZero("rational function with zero denominator")
        if num.is_zero:
            den = Poly.one(num.field)
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
            if not den.is_monic:
                c = num.field.rinv(den.lead)
                num = num.scale(c)
                den = den.scale(c)
        self.num = num
        self.den = den

    @classmethod
    def zero(cls, field):
        return cls(Poly.zero(field))

    @classmethod
    def one(cls, field):
        return cls(Poly.one(field))

    @classmethod
    def x(cls, field):
        return cls(Poly.x(field))

    @classmethod
    def const(cls, field, c):
        return cls(Poly.const(field, c))

    @classmethod
    def from_poly(cls, p):
        return cls(p)

    @property
    def field(self):
        return self.num.field

    @property
    def is_zero(self):
        return self.num.is_zero

    @property
    def is_poly(self):
        return self.den.degree == 0

    def as_poly(self):
        if not self.is_poly:
            raise ValueError(f"{self} is not a polynomial")
        return self.num

    def __add__(self, other):
        other = self._coerce(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        other = self._coerce(other)
        return RatFunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __mul__(self, other):
        other = self._coerce(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero:
            raise DivideByZero("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        raise TypeError(f"expected RatFunc or Poly, got {type(other).__name__}")

    def scale(self, c):
        return RatFunc(self.num.scale(c), self.den)

    def derivative(self):
        """Formal derivative by the quotient rule."""
        n, d = self.num, self.den
        return RatFunc(n.derivative() * d - n * d.derivative(), d * d)

    def __eq__(self, other):
        return (
            isinstance(other, RatFunc)
            and other.num == self.num
            and other.den == self.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero

    def __str__(self):
        if self.den.degree == 0:
            return poly_string(self.num)
        return f"({poly_string(self.num)})/({poly_string(self.den)})"

    def __repr__(self):
        return f"<{self} over {self.field}>"


# --- root finding -------------------------------------------------------------

def _int_divisors(n):
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _rational_root_candidates(p):
    """Rational-root-theorem candidates for a Q-coefficient polynomial."""
    from fractions import Fraction

    denlcm = 1
    for c in p.coeffs:
        denlcm = denlcm * c.denominator // _gcd_int(denlcm, c.denominator)
    ints = [int(c * denlcm) for c in p.coeffs]
    lead = ints[-1]
    # constant == 0 is impossible here: factors of x are stripped by caller
    const = ints[0]
    cands = set()
    for a in _int_divisors(const):
        for b in _int_divisors(lead):
            cands.add(Fraction(a, b))
            cands.add(Fraction(-a, b))
    return sorted(cands)


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return a


def linear_roots(p):
    """All roots of p in its field with multiplicities, plus the rootless part.

    Returns (roots, residual) where roots is a list of (raw root, mult) in
    canonical element order and residual is monic with no roots in the field.
    Finite fields are searched exhaustively; over Q the rational-root theorem
    supplies the candidates.
    """
    field = p.field
    if p.is_zero:
        raise ValueError("the zero polynomial has every root")
    work = p.monic()
    roots = []
    if field.is_finite:
        candidates = (field.relement_at(i) for i in range(field.order))
    else:
        # pull out x-factors first so the candidate list is finite
        mult0 = 0
        xp = Poly.x(field)
        while not work.is_zero and work.coeff(0) == field.rzero:
            work = work.exact_div(xp)
            mult0 += 1
        if mult0:
            roots.append((field.rzero, mult0))
        if work.degree < 1:
            return roots, work
        candidates = _rational_root_candidates(work)
    for a in candidates:
        if work.degree < 1:
            break
        if work.eval_raw(a) != field.rzero:
            continue
        lin = Poly._raw(field, [field.rneg(a), field.rone])
        mult = 0
        while True:
            q, r = divmod(work, lin)
            if not r.is_zero:
                break
            work = q
            mult += 1
            if work.degree < 1:
                break
        roots.append((a, mult))
    roots.sort(key=lambda rm: field.rsort_key(rm[0]))
    return roots, work


# --- partial fractions ---------------------------------------------------------

class PartialFraction:
    """poly_part + sum of numerator/(x - root)^multiplicity terms."""

    __slots__ = ("field", "poly_part", "terms")

    def __init__(self, field, poly_part, terms):
        self.field = field
        self.poly_part = poly_part
        self.terms = tuple(terms)

    def recombine(self):
        """Sum the decomposition back into a single reduced rational function."""
        acc = RatFunc(self.poly_part)
        field = self.field
        for root, mult, numer in self.terms:
            lin = Poly._raw(field, [field.rneg(root), field.rone])
            acc = acc + RatFunc(Poly._raw(field, [numer]), lin**mult)
        return acc

    def to_json(self):
        field = self.field
        return {
            "poly_part": poly_string(self.poly_part),
            "terms": [
                {
                    "root": field.rstr(root),
                    "multiplicity": mult,
                    "numerator": field.rstr(numer),
                }
                for root, mult, numer in self.terms
            ],
        }

    def __eq__(self, other):
        return (
            isinstance(other, PartialFraction)
            and other.field == self.field
            and other.poly_part == self.poly_part
            and other.terms == self.terms
        )

    def __repr__(self):
        body = " + ".join(
            f"{self.field.rstr(n)}/(x-{self.field.rstr(r)})^{m}"
            for r, m, n in self.terms
        )
        return f"<{self.poly_part} + {body}>"


def partial_fractions(r):
    """Exact partial-fraction decomposition of a rational function.

    The denominator must split into linear factors over the field; otherwise
    NonSplitDenominator is raised carrying the irreducible residual.  Terms
    come out sorted by (root, descending multiplicity) and recombine() is an
    exact inverse.
    """
    field = r.field
    poly_part, rem = divmod(r.num, r.den)
    roots, residual = linear_roots(r.den)
    if residual.degree > 0:
        raise NonSplitDenominator(
            f"denominator does not split: irreducible residual {residual}",
            residual=residual,
        )
    terms = []
    N = rem
    D = r.den
    for a, mult in roots:
        lin = Poly._raw(field, [field.rneg(a), field.rone])
        for j in range(mult, 0, -1):
            E = D.exact_div(lin**j)
            c = field.rdiv(N.eval_raw(a), E.eval_raw(a))
            if c != field.rzero:
                terms.append((a, j, c))
            N = (N - E.scale(c)).exact_div(lin)
            D = E * lin ** (j - 1)
    assert N.is_zero, "partial fraction extraction left a remainder"
    return PartialFraction(field, poly_part, terms)


# --- rendering and parsing ------------------------------------------------------

def _coeff_string(field, c):
    s = field.rstr(c)
    if "+" in s[1:] or "-" in s[1:]:
        return f"({s})"
    return s


def poly_string(p, var="x"):
    """Canonical descending-power rendering, e.g. "x^5+3*x+1"."""
    field = p.field
    if p.is_zero:
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p.coeff(i)
        if c == field.rzero:
            continue
        cs = _coeff_string(field, c)
        neg = cs.startswith("-")
        if neg:
            cs = cs[1:]
        if i == 0:
            term = cs
        else:
            xs = var if i == 1 else f"{var}^{i}"
            term = xs if cs == "1" else f"{cs}*{xs}"
        if not parts:
            parts.append(("-" if neg else "") + term)
        else:
            parts.append(("-" if neg else "+") + term)
    return "".join(parts)


def scan_poly(field, s, i, var="x"):
    """Scan a polynomial literal starting at offset i; return (Poly, end)."""
    f = field
    terms = {}
    first = True
    n = len(s)
    while True:
        mark = i
        i = _skip_ws(s, i)
        negate = False
        signed = False
        if i < n and s[i] in "+-":
            negate = s[i] == "-"
            signed = True
            i = _skip_ws(s, i + 1)
        elif not first:
            break
        if i >= n:
            if first or signed:
                raise ParseError("expected a term", i)
            i = mark
            break
        # coefficient (optional)
        coeff = None
        if s[i] == "(":
            close = s.find(")", i + 1)
            if close < 0:
                raise ParseError("unbalanced parenthesis", i)
            coeff, j = scan_element(f, s, i + 1)
            j = _skip_ws(s, j)
            if j != close:
                raise ParseError("bad parenthesized coefficient", j)
            i = close + 1
        elif s[i] != var:
            start = i
            try:
                coeff, i = scan_element(f, s, i)
            except ParseError:
                if first or signed:
                    raise
                i = mark
                break
            if i == start:
                if first or signed:
                    raise ParseError("expected a term", i)
                i = mark
                break
        if i < n and s[i] == "*" and i + 1 < n and s[i + 1] == var:
            i += 1
        exp = 0
        if i < n and s[i] == var:
            exp = 1
            i += 1
            if i < n and s[i] == "^":
                exp, i = _scan_uint(s, i + 1)
        elif coeff is None:
            raise ParseError(f'expected a coefficient or "{var}"', i)
        if coeff is None:
            coeff = f.rone
        if negate:
            coeff = f.rneg(coeff)
        terms[exp] = f.radd(terms.get(exp, f.rzero), coeff)
        first = False
    deg = max(terms) if terms else -1
    out = [f.rzero] * (deg + 1)
    for e, c in terms.items():
        out[e] = c
    return Poly._raw(f, out), i


def parse_poly(field, s, var="x"):
    """Parse a complete polynomial literal like "x^5 + 3*x + 1"."""
    p, i = scan_poly(field, s, 0, var=var)
    i = _skip_ws(s, i)
    if i != len(s):
        raise ParseError("trailing characters after polynomial", i)
    return p
