"""Hyperelliptic curve models in both characteristics.

Away from characteristic 2 a curve is the smooth projective model of
y^2 = f(x) with f squarefree of odd degree 2g+1 (OddModel).  In
characteristic 2 that shape is always singular, and the generic curve is
instead an Artin-Schreier cover y^2 - y = f with

    f = alpha0*x + alpha1/(x-a1) + ... + alphag/(x-ag),

branched over a1..ag and infinity, each to order 2 (ASModel).  This module
validates both models, samples them deterministically, and implements the
constructive reduction of a raw char-2 curve a*y^2 + b*y + c = 0 to that
normal form, logging every substitution so the whole transformation can be
replayed and checked symbolically.
"""

import random

from .errors import (
    DegenerateCurve,
    DuplicateBranchPoint,
    FieldTooSmall,
    ModelMismatch,
    NonGenericB,
    NotSquarefree,
    ParseError,
    TraceObstruction,
    WrongCharacteristic,
    WrongDegree,
    ZeroResidue,
)
from .fields import (
    GF,
    QQ,
    FieldElem,
    artin_schreier_preimage,
    _scan_uint,
    _skip_ws,
    scan_element,
)
from .poly import Poly, RatFunc, linear_roots, partial_fractions, poly_gcd, poly_string, scan_poly


def _raw_sqrt2(field, v):
    k = getattr(field, "k", 1)
    for _ in range(k - 1):
        v = field.rmul(v, v)
    return v


def _linear(field, a):
    """The monic linear polynomial x - a for a raw root a."""
    return Poly._raw(field, [field.rneg(a), field.rone])


class RamificationData:
    """Branch points of the hyperelliptic map with their ramification orders.

    The x-coordinate None stands for the point at infinity.  In
    characteristic 2 the total is always 2g + 2.
    """

    __slots__ = ("points", "total")

    def __init__(self, points):
        self.points = tuple(points)
        self.total = sum(order for _, order in self.points)

    def __eq__(self, other):
        return isinstance(other, RamificationData) and other.points == self.points

    def __repr__(self):
        return f"<ramification {self.points}, total {self.total}>"


class OddModel:
    """y^2 = f with deg f = 2g+1 and f squarefree, characteristic != 2."""

    __slots__ = ("field", "g", "f")

    def __init__(self, field, g, f):
        self.field = field
        self.g = g
        self.f = f

    def __eq__(self, other):
        return (
            isinstance(other, OddModel)
            and other.field == self.field
            and other.g == self.g
            and other.f == self.f
        )

    def __hash__(self):
        return hash((id(self.field), "odd", self.g, self.f.coeffs))

    def __repr__(self):
        return f"<y^2 = {self.f} over {self.field}, genus {self.g}>"


class ASModel:
    """y^2 - y = alpha0*x + sum alphai/(x - ai), characteristic 2.

    Branch points are stored sorted in canonical element order, so equal
    curves have equal models.
    """

    __slots__ = ("field", "g", "alpha0", "branch", "_branch_poly", "_f_rat")

    def __init__(self, field, g, alpha0, branch):
        self.field = field
        self.g = g
        self.alpha0 = alpha0
        self.branch = tuple(sorted(branch, key=lambda t: field.rsort_key(t[0])))
        self._branch_poly = None
        self._f_rat = None

    @property
    def branch_poly(self):
        """The monic polynomial prod (x - ai)."""
        if self._branch_poly is None:
            B = Poly.one(self.field)
            for a, _ in self.branch:
                B = B * _linear(self.field, a)
            self._branch_poly = B
        return self._branch_poly

    @property
    def f_rat(self):
        """The right-hand side f as a reduced rational function."""
        if self._f_rat is None:
            field = self.field
            B = self.branch_poly
            num = Poly.x(field).scale(self.alpha0) * B
            for a, alpha in self.branch:
                num = num + B.exact_div(_linear(field, a)).scale(alpha)
            self._f_rat = RatFunc(num, B)
        return self._f_rat

    def ramification(self):
        points = [(a, 2) for a, _ in self.branch] + [(None, 2)]
        return RamificationData(points)

    def __eq__(self, other):
        return (
            isinstance(other, ASModel)
            and other.field == self.field
            and other.g == self.g
            and other.alpha0 == self.alpha0
            and other.branch == self.branch
        )

    def __hash__(self):
        return hash((id(self.field), "as", self.g, self.alpha0, self.branch))

    def __repr__(self):
        return f"<y^2 - y = {normal_form_string(self)} over {self.field}, genus {self.g}>"


class RawASCurve:
    """A char-2 curve presented as a*y^2 + b*y + c = 0 with a in k*."""

    __slots__ = ("field", "a", "b", "c")

    def __init__(self, field, a, b, c):
        a = a.v if isinstance(a, FieldElem) else field.rcanon(a)
        if a == field.rzero:
            raise DegenerateCurve("a = 0: the equation is not a double cover")
        if b.is_zero:
            raise DegenerateCurve("b = 0: the cover y^2 = c is inseparable-degenerate")
        self.field = field
        self.a = a
        self.b = b
        self.c = c

    def __repr__(self):
        astr = self.field.rstr(self.a)
        return f"<{astr}*y^2 + ({self.b})*y + ({self.c}) = 0 over {self.field}>"


def validate_odd_model(f, g):
    """Check deg f = 2g+1 and squarefreeness; return the model."""
    field = f.field
    if field.char == 2:
        raise WrongCharacteristic("y^2 = f models require characteristic != 2")
    if g < 2:
        raise WrongDegree(f"genus must be >= 2, got {g}")
    if f.degree != 2 * g + 1:
        raise WrongDegree(f"deg f = {f.degree}, expected 2g+1 = {2*g+1}")
    if poly_gcd(f, f.derivative()).degree != 0:
        raise NotSquarefree(f"f = {f} has a repeated root")
    return OddModel(field, g, f)


def validate_as_model(alpha0, branch, g):
    """Check branch-point distinctness and nonvanishing residues.

    Returns (model, ramification): g+1 branch points (the ai and infinity),
    each of ramification order 2, total 2g+2.
    """
    if isinstance(alpha0, FieldElem):
        field = alpha0.field
        alpha0 = alpha0.v
    else:
        raise TypeError("alpha0 must be a FieldElem (it fixes the field)")
    if field.char != 2:
        raise WrongCharacteristic("Artin-Schreier models require characteristic 2")
    if g < 2:
        raise WrongDegree(f"genus must be >= 2, got {g}")
    raw_branch = []
    for a, alpha in branch:
        a = a.v if isinstance(a, FieldElem) else field.rcanon(a)
        alpha = alpha.v if isinstance(alpha, FieldElem) else field.rcanon(alpha)
        raw_branch.append((a, alpha))
    if len(raw_branch) != g:
        raise WrongDegree(f"{len(raw_branch)} branch terms for genus {g}")
    seen = set()
    for a, alpha in raw_branch:
        if a in seen:
            raise DuplicateBranchPoint(f"branch point {field.rstr(a)} repeated")
        seen.add(a)
        if alpha == field.rzero:
            raise ZeroResidue(f"residue at {field.rstr(a)} is zero")
    if alpha0 == field.rzero:
        raise ZeroResidue("alpha0 = 0: infinity is not a branch point")
    model = ASModel(field, g, alpha0, raw_branch)
    return model, model.ramification()


def curve_genus(model):
    return model.g


def random_curve(field, g, seed):
    """Deterministic rejection sampling of a valid genus-g model.

    Finite fields must have at least 2g elements so that g distinct branch
    points (char 2) or a squarefree f (char != 2) can be drawn comfortably.
    """
    if g < 2:
        raise WrongDegree(f"genus must be >= 2, got {g}")
    if field.is_finite and field.order < 2 * g:
        raise FieldTooSmall(f"|{field}| = {field.order} < 2g = {2*g}")
    rng = random.Random(seed)
    if field.char == 2:
        idxs = rng.sample(range(field.order), g)
        branch = [
            (FieldElem(field, field.relement_at(i)), field.random_nonzero(rng))
            for i in idxs
        ]
        model, _ = validate_as_model(field.random_nonzero(rng), branch, g)
        return model
    deg = 2 * g + 1
    for _ in range(1000):
        if field.char == 0:
            coeffs = [rng.randint(-9, 9) for _ in range(deg + 1)]
            while coeffs[-1] == 0:
                coeffs[-1] = rng.randint(-9, 9)
            f = Poly(field, coeffs)
        else:
            coeffs = [field.random(rng).v for _ in range(deg)]
            coeffs.append(field.random_nonzero(rng).v)
            f = Poly._raw(field, coeffs)
        if poly_gcd(f, f.derivative()).degree == 0:
            return OddModel(field, g, f)
    raise AssertionError("rejection sampling failed to find a squarefree f")


# --- the characteristic-2 normal-form reduction --------------------------------

class TransformStep:
    """One substitution: either y -> value * y (scale) or y -> y + value (shift)."""

    __slots__ = ("kind", "value")

    def __init__(self, kind, value):
        self.kind = kind
        self.value = value

    def __eq__(self, other):
        return (
            isinstance(other, TransformStep)
            and other.kind == self.kind
            and other.value == self.value
        )

    def __repr__(self):
        arrow = "y -> (%s)*y" if self.kind == "scale" else "y -> y + (%s)"
        return f"<{arrow % self.value}>"


class TransformLog:
    """The full substitution trail of one normal-form reduction.

    Composing the steps gives y_raw = U*Y + V; substituting that into
    a*y^2 + b*y + c and dividing by the recorded unit must give exactly
    Y^2 - Y - f for the resulting normal form f.
    """

    __slots__ = ("steps", "unit")

    def __init__(self, steps, unit):
        self.steps = tuple(steps)
        self.unit = unit

    def composite(self):
        """(U, V) with y_raw = U*Y + V in terms of the final variable Y."""
        field = self.unit.field
        U = RatFunc.one(field)
        V = RatFunc.zero(field)
        for step in self.steps:
            if step.kind == "scale":
                U = U * step.value
            else:
                V = V + U * step.value
        return U, V

    def to_json(self):
        U, V = self.composite()
        return {
            "steps": [{"op": s.kind, "value": str(s.value)} for s in self.steps],
            "unit": str(self.unit),
            "composite": {"u": str(U), "v": str(V)},
        }

    def __repr__(self):
        return f"<transform log: {len(self.steps)} steps, unit {self.unit}>"


def reduce_to_normal_form(raw):
    """Reduce a*y^2 + b*y + c = 0 to y^2 - y = alpha0*x + sum alphai/(x-ai).

    Requires b to split with distinct simple roots (the generic case); the
    branch set of the result is exactly the root set of b.  Every
    substitution is logged.  Raises NonGenericB for repeated or non-split b,
    DegenerateCurve when a residue or alpha0 vanishes (the curve is singular
    or drops genus), and TraceObstruction when the leftover additive constant
    has no Artin-Schreier preimage in the field.
    """
    field = raw.field
    if field.char != 2:
        raise WrongCharacteristic(f"normal form reduction needs characteristic 2, not {field}")
    g = raw.b.degree
    if g < 2:
        raise DegenerateCurve(f"deg b = {g} gives genus < 2")

    roots, residual = linear_roots(raw.b)
    if residual.degree > 0:
        raise NonGenericB(f"b does not split over {field}: irreducible factor {residual}")
    repeated = [a for a, m in roots if m > 1]
    if repeated:
        names = ", ".join(field.rstr(a) for a in repeated)
        raise NonGenericB(f"b has repeated root(s) {names}")

    steps = []
    # y -> y/sqrt(a) turns the leading coefficient into 1
    inv_sqrt_a = field.rinv(_raw_sqrt2(field, raw.a))
    steps.append(TransformStep("scale", RatFunc.const(field, FieldElem(field, inv_sqrt_a))))
    b1 = raw.b.scale(inv_sqrt_a)
    # y -> b1*y and division by b1^2 gives the Artin-Schreier shape y^2 - y = f
    steps.append(TransformStep("scale", RatFunc(b1)))
    f_raw = RatFunc(raw.c, b1 * b1)

    pf = partial_fractions(f_raw)
    double = {}
    simple = {}
    for root, mult, numer in pf.terms:
        if mult == 2:
            double[root] = numer
        elif mult == 1:
            simple[root] = numer
        else:  # impossible: the denominator divides b1^2 with b1 squarefree
            raise AssertionError("pole of order > 2 under a squarefree b")

    # kill the double pole at each branch point with y -> y + sqrt(gamma)/(x-a)
    branch = []
    for a, _ in roots:
        alpha = simple.get(a, field.rzero)
        gamma = double.get(a)
        if gamma is not None:
            s = _raw_sqrt2(field, gamma)
            steps.append(
                TransformStep("shift", RatFunc(Poly._raw(field, [s]), _linear(field, a)))
            )
            alpha = field.radd(alpha, s)
        if alpha == field.rzero:
            raise DegenerateCurve(
                f"residue at {field.rstr(a)} vanishes: curve singular over that point"
            )
        branch.append((a, alpha))

    # kill even polynomial degrees >= 2 top-down with y -> y + sqrt(c_d)*x^(d/2)
    pcoeffs = list(pf.poly_part.coeffs)
    for d in range(len(pcoeffs) - 1, 1, -1):
        cd = pcoeffs[d]
        if cd == field.rzero:
            continue
        if d % 2 == 1:
            raise DegenerateCurve(
                f"polynomial part keeps degree {d}: the curve has a deeper pole at "
                f"infinity than the genus-{g} normal form allows"
            )
        s = _raw_sqrt2(field, cd)
        pcoeffs[d] = field.rzero
        pcoeffs[d // 2] = field.radd(pcoeffs[d // 2], s)
        mono = [field.rzero] * (d // 2) + [s]
        steps.append(TransformStep("shift", RatFunc(Poly._raw(field, mono))))

    # kill the constant term with y -> y + e where e^2 + e = c0
    c0 = pcoeffs[0] if pcoeffs else field.rzero
    if c0 != field.rzero:
        e = artin_schreier_preimage(field, c0)
        if e is None:
            raise TraceObstruction(
                f"constant term {field.rstr(c0)} has no solution of e^2+e=c0 in "
                f"{field}; the curve is a twist with no normal form over this field"
            )
        steps.append(TransformStep("shift", RatFunc.const(field, FieldElem(field, e))))

    alpha0 = pcoeffs[1] if len(pcoeffs) > 1 else field.rzero
    if alpha0 == field.rzero:
        raise DegenerateCurve("alpha0 = 0 after reduction: infinity is not a branch point")

    model, _ = validate_as_model(
        FieldElem(field, alpha0),
        [(FieldElem(field, a), FieldElem(field, al)) for a, al in branch],
        g,
    )
    log = TransformLog(steps, RatFunc(b1 * b1))
    return model, log


def replay_check(raw, model, log):
    """Verify the logged substitution symbolically, as an exact identity.

    Substituting y = U*Y + V into a*y^2 + b*y + c must equal
    unit * (Y^2 + Y + f) coefficientwise in k(x)[Y] (characteristic 2, so
    Y^2 + Y + f = Y^2 - Y - f).
    """
    U, V = log.composite()
    a = RatFunc.const(raw.field, FieldElem(raw.field, raw.a))
    b = RatFunc(raw.b)
    c = RatFunc(raw.c)
    unit = log.unit
    y2 = a * U * U
    y1 = b * U
    y0 = a * V * V + b * V + c
    return y2 == unit and y1 == unit and y0 == unit * model.f_rat


def encode_raw(model):
    """Re-encode an ASModel as a raw curve: a=1, b = prod(x-ai), c = b^2 * f."""
    B = model.branch_poly
    c = (model.f_rat * RatFunc(B * B)).as_poly()
    return RawASCurve(model.field, model.field.rone, B, c)


def scramble_raw(raw, rng):
    """A random equivalent presentation: y -> u*y + s(x), then a global scale.

    Preserves the curve and the root set of b, so reduction of the result
    recovers the same normal form.
    """
    field = raw.field
    u = field.random_nonzero(rng).v
    lam = field.random_nonzero(rng).v
    s = Poly._raw(field, [field.random(rng).v for _ in range(raw.b.degree + 2)])
    a2 = field.rmul(raw.a, field.rmul(u, u))
    b2 = raw.b.scale(u)
    c2 = (s * s).scale(raw.a) + (raw.b * s) + raw.c
    return RawASCurve(
        field, FieldElem(field, field.rmul(lam, a2)), b2.scale(lam), c2.scale(lam)
    )


def mobius_shift(raw, rho):
    """Apply x -> rho + 1/x (sending x = rho to infinity) to a raw curve.

    Used as an explicit pre-step when b has g+1 roots: shifting one root to
    infinity drops deg b to g.  rho should be a root of b for that purpose;
    the transform itself is defined for any rho.
    """
    field = raw.field
    rho = rho.v if isinstance(rho, FieldElem) else field.rcanon(rho)
    b_sh = raw.b.taylor_shift(rho)
    c_sh = raw.c.taylor_shift(rho)
    db = raw.b.degree
    dc = max(c_sh.degree, 0)
    m = max(db, (dc + 1) // 2)
    B = b_sh.reverse(db)
    C = c_sh.reverse(dc) if not c_sh.is_zero else c_sh
    return RawASCurve(field, raw.a, B.shift(m - db), C.shift(2 * m - dc))


# --- curve-spec strings ---------------------------------------------------------

def normal_form_string(model):
    """Render f exactly as written on paper, e.g. "x + 1/x + 1/(x+1)"."""
    field = model.field
    parts = []
    a0 = field.rstr(model.alpha0)
    parts.append("x" if a0 == "1" else f"{_wrap(a0)}*x")
    for a, alpha in model.branch:
        num = field.rstr(alpha)
        num = "1" if num == "1" else _wrap(num)
        if a == field.rzero:
            den = "x"
        else:
            rs = field.rstr(a)
            if field.char == 2:
                den = f"(x+{rs})"
            elif rs.startswith("-"):
                den = f"(x+{_wrap(rs[1:])})"
            else:
                den = f"(x-{_wrap(rs)})"
        parts.append(f"{num}/{den}")
    return " + ".join(parts)


def _wrap(s):
    return f"({s})" if ("+" in s[1:] or "-" in s[1:]) else s


def _char_string(field):
    if field.char == 0:
        return "0"
    k = getattr(field, "k", 1)
    return str(field.char) if k == 1 else f"{field.char}^{k}"


def serialize_curve(model):
    """Canonical curve-spec string, inverse of parse_curve_spec."""
    if isinstance(model, OddModel):
        return f"char={_char_string(model.field)};f={poly_string(model.f)}"
    field = model.field
    terms = ",".join(
        f"({field.rstr(a)}:{field.rstr(alpha)})" for a, alpha in model.branch
    )
    return (
        f"char={_char_string(field)};alpha0={field.rstr(model.alpha0)};terms={terms}"
    )


def _expect(s, i, token):
    if not s.startswith(token, i):
        raise ParseError(f'expected "{token}"', i)
    return i + len(token)


def parse_curve_spec(s):
    """Parse "char=p[^k];f=..." or "char=2[^k];alpha0=...;terms=(a:alpha),..."."""
    i = _skip_ws(s, 0)
    i = _expect(s, i, "char=")
    p, i = _scan_uint(s, i)
    k = 1
    if i < len(s) and s[i] == "^":
        k, i = _scan_uint(s, i + 1)
    field = QQ if p == 0 else GF(p, k)
    i = _expect(s, i, ";")
    if s.startswith("f=", i):
        i += 2
        f, i = scan_poly(field, s, i)
        i = _skip_ws(s, i)
        if i != len(s):
            raise ParseError("trailing characters after curve spec", i)
        if field.char == 2:
            raise WrongCharacteristic("y^2 = f specs are invalid in characteristic 2")
        if f.degree < 5 or f.degree % 2 == 0:
            raise WrongDegree(
                f"deg f = {f.degree}; only odd degrees 2g+1 with g >= 2 are supported"
            )
        return validate_odd_model(f, (f.degree - 1) // 2)
    if not s.startswith("alpha0=", i):
        raise ParseError('expected "f=" or "alpha0="', i)
    if field.char != 2:
        raise WrongCharacteristic("alpha0/terms specs require characteristic 2")
    i += len("alpha0=")
    alpha0, i = scan_element(field, s, i)
    i = _expect(s, i, ";terms=")
    branch = []
    while True:
        i = _expect(s, i, "(")
        a, i = scan_element(field, s, i)
        i = _expect(s, i, ":")
        alpha, i = scan_element(field, s, i)
        i = _expect(s, i, ")")
        branch.append((FieldElem(field, a), FieldElem(field, alpha)))
        if i < len(s) and s[i] == ",":
            i += 1
            continue
        break
    i = _skip_ws(s, i)
    if i != len(s):
        raise ParseError("trailing characters after curve spec", i)
    model, _ = validate_as_model(FieldElem(field, alpha0), branch, len(branch))
    return model
