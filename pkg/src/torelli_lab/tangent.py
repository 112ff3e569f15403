"""Differential bases and the tangent-space maps, materialized as matrices.

The function field of a hyperelliptic curve is a quadratic extension of
k(x): every element is even(x) + odd(x)*y, reduced through the curve
relation y^2 = f (odd characteristic) or y^2 = y + f (characteristic 2).  A
Section is such an element times (dx)^m, m = 0 for sections of powers of the
degree-2 bundle L, m = 1 for H0(omega) and H0(omega (x) L^dual), m = 2 for
quadratic differentials.

Explicit bases:

* odd characteristic, y^2 = f, deg f = 2g+1:
  H0(omega) = { x^i dx/y : 0 <= i <= g-1 },  H0(L) = {1, x},
  H0(omega (x) L^dual) = { x^j dx/y : 0 <= j <= g-2 };
* characteristic 2, y^2 - y = alpha0 x + sum alphai/(x-ai):
  H0(omega) = { dx/(x-ai) },  H0(L) = {1, x-a1},
  H0(omega (x) L^dual) = { dx/((x-a1)(x-ai)) : 2 <= i <= g }.

From these we build three matrices: the multiplication map
Sym^2 H0(omega) -> H0(omega^2) in the product basis, the multiplication map
mu0 : H0(L) (x) H0(omega (x) L^dual) -> H0(omega), and the Gauss-type map
mu1 : ker mu0 -> H0(omega^2) sending r (x) s to dr*s.  Quadratic
differentials are coordinatized on the k(x)-basis {1, y} with per-parity
common denominators, so the rank of a stacked coordinate matrix is exactly
the dimension of the span.  The ambient dim H0(omega^2) = 3g-3 enters only
as a number (Riemann-Roch); the cokernel dimension of the combined map is
3g-3 minus the combined rank.
"""

import json
import random

from .curves import ASModel, OddModel, serialize_curve
from .errors import DenominatorOverflow, ModelMismatch, NotInKernel
from .fields import FieldElem, field_spec_string
from .linalg import Matrix
from .poly import Poly, RatFunc


def _relation_rhs(model):
    """y^2 as even part: f for OddModel; for ASModel y^2 = y + f."""
    if isinstance(model, OddModel):
        return RatFunc(model.f)
    return model.f_rat


class FFElem:
    """even(x) + odd(x)*y in the function field of a fixed model."""

    __slots__ = ("model", "even", "odd")

    def __init__(self, model, even, odd):
        self.model = model
        self.even = even
        self.odd = odd

    @classmethod
    def zero(cls, model):
        z = RatFunc.zero(model.field)
        return cls(model, z, z)

    @classmethod
    def from_even(cls, model, even):
        return cls(model, even, RatFunc.zero(model.field))

    @classmethod
    def from_odd(cls, model, odd):
        return cls(model, RatFunc.zero(model.field), odd)

    def _check(self, other):
        if not isinstance(other, FFElem):
            raise TypeError(f"expected FFElem, got {type(other).__name__}")
        if other.model != self.model:
            raise ModelMismatch("elements live on different curves")

    def __add__(self, other):
        self._check(other)
        return FFElem(self.model, self.even + other.even, self.odd + other.odd)

    def __sub__(self, other):
        self._check(other)
        return FFElem(self.model, self.even - other.even, self.odd - other.odd)

    def __neg__(self):
        return FFElem(self.model, -self.even, -self.odd)

    def __mul__(self, other):
        self._check(other)
        e1, o1 = self.even, self.odd
        e2, o2 = other.even, other.odd
        cross = e1 * o2 + o1 * e2
        if o1.is_zero or o2.is_zero:
            return FFElem(self.model, e1 * e2, cross)
        sq = o1 * o2
        even = e1 * e2 + sq * _relation_rhs(self.model)
        if isinstance(self.model, ASModel):
            cross = cross + sq  # y^2 = y + f contributes an odd part too
        return FFElem(self.model, even, cross)

    def scale(self, c):
        """Multiply by a raw scalar."""
        return FFElem(self.model, self.even.scale(c), self.odd.scale(c))

    @property
    def is_zero(self):
        return self.even.is_zero and self.odd.is_zero

    def __eq__(self, other):
        return (
            isinstance(other, FFElem)
            and other.model == self.model
            and other.even == self.even
            and other.odd == self.odd
        )

    def __repr__(self):
        return f"<({self.even}) + ({self.odd})*y>"


def ff_mul(a, b):
    return a * b


class Section:
    """A function-field element times (dx)^m."""

    __slots__ = ("elem", "dx_power")

    def __init__(self, elem, dx_power):
        self.elem = elem
        self.dx_power = dx_power

    def __mul__(self, other):
        return Section(self.elem * other.elem, self.dx_power + other.dx_power)

    def __add__(self, other):
        if other.dx_power != self.dx_power:
            raise ValueError("cannot add sections of different dx powers")
        return Section(self.elem + other.elem, self.dx_power)

    def __neg__(self):
        return Section(-self.elem, self.dx_power)

    def scale(self, c):
        return Section(self.elem.scale(c), self.dx_power)

    def __repr__(self):
        return f"<{self.elem!r} (dx)^{self.dx_power}>"


def ff_differential(a):
    """d(e + o*y) = (e' + o'*y + o*y') dx as a Section with dx_power 1.

    Implicit differentiation of the curve relation gives y' = f'*y/(2f) for
    y^2 = f and y' = f' for y^2 - y = f in characteristic 2.
    """
    model = a.model
    if isinstance(model, OddModel):
        f = RatFunc(model.f)
        fp = RatFunc(model.f.derivative())
        two = RatFunc.const(model.field, FieldElem(model.field, model.field.rfrom_int(2)))
        even = a.even.derivative()
        odd = a.odd.derivative() + a.odd * fp / (two * f)
    else:
        fp = model.f_rat.derivative()
        even = a.even.derivative() + a.odd * fp
        odd = a.odd.derivative()
    return Section(FFElem(model, even, odd), 1)


class SpaceBasis:
    """An ordered basis of one of the four section spaces."""

    __slots__ = ("label", "sections")

    def __init__(self, label, sections):
        self.label = label
        self.sections = tuple(sections)

    @property
    def dim(self):
        return len(self.sections)

    def __repr__(self):
        return f"<{self.label}, dim {self.dim}>"


def basis_H0_omega(model):
    """The g regular differentials, in the model's standard order."""
    field = model.field
    if isinstance(model, OddModel):
        f = model.f
        secs = [
            Section(FFElem.from_odd(model, RatFunc(Poly.x(field) ** i, f)), 1)
            for i in range(model.g)
        ]
    else:
        secs = [
            Section(
                FFElem.from_even(
                    model, RatFunc(Poly.one(field), _lin(field, a))
                ),
                1,
            )
            for a, _ in model.branch
        ]
    return SpaceBasis("H0_omega", secs)


def _lin(field, a):
    return Poly._raw(field, [field.rneg(a), field.rone])


def basis_H0_L_and_omega_Ldual(model):
    """Bases of the 2-dimensional H0(L) and the (g-1)-dimensional twist."""
    field = model.field
    if isinstance(model, OddModel):
        L = [
            Section(FFElem.from_even(model, RatFunc.one(field)), 0),
            Section(FFElem.from_even(model, RatFunc.x(field)), 0),
        ]
        f = model.f
        W = [
            Section(FFElem.from_odd(model, RatFunc(Poly.x(field) ** j, f)), 1)
            for j in range(model.g - 1)
        ]
    else:
        a1 = model.branch[0][0]
        lin1 = _lin(field, a1)
        L = [
            Section(FFElem.from_even(model, RatFunc.one(field)), 0),
            Section(FFElem.from_even(model, RatFunc(lin1)), 0),
        ]
        W = [
            Section(
                FFElem.from_even(
                    model, RatFunc(Poly.one(field), lin1 * _lin(field, a))
                ),
                1,
            )
            for a, _ in model.branch[1:]
        ]
    return SpaceBasis("H0_L", L), SpaceBasis("H0_omega_Ldual", W)


class LinMap:
    """A matrix between indexed section bases; rows are domain images."""

    __slots__ = ("domain_labels", "codomain", "matrix")

    def __init__(self, domain_labels, codomain, matrix):
        self.domain_labels = tuple(domain_labels)
        self.codomain = codomain
        self.matrix = matrix

    def rank(self):
        return self.matrix.rank()

    def kernel_basis(self):
        """Vectors c with sum_i c_i * (image of domain vector i) = 0."""
        return self.matrix.left_nullspace()

    def __repr__(self):
        return f"<{len(self.domain_labels)} -> {self.codomain}: {self.matrix!r}>"


def _as_clean_poly(r, width, what):
    """Assert r is a polynomial of degree < width and pad its coefficients."""
    if not r.is_poly:
        raise DenominatorOverflow(
            f"{what}: denominator {r.den} does not divide the declared common denominator"
        )
    p = r.num
    if p.degree >= width:
        raise DenominatorOverflow(f"{what}: numerator degree {p.degree} >= {width}")
    return list(p.coeffs) + [r.field.rzero] * (width - len(p.coeffs))


def coordinatize_omega2(model, sections):
    """Stack quadratic differentials as exact coordinate rows.

    Each section splits over the k(x)-basis {1, y}; even parts are cleared
    over f (OddModel) or prod(x-ai)^2 (ASModel), odd parts over the same
    denominator, and the two numerator coefficient vectors are concatenated.
    Because {1, y} is a k(x)-basis of the function field, the rank of the
    stacked matrix equals the dimension of the spanned subspace.
    """
    field = model.field
    if isinstance(model, OddModel):
        den = RatFunc(model.f)
        width = model.f.degree
    else:
        B = model.branch_poly
        den = RatFunc(B * B)
        width = 2 * model.g
    rows = []
    for s in sections:
        if s.dx_power != 2:
            raise ValueError(f"expected a quadratic differential, got (dx)^{s.dx_power}")
        row = _as_clean_poly(s.elem.even * den, width, "even part")
        row += _as_clean_poly(s.elem.odd * den, width, "odd part")
        rows.append(row)
    return Matrix(field, rows, ncols=2 * width)


def _omega_coords(model, section):
    """Coordinates of a section of H0(omega) in the standard basis."""
    field = model.field
    if section.dx_power != 1:
        raise ValueError(f"expected a differential, got (dx)^{section.dx_power}")
    if isinstance(model, OddModel):
        if not section.elem.even.is_zero:
            raise DenominatorOverflow("omega section of an odd model must be odd")
        q = section.elem.odd * RatFunc(model.f)
        coords = _as_clean_poly(q, model.g, "omega coordinates")
        return coords
    if not section.elem.odd.is_zero:
        raise DenominatorOverflow("omega section of a char-2 model must be even")
    e = section.elem.even
    if e.is_zero:
        return [field.rzero] * model.g
    N, D = e.num, e.den
    if N.degree >= D.degree:
        raise DenominatorOverflow("omega section has a pole at infinity")
    if not (model.branch_poly % D).is_zero:
        raise DenominatorOverflow(f"denominator {D} does not divide the branch polynomial")
    Dp = D.derivative()
    coords = []
    for a, _ in model.branch:
        if D.eval_raw(a) == field.rzero:
            coords.append(field.rdiv(N.eval_raw(a), Dp.eval_raw(a)))
        else:
            coords.append(field.rzero)
    return coords


def mult_map(model):
    """Sym^2 H0(omega) -> H0(omega^2) in the product basis {w_i w_j, i <= j}."""
    omega = basis_H0_omega(model)
    labels = []
    products = []
    for i in range(omega.dim):
        for j in range(i, omega.dim):
            labels.append((i, j))
            products.append(omega.sections[i] * omega.sections[j])
    return LinMap(labels, "H0_omega2_ambient", coordinatize_omega2(model, products))


def mu0_map(model):
    """H0(L) (x) H0(omega (x) L^dual) -> H0(omega), multiplication."""
    L, W = basis_H0_L_and_omega_Ldual(model)
    labels = []
    rows = []
    for s in range(L.dim):
        for t in range(W.dim):
            labels.append((s, t))
            rows.append(_omega_coords(model, L.sections[s] * W.sections[t]))
    return LinMap(labels, "H0_omega", Matrix(model.field, rows, ncols=model.g))


def mu1_image(model, ker_basis, mu0=None):
    """Images dr*s of kernel vectors of mu0, as quadratic differentials.

    Each kernel vector is a coefficient vector over the tensor basis of
    mu0_map; membership in ker mu0 is verified exactly before mapping.
    """
    field = model.field
    if mu0 is None:
        mu0 = mu0_map(model)
    L, W = basis_H0_L_and_omega_Ldual(model)
    dL = [ff_differential(s.elem) for s in L.sections]
    sections = []
    for v in ker_basis:
        image = mu0.matrix.transpose().mul_vector(v)
        if any(c != field.rzero for c in image):
            raise NotInKernel("claimed kernel vector has a nonzero mu0 image")
        acc = Section(FFElem.zero(model), 2)
        for idx, (s, t) in enumerate(mu0.domain_labels):
            c = v[idx]
            if c == field.rzero or dL[s].elem.is_zero:
                continue
            acc = acc + (dL[s] * W.sections[t]).scale(c)
        sections.append(acc)
    return LinMap(
        list(range(len(ker_basis))),
        "H0_omega2_ambient",
        coordinatize_omega2(model, sections),
    )


def ambient_omega2_dim(g):
    """dim H0(omega^2) = 3g-3 by Riemann-Roch (3 at g = 2, same formula)."""
    return 3 * g - 3


def expected_dims(g, char):
    """The proven dimensions: full rank away from 2, cokernel g-2 at 2."""
    base = {
        "mult_rank": 2 * g - 1,
        "ker_mu0_dim": g - 2,
        "im_mu1_dim": g - 2,
    }
    if char == 2:
        base["combined_rank"] = 2 * g - 1
        base["cokernel_dim"] = g - 2
    else:
        base["combined_rank"] = 3 * g - 3
        base["cokernel_dim"] = 0
    return base


class RankReport:
    """Observed vs expected dimensions for one curve, JSON-serializable."""

    __slots__ = ("genus", "char", "field_spec", "observed", "expected", "passed",
                 "curve", "seed")

    def __init__(self, genus, char, field_spec, observed, expected, curve, seed):
        self.genus = genus
        self.char = char
        self.field_spec = field_spec
        self.observed = observed
        self.expected = expected
        self.passed = observed == expected
        self.curve = curve
        self.seed = seed

    def to_json_dict(self):
        return {
            "char": self.char,
            "field": self.field_spec,
            "genus": self.genus,
            "observed": dict(self.observed),
            "expected": dict(self.expected),
            "pass": self.passed,
            "curve": self.curve,
            "seed": self.seed,
        }

    def to_json(self):
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    def __repr__(self):
        flag = "pass" if self.passed else "FAIL"
        return f"<rank report g={self.genus} {self.field_spec}: {flag} {self.observed}>"


class TangentAnalysis:
    """All matrices and dimension data for one curve."""

    __slots__ = ("model", "mult", "mu0", "kernel", "mu1", "combined", "report")

    def __init__(self, model, mult, mu0, kernel, mu1, combined, report):
        self.model = model
        self.mult = mult
        self.mu0 = mu0
        self.kernel = kernel
        self.mu1 = mu1
        self.combined = combined
        self.report = report

    @property
    def mu0_rank(self):
        return self.mu0.rank()

    def mu0_cokernel_dim(self):
        return self.model.g - self.mu0.rank()

    def mu1_rows_in_mult_span(self):
        """Exact membership of every mu1 image in the multiplication image."""
        return all(
            self.mult.matrix.row_space_contains(row) for row in self.mu1.matrix.rows
        )

    def parity_blocks_clean(self):
        """Odd characteristic: mult rows purely even, mu1 rows purely odd."""
        zero = self.model.field.rzero
        half = self.mult.matrix.ncols // 2
        mult_even = all(
            all(v == zero for v in row[half:]) for row in self.mult.matrix.rows
        )
        mu1_odd = all(
            all(v == zero for v in row[:half]) for row in self.mu1.matrix.rows
        )
        return mult_even and mu1_odd


def analyze(model, seed=0):
    """Compute every map and the rank report for one curve.

    Two built-in oracles run on every analysis: each reported kernel vector
    is re-multiplied through mu0 (exact zero check, inside mu1_image), and
    the mult/combined ranks are re-derived after a seeded random row/column
    permutation with row scaling.
    """
    g = model.g
    mult = mult_map(model)
    mu0 = mu0_map(model)
    kernel = mu0.kernel_basis()
    mu1 = mu1_image(model, kernel, mu0=mu0)
    combined = mult.matrix.stack(mu1.matrix)

    mult_rank = mult.rank()
    combined_rank = combined.rank()
    observed = {
        "mult_rank": mult_rank,
        "ker_mu0_dim": len(kernel),
        "im_mu1_dim": mu1.rank(),
        "combined_rank": combined_rank,
        "cokernel_dim": ambient_omega2_dim(g) - combined_rank,
    }
    oracle = random.Random(seed * 0x9E3779B1 + 7)
    if mult.matrix.permuted_scaled_rank(oracle) != mult_rank:
        raise AssertionError("rank oracle mismatch on the multiplication map")
    if combined.permuted_scaled_rank(oracle) != combined_rank:
        raise AssertionError("rank oracle mismatch on the combined map")

    field = model.field
    report = RankReport(
        genus=g,
        char=str(field.char),
        field_spec=field_spec_string(field),
        observed=observed,
        expected=expected_dims(g, field.char),
        curve=serialize_curve(model),
        seed=seed,
    )
    return TangentAnalysis(model, mult, mu0, kernel, mu1, combined, report)


def rank_report(model, seed=0):
    return analyze(model, seed=seed).report
