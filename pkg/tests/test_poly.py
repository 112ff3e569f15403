import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from torelli_lab.errors import (
    BothZero,
    DivideByZero,
    NonSplitDenominator,
    ParseError,
)
from torelli_lab.fields import GF, QQ
from torelli_lab.poly import (
    PartialFraction,
    Poly,
    RatFunc,
    formal_derivative,
    linear_roots,
    parse_poly,
    partial_fractions,
    poly_gcd,
    poly_string,
)

F2, F5, F7 = GF(2), GF(5), GF(7)
F4 = GF(2, 2)


def random_poly(field, rng, max_deg=6, monic=False):
    deg = rng.randint(0, max_deg)
    coeffs = [field.random(rng).v for _ in range(deg)]
    coeffs.append(field.rone if monic else field.random_nonzero(rng).v)
    return Poly._raw(field, coeffs)


class TestPolyBasics:
    def test_degree_and_zero(self):
        assert Poly.zero(F5).degree == -1
        assert Poly.one(F5).degree == 0
        assert parse_poly(F5, "x^3+1").degree == 3

    def test_divmod_reconstructs(self):
        rng = random.Random(1)
        for field in (QQ, F5, F4):
            for _ in range(100):
                a = random_poly(field, rng)
                b = random_poly(field, rng, max_deg=3)
                q, r = divmod(a, b)
                assert q * b + r == a
                assert r.is_zero or r.degree < b.degree

    def test_eval_horner(self):
        p = parse_poly(F7, "x^3+2*x+5")
        assert p(F7(2)) == F7(8 + 4 + 5)

    def test_taylor_shift(self):
        p = parse_poly(QQ, "x^2+1")
        q = p.taylor_shift(Fraction(3))
        assert q == parse_poly(QQ, "x^2+6*x+10")

    def test_reverse(self):
        p = parse_poly(F5, "2*x^3+x+4")
        assert p.reverse() == parse_poly(F5, "4*x^3+x^2+2")


class TestGcd:
    def test_examples(self):
        x = Poly.x(QQ)
        assert poly_gcd(x * x - Poly.one(QQ), x - Poly.one(QQ)) == x - Poly.one(QQ)
        f = parse_poly(F7, "x^5+1")
        # x does not divide x^5+1 since f(0) = 1, so gcd with 5x^4 is 1
        assert f(F7.zero) != F7.zero
        assert poly_gcd(f, f.derivative()) == Poly.one(F7)
        g = parse_poly(F2, "x^2+x")
        assert poly_gcd(g, g) == g

    def test_both_zero(self):
        with pytest.raises(BothZero):
            poly_gcd(Poly.zero(F5), Poly.zero(F5))

    def test_gcd_divides_both(self):
        rng = random.Random(2)
        for field in (QQ, F5, F4):
            for _ in range(100):
                a, b = random_poly(field, rng), random_poly(field, rng)
                g = poly_gcd(a, b)
                assert (a % g).is_zero and (b % g).is_zero


class TestDerivative:
    def test_examples(self):
        assert parse_poly(F2, "x^3+x^2+1").derivative() == parse_poly(F2, "x^2")
        assert parse_poly(F5, "x^5").derivative().is_zero
        assert formal_derivative(parse_poly(QQ, "x^2+3*x")) == parse_poly(QQ, "2*x+3")

    def test_leibniz_randomized(self):
        rng = random.Random(3)
        for field in (QQ, F5, F7, F4, GF(3, 4)):
            for _ in range(120):
                a, b = random_poly(field, rng), random_poly(field, rng)
                lhs = (a * b).derivative()
                assert lhs == a * b.derivative() + a.derivative() * b

    def test_pth_power_has_zero_derivative(self):
        rng = random.Random(4)
        for field in (F2, F5, GF(3, 4)):
            p = field.char
            for _ in range(50):
                a = random_poly(field, rng, max_deg=3)
                assert (a**p).derivative().is_zero


class TestRatFunc:
    def test_char2_halves_cancel(self):
        one_x = RatFunc(Poly.one(F2), Poly.x(F2))
        assert (one_x + one_x).is_zero

    def test_inverse_product(self):
        xm1 = parse_poly(QQ, "x-1")
        assert RatFunc(Poly.one(QQ), xm1) * RatFunc(xm1) == RatFunc.one(QQ)

    def test_char2_sum_example(self):
        s = RatFunc(Poly.one(F2), Poly.x(F2)) + RatFunc(
            Poly.one(F2), parse_poly(F2, "x+1")
        )
        assert s == RatFunc(Poly.one(F2), parse_poly(F2, "x^2+x"))

    def test_zero_denominator(self):
        with pytest.raises(DivideByZero):
            RatFunc(Poly.one(F5), Poly.zero(F5))
        with pytest.raises(DivideByZero):
            RatFunc.one(F5) / RatFunc.zero(F5)

    def test_reduction_is_canonical(self):
        # equality of rational functions iff cross-multiplication equality
        rng = random.Random(5)
        for field in (QQ, F5, F4):
            for _ in range(200):
                n1, d1 = random_poly(field, rng), random_poly(field, rng, monic=True)
                n2, d2 = random_poly(field, rng), random_poly(field, rng, monic=True)
                r1, r2 = RatFunc(n1, d1), RatFunc(n2, d2)
                assert (r1 == r2) == (n1 * d2 == n2 * d1)

    def test_quotient_rule(self):
        rng = random.Random(6)
        for field in (QQ, F5):
            for _ in range(60):
                r = RatFunc(random_poly(field, rng), random_poly(field, rng, monic=True))
                s = RatFunc(random_poly(field, rng), random_poly(field, rng, monic=True))
                assert (r * s).derivative() == r.derivative() * s + r * s.derivative()


def split_ratfunc(field, rng, nroots=3, max_mult=2):
    """A random rational function whose denominator visibly splits."""
    idxs = rng.sample(range(field.order), nroots) if field.is_finite else None
    den = Poly.one(field)
    for i in range(nroots):
        root = (
            field.relement_at(idxs[i])
            if field.is_finite
            else Fraction(rng.randint(-6, 6))
        )
        lin = Poly(field, [field.rneg(field.rcanon(root)), 1]) if field.is_finite else Poly(
            field, [-root, 1]
        )
        den = den * lin ** rng.randint(1, max_mult)
    num = random_poly(field, rng, max_deg=den.degree + 2)
    return RatFunc(num, den)


class TestPartialFractions:
    def test_gf5_example(self):
        r = RatFunc(Poly.one(F5), parse_poly(F5, "x^2-x"))
        pf = partial_fractions(r)
        assert pf.poly_part.is_zero
        assert pf.terms == ((0, 1, 4), (1, 1, 1))
        assert pf.recombine() == r

    def test_gf2_example_with_poly_part(self):
        r = RatFunc(parse_poly(F2, "x^5+1"), parse_poly(F2, "x^4+x^2"))
        pf = partial_fractions(r)
        assert pf.poly_part == parse_poly(F2, "x")
        assert pf.terms == ((0, 2, 1), (1, 1, 1))
        assert pf.recombine() == r

    def test_rational_example(self):
        r = RatFunc(parse_poly(QQ, "x"), parse_poly(QQ, "x+1"))
        pf = partial_fractions(r)
        assert pf.poly_part == Poly.one(QQ)
        assert pf.terms == ((Fraction(-1), 1, Fraction(-1)),)

    def test_non_split_names_residual(self):
        r = RatFunc(Poly.one(F5), parse_poly(F5, "x^2+2"))  # irreducible over GF(5)
        with pytest.raises(NonSplitDenominator) as ei:
            partial_fractions(r)
        assert ei.value.residual == parse_poly(F5, "x^2+2")

    def test_round_trip_randomized(self):
        # >= 500 random split-denominator inputs per context
        for field in (QQ, F5, GF(101), F4, GF(2, 4)):
            rng = random.Random(field.order or 0)
            for _ in range(500):
                r = split_ratfunc(field, rng)
                pf = partial_fractions(r)
                assert pf.recombine() == r
                for root, mult, numer in pf.terms:
                    assert numer != field.rzero and mult >= 1

    def test_terms_sorted_and_distinct(self):
        rng = random.Random(9)
        for _ in range(100):
            r = split_ratfunc(GF(101), rng, nroots=4, max_mult=3)
            pf = partial_fractions(r)
            keys = [(root, mult) for root, mult, _ in pf.terms]
            assert keys == sorted(keys, key=lambda t: (t[0], -t[1]))
            assert len(set(keys)) == len(keys)


class TestLinearRoots:
    def test_finite_field(self):
        roots, residual = linear_roots(parse_poly(F5, "x^2-x"))
        assert roots == [(0, 1), (1, 1)]
        assert residual == Poly.one(F5)

    def test_rational_with_multiplicity(self):
        p = parse_poly(QQ, "x^3-7/2*x^2+2*x+2")  # (x-2)^2 (x+1/2)
        roots, residual = linear_roots(p)
        assert roots == [(Fraction(-1, 2), 1), (Fraction(2), 2)]
        assert residual == Poly.one(QQ)

    def test_irreducible_residual(self):
        roots, residual = linear_roots(parse_poly(F5, "x^3+2*x"))
        assert roots == [(0, 1)]
        assert residual == parse_poly(F5, "x^2+2")


class TestStringsAndParsing:
    def test_juxtaposed_coefficient(self):
        assert parse_poly(F7, "x^5 + 3x + 1") == parse_poly(F7, "x^5+3*x+1")

    def test_round_trip_randomized(self):
        rng = random.Random(10)
        for field in (QQ, F5, F4, GF(3, 4)):
            for _ in range(200):
                p = random_poly(field, rng)
                assert parse_poly(field, poly_string(p)) == p

    def test_ext_coefficients_need_parens_only_when_composite(self):
        p = parse_poly(F4, "x^2+(t+1)*x+t")
        assert poly_string(p) == "x^2+(t+1)*x+t"
        assert parse_poly(F4, "t*x") == Poly(F4, [0, F4.gen()])

    def test_parse_error_positions(self):
        with pytest.raises(ParseError) as ei:
            parse_poly(F5, "x^")
        assert ei.value.pos == 2
        with pytest.raises(ParseError) as ei:
            parse_poly(F5, "x + $")
        assert ei.value.pos == 4
        with pytest.raises(ParseError) as ei:
            parse_poly(F4, "(t+1*x")
        assert ei.value.pos == 0

    @given(st.lists(st.integers(-50, 50), min_size=0, max_size=8))
    @settings(max_examples=100)
    def test_rational_poly_string_round_trip(self, coeffs):
        p = Poly(QQ, coeffs)
        assert parse_poly(QQ, poly_string(p)) == p
