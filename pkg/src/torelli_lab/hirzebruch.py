"""Picard-lattice arithmetic on the ruled surfaces F_n and dimension counts.

The lattice of F_n is generated by the directrix E and a fiber F with
E.E = -n, E.F = 1, F.F = 0.  A genus-g hyperelliptic curve embeds in
F_{g+1} with class 2E + (2g+2)F; the adjunction formula, Riemann-Roch on
the curve, and the (n+5)-dimensional automorphism group of F_n combine into
the dimension count dim H_g = (3g+5) - (g+6) = 2g-1, which this module
replays as exact integer arithmetic.
"""

from .errors import OddAdjunction, SurfaceMismatch


class DivisorClass:
    """a*E + b*F on the surface F_n."""

    __slots__ = ("n", "a", "b")

    def __init__(self, n, a, b):
        if n < 1:
            raise ValueError(f"surface index must be >= 1, got {n}")
        self.n = n
        self.a = a
        self.b = b

    def __add__(self, other):
        if other.n != self.n:
            raise SurfaceMismatch(f"F_{self.n} vs F_{other.n}")
        return DivisorClass(self.n, self.a + other.a, self.b + other.b)

    def __neg__(self):
        return DivisorClass(self.n, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return DivisorClass(self.n, k * self.a, k * self.b)

    def __eq__(self, other):
        return (
            isinstance(other, DivisorClass)
            and (other.n, other.a, other.b) == (self.n, self.a, self.b)
        )

    def __hash__(self):
        return hash((self.n, self.a, self.b))

    def __str__(self):
        def term(c, name):
            if c == 0:
                return None
            if c == 1:
                return name
            if c == -1:
                return f"-{name}"
            return f"{c}{name}"

        parts = [t for t in (term(self.a, "E"), term(self.b, "F")) if t]
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else f"+{p}"
        return out

    def __repr__(self):
        return f"<{self} on F_{self.n}>"


def E(n):
    return DivisorClass(n, 1, 0)


def F(n):
    return DivisorClass(n, 0, 1)


def intersect(u, v):
    """Bilinear pairing with E.E = -n, E.F = 1, F.F = 0."""
    if u.n != v.n:
        raise SurfaceMismatch(f"F_{u.n} vs F_{v.n}")
    return -u.n * u.a * v.a + u.a * v.b + v.a * u.b


def canonical_class(n):
    """K = -2E - (n+2)F on F_n."""
    return DivisorClass(n, -2, -(n + 2))


def adjunction_genus(c):
    """g with 2g - 2 = (K + c).c; OddAdjunction if that is not even."""
    k = canonical_class(c.n)
    val = intersect(k + c, c)
    if val % 2 != 0:
        raise OddAdjunction(f"(K+C).C = {val} is odd; {c} is not a curve class")
    return (val + 2) // 2


def hyperelliptic_class(g):
    """The class 2E + (2g+2)F on F_{g+1} cut out by genus-g double covers."""
    if g < 2:
        raise ValueError(f"genus must be >= 2, got {g}")
    c = DivisorClass(g + 1, 2, 2 * g + 2)
    assert adjunction_genus(c) == g
    assert intersect(c, F(g + 1)) == 2  # a fiber meets the degree-2 cover twice
    assert intersect(c, E(g + 1)) == 0  # the curve misses the directrix
    return c


def aut_dimension(n):
    """dim Aut(F_n) = n + 5."""
    return n + 5


def linear_system_dim(g):
    """(h0, projective dim) of the hyperelliptic class on F_{g+1}.

    Replays the count: deg O_C(C) = C.C = 4g+4, so h0 on the curve is
    (4g+4) - g + 1 = 3g+5 by Riemann-Roch, h0 on the surface is one more,
    and the projective dimension is 3g+5.
    """
    c = hyperelliptic_class(g) if g >= 2 else DivisorClass(g + 1, 2, 2 * g + 2)
    deg = intersect(c, c)
    h0_curve = deg - g + 1
    h0_surface = h0_curve + 1
    return h0_surface, h0_surface - 1


def hg_dimension(g):
    """dim of the genus-g hyperelliptic moduli: (3g+5) - ((g+1)+5) = 2g-1."""
    if g < 2:
        raise ValueError(f"genus must be >= 2, got {g}")
    _, proj = linear_system_dim(g)
    return proj - aut_dimension(g + 1)


def dimension_table_row(g):
    """All surface-side counts for one genus, as plain integers."""
    c = hyperelliptic_class(g)
    h0, proj = linear_system_dim(g)
    return {
        "genus": g,
        "surface": f"F_{g + 1}",
        "curve_class": str(c),
        "self_intersection": intersect(c, c),
        "adjunction_genus": adjunction_genus(c),
        "h0": h0,
        "proj_dim": proj,
        "aut_dim": aut_dimension(g + 1),
        "dim_hg": hg_dimension(g),
    }
