"""Exact linear algebra over a field context.

Matrices hold raw field values (see fields.py).  Rank is computed by exact
elimination with a per-field fast path -- plain modular ints for GF(p),
precomputed sub/mul tables for small GF(p^k), and fraction-free integer
Bareiss elimination over Q after clearing row denominators -- while reduced
row echelon form, null spaces and span membership go through one generic
exact routine.  Pivoting is deterministic everywhere: leftmost pivot column,
first nonzero row.
"""

from fractions import Fraction

from .fields import ExtField, PrimeField, RationalField


def _rank_prime(p, rows):
    m = len(rows)
    n = len(rows[0])
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        prow = rows[r] = [(v * inv) % p for v in rows[r]]
        for i in range(r + 1, m):
            f = rows[i][c]
            if f:
                ri = rows[i]
                rows[i] = [(a - f * b) % p for a, b in zip(ri, prow)]
        r += 1
        if r == m:
            break
    return r


def _rank_tables(tables, rows):
    sub, mul, inv = tables
    m = len(rows)
    n = len(rows[0])
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        mi = mul[inv[rows[r][c]]]
        prow = rows[r] = [mi[v] for v in rows[r]]
        for i in range(r + 1, m):
            f = rows[i][c]
            if f:
                mf = mul[f]
                ri = rows[i]
                rows[i] = [sub[a][mf[b]] for a, b in zip(ri, prow)]
        r += 1
        if r == m:
            break
    return r


def _int_rows(rows):
    """Scale each Fraction row to integers (row scaling preserves rank)."""
    out = []
    for row in rows:
        lcm = 1
        for v in row:
            d = v.denominator
            g = _gcd(lcm, d)
            lcm = lcm // g * d
        ints = [int(v * lcm) for v in row]
        g = 0
        for v in ints:
            g = _gcd(g, abs(v))
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _rank_bareiss(rows):
    """Fraction-free elimination on integer rows; divisions are exact."""
    m = len(rows)
    n = len(rows[0])
    prev = 1
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        prow = rows[r]
        for i in range(r + 1, m):
            ri = rows[i]
            f = ri[c]
            rows[i] = [(pv * a - f * b) // prev for a, b in zip(ri, prow)]
        prev = pv
        r += 1
        if r == m:
            break
    return r


def _rank_generic(field, rows):
    rows = [list(r) for r in rows]
    m = len(rows)
    n = len(rows[0])
    zero = field.rzero
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if rows[i][c] != zero:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.rinv(rows[r][c])
        prow = rows[r] = [field.rmul(inv, v) for v in rows[r]]
        for i in range(r + 1, m):
            f = rows[i][c]
            if f != zero:
                ri = rows[i]
                rows[i] = [
                    field.rsub(a, field.rmul(f, b)) for a, b in zip(ri, prow)
                ]
        r += 1
        if r == m:
            break
    return r


def rank(field, rows):
    """Exact rank of a matrix given as rows of raw field values."""
    if not rows or not rows[0]:
        return 0
    if isinstance(field, PrimeField):
        return _rank_prime(field.p, [list(r) for r in rows])
    if isinstance(field, RationalField):
        return _rank_bareiss(_int_rows(rows))
    if isinstance(field, ExtField):
        tables = field.pair_tables()
        if tables is not None:
            return _rank_tables(tables, [list(r) for r in rows])
    return _rank_generic(field, rows)


def rref(field, rows):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    m = len(rows)
    n = len(rows[0]) if m else 0
    zero = field.rzero
    pivots = []
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if rows[i][c] != zero:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.rinv(rows[r][c])
        prow = rows[r] = [field.rmul(inv, v) for v in rows[r]]
        for i in range(m):
            if i == r:
                continue
            f = rows[i][c]
            if f != zero:
                ri = rows[i]
                rows[i] = [
                    field.rsub(a, field.rmul(f, b)) for a, b in zip(ri, prow)
                ]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows, pivots


def nullspace(field, rows, ncols):
    """Right null space basis {v : A v = 0}, leftmost-pivot convention.

    Basis vectors are indexed by the free columns in increasing order; each
    has a 1 in its free column, so the result is canonical.
    """
    if not rows:
        one = field.rone
        zero = field.rzero
        return [
            [one if i == j else zero for i in range(ncols)] for j in range(ncols)
        ]
    red, pivots = rref(field, rows)
    free = [c for c in range(ncols) if c not in pivots]
    zero, one = field.rzero, field.rone
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for i, pc in enumerate(pivots):
            v[pc] = field.rneg(red[i][fc])
        basis.append(v)
    return basis


def row_space_contains(field, rows, vec):
    """Is vec in the row span of the given rows?  Exact membership test."""
    if all(v == field.rzero for v in vec):
        return True
    if not rows:
        return False
    red, pivots = rref(field, rows)
    v = list(vec)
    for i, pc in enumerate(pivots):
        f = v[pc]
        if f != field.rzero:
            v = [field.rsub(a, field.rmul(f, b)) for a, b in zip(v, red[i])]
    return all(x == field.rzero for x in v)


class Matrix:
    """An exact matrix over a field context; rows of raw values."""

    __slots__ = ("field", "rows", "ncols")

    def __init__(self, field, rows, ncols=None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        self.field = field
        self.rows = rows
        self.ncols = ncols

    @property
    def nrows(self):
        return len(self.rows)

    def entry(self, i, j):
        from .fields import FieldElem

        return FieldElem(self.field, self.rows[i][j])

    def rank(self):
        return rank(self.field, self.rows)

    def transpose(self):
        return Matrix(
            self.field,
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            ncols=self.nrows,
        )

    def stack(self, other):
        if other.ncols != self.ncols or other.field != self.field:
            raise ValueError("cannot stack: shape or field mismatch")
        return Matrix(self.field, self.rows + other.rows, ncols=self.ncols)

    def nullspace(self):
        return nullspace(self.field, self.rows, self.ncols)

    def left_nullspace(self):
        """Vectors c with sum_i c_i * row_i = 0."""
        return self.transpose().nullspace()

    def row_space_contains(self, vec):
        return row_space_contains(self.field, self.rows, vec)

    def mul_vector(self, vec):
        """Matrix-vector product A v for a raw vector of length ncols."""
        f = self.field
        out = []
        for row in self.rows:
            acc = f.rzero
            for a, b in zip(row, vec):
                acc = f.radd(acc, f.rmul(a, b))
            out.append(acc)
        return out

    def permuted_scaled_rank(self, rng):
        """Rank after a random row/column permutation and row scaling.

        Used as an independent re-elimination oracle: the answer must equal
        rank() for any permutation and any invertible scaling.
        """
        f = self.field
        rperm = list(range(self.nrows))
        cperm = list(range(self.ncols))
        rng.shuffle(rperm)
        rng.shuffle(cperm)
        if isinstance(f, RationalField):
            scalars = [Fraction(rng.randint(1, 30), rng.randint(1, 7)) for _ in rperm]
        else:
            scalars = [f.random_nonzero(rng).v for _ in rperm]
        rows = [
            [f.rmul(scalars[i], self.rows[ri][cj]) for cj in cperm]
            for i, ri in enumerate(rperm)
        ]
        return rank(f, rows)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and other.field == self.field
            and other.rows == self.rows
            and other.ncols == self.ncols
        )

    def __repr__(self):
        return f"<{self.nrows}x{self.ncols} matrix over {self.field}>"
