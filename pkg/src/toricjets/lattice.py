"""Exact integer and rational linear algebra.

Vectors are tuples of Python ints; matrices are tuples of row tuples.  Every
routine is exact: integer work uses fraction-free (Bareiss) elimination and
rational work uses :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd, isqrt, lcm
from typing import Iterable, Sequence

Vector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


def as_matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    return tuple(tuple(r) for r in rows)


def transpose(m: Sequence[Sequence]) -> tuple:
    if not m:
        return ()
    return tuple(zip(*m))


def mat_vec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def primitive(v: Sequence[int]) -> tuple[int, Vector]:
    """Split ``v`` as ``g * p`` with ``g >= 0`` and ``p`` primitive.

    The zero vector gives ``(0, v)``.  The sign of ``v`` is kept in ``p``.
    """
    v = tuple(int(c) for c in v)
    g = reduce(gcd, v, 0)
    if g == 0:
        return 0, v
    return g, tuple(c // g for c in v)


def normalize_sign(v: Sequence[int]) -> Vector:
    """Flip ``v`` so that its first nonzero entry is positive."""
    for c in v:
        if c:
            return tuple(v) if c > 0 else tuple(-x for x in v)
    return tuple(v)


def clear_denominators(v: Sequence[Fraction | int]) -> Vector:
    """Scale a rational vector to a primitive integer vector (same direction)."""
    den = reduce(lcm, (Fraction(c).denominator for c in v), 1)
    return primitive([int(Fraction(c) * den) for c in v])[1]


def _integer_rows(m: Sequence[Sequence[Fraction | int]]) -> list[list[int]]:
    rows = []
    for r in m:
        den = reduce(lcm, (Fraction(c).denominator for c in r), 1)
        rows.append([int(Fraction(c) * den) for c in r])
    return rows


def _bareiss(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """In-place fraction-free row echelon form; returns (rows, pivot columns)."""
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        for i in range(r + 1, n_rows):
            a = rows[i][c]
            row_i = rows[i]
            row_r = rows[r]
            for j in range(c + 1, n_cols):
                row_i[j] = (p * row_i[j] - a * row_r[j]) // prev
            row_i[c] = 0
        prev = p
        pivots.append(c)
        r += 1
    return rows, pivots


_PRIME = 2**127 - 1
_SMALL = 600


def _reduce_mod(m: Sequence[Sequence[Fraction | int]], p: int) -> list[list[int]] | None:
    inverses: dict[int, int] = {}
    rows = []
    for r in m:
        row = []
        for c in r:
            if isinstance(c, Fraction):
                d = c.denominator
                if d not in inverses:
                    if d % p == 0:
                        return None
                    inverses[d] = pow(d, -1, p)
                row.append(c.numerator * inverses[d] % p)
            else:
                row.append(c % p)
        rows.append(row)
    return rows


def _rref_mod(rows: list[list[int]], p: int) -> list[int]:
    """Reduced row echelon form mod ``p`` in place; returns pivot columns."""
    n_rows, n_cols = len(rows), len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        top = rows[r] = [x * inv % p for x in rows[r]]
        for i in range(n_rows):
            f = rows[i][c]
            if i != r and f:
                row = rows[i]
                for j in range(c, n_cols):
                    row[j] = (row[j] - f * top[j]) % p
        pivots.append(c)
        r += 1
    return pivots


def _rational_reconstruction(a: int, p: int) -> Fraction | None:
    """The fraction n/d with |n|, d <= sqrt(p/2) congruent to ``a`` mod ``p``."""
    bound = isqrt(p // 2)
    r0, r1, t0, t1 = p, a % p, 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound:
        return None
    return Fraction(r1, t1)


def _certified_rank(m: Sequence[Sequence[Fraction | int]]) -> int | None:
    """Rank via a modular computation, or None when it cannot be certified.

    The rank mod p is a lower bound.  For the upper bound the kernel of the
    narrower orientation is reconstructed over Q and checked exactly.
    """
    a = m if len(m[0]) <= len(m) else transpose(m)
    rows = _reduce_mod(a, _PRIME)
    if rows is None:
        return None
    pivots = _rref_mod(rows, _PRIME)
    r = len(pivots)
    n = len(a[0])
    if r == min(len(a), n):
        return r
    free = [c for c in range(n) if c not in set(pivots)]
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            val = _rational_reconstruction(-rows[i][f], _PRIME)
            if val is None:
                return None
            x[pc] = val
        den = reduce(lcm, (c.denominator for c in x), 1)
        xi = [int(c * den) for c in x]
        support = [j for j in range(n) if xi[j]]
        if any(sum(row[j] * xi[j] for j in support) != 0 for row in a):
            return None
    return r


def rank_exact(m: Sequence[Sequence[Fraction | int]]) -> int:
    """Rank over the rationals.

    Large matrices go through :func:`_certified_rank`; small ones, and any
    case the modular route cannot certify, are reduced by fraction-free
    elimination after scaling rational rows to integers.
    """
    if not m or not m[0]:
        return 0
    if len(m) * len(m[0]) > _SMALL:
        r = _certified_rank(m)
        if r is not None:
            return r
    _, pivots = _bareiss(_integer_rows(m))
    return len(pivots)


def det(m: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (Bareiss)."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(map(int, r)) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rref(m: Sequence[Sequence[Fraction | int]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q with the pivot column list."""
    rows = [[Fraction(x) for x in r] for r in m]
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


def kernel_basis(m: Sequence[Sequence[Fraction | int]], n_cols: int | None = None) -> list[Vector]:
    """Basis of the rational null space ``{v : m v = 0}``.

    Each vector is primitive with first nonzero entry positive.  The vectors
    come from the free columns of the reduced echelon form, so they are
    linearly independent and span the kernel.
    """
    if n_cols is None:
        n_cols = len(m[0]) if m else 0
    if not m:
        return [tuple(int(i == j) for j in range(n_cols)) for i in range(n_cols)]
    rows, pivots = rref(m)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][f]
        basis.append(normalize_sign(clear_denominators(v)))
    return basis


def solve(m: Sequence[Sequence[Fraction | int]], b: Sequence[Fraction | int]) -> tuple[Fraction, ...] | None:
    """Unique solution of a square nonsingular system, or None if singular."""
    n = len(m)
    aug = [list(r) + [b[i]] for i, r in enumerate(m)]
    rows, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return tuple(rows[i][n] for i in range(n))


def inverse(m: Sequence[Sequence[Fraction | int]]) -> tuple[tuple[Fraction, ...], ...] | None:
    n = len(m)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        return None
    return tuple(tuple(rows[i][n:]) for i in range(n))


def integer_inverse(m: Sequence[Sequence[int]]) -> Matrix:
    """Inverse of a unimodular integer matrix."""
    inv = inverse(m)
    if inv is None or any(x.denominator != 1 for r in inv for x in r):
        raise ValueError("matrix is not unimodular")
    return tuple(tuple(int(x) for x in r) for r in inv)


def is_lattice_basis(vs: Sequence[Sequence[int]]) -> bool:
    """True iff ``vs`` is a basis of Z^d: exactly d vectors with det +-1."""
    if not vs:
        return False
    d = len(vs[0])
    if len(vs) != d:
        return False
    return abs(det(vs)) == 1


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a - (a // b) * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def column_hermite(a: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Column-reduce ``a`` (r x n) to lower-triangular echelon form.

    Returns ``(h, v)`` with ``v`` unimodular (n x n) and ``h = a v``.  For
    each processed row the pivot sits on the next free column and every entry
    to its right is zero; trailing columns of ``h`` that never received a
    pivot are zero, so the matching columns of ``v`` are a Z-basis of the
    integer kernel of ``a``.
    """
    rows = len(a)
    n = len(a[0]) if rows else 0
    h = [list(map(int, r)) for r in a]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def combine(i: int, j: int, p: int, q: int, r_: int, s: int) -> None:
        # new col_i = p*col_i + q*col_j ; new col_j = r_*col_i + s*col_j
        for mat in (h, v):
            for row in mat:
                ci, cj = row[i], row[j]
                row[i] = p * ci + q * cj
                row[j] = r_ * ci + s * cj

    col = 0
    for r in range(rows):
        if col >= n:
            break
        for j in range(col + 1, n):
            b = h[r][j]
            if b == 0:
                continue
            a_ = h[r][col]
            g, x, y = _xgcd(a_, b)
            combine(col, j, x, y, -b // g, a_ // g)
        if h[r][col] == 0:
            continue
        if h[r][col] < 0:
            for mat in (h, v):
                for row in mat:
                    row[col] = -row[col]
        col += 1
    return as_matrix(h), as_matrix(v)


def integer_kernel_basis(a: Sequence[Sequence[int]], n_cols: int | None = None) -> list[Vector]:
    """Z-basis of ``{x in Z^n : a x = 0}`` (a saturated lattice)."""
    if not a:
        n = n_cols or 0
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    h, v = column_hermite(a)
    n = len(v)
    used = [j for j in range(n) if any(row[j] for row in h)]
    return [tuple(v[i][j] for i in range(n)) for j in range(n) if j not in used]


def elementary_divisors_trivial(a: Sequence[Sequence[int]]) -> bool:
    """True iff the full-row-rank matrix ``a`` maps Z^n onto Z^r.

    Equivalent to the gcd of the maximal minors being 1.
    """
    r = len(a)
    n = len(a[0]) if r else 0
    g = 0
    for cols in combinations(range(n), r):
        g = gcd(g, det([[row[c] for c in cols] for row in a]))
        if g == 1:
            return True
    return False


def complete_to_unimodular(a: Sequence[Sequence[int]]) -> Matrix:
    """Extend the rows of a surjective r x n integer matrix to a basis of Z^n.

    The returned unimodular matrix has ``a`` as its first r rows.
    """
    r = len(a)
    h, v = column_hermite(a)
    n = len(v)
    vinv = integer_inverse(v)
    # a = h vinv and h = [H 0] with H lower-triangular; H must be unimodular.
    hh = [row[:r] for row in h]
    if abs(det(hh)) != 1:
        raise ValueError("rows do not span a saturated sublattice of rank r")
    top = mat_mul(hh, [row for row in vinv[:r]])
    assert top == as_matrix(a)
    return as_matrix(list(top) + list(vinv[r:]))


def primitive_vectors(dim: int, bound: int) -> list[Vector]:
    """Primitive integer vectors with sup-norm <= bound, one per +- pair.

    Ordered by sup-norm, then lexicographically descending so that the
    coordinate functionals e_1, e_2, ... come first.
    """
    from itertools import product

    out = []
    for v in product(range(-bound, bound + 1), repeat=dim):
        if normalize_sign(v) != v:
            continue
        g, _ = primitive(v)
        if g == 1:
            out.append(v)
    out.sort(key=lambda v: (max(abs(c) for c in v), sum(abs(c) for c in v), tuple(-c for c in v)))
    return out
