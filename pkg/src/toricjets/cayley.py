"""Cayley decompositions ``[P_0 * ... * P_r]^s`` of lattice polytopes.

A length-2 decomposition of order s is witnessed by a primitive functional
``u`` whose values on the vertices take exactly two values, ``c`` and
``c + s``.  Longer decompositions are assembled from r such witnesses with
pairwise disjoint top classes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterator, Literal, Sequence

from .errors import SliceDimensionMismatch
from .lattice import (
    Matrix,
    Vector,
    column_hermite,
    dot,
    elementary_divisors_trivial,
    integer_inverse,
    kernel_basis,
    mat_vec,
    normalize_sign,
    primitive,
    primitive_vectors,
    rank_exact,
    solve,
)
from .polytope import LatticePolytope, _affine_rank

StrictMode = Literal["equal-dim", "project"]


@dataclass(frozen=True)
class CayleyWitness:
    """Functional ``u`` with the vertices split into two levels ``s`` apart."""

    functional: Vector
    low: frozenset[int]
    high: frozenset[int]
    base: int


@dataclass(frozen=True)
class CayleyDecomposition:
    """``P = [P_0 * ... * P_r]^s`` witnessed by an integer projection onto Z^r.

    ``projection`` maps every vertex of class i to ``offset + s e_i``
    (``e_0 = 0``); ``slices`` are the vertex lists of the classes written in
    coordinates of the fiber lattice ``ker(projection)``.
    """

    order: int
    projection: Matrix
    offset: Vector
    level_map: tuple[int, ...]
    slices: tuple[tuple[Vector, ...], ...]
    strict: bool
    polytope: LatticePolytope = field(compare=False, repr=False)

    @property
    def length(self) -> int:
        return len(self.slices)

    @property
    def slice_dims(self) -> tuple[int, ...]:
        return tuple(_affine_rank(s) for s in self.slices)


def min_edge_length(p: LatticePolytope) -> int:
    return min(e.lattice_length for e in p.edges)


def _independent_edges(p: LatticePolytope, v: int) -> list[tuple[Vector, int]]:
    chosen: list[tuple[Vector, int]] = []
    for _, d, length in p.edges_at(v):
        if rank_exact([c[0] for c in chosen] + [d]) > len(chosen):
            chosen.append((d, length))
        if len(chosen) == p.dim:
            break
    return chosen


def _witness_for(p: LatticePolytope, u: Vector, s: int) -> CayleyWitness | None:
    vals = [dot(u, v) for v in p.vertices]
    lo, hi = min(vals), max(vals)
    if hi - lo != s:
        return None
    if any(x != lo and x != hi for x in vals):
        return None
    low = frozenset(i for i, x in enumerate(vals) if x == lo)
    high = frozenset(i for i, x in enumerate(vals) if x == hi)
    return CayleyWitness(u, low, high, lo)


def cayley_witnesses(p: LatticePolytope, s: int) -> list[CayleyWitness]:
    """Every length-2 witness of order ``s``, one per +- pair, sorted by functional.

    Exhaustive: put the first vertex on the low level.  Each of ``dim``
    independent edges at it either stays on that level or climbs to the
    high level, where the climb fixes ``<u, direction> = s / length``.  The
    ``2^dim - 1`` patterns each determine ``u`` uniquely; every candidate is
    verified against all vertices.
    """
    if s < 1:
        return []
    edges = _independent_edges(p, 0)
    if len(edges) < p.dim:
        return []
    dirs = [d for d, _ in edges]
    found: dict[Vector, CayleyWitness] = {}
    for pattern in product((0, 1), repeat=p.dim):
        if not any(pattern):
            continue
        rhs = [Fraction(s, length) if up else Fraction(0) for up, (_, length) in zip(pattern, edges)]
        u = solve(dirs, rhs)
        if u is None or any(c.denominator != 1 for c in u):
            continue
        u_int = tuple(int(c) for c in u)
        g, _ = primitive(u_int)
        if g != 1:
            continue
        u_int = normalize_sign(u_int)
        w = _witness_for(p, u_int, s)
        if w is not None:
            found[u_int] = w
    return [found[k] for k in sorted(found)]


def candidate_directions(p: LatticePolytope, bound: int = 3) -> list[Vector]:
    """Facet normals, their pairwise sums and differences, and a box of small vectors."""
    normals = [f.normal for f in p.facets]
    cand = set(normalize_sign(n) for n in normals)
    for a, b in combinations(normals, 2):
        for v in (tuple(x - y for x, y in zip(a, b)), tuple(x + y for x, y in zip(a, b))):
            g, prim = primitive(v)
            if g:
                cand.add(normalize_sign(prim))
    cand.update(primitive_vectors(p.dim, bound))
    return sorted(cand)


def cayley_witnesses_bruteforce(p: LatticePolytope, s: int, bound: int = 3) -> list[CayleyWitness]:
    """Witnesses among :func:`candidate_directions`; a bounded search oracle."""
    out = []
    for u in candidate_directions(p, bound):
        w = _witness_for(p, u, s)
        if w is not None:
            out.append(w)
    return out


def _fiber_coordinates(projection: Sequence[Sequence[int]]):
    """Return a map sending x in Z^n to coordinates in the lattice ker(projection)."""
    r = len(projection)
    _, v = column_hermite(projection)
    vinv = integer_inverse(v)

    def coords(x: Sequence[int]) -> Vector:
        return tuple(mat_vec(vinv, x))[r:]

    return coords


def _build(p: LatticePolytope, s: int, tops: Sequence[CayleyWitness], mode: StrictMode) -> CayleyDecomposition:
    """Assemble a decomposition from witnesses whose high classes are disjoint."""
    r = len(tops)
    rows = []
    offset = []
    level = [0] * len(p.vertices)
    for i, w in enumerate(tops, start=1):
        # orient so that the class of this witness sits on the high level
        u = w.functional
        rows.append(u)
        offset.append(w.base)
        for j in w.high:
            level[j] = i
    coords = _fiber_coordinates(rows)
    slices = tuple(
        tuple(sorted(coords(p.vertices[j]) for j in range(len(p.vertices)) if level[j] == i)) for i in range(r + 1)
    )
    d = CayleyDecomposition(s, tuple(rows), tuple(offset), tuple(level), slices, False, p)
    strict = is_strict(d, mode)
    return CayleyDecomposition(s, tuple(rows), tuple(offset), tuple(level), slices, strict, p)


def _oriented(p: LatticePolytope, s: int) -> list[CayleyWitness]:
    """Both orientations of every witness, sorted by functional."""
    out = []
    for w in cayley_witnesses(p, s):
        out.append(w)
        neg = tuple(-c for c in w.functional)
        out.append(CayleyWitness(neg, w.high, w.low, -(w.base + s)))
    return sorted(out, key=lambda w: w.functional)


def cayley_decompositions(
    p: LatticePolytope, s: int, r: int = 1, mode: StrictMode = "equal-dim"
) -> Iterator[CayleyDecomposition]:
    """All decompositions of order ``s`` and length ``r + 1``, in lexicographic order.

    For r = 1 each unordered witness is reported once, with the functional
    normalised to have its first nonzero entry positive.
    """
    if r < 1 or r > p.dim:
        return
    if r == 1:
        for w in cayley_witnesses(p, s):
            yield _build(p, s, [w], mode)
        return
    pool = _oriented(p, s)
    n_vertices = len(p.vertices)
    for combo in combinations(pool, r):
        used: set[int] = set()
        ok = True
        for w in combo:
            if used & w.high:
                ok = False
                break
            used |= w.high
        if not ok or len(used) == n_vertices:
            continue
        rows = [w.functional for w in combo]
        if rank_exact(rows) != r or not elementary_divisors_trivial(rows):
            continue
        yield _build(p, s, combo, mode)


def detect_cayley(p: LatticePolytope, s: int, mode: StrictMode = "equal-dim") -> CayleyDecomposition | None:
    """Length-2 decomposition of order ``s`` with the smallest functional, or None."""
    return next(cayley_decompositions(p, s, 1, mode), None)


def detect_cayley_general(
    p: LatticePolytope, s: int, r: int, mode: StrictMode = "equal-dim"
) -> CayleyDecomposition | None:
    return next(cayley_decompositions(p, s, r, mode), None)


def construct_cayley(slices: Sequence[LatticePolytope | Sequence[Sequence[int]]], s: int) -> LatticePolytope:
    """``conv(P_0 x 0, P_1 x s e_1, ..., P_r x s e_r)`` in Z^m x Z^r."""
    if len(slices) < 2:
        raise ValueError("need at least two slices")
    pts_list = [list(sl.vertices) if isinstance(sl, LatticePolytope) else [tuple(x) for x in sl] for sl in slices]
    m = len(pts_list[0][0])
    if any(len(x) != m for pts in pts_list for x in pts):
        raise ValueError("slices must live in a common lattice")
    r = len(slices) - 1
    points = []
    for i, pts in enumerate(pts_list):
        lift = tuple(s * int(i == j + 1) for j in range(r))
        points.extend(tuple(x) + lift for x in pts)
    return LatticePolytope.from_points(points, m + r)


# -- strictness --------------------------------------------------------


def _intrinsic(slices: Sequence[Sequence[Vector]]) -> list[list[Vector]] | None:
    """Rewrite equal-dimensional slices in a lattice basis of their common direction.

    Returns None when the affine hulls are not parallel.
    """
    m = len(slices[0][0])
    spans = []
    for sl in slices:
        diffs = [tuple(a - b for a, b in zip(x, sl[0])) for x in sl[1:]]
        spans.append(kernel_basis(diffs, m) if diffs else [tuple(int(i == j) for j in range(m)) for i in range(m)])
    # parallel affine hulls <=> identical orthogonal complements
    ref = spans[0]
    for sp in spans[1:]:
        if rank_exact(list(ref) + list(sp)) != len(ref):
            return None
    if not ref:
        return [list(sl) for sl in slices]
    _, v = column_hermite(ref)
    vinv = integer_inverse(v)
    k = len(ref)
    return [[tuple(mat_vec(vinv, x))[k:] for x in sl] for sl in slices]


def normally_equivalent(polys: Sequence[LatticePolytope]) -> bool:
    """Same primitive facet normals and same normal cones at vertices."""

    def fan(p: LatticePolytope):
        normals = frozenset(f.normal for f in p.facets)
        cones = frozenset(
            frozenset(f.normal for f in p.facets if i in f.vertices) for i in range(len(p.vertices))
        )
        return normals, cones

    first = fan(polys[0])
    return all(fan(q) == first for q in polys[1:])


def _slices_normally_equivalent(slices: Sequence[Sequence[Vector]]) -> bool:
    dims = {_affine_rank(sl) for sl in slices}
    if len(dims) != 1:
        raise SliceDimensionMismatch(f"slice dimensions {sorted(dims)} differ")
    (d,) = dims
    if d == 0:
        return True
    local = _intrinsic(slices)
    if local is None:
        return False
    return normally_equivalent([LatticePolytope.from_vertices(sl) for sl in local])


def is_strict(d: CayleyDecomposition, mode: StrictMode = "equal-dim") -> bool:
    """Whether the slices of ``d`` are normally equivalent.

    Slices of different dimensions are not strict under ``"equal-dim"``.
    Under ``"project"`` a mismatch is resolved by looking for a strict
    decomposition of the same order and larger length (the simplex
    ``k Delta_n`` becomes ``[pt * ... * pt]^k``).
    """
    try:
        return _slices_normally_equivalent(d.slices)
    except SliceDimensionMismatch:
        if mode == "equal-dim":
            return False
        for r in range(d.length, d.polytope.dim + 1):
            for other in cayley_decompositions(d.polytope, d.order, r, "equal-dim"):
                if other.strict:
                    return True
        return False


def find_strict_decomposition(p: LatticePolytope, s: int) -> CayleyDecomposition | None:
    """First strict decomposition of order ``s`` over all lengths (equal-dim convention)."""
    for r in range(1, p.dim + 1):
        for d in cayley_decompositions(p, s, r, "equal-dim"):
            if d.strict:
                return d
    return None
