"""Full-dimensional lattice polytopes given by their vertices."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Sequence

from .errors import (
    DegenerateInput,
    EmptyChop,
    NonLatticeChop,
    NotDivisible,
    NotSmoothAtVertex,
    ValidationError,
)
from .lattice import (
    Matrix,
    Vector,
    det,
    dot,
    integer_inverse,
    mat_vec,
    primitive,
    rank_exact,
    transpose,
)


@dataclass(frozen=True)
class Facet:
    """Inequality ``<x, normal> >= -offset`` with primitive inner normal."""

    normal: Vector
    offset: int
    vertices: frozenset[int] = field(compare=False)

    def value(self, x: Sequence) -> int:
        return dot(self.normal, x) + self.offset


@dataclass(frozen=True)
class Edge:
    endpoints: tuple[int, int]
    direction: Vector
    lattice_length: int


@dataclass(frozen=True)
class VertexChart:
    vertex: int
    map: Matrix
    points: tuple[Vector, ...]


def _affine_rank(points: Sequence[Sequence[int]]) -> int:
    if len(points) < 2:
        return 0
    base = points[0]
    return rank_exact([[a - b for a, b in zip(p, base)] for p in points[1:]])


def _cofactor_normal(points: Sequence[Vector], subset: Sequence[int], dim: int) -> Vector:
    """Integer normal of the affine span of ``dim`` points (zero if degenerate)."""
    if dim == 1:
        return (1,)
    base = points[subset[0]]
    diffs = [[a - b for a, b in zip(points[i], base)] for i in subset[1:]]
    return tuple((-1) ** j * det([row[:j] + row[j + 1 :] for row in diffs]) for j in range(dim))


def _hull_facets(points: Sequence[Vector], dim: int) -> list[Facet]:
    """Brute-force facet enumeration over dim-subsets of ``points``."""
    n = len(points)
    facets: dict[tuple[Vector, int], Facet] = {}
    tight_masks: list[int] = []
    for subset in combinations(range(n), dim):
        mask = 0
        for i in subset:
            mask |= 1 << i
        if any(mask & ~t == 0 for t in tight_masks):
            continue
        normal = _cofactor_normal(points, subset, dim)
        if not any(normal):
            continue
        const = -dot(normal, points[subset[0]])
        vals = [dot(normal, p) + const for p in points]
        if all(v >= 0 for v in vals):
            sign = 1
        elif all(v <= 0 for v in vals):
            sign = -1
        else:
            continue
        g, prim = primitive([sign * c for c in normal])
        offset = sign * const // g
        tight = frozenset(i for i, v in enumerate(vals) if v == 0)
        if _affine_rank([points[i] for i in sorted(tight)]) != dim - 1:
            continue
        key = (prim, offset)
        if key not in facets:
            facets[key] = Facet(prim, offset, tight)
            t = 0
            for i in tight:
                t |= 1 << i
            tight_masks.append(t)
    return sorted(facets.values(), key=lambda f: (f.normal, f.offset))


@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of lattice points, full-dimensional in Z^dim.

    Vertices are stored in lexicographic order.  Derived data (facets, edges,
    lattice points) is computed lazily and cached; the computation is pure, so
    concurrent first access at worst repeats identical work.
    """

    dim: int
    vertices: tuple[Vector, ...]

    def __post_init__(self):
        if self.dim < 1:
            raise ValidationError("dimension must be positive")
        if not self.vertices:
            raise ValidationError("no vertices")
        if any(len(v) != self.dim for v in self.vertices):
            raise ValidationError("vertex dimension mismatch")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValidationError("vertices are not pairwise distinct")

    @classmethod
    def from_points(cls, points: Iterable[Sequence[int]], dim: int | None = None) -> "LatticePolytope":
        """Convex hull of ``points``; non-extreme points are discarded."""
        pts = sorted({tuple(int(c) for c in p) for p in points})
        if not pts:
            raise ValidationError("no points")
        d = dim if dim is not None else len(pts[0])
        if _affine_rank(pts) != d:
            raise DegenerateInput("points are not full-dimensional")
        facets = _hull_facets(pts, d)
        extreme = [p for i, p in enumerate(pts) if _normal_rank(facets, i) == d]
        return cls.from_vertices(extreme, d)

    @classmethod
    def from_vertices(cls, vertices: Iterable[Sequence[int]], dim: int | None = None) -> "LatticePolytope":
        """Build from a vertex list, validating extremality and dimension."""
        vs = [tuple(int(c) for c in v) for v in vertices]
        if not vs:
            raise ValidationError("no vertices")
        d = dim if dim is not None else len(vs[0])
        if len(set(vs)) != len(vs):
            raise ValidationError("vertices are not pairwise distinct")
        p = cls(d, tuple(sorted(vs)))
        p.validate()
        return p

    def validate(self) -> None:
        if _affine_rank(self.vertices) != self.dim:
            raise DegenerateInput("vertices are not full-dimensional")
        for i, v in enumerate(self.vertices):
            if _normal_rank(self.facets, i) != self.dim:
                raise ValidationError(f"vertex {v} is not extreme")

    # -- derived data ---------------------------------------------------

    @cached_property
    def facets(self) -> tuple[Facet, ...]:
        if _affine_rank(self.vertices) != self.dim:
            raise DegenerateInput("vertices are not full-dimensional")
        return tuple(_hull_facets(self.vertices, self.dim))

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        tight = [frozenset(j for j, f in enumerate(self.facets) if i in f.vertices) for i in range(len(self.vertices))]
        out = []
        for i, j in combinations(range(len(self.vertices)), 2):
            common = tight[i] & tight[j]
            if len(common) < self.dim - 1:
                continue
            if rank_exact([self.facets[f].normal for f in common]) != self.dim - 1:
                continue
            diff = [b - a for a, b in zip(self.vertices[i], self.vertices[j])]
            g, direction = primitive(diff)
            out.append(Edge((i, j), direction, g))
        return tuple(out)

    @cached_property
    def lattice_points(self) -> tuple[Vector, ...]:
        lo = [min(v[i] for v in self.vertices) for i in range(self.dim)]
        hi = [max(v[i] for v in self.vertices) for i in range(self.dim)]
        facets = self.facets
        pts = [
            x
            for x in product(*(range(a, b + 1) for a, b in zip(lo, hi)))
            if all(dot(f.normal, x) >= -f.offset for f in facets)
        ]
        return tuple(pts)

    def edges_at(self, v: int) -> list[tuple[int, Vector, int]]:
        """(neighbour, primitive direction away from v, lattice length) per edge."""
        out = []
        for e in self.edges:
            a, b = e.endpoints
            if a == v:
                out.append((b, e.direction, e.lattice_length))
            elif b == v:
                out.append((a, tuple(-c for c in e.direction), e.lattice_length))
        return sorted(out)

    def __str__(self) -> str:
        return f"LatticePolytope(dim={self.dim}, vertices={list(self.vertices)})"

    # -- transformations ------------------------------------------------

    def transform(self, matrix: Sequence[Sequence[int]], translation: Sequence[int] | None = None) -> "LatticePolytope":
        """Image under ``x -> matrix x + translation`` (matrix unimodular)."""
        t = translation or [0] * self.dim
        vs = [tuple(a + b for a, b in zip(mat_vec(matrix, v), t)) for v in self.vertices]
        return LatticePolytope(self.dim, tuple(sorted(vs)))

    def translate(self, t: Sequence[int]) -> "LatticePolytope":
        return LatticePolytope(self.dim, tuple(sorted(tuple(a + b for a, b in zip(v, t)) for v in self.vertices)))

    def dilate(self, t: int) -> "LatticePolytope":
        if t < 1:
            raise ValueError("dilation factor must be positive")
        return LatticePolytope(self.dim, tuple(sorted(tuple(t * c for c in v) for v in self.vertices)))


def _normal_rank(facets: Sequence[Facet], i: int) -> int:
    normals = [f.normal for f in facets if i in f.vertices]
    return rank_exact(normals) if normals else 0


def facets(p: LatticePolytope) -> list[Facet]:
    return list(p.facets)


def edges(p: LatticePolytope) -> list[Edge]:
    return list(p.edges)


def lattice_points(p: LatticePolytope) -> list[Vector]:
    return list(p.lattice_points)


def non_smooth_vertex(p: LatticePolytope) -> int | None:
    """Index of the first vertex where ``p`` fails to be smooth, else None."""
    for v in range(len(p.vertices)):
        dirs = [d for _, d, _ in p.edges_at(v)]
        if len(dirs) != p.dim or abs(det(transpose(dirs))) != 1:
            return v
    return None


def is_smooth(p: LatticePolytope) -> bool:
    return non_smooth_vertex(p) is None


def vertex_chart(p: LatticePolytope, v: int) -> VertexChart:
    """Affine unimodular chart putting vertex ``v`` at the origin.

    The primitive edge directions at ``v`` (ordered by neighbour index) go to
    the standard basis, so every chart point has nonnegative coordinates.
    """
    dirs = [d for _, d, _ in p.edges_at(v)]
    if len(dirs) != p.dim or abs(det(dirs)) != 1:
        raise NotSmoothAtVertex(v)
    m = integer_inverse(transpose(dirs))
    base = p.vertices[v]
    pts = sorted(mat_vec(m, [a - b for a, b in zip(x, base)]) for x in p.lattice_points)
    return VertexChart(v, m, tuple(pts))


def chop(p: LatticePolytope, normal: Sequence[int], level: int) -> LatticePolytope:
    """Intersect ``p`` with the halfspace ``<x, normal> >= level``."""
    vals = [dot(normal, v) for v in p.vertices]
    if all(x <= level for x in vals):
        raise EmptyChop(f"halfspace <x,{tuple(normal)}> >= {level} misses the interior")
    new = {v for v, x in zip(p.vertices, vals) if x >= level}
    for e in p.edges:
        i, j = e.endpoints
        a, b = vals[i], vals[j]
        if (a - level) * (b - level) < 0:
            t = Fraction(level - a, b - a)
            pt = [vi + t * (vj - vi) for vi, vj in zip(p.vertices[i], p.vertices[j])]
            if any(c.denominator != 1 for c in pt):
                raise NonLatticeChop(f"cut vertex {tuple(str(c) for c in pt)} is not a lattice point")
            new.add(tuple(int(c) for c in pt))
    return LatticePolytope(p.dim, tuple(sorted(new)))


def shrink(p: LatticePolytope, k: int) -> LatticePolytope:
    """``(1/k)(p - v0)`` with ``v0`` the lexicographically smallest vertex."""
    if k < 1:
        raise ValueError("k must be positive")
    v0 = p.vertices[0]
    out = []
    for v in p.vertices:
        diff = [a - b for a, b in zip(v, v0)]
        if any(c % k for c in diff):
            raise NotDivisible(f"vertex {v} is not divisible by {k} relative to {v0}")
        out.append(tuple(c // k for c in diff))
    return LatticePolytope(p.dim, tuple(sorted(out)))


def standard_simplex(n: int, k: int = 1) -> LatticePolytope:
    verts = [tuple([0] * n)] + [tuple(k * int(i == j) for j in range(n)) for i in range(n)]
    return LatticePolytope(n, tuple(sorted(verts)))


def box(sides: Sequence[int]) -> LatticePolytope:
    return LatticePolytope(len(sides), tuple(sorted(product(*((0, s) for s in sides)))))


HEXAGON = ((0, 0), (1, 0), (2, 1), (2, 2), (1, 2), (0, 1))


def hexagon() -> LatticePolytope:
    return LatticePolytope(2, tuple(sorted(HEXAGON)))
