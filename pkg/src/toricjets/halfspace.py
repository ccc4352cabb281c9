"""Rational polytopes in halfspace form.

Used for the slices ``pi^{-1}(c) & P`` that appear in the recursive width
invariant, where levels ``c`` are rational and the slice lives in the kernel
lattice of ``pi``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Sequence

from .lattice import det, mat_mul, rank_exact, solve

Point = tuple[Fraction, ...]


@dataclass(frozen=True)
class HPolytope:
    """``{x in Q^dim : <a_i, x> >= b_i}`` with integer ``a_i``, rational ``b_i``.

    Redundant rows are allowed.  The polytope is assumed bounded.
    """

    dim: int
    normals: tuple[tuple[int, ...], ...]
    offsets: tuple[Fraction, ...]

    @classmethod
    def from_facets(cls, dim: int, facets) -> "HPolytope":
        return cls(dim, tuple(f.normal for f in facets), tuple(Fraction(-f.offset) for f in facets))

    def contains(self, x: Sequence) -> bool:
        return all(sum(a * c for a, c in zip(n, x)) >= b for n, b in zip(self.normals, self.offsets))

    @cached_property
    def vertices(self) -> tuple[Point, ...]:
        if self.dim == 0:
            return ((),) if all(b <= 0 for b in self.offsets) else ()
        if self.dim == 1:
            lo, hi = None, None
            for (a,), b in zip(self.normals, self.offsets):
                if a > 0:
                    v = b / a
                    lo = v if lo is None or v > lo else lo
                elif a < 0:
                    v = b / a
                    hi = v if hi is None or v < hi else hi
                elif b > 0:
                    return ()
            if lo is None or hi is None:
                raise ValueError("unbounded polytope")
            if lo > hi:
                return ()
            return ((lo,),) if lo == hi else ((lo,), (hi,))
        found: set[Point] = set()
        rows = list(zip(self.normals, self.offsets))
        for subset in combinations(range(len(rows)), self.dim):
            a = [rows[i][0] for i in subset]
            if det(a) == 0:
                continue
            x = solve(a, [rows[i][1] for i in subset])
            if x is not None and self.contains(x):
                found.add(x)
        return tuple(sorted(found))

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @cached_property
    def affine_dim(self) -> int:
        vs = self.vertices
        if not vs:
            return -1
        return rank_exact([[c - d for c, d in zip(v, vs[0])] for v in vs[1:]]) if len(vs) > 1 else 0

    def width(self, u: Sequence[int]) -> Fraction:
        vals = [sum(a * c for a, c in zip(u, v)) for v in self.vertices]
        return max(vals) - min(vals)

    def levels(self, u: Sequence[int]) -> list[Fraction]:
        return sorted({sum(a * c for a, c in zip(u, v)) for v in self.vertices})

    def change_basis(self, v: Sequence[Sequence[int]]) -> "HPolytope":
        """Rewrite in coordinates ``y`` with ``x = v y``."""
        return HPolytope(self.dim, mat_mul(self.normals, v), self.offsets)

    def fix_first(self, c: Fraction) -> "HPolytope":
        """Intersect with ``y_0 = c`` and drop that coordinate."""
        normals, offsets = [], []
        for n, b in zip(self.normals, self.offsets):
            rest = n[1:]
            rhs = b - n[0] * c
            if any(rest):
                normals.append(rest)
                offsets.append(Fraction(rhs))
            elif rhs > 0:
                # infeasible row: encode as 0 >= 1 in a one-row certificate
                return HPolytope(self.dim - 1, (tuple([0] * (self.dim - 1)),), (Fraction(1),))
        return HPolytope(self.dim - 1, tuple(normals), tuple(offsets))
