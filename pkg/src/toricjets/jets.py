"""Matrices of k-jets for monomial sections and jet-spannedness orders.

With the monomial basis ``x^m`` (``m`` a lattice point of P), the matrix of
k-jets has one row per derivative multi-index ``a`` with ``|a| <= k`` and one
column per lattice point.  Its rank at the all-ones point equals the rank at a
general point of the torus, and at a torus fixpoint it can be read off the
vertex chart.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb, factorial, prod
from typing import Sequence, Union

from .errors import NotSmooth, NotSmoothAtVertex
from .lattice import Matrix, Vector, det, kernel_basis, rank_exact, transpose
from .polytope import LatticePolytope, non_smooth_vertex, vertex_chart

MultiIndex = tuple[int, ...]


@dataclass(frozen=True)
class AllOnes:
    pass


@dataclass(frozen=True)
class Fixpoint:
    vertex: int


@dataclass(frozen=True)
class RationalPoint:
    coords: tuple[Fraction, ...]


EvalMode = Union[AllOnes, Fixpoint, RationalPoint]
ALL_ONES = AllOnes()


@dataclass(frozen=True)
class JetMatrix:
    k: int
    row_index: tuple[MultiIndex, ...]
    col_index: tuple[Vector, ...]
    entries: tuple[tuple, ...]
    eval_mode: EvalMode

    @property
    def rank(self) -> int:
        return rank_exact(self.entries)

    @property
    def is_full_rank(self) -> bool:
        return self.rank == len(self.row_index)


@dataclass(frozen=True)
class JetReport:
    per_fixpoint: dict[int, int]
    generic: int
    generic_capped: bool
    constant_k: int | None


def multi_indices(n: int, k: int) -> list[MultiIndex]:
    """All ``a`` in N^n with ``|a| <= k``: graded, descending lex within a degree."""
    out = []
    for d in range(k + 1):
        block = []
        for combo in combinations_with_replacement(range(n), d):
            a = [0] * n
            for i in combo:
                a[i] += 1
            block.append(tuple(a))
        out.extend(sorted(block, reverse=True))
    return out


def falling(m: int, a: int) -> int:
    """``m (m-1) ... (m-a+1)``; the value of d^a/dx^a x^m at x = 1."""
    return prod(m - j for j in range(a))


def _rational_entry(m: Vector, a: MultiIndex, q: Sequence[Fraction]) -> Fraction:
    """``d^a x^m`` at ``q``: the product of ``falling(m_i, a_i) q_i^(m_i - a_i)``."""
    num, den = 1, 1
    for mi, ai, qi in zip(m, a, q):
        f = falling(mi, ai)
        if f == 0:
            return Fraction(0)
        e = mi - ai
        n_, d_ = (qi.numerator, qi.denominator) if e >= 0 else (qi.denominator, qi.numerator)
        num *= f * n_ ** abs(e)
        den *= d_ ** abs(e)
    return Fraction(num, den)


def jet_matrix(p: LatticePolytope, k: int, mode: EvalMode = ALL_ONES) -> JetMatrix:
    n = p.dim
    rows = multi_indices(n, k)
    if isinstance(mode, AllOnes):
        cols = p.lattice_points
        entries = tuple(tuple(prod(falling(mi, ai) for mi, ai in zip(m, a)) for m in cols) for a in rows)
    elif isinstance(mode, Fixpoint):
        chart = vertex_chart(p, mode.vertex)
        cols = chart.points
        entries = tuple(
            tuple(prod(factorial(ai) for ai in a) if m == a else 0 for m in cols) for a in rows
        )
    elif isinstance(mode, RationalPoint):
        q = [Fraction(c) for c in mode.coords]
        if len(q) != n or any(c == 0 for c in q):
            raise ValueError("evaluation point must lie in the torus")
        cols = p.lattice_points
        entries = tuple(tuple(_rational_entry(m, a, q) for m in cols) for a in rows)
    else:
        raise TypeError(f"unknown evaluation mode {mode!r}")
    return JetMatrix(k, tuple(rows), tuple(cols), entries, mode)


def power_matrix(points: Sequence[Vector], k: int) -> Matrix:
    """Rows are points ``m``, columns monomials ``a`` with ``|a| <= k``; entry ``m^a``.

    ``0**0 == 1`` in Python, which is the convention needed here.
    """
    n = len(points[0]) if points else 0
    monos = multi_indices(n, k)
    return tuple(tuple(prod(mi**ai for mi, ai in zip(m, a)) for a in monos) for m in points)


def is_generically_k_jet_spanned(p: LatticePolytope, k: int) -> bool:
    n_rows = comb(p.dim + k, k)
    if n_rows > len(p.lattice_points):
        return False
    return rank_exact(power_matrix(p.lattice_points, k)) == n_rows


def generic_jet_order(p: LatticePolytope, k_max: int | None = None) -> int:
    """Largest ``k`` (capped at ``k_max``) with the all-ones k-jet matrix of full rank.

    Full rank at k implies full rank at every smaller order, so the scan stops
    at the first failure.  Without a cap the scan still terminates because the
    number of rows eventually exceeds the number of lattice points.
    """
    k = 0
    while k_max is None or k < k_max:
        if not is_generically_k_jet_spanned(p, k + 1):
            break
        k += 1
    return k


def vanishing_polynomials(p: LatticePolytope, k: int) -> list[dict[MultiIndex, int]]:
    """Basis of polynomials of degree <= k vanishing on all lattice points of p."""
    monos = multi_indices(p.dim, k)
    ker = kernel_basis(power_matrix(p.lattice_points, k), len(monos))
    return [{a: c for a, c in zip(monos, v) if c} for v in ker]


def vanishing_polynomial(p: LatticePolytope, k: int) -> dict[MultiIndex, int] | None:
    """A primitive polynomial of degree <= k vanishing on P & M, or None."""
    basis = vanishing_polynomials(p, k)
    return basis[0] if basis else None


def fixpoint_jet_order(p: LatticePolytope, v: int) -> int:
    """Jet order at the fixpoint of vertex ``v``: the shortest incident edge."""
    chart_edges = p.edges_at(v)
    dirs = [d for _, d, _ in chart_edges]
    if len(dirs) != p.dim or abs(det(transpose(dirs))) != 1:
        raise NotSmoothAtVertex(v)
    return min(length for _, _, length in chart_edges)


def chart_jet_order(p: LatticePolytope, v: int) -> int:
    """Largest k with every multi-index of order <= k among the chart points.

    Equivalently, the largest k for which the fixpoint jet matrix has full
    rank.  Independent of edge lengths; used to cross-check
    :func:`fixpoint_jet_order`.
    """
    pts = set(vertex_chart(p, v).points)
    k = 0
    while all(a in pts for a in multi_indices(p.dim, k + 1) if sum(a) == k + 1):
        k += 1
    return k


def jet_report(p: LatticePolytope, k_max: int | None = None) -> JetReport:
    bad = non_smooth_vertex(p)
    if bad is not None:
        raise NotSmooth(f"polytope is not smooth at vertex {p.vertices[bad]}")
    per = {v: fixpoint_jet_order(p, v) for v in range(len(p.vertices))}
    generic = generic_jet_order(p, k_max)
    capped = k_max is not None and generic == k_max and is_generically_k_jet_spanned(p, k_max + 1)
    values = set(per.values())
    constant = generic if values == {generic} and not capped else None
    return JetReport(per, generic, capped, constant)
