"""Width invariants s1 and s2, Seshadri constants at fixpoints and at the
general point, and the five-way equivalence check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cayley import detect_cayley, min_edge_length
from .errors import NotSmooth, NotSmoothAtVertex
from .halfspace import HPolytope
from .jets import JetReport, fixpoint_jet_order, jet_report
from .lattice import (
    Matrix,
    Vector,
    column_hermite,
    dot,
    identity,
    inverse,
    mat_vec,
    normalize_sign,
    primitive_vectors,
    rank_exact,
    transpose,
)
from .polytope import LatticePolytope, non_smooth_vertex, vertex_chart

DEFAULT_WIDTH_BOUND = 5
DEFAULT_S1_BOUND = 2
DEFAULT_S1_LEVELS = 1


@dataclass(frozen=True)
class WidthResult:
    width: Fraction
    direction: Vector
    bound: int
    certified: bool


@dataclass(frozen=True)
class S1Witness:
    """One step of the projection tree behind an s1 lower bound.

    ``functional`` is written in the coordinates of the current lattice;
    ``child`` describes the slice at ``level`` in the kernel lattice.
    """

    functional: Vector
    image_length: Fraction
    level: Fraction | None
    value: Fraction
    child: "S1Witness | None" = None


@dataclass(frozen=True)
class S1Result:
    value: Fraction
    witness: S1Witness | None
    bound: int
    depth_levels: int


@dataclass(frozen=True)
class GenericEpsilon:
    lower: Fraction
    upper: Fraction
    exact: Fraction | None
    s1: S1Result
    s2: WidthResult


@dataclass(frozen=True)
class SeshadriReport:
    per_fixpoint_epsilon: dict[int, int]
    s2: WidthResult
    s1: S1Result
    generic_lower: Fraction
    generic_upper: Fraction
    generic_exact: Fraction | None


def _width(vertices: Sequence[Sequence], u: Sequence[int]):
    vals = [dot(u, v) for v in vertices]
    return max(vals) - min(vals)


def _box_width(vertices: Sequence[Sequence], dim: int, bound: int) -> tuple[Fraction, Vector]:
    best, arg = None, None
    for u in primitive_vectors(dim, bound):
        w = _width(vertices, u)
        if best is None or w < best:
            best, arg = w, u
    return Fraction(best), arg


def _escape_constant(p: LatticePolytope) -> Fraction | None:
    """Smallest ``c`` such that width_u(P) >= |u|_inf / c for every integer u.

    At a vertex v with independent edge vectors w_1..w_n (columns of W),
    width_u >= max_i |<u, w_i>| = |W^T u|_inf >= |u|_inf / |W^{-T}|_inf.
    """
    best = None
    for v in range(len(p.vertices)):
        vecs = []
        for nb, _, _ in p.edges_at(v):
            w = tuple(a - b for a, b in zip(p.vertices[nb], p.vertices[v]))
            if rank_exact(vecs + [w]) > len(vecs):
                vecs.append(w)
        if len(vecs) != p.dim:
            continue
        inv = inverse(vecs)  # rows are w_i, so this is (W^T)^{-1}
        norm = max(sum(abs(x) for x in row) for row in inv)
        if best is None or norm < best:
            best = norm
    return best


def _extent(p: LatticePolytope) -> int:
    return sum(max(v[i] for v in p.vertices) - min(v[i] for v in p.vertices) for i in range(p.dim))


def search_frames(p: LatticePolytope) -> list[Matrix]:
    """Unimodular coordinate changes to search in: the identity first, then
    the charts of smooth vertices ordered by bounding-box size.

    Chart frames are intrinsic to the polytope, so searching them makes the
    bounded searches insensitive to how the input happens to be embedded.
    """
    ident = identity(p.dim)
    frames = {}
    for v in range(len(p.vertices)):
        try:
            m = vertex_chart(p, v).map
        except NotSmoothAtVertex:
            continue
        key = tuple(tuple(r) for r in m)
        if key not in frames:
            frames[key] = _extent(p.transform(m))
    rest = sorted((ext, key) for key, ext in frames.items() if key != ident)
    return [ident] + [key for _, key in rest]


def _pull_back(m: Matrix, u: Sequence[int]) -> Vector:
    # functional u on y = m x is the functional m^T u on x
    return normalize_sign(tuple(mat_vec(transpose(m), u)))


def lattice_width(p: LatticePolytope, bound: int = DEFAULT_WIDTH_BOUND) -> WidthResult:
    """Minimum image length over primitive functionals with sup-norm <= bound.

    The box is searched in the input coordinates and, until optimality is
    certified, in the vertex-chart frames as well.  ``certified`` is True
    when no functional outside the searched boxes can be narrower, so the
    value is the exact lattice width.
    """
    best, direction, escape = None, None, []
    for m in search_frames(p):
        q = p.transform(m)
        width, u = _box_width(q.vertices, q.dim, bound)
        if best is None or width < best:
            best, direction = width, _pull_back(m, u)
        c = _escape_constant(q)
        if c is not None:
            escape.append(Fraction(bound + 1) / c)
        if escape and max(escape) >= best:
            return WidthResult(best, direction, bound, True)
    return WidthResult(best, direction, bound, False)


def _s1(
    poly: HPolytope, cap: Fraction, floor: Fraction, bound: int, depth_levels: int
) -> tuple[Fraction, S1Witness | None]:
    """Lower bound for s1(poly), never above ``cap``; returns 0 if it cannot beat ``floor``."""
    verts = poly.vertices
    if not verts or poly.affine_dim < poly.dim:
        return Fraction(0), None
    if poly.dim == 1:
        length = max(v[0] for v in verts) - min(v[0] for v in verts)
        value = min(length, cap)
        return value, S1Witness((1,), length, None, value)
    best, best_wit = Fraction(0), None
    for u in primitive_vectors(poly.dim, bound):
        w = _width(verts, u)
        target = min(w, cap)
        if target <= max(best, floor):
            continue
        _, basis = column_hermite([u])
        local = poly.change_basis(basis)
        crit = poly.levels(u)
        levels = set(crit)
        for a, b in zip(crit, crit[1:]):
            for j in range(1, depth_levels + 1):
                levels.add(a + (b - a) * Fraction(j, depth_levels + 1))
        mid = (crit[0] + crit[-1]) / 2
        inner, inner_wit, inner_level = Fraction(0), None, None
        for c in sorted(levels, key=lambda x: (abs(x - mid), x)):
            fiber = local.fix_first(c)
            fverts = fiber.vertices
            if not fverts or fiber.affine_dim < fiber.dim:
                continue
            need = max(inner, best, floor)
            if fiber.dim > 1 and _box_width(fverts, fiber.dim, bound)[0] <= need:
                continue
            val, wit = _s1(fiber, target, need, bound, depth_levels)
            if val > inner:
                inner, inner_wit, inner_level = val, wit, c
            if inner >= target:
                break
        value = min(w, inner)
        if value > best:
            best = value
            best_wit = S1Witness(u, w, inner_level, value, inner_wit)
            if best >= cap:
                break
    return best, best_wit


def s1(
    p: LatticePolytope,
    bound: int = DEFAULT_S1_BOUND,
    depth_levels: int = DEFAULT_S1_LEVELS,
    cap: Fraction | None = None,
) -> S1Result:
    """Certified lower bound for the recursive projection invariant s1.

    Projections range over primitive functionals with sup-norm <= bound in
    each successive kernel lattice, starting from each frame of
    :func:`search_frames` until the cap is met.  The supremum over slice levels is taken
    over the vertex images and ``depth_levels`` evenly spaced points in each
    gap between them.  ``cap`` (default: the box lattice width, an upper
    bound for s1) stops the search once reached.
    """
    if cap is None:
        cap = lattice_width(p, max(bound, 1)).width
    cap = Fraction(cap)
    best, best_wit = Fraction(0), None
    for m in search_frames(p):
        q = p.transform(m)
        poly = HPolytope.from_facets(q.dim, q.facets)
        value, wit = _s1(poly, cap, best, bound, depth_levels)
        if value > best:
            best = value
            best_wit = S1Witness(_pull_back(m, wit.functional), wit.image_length, wit.level, wit.value, wit.child)
        if best >= cap:
            break
    return S1Result(best, best_wit, bound, depth_levels)


def _require_smooth(p: LatticePolytope) -> None:
    bad = non_smooth_vertex(p)
    if bad is not None:
        raise NotSmooth(f"polytope is not smooth at vertex {p.vertices[bad]}")


def epsilon_fixpoint(p: LatticePolytope, v: int) -> int:
    """Seshadri constant at the fixpoint of vertex ``v`` (shortest incident edge)."""
    _require_smooth(p)
    return fixpoint_jet_order(p, v)


def epsilon_generic(
    p: LatticePolytope,
    width_bound: int = DEFAULT_WIDTH_BOUND,
    s1_bound: int = DEFAULT_S1_BOUND,
    depth_levels: int = DEFAULT_S1_LEVELS,
) -> GenericEpsilon:
    s2 = lattice_width(p, width_bound)
    low = s1(p, s1_bound, depth_levels, cap=s2.width)
    exact = low.value if low.value == s2.width else None
    return GenericEpsilon(low.value, s2.width, exact, low, s2)


def seshadri_report(
    p: LatticePolytope,
    width_bound: int = DEFAULT_WIDTH_BOUND,
    s1_bound: int = DEFAULT_S1_BOUND,
    depth_levels: int = DEFAULT_S1_LEVELS,
) -> SeshadriReport:
    _require_smooth(p)
    per = {v: fixpoint_jet_order(p, v) for v in range(len(p.vertices))}
    g = epsilon_generic(p, width_bound, s1_bound, depth_levels)
    return SeshadriReport(per, g.s2, g.s1, g.lower, g.upper, g.exact)


# -- the five-way check ---------------------------------------------------

CONDITIONS = ("i", "ii", "iii", "iv", "v")


@dataclass
class EquivalenceVerdict:
    """Truth values of the five equivalent conditions for a given order ``k``.

    ``None`` marks a condition that could not be decided (the generic Seshadri
    constant is only bracketed).  ``consistent`` is False exactly when two
    decided conditions disagree, which would contradict the theorem.
    """

    k: int
    conditions: dict[str, bool | None]
    witnesses: dict[str, object] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def decided(self) -> dict[str, bool]:
        return {c: v for c, v in self.conditions.items() if v is not None}

    @property
    def consistent(self) -> bool:
        return len(set(self.decided.values())) <= 1

    @property
    def violation(self) -> bool:
        return not self.consistent

    @property
    def inconclusive(self) -> bool:
        return len(self.decided) < len(self.conditions)


def verify_corollary(
    p: LatticePolytope,
    k: int,
    width_bound: int = DEFAULT_WIDTH_BOUND,
    s1_bound: int = DEFAULT_S1_BOUND,
    depth_levels: int = DEFAULT_S1_LEVELS,
    jets: JetReport | None = None,
    generic: GenericEpsilon | None = None,
) -> EquivalenceVerdict:
    """Evaluate conditions (i)-(v) for the smooth polytope ``p`` and order ``k``.

    (i) and (ii) both come from the jet report: fixpoint orders plus the
    generic order determine the order at every point.  (iv) combines the
    fixpoint Seshadri constants with the s1/s2 bracket at the general point.
    (iii) is reported as (iv) together with (i), which is how it follows.
    (v) is Cayley detection of order k plus the edge-length condition.
    """
    _require_smooth(p)
    notes: list[str] = []
    wit: dict[str, object] = {}

    jr = jets if jets is not None else jet_report(p)
    fix_ok = all(x == k for x in jr.per_fixpoint.values())
    cond_ii = fix_ok and jr.generic == k and not jr.generic_capped
    wit["jet_orders"] = {"fixpoints": dict(jr.per_fixpoint), "generic": jr.generic}
    if not fix_ok:
        bad = min(v for v, x in jr.per_fixpoint.items() if x != k)
        wit["jet_counterexample"] = {"vertex": p.vertices[bad], "order": jr.per_fixpoint[bad]}
    elif jr.generic != k:
        wit["jet_counterexample"] = {"point": "general", "order": jr.generic}
    cond_i = cond_ii

    eps_fix = {v: fixpoint_jet_order(p, v) for v in range(len(p.vertices))}
    eps_fix_ok = all(x == k for x in eps_fix.values())
    g = generic if generic is not None else epsilon_generic(p, width_bound, s1_bound, depth_levels)
    wit["epsilon_generic"] = {"lower": g.lower, "upper": g.upper, "exact": g.exact}
    if not eps_fix_ok:
        cond_iv: bool | None = False
    elif g.exact is not None:
        cond_iv = g.exact == k
    elif k < g.lower or k > g.upper:
        cond_iv = False
    else:
        cond_iv = None
        notes.append(
            f"inconclusive: generic Seshadri constant only bracketed in [{g.lower}, {g.upper}]"
            f" (s1 bound {g.s1.bound}, width bound {g.s2.bound})"
        )
    if not g.s2.certified:
        notes.append(f"lattice width search bound {g.s2.bound} does not certify optimality")

    cond_iii = None if cond_iv is None else (cond_iv and cond_i)

    dec = detect_cayley(p, k)
    mel = min_edge_length(p)
    cond_v = dec is not None and mel >= k
    wit["cayley"] = dec.projection[0] if dec is not None else None
    wit["min_edge_length"] = mel

    verdict = EquivalenceVerdict(
        k, {"i": cond_i, "ii": cond_ii, "iii": cond_iii, "iv": cond_iv, "v": cond_v}, wit, notes
    )
    if verdict.violation:
        verdict.notes.append("VIOLATION: decided conditions disagree")
    return verdict

