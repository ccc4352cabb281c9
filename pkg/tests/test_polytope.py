from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import comb, gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricjets.errors import DegenerateInput, EmptyChop, NonLatticeChop, NotDivisible, NotSmoothAtVertex, ValidationError
from toricjets.halfspace import HPolytope
from toricjets.lattice import dot, primitive
from toricjets.polytope import (
    LatticePolytope,
    box,
    chop,
    hexagon,
    is_smooth,
    non_smooth_vertex,
    shrink,
    standard_simplex,
    vertex_chart,
)

HEX = hexagon()
SQUARE = box([1, 1])


def facet_set(p):
    return {(f.normal, f.offset) for f in p.facets}


def vset(p):
    return set(p.vertices)


def test_square_facets():
    # x >= 0, y >= 0, -x >= -1, -y >= -1
    assert facet_set(SQUARE) == {((1, 0), 0), ((0, 1), 0), ((-1, 0), 1), ((0, -1), 1)}


def test_two_simplex_facets():
    assert facet_set(standard_simplex(2, 2)) == {((1, 0), 0), ((0, 1), 0), ((-1, -1), 2)}


def test_hexagon_facets_match_pairwise_oracle():
    oracle = set()
    for a, b in combinations(HEX.vertices, 2):
        n = (b[1] - a[1], a[0] - b[0])
        g = gcd(*n)
        n = (n[0] // g, n[1] // g)
        vals = [dot(n, v) - dot(n, a) for v in HEX.vertices]
        if all(x >= 0 for x in vals):
            oracle.add((n, -dot(n, a)))
        elif all(x <= 0 for x in vals):
            oracle.add(((-n[0], -n[1]), dot(n, a)))
    assert facet_set(HEX) == oracle
    assert len(oracle) == 6


@pytest.mark.parametrize("n, k", [(1, 1), (2, 3), (3, 2), (4, 1)])
def test_simplex_edges(n, k):
    p = standard_simplex(n, k)
    assert len(p.edges) == n * (n + 1) // 2
    assert all(e.lattice_length == k for e in p.edges)


def test_hexagon_and_box_edges():
    assert len(HEX.edges) == 6
    assert all(e.lattice_length == 1 for e in HEX.edges)
    assert sorted(e.lattice_length for e in box([2, 3]).edges) == [2, 2, 3, 3]


def test_lattice_point_counts():
    assert len(standard_simplex(2, 2).lattice_points) == 6
    assert set(HEX.lattice_points) == set(HEX.vertices) | {(1, 1)}
    assert len(box([1, 1, 1]).lattice_points) == 8


@pytest.mark.parametrize("n, k", [(2, 3), (3, 2), (4, 2)])
def test_simplex_point_count_is_binomial(n, k):
    assert len(standard_simplex(n, k).lattice_points) == comb(n + k, n)


def test_smoothness_examples():
    assert is_smooth(standard_simplex(3, 2))
    assert is_smooth(standard_simplex(2, 2))
    assert is_smooth(HEX)
    bad = LatticePolytope.from_vertices([(0, 0), (1, 0), (0, 2)])
    assert not is_smooth(bad)
    # at (1,0) the edge directions (-1,0), (-1,2) have determinant 2
    assert bad.vertices[non_smooth_vertex(bad)] == (1, 0)
    with pytest.raises(NotSmoothAtVertex):
        vertex_chart(bad, non_smooth_vertex(bad))


def test_vertex_charts():
    chart = vertex_chart(SQUARE, SQUARE.vertices.index((1, 1)))
    assert set(chart.points) == {(0, 0), (1, 0), (0, 1), (1, 1)}
    chart = vertex_chart(HEX, HEX.vertices.index((2, 2)))
    assert len(chart.points) == 7
    assert {(0, 0), (1, 0), (0, 1)} <= set(chart.points)
    k = 3
    tri = standard_simplex(2, k)
    chart = vertex_chart(tri, tri.vertices.index((k, 0)))
    assert set(chart.points) == set(tri.lattice_points)


def test_chop_examples():
    assert vset(chop(standard_simplex(2, 2), (1, 0), 1)) == {(1, 0), (2, 0), (1, 1)}
    assert vset(chop(SQUARE, (1, 1), 1)) == {(1, 0), (0, 1), (1, 1)}
    assert vset(chop(HEX, (1, 0), 1)) == {(1, 0), (2, 1), (2, 2), (1, 2)}
    with pytest.raises(EmptyChop):
        chop(SQUARE, (1, 0), 1)


def test_shrink_examples():
    assert shrink(standard_simplex(2, 2), 2) == standard_simplex(2)
    assert shrink(standard_simplex(4, 3), 3) == standard_simplex(4)
    assert vset(shrink(HEX.dilate(2), 2)) == vset(HEX)
    with pytest.raises(NotDivisible):
        shrink(HEX, 2)


def test_validation_errors():
    with pytest.raises(ValidationError, match="not extreme"):
        LatticePolytope.from_vertices([(0, 0), (2, 0), (0, 2), (1, 1)])
    with pytest.raises(ValidationError):
        LatticePolytope(2, ((0, 0), (0, 0), (1, 0)))
    with pytest.raises(DegenerateInput):
        LatticePolytope.from_points([(0, 0), (1, 1), (2, 2)])


def test_vh_round_trip(corpus):
    for spec, p in corpus:
        h = HPolytope.from_facets(p.dim, p.facets)
        assert {tuple(int(c) for c in v) for v in h.vertices} == vset(p), spec.label()


def test_smooth_polytopes_are_simple(smooth_corpus):
    for spec, p in smooth_corpus:
        for v in range(len(p.vertices)):
            assert len(p.edges_at(v)) == p.dim, spec.label()


def test_edge_length_counts_lattice_points(corpus):
    for spec, p in corpus[:40]:
        points = set(p.lattice_points)
        for e in p.edges:
            a, b = (p.vertices[i] for i in e.endpoints)
            on_edge = sum(
                1
                for t in range(1, e.lattice_length)
                if tuple(x + (y - x) * t // e.lattice_length for x, y in zip(a, b)) in points
            )
            interior = [
                q
                for q in points
                if q not in (a, b)
                and _on_segment(q, a, b)
            ]
            assert len(interior) == on_edge == e.lattice_length - 1, spec.label()


def _on_segment(q, a, b):
    d = [y - x for x, y in zip(a, b)]
    w = [y - x for x, y in zip(a, q)]
    ts = {Fraction(wi, di) for wi, di in zip(w, d) if di}
    if len(ts) != 1 or any(wi != 0 for wi, di in zip(w, d) if di == 0):
        return False
    (t,) = ts
    return 0 < t < 1


def _check_chop(p, normal, level):
    q = chop(p, normal, level)
    old = {(f.normal, f.offset) for f in p.facets}
    g, cut = primitive(normal)
    for f in q.facets:
        if (f.normal, f.offset) in old:
            continue
        assert f.normal == cut
        assert -f.offset * g == level


def test_chop_facets_come_from_p_or_the_cut():
    _check_chop(HEX, (1, 0), 1)
    _check_chop(standard_simplex(3, 3), (1, 1, 0), 1)
    _check_chop(box([3, 3, 3]), (-1, -1, -1), -7)
    _check_chop(box([2, 2]), (1, 1), 1)


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from([(2, 3), (3, 2), (2, 4)]),
    st.lists(st.integers(-1, 1), min_size=3, max_size=3),
    st.integers(0, 3),
)
def test_random_chops_keep_facet_provenance(nk, normal, shift):
    n, k = nk
    p = standard_simplex(n, k) if n == 3 else box([k] * n)
    normal = tuple(normal[:n])
    if not any(normal):
        return
    lo = min(dot(normal, v) for v in p.vertices)
    try:
        _check_chop(p, normal, lo + shift)
    except (EmptyChop, NonLatticeChop):
        pass


def test_dilation_lemma(smooth_corpus):
    for spec, p in smooth_corpus:
        lengths = {e.lattice_length for e in p.edges}
        if len(lengths) != 1:
            continue
        (k,) = lengths
        q = shrink(p, k)
        assert is_smooth(q), spec.label()
        assert all(e.lattice_length == 1 for e in q.edges), spec.label()


def test_transform_preserves_structure():
    m = ((2, 1), (1, 1))
    q = HEX.transform(m, (3, -1))
    assert len(q.facets) == 6
    assert len(q.lattice_points) == 7
    assert is_smooth(q)


def test_halfspace_fiber_of_square():
    h = HPolytope.from_facets(2, box([2, 2]).facets)
    fiber = h.fix_first(Fraction(1))
    assert sorted(v[0] for v in fiber.vertices) == [0, 2]
    assert h.fix_first(Fraction(3)).is_empty
    assert h.width((1, 1)) == 4
    assert h.levels((1, 0)) == [0, 2]


def test_box_lattice_points_exact():
    p = box([2, 1, 1])
    assert set(p.lattice_points) == set(product(range(3), range(2), range(2)))
