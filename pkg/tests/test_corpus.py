from __future__ import annotations

import pytest

from toricjets.cayley import detect_cayley, min_edge_length
from toricjets.corpus import (
    GENERATORS,
    CorpusSpec,
    blowup,
    cayley_family,
    generate,
    other_family,
    reference_family,
)
from toricjets.errors import InvalidParams
from toricjets.polytope import hexagon, is_smooth, standard_simplex


def test_simplex_and_hexagon_generators():
    assert generate(CorpusSpec("simplex", {"n": 2, "k": 3})) == standard_simplex(2, 3)
    hexa = generate(CorpusSpec("delpezzo6"))
    assert set(hexa.vertices) == {(0, 0), (1, 0), (2, 1), (2, 2), (1, 2), (0, 1)}
    assert len(hexa.lattice_points) == 7 and is_smooth(hexa)


def test_cayley_generator_round_trip():
    tri = {"name": "simplex", "n": 2, "k": 2}
    moved = [[2, 0], [4, 0], [2, 2]]
    p = generate(CorpusSpec("cayley", {"slices": [tri, moved], "s": 2}))
    assert p.dim == 3
    assert detect_cayley(p, 2) is not None


def test_specs_are_deterministic():
    spec = CorpusSpec("random_cayley", {"dim": 3, "k": 2}, seed=4)
    assert generate(spec) == generate(CorpusSpec("random_cayley", {"dim": 3, "k": 2}, seed=4))
    spec = CorpusSpec("unimodular", {"base": {"name": "delpezzo6"}}, seed=9)
    assert generate(spec) == generate(spec)


@pytest.mark.parametrize(
    "spec",
    [
        CorpusSpec("nope"),
        CorpusSpec("simplex", {"n": 0}),
        CorpusSpec("simplex", {"n": 2, "bogus": 1}),
        CorpusSpec("box", {"sides": [2, 0]}),
        CorpusSpec("cross", {"n": 2, "plus": [1]}),
        CorpusSpec("cayley", {"slices": [[[0]]], "s": 1}),
        CorpusSpec("chop", {"base": {"name": "simplex", "n": 2}, "normal": [1, 0], "level": 5}),
        CorpusSpec("random_cayley", {"dim": 1, "k": 1}),
    ],
)
def test_invalid_params(spec):
    with pytest.raises(InvalidParams):
        generate(spec)


def test_blowup_adds_one_facet():
    p = standard_simplex(2, 3)
    q = blowup(p, 0, 1)
    assert len(q.facets) == len(p.facets) + 1
    assert is_smooth(q)
    assert p.vertices[0] not in q.vertices


def test_blowing_up_triangle_corners_gives_hexagon():
    q = generate(CorpusSpec("blowup", {"base": {"name": "simplex", "n": 2, "k": 3}, "vertices": [0, 1, 2], "depth": 1}))
    assert len(q.vertices) == 6
    assert all(e.lattice_length == 1 for e in q.edges)
    # a unimodular copy of the del Pezzo hexagon: same point count and width
    assert len(q.lattice_points) == len(hexagon().lattice_points)


def test_cayley_family_meets_its_contract():
    specs = cayley_family()
    assert len(specs) >= 50
    seen = set()
    for spec in specs:
        p = generate(spec)
        k = spec.params["k"]
        assert 2 <= p.dim <= 4 and k <= 3
        assert is_smooth(p) and min_edge_length(p) >= k
        assert detect_cayley(p, k) is not None
        seen.add(p.vertices)
    assert len(seen) == len(specs)


def test_non_cayley_family_is_large_enough():
    none_found = 0
    for spec in other_family():
        p = generate(spec)
        assert is_smooth(p), spec.label()
        if all(detect_cayley(p, k) is None for k in (1, 2, 3)):
            none_found += 1
    assert none_found >= 20


def test_reference_family_covers_all_generators_used_in_examples():
    names = {spec.name for spec in reference_family()}
    assert {"simplex", "cube", "cross", "delpezzo6", "cayley"} <= names
    assert set(GENERATORS) >= names
