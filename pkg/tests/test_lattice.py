from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricjets.lattice import (
    column_hermite,
    complete_to_unimodular,
    det,
    elementary_divisors_trivial,
    integer_inverse,
    integer_kernel_basis,
    is_lattice_basis,
    kernel_basis,
    mat_mul,
    mat_vec,
    primitive,
    primitive_vectors,
    rank_exact,
    transpose,
)

small_ints = st.integers(min_value=-6, max_value=6)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def leibniz_det(m):
    n = len(m)
    total = 0
    for perm in permutations(range(n)):
        inversions = sum(1 for i, j in combinations(range(n), 2) if perm[i] > perm[j])
        term = (-1) ** inversions
        for i in range(n):
            term *= m[i][perm[i]]
        total += term
    return total


def minor_rank(m):
    """Largest size of a nonzero minor, by exhaustive expansion."""
    rows, cols = len(m), len(m[0])
    for size in range(min(rows, cols), 0, -1):
        for rs in combinations(range(rows), size):
            for cs in combinations(range(cols), size):
                if leibniz_det([[m[i][j] for j in cs] for i in rs]):
                    return size
    return 0


@pytest.mark.parametrize(
    "v, expected",
    [((4, 6), (2, (2, 3))), ((0, 0, 0), (0, (0, 0, 0))), ((-3, 0, 9), (3, (-1, 0, 3)))],
)
def test_primitive_examples(v, expected):
    assert primitive(v) == expected


@pytest.mark.parametrize(
    "m, expected",
    [
        ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 3),
        ([[0] * 5, [0] * 5], 0),
        ([[1, 1, 1], [1, 2, 4], [1, 3, 9]], 3),
    ],
)
def test_rank_examples(m, expected):
    assert rank_exact(m) == expected


def test_kernel_examples():
    assert kernel_basis([[1, -1]]) == [(1, 1)]
    assert kernel_basis([[1, 0], [0, 1]]) == []
    vandermonde = [[x**e for e in range(3)] for x in (0, 1, 2)]
    assert kernel_basis(vandermonde) == []


def test_lattice_basis_examples():
    assert is_lattice_basis([(1, 0), (0, 1)])
    assert not is_lattice_basis([(1, 0), (1, 2)])
    assert not is_lattice_basis([(1, 0), (1, 1), (0, 1)])


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_matches_minor_expansion(m):
    assert rank_exact(m) == minor_rank(m)


@settings(max_examples=150, deadline=None)
@given(matrices(6, 6))
def test_rank_plus_left_kernel_is_row_count(m):
    assert rank_exact(m) == len(m) - len(kernel_basis(transpose(m), len(m)))


@settings(max_examples=100, deadline=None)
@given(matrices(6, 6))
def test_kernel_vectors_are_primitive_and_annihilate(m):
    for v in kernel_basis(m, len(m[0])):
        assert primitive(v)[0] == 1
        assert all(c == 0 for c in mat_vec(m, v))


@given(st.lists(small_ints, min_size=1, max_size=5))
def test_primitive_is_idempotent(v):
    g, p = primitive(v)
    assert primitive(p)[0] in (0, 1)
    assert tuple(g * c for c in p) == tuple(v)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_matches_leibniz(m):
    assert det(m) == leibniz_det(m)


def test_rank_large_rational_matrices_agree_with_elimination():
    # large enough to take the modular route, with a planted rank deficiency
    from toricjets.lattice import _bareiss, _integer_rows

    rng = random.Random(7)
    for _ in range(25):
        r_true = rng.randint(1, 12)
        rows, cols = rng.randint(r_true, 30), rng.randint(r_true, 40)
        a = [[rng.randint(-4, 4) for _ in range(r_true)] for _ in range(rows)]
        b = [[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(cols)] for _ in range(r_true)]
        m = [[sum(a[i][t] * b[t][j] for t in range(r_true)) for j in range(cols)] for i in range(rows)]
        assert rank_exact(m) == len(_bareiss(_integer_rows(m))[1])


@settings(max_examples=100, deadline=None)
@given(matrices(3, 5))
def test_column_hermite_is_unimodular_reduction(a):
    h, v = column_hermite(a)
    assert abs(det(v)) == 1
    assert [list(r) for r in mat_mul(a, v)] == [list(r) for r in h]
    for i, row in enumerate(h):
        assert all(c == 0 for c in row[i + 1 :])


def test_integer_kernel_is_saturated():
    basis = integer_kernel_basis([[2, 4, 6]])
    assert len(basis) == 2
    for v in basis:
        assert 2 * v[0] + 4 * v[1] + 6 * v[2] == 0
    # a primitive row extends to a unimodular matrix
    full = complete_to_unimodular([[1, 2, 3]])
    assert abs(det(full)) == 1


def test_elementary_divisors():
    assert elementary_divisors_trivial([[1, 2, 3]])
    assert not elementary_divisors_trivial([[2, 4, 6]])
    assert not elementary_divisors_trivial([[1, 1], [1, -1]])


def test_integer_inverse_roundtrip():
    m = [[2, 1], [1, 1]]
    inv = integer_inverse(m)
    assert mat_mul(m, inv) == ((1, 0), (0, 1))


def test_primitive_vectors_cover_box_once():
    vs = primitive_vectors(2, 2)
    assert (1, 0) in vs and (0, 1) in vs
    assert len(vs) == len(set(vs))
    assert not any(tuple(-c for c in v) in vs for v in vs)
    assert all(primitive(v)[0] == 1 and max(map(abs, v)) <= 2 for v in vs)
    # up to sign: four of sup-norm 1 and four of sup-norm 2
    assert len(vs) == 8
