import random

import pytest

from latticeforge.catalog import lattice
from latticeforge.definite import half_rescale_check, isometric_small, iter_short_vectors, short_vectors
from latticeforge.errors import NotHalfScalable, NotPositiveDefinite, RankTooLarge
from latticeforge.intmat import congruence
from latticeforge.lattice import rescale, validate

from oracles import short_vector_counts_box


def test_d4_roots():
    assert short_vectors(lattice("D4"), 2).counts == {2: 24}


def test_e6_2_minimal_vectors():
    rep = short_vectors(lattice("E6(2)"), 4)
    assert rep.counts == {4: 72} and rep.minimum == 4


def test_indefinite_rejected():
    with pytest.raises(NotPositiveDefinite):
        short_vectors(lattice("U"), 2)


@pytest.mark.parametrize("expr, roots", [("A1", 2), ("A2", 6), ("A4", 20), ("D4", 24), ("D5", 40), ("E6", 72),
                                         ("E7", 126), ("E8", 240)])
def test_root_counts(expr, roots):
    assert short_vectors(lattice(expr), 2).counts.get(2, 0) == roots


@pytest.mark.parametrize("expr, bound", [("A2", 8), ("D4", 6), ("A3 + <4>", 6), ("E6", 4), ("<2> + <6>", 12),
                                         ("E6(2)", 4), ("D4(2)", 8)])
def test_counts_match_box_oracle(expr, bound):
    lat = lattice(expr)
    assert short_vectors(lat, bound).counts == short_vector_counts_box(lat.matrix(), bound)


@pytest.mark.parametrize("expr", ["A2", "D4", "E6"])
@pytest.mark.parametrize("a", [2, 3])
def test_scaling_multiplies_norms(expr, a):
    lat = lattice(expr)
    base = short_vectors(lat, 4).counts
    scaled = short_vectors(rescale(lat, a), 4 * a).counts
    assert scaled == {a * k: v for k, v in base.items()}


def test_vectors_come_in_pairs():
    vecs = {v for v, _ in iter_short_vectors(lattice("A3"), 4)}
    assert all(tuple(-x for x in v) in vecs for v in vecs)


def test_half_rescale():
    assert half_rescale_check(lattice("E6(2)")).gram == lattice("E6").gram
    assert half_rescale_check(lattice("D4(2)")).gram == lattice("D4").gram
    with pytest.raises(NotHalfScalable):
        half_rescale_check(lattice("A1"))


def test_half_rescale_u2():
    assert half_rescale_check(lattice("U(2)")).gram == lattice("U").gram


def test_isometry_examples():
    assert isometric_small(lattice("A2"), validate([[2, -1], [-1, 2]]))
    assert not isometric_small(lattice("D4"), lattice("4*A1"))
    assert isometric_small(lattice("<2>"), lattice("<2>"))
    assert not isometric_small(lattice("A2"), lattice("2*A1"))


def _random_unimodular(n, rng):
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-1, 1])
        m[i] = [a + c * b for a, b in zip(m[i], m[j])]
    return m


@pytest.mark.parametrize("expr", ["A3", "D4", "A2 + A1", "E6", "D5", "A4"])
def test_isometry_under_basis_change(expr):
    rng = random.Random(expr)
    lat = lattice(expr)
    other = validate(congruence(_random_unimodular(lat.rank, rng), lat.matrix()))
    assert isometric_small(lat, other)
    assert isometric_small(other, lat)
    assert isometric_small(lat, lat)


def test_isometry_needs_backtracking():
    # distinct reduced binary forms of det 48, both with minimum 6 > theta depth
    a, b = lattice("<6> + <8>"), lattice("A2(4)")
    assert not isometric_small(a, b)
    assert isometric_small(b, validate(congruence([[1, 0], [1, 1]], b.matrix())))


def test_isometry_rank_limit():
    with pytest.raises(RankTooLarge):
        isometric_small(lattice("E8 + A1"), lattice("E8 + A1"))
