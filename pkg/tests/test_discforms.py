import itertools
import random
from fractions import Fraction

import pytest

from latticeforge.catalog import CATALOG, lattice
from latticeforge.discforms import (FiniteQuadraticForm, apply_map, discriminant_form, find_anti_isometry,
                                    find_isometry, milgram_signature, orthogonal_group_order,
                                    p_primary_part, subgroup_perp_quotient, two_elementary_invariants)
from latticeforge.errors import (DimensionMismatch, GroupTooLarge, NotIsotropic, NotTwoElementary,
                                 OddLattice)
from latticeforge.intmat import bilinear
from latticeforge.lattice import signature

from oracles import discriminant_q_values, form_isometries_bruteforce, gauss_sum_signature_numeric

EVEN_CATALOG = [e for e in CATALOG if lattice(e).is_even]


def q_of(expr):
    return discriminant_form(lattice(expr))


def u2_form():
    return q_of("U(2)")


def test_a1_form():
    q = q_of("A1")
    assert q.orders == (2,) and q.q == (Fraction(1, 2),)


def test_e8_form_trivial():
    q = q_of("E8")
    assert q.orders == () and q.order == 1


def test_d4_form():
    q = q_of("D4")
    assert q.orders == (2, 2)
    assert [q.evaluate(x) for x in q.elements() if any(x)] == [1, 1, 1]


def test_odd_lattice_rejected():
    with pytest.raises(OddLattice):
        discriminant_form(lattice("<1>"))


def test_evaluate_examples():
    q = u2_form()
    assert q.q == (0, 0) and q.b[0][1] == Fraction(1, 2)
    assert q.evaluate((1, 1)) == 1
    assert q.evaluate((0, 0)) == 0
    assert q_of("A1").evaluate((1,)) == Fraction(1, 2)
    with pytest.raises(DimensionMismatch):
        q.evaluate((1,))


@pytest.mark.parametrize("expr, inv", [("D4", (2, 0)), ("A1", (1, 1)), ("U(2)", (2, 0)), ("E7", (1, 1)),
                                       ("3*D4 + 2*U", (6, 0)), ("E8(2)", (8, 0))])
def test_two_elementary_invariants(expr, inv):
    assert two_elementary_invariants(q_of(expr)) == inv


def test_not_two_elementary():
    with pytest.raises(NotTwoElementary):
        two_elementary_invariants(q_of("A2"))


@pytest.mark.parametrize("expr, sigma", [("E8", 0), ("A1", 1), ("D4", 4), ("A2", 2), ("E6(2)", 6),
                                         ("A1(-1)", 7), ("U(2)", 0)])
def test_milgram_examples(expr, sigma):
    assert milgram_signature(q_of(expr)) == sigma


@pytest.mark.parametrize("expr", [e for e in EVEN_CATALOG if abs(lattice(e).det) <= 2 ** 12])
def test_milgram_matches_numeric_gauss_sum(expr):
    q = q_of(expr)
    vals = [Fraction(v, q.den) for v in q.values()]
    assert milgram_signature(q) == gauss_sum_signature_numeric(vals)
    sig = signature(lattice(expr))
    assert milgram_signature(q) == (sig.t_plus - sig.t_minus) % 8


@pytest.mark.parametrize("expr", ["A1", "A2", "A3", "D4", "U(2)", "<6>", "2*A1", "A1 + A1(-1)", "U(3)", "A2(-1)"])
def test_q_values_against_naive_dual_enumeration(expr):
    q = q_of(expr)
    mine = sorted(q.evaluate(x) for x in q.elements())
    assert mine == discriminant_q_values(lattice(expr).matrix())


@pytest.mark.parametrize("expr", ["D4", "E6(2)", "3*D4 + 2*U", "A2 + 2*E8 + 2*U", "A5", "U(2) + <6>"])
def test_form_independent_of_representative(expr):
    lat = lattice(expr)
    q = discriminant_form(lat)
    g = lat.matrix()
    rng = random.Random(7)
    for i, lift in enumerate(q.lifts):
        shifted = [x + rng.randint(-3, 3) for x in lift]
        assert (bilinear(g, shifted, shifted) - q.q[i]) % 2 == 0
        for j, other in enumerate(q.lifts):
            assert (bilinear(g, shifted, other) - q.b[i][j]) % 1 == 0


@pytest.mark.parametrize("expr", [e for e in EVEN_CATALOG if abs(lattice(e).det) <= 2 ** 8])
def test_quadratic_identity_exhaustive(expr):
    q = q_of(expr)
    elems = q.elements()
    for x, y in itertools.product(elems, repeat=2):
        s = tuple(a + b for a, b in zip(x, y))
        assert (q.evaluate(s) - q.evaluate(x) - q.evaluate(y) - 2 * q.bilinear(x, y)) % 2 == 0


def test_values_agree_with_evaluate():
    q = q_of("E6(2)")
    assert sorted(Fraction(v, q.den) for v in q.values()) == sorted(q.evaluate(x) for x in q.elements())


@pytest.mark.parametrize("e1, e2", [("D4", "A1"), ("U(2)", "D4"), ("A1", "E7"), ("D4", "E8(2)"),
                                    ("A1", "A1(-1)")])
def test_delta_and_length_additive(e1, e2):
    q1, q2 = q_of(e1), q_of(e2)
    l1, d1 = two_elementary_invariants(q1)
    l2, d2 = two_elementary_invariants(q2)
    assert two_elementary_invariants(q1.direct_sum(q2)) == (l1 + l2, d1 | d2)
    assert two_elementary_invariants(q_of(f"{e1} + {e2}")) == (l1 + l2, d1 | d2)


@pytest.mark.parametrize("expr", [e for e in EVEN_CATALOG
                                  if lattice(e).det and all(n == 2 for n in q_of(e).orders)
                                  and q_of(e).rank <= 10])
def test_delta_from_generators_matches_exhaustion(expr):
    q = q_of(expr)
    _, delta = two_elementary_invariants(q)
    exhaustive = 0 if all(q.evaluate(x).denominator == 1 for x in q.elements()) else 1
    assert delta == exhaustive


def test_anti_isometry_examples():
    a1, a1m = q_of("A1"), q_of("A1(-1)")
    phi = find_anti_isometry(a1, a1m)
    assert phi == ((1,),)
    assert find_anti_isometry(q_of("D4"), q_of("D4")) is not None
    assert find_anti_isometry(a1, q_of("A2")) is None


@pytest.mark.parametrize("e1, e2", [("D4", "D4"), ("U(2)", "U(2)"), ("A2", "A2(-1)"), ("E7", "A1"),
                                    ("3*D4 + 2*U", "D4 + E8 + 2*U(2)")])
def test_anti_isometry_verified_exhaustively(e1, e2):
    q1, q2 = q_of(e1), q_of(e2)
    phi = find_anti_isometry(q1, q2)
    assert phi is not None
    for x in q1.elements():
        assert (q2.evaluate(apply_map(phi, q1, x)) + q1.evaluate(x)) % 2 == 0


def test_anti_isometry_nonexistence_is_exhaustive():
    # A1 and A1 have q = 1/2 on both sides; -1/2 = 3/2 is never attained
    assert find_anti_isometry(q_of("A1"), q_of("A1")) is None
    assert form_isometries_bruteforce(q_of("A1"), sign=-1, target=q_of("A1")) == 0


def test_isometry_between_equal_genus_forms():
    assert find_isometry(q_of("3*D4 + 2*U"), q_of("D4 + E8 + 2*U(2)")) is not None


def test_subgroup_perp_quotient_examples():
    q = u2_form()
    quo = subgroup_perp_quotient(q, [(1, 0)])
    assert quo.order == 1
    assert subgroup_perp_quotient(q, []) == q
    with pytest.raises(NotIsotropic):
        subgroup_perp_quotient(q, [(1, 1)])


def test_subgroup_perp_quotient_bigger():
    # D4 + D4: the diagonal {(x, x)} is isotropic (q values are integral and equal)
    q = q_of("D4 + D4")
    quo = subgroup_perp_quotient(q, [(1, 0, 1, 0), (0, 1, 0, 1)])
    assert quo.order == 1
    # a single isotropic vector in 2*U(2) leaves a 4-element quotient of type U(2)
    q2 = q_of("2*U(2)")
    quo2 = subgroup_perp_quotient(q2, [(1, 0, 0, 0)])
    assert quo2.orders == (2, 2)
    assert sorted(quo2.evaluate(x) for x in quo2.elements()) == sorted(u2_form().evaluate(x)
                                                                       for x in u2_form().elements())


@pytest.mark.parametrize("expr, order", [("A1", 1), ("U(2)", 2), ("D4", 6), ("A2", 2)])
def test_orthogonal_group_small(expr, order):
    q = q_of(expr)
    assert orthogonal_group_order(q) == order
    assert form_isometries_bruteforce(q) == order


def test_group_too_large(monkeypatch):
    monkeypatch.setenv("LATTICEFORGE_MAX_GROUP", "4")
    with pytest.raises(GroupTooLarge):
        milgram_signature(q_of("3*D4 + 2*U"))
    with pytest.raises(GroupTooLarge):
        orthogonal_group_order(q_of("3*D4 + 2*U"))


def test_p_primary_examples():
    q = q_of("E6(2)")
    q2, q3 = p_primary_part(q, 2), p_primary_part(q, 3)
    assert two_elementary_invariants(q2) == (6, 0)
    assert q3.orders == (3,)
    assert p_primary_part(q_of("E8"), 2).order == 1


@pytest.mark.parametrize("expr", ["E6(2)", "A5", "<12>", "A2 + D4", "A7", "U(6)"])
def test_p_primary_decomposition_orthogonal(expr):
    q = q_of(expr)
    primes = [p for p in (2, 3, 5, 7) if q.order % p == 0]
    parts = [p_primary_part(q, p) for p in primes]
    assert q.order == eval("*".join(str(p.order) for p in parts) or "1")
    for (p1, f1), (p2, f2) in itertools.combinations(zip(primes, parts), 2):
        for x in f1.elements():
            for y in f2.elements():
                v1, v2 = f1.lift(x), f2.lift(y)
                assert bilinear(lattice(expr).matrix(), v1, v2) % 1 == 0


def test_form_validation():
    with pytest.raises(Exception):
        FiniteQuadraticForm((2,), (Fraction(1, 3),), ((Fraction(1, 3),),))
    f = FiniteQuadraticForm((2,), (Fraction(5, 2),), ((Fraction(1, 2),),))
    assert f.q == (Fraction(1, 2),)


def test_json_dump():
    js = q_of("A2").to_json()
    assert js == {"orders": [3], "q": ["2/3"], "b": [["2/3"]]}
