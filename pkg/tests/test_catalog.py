import itertools

import pytest
from hypothesis import given, settings, strategies as st

from latticeforge.catalog import CATALOG, Named, Repeat, Scale, Sum, evaluate, lattice, named, parse, to_text
from latticeforge.discforms import discriminant_form
from latticeforge.errors import BadParameter, ExpressionSyntaxError, UnknownName, ZeroScale
from latticeforge.lattice import discriminant_group, signature


def test_named_examples():
    assert named("A2").gram == ((2, 1), (1, 2))
    e8 = named("E8")
    assert e8.rank == 8 and e8.det == 1 and e8.is_even
    i = named("I21,2")
    assert not i.is_even and tuple(signature(i)) == (21, 2)


@pytest.mark.parametrize("name, rank, det", [("A1", 1, 2), ("A5", 5, 6), ("D4", 4, 4), ("D7", 7, 4),
                                             ("E6", 6, 3), ("E7", 7, 2), ("U", 2, -1), ("<-6>", 1, -6),
                                             ("K3", 22, -1), ("Lambda0", 22, 3)])
def test_named_dets(name, rank, det):
    lat = named(name)
    assert (lat.rank, lat.det) == (rank, det)


@pytest.mark.parametrize("name, roots", [("A3", 12), ("D5", 40), ("E6", 72), ("E7", 126)])
def test_root_systems_by_diagonal(name, roots):
    # A_n, D_n, E_n are positive definite with the expected root count
    from latticeforge.definite import short_vectors
    assert short_vectors(named(name), 2).counts[2] == roots


def test_parse_examples():
    lam = lattice("A2 + 2*E8 + 2*U")
    assert lam.rank == 22 and lam.det == 3
    t = lattice("3*D4 + 2*U")
    assert tuple(signature(t)) == (14, 2)
    assert lattice("E6(2)").det == 192
    assert lattice("E6(2)").gram == tuple(tuple(2 * x for x in r) for r in named("E6").gram)


def test_parse_ast_shape():
    assert parse("3*D4 + 2*U") == Sum((Repeat(3, Named("D", (4,))), Repeat(2, Named("U"))))
    assert parse("  E6 ( 2 ) ") == Scale(Named("E", (6,)), 2)
    assert parse("2*(A1 + A1(-1))") == Repeat(2, Sum((Named("A", (1,)), Scale(Named("A", (1,)), -1))))


@pytest.mark.parametrize("text, exc, pos", [("D4(0)", ZeroScale, 3), ("A2 +", ExpressionSyntaxError, 4),
                                            ("A2 $ U", ExpressionSyntaxError, 3), ("(A2", ExpressionSyntaxError, 3),
                                            ("3*", ExpressionSyntaxError, 2), ("", ExpressionSyntaxError, 0),
                                            ("A2 U", ExpressionSyntaxError, 3)])
def test_parse_errors(text, exc, pos):
    with pytest.raises(exc) as info:
        parse(text)
    assert info.value.position == pos


@pytest.mark.parametrize("text, exc", [("F4", UnknownName), ("Q", UnknownName), ("A", BadParameter),
                                       ("<0>", BadParameter), ("D3", BadParameter), ("E9", BadParameter)])
def test_name_errors(text, exc):
    with pytest.raises(exc):
        lattice(text)


@pytest.mark.parametrize("text", CATALOG)
def test_catalog_round_trip(text):
    ast = parse(text)
    assert parse(to_text(ast)) == ast


leaves = st.one_of(
    st.builds(lambda n: Named("A", (n,)), st.integers(1, 4)),
    st.builds(lambda n: Named("D", (n,)), st.integers(4, 5)),
    st.sampled_from([Named("E", (6,)), Named("U"), Named("<>", (-2,)), Named("<>", (6,)), Named("I", (1, 1))]),
)
asts = st.recursive(
    leaves,
    lambda inner: st.one_of(
        st.builds(Scale, inner, st.integers(-3, 3).filter(bool)),
        st.builds(Repeat, st.integers(0, 3), inner),
        st.builds(lambda ts: Sum(tuple(ts)), st.lists(inner, min_size=2, max_size=3)),
    ),
    max_leaves=6,
)


def _flatten(node):
    # Sum nested directly in Sum prints without parentheses and reparses flat
    if isinstance(node, Sum):
        out = []
        for t in node.terms:
            t = _flatten(t)
            out.extend(t.terms if isinstance(t, Sum) else [t])
        return Sum(tuple(out))
    if isinstance(node, Scale):
        return Scale(_flatten(node.expr), node.factor)
    if isinstance(node, Repeat):
        return Repeat(node.count, _flatten(node.expr))
    return node


@settings(max_examples=200, deadline=None)
@given(asts)
def test_round_trip_random_asts(ast):
    text = to_text(ast)
    back = parse(text)
    assert _flatten(back) == _flatten(ast)
    assert evaluate(back).gram == evaluate(ast).gram


@pytest.mark.parametrize("pieces", [("A2", "E8", "U", "U"), ("D4", "D4", "D4", "U", "U"), ("E6(2)", "U(2)", "A1")])
def test_sum_order_invariance(pieces):
    ref = None
    for perm in itertools.permutations(pieces):
        lat = lattice(" + ".join(perm))
        form = discriminant_form(lat)
        inv = (lat.det, tuple(signature(lat)), discriminant_group(lat).invariant_factors,
               sorted(form.evaluate(x) for x in form.elements()))
        assert ref is None or inv == ref
        ref = inv
