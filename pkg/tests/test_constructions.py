import pytest
from hypothesis import given, settings, strategies as st

from invgen.audit import group
from invgen.constructions import (
    BuildError,
    Cyclic,
    D8_CENTRAL_D8_GENERATORS,
    DirectProduct,
    Symmetric,
    Wreath,
    build,
    catalog,
    d8_central_d8,
    d8_central_d8_search,
    direct_product,
    have_common_image,
    is_large_subgroup,
    projective_line_group,
    wreath_product,
)
from invgen.invariable import d
from invgen.matgroup import NotInvertible
from invgen.parser import ParseError, parse, parse_group_expr
from invgen.perm import cyclic_group, is_transitive, minimal_block_system, symmetric_group
from invgen.structure import center_mask, conjugacy_classes, is_soluble


def test_parse_examples():
    assert parse("wr(C(2),S(3))") == Wreath(Cyclic(2), Symmetric(3))
    assert parse("dp(A(5),A(5))") == DirectProduct((parse("A(5)"), parse("A(5)")))


def test_parse_error_offset():
    with pytest.raises(ParseError) as info:
        parse("wr(C(2)")
    assert info.value.position == 7
    assert info.value.expected == frozenset({",", ")"})


@pytest.mark.parametrize("text,position", [
    ("", 0), ("X(3)", 0), ("C(", 2), ("C(2))", 4), ("wr(C(2))", 0), ("sub(S(3); (1,2)", 15),
    ("mat(2; 1)", 0), ("lin(mat(2; 1 | ))", 15),
])
def test_parse_errors(text, position):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.position == position


@pytest.mark.parametrize("entry", catalog(), ids=lambda c: c.name)
def test_catalog_round_trip(entry):
    e = parse_group_expr(entry.text)
    assert parse_group_expr(str(e)) == e
    assert str(e) == entry.text


# random expressions over small leaves
leaves = st.sampled_from(["C(1)", "C(2)", "C(3)", "S(3)", "D(4)", "A(4)", "Q8", "F21", "B(4)",
                          "GL(2,3)", "PGL(2,5)", "lin(mat(3; 1,1 | 0,1))"])


def _exprs(inner):
    return st.one_of(
        st.lists(inner, min_size=1, max_size=3).map(lambda xs: "dp(" + ",".join(xs) + ")"),
        st.tuples(inner, inner).map(lambda t: f"wr({t[0]},{t[1]})"),
    )


expr_texts = st.recursive(leaves, _exprs, max_leaves=5)


@settings(max_examples=150, deadline=None)
@given(expr_texts)
def test_printer_round_trip(text):
    e = parse(text)
    assert str(e) == text
    assert parse(str(e)) == e


@settings(max_examples=100, deadline=None)
@given(st.text(alphabet="CSDAdpwr(),;0123456789 ", max_size=20))
def test_parser_fails_cleanly(text):
    try:
        parse(text)
    except ParseError as exc:
        assert 0 <= exc.position <= len(text)


@pytest.mark.parametrize("entry", [c for c in catalog() if "order" in c.expected],
                         ids=lambda c: c.name)
def test_catalog_orders(entry):
    G = build(parse(entry.text))
    assert G.order == entry.expected["order"].value


@pytest.mark.parametrize("text,order", [
    ("subd(S(3); (1,2,3); S(3); (1,2,3))", 18),
    ("quo(S(4); (1,2)(3,4),(1,3)(2,4))", 6),
    ("sub(S(4); (1,2,3,4))", 4),
    ("dp(C(2),C(3))", 6),
    ("wr(C(3),C(2))", 18),
    ("PGL(2,7)", 336),
    ("PGaL(2,8)", 1512),
    ("PGaL(2,9)", 1440),
])
def test_combinator_orders(text, order):
    assert group(text).order == order


@pytest.mark.parametrize("text", [
    "D(2)", "GL(2,4)", "PGL(3,2)", "sub(S(3); (1,2,3,4))", "B(3)", "C(0)", "sub(S(3); (1,2)(3,4))",
])
def test_build_errors(text):
    with pytest.raises(BuildError):
        group(text)


def test_singular_matrix():
    with pytest.raises(NotInvertible):
        group("lin(mat(2; 1,1 | 1,1))")


def test_sub_rejects_outsiders():
    with pytest.raises(Exception):
        group("sub(A(4); (1,2))")


def test_wreath_structure():
    W = wreath_product(cyclic_group(2), symmetric_group(3))
    assert W.order == 48 and W.degree == 6
    blocks = minimal_block_system(W)
    # point (i, j) is j*r + i, so block j is {j*r, ..., j*r + r - 1}
    assert blocks == [(0, 1), (2, 3), (4, 5)]
    assert is_large_subgroup(W, cyclic_group(2), symmetric_group(3))


def test_direct_product_is_intransitive():
    G = direct_product([symmetric_group(3), cyclic_group(2)])
    assert G.order == 12 and G.degree == 5
    assert not is_transitive(G)


def test_d8_central_d8():
    G = d8_central_d8()
    assert G.order == 32
    assert bin(center_mask(G)).count("1") == 2
    assert d(G) == 4
    assert G.degree == len(D8_CENTRAL_D8_GENERATORS[0]) == 8
    found = d8_central_d8_search()
    assert len(found) == 1 and found[0].order == 32


def test_projective_line():
    G = projective_line_group(5)
    assert G.degree == 6 and G.order == 120
    assert is_transitive(G)
    assert not is_soluble(projective_line_group(4))


def test_common_image():
    assert have_common_image(symmetric_group(3), symmetric_group(4))
    assert not have_common_image(cyclic_group(3), cyclic_group(2))


def test_b_group_classes():
    G = group("B(4)")
    assert G.order == 18 and G.degree == 6
    assert len(conjugacy_classes(G)) == 6
