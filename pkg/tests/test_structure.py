import pytest
from hypothesis import given, settings, strategies as st

from invgen.constructions import build
from invgen.parser import parse
from invgen.perm import CapExceeded, alternating_group, generate, symmetric_group
from invgen.structure import (
    center_mask,
    centralizer,
    chief_series_masks,
    composition_data,
    conjugacy_classes,
    is_normal_mask,
    is_soluble,
    normal_subgroups,
    small_quotient,
    subgroup_lattice,
)


def group(text):
    return build(parse(text)).materialize()


@pytest.mark.parametrize("text,sizes", [
    ("S(3)", [1, 3, 2]),
    ("A(5)", [1, 15, 20, 12, 12]),
    ("S(4)", [1, 3, 6, 8, 6]),
    ("Q8", [1, 1, 2, 2, 2]),
])
def test_class_sizes(text, sizes):
    assert conjugacy_classes(group(text)).sizes() == sizes


@pytest.mark.parametrize("text", ["S(4)", "D(5)", "Q8", "F21", "wr(C(2),S(3))"])
def test_class_equation(text):
    G = group(text)
    t = conjugacy_classes(G)
    assert sum(t.sizes()) == G.order
    for c in t.classes:
        # orbit-stabilizer
        assert c.size * centralizer(G, c.rep).size == G.order
        assert c.rep == int(c.members.min())


@pytest.mark.parametrize("text,classes,total,maximal", [
    ("S(3)", 4, 6, [2, 3]),
    ("S(4)", 11, 30, [6, 8, 12]),
    ("S(5)", 19, 156, [12, 20, 24, 60]),
])
def test_lattice_counts(text, classes, total, maximal):
    L = subgroup_lattice(group(text))
    assert len(L.all_classes) == classes
    assert L.total_subgroups() == total
    assert sorted(c.order for c in L.maximal_classes) == maximal


@pytest.mark.slow
def test_lattice_s6():
    L = subgroup_lattice(group("S(6)"))
    assert (L.total_subgroups(), len(L.all_classes)) == (1455, 56)


def test_lattice_cap():
    with pytest.raises(CapExceeded):
        subgroup_lattice(symmetric_group(5), order_cap=100)


def test_lattice_orders_divide():
    G = group("S(4)")
    L = subgroup_lattice(G)
    for c in L.all_classes:
        H = L.subgroup(c)
        assert G.order % H.order == 0
        assert c.length * G.order % H.order == 0


def test_center_and_normality():
    assert bin(center_mask(group("Q8"))).count("1") == 2
    assert center_mask(alternating_group(5)) == 1
    G = symmetric_group(4)
    for N in normal_subgroups(G):
        assert N.order in (1, 4, 12, 24)
    assert len(normal_subgroups(G)) == 4
    for m in chief_series_masks(G):
        assert is_normal_mask(G, m)


def test_solubility():
    assert is_soluble(symmetric_group(4))
    assert not is_soluble(alternating_group(5))
    assert not is_soluble(group("GL(3,2)"))


@pytest.mark.parametrize("text,length,nonab,factors", [
    ("S(3)", 2, 0, ["C2", "C3"]),
    ("S(5)", 2, 1, ["C2", "A5"]),
    ("D8oD8", 5, 0, ["C2"] * 5),
    ("dp(A(5),A(5))", 2, 2, ["A5", "A5"]),
])
def test_composition(text, length, nonab, factors):
    cd = composition_data(group(text))
    assert cd.length == length
    assert cd.nonabelian_chief_factors == nonab
    assert sorted(f.name for f in cd.composition_factors) == sorted(factors)


def test_quotient_order():
    G = symmetric_group(4)
    V4 = [N for N in normal_subgroups(G) if N.order == 4][0]
    assert small_quotient(G, V4).order == 6


@settings(max_examples=20, deadline=None)
@given(st.lists(st.permutations(range(5)), min_size=1, max_size=2))
def test_classes_partition(gens):
    G = generate(gens)
    t = conjugacy_classes(G)
    seen = 0
    for c in t.classes:
        assert seen & c.mask == 0
        seen |= c.mask
    assert seen == (1 << G.order) - 1
    assert len(t) == len(set(t.class_of.tolist()))
