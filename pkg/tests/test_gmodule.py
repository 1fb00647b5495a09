import pytest

from invgen.audit import group
from invgen.gmodule import (
    BadSection,
    check_module_bounds,
    chi,
    d_G,
    has_soluble_transitive_subgroup,
    make_section,
)
from invgen.perm import alternating_group, cyclic_group, symmetric_group
from invgen.structure import normal_subgroup_masks


def mask_of_order(G, n):
    return [m for m in normal_subgroup_masks(G) if bin(m).count("1") == n][0]


def test_klein_four_in_s4():
    G = group("S(4)")
    s = make_section(G, mask_of_order(G, 4))
    assert (s.p, s.dim, s.order) == (2, 2, 4)
    # irreducible module: one orbit of S4 on the nonzero vectors
    assert d_G(s) == d_G(s, "closure") == 1
    assert chi(s) == 1
    assert chi(s, dual=True) == 1


def test_quotient_section():
    G = group("S(4)")
    s = make_section(G, mask_of_order(G, 12), mask_of_order(G, 4))
    assert (s.p, s.dim) == (3, 1)
    assert d_G(s) == 1


def test_nonabelian_section_uses_closure():
    G = group("S(4)")
    s = make_section(G, (1 << 24) - 1)
    assert not s.abelian
    assert d_G(s) == 1
    with pytest.raises(BadSection):
        d_G(s, "spin")


def test_trivial_section():
    G = group("S(3)")
    assert d_G(make_section(G, 1)) == 0


def test_non_normal_rejected():
    G = group("S(3)")
    H = G.span_mask([G.index([1, 0, 2])])
    with pytest.raises(BadSection):
        make_section(G, H)


@pytest.mark.parametrize("text,order,expected", [
    ("dp(C(2),C(2),C(2))", 8, 3),
    ("wr(C(2),S(3))", 8, 1),
    ("wr(C(2),C(3))", 8, 1),
])
def test_d_G_on_base(text, order, expected):
    G = group(text)
    top = [m for m in normal_subgroup_masks(G) if bin(m).count("1") == order
           and make_section(G, m).elementary][0]
    s = make_section(G, top)
    assert d_G(s) == d_G(s, "closure") == expected


def test_soluble_transitive():
    assert has_soluble_transitive_subgroup(symmetric_group(4))
    assert has_soluble_transitive_subgroup(cyclic_group(5))
    # A5 on 5 points contains the cyclic group of order 5
    assert has_soluble_transitive_subgroup(alternating_group(5))


@pytest.mark.parametrize("m", [2, 3, 4])
def test_module_bounds_in_wreath(m):
    G = group(f"wr(C({m}),S(3))")
    report = check_module_bounds(G, cyclic_group(m), symmetric_group(3))
    assert report.soluble_transitive
    assert report.ok
    assert all(r.abelian for r in report.rows)
