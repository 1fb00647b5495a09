import itertools

import pytest
from hypothesis import given, settings, strategies as st

from invgen import config
from invgen.audit import audit_config, group
from invgen.invariable import (
    class_multiset,
    cover_instance,
    d,
    di,
    frattini_rank_bound,
    is_invariably_generating_set,
    is_invgen_cover,
    is_invgen_oracle,
    is_nilpotent,
    kills,
    min_cover,
    nilpotent_maximal,
)
from invgen.perm import CapExceeded, generate
from invgen.structure import conjugacy_classes, subgroup_lattice


@pytest.mark.parametrize("sets,universe,expected", [
    ([0b011, 0b110, 0b100], 0b111, (2, (0, 1))),
    ([0b111], 0b111, (1, (0,))),
    ([0b001, 0b010, 0b100], 0b111, (3, (0, 1, 2))),
    ([0b01], 0b11, None),
    ([], 0, (0, ())),
])
def test_min_cover(sets, universe, expected):
    assert min_cover(sets, universe) == expected


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 63), min_size=1, max_size=8))
def test_min_cover_matches_brute_force(sets):
    universe = 0
    for s in sets:
        universe |= s
    best = None
    for k in range(len(sets) + 1):
        for combo in itertools.combinations(range(len(sets)), k):
            got = 0
            for c in combo:
                got |= sets[c]
            if got == universe:
                best = (k, combo)
                break
        if best:
            break
    assert min_cover(sets, universe) == best


@pytest.mark.parametrize("text,value", [
    ("C(1)", 0), ("C(2)", 1), ("C(6)", 1), ("S(3)", 2), ("S(4)", 2), ("S(5)", 2),
    ("S(6)", 3), ("A(5)", 2), ("Q8", 2), ("D(4)", 2), ("F21", 2),
    ("dp(C(2),C(2),C(2))", 3), ("B(4)", 3), ("D8oD8", 4),
])
def test_di_values(text, value):
    assert di(group(text)).value == value


def test_trivial_group():
    r = di(group("C(1)"))
    assert (r.value, r.witness, r.method) == (0, (), "trivial")
    assert d(group("C(1)")) == 0


def test_s6_lex_least_witness():
    G = group("S(6)")
    t = conjugacy_classes(G)
    r = di(G)
    assert r.witness == (1, 2, 8)
    assert [t.describe(c) for c in r.witness] == ["2:(5,6)", "2:(1,2)(3,4)(5,6)", "5:(2,3,4,5,6)"]
    # a 6-cycle, a 5-cycle and a 3-cycle also work
    six = [i for i, c in enumerate(t.classes) if t.describe(i) == "6:(1,2,3,4,5,6)"][0]
    three = [i for i, c in enumerate(t.classes) if t.describe(i) == "3:(4,5,6)"][0]
    assert is_invgen_cover(G, (six, 8, three))
    assert not any(is_invgen_cover(G, pair) for pair in itertools.combinations(range(len(t)), 2))


@pytest.mark.parametrize("text,value", [
    ("S(3)", 2), ("S(4)", 2), ("Q8", 2), ("dp(C(2),C(2),C(2))", 3), ("D8oD8", 4),
    ("A(5)", 2), ("GL(3,2)", 2), ("wr(C(2),S(3))", 2),
])
def test_d(text, value):
    G = group(text)
    assert d(G) == value
    assert frattini_rank_bound(G) <= value
    assert d(G) <= di(G).value


def test_kills_is_derangement():
    G = group("S(4)")
    inst = cover_instance(G)
    t = conjugacy_classes(G)
    for k, M in enumerate(inst.maximal):
        for c in range(len(t)):
            assert ((inst.sets[c] >> k) & 1) == kills(G, c, M)
    # the identity class kills nothing
    assert inst.sets[0] == 0


def test_oracle_examples():
    G = group("S(3)")
    t = conjugacy_classes(G)
    assert is_invgen_oracle(G, [t.classes[1].rep, t.classes[2].rep])
    assert not is_invgen_oracle(G, [t.classes[1].rep, t.classes[1].rep])
    assert not is_invgen_oracle(G, [])
    with pytest.raises(CapExceeded):
        is_invgen_oracle(group("S(5)"), [1, 2, 3], cap=2)


@pytest.mark.parametrize("text", ["S(4)", "D(6)", "Q8", "wr(C(2),C(2))", "F21", "A(5)"])
def test_cover_equals_oracle(text):
    G = group(text)
    t = conjugacy_classes(G)
    reps = [c.rep for c in t.classes]
    for k in (1, 2):
        for combo in itertools.combinations_with_replacement(range(len(t)), k):
            assert is_invgen_cover(G, combo) == is_invgen_oracle(G, [reps[c] for c in combo])


@settings(max_examples=25, deadline=None)
@given(st.lists(st.permutations(range(5)), min_size=1, max_size=2),
       st.lists(st.integers(0, 10 ** 6), min_size=1, max_size=3))
def test_cover_equals_oracle_random(gens, picks):
    G = generate(gens)
    t = conjugacy_classes(G)
    combo = [p % len(t) for p in picks]
    assert is_invgen_cover(G, combo) == is_invgen_oracle(G, [t.classes[c].rep for c in combo])


def test_elements_wrapper():
    G = group("S(4)")
    four = G.index([1, 2, 3, 0])
    three = G.index([1, 2, 0, 3])
    assert class_multiset(G, [three, four]) == tuple(sorted(
        (int(conjugacy_classes(G).class_of[three]), int(conjugacy_classes(G).class_of[four]))))
    assert is_invariably_generating_set(G, [[1, 2, 3, 0], [1, 2, 0, 3]])
    assert not is_invariably_generating_set(G, [[1, 2, 3, 0]])


def test_di_witness_is_valid_and_minimal():
    for text in ["S(4)", "B(4)", "dp(S(3),S(3))", "wr(C(3),S(3))"]:
        G = group(text)
        r = di(G)
        assert is_invgen_cover(G, r.witness)
        n = len(conjugacy_classes(G))
        assert not any(is_invgen_cover(G, c)
                       for c in itertools.combinations(range(n), r.value - 1))


@pytest.mark.parametrize("text,nilpotent", [
    ("Q8", True), ("C(8)", True), ("D8oD8", True), ("wr(wr(C(2),C(2)),C(2))", True),
    ("dp(C(3),Q8)", True), ("C(6)", True), ("wr(C(3),C(3))", True),
    ("S(4)", False), ("B(4)", False), ("D(3)", False),
])
def test_nilpotent_maximal_matches_lattice(text, nilpotent):
    G = group(text)
    assert is_nilpotent(G) == nilpotent
    found = nilpotent_maximal(G)
    if not nilpotent:
        assert found is None
        return
    lattice = subgroup_lattice(G).maximal_classes
    assert sorted(m.rep for m in found) == sorted(m.rep for m in lattice)


def test_large_2group_without_lattice(monkeypatch):
    # 73 classes: above the default class cap, within the audit profile
    monkeypatch.setattr(config, "_current", audit_config())
    G = group("wr(C(2),D(8))")
    assert G.order == 4096
    r = di(G)
    assert (r.value, r.method) == (3, "cover")
    # Burnside basis theorem: d of a p-group is its Frattini rank
    assert r.value == frattini_rank_bound(G)
