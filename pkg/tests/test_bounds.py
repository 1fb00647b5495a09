from fractions import Fraction
import math

import pytest
from hypothesis import given, strategies as st

from invgen import bounds
from invgen.bounds import (
    E,
    E_prime,
    E_sol,
    comp_red_bound,
    factorize,
    floor_b_sqrt_log,
    half_n_bound,
    lpp,
    quasiprim_bound,
    s_part,
    useful_bound_check,
    ws,
)


@pytest.mark.parametrize("s,p,value", [
    (2, 2, 1), (2, 3, 1), (3, 2, 1), (3, 3, 1), (12, 2, 4), (12, 3, 3), (16, 2, 6), (16, 3, 1),
])
def test_E_values(s, p, value):
    assert E(s, p) == value


def test_quoted_sums():
    assert E(12, 2) + E(12, 3) == 7
    assert 4 * E(16, 2) + E(16, 3) == 25


@pytest.mark.parametrize("s,value", [
    (2, Fraction(1)), (3, Fraction(3, 2)), (4, Fraction(2)), (12, Fraction(9, 2)), (16, Fraction(6)),
])
def test_ws_exact(s, value):
    assert ws(s) == value


def test_E_sol_can_exceed_E():
    # exact definitions: the documented inequality breaks at (3,3)
    assert E_sol(3, 3) == Fraction(3, 2)
    assert E(3, 3) == 1


def test_E_prime_picks_soluble_branch():
    assert E_prime(3, 3, True) == E_sol(3, 3)
    assert E_prime(3, 3, False) == E(3, 3)


@given(st.integers(2, 5000))
def test_parts(s):
    f = factorize(s)
    assert math.prod(p ** k for p, k in f.items()) == s
    assert lpp(s) == max(p ** k for p, k in f.items())
    for p in f:
        assert s % s_part(s, p) == 0
        assert (s // s_part(s, p)) % p != 0


@given(st.integers(2, 3000), st.sampled_from([2, 3, 5, 7, 97]))
def test_E_at_most_half(s, p):
    assert E(s, p) <= Fraction(s, 2)
    assert E(s, p) >= 1


@given(st.integers(3, 3000))
def test_floor_matches_float(s):
    b = math.sqrt(2 / math.pi)
    approx = b * s / math.sqrt(math.log2(s))
    got = floor_b_sqrt_log(s)
    # certified floor agrees with the float except within rounding of an integer
    assert abs(got - math.floor(approx)) <= (1 if abs(approx - round(approx)) < 1e-9 else 0)


@pytest.mark.parametrize("n,value,exc", [(3, 1, {"Sym(3)": 2}), (4, 2, {}), (7, 3, {})])
def test_half_n(n, value, exc):
    r = half_n_bound(n)
    assert r.value == value and r.exceptions == exc


def test_half_n_exception_allows_exact_value_only():
    r = half_n_bound(3)
    assert r.allows("Sym(3)", 2)
    assert not r.allows("Sym(3)", 1)
    assert r.allows(None, 1)


def test_comp_red():
    r = comp_red_bound(6, 2)
    assert r.value == 3
    assert r.exceptions == {"B(6)": 4, "Sp4(2)": 3}
    assert comp_red_bound(4, 3).value == 4
    assert comp_red_bound(4, 5).value == 6
    assert comp_red_bound(3, 2).exceptions == {}


@pytest.mark.parametrize("n,value", [(2, 2), (4, 4), (15, 7), (16, 8)])
def test_quasiprim(n, value):
    assert quasiprim_bound(n).value == value
    assert value <= 2 * math.log2(n) < value + 1


def test_useful_ratio_max():
    assert useful_bound_check(4, 2) == pytest.approx(math.sqrt(3) / 2)
    assert useful_bound_check(4, 2) < 1
    assert useful_bound_check(4, 2) > useful_bound_check(4, 8) > useful_bound_check(4, 64)


def test_row_fields():
    row = bounds.bounds_row(12, 2)
    assert row == {"s": 12, "p": 2, "s_p": 4, "lpp": 4, "ws": Fraction(9, 2),
                   "E_sol": 4, "E": 4}
    assert bounds.format_value(bounds.INF) == "inf"
