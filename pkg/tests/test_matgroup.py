import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from invgen.audit import group
from invgen.constructions import build_matrix
from invgen.invariable import di
from invgen.matgroup import (
    MatrixGroup,
    NotInvertible,
    all_vectors,
    encode,
    gl_order,
    invariant_subspaces,
    is_completely_reducible,
    is_irreducible,
    mat_inverse,
    rank,
    rref,
    spin,
)
from invgen.parser import parse


def mat(text):
    return build_matrix(parse(text))


square = st.integers(1, 4).flatmap(
    lambda n: st.tuples(st.just(n), st.sampled_from([2, 3, 5]),
                        st.lists(st.integers(0, 4), min_size=n * n, max_size=n * n)))


@settings(max_examples=80, deadline=None)
@given(square)
def test_inverse_when_rank_full(data):
    n, p, flat = data
    M = np.array(flat, dtype=np.int64).reshape(n, n) % p
    if rank(M, p) < n:
        with pytest.raises(NotInvertible):
            mat_inverse(M, p)
        return
    inv = mat_inverse(M, p)
    assert ((M @ inv) % p == np.eye(n, dtype=np.int64)).all()


@settings(max_examples=60, deadline=None)
@given(square)
def test_rref_is_idempotent(data):
    n, p, flat = data
    M = np.array(flat, dtype=np.int64).reshape(n, n) % p
    R, piv = rref(M, p)
    assert len(piv) == rank(M, p) == R.shape[0]
    R2, piv2 = rref(R, p)
    assert (R2 == R).all() and piv2 == piv


@pytest.mark.parametrize("n,p", [(1, 2), (2, 3), (3, 2), (2, 5)])
def test_vectors_encode(n, p):
    V = all_vectors(n, p)
    assert V.shape == (p ** n, n)
    assert (encode(V, p) == np.arange(p ** n)).all()


@pytest.mark.parametrize("text,order", [
    ("GL(2,2)", 6), ("GL(3,2)", 168), ("GL(2,3)", 48), ("SL(2,3)", 24),
    ("SL(2,5)", 120), ("Sp(4,2)", 720), ("B(4)", 18), ("B(6)", 54),
])
def test_orders(text, order):
    assert mat(text).order == order


def test_gl_order_formula():
    assert gl_order(3, 2) == 168
    assert gl_order(4, 2) == 20160
    assert gl_order(2, 3) == 48


@pytest.mark.parametrize("text,irr,cr,count", [
    ("GL(3,2)", True, True, 2),
    ("Sp(4,2)", True, True, 2),
    ("B(4)", False, True, 4),
    ("lin(mat(2; 1,1 | 0,1))", False, False, 3),
])
def test_reducibility(text, irr, cr, count):
    M = mat(text)
    assert is_irreducible(M) == irr
    assert is_completely_reducible(M) == cr
    assert len(invariant_subspaces(M)) == count


def test_spin_of_identity_is_the_line():
    W = spin(np.array([[1, 0, 1]]), [np.eye(3, dtype=np.int64)], 2, 3)
    assert W.dim == 1
    W = spin(np.array([[1, 0, 0]]), mat("GL(3,2)").gens, 2, 3)
    assert W.dim == 3


def test_singular_generator():
    with pytest.raises(NotInvertible):
        MatrixGroup([[[1, 1], [1, 1]]], 2)


def test_sp4_2_is_s6_on_15_points():
    G = mat("Sp(4,2)").to_perm()
    assert G.degree == 15
    assert G.order == 720
    assert di(G).value == 3


def test_b4_does_not_depend_on_the_representation():
    vec = mat("B(4)").to_perm()
    assert vec.degree == 15
    small = group("B(4)")
    assert small.degree == 6
    assert vec.order == small.order == 18
    assert di(vec).value == di(small).value == 3
