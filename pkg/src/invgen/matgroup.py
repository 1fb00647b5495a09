"""Matrix groups over prime fields, acting on the right of row vectors.

A vector ``v`` goes to ``v @ M``.  Nonzero vectors are numbered by their
base-p integer code (first coordinate most significant) minus one, which gives
the point set of the permutation image.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from . import config
from .perm import CapExceeded, InvgenError, PermGroup, Permutation


class NotInvertible(InvgenError, ValueError):
    pass


# ---------------------------------------------------------------------------
# linear algebra over F_p


def rref(A, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p with zero rows dropped."""
    R = np.array(A, dtype=np.int64) % p
    if R.ndim == 1:
        R = R[None, :]
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        R[[r, k]] = R[[k, r]]
        R[r] = R[r] * pow(int(R[r, c]), -1, p) % p
        others = np.flatnonzero(R[:, c])
        others = others[others != r]
        if others.size:
            R[others] = (R[others] - np.outer(R[others, c], R[r])) % p
        pivots.append(c)
        r += 1
    return R[:r], pivots


def rank(A, p: int) -> int:
    return len(rref(A, p)[1])


def det_nonzero(M, p: int) -> bool:
    M = np.asarray(M)
    return rank(M, p) == M.shape[0]


def mat_inverse(M, p: int) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64) % p
    n = M.shape[0]
    R, piv = rref(np.hstack([M, np.eye(n, dtype=np.int64)]), p)
    if piv[:n] != list(range(n)):
        raise NotInvertible("matrix is singular mod p")
    return R[:, n:]


class Subspace:
    """A subspace of F_p^n held by its reduced echelon basis."""

    __slots__ = ("basis", "p", "n", "key")

    def __init__(self, vectors, p: int, n: int):
        vectors = np.asarray(vectors, dtype=np.int64).reshape(-1, n)
        self.basis = rref(vectors, p)[0] if vectors.size else np.zeros((0, n), dtype=np.int64)
        self.p, self.n = p, n
        self.key = self.basis.tobytes() + bytes([self.basis.shape[0]])

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, basis={self.basis.tolist()})"

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64).reshape(1, self.n)
        return rank(np.vstack([self.basis, v]), self.p) == self.dim

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(np.vstack([self.basis, other.basis]), self.p, self.n)

    def meets_trivially(self, other: "Subspace") -> bool:
        return (self + other).dim == self.dim + other.dim


def spin(vectors, gens: Sequence[np.ndarray], p: int, n: int) -> Subspace:
    """Smallest subspace containing ``vectors`` and invariant under ``gens``."""
    basis = rref(np.asarray(vectors, dtype=np.int64).reshape(-1, n), p)[0]
    while True:
        images = [basis @ g % p for g in gens]
        bigger = rref(np.vstack([basis] + images), p)[0]
        if bigger.shape[0] == basis.shape[0]:
            return Subspace(basis, p, n)
        basis = bigger


# ---------------------------------------------------------------------------
# matrix groups


def all_vectors(n: int, p: int) -> np.ndarray:
    """Every vector of F_p^n, row ``c`` holding the vector with code ``c``."""
    codes = np.arange(p ** n, dtype=np.int64)
    digits = [(codes // p ** (n - 1 - i)) % p for i in range(n)]
    return np.stack(digits, axis=1)


def encode(V: np.ndarray, p: int) -> np.ndarray:
    n = V.shape[-1]
    weights = p ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return (V % p) @ weights


class MatrixGroup:
    def __init__(self, gens: Iterable, p: int, n: int | None = None, name: str | None = None):
        gens = [np.array(g, dtype=np.int64) % p for g in gens]
        if n is None:
            if not gens:
                raise ValueError("dimension needed for a group without generators")
            n = gens[0].shape[0]
        for g in gens:
            if g.shape != (n, n):
                raise ValueError("generator shape does not match dimension")
            if not det_nonzero(g, p):
                raise NotInvertible("generator is singular mod p")
        self.gens, self.p, self.n, self.name = gens, p, n, name
        self._perm = None

    def __repr__(self) -> str:
        return f"MatrixGroup(n={self.n}, p={self.p}, ngens={len(self.gens)})"

    @property
    def degree(self) -> int:
        return self.p ** self.n - 1

    def to_perm(self, cap: int | None = None) -> PermGroup:
        if self._perm is None:
            cap = config.pick(cap, "vector_degree")
            if self.degree > cap:
                raise CapExceeded("vector action degree", self.degree, cap)
            V = all_vectors(self.n, self.p)[1:]
            perms = [Permutation(encode(V @ g, self.p) - 1) for g in self.gens]
            self._perm = PermGroup(perms, degree=self.degree, name=self.name)
        return self._perm

    @property
    def order(self) -> int:
        return self.to_perm().order

    def invariant_subspaces(self, cap: int | None = None) -> list[Subspace]:
        return invariant_subspaces(self, cap)


def to_perm(M: MatrixGroup, cap: int | None = None) -> PermGroup:
    return M.to_perm(cap)


def invariant_subspaces(M: MatrixGroup, cap: int | None = None) -> list[Subspace]:
    """All invariant subspaces, sorted by (dimension, basis).

    Every invariant subspace is a sum of cyclic submodules, so spinning each
    nonzero vector and closing under sums finds the whole lattice.
    """
    cap = config.pick(cap, "vector_degree")
    n, p = M.n, M.p
    zero = Subspace(np.zeros((0, n)), p, n)
    cyclic: dict[bytes, Subspace] = {}
    for v in all_vectors(n, p)[1:]:
        W = spin(v, M.gens, p, n)
        cyclic[W.key] = W
    found = {zero.key: zero, **cyclic}
    frontier = list(cyclic.values())
    while frontier:
        fresh = []
        for A in frontier:
            for B in list(cyclic.values()):
                S = A + B
                if S.key not in found:
                    found[S.key] = S
                    fresh.append(S)
                    if len(found) > cap:
                        raise CapExceeded("invariant subspaces", len(found), cap)
        frontier = fresh
    return sorted(found.values(), key=lambda W: (W.dim, W.basis.tolist()))


def is_irreducible(M: MatrixGroup) -> bool:
    return len(invariant_subspaces(M)) == 2


def is_completely_reducible(M: MatrixGroup) -> bool:
    lattice = invariant_subspaces(M)
    for W in lattice:
        if not any(U.dim + W.dim == M.n and W.meets_trivially(U) for U in lattice):
            return False
    return True


# ---------------------------------------------------------------------------
# classical generators


def primitive_root(p: int) -> int:
    for g in range(1, p):
        if len({pow(g, k, p) for k in range(1, p)}) == p - 1:
            return g
    raise ValueError("p must be prime")


def _shift(n: int, p: int) -> np.ndarray:
    """Cyclic shift e_i -> e_{i+1}, one sign flipped so the determinant is 1."""
    S = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        S[i, (i + 1) % n] = 1
    if n % 2 == 0:
        S[n - 1, 0] = p - 1
    return S % p


def sl_generators(n: int, p: int) -> list[np.ndarray]:
    if n == 1:
        return [np.eye(1, dtype=np.int64)]
    T = np.eye(n, dtype=np.int64)
    T[0, 1] = 1
    return [_shift(n, p), T]


def gl_generators(n: int, p: int) -> list[np.ndarray]:
    D = np.eye(n, dtype=np.int64)
    D[0, 0] = primitive_root(p)
    gens = sl_generators(n, p)
    return gens + ([D] if p > 2 else [])


def gl_order(n: int, p: int) -> int:
    out = 1
    for i in range(n):
        out *= p ** n - p ** i
    return out


def GL(n: int, p: int) -> MatrixGroup:
    return MatrixGroup(gl_generators(n, p), p, n, name=f"GL({n},{p})")


def SL(n: int, p: int) -> MatrixGroup:
    return MatrixGroup(sl_generators(n, p), p, n, name=f"SL({n},{p})")


def symplectic_form(m: int) -> np.ndarray:
    """Standard alternating form on F^(2m), basis e_1, f_1, ..., e_m, f_m."""
    J = np.zeros((2 * m, 2 * m), dtype=np.int64)
    for i in range(m):
        J[2 * i, 2 * i + 1] = 1
        J[2 * i + 1, 2 * i] = -1
    return J


def transvection(v, J: np.ndarray, p: int) -> np.ndarray:
    """x -> x + (x J v^T) v as a matrix acting on row vectors."""
    v = np.asarray(v, dtype=np.int64)
    return (np.eye(len(v), dtype=np.int64) + np.outer(J @ v, v)) % p


def preserves_form(g: np.ndarray, J: np.ndarray, p: int) -> bool:
    return bool(((g @ J @ g.T - J) % p == 0).all())


SP4_2_VECTORS = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (0, 1, 1, 0)]


def Sp4_2() -> MatrixGroup:
    J = symplectic_form(2)
    gens = [transvection(v, J, 2) for v in SP4_2_VECTORS]
    return MatrixGroup(gens, 2, 4, name="Sp(4,2)")


def block_diagonal(blocks: Sequence[np.ndarray]) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n), dtype=np.int64)
    k = 0
    for b in blocks:
        d = b.shape[0]
        out[k:k + d, k:k + d] = b
        k += d
    return out


ORDER3 = np.array([[0, 1], [1, 1]], dtype=np.int64)
SWAP = np.array([[0, 1], [1, 0]], dtype=np.int64)


def B_matrix(n: int) -> MatrixGroup:
    """3^(n/2):2 inside GL_2(2)^(n/2) <= GL_n(2); the involution inverts every block."""
    if n < 2 or n % 2:
        raise ValueError("B(n) needs even n >= 2")
    k = n // 2
    I2 = np.eye(2, dtype=np.int64)
    gens = [block_diagonal([ORDER3 if j == i else I2 for j in range(k)]) for i in range(k)]
    gens.append(block_diagonal([SWAP] * k))
    return MatrixGroup(gens, 2, n, name=f"B({n})")


def parse_matrix(rows: Sequence[Sequence[int]], p: int) -> np.ndarray:
    M = np.array(rows, dtype=np.int64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("matrix must be square")
    return M % p


def matrices_of(H: PermGroup, n: int, p: int) -> list[np.ndarray]:
    """Recover generator matrices from a subgroup of a vector action built by to_perm."""
    if H.degree != p ** n - 1:
        raise ValueError("degree does not match a vector action")
    V = all_vectors(n, p)
    basis_points = [p ** (n - 1 - i) - 1 for i in range(n)]
    return [np.array([V[g[b] + 1] for b in basis_points]) for g in H.generators]


def linear_subgroup(H: PermGroup, n: int, p: int) -> MatrixGroup:
    return MatrixGroup(matrices_of(H, n, p), p, n)
