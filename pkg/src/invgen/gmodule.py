"""Normal sections B/A of a group G and their G-generation numbers d_G(B/A)."""

from __future__ import annotations

import dataclasses
from typing import Sequence

import numpy as np

from . import bounds, config
from .matgroup import Subspace, all_vectors, encode, mat_inverse, spin
from .perm import (
    CapExceeded,
    InvgenError,
    PermGroup,
    indices_from_mask,
    is_transitive,
    mask_from_bool,
    small_generating_set,
)
from .structure import (
    _components,
    chief_series_masks,
    conjugacy_classes,
    derived_mask,
    is_normal_mask,
    is_soluble,
    subgroup_lattice,
)


class BadSection(InvgenError):
    pass


@dataclasses.dataclass
class GSection:
    group: PermGroup
    top: int                    # mask of B
    bottom: int                 # mask of A
    abelian: bool
    p: int | None = None
    dim: int | None = None
    basis: list[int] = dataclasses.field(default_factory=list)
    matrices: list[np.ndarray] = dataclasses.field(default_factory=list, repr=False)
    code: np.ndarray | None = dataclasses.field(default=None, repr=False)

    @property
    def order(self) -> int:
        return bin(self.top).count("1") // bin(self.bottom).count("1")

    @property
    def elementary(self) -> bool:
        return self.p is not None

    def vector(self, element: int) -> np.ndarray:
        c = int(self.code[element])
        if c < 0:
            raise BadSection("element outside the section")
        return all_vectors(self.dim, self.p)[c]


def _mask_of(G: PermGroup, X) -> int:
    if X is None:
        return 1
    if isinstance(X, int):
        return X
    return G.span_mask(G.lookup(np.array(X.generators, dtype=np.int64)))


def make_section(G: PermGroup, B, A=None, cap: int | None = None) -> GSection:
    """Section B/A with coordinates and action matrices when it is elementary abelian."""
    N = G.order
    top, bottom = _mask_of(G, B), _mask_of(G, A)
    if top & bottom != bottom:
        raise BadSection("A is not contained in B")
    for m in (top, bottom):
        if not is_normal_mask(G, m):
            raise BadSection("section terms must be normal in G")
    order = bin(top).count("1") // bin(bottom).count("1")
    cap = config.pick(cap, "section_order")
    if order > cap:
        raise CapExceeded("section order", order, cap)
    B_idx = indices_from_mask(top, N)
    B_gens = small_generating_set(G, B_idx)
    abelian = derived_mask(G, B_gens) & ~bottom == 0
    sec = GSection(G, top, bottom, abelian)
    if order == 1 or not abelian:
        return sec
    primes = bounds.factorize(order)
    if len(primes) != 1:
        return sec
    (p, a), = primes.items()
    if any(not (bottom >> G.power(b, p)) & 1 for b in B_gens):
        return sec
    # greedy basis: least elements that enlarge A<basis>
    A_gens = small_generating_set(G, indices_from_mask(bottom, N))
    basis: list[int] = []
    span = bottom
    for x in B_idx.tolist():
        if not (span >> x) & 1:
            basis.append(x)
            span = G.span_mask(A_gens + basis)
        if span == top:
            break
    assert len(basis) == a
    code = np.full(N, -1, dtype=np.int64)
    labelled = indices_from_mask(bottom, N)
    codes = np.zeros(labelled.size, dtype=np.int64)
    for k, b in enumerate(basis):
        w = p ** (a - 1 - k)
        parts, part_codes = [labelled], [codes]
        bt = 0
        for t in range(1, p):
            bt = G.mul(bt, b)
            parts.append(G.right_mul(bt)[labelled])
            part_codes.append(codes + t * w)
        labelled = np.concatenate(parts)
        codes = np.concatenate(part_codes)
    code[labelled] = codes
    V = all_vectors(a, p)
    mats = []
    for g in G.generator_indices.tolist():
        conj = G.conj_action(int(g))
        mats.append(V[code[conj[np.array(basis)]]])
    sec.p, sec.dim, sec.basis, sec.matrices, sec.code = p, a, basis, mats, code
    return sec


def d_G(section: GSection, method: str = "auto") -> int:
    """Least number of elements of B/A whose G-closure together with A is B."""
    if section.top == section.bottom:
        return 0
    if method == "spin" or (method == "auto" and section.elementary):
        if not section.elementary:
            raise BadSection("spinning needs an elementary abelian section")
        return _d_G_spin(section)
    return _d_G_closure(section)


def _d_G_closure(section: GSection) -> int:
    # closure of a set is the product of the normal closures of its members,
    # and the normal closure of x depends only on the class of x
    G = section.group
    N = G.order
    A_gens = small_generating_set(G, indices_from_mask(section.bottom, N))
    pieces = []
    for cls in conjugacy_classes(G).classes:
        if cls.mask & section.top == cls.mask and cls.mask & ~section.bottom:
            pieces.append(G.span_mask(A_gens + cls.members.tolist()))
    pieces = {m: small_generating_set(G, indices_from_mask(m, N)) for m in sorted(set(pieces))}
    gens_of = {section.bottom: A_gens}
    level, k = {section.bottom}, 0
    while section.top not in level:
        k += 1
        nxt = set()
        for m in level:
            for piece, piece_gens in pieces.items():
                if piece & m == piece:
                    continue
                j = G.span_mask(gens_of[m] + piece_gens)
                if j not in gens_of:
                    gens_of[j] = small_generating_set(G, indices_from_mask(j, N))
                nxt.add(j)
        level = nxt
    return k


def _d_G_spin(section: GSection) -> int:
    p, n, mats = section.p, section.dim, section.matrices
    V = all_vectors(n, p)
    reps = orbit_representatives(mats, p, n)
    full = p ** n

    def search(sub: Subspace, left: int, first: bool, failed: set) -> bool:
        if sub.dim == n:
            return True
        if left == 0 or (sub.key, left) in failed:
            return False
        pool = reps if first else [c for c in range(1, full) if not sub.contains(V[c])]
        seen = set()
        for c in pool:
            W = spin(np.vstack([sub.basis, V[c]]), mats, p, n)
            if W.key in seen:
                continue
            seen.add(W.key)
            if search(W, left - 1, False, failed):
                return True
        failed.add((sub.key, left))
        return False

    zero = Subspace(np.zeros((0, n)), p, n)
    failed: set = set()
    k = 1
    while not search(zero, k, True, failed):
        k += 1
    return k


def _vector_perms(mats: Sequence[np.ndarray], p: int, n: int) -> list[np.ndarray]:
    V = all_vectors(n, p)
    return [encode(V @ m, p) for m in mats]


def orbit_representatives(mats: Sequence[np.ndarray], p: int, n: int) -> list[int]:
    """Least code in each orbit on nonzero vectors."""
    comp = _components(p ** n, _vector_perms(mats, p, n))
    first: dict[int, int] = {}
    for c in range(1, p ** n):
        first.setdefault(int(comp[c]), c)
    return sorted(first.values())


def dual_matrices(mats: Sequence[np.ndarray], p: int) -> list[np.ndarray]:
    """Matrices of the contragredient action on row vectors: (M^-1)^T."""
    return [mat_inverse(m, p).T.copy() for m in mats]


def chi(section_or_mats, p: int | None = None, n: int | None = None, dual: bool = False) -> int:
    """Number of orbits of the acting group on nonzero vectors."""
    if isinstance(section_or_mats, GSection):
        sec = section_or_mats
        if not sec.elementary:
            raise BadSection("chi needs an elementary abelian section")
        mats, p, n = sec.matrices, sec.p, sec.dim
    else:
        mats = list(section_or_mats)
    if dual:
        mats = dual_matrices(mats, p)
    return len(orbit_representatives(mats, p, n))


# ---------------------------------------------------------------------------
# bound checks for large subgroups of wreath products


def has_soluble_transitive_subgroup(S: PermGroup) -> bool | None:
    """Exhaustive over the lattice; None when the lattice is over cap."""
    S = S.materialize()
    if is_transitive(S) and is_soluble(S):
        return True
    try:
        lattice = subgroup_lattice(S)
    except CapExceeded:
        return None
    for c in lattice.all_classes:
        H = lattice.subgroup(c)
        if is_transitive(H) and is_soluble(H.materialize()):
            return True
    return False


def base_intersection_mask(G: PermGroup, N: PermGroup, r: int, s: int) -> int:
    """G ∩ N^s: elements fixing every block and acting on each block inside N."""
    E = G.elements.astype(np.int64)
    ok = np.ones(E.shape[0], dtype=bool)
    for j in range(s):
        block = E[:, j * r:(j + 1) * r] - j * r
        inside = ((block >= 0) & (block < r)).all(axis=1)
        ok &= inside
        idx = np.flatnonzero(ok)
        if idx.size:
            found = N.lookup(block[idx], strict=False)
            ok[idx[found < 0]] = False
    return mask_from_bool(ok)


@dataclasses.dataclass
class ModuleBoundRow:
    index: int
    abelian: bool
    p: int | None
    a: int | None
    dim: int | None
    d_G: int | None
    bound: object
    chi: int | None
    ok: bool


@dataclasses.dataclass
class ModuleBoundReport:
    s: int
    soluble_transitive: bool
    rows: list[ModuleBoundRow]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)


def check_module_bounds(G: PermGroup, R: PermGroup, S: PermGroup,
                        soluble_transitive: bool | None = None) -> ModuleBoundReport:
    """Check d_G(M_i) <= a_i E'(s, p_i) and d_G(M_i) <= chi(G, M_i*) along a chief series of R."""
    G, R = G.materialize(), R.materialize()
    r, s = R.degree, S.degree
    if G.degree != r * s:
        raise BadSection("G must act on r*s points")
    if soluble_transitive is None:
        soluble_transitive = bool(has_soluble_transitive_subgroup(S))
    series = chief_series_masks(R)
    layers = [base_intersection_mask(G, R.subgroup_from_mask(m), r, s) for m in series]
    rows = []
    for i in range(1, len(series)):
        top_R, bot_R = series[i], series[i - 1]
        R_gens = small_generating_set(R, indices_from_mask(top_R, R.order))
        abelian = derived_mask(R, R_gens) & ~bot_R == 0
        if not abelian:
            rows.append(ModuleBoundRow(i, False, None, None, None, None, None, None, True))
            continue
        size = bin(top_R).count("1") // bin(bot_R).count("1")
        (p, a), = bounds.factorize(size).items()
        sec = make_section(G, layers[i], layers[i - 1])
        dg = d_G(sec)
        bound = a * bounds.E_prime(s, p, soluble_transitive)
        ch = chi(sec, dual=True) if sec.elementary else None
        ok = dg <= bound and (ch is None or dg <= ch)
        rows.append(ModuleBoundRow(i, True, p, a, sec.dim, dg, bound, ch, ok))
    return ModuleBoundReport(s, soluble_transitive, rows)
