"""Conjugacy classes, subgroup lattices and normal structure of enumerated groups.

Everything here works on a materialized :class:`~invgen.perm.PermGroup`.
Subgroups are handled as bitmasks over element indices of the ambient group
and converted to ``PermGroup`` objects only at the API boundary.
"""

from __future__ import annotations

import dataclasses
from collections import deque

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import config
from .perm import (
    CapExceeded,
    InvgenError,
    NotSubgroup,
    PermGroup,
    Permutation,
    action_on_cosets,
    bool_from_mask,
    indices_from_mask,
    mask_from_bool,
    small_generating_set,
)


class NotNormal(InvgenError):
    pass


def _components(N: int, perms) -> np.ndarray:
    perms = [np.asarray(p, dtype=np.int64) for p in perms]
    if not perms:
        return np.arange(N)
    src = np.concatenate([np.arange(N)] * len(perms))
    dst = np.concatenate(perms)
    graph = coo_matrix((np.ones(src.size, dtype=np.int8), (src, dst)), shape=(N, N))
    return connected_components(graph, directed=True, connection="weak")[1]


# ---------------------------------------------------------------------------
# conjugacy classes


@dataclasses.dataclass(frozen=True)
class ConjugacyClass:
    rep: int
    size: int
    element_order: int
    members: np.ndarray = dataclasses.field(repr=False, compare=False)
    mask: int = dataclasses.field(repr=False, compare=False)


@dataclasses.dataclass
class ClassTable:
    group: PermGroup
    classes: list[ConjugacyClass]
    class_of: np.ndarray

    def __len__(self) -> int:
        return len(self.classes)

    def __getitem__(self, i: int) -> ConjugacyClass:
        return self.classes[i]

    def representative(self, i: int) -> Permutation:
        return self.group.element(self.classes[i].rep)

    def sizes(self) -> list[int]:
        return [c.size for c in self.classes]

    def describe(self, i: int) -> str:
        rep = self.representative(i)
        return f"{self.classes[i].element_order}{'' if rep.is_identity() else ':' + str(rep)}"


def conjugacy_classes(G: PermGroup) -> ClassTable:
    """Exact classes, ordered by (element order, class size, least member)."""
    def compute():
        N = G.order
        comp = _components(N, [G.conj_action(int(j)) for j in G.generator_indices])
        orders = G.element_orders
        groups: dict[int, list[int]] = {}
        for i, c in enumerate(comp.tolist()):
            groups.setdefault(c, []).append(i)
        raw = []
        for members in groups.values():
            arr = np.array(members, dtype=np.int64)
            rep = int(arr.min())
            raw.append((int(orders[rep]), arr.size, rep, arr))
        raw.sort(key=lambda t: t[:3])
        class_of = np.empty(N, dtype=np.int64)
        classes = []
        for k, (o, size, rep, arr) in enumerate(raw):
            flags = np.zeros(N, dtype=bool)
            flags[arr] = True
            class_of[arr] = k
            classes.append(ConjugacyClass(rep, size, o, arr, mask_from_bool(flags)))
        return ClassTable(G, classes, class_of)
    return G.cached("classes", compute)


# ---------------------------------------------------------------------------
# basic subgroup operations on masks


def centralizer(G: PermGroup, x: int) -> np.ndarray:
    """Indices commuting with element ``x``."""
    if G.has_table:
        T = G.table
        return np.flatnonzero(T[x, :] == T[:, x])
    return _centralizer_rows(G, x)


def _centralizer_rows(G: PermGroup, x: int) -> np.ndarray:
    E = G.elements.astype(np.int64)
    ex = E[x]
    left = ex[E]            # E_i then x
    right = E[np.arange(E.shape[0])[:, None], ex[None, :]]   # x then E_i
    return np.flatnonzero((left == right).all(axis=1))


def normalizer(G: PermGroup, sub_flags: np.ndarray, sub_gens) -> np.ndarray:
    """Indices g with (sub)^g = sub, testing only the subgroup generators."""
    sub_gens = [int(s) for s in sub_gens if int(s) != 0]
    N = G.order
    if not sub_gens:
        return np.arange(N)
    ok = np.ones(N, dtype=bool)
    if G.has_table:
        T = G.table
        inv = G.inverse_indices
        g = np.arange(N)
        for s in sub_gens:
            c = T[T[inv, s], g]
            ok &= sub_flags[c]
        return np.flatnonzero(ok)
    E = G.elements.astype(np.int64)
    for s in sub_gens:
        es = E[s]
        inv_rows = np.argsort(E, axis=1)
        conj = E[np.arange(N)[:, None], es[inv_rows]]
        ok &= sub_flags[G.lookup(conj)]
    return np.flatnonzero(ok)


def is_normal_mask(G: PermGroup, mask: int, gens=None) -> bool:
    flags = bool_from_mask(mask, G.order)
    if gens is None:
        gens = small_generating_set(G, np.flatnonzero(flags))
    for j in G.generator_indices:
        c = G.conj_action(int(j))
        if not flags[c[np.asarray(gens, dtype=np.int64)]].all():
            return False
    return True


def normal_closure_mask(G: PermGroup, seeds, within_gens=None) -> int:
    """Normal closure of ``seeds`` in the subgroup generated by ``within_gens`` (default G)."""
    if within_gens is None:
        within_gens = [int(j) for j in G.generator_indices]
    conj = [G.conj_action(int(h)) for h in within_gens if int(h) != 0]
    gens = sorted({int(s) for s in np.asarray(seeds).ravel().tolist() if int(s) != 0})
    flags = G.span(gens)
    while True:
        extra = []
        for c in conj:
            imgs = c[np.asarray(gens, dtype=np.int64)] if gens else np.array([], dtype=np.int64)
            extra.extend(int(v) for v in imgs[~flags[imgs]])
        if not extra:
            return mask_from_bool(flags)
        gens = sorted(set(gens) | set(extra))
        flags = G.span(gens)


def commutator_index(G: PermGroup, a: int, b: int) -> int:
    inv = G.inverse_indices
    return G.mul(G.mul(int(inv[a]), int(inv[b])), G.mul(a, b))


def derived_mask(G: PermGroup, gens) -> int:
    """Commutator subgroup of the subgroup generated by ``gens``."""
    gens = [int(g) for g in gens if int(g) != 0]
    comms = [commutator_index(G, a, b) for i, a in enumerate(gens) for b in gens[i + 1:]]
    return normal_closure_mask(G, comms, within_gens=gens)


def soluble_residual_mask(G: PermGroup, gens) -> int:
    cur_gens = [int(g) for g in gens if int(g) != 0]
    cur = G.span_mask(cur_gens)
    while True:
        d = derived_mask(G, cur_gens)
        if d == cur:
            return cur
        cur = d
        cur_gens = small_generating_set(G, indices_from_mask(d, G.order))


def is_soluble(G: PermGroup) -> bool:
    return G.cached("soluble", lambda: soluble_residual_mask(G, G.generator_indices) == 1)


def core_mask(G: PermGroup, mask: int) -> int:
    """Largest normal subgroup of G inside the subgroup ``mask``: a union of classes."""
    out = 0
    for c in conjugacy_classes(G).classes:
        if c.mask & mask == c.mask:
            out |= c.mask
    return out


def center_mask(G: PermGroup) -> int:
    out = 0
    for c in conjugacy_classes(G).classes:
        if c.size == 1:
            out |= c.mask
    return out


def is_abelian_mask(G: PermGroup, gens) -> bool:
    gens = [int(g) for g in gens]
    return all(G.mul(a, b) == G.mul(b, a) for i, a in enumerate(gens) for b in gens[i + 1:])


# ---------------------------------------------------------------------------
# subgroup lattice by cyclic extension


@dataclasses.dataclass
class SubgroupClass:
    index: int
    order: int
    rep: int                    # mask of the representative
    gens: list[int]
    conjugates: list[int] = dataclasses.field(repr=False)
    maximal: bool = False

    @property
    def length(self) -> int:
        return len(self.conjugates)

    @property
    def normal(self) -> bool:
        return len(self.conjugates) == 1


@dataclasses.dataclass
class SubgroupCatalog:
    group: PermGroup
    all_classes: list[SubgroupClass]

    @property
    def maximal_classes(self) -> list[SubgroupClass]:
        return [c for c in self.all_classes if c.maximal]

    def subgroup(self, cls: SubgroupClass | int) -> PermGroup:
        if isinstance(cls, int):
            cls = self.all_classes[cls]
        return self.group.subgroup_from_mask(cls.rep, gens=cls.gens)

    def total_subgroups(self) -> int:
        return sum(c.length for c in self.all_classes)


def _perfect_seeds(G: PermGroup, register) -> None:
    """Register all 2-generated perfect subgroups and residuals of 2-generated ones.

    Pairs ``(x, y)`` run over class representatives ``x`` and representatives
    of the conjugation orbits of ``C_G(x)`` on G, i.e. over all pairs up to
    simultaneous conjugacy.
    """
    N = G.order
    table = conjugacy_classes(G)
    orders = G.element_orders
    seen: set[int] = set()
    for cls in table.classes[1:]:
        x = cls.rep
        cent = centralizer(G, x)
        cgens = small_generating_set(G, cent)
        comp = _components(N, [G.conj_action(c) for c in cgens])
        first = np.full(comp.max() + 1, N, dtype=np.int64)
        np.minimum.at(first, comp, np.arange(N))
        for y in np.sort(first).tolist():
            if y == 0 or (orders[x] == 2 and orders[y] == 2):
                continue
            flags = G.span([x, y])
            size = int(flags.sum())
            if size < 60 or size % 4:
                continue
            m = mask_from_bool(flags)
            if m in seen:
                continue
            seen.add(m)
            res = soluble_residual_mask(G, [x, y])
            if res != 1:
                idx = indices_from_mask(res, N)
                register(idx, small_generating_set(G, idx) if res != m else [x, y])


def subgroup_lattice(G: PermGroup, order_cap: int | None = None) -> SubgroupCatalog:
    """All subgroups up to conjugacy, with maximal classes marked.

    Soluble-over-perfect layers are reached by cyclic extension: from a class
    representative U, adjoin ``x`` in ``N_G(U)`` whose order modulo U is prime.
    Perfect seeds come from :func:`_perfect_seeds`.
    """
    cap = config.pick(order_cap, "lattice_order")
    if G.order > cap:
        raise CapExceeded("subgroup lattice group order", G.order, cap)

    def compute():
        N = G.order
        T = G.table
        gconj = [G.conj_action(int(j)) for j in G.generator_indices]
        registry: dict[int, int] = {}
        classes: list[SubgroupClass] = []
        queue: deque[int] = deque()

        def register(idx, gens) -> None:
            idx = np.asarray(idx, dtype=np.int64)
            m = _mask(idx, N)
            if m in registry:
                return
            cid = len(classes)
            orbit = [m]
            registry[m] = cid
            todo = [idx]
            while todo:
                cur = todo.pop()
                for c in gconj:
                    img = c[cur]
                    im = _mask(img, N)
                    if im not in registry:
                        registry[im] = cid
                        orbit.append(im)
                        todo.append(img)
            classes.append(SubgroupClass(cid, int(idx.size), m, list(gens), orbit))
            queue.append(cid)

        register(np.array([0]), [])
        if not is_soluble(G):
            _perfect_seeds(G, register)

        while queue:
            U = classes[queue.popleft()]
            u = indices_from_mask(U.rep, N)
            uflags = bool_from_mask(U.rep, N)
            norm = normalizer(G, uflags, U.gens)
            visited = uflags.copy()
            for x in norm.tolist():
                if visited[x]:
                    continue
                visited[T[u, x]] = True
                powers = [0, x]
                y = int(T[x, x])
                while not uflags[y]:
                    powers.append(y)
                    y = int(T[y, x])
                k = len(powers)
                if not _is_prime(k):
                    continue
                H = T[np.ix_(u, np.array(powers))].ravel()
                register(H, U.gens + [x])

        # canonical representative: lexicographically least sorted index tuple
        for c in classes:
            best = min(c.conjugates, key=lambda m: tuple(indices_from_mask(m, N).tolist()))
            if best != c.rep:
                c.rep = best
                c.gens = small_generating_set(G, indices_from_mask(best, N))
        classes.sort(key=lambda c: (c.order, tuple(indices_from_mask(c.rep, N).tolist())))
        for i, c in enumerate(classes):
            c.index = i
        _mark_maximal(classes, N)
        return SubgroupCatalog(G, classes)

    return G.cached(("lattice",), compute)


def _mask(idx: np.ndarray, N: int) -> int:
    flags = np.zeros(N, dtype=bool)
    flags[idx] = True
    return mask_from_bool(flags)


def _is_prime(k: int) -> bool:
    return k > 1 and all(k % d for d in range(2, int(k ** 0.5) + 1))


def _mark_maximal(classes: list[SubgroupClass], N: int) -> None:
    top = classes[-1]
    for H in classes[:-1]:
        H.maximal = True
        for K in classes:
            if K is top or K.order <= H.order or K.order % H.order:
                continue
            if any(H.rep & km == H.rep for km in K.conjugates):
                H.maximal = False
                break


# ---------------------------------------------------------------------------
# normal subgroups and quotients


def normal_subgroup_masks(G: PermGroup) -> list[int]:
    """All normal subgroups as masks, sorted by (order, least index tuple)."""
    def compute():
        N = G.order
        table = conjugacy_classes(G)
        gens_of: dict[int, list[int]] = {1: []}
        for c in table.classes[1:]:
            m = G.span_mask(c.members)
            if m not in gens_of:
                gens_of[m] = small_generating_set(G, indices_from_mask(m, N))
        found = list(gens_of)
        frontier = list(found)
        while frontier:
            fresh = []
            for a in frontier:
                for b in found:
                    if a & b == a or a & b == b:
                        continue
                    gens = gens_of[a] + gens_of[b]
                    m = G.span_mask(gens)
                    if m not in gens_of:
                        gens_of[m] = small_generating_set(G, indices_from_mask(m, N))
                        fresh.append(m)
            found.extend(fresh)
            frontier = fresh
        key = lambda m: (bin(m).count("1"), tuple(indices_from_mask(m, N).tolist()))
        return sorted(found, key=key)
    return G.cached("normal_masks", compute)


def normal_subgroups(G: PermGroup) -> list[PermGroup]:
    return [G.subgroup_from_mask(m) for m in normal_subgroup_masks(G)]


def minimal_normal_masks(G: PermGroup) -> list[int]:
    ms = normal_subgroup_masks(G)
    nontrivial = [m for m in ms if m != 1]
    return [m for m in nontrivial if not any(o != m and o & m == o for o in nontrivial)]


def _as_mask(G: PermGroup, N: PermGroup | int) -> int:
    if isinstance(N, int):
        return N
    if not G.contains_group(N):
        raise NotSubgroup("not a subgroup of G")
    return G.span_mask(G.lookup(np.array(N.generators, dtype=np.int64)))


def quotient(G: PermGroup, N: PermGroup | int, name: str | None = None) -> PermGroup:
    """G/N as the permutation image of G on the cosets of N (degree [G:N])."""
    m = _as_mask(G, N)
    if not is_normal_mask(G, m):
        raise NotNormal("N is not normal in G")
    gens = small_generating_set(G, indices_from_mask(m, G.order))
    return action_on_cosets(G, gens, name=name).image


def small_quotient(G: PermGroup, N: PermGroup | int, name: str | None = None) -> PermGroup:
    """A faithful image of G/N of small degree: cosets of a large H with core N.

    Isomorphic to :func:`quotient`; used where only the isomorphism type matters.
    """
    m = _as_mask(G, N)
    if not is_normal_mask(G, m):
        raise NotNormal("N is not normal in G")
    size = G.order
    Hgens = small_generating_set(G, indices_from_mask(m, size))
    H = m
    orders = G.element_orders
    for x in np.argsort(-orders, kind="stable").tolist():
        if (H >> x) & 1:
            continue
        cand_gens = Hgens + [x]
        cand = G.span_mask(cand_gens)
        if cand != (1 << size) - 1 and core_mask(G, cand) == m:
            H, Hgens = cand, small_generating_set(G, indices_from_mask(cand, size))
    return action_on_cosets(G, Hgens, name=name).image


# ---------------------------------------------------------------------------
# composition and chief data

SIMPLE_ORDERS: dict[int, list[tuple[str, int]]] = {
    60: [("A5", 5)], 168: [("L3(2)", 6)], 360: [("A6", 7)], 504: [("L2(8)", 9)],
    660: [("L2(11)", 8)], 1092: [("L2(13)", 9)], 2448: [("L2(17)", 11)],
    2520: [("A7", 9)], 3420: [("L2(19)", 12)], 4080: [("L2(16)", 17)],
    5616: [("L3(3)", 12)], 6048: [("U3(3)", 14)], 6072: [("L2(23)", 14)],
    7800: [("L2(25)", 15)], 7920: [("M11", 10)], 9828: [("L2(27)", 16)],
    12180: [("L2(29)", 17)], 14880: [("L2(31)", 18)],
    20160: [("A8", 14), ("L3(4)", 10)], 25920: [("U4(2)", 20)], 29120: [("Sz(8)", 11)],
}


@dataclasses.dataclass(frozen=True)
class Factor:
    order: int
    abelian: bool
    class_count: int
    name: str


@dataclasses.dataclass
class CompositionData:
    length: int
    abelian_factors: int
    nonabelian_chief_factors: int
    composition_factors: list[Factor]
    chief_factors: list[Factor]


def _name_simple(order: int, abelian: bool, class_count: int) -> str:
    if abelian and _is_prime(order):
        return f"C{order}"
    for name, k in SIMPLE_ORDERS.get(order, []):
        if k == class_count:
            return name
    return f"{'ab' if abelian else 'nonab'}[{order},{class_count}]"


def _factor(G: PermGroup, top: int, bottom: int, simple: bool) -> Factor:
    N = G.order
    top_idx = indices_from_mask(top, N)
    order = int(top_idx.size) // bin(bottom).count("1")
    top_gens = small_generating_set(G, top_idx)
    abelian = derived_mask(G, top_gens) & bottom == derived_mask(G, top_gens)
    X = G.subgroup_from_mask(top, gens=top_gens)
    bottom_in_X = X.lookup(G.elements[indices_from_mask(bottom, N)])
    Q = small_quotient(X, mask_from_bool(np.isin(np.arange(X.order), bottom_in_X)))
    k = len(conjugacy_classes(Q.materialize()).classes)
    name = _name_simple(order, abelian, k) if simple else (
        f"{'ab' if abelian else 'nonab'}[{order}]")
    return Factor(order, abelian, k, name)


def chief_series_masks(G: PermGroup) -> list[int]:
    """1 = N_0 < ... < N_e = G by minimal-normal ascent, least candidate first."""
    def compute():
        size = G.order
        normals = normal_subgroup_masks(G)
        series = [1]
        while series[-1] != (1 << size) - 1:
            cur = series[-1]
            above = [m for m in normals if m != cur and m & cur == cur]
            series.append(min(above, key=lambda m: (bin(m).count("1"), tuple(indices_from_mask(m, size).tolist()))))
        return series
    return G.cached("chief_series", compute)


def composition_data(G: PermGroup) -> CompositionData:
    def compute():
        size = G.order
        comp: list[Factor] = []
        current = (1 << size) - 1
        while current != 1:
            X = G.subgroup_from_mask(current)
            xm = normal_subgroup_masks(X)
            proper = [m for m in xm if m != (1 << X.order) - 1]
            maximal = [m for m in proper if not any(o != m and o & m == m for o in proper)]
            Mx = sorted(maximal, key=lambda m: (-bin(m).count("1"), tuple(indices_from_mask(m, X.order).tolist())))[0]
            M = _mask(G.lookup(X.elements[indices_from_mask(Mx, X.order)]), size)
            comp.append(_factor(G, current, M, simple=True))
            current = M
        series = chief_series_masks(G)
        chief = [_factor(G, top, bot, simple=False) for bot, top in zip(series, series[1:])]
        return CompositionData(
            length=len(comp),
            abelian_factors=sum(f.abelian for f in comp),
            nonabelian_chief_factors=sum(not f.abelian for f in chief),
            composition_factors=comp,
            chief_factors=chief,
        )
    return G.cached("composition", compute)
