"""Permutations and fully enumerated permutation groups.

Points are ``0 .. n-1`` internally.  Composition is left-to-right: ``p * q``
maps ``x`` to ``q(p(x))``.  Cycle strings in and out of this module are
1-indexed, e.g. ``"(1,2,3)(4,5)"``; the identity prints as ``"()"``.

A :class:`PermGroup` materializes its whole element set on demand, sorted
lexicographically by image tuple, so element ``0`` is always the identity.
Most of the heavier machinery in the package works with element *indices* into
that sorted array, and with subgroups stored as Python ``int`` bitmasks over
those indices.
"""

from __future__ import annotations

import re
import threading
from collections.abc import Iterable, Iterator, Sequence
from math import gcd

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import config


class InvgenError(Exception):
    """Base class for errors raised by this package."""


class CapExceeded(InvgenError):
    def __init__(self, what: str, count: int, cap: int):
        super().__init__(f"{what}: reached {count}, cap is {cap}")
        self.what = what
        self.count = count
        self.cap = cap


class DegreeMismatch(InvgenError, ValueError):
    pass


class NotTransitive(InvgenError):
    pass


class NotSubgroup(InvgenError):
    pass


# ---------------------------------------------------------------------------
# permutations


class Permutation(tuple):
    """A bijection of ``range(n)`` stored as its image tuple."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int]):
        p = tuple.__new__(cls, (int(x) for x in images))
        if sorted(p) != list(range(len(p))):
            raise ValueError(f"not a permutation: {tuple(p)}")
        return p

    @classmethod
    def _trusted(cls, images) -> "Permutation":
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls._trusted(range(n))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Permutation":
        """Build from 0-indexed cycles on ``n`` points."""
        img = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                if not 0 <= a < n:
                    raise ValueError(f"point {a} out of range for degree {n}")
                img[a] = b
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self)

    def __call__(self, x: int) -> int:
        return self[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(len(self))
        base = self
        while k:
            if k & 1:
                result = compose(result, base)
            base = compose(base, base)
            k >>= 1
        return result

    def inverse(self) -> "Permutation":
        return inverse(self)

    __invert__ = inverse

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * len(self)
        out = []
        for start in range(len(self)):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = self[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self[x]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True))

    def order(self) -> int:
        o = 1
        for c in self.cycles():
            o = o * len(c) // gcd(o, len(c))
        return o

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def __str__(self) -> str:
        return format_cycles(self)

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r}, n={len(self)})"


def compose(p: Sequence[int], q: Sequence[int]) -> Permutation:
    """``x -> q(p(x))``."""
    if len(p) != len(q):
        raise DegreeMismatch(f"degrees {len(p)} and {len(q)}")
    return Permutation._trusted(q[x] for x in p)


def inverse(p: Sequence[int]) -> Permutation:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return Permutation._trusted(inv)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int | None = None) -> Permutation:
    """Parse 1-indexed cycle notation such as ``"(1,2,3)(4,5)"``.

    Whitespace is ignored.  Without ``degree``, the largest point mentioned
    fixes the degree (minimum 1).
    """
    compact = "".join(text.split())
    if not compact:
        raise ValueError("empty cycle string")
    cycles = []
    pos = 0
    for m in _CYCLE_RE.finditer(compact):
        if m.start() != pos:
            raise ValueError(f"unexpected text at offset {pos} in {text!r}")
        pos = m.end()
        body = m.group(1)
        if body:
            pts = [int(x) - 1 for x in body.split(",")]
            if len(set(pts)) != len(pts) or min(pts) < 0:
                raise ValueError(f"bad cycle ({body})")
            cycles.append(pts)
    if pos != len(compact):
        raise ValueError(f"unexpected text at offset {pos} in {text!r}")
    biggest = max((max(c) + 1 for c in cycles), default=1)
    n = biggest if degree is None else degree
    if n < biggest:
        raise ValueError(f"point {biggest} exceeds degree {n}")
    return Permutation.from_cycles(cycles, n)


def format_cycles(p: Sequence[int]) -> str:
    cycles = Permutation._trusted(p).cycles()
    if not cycles:
        return "()"
    return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cycles)


# ---------------------------------------------------------------------------
# bitmask helpers: subgroups of an enumerated group are ints over indices


def mask_from_bool(flags: np.ndarray) -> int:
    return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")


def mask_from_indices(indices, size: int) -> int:
    flags = np.zeros(size, dtype=bool)
    flags[np.asarray(indices, dtype=np.int64)] = True
    return mask_from_bool(flags)


def bool_from_mask(mask: int, size: int) -> np.ndarray:
    raw = mask.to_bytes((size + 7) // 8, "little")
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
    return bits[:size].astype(bool)


def indices_from_mask(mask: int, size: int) -> np.ndarray:
    return np.flatnonzero(bool_from_mask(mask, size))


# ---------------------------------------------------------------------------
# row keys: vectorized lookup of permutation rows


def _row_dtype(n: int):
    return np.uint8 if n <= 256 else np.dtype(">u2")


class _RowKeys:
    """Order-preserving keys for permutation rows of a fixed degree.

    Degrees up to 15 use exact int64 codes; larger degrees compare raw
    big-endian bytes, which also sort lexicographically.
    """

    def __init__(self, n: int):
        self.n = n
        self.small = n <= 15
        if self.small:
            self.weights = np.array([n ** (n - 1 - i) for i in range(n)], dtype=np.int64)

    def __call__(self, rows: np.ndarray) -> np.ndarray:
        if self.small:
            return rows.astype(np.int64) @ self.weights
        rows = np.ascontiguousarray(rows, dtype=_row_dtype(self.n))
        return rows.view(np.dtype((np.void, rows.dtype.itemsize * self.n))).ravel()


def _closure_rows(gens: np.ndarray, n: int, cap: int, what: str = "group elements") -> np.ndarray:
    """Sorted rows of the group generated by the rows of ``gens``."""
    keys = _RowKeys(n)
    dtype = _row_dtype(n)
    gens = np.asarray(gens, dtype=np.int64)
    ident = np.arange(n, dtype=np.int64)[None, :]
    known_rows = ident.astype(dtype)
    known_keys = keys(known_rows)
    frontier = ident
    while frontier.shape[0]:
        cand = np.concatenate([g[frontier] for g in gens], axis=0)
        ck = keys(cand)
        ck, first = np.unique(ck, return_index=True)
        cand = cand[first]
        pos = np.searchsorted(known_keys, ck)
        pos = np.minimum(pos, known_keys.shape[0] - 1)
        fresh = known_keys[pos] != ck
        frontier = cand[fresh]
        if frontier.shape[0]:
            if known_keys.shape[0] + frontier.shape[0] > cap:
                raise CapExceeded(what, known_keys.shape[0] + frontier.shape[0], cap)
            all_rows = np.concatenate([known_rows, frontier.astype(dtype)], axis=0)
            all_keys = np.concatenate([known_keys, ck[fresh]])
            order = np.argsort(all_keys, kind="stable")
            known_rows = all_rows[order]
            known_keys = all_keys[order]
    return known_rows


# ---------------------------------------------------------------------------
# groups


class PermGroup:
    """A permutation group given by generators, enumerated lazily.

    Derived data (elements, multiplication table, class table, lattice, ...)
    is computed at most once per instance under an internal lock, so a group
    may be shared between threads.
    """

    def __init__(self, generators: Iterable[Sequence[int]] = (), degree: int | None = None,
                 name: str | None = None):
        gens = [g if isinstance(g, Permutation) else Permutation(g) for g in generators]
        if not gens:
            if degree is None:
                raise ValueError("need at least one generator or an explicit degree")
            gens = [Permutation.identity(degree)]
        n = len(gens[0]) if degree is None else degree
        for g in gens:
            if len(g) != n:
                raise DegreeMismatch(f"generator of degree {len(g)} in a group of degree {n}")
        self.degree = n
        self.generators: tuple[Permutation, ...] = tuple(gens)
        self.name = name
        self._lock = threading.RLock()
        self._cache: dict = {}
        self._rows: np.ndarray | None = None
        self._keys: np.ndarray | None = None
        self._keyfn = _RowKeys(n)

    @classmethod
    def _from_sorted_rows(cls, rows: np.ndarray, generators, name=None) -> "PermGroup":
        G = cls(generators, degree=rows.shape[1], name=name)
        G._rows = rows
        G._keys = G._keyfn(rows)
        return G

    def __repr__(self) -> str:
        label = self.name or "PermGroup"
        return f"<{label} degree={self.degree} gens={len(self.generators)}>"

    # -- enumeration -------------------------------------------------------

    def materialize(self, cap: int | None = None) -> "PermGroup":
        cap = config.pick(cap, "elements")
        with self._lock:
            if self._rows is None:
                gens = np.array(self.generators, dtype=np.int64).reshape(-1, self.degree)
                rows = _closure_rows(gens, self.degree, cap)
                self._rows = rows
                self._keys = self._keyfn(rows)
            elif self._rows.shape[0] > cap:
                raise CapExceeded("group elements", self._rows.shape[0], cap)
        return self

    @property
    def elements(self) -> np.ndarray:
        if self._rows is None:
            self.materialize()
        return self._rows

    @property
    def order(self) -> int:
        return int(self.elements.shape[0])

    def __len__(self) -> int:
        return self.order

    def __iter__(self) -> Iterator[Permutation]:
        for row in self.elements:
            yield Permutation._trusted(int(x) for x in row)

    def element(self, i: int) -> Permutation:
        return Permutation._trusted(int(x) for x in self.elements[i])

    def lookup(self, rows: np.ndarray, strict: bool = True) -> np.ndarray:
        """Element indices of the given rows; -1 for non-members if not strict."""
        rows = np.atleast_2d(np.asarray(rows))
        keys = self._keyfn(rows)
        allk = self._keys if self._keys is not None else self._keyfn(self.elements)
        pos = np.searchsorted(allk, keys)
        pos = np.minimum(pos, allk.shape[0] - 1)
        hit = allk[pos] == keys
        if strict and not hit.all():
            raise NotSubgroup("permutation is not an element of the group")
        return np.where(hit, pos, -1)

    def index(self, p: Sequence[int]) -> int:
        return int(self.lookup(np.asarray(p, dtype=np.int64)[None, :])[0])

    def __contains__(self, p) -> bool:
        if len(p) != self.degree:
            return False
        return bool(self.lookup(np.asarray(p, dtype=np.int64)[None, :], strict=False)[0] >= 0)

    def contains_group(self, H: "PermGroup") -> bool:
        return H.degree == self.degree and all(g in self for g in H.generators)

    def cached(self, key, compute):
        with self._lock:
            if key not in self._cache:
                self._cache[key] = compute()
            return self._cache[key]

    # -- index arithmetic --------------------------------------------------

    @property
    def generator_indices(self) -> np.ndarray:
        return self.cached("gen_idx", lambda: self.lookup(np.array(self.generators, dtype=np.int64)))

    @property
    def inverse_indices(self) -> np.ndarray:
        def compute():
            inv_rows = np.argsort(self.elements, axis=1)
            return self.lookup(inv_rows)
        return self.cached("inv_idx", compute)

    @property
    def has_table(self) -> bool:
        return self.order <= config.get_config().table_order

    @property
    def table(self) -> np.ndarray:
        """``table[i, j]`` = index of ``E_i * E_j``; only for small groups."""
        def compute():
            E = self.elements.astype(np.int64)
            N = E.shape[0]
            if N > config.get_config().table_order:
                raise CapExceeded("multiplication table order", N, config.get_config().table_order)
            dtype = np.int16 if N < 2 ** 15 else np.int32
            T = np.empty((N, N), dtype=dtype)
            for j in range(N):
                T[:, j] = self.lookup(E[j][E])
            return T
        return self.cached("table", compute)

    def right_mul(self, j: int) -> np.ndarray:
        """Indices of ``E_i * E_j`` for all i."""
        if self.has_table:
            return self.table[:, j].astype(np.int64)
        E = self.elements.astype(np.int64)
        return self.lookup(E[j][E])

    def left_mul(self, j: int) -> np.ndarray:
        """Indices of ``E_j * E_i`` for all i."""
        if self.has_table:
            return self.table[j, :].astype(np.int64)
        E = self.elements.astype(np.int64)
        return self.lookup(E[:, E[j]])

    def conj_action(self, j: int) -> np.ndarray:
        """Indices of ``E_j^-1 * E_i * E_j`` for all i."""
        def compute():
            if self.has_table:
                T = self.table
                inv = int(self.inverse_indices[j])
                return T[T[inv, :], j].astype(np.int64)
            E = self.elements.astype(np.int64)
            g = E[j]
            ginv = np.argsort(g)
            return self.lookup(g[E[:, ginv]])
        return self.cached(("conj", int(j)), compute)

    def mul(self, i: int, j: int) -> int:
        if self.has_table:
            return int(self.table[i, j])
        E = self.elements.astype(np.int64)
        return int(self.lookup(E[j][E[i]][None, :])[0])

    def power(self, i: int, k: int) -> int:
        result, base = 0, int(i)
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    @property
    def element_orders(self) -> np.ndarray:
        def compute():
            E = self.elements.astype(np.int64)
            N, n = E.shape
            orders = np.ones(N, dtype=np.int64)
            cur = E.copy()
            ident = np.arange(n)
            done = (cur == ident).all(axis=1)
            k = 1
            while not done.all():
                k += 1
                cur = E[np.arange(N)[:, None], cur]
                newly = (~done) & (cur == ident).all(axis=1)
                orders[newly] = k
                done |= newly
            return orders
        return self.cached("elt_orders", compute)

    def span(self, indices) -> np.ndarray:
        """Boolean membership array of the subgroup generated by ``indices``."""
        gens = np.unique(np.asarray(indices, dtype=np.int64).ravel())
        gens = gens[gens != 0]
        N = self.order
        seen = np.zeros(N, dtype=bool)
        seen[0] = True
        if gens.size == 0:
            return seen
        if self.has_table:
            T = self.table
            frontier = np.array([0], dtype=np.int64)
            while frontier.size:
                nxt = T[np.ix_(frontier, gens)].ravel().astype(np.int64)
                nxt = np.unique(nxt[~seen[nxt]])
                seen[nxt] = True
                frontier = nxt
            return seen
        rows = _closure_rows(self.elements[gens].astype(np.int64), self.degree, N)
        seen[self.lookup(rows)] = True
        return seen

    def span_mask(self, indices) -> int:
        return mask_from_bool(self.span(indices))

    def subgroup(self, indices, name: str | None = None) -> "PermGroup":
        """The subgroup generated by the given element indices, pre-enumerated."""
        flags = self.span(indices)
        gens = [self.element(int(i)) for i in np.unique(np.asarray(indices, dtype=np.int64)) if i != 0]
        return PermGroup._from_sorted_rows(self.elements[flags], gens or [Permutation.identity(self.degree)], name)

    def subgroup_from_mask(self, mask: int, name: str | None = None, gens=None) -> "PermGroup":
        flags = bool_from_mask(mask, self.order)
        idx = np.flatnonzero(flags)
        if gens is None:
            gens = small_generating_set(self, idx)
        perms = [self.element(int(i)) for i in gens] or [Permutation.identity(self.degree)]
        return PermGroup._from_sorted_rows(self.elements[flags], perms, name)


def small_generating_set(G: PermGroup, members) -> list[int]:
    """Greedy generating set for the subgroup whose element indices are ``members``.

    Elements are tried in decreasing order of element order, ties by index, so
    the result is deterministic.
    """
    members = np.asarray(members, dtype=np.int64)
    if members.size <= 1:
        return []
    orders = G.element_orders[members]
    ranked = members[np.lexsort((members, -orders))]
    target = members.size
    gens: list[int] = []
    have = np.zeros(G.order, dtype=bool)
    have[0] = True
    for x in ranked:
        if have[x]:
            continue
        gens.append(int(x))
        have = G.span(gens)
        if int(have.sum()) == target:
            break
    return gens


def generate(gens: Sequence[Sequence[int]], cap: int | None = None, name: str | None = None) -> PermGroup:
    """Enumerate ``<gens>`` immediately; raise CapExceeded past ``cap`` elements."""
    if not gens:
        raise ValueError("generate() needs at least one generator")
    G = PermGroup(gens, name=name)
    return G.materialize(cap)


def symmetric_group(n: int) -> PermGroup:
    if n <= 2:
        gens = [Permutation.from_cycles([range(n)], n)] if n == 2 else [Permutation.identity(max(n, 1))]
    else:
        gens = [Permutation.from_cycles([range(n)], n), Permutation.from_cycles([(0, 1)], n)]
    return PermGroup(gens, name=f"Sym({n})")


def alternating_group(n: int) -> PermGroup:
    if n <= 2:
        return PermGroup([Permutation.identity(max(n, 1))], name=f"Alt({n})")
    gens = [Permutation.from_cycles([(0, 1, i)], n) for i in range(2, n)]
    return PermGroup(gens, name=f"Alt({n})")


def cyclic_group(m: int) -> PermGroup:
    return PermGroup([Permutation.from_cycles([range(m)], m)] if m > 1 else [Permutation.identity(1)],
                     name=f"C({m})")


# ---------------------------------------------------------------------------
# orbits and blocks


def orbits(G: PermGroup) -> list[tuple[int, ...]]:
    """G-orbits on points, each sorted, ordered by least point."""
    n = G.degree
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start]:
            continue
        orb = [start]
        seen[start] = True
        for x in orb:
            for g in G.generators:
                y = g[x]
                if not seen[y]:
                    seen[y] = True
                    orb.append(y)
        out.append(tuple(sorted(orb)))
    return out


def is_transitive(G: PermGroup) -> bool:
    return len(orbits(G)) == 1


def _block_closure(gens: Sequence[Sequence[int]], n: int, a: int, b: int) -> list[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue = [(a, b)]
    parent[find(b)] = find(a)
    while queue:
        x, y = queue.pop()
        for g in gens:
            u, v = find(g[x]), find(g[y])
            if u != v:
                parent[v] = u
                queue.append((g[x], g[y]))
    return [find(x) for x in range(n)]


def block_system_of_pair(G: PermGroup, a: int, b: int) -> list[tuple[int, ...]]:
    """The finest block system in which ``a`` and ``b`` share a block."""
    roots = _block_closure(G.generators, G.degree, a, b)
    blocks: dict[int, list[int]] = {}
    for x, r in enumerate(roots):
        blocks.setdefault(r, []).append(x)
    return sorted(tuple(v) for v in blocks.values())


def minimal_block_system(G: PermGroup) -> list[tuple[int, ...]] | None:
    """A minimal nontrivial block system, or None when G is primitive.

    Among the systems generated by the pairs ``(0, k)`` the smallest block size
    wins, ties going to the smallest ``k``.
    """
    if G.degree < 2 or not is_transitive(G):
        raise NotTransitive("minimal_block_system needs a transitive group of degree >= 2")
    best = None
    for k in range(1, G.degree):
        system = block_system_of_pair(G, 0, k)
        if len(system) == 1:
            continue
        if best is None or len(system[0]) < len(best[0]):
            best = system
    return best


# ---------------------------------------------------------------------------
# coset actions


class CosetAction:
    """Permutation image of G acting on right cosets of a subgroup.

    ``coset_of[i]`` is the coset label of element ``i``; ``representatives[c]``
    is the least element index in coset ``c``.  Label 0 is the subgroup itself.
    """

    def __init__(self, image: PermGroup, coset_of: np.ndarray, representatives: np.ndarray):
        self.image = image
        self.coset_of = coset_of
        self.representatives = representatives

    def __iter__(self):
        yield self.image
        yield self.coset_of


def _coset_labels(G: PermGroup, sub_gen_idx) -> tuple[np.ndarray, np.ndarray]:
    N = G.order
    sub_gen_idx = [int(h) for h in sub_gen_idx if int(h) != 0]
    if not sub_gen_idx:
        labels = np.arange(N)
        return labels, labels.copy()
    src = np.concatenate([np.arange(N)] * len(sub_gen_idx))
    dst = np.concatenate([G.left_mul(h) for h in sub_gen_idx])
    graph = coo_matrix((np.ones(src.size, dtype=np.int8), (src, dst)), shape=(N, N))
    _, comp = connected_components(graph, directed=True, connection="weak")
    first = np.full(comp.max() + 1, N, dtype=np.int64)
    np.minimum.at(first, comp, np.arange(N))
    rank = np.argsort(np.argsort(first))
    labels = rank[comp]
    reps = np.sort(first)
    return labels, reps


def action_on_cosets(G: PermGroup, sub_gen_idx, name: str | None = None) -> CosetAction:
    """Right-translation action of G on right cosets of the subgroup generated by indices."""
    labels, reps = _coset_labels(G, sub_gen_idx)
    E = G.elements.astype(np.int64)
    img_gens = []
    for g in G.generators:
        targets = G.lookup(np.asarray(g)[E[reps]])
        img_gens.append(Permutation._trusted(int(x) for x in labels[targets]))
    image = PermGroup(img_gens, degree=len(reps), name=name)
    return CosetAction(image, labels, reps)


def coset_action(G: PermGroup, H: PermGroup) -> CosetAction:
    """Action of G on the right cosets of H; the kernel is core_G(H)."""
    if not G.contains_group(H):
        raise NotSubgroup("H is not a subgroup of G")
    return action_on_cosets(G, G.lookup(np.array(H.generators, dtype=np.int64)))
