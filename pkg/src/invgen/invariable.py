"""Invariable generation: the set-cover decider, the tuple oracle, d_I and d.

A set X invariably generates G exactly when, for every maximal subgroup M,
some member of X has its whole conjugacy class outside M (it acts without
fixed points on the cosets of M).  Since the condition only sees classes,
d_I(G) is the least number of conjugacy classes whose "kill sets" cover the
maximal classes of G.  That is a set-cover problem over at most a few dozen
classes, solved exactly below by branch and bound.
"""

from __future__ import annotations

import dataclasses
import itertools
import math
from typing import Iterable, Sequence

import numpy as np

from . import config
from .perm import CapExceeded, PermGroup, bool_from_mask, mask_from_bool, small_generating_set
from .structure import (
    SubgroupClass,
    _components,
    centralizer,
    conjugacy_classes,
    normal_closure_mask,
    subgroup_lattice,
)


# ---------------------------------------------------------------------------
# cover instance


def kills(G: PermGroup, class_index: int, M: SubgroupClass) -> bool:
    """True when the class misses M, i.e. its members are derangements on G/M."""
    cls = conjugacy_classes(G).classes[class_index]
    return cls.mask & M.rep == 0


@dataclasses.dataclass
class CoverInstance:
    group: PermGroup
    maximal: list[SubgroupClass]
    sets: list[int]             # per conjugacy class: bitmask over maximal classes

    @property
    def universe(self) -> int:
        return (1 << len(self.maximal)) - 1

    def killers(self, m: int) -> list[int]:
        return [c for c, s in enumerate(self.sets) if (s >> m) & 1]


def cover_instance(G: PermGroup, max_classes: int | None = None,
                   max_maximal: int | None = None, order_cap: int | None = None) -> CoverInstance:
    def compute():
        table = conjugacy_classes(G)
        cap_c = config.pick(max_classes, "max_classes")
        if len(table) > cap_c:
            raise CapExceeded("conjugacy classes", len(table), cap_c)
        maximal = nilpotent_maximal(G)
        if maximal is None:
            maximal = subgroup_lattice(G, order_cap).maximal_classes
        cap_m = config.pick(max_maximal, "max_maximal_classes")
        if len(maximal) > cap_m:
            raise CapExceeded("maximal subgroup classes", len(maximal), cap_m)
        sets = []
        for cls in table.classes:
            bits = 0
            for k, M in enumerate(maximal):
                if cls.mask & M.rep == 0:
                    bits |= 1 << k
            sets.append(bits)
        return CoverInstance(G, maximal, sets)
    return G.cached(("cover", max_classes, max_maximal, order_cap), compute)


def is_nilpotent(G: PermGroup) -> bool:
    """Unique Sylow subgroups: exactly |G|_p elements of p-power order for each p."""
    N = G.order
    orders = G.element_orders
    for p in _primes_dividing(N):
        pp = 1
        while N % (pp * p) == 0:
            pp *= p
        q = orders.copy()
        while True:
            div = q % p == 0
            if not div.any():
                break
            q[div] //= p
        if int((q == 1).sum()) != pp:
            return False
    return True


def nilpotent_maximal(G: PermGroup) -> list[SubgroupClass] | None:
    """Maximal subgroups of a nilpotent group, or None when G is not nilpotent.

    They are exactly the normal subgroups of prime index p, i.e. the preimages
    of hyperplanes of the elementary abelian quotient G/G'G^p.
    """
    N = G.order
    if N == 1 or not is_nilpotent(G):
        return None
    gens = [int(g) for g in G.generator_indices]
    inv = G.inverse_indices
    comms = {G.mul(G.mul(int(inv[a]), int(inv[b])), G.mul(a, b)) for a in gens for b in gens}
    out: list[SubgroupClass] = []
    for p in _primes_dividing(N):
        powers = {G.power(i, p) for i in range(N)}
        frat = normal_closure_mask(G, sorted(powers | comms))
        # coordinates of G/frat: greedy basis, then each element's vector by orbit labelling
        frat_idx = np.flatnonzero(bool_from_mask(frat, N))
        basis, span = [], frat
        for x in range(N):
            if not (span >> x) & 1:
                basis.append(x)
                span = G.span_mask(frat_idx.tolist() + basis)
        r = len(basis)
        vec = np.full((N, r), -1, dtype=np.int64)
        vec[frat_idx] = 0
        labelled = frat_idx
        for k, b in enumerate(basis):
            parts = [labelled]
            base = vec[labelled].copy()
            bt = 0
            for t in range(1, p):
                bt = G.mul(bt, b)
                moved = G.right_mul(bt)[labelled]
                vec[moved] = base
                vec[moved, k] = t
                parts.append(moved)
            labelled = np.concatenate(parts)
        cap = config.pick(None, "max_maximal_classes")
        if (p ** r - 1) // (p - 1) + len(out) > cap:
            raise CapExceeded("maximal subgroup classes", (p ** r - 1) // (p - 1) + len(out), cap)
        for f in _projective_points(r, p):
            flags = (vec @ np.array(f, dtype=np.int64)) % p == 0
            mask = mask_from_bool(flags)
            out.append(SubgroupClass(len(out), N // p, mask,
                                     small_generating_set(G, np.flatnonzero(flags)), [mask], True))
    return out


def _projective_points(r: int, p: int):
    """Nonzero vectors of F_p^r whose first nonzero entry is 1."""
    for v in itertools.product(range(p), repeat=r):
        nz = [x for x in v if x]
        if nz and nz[0] == 1:
            yield v


def is_invgen_cover(G: PermGroup, X: Iterable[int]) -> bool:
    """Decide invariable generation of a class multiset through the cover instance."""
    inst = cover_instance(G)
    got = 0
    for c in X:
        got |= inst.sets[int(c)]
    return got == inst.universe


def class_multiset(G: PermGroup, elements) -> tuple[int, ...]:
    table = conjugacy_classes(G)
    return tuple(sorted(int(table.class_of[i]) for i in _as_indices(G, elements)))


def _as_indices(G: PermGroup, elements) -> list[int]:
    out = []
    for e in elements:
        if isinstance(e, (int, np.integer)):
            out.append(int(e))
        else:
            out.append(G.index(e))
    return out


# ---------------------------------------------------------------------------
# exact set cover


def _bits(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


class _Cover:
    """Exact feasibility of covering a bitmask with k sets, memoized per instance."""

    def __init__(self, sets: Sequence[int]):
        self.sets = list(sets)
        self.memo: dict[tuple[int, int, int], bool] = {}

    def lower_bound(self, need: int, allowed: list[int]) -> int:
        if not need:
            return 0
        best = max((bin(self.sets[c] & need).count("1") for c in allowed), default=0)
        if best == 0:
            return math.inf
        by_size = -(-bin(need).count("1") // best)
        # greedy dual: elements whose killer sets are pairwise disjoint need distinct sets
        used = 0
        packed = 0
        for e in _bits(need):
            ks = 0
            for c in allowed:
                if (self.sets[c] >> e) & 1:
                    ks |= 1 << c
            if ks & used == 0:
                used |= ks
                packed += 1
        return max(by_size, packed)

    def feasible(self, need: int, k: int, start: int = 0) -> bool:
        """Can ``need`` be covered by k sets of index >= start?"""
        if not need:
            return True
        if k == 0:
            return False
        key = (need, k, start)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        allowed = [c for c in range(start, len(self.sets)) if self.sets[c] & need]
        result = False
        if self.lower_bound(need, allowed) <= k:
            # branch on the uncovered element with fewest killers
            best_k = None
            for e in _bits(need):
                ks = [c for c in allowed if (self.sets[c] >> e) & 1]
                if best_k is None or len(ks) < len(best_k):
                    best_k = ks
                    if len(ks) <= 1:
                        break
            for c in best_k:
                if self.feasible(need & ~self.sets[c], k - 1, start):
                    result = True
                    break
        self.memo[key] = result
        return result


def min_cover(sets: Sequence[int], universe: int) -> tuple[int, tuple[int, ...]] | None:
    """Least number of sets covering ``universe`` and the lexicographically least optimum.

    Returns None when even all sets together miss part of the universe.
    """
    union = 0
    for s in sets:
        union |= s
    if union & universe != universe:
        return None
    solver = _Cover(sets)
    k = 0
    while not solver.feasible(universe, k):
        k += 1
    witness = []
    need, left, start = universe, k, 0
    while need:
        for c in range(start, len(sets)):
            if sets[c] & need and solver.feasible(need & ~sets[c], left - 1, c + 1):
                witness.append(c)
                need &= ~sets[c]
                left -= 1
                start = c + 1
                break
    return k, tuple(witness)


# ---------------------------------------------------------------------------
# brute-force oracle


def _orbit_reps(G: PermGroup, members: np.ndarray, stab_gens: list[int]) -> list[int]:
    """Least member of each orbit of <stab_gens> acting by conjugation on ``members``."""
    if not stab_gens:
        return sorted(members.tolist())
    N = G.order
    comp = _components(N, [G.conj_action(s) for s in stab_gens])
    sub = comp[members]
    first = {}
    for m, c in zip(members.tolist(), sub.tolist()):
        if c not in first or m < first[c]:
            first[c] = m
    return sorted(first.values())


def _generates(G: PermGroup, indices) -> bool:
    return bool(G.span(list(indices)).all())


def is_invgen_oracle(G: PermGroup, X, cap: int | None = None) -> bool:
    """Brute force over conjugates: does every conjugate tuple of X generate G?

    The member with the largest class is fixed (conjugating a whole tuple does
    not change what it generates) and the remaining slots run over orbit
    representatives of the running centralizer.  Independent of the cover path.
    """
    idx = _as_indices(G, X)
    N = G.order
    if N == 1:
        return True
    if not idx:
        return False
    table = conjugacy_classes(G)
    sizes = [table.classes[int(table.class_of[i])].size for i in idx]
    lead = max(range(len(idx)), key=lambda k: (sizes[k], -k))
    rest = [idx[k] for k in range(len(idx)) if k != lead]
    work = math.prod(sizes[k] for k in range(len(idx)) if k != lead)
    cap = config.pick(cap, "oracle_combinations")
    if work > cap:
        raise CapExceeded("oracle conjugate combinations", work, cap)
    classes = [table.classes[int(table.class_of[i])].members for i in rest]
    x = idx[lead]

    def walk(chosen: list[int], stab: np.ndarray, depth: int) -> bool:
        if depth == len(classes):
            return _generates(G, chosen)
        gens = small_generating_set(G, stab)
        for y in _orbit_reps(G, classes[depth], gens):
            sub = np.intersect1d(stab, centralizer(G, y), assume_unique=True)
            if not walk(chosen + [y], sub, depth + 1):
                return False
        return True

    return walk([x], centralizer(G, x), 0)


# ---------------------------------------------------------------------------
# d_I and d


@dataclasses.dataclass(frozen=True)
class DIResult:
    value: int
    witness: tuple[int, ...]     # class indices
    method: str


def di(G: PermGroup, order_cap: int | None = None) -> DIResult:
    """Exact d_I(G) with the lexicographically least optimal class multiset."""
    def compute():
        if G.order == 1:
            return DIResult(0, (), "trivial")
        try:
            inst = cover_instance(G, order_cap=order_cap)
        except CapExceeded as exc:
            if "lattice" not in exc.what:
                raise
            return _di_oracle(G)
        found = min_cover(inst.sets, inst.universe)
        assert found is not None, "every maximal class misses some class"
        return DIResult(found[0], found[1], "cover")
    return G.cached(("di", order_cap), compute)


def _di_oracle(G: PermGroup) -> DIResult:
    table = conjugacy_classes(G)
    reps = list(range(1, len(table)))
    for k in itertools.count(1):
        for combo in itertools.combinations(reps, k):
            if is_invgen_oracle(G, [table.classes[c].rep for c in combo]):
                return DIResult(k, combo, "oracle")


def frattini_rank_bound(G: PermGroup) -> int:
    """Largest rank of an elementary abelian quotient G/G'G^p: a lower bound for d(G)."""
    N = G.order
    best = 0
    for p in _primes_dividing(N):
        powers = {G.power(i, p) for i in range(N)}
        # G' G^p is generated by p-th powers and generator commutators
        gens = [int(g) for g in G.generator_indices]
        comms = {G.mul(G.mul(int(G.inverse_indices[a]), int(G.inverse_indices[b])), G.mul(a, b))
                 for a in gens for b in gens}
        m = normal_closure_mask(G, sorted(powers | comms))
        index = N // bin(m).count("1")
        best = max(best, round(math.log(index, p)) if index > 1 else 0)
    return best


def _primes_dividing(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def d(G: PermGroup) -> int:
    """Exact minimal number of generators, by increasing-size search."""
    def compute():
        N = G.order
        if N == 1:
            return 0
        reps = [c.rep for c in conjugacy_classes(G).classes[1:]]
        failed: set[tuple[int, int]] = set()

        def search(gens: list[int], flags: np.ndarray, left: int) -> bool:
            if flags.all():
                return True
            if left == 0:
                return False
            key = (hash(flags.tobytes()), left)
            if key in failed:
                return False
            pool = reps if not gens else np.flatnonzero(~flags).tolist()
            seen: set[bytes] = set()
            for y in pool:
                nf = G.span(gens + [y])
                b = nf.tobytes()
                if b in seen:
                    continue
                seen.add(b)
                if search(gens + [y], nf, left - 1):
                    return True
            failed.add(key)
            return False

        k = max(1, frattini_rank_bound(G))
        while not search([], np.zeros(N, dtype=bool), k):
            k += 1
        return k
    return G.cached("d", compute)


def is_invariably_generating_set(G: PermGroup, X) -> bool:
    """Convenience wrapper choosing the cover path and accepting elements."""
    return is_invgen_cover(G, class_multiset(G, X))
