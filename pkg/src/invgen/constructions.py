"""Named groups, combinators and the fixed catalog used by the audit.

Expressions are small frozen dataclasses whose ``str`` is the text syntax
understood by :mod:`invgen.parser`, so ``parse(str(e)) == e``.
"""

from __future__ import annotations

import dataclasses
import itertools
import threading
from typing import Sequence

import numpy as np

from . import bounds, matgroup
from .perm import (
    InvgenError,
    NotSubgroup,
    PermGroup,
    Permutation,
    action_on_cosets,
    alternating_group,
    cyclic_group,
    format_cycles,
    indices_from_mask,
    is_transitive,
    orbits,
    small_generating_set,
    symmetric_group,
)
from .structure import (
    center_mask,
    conjugacy_classes,
    derived_mask,
    normal_closure_mask,
    normal_subgroup_masks,
    subgroup_lattice,
)


class BlockMismatch(InvgenError):
    pass


class BuildError(InvgenError, ValueError):
    pass


# ---------------------------------------------------------------------------
# expression tree


class Expr:
    def __str__(self) -> str:               # pragma: no cover - overridden
        raise NotImplementedError


def _cycles_text(cycles: tuple[tuple[int, ...], ...]) -> str:
    return "".join("(" + ",".join(map(str, c)) + ")" for c in cycles) or "()"


def _gens_text(gens) -> str:
    return ",".join(_cycles_text(g) for g in gens) if gens else "()"


@dataclasses.dataclass(frozen=True)
class Cyclic(Expr):
    m: int

    def __str__(self):
        return f"C({self.m})"


@dataclasses.dataclass(frozen=True)
class Dihedral(Expr):
    m: int

    def __str__(self):
        return f"D({self.m})"


@dataclasses.dataclass(frozen=True)
class Symmetric(Expr):
    n: int

    def __str__(self):
        return f"S({self.n})"


@dataclasses.dataclass(frozen=True)
class Alternating(Expr):
    n: int

    def __str__(self):
        return f"A({self.n})"


@dataclasses.dataclass(frozen=True)
class Named(Expr):
    """Parameterless groups: Q8, F21 (the group 7:3) and D8oD8."""
    name: str

    def __str__(self):
        return self.name


@dataclasses.dataclass(frozen=True)
class BGroup(Expr):
    n: int

    def __str__(self):
        return f"B({self.n})"


@dataclasses.dataclass(frozen=True)
class Classical(Expr):
    """GL(n,p), SL(n,p) or Sp(4,2) on nonzero vectors; PGL(2,q), PGaL(2,q) on the projective line."""
    kind: str
    n: int
    p: int

    def __str__(self):
        return f"{self.kind}({self.n},{self.p})"


@dataclasses.dataclass(frozen=True)
class DirectProduct(Expr):
    factors: tuple[Expr, ...]

    def __str__(self):
        return "dp(" + ",".join(map(str, self.factors)) + ")"


@dataclasses.dataclass(frozen=True)
class Wreath(Expr):
    bottom: Expr
    top: Expr

    def __str__(self):
        return f"wr({self.bottom},{self.top})"


@dataclasses.dataclass(frozen=True)
class Subgroup(Expr):
    expr: Expr
    gens: tuple[tuple[tuple[int, ...], ...], ...]

    def __str__(self):
        return f"sub({self.expr}; {_gens_text(self.gens)})"


@dataclasses.dataclass(frozen=True)
class Quotient(Expr):
    expr: Expr
    gens: tuple[tuple[tuple[int, ...], ...], ...]     # normal closure of these

    def __str__(self):
        return f"quo({self.expr}; {_gens_text(self.gens)})"


@dataclasses.dataclass(frozen=True)
class Subdirect(Expr):
    """Fiber product of e1 and e2 over isomorphic quotients e1/N1 and e2/N2."""
    left: Expr
    left_kernel: tuple
    right: Expr
    right_kernel: tuple

    def __str__(self):
        return (f"subd({self.left}; {_gens_text(self.left_kernel)}; "
                f"{self.right}; {_gens_text(self.right_kernel)})")


@dataclasses.dataclass(frozen=True)
class Matrix:
    p: int
    rows: tuple[tuple[int, ...], ...]

    def __str__(self):
        return f"mat({self.p}; " + " | ".join(",".join(map(str, r)) for r in self.rows) + ")"


@dataclasses.dataclass(frozen=True)
class Linear(Expr):
    mats: tuple[Matrix, ...]

    def __str__(self):
        return "lin(" + ",".join(map(str, self.mats)) + ")"


# ---------------------------------------------------------------------------
# named groups


def dihedral_group(m: int) -> PermGroup:
    if m < 3:
        raise BuildError("D(m) needs m >= 3")
    rot = Permutation([(i + 1) % m for i in range(m)])
    ref = Permutation([(-i) % m for i in range(m)])
    return PermGroup([rot, ref], name=f"D({m})")


def quaternion_group() -> PermGroup:
    """Q8 in its regular representation; point 4*s + u is the unit (-1)^s * (1,i,j,k)[u]."""
    # unit products: table[u][v] = (sign, unit) of e_u * e_v
    table = {
        (0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
        (1, 0): (0, 1), (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
        (2, 0): (0, 2), (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
        (3, 0): (0, 3), (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0),
    }

    def right(v):
        img = []
        for x in range(8):
            s, u = divmod(x, 4)
            s2, w = table[(u, v)]
            img.append(4 * ((s + s2) % 2) + w)
        return Permutation(img)

    return PermGroup([right(1), right(2)], name="Q8")


def frobenius21() -> PermGroup:
    return PermGroup([Permutation([(x + 1) % 7 for x in range(7)]),
                      Permutation([(2 * x) % 7 for x in range(7)])], name="F21")


def _field(q: int):
    """Multiplication table of F_q for a prime power q; element c is a base-p polynomial code."""
    (p, k), = bounds.factorize(q).items()

    def mul_poly(a, b, mod):
        da = [(a // p ** i) % p for i in range(k)]
        db = [(b // p ** i) % p for i in range(k)]
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d]
            if c:
                for i in range(k + 1):
                    prod[d - k + i] = (prod[d - k + i] - c * mod[i]) % p
        return sum(prod[i] * p ** i for i in range(k))

    for tail in range(p ** k):
        mod = [(tail // p ** i) % p for i in range(k)] + [1]
        table = [[mul_poly(a, b, mod) for b in range(q)] for a in range(q)]
        if all(any(table[a][b] == 1 for b in range(q)) for a in range(1, q)):
            add = [[sum((((a // p ** i) + (b // p ** i)) % p) * p ** i for i in range(k))
                    for b in range(q)] for a in range(q)]
            return p, add, table
    raise BuildError("no irreducible polynomial found")   # pragma: no cover


def projective_line_group(q: int, semilinear: bool = False) -> PermGroup:
    """PGL(2,q), or PGammaL(2,q), on the q+1 points of the projective line (infinity is point q)."""
    if len(bounds.factorize(q)) != 1 or q < 2:
        raise BuildError("q must be a prime power")
    p, add, mul = _field(q)
    inv = {a: b for a in range(1, q) for b in range(1, q) if mul[a][b] == 1}
    omega = next(a for a in range(1, q)
                 if len({_power(mul, a, e) for e in range(1, q)}) == q - 1)
    inf = q
    gens = [
        [add[x][1] for x in range(q)] + [inf],
        [mul[omega][x] for x in range(q)] + [inf],
        [inf] + [inv[x] for x in range(1, q)] + [0],
    ]
    if semilinear and q != p:
        gens.append([_power(mul, x, p) for x in range(q)] + [inf])
    return PermGroup([Permutation(g) for g in gens], degree=q + 1)


def _power(mul, a: int, e: int) -> int:
    out = 1
    for _ in range(e):
        out = mul[out][a]
    return out


# found by d8_central_d8_search(); kept frozen so builds do not depend on the search
D8_CENTRAL_D8_GENERATORS = [
    (2, 3, 1, 0, 6, 7, 5, 4),
    (2, 3, 1, 0, 7, 6, 4, 5),
    (4, 5, 6, 7, 1, 0, 3, 2),
    (4, 5, 7, 6, 1, 0, 2, 3),
]


def d8_central_d8() -> PermGroup:
    return PermGroup([Permutation(g) for g in D8_CENTRAL_D8_GENERATORS], name="D8oD8")


def d8_central_d8_search() -> list[PermGroup]:
    """Transitive subgroups of order 32 of C2 wr C2 wr C2 that are extraspecial of plus type.

    Conditions: exponent 4, |Z| = 2, G' = Z, and 19 involutions (the minus
    type has 11).  Returns one group per conjugacy class found.
    """
    C2 = cyclic_group(2)
    W = wreath_product(wreath_product(C2, C2), C2).materialize()
    out = []
    for c in subgroup_lattice(W).all_classes:
        if c.order != 32:
            continue
        H = subgroup_lattice(W).subgroup(c).materialize()
        if not is_transitive(H) or H.element_orders.max() != 4:
            continue
        Z = center_mask(H)
        if bin(Z).count("1") != 2 or derived_mask(H, H.generator_indices) != Z:
            continue
        if int((H.element_orders == 2).sum()) == 19:
            out.append(H)
    return out


def b_group(n: int) -> PermGroup:
    """3^(n/2):2 inside Sym(3)^(n/2) on 3n/2 points; the involution inverts every factor."""
    if n < 2 or n % 2:
        raise BuildError("B(n) needs even n >= 2")
    k = n // 2
    deg = 3 * k
    gens = []
    for i in range(k):
        img = list(range(deg))
        img[3 * i], img[3 * i + 1], img[3 * i + 2] = 3 * i + 1, 3 * i + 2, 3 * i
        gens.append(Permutation(img))
    img = list(range(deg))
    for i in range(k):
        img[3 * i + 1], img[3 * i + 2] = 3 * i + 2, 3 * i + 1
    gens.append(Permutation(img))
    return PermGroup(gens, name=f"B({n})")


# ---------------------------------------------------------------------------
# combinators


def direct_product(groups: Sequence[PermGroup]) -> PermGroup:
    degree = sum(G.degree for G in groups)
    gens = []
    offset = 0
    for G in groups:
        for g in G.generators:
            img = list(range(degree))
            for x in range(G.degree):
                img[offset + x] = offset + g[x]
            gens.append(Permutation(img))
        offset += G.degree
    if not gens:
        gens = [Permutation.identity(max(degree, 1))]
    return PermGroup(gens, degree=max(degree, 1))


def wreath_product(R: PermGroup, S: PermGroup) -> PermGroup:
    """R wr S on r*s points; point (i, j) is j*r + i and S permutes the blocks j."""
    r, s = R.degree, S.degree
    gens = []
    # one copy of R per S-orbit already generates the base group
    for orbit in orbits(S):
        j = orbit[0]
        for g in R.generators:
            img = list(range(r * s))
            for i in range(r):
                img[j * r + i] = j * r + g[i]
            gens.append(Permutation(img))
    for g in S.generators:
        gens.append(Permutation([g[x // r] * r + x % r for x in range(r * s)]))
    return PermGroup(gens, degree=r * s)


def _perm_from_cycles(cycles, degree: int) -> Permutation:
    if any(x < 1 or x > degree for c in cycles for x in c):
        raise BuildError(f"cycle point outside 1..{degree}")
    return Permutation.from_cycles([[x - 1 for x in c] for c in cycles], degree)


def subgroup_by_gens(G: PermGroup, gens) -> PermGroup:
    perms = [_perm_from_cycles(c, G.degree) for c in gens]
    for p in perms:
        if p not in G:
            raise NotSubgroup(f"{format_cycles(p)} is not in the group")
    if not perms:
        perms = [Permutation.identity(G.degree)]
    return PermGroup(perms, degree=G.degree)


def normal_closure_group(G: PermGroup, gens) -> tuple[int, list[int]]:
    perms = [_perm_from_cycles(c, G.degree) for c in gens]
    idx = [G.index(p) for p in perms]
    m = normal_closure_mask(G, idx)
    return m, small_generating_set(G, indices_from_mask(m, G.order))


def _hom_labels(G: PermGroup, images: Sequence[int], Q: PermGroup) -> np.ndarray:
    """For a homomorphism sending generator k of G to Q-element images[k], label every element."""
    N = G.order
    label = np.full(N, -1, dtype=np.int64)
    label[0] = 0
    frontier = np.array([0])
    gidx = G.generator_indices.tolist()
    while frontier.size:
        nxt = []
        for k, g in enumerate(gidx):
            targets = G.right_mul(g)[frontier]
            vals = np.array([Q.mul(int(v), images[k]) for v in label[frontier]])
            fresh = label[targets] < 0
            label[targets[fresh]] = vals[fresh]
            nxt.append(np.unique(targets[fresh]))
        frontier = np.unique(np.concatenate(nxt)) if nxt else np.array([], dtype=np.int64)
    return label


def _quotient_data(G: PermGroup, N_gens: list[int]):
    """Regular quotient Q = G/N and the label of every element of G in Q."""
    act = action_on_cosets(G, N_gens)
    Q = act.image.materialize()
    images = [Q.index(g) for g in act.image.generators]
    return Q, _hom_labels(G, images, Q)


def find_isomorphism(Q1: PermGroup, Q2: PermGroup) -> list[int] | None:
    """Images in Q2 of a small generating set of Q1 defining an isomorphism, or None.

    Returns ``[(a_k, b_k)]`` pairs flattened as dict-like list of tuples.
    """
    if Q1.order != Q2.order:
        return None
    N = Q1.order
    if N == 1:
        return []
    gens = small_generating_set(Q1, range(N))
    o1, o2 = Q1.element_orders, Q2.element_orders
    first = [c.rep for c in conjugacy_classes(Q2).classes if o2[c.rep] == o1[gens[0]]]
    rest = [np.flatnonzero(o2 == o1[g]).tolist() for g in gens[1:]]
    for b0 in first:
        for tail in itertools.product(*rest):
            imgs = [b0, *tail]
            phi = _extend(Q1, gens, Q2, imgs)
            if phi is not None:
                return list(zip(gens, imgs))
    return None


def _extend(Q1, gens, Q2, imgs):
    N = Q1.order
    phi = {0: 0}
    todo = [0]
    while todo:
        u = todo.pop()
        v = phi[u]
        for a, b in zip(gens, imgs):
            ua, vb = Q1.mul(u, a), Q2.mul(v, b)
            got = phi.get(ua)
            if got is None:
                phi[ua] = vb
                todo.append(ua)
            elif got != vb:
                return None
    if len(phi) != N or len(set(phi.values())) != N:
        return None
    return phi


def fiber_product(G1: PermGroup, N1_gens, G2: PermGroup, N2_gens) -> PermGroup:
    """{(g1, g2) : phi(g1 N1) = g2 N2} on deg(G1) + deg(G2) points."""
    G1, G2 = G1.materialize(), G2.materialize()
    n1, n2 = G1.degree, G2.degree
    m1, k1 = normal_closure_group(G1, N1_gens)
    m2, k2 = normal_closure_group(G2, N2_gens)
    Q1, lab1 = _quotient_data(G1, k1)
    Q2, lab2 = _quotient_data(G2, k2)
    pairs = find_isomorphism(Q1, Q2)
    if pairs is None:
        raise BuildError("quotients are not isomorphic")
    phi = _extend(Q1, [a for a, _ in pairs], Q2, [b for _, b in pairs]) if pairs else {0: 0}

    def join(a: Permutation, b: Permutation) -> Permutation:
        return Permutation(list(a) + [n1 + x for x in b])

    gens = []
    for g in G1.generator_indices.tolist():
        target = phi[int(lab1[g])]
        lift = int(np.flatnonzero(lab2 == target)[0])
        gens.append(join(G1.element(g), G2.element(lift)))
    for k in k1:
        gens.append(join(G1.element(k), Permutation.identity(n2)))
    for k in k2:
        gens.append(join(Permutation.identity(n1), G2.element(k)))
    return PermGroup(gens, degree=n1 + n2)


def have_common_image(H: PermGroup, K: PermGroup) -> bool:
    """Do H and K share a nontrivial homomorphic image (up to isomorphism)?"""
    H, K = H.materialize(), K.materialize()
    from .structure import small_quotient
    qh = {}
    for m in normal_subgroup_masks(H)[:-1]:
        qh.setdefault(H.order // bin(m).count("1"), []).append(m)
    for m in normal_subgroup_masks(K)[:-1]:
        size = K.order // bin(m).count("1")
        for mh in qh.get(size, []):
            A = small_quotient(H, mh).materialize()
            B = small_quotient(K, m).materialize()
            if find_isomorphism(A, B) is not None:
                return True
    return False


def is_large_subgroup(G: PermGroup, R: PermGroup, S: PermGroup) -> bool:
    """Large in R wr S: each block stabilizer induces R on its block, and the block action is S."""
    r, s = R.degree, S.degree
    if G.degree != r * s:
        raise BlockMismatch("degree is not r*s")
    for g in G.generators:
        for j in range(s):
            if len({g[j * r + i] // r for i in range(r)}) != 1:
                raise BlockMismatch("generators do not preserve the blocks")
    top = PermGroup([Permutation([g[j * r] // r for j in range(s)]) for g in G.generators],
                    degree=s)
    S = S.materialize()
    if top.order != S.order or not S.contains_group(top):
        return False
    E = G.materialize().elements.astype(np.int64)
    R = R.materialize()
    for j in range(s):
        stab = E[E[:, j * r] // r == j][:, j * r:(j + 1) * r] - j * r
        if len(stab) == 0:
            return False
        found = R.lookup(stab, strict=False)
        if (found < 0).any():
            return False
        if np.unique(found).size != R.order:
            return False
    return True


# ---------------------------------------------------------------------------
# evaluation


_build_lock = threading.Lock()
_built: dict[str, PermGroup] = {}


def build(e: Expr) -> PermGroup:
    """Evaluate an expression; results are shared per expression text."""
    key = str(e)
    with _build_lock:
        hit = _built.get(key)
    if hit is not None:
        return hit
    G = _build(e)
    G.name = key
    with _build_lock:
        return _built.setdefault(key, G)


def build_matrix(e: Expr) -> matgroup.MatrixGroup | None:
    """The matrix group behind linear expressions (None for the rest)."""
    if isinstance(e, Classical):
        if e.kind == "GL":
            return matgroup.GL(e.n, e.p)
        if e.kind == "SL":
            return matgroup.SL(e.n, e.p)
        return matgroup.Sp4_2()
    if isinstance(e, BGroup):
        return matgroup.B_matrix(e.n)
    if isinstance(e, Linear):
        ps = {m.p for m in e.mats}
        if len(ps) != 1:
            raise BuildError("matrices over different fields")
        p = ps.pop()
        return matgroup.MatrixGroup([np.array(m.rows) for m in e.mats], p)
    return None


def _build(e: Expr) -> PermGroup:
    if isinstance(e, Cyclic):
        if e.m < 1:
            raise BuildError("C(m) needs m >= 1")
        return cyclic_group(e.m)
    if isinstance(e, Dihedral):
        return dihedral_group(e.m)
    if isinstance(e, Symmetric):
        if e.n < 1:
            raise BuildError("S(n) needs n >= 1")
        return symmetric_group(e.n)
    if isinstance(e, Alternating):
        if e.n < 1:
            raise BuildError("A(n) needs n >= 1")
        return alternating_group(e.n)
    if isinstance(e, Named):
        makers = {"Q8": quaternion_group, "F21": frobenius21, "D8oD8": d8_central_d8}
        if e.name not in makers:
            raise BuildError(f"unknown group {e.name}")
        return makers[e.name]()
    if isinstance(e, BGroup):
        return b_group(e.n)
    if isinstance(e, Classical):
        if e.kind in ("PGL", "PGaL"):
            if e.n != 2:
                raise BuildError("projective groups are available in dimension 2 only")
            return projective_line_group(e.p, semilinear=e.kind == "PGaL")
        if e.kind == "Sp" and (e.n, e.p) != (4, 2):
            raise BuildError("only Sp(4,2) is available")
        if not bounds.is_prime(e.p):
            raise BuildError("p must be prime")
        return build_matrix(e).to_perm()
    if isinstance(e, Linear):
        return build_matrix(e).to_perm()
    if isinstance(e, DirectProduct):
        return direct_product([build(f) for f in e.factors])
    if isinstance(e, Wreath):
        return wreath_product(build(e.bottom), build(e.top))
    if isinstance(e, Subgroup):
        return subgroup_by_gens(build(e.expr), e.gens)
    if isinstance(e, Quotient):
        G = build(e.expr).materialize()
        _, gens = normal_closure_group(G, e.gens)
        return action_on_cosets(G, gens).image
    if isinstance(e, Subdirect):
        return fiber_product(build(e.left), e.left_kernel, build(e.right), e.right_kernel)
    raise BuildError(f"cannot build {e!r}")


# ---------------------------------------------------------------------------
# catalog


@dataclasses.dataclass(frozen=True)
class Expected:
    value: object
    tag: str            # PAPER, DERIVED or TRIVIAL
    anchor: str = ""


@dataclasses.dataclass(frozen=True)
class CatalogEntry:
    name: str
    text: str
    expected: dict = dataclasses.field(default_factory=dict, hash=False, compare=False)
    families: tuple[str, ...] = ()


def _entry(name, text, families=(), **expected):
    return CatalogEntry(name, text, expected, tuple(families))


def catalog() -> list[CatalogEntry]:
    P, D, T = "PAPER", "DERIVED", "TRIVIAL"
    out = []
    for n in range(3, 8):
        out.append(_entry(f"Sym({n})", f"S({n})", ("symmetric",),
                          order=Expected(_fact(n), T),
                          d_I=Expected(3 if n == 6 else 2, P, "Prop 4.11(i)")))
    for n in range(4, 7):
        out.append(_entry(f"Alt({n})", f"A({n})", ("alternating",),
                          order=Expected(_fact(n) // 2, T),
                          d_I=Expected(2, P if n >= 5 else D, "Thm 2.8" if n >= 5 else "")))
    for m in (1, 2, 3, 4, 5, 6, 8):
        out.append(_entry(f"C_{m}", f"C({m})", ("cyclic",), order=Expected(m, T),
                          d_I=Expected(0 if m == 1 else 1, T)))
    for m in (3, 4, 5, 6):
        out.append(_entry(f"D_{2 * m}", f"D({m})", ("dihedral",), order=Expected(2 * m, T),
                          d_I=Expected(2, T)))
    out += [
        _entry("Q_8", "Q8", order=Expected(8, T), d_I=Expected(2, T), d=Expected(2, T)),
        _entry("C_2≀C_2", "wr(C(2),C(2))", ("wreath",), order=Expected(8, T)),
        _entry("C_2≀C_2≀C_2", "wr(wr(C(2),C(2)),C(2))", ("wreath",), order=Expected(128, T)),
    ]
    for m in (2, 3, 4, 5):
        out.append(_entry(f"C_{m}≀S_3", f"wr(C({m}),S(3))", ("wreath", "cmwr3"),
                          order=Expected(m ** 3 * 6, T)))
    out += [
        _entry("S_3≀C_2", "wr(S(3),C(2))", ("wreath",), order=Expected(72, T)),
        _entry("S_3≀C_3", "wr(S(3),C(3))", ("wreath",), order=Expected(648, T)),
        _entry("B(4)", "B(4)", ("B",), order=Expected(18, P, "§1"),
               d_I=Expected(3, P, "Thm 1.4")),
        _entry("B(6)", "B(6)", ("B",), order=Expected(54, P, "§1"),
               d_I=Expected(4, P, "Thm 1.4")),
        _entry("GL(2,2)", "GL(2,2)", ("linear",), order=Expected(6, T), d_I=Expected(2, P, "Prop 4.5")),
        _entry("GL(3,2)", "GL(3,2)", ("linear", "simple"), order=Expected(168, T),
               d_I=Expected(2, P, "Prop 4.5")),
        _entry("F21", "F21", ("linear",), order=Expected(21, T), d_I=Expected(2, P, "Prop 4.5")),
        _entry("Sp(4,2)", "Sp(4,2)", ("linear",), order=Expected(720, D),
               d_I=Expected(3, P, "Thm 1.4")),
        _entry("A_5×A_5", "dp(A(5),A(5))", ("simple-power",), order=Expected(3600, T),
               d_I=Expected(2, P, "Cor 4.10")),
        _entry("D8∘D8", "D8oD8", order=Expected(32, T), d_I=Expected(4, P, "Prop 4.1(ii)"),
               d=Expected(4, D)),
        _entry("S_3^2", "dp(S(3),S(3))", ("s3power",), order=Expected(36, T)),
        _entry("S_3^3", "dp(S(3),S(3),S(3))", ("s3power",), order=Expected(216, T)),
        _entry("S_3×F21", "dp(S(3),F21)", ("subd",), order=Expected(126, T),
               d_I=Expected(2, P, "Prop 4.8(ii)")),
        _entry("S_3×L_3(2)", "dp(S(3),GL(3,2))", ("subd",), order=Expected(1008, T),
               d_I=Expected(2, P, "Prop 4.8(ii)")),
        _entry("S_3×S_6", "dp(S(3),S(6))", ("subd",), order=Expected(4320, T),
               d_I=Expected(3, P, "Prop 4.8(ii)")),
        _entry("S_3×_{C2}S_6", "subd(S(3); (1,2,3); S(6); (1,2,3))", ("subd",),
               order=Expected(2160, T), d_I=Expected(3, P, "Prop 4.8(ii)")),
        _entry("S_3×_{C2}S_3", "subd(S(3); (1,2,3); S(3); (1,2,3))", ("subd",),
               order=Expected(18, T)),
        _entry("S_3×A_5", "dp(S(3),A(5))", ("subd",), order=Expected(360, T)),
        _entry("F21×B(4)", "dp(F21,B(4))", ("subd",), order=Expected(378, T),
               d_I=Expected(3, P, "Prop 4.8(iv)")),
        _entry("L_3(2)×B(4)", "dp(GL(3,2),B(4))", ("subd",), order=Expected(3024, T),
               d_I=Expected(3, P, "Prop 4.8(iv)")),
        _entry("C_7×S_3", "dp(lin(mat(2; 0,1,0 | 0,0,1 | 1,1,0)),S(3))", ("subd",),
               order=Expected(42, T), d_I=Expected(2, P, "Prop 4.8(iv)")),
    ]
    return out


def _fact(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out
