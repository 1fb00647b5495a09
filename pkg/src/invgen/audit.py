"""Claim suites checked by direct computation, and the report they produce.

A claim is a named, exact check: an expected value (integer or boolean) and a
thunk computing the actual one.  Suites build their claim lists
deterministically, claims run independently (optionally in a thread pool) and
the report keeps suite order, so two runs with equal caps give equal reports
once timings are stripped.
"""

from __future__ import annotations

import dataclasses
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np

from . import bounds, config, gmodule, matgroup
from .constructions import (
    DirectProduct,
    Subdirect,
    Subgroup,
    build,
    catalog,
    have_common_image,
    is_large_subgroup,
)
from .invariable import di, is_invgen_cover
from .parser import parse_group_expr
from .perm import CapExceeded, InvgenError, PermGroup, is_transitive
from .structure import (
    center_mask,
    composition_data,
    conjugacy_classes,
    derived_mask,
    is_abelian_mask,
    minimal_normal_masks,
    normal_subgroup_masks,
    normalizer,
    small_quotient,
    subgroup_lattice,
)

SCHEMA = "invgen-report/1"

# working caps for the audit: Sym(7) needs a lattice above the library default,
# and C_5 wr S_3 has 65 classes
AUDIT_DEFAULTS = {"lattice_order": 6000, "max_classes": 128}


@dataclasses.dataclass
class Claim:
    id: str
    anchor: str
    expr: str
    expected: object
    tag: str
    compute: Callable[[], tuple[object, str]]
    coverage: str = ""


@dataclasses.dataclass
class Record:
    id: str
    anchor: str
    expr: str
    expected: object
    tag: str
    computed: object
    status: str                 # pass, fail or skipped
    detail: str
    coverage: str
    elapsed_ms: int

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def as_dict(self, timings: bool = True) -> dict:
        out = {"id": self.id, "anchor": self.anchor, "expr": self.expr,
               "expected": _jsonable(self.expected), "tag": self.tag,
               "computed": _jsonable(self.computed), "status": self.status,
               "pass": self.passed, "detail": self.detail, "coverage": self.coverage}
        if timings:
            out["elapsed_ms"] = self.elapsed_ms
        return out


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.bool_,)):
        return bool(v)
    return v


@dataclasses.dataclass
class AuditReport:
    suites: list[str]
    records: list[Record]
    config: dict

    @property
    def summary(self) -> dict:
        counts = {"total": len(self.records), "pass": 0, "fail": 0, "skipped": 0}
        for r in self.records:
            counts[r.status] += 1
        return counts

    @property
    def exit_status(self) -> int:
        return 1 if self.summary["fail"] else 0

    def header(self) -> dict:
        return {"schema": SCHEMA, "type": "header", "suites": self.suites, "config": self.config}

    def to_dict(self, timings: bool = True) -> dict:
        return {"schema": SCHEMA, "suites": self.suites, "config": self.config,
                "summary": self.summary,
                "records": [r.as_dict(timings) for r in self.records]}

    def json_lines(self, timings: bool = True) -> list[str]:
        lines = [json.dumps(self.header(), sort_keys=True)]
        for r in self.records:
            lines.append(json.dumps({"type": "claim", **r.as_dict(timings)}, sort_keys=True))
        lines.append(json.dumps({"type": "summary", **self.summary}, sort_keys=True))
        return lines

    def canonical(self) -> str:
        """Report text without timings; equal across runs with equal config."""
        return "\n".join(self.json_lines(timings=False))

    def table(self) -> str:
        rows = [("status", "claim", "expected", "computed", "detail")]
        for r in self.records:
            note = r.detail + (f" [{r.coverage}]" if r.coverage else "")
            rows.append((r.status.upper(), r.id, _show(r.expected), _show(r.computed), note))
        widths = [max(len(row[i]) for row in rows) for i in range(4)]
        out = ["  ".join(c.ljust(w) for c, w in zip(row[:4], widths)) + "  " + row[4]
               for row in rows]
        s = self.summary
        out.append(f"{s['pass']} passed, {s['fail']} failed, {s['skipped']} skipped, "
                   f"{s['total']} claims")
        return "\n".join(out)


def _show(v) -> str:
    if v is None:
        return "-"
    return bounds.format_value(v) if not isinstance(v, bool) else str(v).lower()


# ---------------------------------------------------------------------------
# running


def audit_config(overrides: dict | None = None) -> config.Config:
    """Environment caps, then audit working defaults for unset fields, then explicit overrides."""
    base = config.Config.from_env()
    values = base.as_dict()
    for field, v in AUDIT_DEFAULTS.items():
        if not _env_set(field):
            values[field] = max(values[field], v)
    for field, v in (overrides or {}).items():
        if v is not None:
            values[field] = v
    return config.Config(**values)


def _env_set(field: str) -> bool:
    return bool(os.environ.get(config._ENV[field]))


def run_claim(c: Claim) -> Record:
    t0 = time.perf_counter()
    try:
        computed, detail = c.compute()
        status = "pass" if _equal(computed, c.expected) else "fail"
    except CapExceeded as exc:
        computed, detail, status = None, f"skipped: {exc}", "skipped"
    ms = int(round((time.perf_counter() - t0) * 1000))
    return Record(c.id, c.anchor, c.expr, c.expected, c.tag, computed, status, detail,
                  c.coverage, ms)


def _equal(a, b) -> bool:
    if isinstance(a, bool) or isinstance(b, bool):
        return type(a) is type(b) and a == b
    return a == b


def run_audit(suites: list[str] | None = None, workers: int = 1,
              overrides: dict | None = None) -> AuditReport:
    names = list(SUITES) if not suites or suites == ["all"] else suites
    for n in names:
        if n not in SUITES:
            raise InvgenError(f"unknown suite {n!r}; known: {', '.join(SUITES)}")
    cfg = audit_config(overrides)
    previous = config.get_config()
    config.set_config(cfg)
    try:
        claims = [c for n in names for c in SUITES[n]()]
        ids = [c.id for c in claims]
        if len(set(ids)) != len(ids):
            raise InvgenError("duplicate claim ids")
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                records = list(pool.map(run_claim, claims))
        else:
            records = [run_claim(c) for c in claims]
    finally:
        config.set_config(previous)
    snapshot = {"caps": cfg.as_dict(), "workers": workers, "seed": 0}
    return AuditReport(names, records, snapshot)


# ---------------------------------------------------------------------------
# helpers


def group(text: str) -> PermGroup:
    return build(parse_group_expr(text)).materialize()


def _di(G: PermGroup) -> int:
    # the oracle fallback is hopeless beyond the lattice cap; report the claim as skipped
    cap = config.get_config().lattice_order
    if G.order > cap:
        raise CapExceeded("lattice order", G.order, cap)
    return di(G).value


def cycles1(perm) -> tuple:
    """1-based cycles of a permutation, as used in expression text."""
    out = []
    seen = set()
    for x in range(len(perm)):
        if x in seen or perm[x] == x:
            continue
        cyc = [x]
        seen.add(x)
        y = perm[x]
        while y != x:
            cyc.append(y)
            seen.add(y)
            y = perm[y]
        out.append(tuple(v + 1 for v in cyc))
    return tuple(out)


def subgroup_text(parent: str, H: PermGroup) -> str:
    gens = [g for g in H.generators if any(g[i] != i for i in range(len(g)))]
    return str(Subgroup(parse_group_expr(parent), tuple(cycles1(g) for g in gens) or ((),)))


def quotient_group(G: PermGroup, mask: int) -> PermGroup:
    return small_quotient(G, mask).materialize()


def _order(mask: int) -> int:
    return bin(mask).count("1")


def lattice_subgroups(text: str):
    """(text, group) for one representative of every subgroup class."""
    G = group(text)
    L = subgroup_lattice(G)
    for c in L.all_classes:
        H = L.subgroup(c).materialize()
        yield c, H


def is_2group(n: int) -> bool:
    return n & (n - 1) == 0


def is_extraspecial_plus_32(H: PermGroup) -> bool:
    """Order 32, exponent 4, |Z| = 2 = |G'| with G' = Z, and 19 involutions."""
    if H.order != 32 or int(H.element_orders.max()) != 4:
        return False
    Z = center_mask(H)
    if _order(Z) != 2 or derived_mask(H, H.generator_indices.tolist()) != Z:
        return False
    return int((H.element_orders == 2).sum()) == 19


def is_fpf_3u2(H: PermGroup, u: int) -> bool:
    """H is 3^u:2 with trivial centre (the involution inverts the normal 3^u)."""
    if H.order != 2 * 3 ** u:
        return False
    threes = np.flatnonzero(H.element_orders == 3)
    T = H.span_mask([0] + threes.tolist())
    if _order(T) != 3 ** u:
        return False
    return center_mask(H) == 1


def _bool_claim(cid, anchor, expr, tag, fn, coverage=""):
    return Claim(cid, anchor, expr, True, tag, fn, coverage)


# ---------------------------------------------------------------------------
# Proposition 4.1: small transitive degrees


DEGREE_LISTS = {
    8: ["Q8", "C(8)", "D8oD8", "wr(C(2),A(4))", "wr(C(2),S(4))", "wr(A(4),C(2))",
        "wr(S(4),C(2))", "PGL(2,7)"],
    9: ["C(9)", "wr(C(3),C(3))", "wr(C(3),S(3))", "wr(S(3),C(3))", "wr(S(3),S(3))", "PGaL(2,8)"],
    10: ["wr(C(2),C(5))", "wr(C(5),C(2))", "wr(D(5),C(2))", "wr(C(2),D(5))",
         "PGL(2,9)", "PGaL(2,9)"],
    12: ["wr(C(4),S(3))", "wr(C(3),C(4))", "wr(C(2),C(6))", "wr(C(3),S(4))", "wr(C(2),D(6))"],
    16: ["wr(C(4),C(4))", "wr(C(2),C(8))", "wr(C(2),D(8))"],
    18: ["wr(C(6),S(3))", "wr(C(9),C(2))", "wr(C(6),C(3))", "wr(D(9),C(2))"],
}
DEGREE_BOUND = {8: 4, 9: 3, 10: 3, 12: 4, 16: 6, 18: 4}
ANCHOR_41 = {6: "Prop 4.1(i)", 8: "Prop 4.1(ii)", 9: "Prop 4.1(iii)", 10: "Prop 4.1(iv)",
             12: "Prop 4.1(v)", 16: "Prop 4.1(vi)", 18: "Prop 4.1(vii)"}


def suite_prop41() -> list[Claim]:
    claims = []
    trans6 = [(c, H) for c, H in lattice_subgroups("S(6)") if is_transitive(H)]
    claims.append(Claim("prop4.1/deg6/count", "Prop 4.1(i)", "S(6)", 16, "DERIVED",
                        lambda: (len(trans6), "transitive subgroup classes of Sym(6)"),
                        "complete"))
    for k, (c, H) in enumerate(trans6):
        text = subgroup_text("S(6)", H)
        if H.order == 720:
            fn = (lambda H=H: (_di(H), "d_I(S6)"))
            claims.append(Claim(f"prop4.1/deg6/{k:02d}", "Prop 4.1(i)", text, 3, "PAPER", fn,
                                "complete"))
        else:
            fn = (lambda H=H: (_di(H) <= 2, f"order {H.order}, d_I={_di(H)}"))
            claims.append(_bool_claim(f"prop4.1/deg6/{k:02d}", "Prop 4.1(i)", text, "PAPER", fn,
                                      "complete"))
    # degree 8: every transitive 2-group lies in a Sylow 2-subgroup C2 wr C2 wr C2
    W = "wr(wr(C(2),C(2)),C(2))"
    two = [(c, H) for c, H in lattice_subgroups(W) if is_transitive(H)]
    for k, (c, H) in enumerate(two):
        _deg8_claims(claims, f"prop4.1/deg8/2grp{k:03d}", subgroup_text(W, H), H)
    for k, text in enumerate(DEGREE_LISTS[8]):
        _deg8_claims(claims, f"prop4.1/deg8/cat{k:02d}", text, None)
    for n in (9, 10, 12, 16, 18):
        for k, text in enumerate(DEGREE_LISTS[n]):
            def fn(text=text, n=n):
                G = group(text)
                assert G.degree == n and is_transitive(G), text
                v = _di(G)
                return v <= DEGREE_BOUND[n], f"order {G.order}, d_I={v}"
            claims.append(_bool_claim(f"prop4.1/deg{n}/{k:02d}", ANCHOR_41[n], text, "PAPER", fn,
                                      "catalog-partial"))
    return claims


def _deg8_claims(claims, cid, text, H):
    def get():
        return H if H is not None else group(text)

    def bound():
        G = get()
        v = _di(G)
        return v <= 4, f"order {G.order}, d_I={v}"

    def iff():
        G = get()
        v = _di(G)
        return (v == 4) == is_extraspecial_plus_32(G), f"d_I={v}"
    claims.append(_bool_claim(cid + "/bound", "Prop 4.1(ii)", text, "PAPER", bound, "catalog-partial"))
    claims.append(_bool_claim(cid + "/iff", "Prop 4.1(ii)", text, "PAPER", iff, "catalog-partial"))


# ---------------------------------------------------------------------------
# Propositions 4.2 to 4.5


def suite_prop42() -> list[Claim]:
    claims = []
    S3 = group("S(3)")
    for m in range(1, 6):
        text = f"wr(C({m}),S(3))"
        Cm = group(f"C({m})")
        large = [(c, H) for c, H in lattice_subgroups(text) if is_large_subgroup(H, Cm, S3)]
        claims.append(Claim(f"prop4.2/m{m}/count", "Prop 4.2", text, len(large), "DERIVED",
                            lambda n=len(large): (n, "large subgroup classes"), "complete"))
        for k, (c, H) in enumerate(large):
            fn = (lambda H=H: (_di(H) <= 4, f"order {H.order}, d_I={_di(H)}"))
            claims.append(_bool_claim(f"prop4.2/m{m}/{k:03d}", "Prop 4.2",
                                      subgroup_text(text, H), "PAPER", fn, "complete"))
    return claims


def suite_prop43() -> list[Claim]:
    claims = []
    for u in (1, 2, 3):
        text = f"wr(C(2),S({u}))"
        for k, (c, H) in enumerate(lattice_subgroups(text)):
            sub = subgroup_text(text, H)

            def bound(H=H, u=u):
                v = _di(H)
                return v <= u, f"order {H.order}, d_I={v}"

            def equality(H=H, u=u):
                v = _di(H)
                ok = v != u or (is_2group(H.order) and u % 2 == 0)
                return ok, f"order {H.order}, d_I={v}, u={u}"
            claims.append(_bool_claim(f"prop4.3/u{u}/{k:03d}/bound", "Prop 4.3", sub, "PAPER",
                                      bound, "complete"))
            claims.append(_bool_claim(f"prop4.3/u{u}/{k:03d}/equality", "Prop 4.3", sub, "PAPER",
                                      equality, "complete"))
    return claims


def suite_prop44() -> list[Claim]:
    claims = []
    for u in (1, 2, 3):
        text = "dp(" + ",".join(["S(3)"] * u) + ")" if u > 1 else "S(3)"
        subs = list(lattice_subgroups(text))
        for k, (c, H) in enumerate(subs):
            def fn(H=H, u=u):
                v = _di(H)
                exc = is_fpf_3u2(H, u)
                ok = v == u + 1 if exc else v <= u
                return ok, f"order {H.order}, d_I={v}" + (", 3^u:2 with Z=1" if exc else "")
            claims.append(_bool_claim(f"prop4.4/u{u}/{k:03d}", "Prop 4.4", subgroup_text(text, H),
                                      "PAPER", fn, "complete"))
        count = sum(is_fpf_3u2(H, u) for c, H in subs)
        claims.append(Claim(f"prop4.4/u{u}/exceptions", "Prop 4.4", text, 1, "DERIVED",
                            lambda n=count: (n, "classes isomorphic to 3^u:2 with Z=1"),
                            "complete"))
    return claims


PROP45_EXCEPTIONS = {2: {6}, 3: {21, 168}, 4: {720}}


@lru_cache(maxsize=None)
def gl4_2_overgroups() -> tuple:
    """The irreducible maximal subgroups A7, Sp4(2) and GammaL2(4) of GL4(2), as subgroups."""
    G = group("GL(4,2)")
    orders = G.element_orders
    x = int(np.flatnonzero(orders == 7)[0])
    A7 = next(G.subgroup_from_mask(m) for y in range(G.order)
              if _order(m := G.span_mask([x, y])) == 2520)
    E = G.elements
    ident = np.arange(G.degree)
    z = next(int(i) for i in np.flatnonzero(orders == 3) if not (E[i] == ident).any())
    GaL = G.subgroup(normalizer(G, G.span(np.array([z])), [z]).tolist())
    Sp = group("Sp(4,2)")
    return (("A7", A7.materialize()), ("Sp4(2)", Sp), ("GammaL2(4)", GaL.materialize()))


def suite_prop45() -> list[Claim]:
    claims = []
    for n in (2, 3):
        text = f"GL({n},2)"
        for k, (c, H) in enumerate(lattice_subgroups(text)):
            if H.order == 1 or not matgroup.is_irreducible(matgroup.linear_subgroup(H, n, 2)):
                continue
            claims.append(_prop45_claim(f"prop4.5/n{n}/{k:03d}", subgroup_text(text, H), H, n,
                                        "complete"))
    for name, M in gl4_2_overgroups():
        L = subgroup_lattice(M)
        for k, c in enumerate(L.all_classes):
            H = L.subgroup(c).materialize()
            if H.order == 1 or not matgroup.is_irreducible(matgroup.linear_subgroup(H, 4, 2)):
                continue
            claims.append(_prop45_claim(f"prop4.5/n4/{name}/{k:03d}", subgroup_text("GL(4,2)", H),
                                        H, 4, "maximal-overgroups"))

    def whole():
        v = _di(group("GL(4,2)"))
        return v <= 2, f"d_I={v}"
    claims.append(_bool_claim("prop4.5/n4/GL4(2)", "Prop 4.5", "GL(4,2)", "PAPER", whole,
                              "maximal-overgroups"))
    for text, v in (("GL(2,2)", 2), ("F21", 2), ("GL(3,2)", 2), ("Sp(4,2)", 3)):
        claims.append(Claim(f"prop4.5/exception/{text}", "Prop 4.5", text, v, "DERIVED",
                            lambda text=text: (_di(group(text)), "exception list member")))
    return claims


def _prop45_claim(cid, text, H, n, coverage):
    def fn():
        v = _di(H)
        ok = 2 * v <= n or H.order in PROP45_EXCEPTIONS[n]
        return ok, f"order {H.order}, d_I={v}"
    return _bool_claim(cid, "Prop 4.5", text, "PAPER", fn, coverage)


# ---------------------------------------------------------------------------
# subdirect products: Lemma 4.7, Proposition 4.8, Corollary 4.10


def _factors(text: str):
    e = parse_group_expr(text)
    if isinstance(e, DirectProduct) and len(e.factors) == 2:
        return str(e.factors[0]), str(e.factors[1])
    if isinstance(e, Subdirect):
        return str(e.left), str(e.right)
    return None


def suite_lemma47() -> list[Claim]:
    claims = []
    texts = [c.text for c in catalog() if _factors(c.text)] + [
        "dp(C(2),C(3))", "dp(C(4),C(9))", "dp(A(5),S(3))", "dp(F21,B(4))", "dp(Q8,C(3))"]
    seen = set()
    for text in texts:
        if text in seen:
            continue
        seen.add(text)
        h, k = _factors(text)
        if have_common_image(group(h), group(k)):
            continue

        def fn(text=text, h=h, k=k):
            a, b, v = _di(group(h)), _di(group(k)), _di(group(text))
            return v <= max(a, b), f"d_I={v}, d_I(H)={a}, d_I(K)={b}"
        claims.append(_bool_claim(f"lemma4.7/{text}", "Lemma 4.7", text, "PAPER", fn,
                                  "catalog-partial"))
    return claims


C5 = "lin(mat(2; 0,1,0,0 | 0,0,1,0 | 0,0,0,1 | 1,1,1,1))"
C15 = "lin(mat(2; 0,1,0,0 | 0,0,1,0 | 0,0,0,1 | 1,1,0,0))"
C7 = "lin(mat(2; 0,1,0 | 0,0,1 | 1,1,0))"
K_T = {1: "S(3)", 2: "B(4)", 3: "B(6)"}

# (id, expression, d_I(K) or None, kind, value, anchor)
PROP48 = [
    ("i/S3xS3", "dp(S(3),S(3))", "S(3)", "le", 1, "Prop 4.8(i)"),
    ("i/S3xS3-C2", "subd(S(3); (1,2,3); S(3); (1,2,3))", "S(3)", "le", 1, "Prop 4.8(i)"),
    ("i/S3xA5", "dp(S(3),A(5))", "A(5)", "le", 1, "Prop 4.8(i)"),
    ("i/F21xS3", "dp(F21,S(3))", "S(3)", "le", 1, "Prop 4.8(i)"),
    ("i/F21xF21-C3", "subd(F21; (1,2,3,4,5,6,7); F21; (1,2,3,4,5,6,7))", "F21", "le", 1,
     "Prop 4.8(i)"),
    ("i/L32xS3", "dp(GL(3,2),S(3))", "S(3)", "le", 1, "Prop 4.8(i)"),
    ("i/S6xS3", "dp(S(6),S(3))", "S(3)", "le", 2, "Prop 4.8(i)"),
    ("i/S6xC2", "dp(S(6),C(2))", "C(2)", "le", 2, "Prop 4.8(i)"),
    ("i/S6xS3-C2", "subd(S(6); (1,2,3); S(3); (1,2,3))", "S(3)", "le", 2, "Prop 4.8(i)"),
    ("ii/S3xF21", "dp(S(3),F21)", None, "eq", 2, "Prop 4.8(ii)"),
    ("ii/S3xL32", "dp(S(3),GL(3,2))", None, "eq", 2, "Prop 4.8(ii)"),
    ("ii/S3xS6", "dp(S(3),S(6))", None, "eq", 3, "Prop 4.8(ii)"),
    ("ii/S3xS6-C2", "subd(S(3); (1,2,3); S(6); (1,2,3))", None, "eq", 3, "Prop 4.8(ii)"),
    ("iii/S6xF21", "dp(S(6),F21)", None, "eq", 3, "Prop 4.8(iii)"),
    ("iii/S6xL32", "dp(S(6),GL(3,2))", None, "eq", 3, "Prop 4.8(iii)"),
    ("iii/S6xS6", "dp(S(6),S(6))", None, "le", 4, "Prop 4.8(iii)"),
]
for _h_name, _h in (("C7", C7), ("F21", "F21"), ("L32", "GL(3,2)")):
    for _t, _k in K_T.items():
        PROP48.append((f"iv/{_h_name}x{_k}", f"dp({_h},{_k})", None, "eq", _t + 1, "Prop 4.8(iv)"))
PROP48_V = [("C5", C5), ("C15", C15), ("A5", None), ("S6", "Sp(4,2)")]


@lru_cache(maxsize=None)
def irreducible_a5_text() -> str:
    """An A5 inside Sp4(2) acting irreducibly on the natural module."""
    for c, H in lattice_subgroups("Sp(4,2)"):
        if H.order == 60 and matgroup.is_irreducible(matgroup.linear_subgroup(H, 4, 2)):
            return subgroup_text("Sp(4,2)", H)
    raise InvgenError("no irreducible A5 in Sp4(2)")   # pragma: no cover


def prop48_instances() -> list[tuple]:
    out = list(PROP48)
    for h_name, h in PROP48_V:
        h = h or irreducible_a5_text()
        for t in (1, 2):
            k = K_T[t]
            out.append((f"v/{h_name}x{k}", f"dp({h},{k})", None, "eq", t + 2, "Prop 4.8(v)"))
    out.append(("v/S6xS3-C2", "subd(S(6); (1,2,3); S(3); (1,2,3))", None, "eq", 3,
                "Prop 4.8(v)"))
    return out


def suite_prop48() -> list[Claim]:
    claims = []
    for cid, text, k_text, kind, value, anchor in prop48_instances():
        if kind == "le":
            def fn(text=text, k_text=k_text, value=value):
                v, dk = _di(group(text)), _di(group(k_text))
                return v <= dk + value, f"d_I={v}, d_I(K)={dk}"
            claims.append(_bool_claim(f"prop4.8/{cid}", anchor, text, "PAPER", fn))
        else:
            claims.append(Claim(f"prop4.8/{cid}", anchor, text, value, "PAPER",
                                lambda text=text: (_di(group(text)), "d_I")))
    return claims


def suite_cor410() -> list[Claim]:
    text = "dp(A(5),A(5))"

    def value():
        return _di(group(text)), "d_I(A5 x A5)"

    def witness():
        G = group(text)
        r = di(G)
        ok = len(r.witness) == 2 and is_invgen_cover(G, r.witness)
        return ok, f"classes {list(r.witness)}: " + ", ".join(
            conjugacy_classes(G).describe(c) for c in r.witness)
    return [
        Claim("cor4.10/A5^2", "Cor 4.10", text, 2, "PAPER", value),
        _bool_claim("cor4.10/A5^2/witness", "Cor 4.10", text, "PAPER", witness),
        Claim("cor4.10/A5", "Cor 4.10", "A(5)", 2, "PAPER", lambda: (_di(group("A(5)")), "r=1")),
    ]


# ---------------------------------------------------------------------------
# Proposition 4.11 and Theorem 2.8


def suite_prop411() -> list[Claim]:
    claims = []
    for n in range(3, 8):
        text = f"S({n})"
        claims.append(Claim(f"prop4.11/S{n}", "Prop 4.11(i)", text, 3 if n == 6 else 2, "PAPER",
                            lambda text=text: (_di(group(text)), "d_I")))
    for text in ("PGL(2,7)", "PGaL(2,8)", "PGaL(2,9)"):
        def fn(text=text):
            v = _di(group(text))
            return v <= 2, f"d_I={v}"
        claims.append(_bool_claim(f"prop4.11/{text}", "Prop 4.11(ii)", text, "PAPER", fn,
                                  "catalog-partial"))
    return claims


def _catalog_texts() -> list[str]:
    return [c.text for c in catalog()]


def _is_simple_nonabelian(G: PermGroup) -> bool:
    if G.order == 1:
        return False
    cd = composition_data(G)
    return cd.length == 1 and cd.abelian_factors == 0


def suite_thm28() -> list[Claim]:
    claims = []
    for text in _catalog_texts() + ["A(7)", "PGL(2,4)", "PGL(2,8)"]:
        G = group(text)
        if not _is_simple_nonabelian(G):
            continue
        claims.append(_bool_claim(f"thm2.8/{text}", "Thm 2.8", text, "PAPER",
                                  lambda G=G: (_di(G) <= 2, f"d_I={_di(G)}")))
    return claims


# ---------------------------------------------------------------------------
# catalog-wide inequalities: Theorem 2.5, Theorem 2.7, Lemma 2.2


def suite_thm25() -> list[Claim]:
    claims = []
    for text in _catalog_texts():
        G = group(text)
        for k, M in enumerate(minimal_normal_masks(G)):
            def fn(G=G, M=M):
                gens = G.subgroup_from_mask(M).generators
                abelian = is_abelian_mask(G, [G.index(g) for g in gens])
                delta = 1 if abelian else 2
                v, q = _di(G), _di(quotient_group(G, M))
                return v <= q + delta, f"d_I={v}, d_I(G/M)={q}, |M|={_order(M)}, delta={delta}"
            claims.append(_bool_claim(f"thm2.5/{text}/{k}", "Thm 2.5", text, "PAPER", fn,
                                      "catalog"))
    return claims


def suite_thm27() -> list[Claim]:
    claims = []
    seen = set()
    distinct = []
    for text in _catalog_texts():
        G = group(text)
        key = (G.degree, G.elements.tobytes())
        if key in seen:
            continue
        seen.add(key)
        distinct.append((text, G))

        def fn(G=G):
            v = _di(G)
            bound = bounds.half_n_bound(G.degree)
            return bound.allows(_half_n_name(G), v), \
                f"n={G.degree}, d_I={v}, floor(n/2)={bound.value}"
        claims.append(_bool_claim(f"thm2.7/{text}", "Thm 2.7", text, "PAPER", fn, "catalog"))

    def once():
        fired = [text for text, G in distinct
                 if _half_n_name(G) in bounds.half_n_bound(G.degree).exceptions
                 and _di(G) > G.degree // 2]
        return len(fired), "exception used by: " + ", ".join(fired)
    claims.append(Claim("thm2.7/S3-exception-once", "Thm 2.7", "S(3)", 1, "PAPER", once,
                        "catalog"))
    return claims


def _half_n_name(G: PermGroup) -> str | None:
    return "Sym(3)" if G.degree == 3 and G.order == 6 else None


def suite_lemma22() -> list[Claim]:
    claims = []
    for text in _catalog_texts():
        G = group(text)
        full = (1 << G.order) - 1
        for k, N in enumerate(normal_subgroup_masks(G)):
            if N in (1, full):
                continue

            def part_i(G=G, N=N):
                sub = G.subgroup_from_mask(N).materialize()
                v, q, n = _di(G), _di(quotient_group(G, N)), _di(sub)
                return v <= q + n, f"d_I={v}, d_I(G/N)={q}, d_I(N)={n}"
            claims.append(_bool_claim(f"lemma2.2/{text}/{k}/i", "Lemma 2.2(i)", text, "PAPER",
                                      part_i, "catalog"))
            gens = [G.index(g) for g in G.subgroup_from_mask(N).generators]
            if is_abelian_mask(G, gens):
                def part_ii(G=G, N=N):
                    sec = gmodule.make_section(G, N, 1)
                    v, q, dg = _di(G), _di(quotient_group(G, N)), gmodule.d_G(sec)
                    return v <= q + dg, f"d_I={v}, d_I(G/N)={q}, d_G(N)={dg}"
                claims.append(_bool_claim(f"lemma2.2/{text}/{k}/ii", "Lemma 2.2(ii)", text,
                                          "PAPER", part_ii, "catalog"))
    return claims


# ---------------------------------------------------------------------------
# explicit bound functions


def _const(v, detail=""):
    return lambda: (v, detail)


def e_scan(s_max: int = 10_000, p_max: int = 97):
    """Violations of E_sol <= E and of E <= s/2 over 2 <= s <= s_max, primes p <= p_max."""
    sol, half = [], []
    for p in bounds.primes_upto(p_max):
        for s in range(2, s_max + 1):
            e, es = bounds.E(s, p), bounds.E_sol(s, p)
            if es > e:
                sol.append((s, p, es, e))
            if e > Fraction(s, 2):
                half.append((s, p, e))
    return sol, half


@lru_cache(maxsize=None)
def _scan_cached():
    return e_scan()


def useful_grid_max() -> tuple[float, tuple[int, int]]:
    best, arg = 0.0, (2, 2)
    bs = sorted({2, 3, 4, 5, 6, 7, 8, 16, 64, 256, 1024} | {2 ** k for k in range(1, 21)})
    for b in bs:
        a_values = range(2, 2 ** 12) if b == 2 else [2 ** k for k in range(1, 21)] + list(range(2, 65))
        for a in a_values:
            r = bounds.useful_bound_check(a, b)
            if r > best:
                best, arg = r, (a, b)
    for a in (2 ** 13, 2 ** 16, 2 ** 20):
        r = bounds.useful_bound_check(a, 2)
        if r > best:
            best, arg = r, (a, 2)
    return best, arg


def suite_bounds() -> list[Claim]:
    E = bounds.E
    claims = [
        Claim("bounds/E(3,2)", "§5 r=2", "", 1, "PAPER", lambda: (E(3, 2), "")),
        Claim("bounds/E(3,3)", "§5 r=2", "", 1, "PAPER", lambda: (E(3, 3), "")),
        Claim("bounds/E(2,2)", "Cor 3.9", "", 1, "PAPER", lambda: (E(2, 2), "")),
        Claim("bounds/E(2,3)", "Cor 3.9", "", 1, "PAPER", lambda: (E(2, 3), "")),
        Claim("bounds/E(12,2)+E(12,3)+4", "§5 r=2", "", 11, "PAPER",
              lambda: (E(12, 2) + E(12, 3) + 4, f"E(12,2)={E(12, 2)}, E(12,3)={E(12, 3)}")),
        Claim("bounds/4E(16,2)+E(16,3)+6", "§5 r=2", "", 31, "PAPER",
              lambda: (4 * E(16, 2) + E(16, 3) + 6, f"E(16,2)={E(16, 2)}, E(16,3)={E(16, 3)}")),
        Claim("bounds/ws(12)", "Def 2.6", "", Fraction(9, 2), "DERIVED", lambda: (bounds.ws(12), "")),
        Claim("bounds/E_sol<=E", "Prop after Def 2.8", "", 0, "PAPER", _esol_claim),
        Claim("bounds/E<=s/2", "§5", "", 0, "PAPER",
              lambda: (len(_scan_cached()[1]), "2<=s<=10^4, p<=97")),
        Claim("bounds/ws<=floor(bs/sqrt(log s))", "Thm 2.12", "", 0, "PAPER", _ws_claim),
        _bool_claim("bounds/useful-ratio<=1.5", "Lemma 7.1", "", "DERIVED", _useful_claim),
        Claim("bounds/E2+E3>s/2-set", "§5 r=2", "", "2,4,6,12", "PAPER",
              lambda: (_exceptional(lambda s: E(s, 2) + E(s, 3) > Fraction(s, 2)), "2<=s<2000, s!=3")),
        Claim("bounds/4E2+E3>3s/2-set", "§5 r=2", "", "2,4,6,8,16", "PAPER",
              lambda: (_exceptional(lambda s: 4 * E(s, 2) + E(s, 3) > Fraction(3 * s, 2)),
                       "2<=s<2000, s!=3")),
        Claim("bounds/comp_red(6,2)", "Thm 1.4", "", 3, "PAPER",
              lambda: (bounds.comp_red_bound(6, 2).value,
                       f"exceptions {bounds.comp_red_bound(6, 2).exceptions}")),
    ]
    return claims


def _esol_claim():
    sol = _scan_cached()[0]
    first = ", ".join(f"E_sol({s},{p})={es} > E={e}" for s, p, es, e in sol[:3])
    return len(sol), f"violations; first: {first}" if sol else "none"


def _ws_claim():
    bad = [s for s in range(2, 10_001) if bounds.ws(s) > bounds.floor_b_sqrt_log(s)]
    return len(bad), f"2<=s<=10^4; first: {bad[:5]}" if bad else "none"


def _useful_claim():
    best, (a, b) = useful_grid_max()
    return best <= 1.5, f"max ratio {best:.6f} at a={a}, b={b}"


def _exceptional(pred) -> str:
    return ",".join(str(s) for s in range(2, 2000) if s != 3 and pred(s))


SUITES: dict[str, Callable[[], list[Claim]]] = {
    "prop4.1": suite_prop41,
    "prop4.2": suite_prop42,
    "prop4.3": suite_prop43,
    "prop4.4": suite_prop44,
    "prop4.5": suite_prop45,
    "lemma4.7": suite_lemma47,
    "prop4.8": suite_prop48,
    "cor4.10": suite_cor410,
    "prop4.11": suite_prop411,
    "thm2.5": suite_thm25,
    "thm2.7": suite_thm27,
    "thm2.8": suite_thm28,
    "lemma2.2": suite_lemma22,
    "bounds": suite_bounds,
}
