"""Command-line entry point: analyze, bounds, audit and catalog."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

from . import bounds
from .audit import SUITES, run_audit, _jsonable
from .constructions import build, build_matrix, catalog
from .invariable import d as d_gen
from .invariable import cover_instance, di
from .parser import ParseError, parse_group_expr
from .perm import CapExceeded, InvgenError, is_transitive, minimal_block_system
from .structure import composition_data, conjugacy_classes
from . import matgroup

__all__ = ["main", "parse_group_expr", "analyze"]


def analyze(text: str) -> dict:
    """Everything the ``analyze`` subcommand reports, as a dict."""
    e = parse_group_expr(text)
    G = build(e).materialize()
    n = G.degree
    out: dict = {"expr": str(e), "order": G.order, "degree": n}
    trans = is_transitive(G)
    out["transitive"] = trans
    out["primitive"] = trans and (n <= 1 or minimal_block_system(G) is None)
    table = conjugacy_classes(G)
    out["classes"] = len(table)
    out["d"] = d_gen(G)
    r = di(G)
    out["d_I"] = r.value
    out["d_I_method"] = r.method
    out["witness"] = [{"class": int(c), "order": table.classes[c].element_order,
                       "size": table.classes[c].size, "rep": table.describe(c)}
                      for c in r.witness]
    try:
        out["maximal_classes"] = len(cover_instance(G).maximal) if G.order > 1 else 0
    except CapExceeded:
        out["maximal_classes"] = None
    cd = composition_data(G)
    out["composition"] = {"length": cd.length, "abelian_factors": cd.abelian_factors,
                          "nonabelian_chief_factors": cd.nonabelian_chief_factors,
                          "factors": [f.name for f in cd.composition_factors]}
    out["bounds"] = _bounds_for(e, G, r.value)
    return out


def _bounds_for(e, G, value: int) -> list[dict]:
    n = G.degree
    rows = []
    half = bounds.half_n_bound(n)
    name = "Sym(3)" if n == 3 and G.order == 6 else None
    limit = half.exceptions.get(name, half.value)
    rows.append({"bound": "half-n", "value": limit, "slack": limit - value,
                 "holds": half.allows(name, value)})
    if G.order > 1 and n >= 2:
        if is_transitive(G):
            ratio = value * math.sqrt(math.log2(n)) / n
            rows.append({"bound": "transitive ratio d_I*sqrt(log n)/n", "value": round(ratio, 6)})
        if n >= 3 and is_transitive(G) and minimal_block_system(G) is None and math.log2(n) > 1:
            ratio = value * math.sqrt(math.log2(math.log2(n))) / math.log2(n)
            rows.append({"bound": "primitive ratio d_I*sqrt(log log n)/log n",
                         "value": round(ratio, 6)})
    M = build_matrix(e)
    if M is not None and M.p in (2, 3) and matgroup.is_completely_reducible(M):
        cr = bounds.comp_red_bound(M.n, M.p)
        label = str(e)
        exc = {"B(%d)" % M.n: str(e) == f"B({M.n})", "Sp4(2)": str(e) == "Sp(4,2)"}
        hit = next((k for k, v in exc.items() if v and k in cr.exceptions), None)
        lim = cr.exceptions[hit] if hit else cr.value
        rows.append({"bound": f"completely reducible, |F|={M.p}, n={M.n}",
                     "value": bounds.format_value(lim), "slack": bounds.format_value(lim - value),
                     "holds": cr.allows(hit, value), "group": label})
    return rows


def _print_analysis(rep: dict) -> None:
    w = rep["witness"]
    print(f"group      {rep['expr']}")
    print(f"order      {rep['order']}")
    print(f"degree     {rep['degree']}")
    print(f"transitive {str(rep['transitive']).lower()}")
    print(f"primitive  {str(rep['primitive']).lower()}")
    print(f"classes    {rep['classes']}")
    print(f"d          {rep['d']}")
    print(f"d_I        {rep['d_I']} ({rep['d_I_method']})")
    print("witness    " + (", ".join(f"class {x['class']} order {x['order']} {x['rep']}"
                                    for x in w) or "-"))
    mc = rep["maximal_classes"]
    print(f"maximal    {mc if mc is not None else 'over lattice cap'}")
    c = rep["composition"]
    print(f"comp.      length {c['length']}, abelian {c['abelian_factors']}, "
          f"nonabelian chief {c['nonabelian_chief_factors']}: {' '.join(c['factors']) or '-'}")
    for b in rep["bounds"]:
        extra = ""
        if "slack" in b:
            extra = f"  slack {b['slack']}  {'ok' if b['holds'] else 'VIOLATED'}"
        print(f"bound      {b['bound']}: {b['value']}{extra}")


def _parse_range(text: str) -> tuple[int, int]:
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError("expected a range a..b") from None
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError("need 1 <= a <= b")
    return lo, hi


def _parse_primes(text: str) -> list[int]:
    try:
        ps = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected a comma-separated list of primes") from None
    if not ps or not all(bounds.is_prime(p) for p in ps):
        raise argparse.ArgumentTypeError("every entry must be prime")
    return ps


BOUND_FIELDS = ["s", "p", "s_p", "lpp", "ws", "E_sol", "E"]


def _bounds_table(lo: int, hi: int, primes: list[int], fmt: str) -> str:
    rows = [bounds.bounds_row(s, p) for s in range(lo, hi + 1) for p in primes]
    if fmt == "json":
        return json.dumps([{k: _jsonable(v) for k, v in r.items()} for r in rows], indent=1)
    cells = [[bounds.format_value(r[k]) for k in BOUND_FIELDS] for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(BOUND_FIELDS)
        w.writerows(cells)
        return buf.getvalue().rstrip("\n")
    widths = [max(len(h), *(len(c[i]) for c in cells)) if cells else len(h)
              for i, h in enumerate(BOUND_FIELDS)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(BOUND_FIELDS, widths))]
    lines += ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells]
    return "\n".join(lines)


def _env_int(var: str):
    raw = os.environ.get(var)
    return int(raw) if raw else None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="invgen",
                                 description="Invariable generation of finite permutation groups.")
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="order, classes, d, d_I and bounds of a group expression")
    a.add_argument("expr")
    a.add_argument("--json", action="store_true")

    b = sub.add_parser("bounds", help="table of s_p, lpp, ws, E_sol and E")
    b.add_argument("--s-range", type=_parse_range, default=(2, 16))
    b.add_argument("--primes", type=_parse_primes, default=[2, 3])
    b.add_argument("--format", choices=["text", "csv", "json"], default="text")

    u = sub.add_parser("audit", help="check the claim suites by direct computation")
    u.add_argument("--suite", action="append", choices=["all", *SUITES],
                   help="suite to run (repeatable); default all")
    u.add_argument("--json", action="store_true", help="JSON lines instead of a table")
    u.add_argument("--workers", type=int, default=_env_int("INVGEN_WORKERS") or 1)
    u.add_argument("--cap-elements", type=int, default=None)
    u.add_argument("--cap-lattice-order", type=int, default=None)
    u.add_argument("--cap-oracle-combinations", type=int, default=None)

    c = sub.add_parser("catalog", help="list the built-in groups")
    c.add_argument("--json", action="store_true")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            return _cmd_analyze(args)
        if args.command == "bounds":
            lo, hi = args.s_range
            print(_bounds_table(lo, hi, args.primes, args.format))
            return 0
        if args.command == "audit":
            return _cmd_audit(args)
        return _cmd_catalog(args)
    except ParseError as exc:
        text = getattr(args, "expr", "")
        print(f"parse error: {exc}", file=sys.stderr)
        if text:
            print("  " + text, file=sys.stderr)
            print("  " + " " * exc.position + "^", file=sys.stderr)
        return 2
    except (InvgenError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:       # infrastructure failure, kept distinct from claim failure
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def _cmd_analyze(args) -> int:
    rep = analyze(args.expr)
    if args.json:
        print(json.dumps(rep, indent=1, default=str))
    else:
        _print_analysis(rep)
    return 0


def _cmd_audit(args) -> int:
    overrides = {"elements": args.cap_elements, "lattice_order": args.cap_lattice_order,
                 "oracle_combinations": args.cap_oracle_combinations}
    report = run_audit(args.suite, workers=max(1, args.workers), overrides=overrides)
    if args.json:
        print("\n".join(report.json_lines()))
    else:
        print(report.table())
    return report.exit_status


def _cmd_catalog(args) -> int:
    entries = catalog()
    if args.json:
        print(json.dumps([{"name": c.name, "expr": c.text, "families": list(c.families),
                           "expected": {k: {"value": _jsonable(v.value), "tag": v.tag,
                                            "anchor": v.anchor} for k, v in c.expected.items()}}
                          for c in entries], indent=1))
        return 0
    width = max(len(c.name) for c in entries)
    for c in entries:
        exp = ", ".join(f"{k}={_jsonable(v.value)}" for k, v in c.expected.items())
        print(f"{c.name.ljust(width)}  {c.text}  {exp}")
    return 0


if __name__ == "__main__":        # pragma: no cover
    sys.exit(main())
