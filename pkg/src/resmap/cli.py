"""Command-line front end.

Subcommands: classify, search, largest, reproduce, family, runs, bounds.
Output is CSV by default (UTF-8, header row, no quoting needed) or
JSON-lines with --json; --output writes atomically.  Exit codes: 0 ok or
table match, 1 reproduce mismatch, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from . import bounds, families, runs, tables
from .classmap import PowerMap, classify
from .search import SearchAborted, SearchSpec, largest_hits, run_search

SEARCH_COLUMNS = ("n", "p", "A", "k", "i", "j", "type", "ratio", "sigma")
RUN_COLUMNS = ("p", "a", "t", "value")
BOUND_COLUMNS = ("quantity", "computed", "bound", "holds", "witness")
FAMILY_COLUMNS = ("family", "p", "n", "A", "k", "kind", "i", "j", "verified")


def fmt_ratio(r: float) -> str:
    """Six decimal places, truncated (table convention)."""
    return f"{int(r * 10**6) / 10**6:.6f}"


def _emit(rows: list[dict], columns, args) -> None:
    """Render rows to stdout or atomically to --output."""
    lines = []
    if args.json:
        for row in rows:
            lines.append(json.dumps({c: row.get(c, "") for c in columns}))
    else:
        lines.append(",".join(columns))
        for row in rows:
            lines.append(",".join(str(row.get(c, "")) for c in columns))
    text = "\n".join(lines) + "\n"
    if getattr(args, "output", None):
        out_dir = os.path.dirname(os.path.abspath(args.output)) or "."
        fd, tmp = tempfile.mkstemp(dir=out_dir)
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(text)
            os.replace(tmp, args.output)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    else:
        sys.stdout.write(text)


def _sigma_str(sigma) -> str:
    return ";".join(str(v) for v in sigma) if sigma else ""


def _hit_rows(hits) -> list[dict]:
    rows = []
    for h in hits:
        base = {"n": h.n, "p": h.p, "A": h.a, "k": h.k, "type": h.type,
                "ratio": fmt_ratio(h.ratio), "sigma": _sigma_str(h.sigma)}
        if h.type in ("iii", "iv"):
            for i, j in h.witnesses:
                rows.append({**base, "i": i, "j": j})
        elif h.type == "iib":
            for i in h.witnesses:
                rows.append({**base, "i": i, "j": i})
        else:
            rows.append({**base, "i": "", "j": ""})
    return rows


# ---------------------------------------------------------------------------


def cmd_classify(args) -> int:
    if 2 * abs(args.A) >= args.p:
        raise ValueError(f"|A|={abs(args.A)} is not below p/2={args.p / 2}")
    f = PowerMap(args.p, args.A, args.k)
    res = classify(f, args.n)
    if args.csv or args.json:
        rows = []
        base = {"n": args.n, "p": f.p, "A": f.a, "k": f.k,
                "ratio": fmt_ratio(f.p / args.n), "sigma": _sigma_str(res.sigma)}
        for i, j in res.type_iii_witnesses:
            rows.append({**base, "i": i, "j": j, "type": "iii"})
        for i, j in res.type_iv_witnesses:
            rows.append({**base, "i": i, "j": j, "type": "iv"})
        for t in ("i", "iia", "iib"):
            if res.has_type(t):
                wit = res.type_iib_witnesses if t == "iib" else ()
                if wit:
                    rows.extend({**base, "i": i, "j": i, "type": t} for i in wit)
                else:
                    rows.append({**base, "i": "", "j": "", "type": t})
        _emit(rows, SEARCH_COLUMNS, args)
        return 0
    print(f"map x -> {f.a} x^{f.k} mod {f.p}   (d={f.d}, L={f.level}, n={args.n})")
    for i, t in enumerate(res.targets):
        print(f"  class {i} -> {sorted(t)}")
    print(f"  all classes fixed: {res.is_type_i}")
    print(f"  class permutation: {res.is_type_iia}"
          + (f"  sigma={res.sigma}" if res.is_type_iia else ""))
    print(f"  fixed classes: {list(res.type_iib_witnesses)}")
    print(f"  one-class pairs: {list(res.type_iii_witnesses)}")
    print(f"  missed pairs: {len(res.type_iv_witnesses)}")
    return 0


def _parse_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    v = int(text)
    return v, v


def _spec_from_args(args) -> SearchSpec:
    n_lo, n_hi = _parse_range(args.n)
    windows = []
    for n in range(n_lo, n_hi + 1):
        lo = max(args.p_min, args.p_min_mult * n + args.p_min_add)
        hi = args.p_max if args.p_max_mult == 0 else min(args.p_max, args.p_max_mult * n + args.p_max_add)
        if hi > lo:
            windows.append((n, lo, hi))
    k_signed = tuple(int(v) for v in args.k_signed.split(",")) if args.k_signed else ()
    return SearchSpec(
        windows=tuple(windows),
        k_mode=args.k,
        k_signed=k_signed,
        target_types=frozenset(args.type.split(",")),
        exclude_unit_maps=not args.keep_unit_maps,
        exclude_sqrt_unit_odd_n=not args.keep_sqrt_odd,
        ratio_above=args.ratio_above,
    )


def _merge_hit_rows(rows: list[dict]) -> list[dict]:
    """Collapse rows identical up to k (then up to A) into semicolon lists.

    Display-only convenience mirroring the bundled tables' merged style;
    the canonical output stays one row per (A, k, witness).
    """
    for col in ("k", "A"):
        grouped: dict[tuple, list] = {}
        order = []
        for row in rows:
            key = tuple((c, row[c]) for c in SEARCH_COLUMNS if c != col)
            if key not in grouped:
                grouped[key] = []
                order.append(key)
            grouped[key].append(str(row[col]))
        rows = []
        for key in order:
            row = dict(key)
            row[col] = ";".join(dict.fromkeys(grouped[key]))
            rows.append(row)
    return rows


def cmd_search(args) -> int:
    spec = _spec_from_args(args)
    try:
        if args.largest:
            hits = largest_hits(spec, args.largest, threads=args.threads)
        else:
            hits = run_search(
                spec, threads=args.threads,
                checkpoint_path=args.checkpoint, max_primes=args.max_primes,
            )
    except SearchAborted as exc:
        print(f"aborted: {exc}", file=sys.stderr)
        return 3
    rows = _hit_rows(hits)
    if args.merged:
        rows = _merge_hit_rows(rows)
    _emit(rows, SEARCH_COLUMNS, args)
    return 0


def cmd_reproduce(args) -> int:
    missing, extra, total = tables.reproduce(args.table, scale=args.scale, threads=args.threads)
    if not missing and not extra:
        print(f"{args.table}: match ({total} rows)")
        return 0
    for row in missing:
        print(f"{args.table}: missing {row}")
    for row in extra:
        print(f"{args.table}: extra   {row}")
    return 1


def _instance_rows(instances) -> list[dict]:
    rows = []
    for inst in instances:
        for c in inst.claims:
            rows.append({
                "family": inst.family, "p": inst.p, "n": inst.n, "A": c.a,
                "k": c.k, "kind": c.kind,
                "i": "" if c.i is None else c.i,
                "j": "" if c.j is None else c.j,
                "verified": inst.verified,
            })
    return rows


def cmd_family(args) -> int:
    fam = args.theorem
    n_lo, n_hi = _parse_range(args.n) if args.n else (None, None)
    insts = []
    if fam == "ex13":
        insts = [families.ex13_predict(args.p, n_lo, args.sign)]
    elif fam == "t22":
        if args.p is None:  # scan mode
            for p, t in families.find_pattern_primes(args.p_max, args.t_min):
                insts.append(families.t22_predict(p, t, families.t22_smallest_n(p, t)))
        else:
            insts = [families.t22_predict(args.p, args.t, n_lo)]
    elif fam == "t23":
        insts = [families.t23_predict(args.p, args.t, n_lo)]
    elif fam == "t24":
        insts = [families.t24_predict(args.p, args.T, n_lo)]
    elif fam == "t25":
        insts = [families.t25_predict(args.p, args.t1, args.t2, n_lo)]
    elif fam == "t26":
        insts = [families.t26_predict(args.p, args.a, args.t, args.u, n_lo)]
    elif fam == "t27":
        insts = [families.t27_predict(args.p, args.T, n_lo)]
    elif fam == "t28":
        if args.p is not None:
            insts = [families.t28_predict(args.p, n_lo)]
        else:
            insts = families.t28_scan(n_lo, n_hi, w_min=args.w_min)
    else:
        raise ValueError(f"unknown family {fam!r}")
    insts = [families.verify(i) if i.verified is None else i for i in insts]
    _emit(_instance_rows(insts), FAMILY_COLUMNS, args)
    return 0


def cmd_runs(args) -> int:
    rows = []
    if args.p is not None:
        recs = runs.cubic_runs(args.p) if args.cubic else runs.qr_runs(args.p)
        recs = [r for r in recs if r.t >= args.t_min]
    else:
        recs = runs.run_census(args.p_max, args.t_min,
                               residue_mod4=args.mod4, dedup=not args.no_dedup)
    for r in recs:
        rows.append({"p": r.p, "a": r.a, "t": r.t, "value": r.value})
    _emit(rows, RUN_COLUMNS, args)
    return 0


def _bound_row(rep: bounds.BoundReport) -> dict:
    wit = ";".join(f"{k}={v}" for k, v in rep.witness.items())
    return {"quantity": rep.quantity, "computed": f"{rep.computed:.9g}",
            "bound": f"{rep.bound:.9g}", "holds": rep.holds, "witness": wit}


def cmd_bounds(args) -> int:
    check = args.check
    reports = []
    if check == "kloosterman":
        reports = [bounds.kloosterman_max(args.p)]
    elif check == "binomial":
        reports = [bounds.binomial_sum_max(args.p, args.k)]
    elif check == "fourier":
        reports = [bounds.fourier_l1(args.p, args.n, args.j)]
    elif check == "intersection":
        reports = [bounds.intersection_error(PowerMap(args.p, args.A, args.k), args.n)]
    elif check == "mij":
        m = bounds.mij_count(args.p, args.C, args.n, args.i, args.j)
        rows = [{"quantity": f"mij(p={m.p};C={m.C};n={m.n};i={m.i};j={m.j})",
                 "computed": m.count, "bound": f"{m.final_bound:.9g}",
                 "holds": m.holds, "witness": f"interval_bound={m.interval_bound}"}]
        _emit(rows, BOUND_COLUMNS, args)
        return 0
    elif check == "charsum":
        reports = bounds.character_sum_S(args.p, args.n, args.C, args.i, args.j, args.L)
    elif check == "thresholds":
        th = bounds.thresholds(args.n, args.k1)
        rows = [{"quantity": name, "computed": val, "bound": "", "holds": "", "witness": ""}
                for name, val in th.items()]
        _emit(rows, BOUND_COLUMNS, args)
        return 0
    else:
        raise ValueError(f"unknown check {check!r}")
    _emit([_bound_row(r) for r in reports], BOUND_COLUMNS, args)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="resmap",
        description="Residue-class behavior of monomial permutations mod p.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="JSON-lines output")
        p.add_argument("--output", help="write atomically to this file")
        p.add_argument("--threads", type=int, default=None,
                       help="worker threads (default: RESMAP_THREADS or cpu count)")

    c = sub.add_parser("classify", help="classify one map at one modulus")
    c.add_argument("p", type=int)
    c.add_argument("A", type=int)
    c.add_argument("k", type=int)
    c.add_argument("n", type=int)
    c.add_argument("--csv", action="store_true")
    common(c)
    c.set_defaults(fn=cmd_classify)

    s = sub.add_parser("search", help="exhaustive map search")
    s.add_argument("--n", required=True, help="modulus or range LO..HI")
    s.add_argument("--p-min", type=int, default=3)
    s.add_argument("--p-max", type=int, default=1000)
    s.add_argument("--p-min-mult", type=int, default=0, help="lower bound mult*n + add")
    s.add_argument("--p-min-add", type=int, default=0)
    s.add_argument("--p-max-mult", type=int, default=0, help="upper bound mult*n + add")
    s.add_argument("--p-max-add", type=int, default=0)
    s.add_argument("--k", choices=("all", "halfp", "signed"), default="all")
    s.add_argument("--k-signed", default="", help="comma list for --k signed")
    s.add_argument("--type", default="iii", help="comma subset of i,iia,iib,iii,iv")
    s.add_argument("--ratio-above", type=float, default=None)
    s.add_argument("--keep-unit-maps", action="store_true",
                   help="do not skip x -> +-x")
    s.add_argument("--keep-sqrt-odd", action="store_true",
                   help="do not skip x -> +-x^((p+1)/2) at odd moduli")
    s.add_argument("--largest", type=int, default=None,
                   help="restrict to this many largest hit primes per modulus")
    s.add_argument("--merged", action="store_true",
                   help="collapse rows differing only in k (then A) into lists")
    s.add_argument("--checkpoint", default=None)
    s.add_argument("--max-primes", type=int, default=None,
                   help="shard limit per invocation (abort + checkpoint beyond)")
    common(s)
    s.set_defaults(fn=cmd_search)

    r = sub.add_parser("reproduce", help="recompute a bundled table and diff")
    r.add_argument("table", choices=tables.TABLE_IDS)
    r.add_argument("--scale", choices=("desk", "full"), default="desk")
    common(r)
    r.set_defaults(fn=cmd_reproduce)

    f = sub.add_parser("family", help="construct and verify family instances")
    f.add_argument("theorem", choices=("ex13", "t22", "t23", "t24", "t25", "t26", "t27", "t28"))
    f.add_argument("--p", type=int, default=None)
    f.add_argument("--n", default=None, help="modulus or range LO..HI")
    f.add_argument("--t", type=int, default=None)
    f.add_argument("--T", type=int, default=None)
    f.add_argument("--t1", type=int, default=None)
    f.add_argument("--t2", type=int, default=None)
    f.add_argument("--a", type=int, default=None)
    f.add_argument("--u", type=int, default=None)
    f.add_argument("--sign", type=int, default=1, choices=(1, -1))
    f.add_argument("--p-max", type=int, default=100000, help="t22 scan limit")
    f.add_argument("--t-min", type=int, default=9, help="t22 scan threshold")
    f.add_argument("--w-min", type=int, default=2,
                   help="t28 scan: smallest p - n (4 matches the bundled table)")
    common(f)
    f.set_defaults(fn=cmd_family)

    u = sub.add_parser("runs", help="constant-character run census")
    u.add_argument("--p", type=int, default=None, help="single prime")
    u.add_argument("--p-max", type=int, default=100000)
    u.add_argument("--t-min", type=int, default=25)
    u.add_argument("--mod4", type=int, default=None, choices=(1, 3))
    u.add_argument("--no-dedup", action="store_true",
                   help="list reflected intervals too")
    u.add_argument("--cubic", action="store_true",
                   help="runs of the cubic power instead of the symbol")
    common(u)
    u.set_defaults(fn=cmd_runs)

    b = sub.add_parser("bounds", help="exponential-sum and counting bound checks")
    b.add_argument("check", choices=("kloosterman", "binomial", "fourier",
                                     "intersection", "mij", "charsum", "thresholds"))
    b.add_argument("--p", type=int, default=None)
    b.add_argument("--k", type=int, default=None)
    b.add_argument("--n", type=int, default=None)
    b.add_argument("--j", type=int, default=None)
    b.add_argument("--i", type=int, default=None)
    b.add_argument("--A", type=int, default=None)
    b.add_argument("--C", type=int, default=None)
    b.add_argument("--L", type=int, default=None)
    b.add_argument("--k1", type=int, default=None, help="|k-1| for the small-k thresholds")
    common(b)
    b.set_defaults(fn=cmd_bounds)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, IndexError, KeyError, ArithmeticError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
