"""Command-line interface.

Exit status: 0 on success, 1 when a verification fails, 2 on bad usage or
input (including exhausted budgets).  Every run writes one JSON log line to
stderr and, with ``--log``, appends it to that file.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path
from typing import Sequence

from . import __version__
from .construction import ConstructionParams, admissible_qs, build_generator, parse_q
from .convmodel import bounds, column_bound, column_distance_bruteforce, profile
from .descriptor import canonical_json, descriptor_to_dict, dumps, read_descriptor
from .errors import BudgetExceeded, MDPError
from .explorer import (
    PROBE_CONFIG_LIMIT,
    ProbeConfig,
    SearchSpace,
    min_field_frontier,
    search_mdp,
    span_invariance,
    subspace_probe,
    valid_probe_configs,
)
from .fieldcore import field_build
from .mdpcheck import classify, dual_mdp_check


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _sets(text: str) -> tuple:
    """'1,2;3' -> ((1, 2), (3,))"""
    try:
        return tuple(tuple(int(x) for x in part.split(",") if x.strip()) for part in text.split(";"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected sets like '1,2;3', got {text!r}")


def _q_field(text: str, k_ext: int = 1):
    try:
        p, e = parse_q(text.strip())
    except (MDPError, ValueError) as exc:
        raise UsageError(str(exc))
    return field_build(p, e, k_ext)


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _json_out(obj) -> str:
    return canonical_json(obj) + "\n"


# ----------------------------------------------------------------------
# subcommands; each returns (exit code, verdict for the log line)


def cmd_construct(args):
    params = ConstructionParams.make(args.n, args.k, args.q, args.lambdas, args.gamma)
    code = build_generator(params)
    _emit(args, dumps(code))
    return 0, "constructed"


def _render_report(rep: dict) -> str:
    lines = [f"(n, k) = ({rep['n']}, {rep['k']})  row degrees {rep['row_degrees']}  "
             f"delta {rep['delta']}  L {rep['L']}  M {rep['M']}",
             f"minimal {rep['minimal']}  basic {rep['basic']} ({rep['basic_method']})",
             "  j  bound  minors  d_j  attains"]
    for c in rep["columns"]:
        d = "-" if c["distance"] is None else c["distance"]
        lines.append(f"{c['j']:>3}  {c['bound']:>5}  {c['minors']:>6}  {d:>3}  {c['attains']}")
    lines.append(f"mdp {rep['mdp']}  strongly-mds {rep['strongly_mds']} "
                 f"({rep['strongly_mds_method']})")
    if rep["witness"]:
        lines.append(f"first zero minor: j={rep['witness']['j']} columns {rep['witness']['columns']}")
    return "\n".join(lines) + "\n"


def cmd_verify(args):
    code = read_descriptor(args.input)
    extra = () if args.j is None else (args.j,)
    rep = classify(code, brute_budget=args.brute_budget, minor_budget=args.minor_budget,
                   workers=args.threads, extra_windows=extra,
                   smds_budget=args.brute_budget)
    d = rep.to_dict()
    _emit(args, _render_report(d) if args.format == "text" else _json_out(d))
    ok = rep.mdp and rep.consistent
    if args.j is not None:
        ok = ok and next(c["attains"] for c in rep.columns if c["j"] == args.j)
    return (0 if ok else 1), ("mdp" if ok else "not-mdp")


def cmd_distance(args):
    code = read_descriptor(args.input)
    d = column_distance_bruteforce(code, args.j, args.brute_budget, args.threads)
    bound = column_bound(code.n, code.k, args.j)
    _emit(args, _json_out({"j": args.j, "distance": d, "bound": bound, "attains": d == bound}))
    return 0, f"d_{args.j}={d}"


def cmd_dual(args):
    code = read_descriptor(args.input)
    res = dual_mdp_check(code, cross_check=not args.no_cross_check, convention=args.convention,
                         budget=args.minor_budget, workers=args.threads)
    out = res.to_dict()
    if res.dual is not None:
        out["dual"] = descriptor_to_dict(res.dual)
    _emit(args, _json_out(out))
    ok = res.mdp and res.cross_check is not False
    return (0 if ok else 1), ("dual-mdp" if ok else "dual-not-mdp")


def cmd_search(args):
    F = _q_field(args.q)
    if args.delta is not None:
        space = SearchSpace.for_degree(args.n, args.k, args.delta, F)
    else:
        space = SearchSpace(args.n, args.k, args.m, F)
    res = search_mdp(space, args.mode, seed=args.seed, trials=args.trials, budget=args.budget,
                     workers=args.threads)
    _emit(args, _json_out(res.to_dict()))
    return 0, "found" if res.found else "none"


def cmd_frontier(args):
    fields = [_q_field(q) for q in args.q.split(",") if q.strip()]
    table = min_field_frontier(args.n, args.k, args.delta, fields, budget=args.budget,
                               workers=args.threads)
    if args.format == "json":
        _emit(args, _json_out(table))
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "k", "delta", "L", "q", "found", "scanned", "total", "q_min",
                    "growth_reference"])
        for r in table["rows"]:
            w.writerow([args.n, args.k, args.delta, table["L"], r["q"], r["found"], r["scanned"],
                        r["total"], table["q_min"], r["growth_reference"]])
        _emit(args, buf.getvalue())
    return 0, f"q_min={table['q_min']}"


def cmd_probe(args):
    code = read_descriptor(args.input)
    L = profile(code).L if args.L is None else args.L
    if args.all:
        configs = []
        for cfg in valid_probe_configs(code.n, code.k, L):
            configs.append(cfg)
            if len(configs) > PROBE_CONFIG_LIMIT:
                raise BudgetExceeded("probe configurations", len(configs), PROBE_CONFIG_LIMIT)
    else:
        if args.A is None or args.B is None:
            raise UsageError("give --A and --B, or --all")
        configs = [ProbeConfig(args.A, args.B)]
    rows = []
    ok = True
    for i, cfg in enumerate(configs):
        r = subspace_probe(code, cfg, L, check_mdp=(i == 0))
        good = r.rank_ok and r.direct_sum
        ok = ok and good
        rows.append({"A": [list(a) for a in cfg.A], "B": [list(b) for b in cfg.B],
                     "rank_P": r.rank_P, "rank_S": r.rank_S, "direct_sum": r.direct_sum,
                     "spans": r.spans})
    # per-summand invariance is reported but can fail for k >= 2; the
    # cumulative spans are the invariant that must hold
    invariant = cumulative = True
    for A in sorted({cfg.A for cfg in configs}):
        invariant = invariant and span_invariance(code, A, L)
        cumulative = cumulative and span_invariance(code, A, L, cumulative=True)
    ok = ok and cumulative
    _emit(args, _json_out({"L": L, "configs": rows, "span_invariance": invariant,
                           "cumulative_span_invariance": cumulative, "ok": ok}))
    return (0 if ok else 1), ("ok" if ok else "failed")


def cmd_table(args):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "k", "q", "field_size", "mdp_verified", "wall_time"])
    ok = True
    for n in range(args.n_min, args.n_max + 1):
        for k in range(1, n):
            if 2 * k >= n:
                continue
            for q in admissible_qs(n, args.qs):
                t0 = time.perf_counter()
                code = build_generator(ConstructionParams.make(n, k, q))
                rep = classify(code, brute_budget=args.brute_budget, workers=args.threads,
                               smds_budget=0)
                good = rep.mdp and rep.L == 1 and rep.consistent
                ok = ok and good
                w.writerow([n, k, q, q**k, good, f"{time.perf_counter() - t0:.3f}"])
    _emit(args, buf.getvalue())
    return (0 if ok else 1), ("ok" if ok else "failed")


# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mdpconv", description="MDP convolutional code toolkit")
    ap.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1, help="worker processes (default 1)")
    common.add_argument("--log", help="append the JSON log line to this file")
    common.add_argument("--out", help="write the result here instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build a memory-1 MDP code")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", required=True, help="prime power, e.g. 9 or 3^2")
    p.add_argument("--lambdas", type=_int_list, help="n distinct nonzero F_q indices")
    p.add_argument("--gamma", type=int, help="primitive element index of F_{q^k}")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="classify a code descriptor")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--j", type=int, help="also require d_j to attain its bound")
    p.add_argument("--brute-budget", type=int, default=10**6)
    p.add_argument("--minor-budget", type=int, default=10**7)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("distance", parents=[common], help="exact column distance d_j")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--brute-budget", type=int, default=10**8)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("dual", parents=[common], help="MDP check of the dual code")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--convention", choices=("rows", "printed"), default="rows")
    p.add_argument("--no-cross-check", action="store_true")
    p.add_argument("--minor-budget", type=int, default=10**7)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("search", parents=[common], help="search for an MDP generator")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--m", type=int, help="memory; every row gets degree m")
    g.add_argument("--delta", type=int, help="degree; rows get balanced degrees")
    p.add_argument("--q", required=True)
    p.add_argument("--mode", choices=("exhaustive", "randomized"), default="exhaustive")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--budget", type=int, default=10**8)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("frontier", parents=[common], help="smallest field with an MDP code")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--q", required=True, help="comma-separated prime powers")
    p.add_argument("--budget", type=int, default=10**8)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_frontier)

    p = sub.add_parser("probe", parents=[common], help="subspace decomposition probe")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--L", type=int)
    p.add_argument("--A", type=_sets, help="sets A_1..A_L, e.g. '1,2;1'")
    p.add_argument("--B", type=_sets, help="k-subsets B_j, e.g. '1;1'")
    p.add_argument("--all", action="store_true", help="every valid configuration")
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("table", parents=[common], help="CSV sweep of the construction")
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--qs", type=int, default=2, help="admissible q values per n")
    p.add_argument("--brute-budget", type=int, default=10**8)
    p.set_defaults(func=cmd_table)
    return ap


def _log(args, argv, code: int, verdict: str, wall: float) -> None:
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "log", "command")}
    line = json.dumps({"command": args.command, "params": params, "verdict": verdict,
                       "exit": code, "wall_time": round(wall, 6)}, sort_keys=True, default=str)
    sys.stderr.write(line + "\n")
    if args.log:
        with open(args.log, "a") as fh:
            fh.write(line + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "threads", 1) < 1:
        parser.print_usage(sys.stderr)
        sys.stderr.write("mdpconv: error: --threads must be >= 1\n")
        return 2
    t0 = time.perf_counter()
    try:
        code, verdict = args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"mdpconv: error: {exc}\n")
        code, verdict = 2, "usage-error"
    except BudgetExceeded as exc:
        sys.stderr.write(f"mdpconv: budget exceeded: {exc}\n")
        code, verdict = 2, "budget-exceeded"
    except (MDPError, ValueError, OSError) as exc:
        sys.stderr.write(f"mdpconv: error: {exc}\n")
        code, verdict = 2, "error"
    _log(args, argv, code, verdict, time.perf_counter() - t0)
    return code


if __name__ == "__main__":
    sys.exit(main())
