"""Command line interface: find-base, encode, solve and bench.

Exit codes are a stable contract: 0 success, 1 usage or tool error,
2 parse error, 10 an encoding that is statically unsatisfiable.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import random
import subprocess
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .cost import CostKind
from .encoder import Cnf, encode_instance, to_dimacs
from .mixedradix import Multiset
from .opb import OpbParseError, coefficient_multiset, load_instance, parse
from .satcheck import Solver, SolverBudgetExceeded
from .search import SearchConfig, find_base

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_STATIC_UNSAT = 10

CLUSTER_BASE = 1.9745

_COSTS = {"digits": CostKind.SUM_DIGITS, "carry": CostKind.SUM_CARRY,
          "comp": CostKind.NUM_COMP}


class UsageError(Exception):
    pass


class ToolError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _search_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--cost", choices=sorted(_COSTS), default="digits",
                   help="cost function to minimize (default digits)")
    p.add_argument("--algo", choices=["dfs", "bnb", "hashbnb", "brute"],
                   default="hashbnb")
    p.add_argument("--max-elem", type=int, default=10_000,
                   help="largest base element considered (default 10000)")
    p.add_argument("--primes-only", action=argparse.BooleanOptionalAction,
                   default=None,
                   help="restrict base elements to primes "
                        "(default: on for digits, off for carry/comp)")
    p.add_argument("--timeout", type=float, default=600.0,
                   help="base-search timeout in seconds (default 600)")


def _search_config(args) -> SearchConfig:
    kind = _COSTS[args.cost]
    primes = args.primes_only
    if primes is None:
        primes = kind is CostKind.SUM_DIGITS
    return SearchConfig(kind=kind, max_elem=args.max_elem,
                        primes_only=primes, algorithm=args.algo,
                        timeout=args.timeout)


def _parse_multiset(text: str) -> Multiset:
    try:
        values = [int(t) for t in text.replace(",", " ").split()]
    except ValueError as e:
        raise UsageError(f"bad multiset {text!r}: {e}") from None
    if not values:
        raise UsageError("empty multiset")
    if min(values) < 1:
        raise UsageError("multiset elements must be positive integers")
    return Multiset.of(values)


def _parse_base(text: str) -> tuple[int, ...]:
    try:
        base = tuple(int(t) for t in text.replace(",", " ").split())
    except ValueError as e:
        raise UsageError(f"bad base {text!r}: {e}") from None
    if any(r < 2 for r in base):
        raise UsageError("base radices must be at least 2")
    return base


def _fmt_base(base) -> str:
    return ",".join(str(r) for r in base) if base else "(empty)"


def _result_dict(s: Multiset, res) -> dict:
    return {
        "multiset": list(s.elements),
        "base": list(res.best_base),
        "cost": res.best_cost,
        "algorithm": res.algorithm,
        "optimal_guaranteed": res.optimal_guaranteed,
        "timed_out": res.timed_out,
        "nodes_expanded": res.nodes_expanded,
        "nodes_pruned": res.nodes_pruned,
        "elapsed_s": round(res.elapsed, 6),
    }


def cmd_find_base(args) -> int:
    cfg = _search_config(args)
    jobs: list[tuple[str, Multiset]] = []
    if args.set is not None:
        jobs.append(("set", _parse_multiset(args.set)))
    else:
        inst = load_instance(Path(args.opb).read_text())
        for i, pc in enumerate(inst.constraints):
            if pc.terms:
                jobs.append((f"constraint {i}", coefficient_multiset(pc)))
    results = []
    for label, s in jobs:
        res = find_base(s, cfg)
        results.append((label, s, res))
    if args.json:
        payload = [dict(_result_dict(s, r), label=label)
                   for label, s, r in results]
        print(json.dumps(payload if len(payload) > 1 else payload[0], indent=2))
    else:
        for label, s, res in results:
            prefix = f"{label}: " if len(results) > 1 else ""
            print(f"{prefix}base: {_fmt_base(res.best_base)}")
            print(f"{prefix}cost: {res.best_cost} ({args.cost})")
            guar = "yes" if res.optimal_guaranteed else "no"
            print(f"{prefix}algorithm: {res.algorithm} optimal-guaranteed: {guar} "
                  f"expanded: {res.nodes_expanded} pruned: {res.nodes_pruned} "
                  f"elapsed: {res.elapsed:.3f}s")
    return EXIT_OK


def _encode_options(p: argparse.ArgumentParser) -> None:
    _search_options(p)
    p.add_argument("--base", default=None,
                   help="force this base for every constraint, e.g. '2,3,3'")
    p.add_argument("--shared-base", action="store_true",
                   help="search one base over the union of all coefficients")
    p.add_argument("--fallback-binary", action=argparse.BooleanOptionalAction,
                   default=True,
                   help="fall back to the binary base when a base search "
                        "times out (default on)")
    p.add_argument("--polarity", choices=["full", "monotone"], default="full",
                   help="comparator clause scheme (default full, 6 clauses)")
    p.add_argument("--saturate", action="store_true",
                   help="clamp coefficients to the threshold while normalizing")


def _encode(args, text: str):
    inst = load_instance(text, saturate=args.saturate)
    cfg = _search_config(args)
    forced = _parse_base(args.base) if args.base is not None else None
    cnf, stats = encode_instance(
        inst.constraints, len(inst.names), cfg,
        forced_base=forced, shared_base=args.shared_base,
        fallback_binary=args.fallback_binary, polarity=args.polarity)
    comments = [f"optibase encode cost={args.cost} algo={args.algo}"]
    for i, name in enumerate(inst.names, start=1):
        comments.append(f"var {i} = {name}")
    for st in stats:
        comments.append(
            f"constraint {st.index}: base={_fmt_base(st.base)} "
            f"cost={st.cost_kind}:{st.cost_value} clauses={st.clauses} "
            f"vars={st.fresh_vars} comparators={st.comparators} "
            f"networks={','.join(map(str, st.network_sizes))}")
    comments.append(
        f"totals: constraints={len(stats)} vars={cnf.num_vars} "
        f"clauses={len(cnf.clauses)}")
    cnf.comments = comments
    return inst, cnf, stats


def cmd_encode(args) -> int:
    inst, cnf, stats = _encode(args, Path(args.input).read_text())
    Path(args.output).write_text(to_dimacs(cnf))
    stats_path = args.stats or args.output + ".stats.json"
    payload = {
        "constraints": [st.as_dict() for st in stats],
        "totals": {
            "constraints": len(stats),
            "vars": cnf.num_vars,
            "clauses": len(cnf.clauses),
            "comparators": sum(st.comparators for st in stats),
            "statically_unsat": (any(st.statically_unsat for st in stats)
                                 or cnf.has_empty_clause),
        },
    }
    Path(stats_path).write_text(json.dumps(payload, indent=2) + "\n")
    if inst.skipped_objective:
        print("warning: objective line ignored (decision-only encoding)",
              file=sys.stderr)
    if any(st.statically_unsat for st in stats) or cnf.has_empty_clause:
        return EXIT_STATIC_UNSAT
    return EXIT_OK


def _run_external_solver(path: str, cnf: Cnf) -> tuple[bool, dict[int, bool]]:
    with tempfile.NamedTemporaryFile("w", suffix=".cnf", delete=False) as f:
        f.write(to_dimacs(cnf))
        tmp = f.name
    proc = subprocess.run([path, tmp], capture_output=True, text=True)
    # competition convention: exit 10 means SAT, 20 means UNSAT
    if proc.returncode not in (0, 10, 20):
        raise ToolError(f"solver exited with status {proc.returncode}: "
                        f"{proc.stderr.strip()[:200]}")
    status = None
    lits: list[int] = []
    for line in proc.stdout.splitlines():
        if line.startswith("s "):
            status = line[2:].strip()
        elif line.startswith("v "):
            lits.extend(int(t) for t in line[2:].split())
    if status == "UNSATISFIABLE":
        return False, {}
    if status != "SATISFIABLE":
        raise ToolError(f"could not parse solver output (status line {status!r})")
    model = {abs(l): l > 0 for l in lits if l != 0}
    return True, model


def cmd_solve(args) -> int:
    text = Path(args.input).read_text()
    inst, cnf, stats = _encode(args, text)
    raws, _ = parse(text)
    if any(st.statically_unsat for st in stats) or cnf.has_empty_clause:
        print("UNSAT")
        return EXIT_OK
    if args.solver:
        sat, model = _run_external_solver(args.solver, cnf)
    else:
        try:
            found = Solver(cnf.clauses, cnf.num_vars).solve()
        except SolverBudgetExceeded as e:
            raise ToolError(f"builtin solver gave up: {e}") from None
        sat, model = found is not None, found or {}
    if not sat:
        print("UNSAT")
        return EXIT_OK
    named = {name: bool(model.get(i + 1, False))
             for i, name in enumerate(inst.names)}
    for rc in raws:
        if not rc.holds(named):
            raise ToolError(
                f"solver model does not satisfy the constraint on line {rc.line}")
    print("SAT")
    print(" ".join(f"{name}={1 if named[name] else 0}" for name in inst.names))
    return EXIT_OK


def cluster_key(max_coefficient: int) -> int:
    """Problems are clustered by ceil(log base 1.9745 of the maximum)."""
    if max_coefficient <= 1:
        return 0
    return math.ceil(math.log(max_coefficient) / math.log(CLUSTER_BASE))


def _gen_multisets(n: int, seed: int, gen_max: int, gen_size: int):
    """Seeded corpus; every multiset contains gen_max so the whole corpus
    lands in one cluster."""
    rng = random.Random(seed)
    out = []
    for i in range(n):
        size = rng.randint(2, max(2, gen_size))
        elems = [gen_max] + [rng.randint(1, gen_max) for _ in range(size - 1)]
        out.append((f"gen{i}", tuple(sorted(elems))))
    return out


def _amplified_instances(paths, emit_dir: str | None):
    """Scaled copies of each instance: coefficients and thresholds times
    31**i for i in 0..5, plus a unit slack term so the scale factor
    survives gcd reduction."""
    problems = []
    for path in paths:
        inst = load_instance(Path(path).read_text())
        slack = max((int(n[1:]) for n in inst.names), default=0)
        for i in range(6):
            factor = 31 ** i
            lines = []
            fresh = slack
            for ci, pc in enumerate(inst.constraints):
                parts = []
                for coef, lit in pc.terms:
                    name = inst.name_of(abs(lit))
                    parts.append(f"+{coef * factor} {'~' if lit < 0 else ''}{name}")
                fresh += 1
                parts.append(f"+1 x{fresh}")
                parts.append(f">= {pc.threshold * factor} ;")
                lines.append(" ".join(parts))
            text = "\n".join(lines) + "\n"
            name = f"{Path(path).stem}.31pow{i}"
            if emit_dir:
                Path(emit_dir).mkdir(parents=True, exist_ok=True)
                (Path(emit_dir) / f"{name}.opb").write_text(text)
            scaled = load_instance(text)
            for ci, pc in enumerate(scaled.constraints):
                elems = _bench_multiset(pc)
                if elems:
                    problems.append((f"{name}:{ci}", elems))
    return problems


def _bench_multiset(pc) -> tuple[int, ...] | None:
    """Coefficients of one constraint as a bench problem; pure cardinality
    constraints (all coefficients 1) carry no base-search content and are
    dropped from corpora, matching how evaluation corpora are prepared."""
    if not pc.terms:
        return None
    elems = tuple(coefficient_multiset(pc).elements)
    return None if elems[-1] == 1 else elems


def _bench_one(task):
    """Worker for one (problem, config) cell; returns a CSV row."""
    name, elems, algo, cost, max_elem, primes, timeout = task
    s = Multiset.of(elems)
    cfg = SearchConfig(kind=_COSTS[cost], max_elem=max_elem,
                       primes_only=primes, algorithm=algo, timeout=timeout)
    row = {
        "row_type": "result", "problem": name, "n": len(elems),
        "max_coeff": s.max, "cluster": cluster_key(s.max),
        "algo": algo, "cost": cost, "max_elem": max_elem,
        "primes": int(primes),
    }
    try:
        res = find_base(s, cfg)
        row.update(status="timeout" if res.timed_out else "ok",
                   best_cost=res.best_cost,
                   base=" ".join(map(str, res.best_base)),
                   nodes_expanded=res.nodes_expanded,
                   nodes_pruned=res.nodes_pruned,
                   time_s=round(res.elapsed, 6))
    except Exception as e:  # keep going past per-problem failures
        row.update(status="error", best_cost="", base="",
                   nodes_expanded="", nodes_pruned="", time_s="",
                   error=str(e)[:120])
    return row


_CSV_FIELDS = ["row_type", "problem", "n", "max_coeff", "cluster", "algo",
               "cost", "max_elem", "primes", "status", "best_cost", "base",
               "nodes_expanded", "nodes_pruned", "time_s", "count", "error"]


def cmd_bench(args) -> int:
    if args.gen is not None:
        problems = _gen_multisets(args.gen, args.seed, args.gen_max,
                                  args.gen_size)
    else:
        paths = sorted(Path(args.opb_dir).glob("*.opb"))
        if args.amplify_31:
            problems = _amplified_instances(paths, args.emit_opb)
        else:
            problems = []
            for path in paths:
                inst = load_instance(path.read_text())
                for ci, pc in enumerate(inst.constraints):
                    elems = _bench_multiset(pc)
                    if elems:
                        problems.append((f"{path.stem}:{ci}", elems))

    configs = []
    for algo in args.algos.split(","):
        for cost in args.costs.split(","):
            for max_elem in (int(t) for t in args.max_elems.split(",")):
                if args.primes == "auto":
                    primes = cost == "digits"
                else:
                    primes = args.primes == "on"
                configs.append((algo, cost, max_elem, primes))

    tasks = [(name, elems) + cfg + (args.timeout,)
             for cfg in configs for (name, elems) in problems]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_bench_one, tasks))
    else:
        rows = [_bench_one(t) for t in tasks]

    # cluster-averaged aggregates per configuration, in config order
    for algo, cost, max_elem, primes in configs:
        mine = [r for r in rows
                if r["row_type"] == "result" and r["algo"] == algo
                and r["cost"] == cost and r["max_elem"] == max_elem
                and r["primes"] == int(primes)]
        for cluster in sorted({r["cluster"] for r in mine}):
            tr = [r for r in mine if r["cluster"] == cluster]
            timed = [r["time_s"] for r in tr if r["status"] == "ok"]
            rows.append({
                "row_type": "aggregate", "cluster": cluster, "algo": algo,
                "cost": cost, "max_elem": max_elem, "primes": int(primes),
                "count": len(tr),
                "time_s": round(sum(timed) / len(timed), 6) if timed else "",
            })

    out = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    try:
        writer = csv.DictWriter(out, fieldnames=_CSV_FIELDS, restval="")
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="optibase",
                     description="Minimum-cost mixed radix bases and "
                                 "sorter-based Pseudo-Boolean CNF encoding")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("find-base", help="search a minimum-cost base")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--set", help="comma-separated multiset, e.g. '16,30,54,60'")
    src.add_argument("--opb", help="OPB file; searches each constraint's multiset")
    _search_options(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_find_base)

    p = sub.add_parser("encode", help="compile an OPB file to DIMACS CNF")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--stats", default=None,
                   help="stats JSON path (default OUTPUT.stats.json)")
    _encode_options(p)
    p.set_defaults(fn=cmd_encode)

    p = sub.add_parser("solve", help="encode and decide an OPB instance")
    p.add_argument("input")
    how = p.add_mutually_exclusive_group(required=True)
    how.add_argument("--builtin", action="store_true",
                     help="use the built-in desk-scale solver")
    how.add_argument("--solver", default=None,
                     help="external solver command (DIMACS file argument)")
    _encode_options(p)
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("bench", help="benchmark base searches over a corpus")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--opb-dir", help="directory of .opb files")
    src.add_argument("--gen", type=int, help="generate this many multisets")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--gen-max", type=int, default=10_000,
                   help="largest element of generated multisets")
    p.add_argument("--gen-size", type=int, default=6,
                   help="largest size of generated multisets")
    p.add_argument("--algos", default="hashbnb")
    p.add_argument("--costs", default="digits")
    p.add_argument("--max-elems", default="10000")
    p.add_argument("--primes", choices=["auto", "on", "off"], default="auto")
    p.add_argument("--timeout", type=float, default=600.0,
                   help="per-search timeout (default 600)")
    p.add_argument("--instance-timeout", type=float, default=1800.0,
                   help="per-instance budget when reading OPB files")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default="-", help="CSV path or - for stdout")
    p.add_argument("--amplify-31", action="store_true",
                   help="bench scaled copies with coefficients times 31^i, i=0..5")
    p.add_argument("--emit-opb", default=None,
                   help="directory to write amplified instances to")
    p.set_defaults(fn=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OpbParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except ToolError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
