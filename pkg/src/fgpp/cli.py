"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import ContractError, InputError, ResourceLimitError, WitnessError
from .graph import (PROBLEMS, FgppInstance, Graph, Objective, ProblemSpec, as_rational, builtin_problem,
                    format_graph, parse_graph, val)
from .repfam import REP_MODES, WeightedFamily, rep_alg, verify_representative
from .separation import MODES, UniversalSetFamily, build_universal_set, verify_universal
from .solvers import ALGORITHM_NAMES, SolverConfig, auto_solve, brute_force

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
GENERATORS = ("gnp", "regular-ish", "path", "cycle", "star", "complete")

log = logging.getLogger("fgpp")


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return as_rational(text)
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _read_graph(path: str) -> Graph:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read graph file: {exc}") from None
    return parse_graph(text)


def _spec(args) -> ProblemSpec:
    if args.problem == "custom":
        if args.alpha1 is None or args.alpha2 is None or args.objective is None:
            raise UsageError("--problem custom needs --alpha1, --alpha2 and --objective")
        return ProblemSpec(args.alpha1, args.alpha2, Objective(args.objective))
    if args.alpha1 is not None or args.alpha2 is not None or args.objective is not None:
        raise UsageError("--alpha1/--alpha2/--objective only apply to --problem custom")
    return builtin_problem(args.problem)


def _config(args) -> SolverConfig:
    return SolverConfig(
        algorithm=getattr(args, "algorithm", "auto"),
        us_mode=args.us_mode,
        seed=args.seed,
        error_prob=args.error_prob,
        rounding=args.rounding,
        decrease_threshold=args.decrease_threshold,
        threads=args.threads,
        max_work=args.max_work,
        oracle_fallback=getattr(args, "oracle_fallback", False),
    )


def _frac(x: Fraction | None):
    return None if x is None else {"num": x.numerator, "den": x.denominator}


def run_report(graph: Graph, spec: ProblemSpec, instance: FgppInstance, result, config: SolverConfig,
               wall_time: float | None = None) -> dict:
    report = {
        "algorithm": result.algorithm,
        "config": config.as_dict(),
        "decision": result.decision,
        "instance": {"digest": graph.digest(), "n": graph.n, "m": graph.m, "k": instance.k,
                     "p": _frac(instance.p)},
        "seed": config.seed,
        "spec": spec.as_dict(),
        "stats": result.stats,
        "value": _frac(result.value),
        "witness": list(result.witness) if result.witness is not None else None,
    }
    if result.parts is not None:
        report["parts"] = [list(part) for part in result.parts]
    if wall_time is not None:
        report["wall_time"] = round(wall_time, 6)
    return report


def _dump(report: dict) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":"))


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_solve(args, oracle: bool = False) -> int:
    graph = _read_graph(args.graph)
    spec = _spec(args)
    config = _config(args)
    instance = FgppInstance(graph, args.k, args.p)
    start = time.perf_counter()
    if oracle:
        result = brute_force(instance, spec, config.max_work)
    else:
        result = auto_solve(instance, spec, config)
    elapsed = time.perf_counter() - start if args.timing else None
    _emit(_dump(run_report(graph, spec, instance, result, config, elapsed)) + "\n", args.out)
    return EXIT_OK


def _gen_rng(seed: int, n: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, 7, n])))


def generate(kind: str, n: int, prob: Fraction = Fraction(1, 2), degree: int = 3, seed: int = 0) -> Graph:
    """Deterministic generators; random ones draw from a Philox stream keyed on ``(seed, n)``."""
    if n < 0:
        raise UsageError("--n must be nonnegative")
    if kind == "path":
        return Graph(n, tuple((i, i + 1) for i in range(n - 1)))
    if kind == "cycle":
        if n < 3:
            raise UsageError("a cycle needs at least 3 vertices")
        return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))
    if kind == "star":
        return Graph(n, tuple((0, i) for i in range(1, n)))
    if kind == "complete":
        return Graph(n, tuple((u, v) for u in range(n) for v in range(u + 1, n)))
    rng = _gen_rng(seed, n)
    if kind == "gnp":
        if not 0 <= prob <= 1:
            raise UsageError("--prob must lie in [0, 1]")
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        # exact rational probability: compare a uniform integer against the numerator
        draws = rng.integers(0, prob.denominator, size=len(pairs)) if pairs else []
        return Graph(n, tuple(e for e, r in zip(pairs, draws) if r < prob.numerator))
    if kind == "regular-ish":
        if not 0 <= degree < max(n, 1):
            raise UsageError("--degree must lie in [0, n)")
        stubs = np.repeat(np.arange(n), degree)
        rng.shuffle(stubs)
        edges, seen = [], set()
        for u, v in zip(stubs[0::2].tolist(), stubs[1::2].tolist()):
            e = (min(u, v), max(u, v))
            if u != v and e not in seen:
                seen.add(e)
                edges.append(e)
        return Graph(n, tuple(sorted(edges)))
    raise UsageError(f"unknown generator {kind!r}")


def cmd_gen(args) -> int:
    graph = generate(args.kind, args.n, args.prob, args.degree, args.seed)
    _emit(format_graph(graph), args.out)
    return EXIT_OK


def _grid(text: str, kind=int) -> list:
    """Comma-separated values; integer ranges as ``a..b`` (inclusive)."""
    out = []
    for item in (s.strip() for s in text.split(",")):
        if not item:
            continue
        if ".." in item:
            lo, hi = item.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(kind(item))
    return out


BENCH_COLUMNS = ("n", "m", "delta", "k", "p", "algorithm", "colorings", "wall_time")


def cmd_bench(args) -> int:
    graph = _read_graph(args.graph)
    spec = _spec(args)
    config = _config(args)
    try:
        ks = _grid(args.ks)
        ps = _grid(args.ps, as_rational)
    except (ValueError, InputError) as exc:
        raise UsageError(f"bad grid: {exc}") from None
    handle = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(BENCH_COLUMNS)
        for k in ks:
            for p in ps:
                instance = FgppInstance(graph, k, p)
                start = time.perf_counter()
                result = auto_solve(instance, spec, config)
                wall = time.perf_counter() - start
                colorings = result.stats.get("family_size", 0)
                writer.writerow((graph.n, graph.m, graph.max_degree, k, p, result.algorithm, colorings,
                                 f"{wall:.6f}"))
                log.info("bench k=%d p=%s algorithm=%s colorings=%d", k, p, result.algorithm, colorings)
    finally:
        if handle is not sys.stdout:
            handle.close()
    return EXIT_OK


def _read_rows(path: str) -> np.ndarray:
    rows = [line.strip() for line in Path(path).read_text().splitlines() if line.strip() and not line.startswith("#")]
    if not rows or len({len(r) for r in rows}) != 1 or any(set(r) - {"0", "1"} for r in rows):
        raise UsageError("family file must hold equal-length 0/1 rows")
    return np.array([[int(c) for c in r] for r in rows], dtype=np.uint8)


def verify_universal_target(args) -> int:
    if args.family:
        rows = _read_rows(args.family)
        if args.t is None:
            raise UsageError("--t is required with --family")
        family = UniversalSetFamily(rows.shape[1], args.t, rows, "file", 0)
    else:
        if args.n is None or args.t is None:
            raise UsageError("verify universal needs --n and --t (or --family)")
        family = build_universal_set(args.n, args.t, args.us_mode, args.seed, args.error_prob, args.max_work)
    if args.truncate is not None:
        family = UniversalSetFamily(family.n, family.t, family.functions[: args.truncate], family.mode, family.seed)
    ok = verify_universal(family, args.t, args.max_work)
    print(json.dumps({"target": "universal", "n": family.n, "t": family.t, "size": len(family), "verified": ok},
                     sort_keys=True))
    return EXIT_OK if ok else EXIT_VERIFY


def _read_family(path: str) -> WeightedFamily:
    try:
        data = json.loads(Path(path).read_text())
        return WeightedFamily(int(data["universe"]), tuple((tuple(s), str(w)) for s, w in data["members"]))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read weighted family: {exc}") from None


def verify_repfam_target(args) -> int:
    if args.family is None or args.k is None:
        raise UsageError("verify repfam needs --family and -k")
    original = _read_family(args.family)
    if args.candidate:
        candidate = _read_family(args.candidate)
    else:
        candidate = rep_alg(original, args.k, args.objective or "max", args.rep_mode, args.seed,
                            args.error_prob, args.max_work)
    ok = verify_representative(original, candidate, args.k, args.objective or "max", args.max_work)
    print(json.dumps({"target": "repfam", "original": len(original), "candidate": len(candidate),
                      "verified": ok}, sort_keys=True))
    return EXIT_OK if ok else EXIT_VERIFY


def verify_witness_target(args) -> int:
    if args.graph is None:
        raise UsageError("verify witness needs --graph")
    graph = _read_graph(args.graph)
    if args.report:
        try:
            report = json.loads(Path(args.report).read_text().strip().splitlines()[-1])
        except (OSError, ValueError, IndexError) as exc:
            raise UsageError(f"cannot read report: {exc}") from None
        s = report["spec"]
        spec = ProblemSpec(s["alpha1"], s["alpha2"], s["objective"])
        k = report["instance"]["k"]
        p = Fraction(report["instance"]["p"]["num"], report["instance"]["p"]["den"])
        witness = report["witness"]
        if report["instance"]["digest"] != graph.digest():
            print(json.dumps({"target": "witness", "verified": False, "reason": "graph digest differs"}))
            return EXIT_VERIFY
        if witness is None:
            raise UsageError("report carries no witness (decision was no)")
    else:
        if args.k is None or args.p is None or args.witness is None:
            raise UsageError("verify witness needs --report or -k, -p and --witness")
        spec = _spec(args)
        k, p = args.k, args.p
        witness = _grid(args.witness)
    ws = set(witness)
    ok = len(ws) == len(witness) == k and all(0 <= v < graph.n for v in ws)
    value = val(graph, spec, ws) if ok else None
    ok = ok and spec.meets(value, p)
    print(json.dumps({"target": "witness", "value": _frac(value), "verified": ok}, sort_keys=True))
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_verify(args) -> int:
    return {"universal": verify_universal_target, "repfam": verify_repfam_target,
            "witness": verify_witness_target}[args.target](args)


def _add_problem(p: argparse.ArgumentParser, required_k: bool = True):
    p.add_argument("--problem", default="max-cut", choices=sorted(PROBLEMS) + ["custom"])
    p.add_argument("--alpha1", type=_rational)
    p.add_argument("--alpha2", type=_rational)
    p.add_argument("--objective", choices=[o.value for o in Objective])
    if required_k:
        p.add_argument("-k", type=int, required=True)
        p.add_argument("-p", type=_rational, required=True)


def _add_solver(p: argparse.ArgumentParser):
    p.add_argument("--us-mode", default="verified", choices=MODES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--error-prob", type=_rational, default=Fraction(1, 1000))
    p.add_argument("--rounding", default="floor", choices=("floor", "ceil"))
    p.add_argument("--decrease-threshold", type=int, default=5000)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--max-work", type=int, default=10**8)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fgpp", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="decide an instance and print a JSON run report")
    solve.add_argument("--graph", required=True)
    _add_problem(solve)
    solve.add_argument("--algorithm", default="auto", choices=ALGORITHM_NAMES)
    solve.add_argument("--oracle-fallback", action="store_true",
                       help="retry by brute force when an algorithm hits the work cap")
    solve.add_argument("--timing", action="store_true", help="add wall_time to the report")
    solve.add_argument("--out")
    _add_solver(solve)

    oracle = sub.add_parser("oracle", help="brute-force decision in the same report format")
    oracle.add_argument("--graph", required=True)
    _add_problem(oracle)
    oracle.add_argument("--timing", action="store_true")
    oracle.add_argument("--out")
    _add_solver(oracle)

    gen = sub.add_parser("gen", help="write a generated graph")
    gen.add_argument("--kind", required=True, choices=GENERATORS)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--prob", type=_rational, default=Fraction(1, 2))
    gen.add_argument("--degree", type=int, default=3)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out")

    bench = sub.add_parser("bench", help="time auto_solve over a (k, p) grid, CSV output")
    bench.add_argument("--graph", required=True)
    _add_problem(bench, required_k=False)
    bench.add_argument("--ks", required=True, help="e.g. '2' or '1..4' or '1,3'")
    bench.add_argument("--ps", required=True, help="e.g. '1..5' or '1/2,3'")
    bench.add_argument("--algorithm", default="auto", choices=ALGORITHM_NAMES)
    bench.add_argument("--out")
    _add_solver(bench)

    verify = sub.add_parser("verify", help="run a verification oracle")
    verify.add_argument("target", choices=("universal", "repfam", "witness"))
    verify.add_argument("--graph")
    _add_problem(verify, required_k=False)
    verify.add_argument("-k", type=int)
    verify.add_argument("-p", type=_rational)
    verify.add_argument("--witness", help="comma-separated vertex ids")
    verify.add_argument("--report", help="JSON report written by solve")
    verify.add_argument("--n", type=int)
    verify.add_argument("--t", type=int)
    verify.add_argument("--truncate", type=int, help="keep only the first R rows before checking")
    verify.add_argument("--family", help="0/1 rows (universal) or JSON weighted family (repfam)")
    verify.add_argument("--candidate", help="JSON weighted family to check against --family")
    verify.add_argument("--rep-mode", default="identity", choices=REP_MODES)
    _add_solver(verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    handlers = {"solve": cmd_solve, "oracle": lambda a: cmd_solve(a, oracle=True), "gen": cmd_gen,
                "bench": cmd_bench, "verify": cmd_verify}
    try:
        return handlers[args.command](args)
    except ResourceLimitError as exc:
        print(f"fgpp: resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except WitnessError as exc:
        print(f"fgpp: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (UsageError, InputError, ContractError) as exc:
        print(f"fgpp: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
