"""Command-line harness: solve, evaluate, generate, bench, verify.

Exit codes: 0 success, 1 usage error, 2 validation error (bad documents or
arguments that fail domain checks), 3 internal solver error.  All error
text goes to stderr; results go to stdout or ``--output``.

``RFS_THREADS``, when set, overrides ``--threads``.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from math import factorial
from time import perf_counter

from . import nominal, oracle, solvers
from .errors import InputError, OracleLimitError
from .instances import GeneratorConfig, generate_instance, parse_instance, render_instance
from .robust import RobustInstance, candidate_grid, eq3_objective, transform_instance, worst_case_makespan

ALGORITHMS = ("robust-johnson", "robust-chen", "reduction-exact", "brute-force")

CSV_HEADER = "instance,algo,n,m,certified,bound,time_ms"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit code 1 instead of argparse's 2
        raise _UsageError(f"{self.prog}: {message}")


def _build_parser() -> _Parser:
    parser = _Parser(prog="rfs", description="Robust flowshop solver under budgeted uncertainty.")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve an instance file")
    solve.add_argument("--input", required=True, help="instance file ('-' for stdin)")
    solve.add_argument("--algo", required=True, choices=ALGORITHMS)
    solve.add_argument("--output", help="write the result record here instead of stdout")
    solve.add_argument("--threads", type=int, default=1)

    evaluate = sub.add_parser("evaluate", help="worst-case makespan of a fixed schedule")
    evaluate.add_argument("--input", required=True)
    evaluate.add_argument("--sigma", required=True, help="comma-separated 1-based job order")
    evaluate.add_argument("--output")

    generate = sub.add_parser("generate", help="write a reproducible random instance")
    generate.add_argument("--m", type=int, required=True)
    generate.add_argument("--n", type=int, required=True)
    generate.add_argument("--seed", type=int, default=0)
    generate.add_argument("--p-max", type=int, default=20)
    generate.add_argument("--h-max", type=int, default=20)
    generate.add_argument("--gamma", default="1.0", help="fraction of n (e.g. 0.5), one budget, or a comma list")
    generate.add_argument("--name")
    generate.add_argument("--output")

    bench = sub.add_parser("bench", help="size sweep, CSV output")
    bench.add_argument("--m", type=int, default=2)
    bench.add_argument("--n", default="20,40,80", help="comma-separated sizes")
    bench.add_argument("--algo", help="comma-separated algorithms (default: fastest suitable)")
    bench.add_argument("--trials", type=int, default=3, help="instances per size")
    bench.add_argument("--seed", type=int, default=1)
    bench.add_argument("--p-max", type=int, default=20)
    bench.add_argument("--h-max", type=int, default=20)
    bench.add_argument("--gamma", default="0.25")
    bench.add_argument("--threads", type=int, default=1)
    bench.add_argument("--output")

    verify = sub.add_parser("verify", help="oracle-equivalence checks on random instances")
    verify.add_argument("--n-max", type=int, default=5)
    verify.add_argument("--trials", type=int, default=100)
    verify.add_argument("--seed", type=int, default=1)
    verify.add_argument("--output")

    return parser


def _threads(args) -> int:
    env = os.environ.get("RFS_THREADS")
    if env is not None:
        try:
            value = int(env)
        except ValueError:
            raise InputError(f"RFS_THREADS must be an integer, got {env!r}")
    else:
        value = getattr(args, "threads", 1)
    if value < 1:
        raise InputError(f"thread count must be >= 1, got {value}")
    return value


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}")


def _write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _parse_gamma_flag(raw: str) -> float | int | tuple[int, ...]:
    raw = raw.strip()
    try:
        if "," in raw:
            return tuple(int(part) for part in raw.split(","))
        if "." in raw:
            return float(raw)
        return int(raw)
    except ValueError:
        raise InputError(f"cannot parse gamma {raw!r}: expected a fraction, an integer, or a comma list")


def _solve_one(inst: RobustInstance, algo: str, threads: int) -> solvers.SolveReport:
    if algo == "robust-johnson":
        return solvers.robust_johnson(inst, threads)
    if algo == "robust-chen":
        return solvers.robust_chen(inst, threads)
    if algo == "reduction-exact":
        return solvers.solve_by_reduction(inst, solvers.brute_force_solver(), threads)
    started = perf_counter()
    sigma, value = oracle.brute_force_robust(inst)
    return solvers.SolveReport(
        algorithm="brute-force",
        sigma=sigma,
        bound=value,
        certified=value,
        mu_star=(),
        candidates_evaluated=factorial(inst.n),
        wall_time=perf_counter() - started,
    )


def _record(inst: RobustInstance, algo: str, report: solvers.SolveReport) -> dict:
    return {
        "instance": inst.name,
        "algo": algo,
        "m": inst.m,
        "n": inst.n,
        "sigma": list(report.sigma),
        "certified": report.certified,
        "bound": report.bound,
        "mu_star": list(report.mu_star) if report.mu_star else None,
        "candidates_evaluated": report.candidates_evaluated,
        "time_ms": round(report.wall_time * 1000.0, 3),
    }


def _cmd_solve(args) -> int:
    inst = parse_instance(_read_input(args.input))
    report = _solve_one(inst, args.algo, _threads(args))
    _write_output(json.dumps(_record(inst, args.algo, report), indent=2) + "\n", args.output)
    return 0


def _cmd_evaluate(args) -> int:
    inst = parse_instance(_read_input(args.input))
    try:
        sigma = tuple(int(part) for part in args.sigma.split(","))
    except ValueError:
        raise InputError(f"cannot parse --sigma {args.sigma!r}")
    value, crossing = worst_case_makespan(inst, sigma)
    doc = {
        "instance": inst.name,
        "sigma": list(sigma),
        "worst_case": value,
        "critical_tuple": list(crossing),
    }
    _write_output(json.dumps(doc, indent=2) + "\n", args.output)
    return 0


def _cmd_generate(args) -> int:
    cfg = GeneratorConfig(
        m=args.m,
        n=args.n,
        seed=args.seed,
        p_max=args.p_max,
        h_max=args.h_max,
        gamma=_parse_gamma_flag(args.gamma),
        name=args.name,
    )
    _write_output(render_instance(generate_instance(cfg)), args.output)
    return 0


def _default_bench_algos(m: int) -> list[str]:
    if m == 2:
        return ["robust-johnson"]
    if m == 3:
        return ["robust-chen"]
    return ["reduction-exact"]


def _cmd_bench(args) -> int:
    threads = _threads(args)
    try:
        sizes = [int(part) for part in args.n.split(",")]
    except ValueError:
        raise InputError(f"cannot parse --n {args.n!r}: expected comma-separated sizes")
    algos = args.algo.split(",") if args.algo else _default_bench_algos(args.m)
    for algo in algos:
        if algo not in ALGORITHMS:
            raise InputError(f"unknown algorithm {algo!r}")
    gamma = _parse_gamma_flag(args.gamma)
    lines = [CSV_HEADER]
    for n in sizes:
        for trial in range(args.trials):
            cfg = GeneratorConfig(
                m=args.m, n=n, seed=args.seed + trial,
                p_max=args.p_max, h_max=args.h_max, gamma=gamma,
            )
            inst = generate_instance(cfg)
            for algo in algos:
                report = _solve_one(inst, algo, threads)
                lines.append(
                    f"{inst.name},{algo},{inst.n},{inst.m},"
                    f"{report.certified},{report.bound},{report.wall_time * 1000.0:.3f}"
                )
    _write_output("\n".join(lines) + "\n", args.output)
    return 0


def _random_instance(rng: random.Random, m: int, n: int, top: int = 20) -> RobustInstance:
    return RobustInstance(
        p_bar=[[rng.randint(1, top) for _ in range(n)] for _ in range(m)],
        p_hat=[[rng.randint(0, top) for _ in range(n)] for _ in range(m)],
        gamma=tuple(rng.randint(0, n) for _ in range(m)),
    )


def _cmd_verify(args) -> int:
    trials = args.trials
    n_max = args.n_max
    rng = random.Random(args.seed)
    lines = []
    all_ok = True

    def run_check(name: str, single) -> None:
        nonlocal all_ok
        passes = sum(1 for _ in range(trials) if single())
        lines.append(f"{name}: {passes}/{trials} pass")
        if passes != trials:
            all_ok = False

    def recurrence_vs_tuples() -> bool:
        m = rng.randint(1, 4)
        n = rng.randint(1, n_max)
        inst = _random_instance(rng, m, n)
        sigma = list(range(1, n + 1))
        rng.shuffle(sigma)
        value, _ = nominal.makespan_by_tuples(inst.p_bar, sigma)
        return value == nominal.compute_makespan(inst.p_bar, sigma)

    def adversary_vs_scenarios() -> bool:
        inst = _random_instance(rng, rng.randint(1, 3), rng.randint(1, min(n_max, 5)))
        sigma = list(range(1, inst.n + 1))
        rng.shuffle(sigma)
        return worst_case_makespan(inst, sigma)[0] == oracle.enumerate_scenarios(inst, sigma)

    def weak_duality() -> bool:
        inst = _random_instance(rng, rng.randint(1, 3), rng.randint(1, n_max))
        sigma = list(range(1, inst.n + 1))
        rng.shuffle(sigma)
        worst = worst_case_makespan(inst, sigma)[0]
        grid = candidate_grid(inst)
        sample = grid if len(grid) <= 30 else rng.sample(grid, 30)
        return all(eq3_objective(inst, mu, sigma) >= worst for mu in sample)

    def johnson_optimal() -> bool:
        inst = _random_instance(rng, 2, rng.randint(1, min(n_max, 7)))
        sigma = nominal.johnson(inst.p_bar)
        return nominal.compute_makespan(inst.p_bar, sigma) == oracle.brute_force_nominal(inst.p_bar)[1]

    def merge_matches_sort() -> bool:
        inst = _random_instance(rng, rng.choice([2, 3]), rng.randint(1, n_max))
        machine = rng.randint(1, inst.m)
        mu = rng.choice(sorted({0, *map(int, inst.p_hat[machine - 1])}))
        got = solvers.merge_orderings(inst, machine, mu)
        keys = transform_instance(inst, [mu] * inst.m)[machine - 1]
        want = tuple(int(j) + 1 for j in nominal.stable_order(keys))
        return got == want

    run_check("makespan-recurrence-vs-tuples", recurrence_vs_tuples)
    run_check("adversary-vs-scenario-enumeration", adversary_vs_scenarios)
    run_check("weak-duality-on-grid", weak_duality)
    run_check("johnson-vs-brute-force", johnson_optimal)
    run_check("merge-vs-stable-sort", merge_matches_sort)

    lines.append("verify: PASS" if all_ok else "verify: FAIL")
    _write_output("\n".join(lines) + "\n", args.output)
    return 0 if all_ok else 1


_COMMANDS = {
    "solve": _cmd_solve,
    "evaluate": _cmd_evaluate,
    "generate": _cmd_generate,
    "bench": _cmd_bench,
    "verify": _cmd_verify,
}


def cli_main(argv=None) -> int:
    """Entry point; returns the process exit code."""
    try:
        args = _build_parser().parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except (InputError, OracleLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # internal failure, e.g. inner-solver blowup
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
