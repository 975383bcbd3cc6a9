"""Command line entry point: ``divclust [solve] --instance FILE ...`` and ``divclust generate``.

Reports are ``key=value`` lines (values JSON-encoded) in a fixed field
order; timing lines all start with ``time_`` so they can be masked.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass

from .drivers import default_threads, solve_div_clustering, solve_fair
from .errors import BadParameter, CapExceeded, Infeasible, MetricViolation, ParseError, SchemaError
from .generators import KINDS, generate
from .instance import check_div_r_sat, check_fair
from .io import dumps_instance, load_instance
from .oracle import brute_force_div, brute_force_fair

ALGORITHMS = ("auto", "fpt-submodular", "fpt-warmup", "supplier-matching", "fair", "exact")
EXIT_PARSE, EXIT_INFEASIBLE, EXIT_CAP = 2, 3, 4
REPORT_VERSION = 1


@dataclass
class Config:
    instance: str
    format: str = "json"
    objective: str | None = None
    algorithm: str = "auto"
    epsilon: float = 0.25
    exact: bool = False
    coreset: str = "auto"
    grid: str = "geometric"
    inner: str = "greedy"
    fair_mode: str = "zero-copy"
    seed: int = 0
    threads: int = 0
    k: int | None = None
    requirements: tuple | None = None
    out: str | None = None


def _resolve_algorithm(cfg, objective):
    algo = cfg.algorithm
    if algo == "auto":
        return "supplier-matching" if objective == "supplier" else "fpt-submodular"
    if algo in ("fpt-submodular", "fpt-warmup") and objective == "supplier":
        raise BadParameter(f"{algo} handles median/means; use supplier-matching for supplier")
    if algo == "supplier-matching" and objective != "supplier":
        raise BadParameter("supplier-matching requires the supplier objective")
    return algo


def _solve(cfg, inst, algo, threads):
    if algo == "exact":
        return brute_force_div(inst)
    if algo == "fair":
        return solve_fair(
            inst,
            cfg.epsilon,
            mode=cfg.fair_mode,
            method="submodular",
            inner=cfg.inner,
            grid=cfg.grid,
        )
    coreset = {"auto": None, "on": True, "off": False}[cfg.coreset]
    return solve_div_clustering(
        inst,
        cfg.epsilon,
        method="warmup" if algo == "fpt-warmup" else "submodular",
        inner=cfg.inner,
        grid=cfg.grid,
        coreset=coreset,
        seed=cfg.seed,
        threads=threads,
    )


def run(cfg):
    """Solve one instance; returns ``(report, exit_code)`` with report an ordered dict."""
    threads = cfg.threads or default_threads()
    report = {"report_version": REPORT_VERSION, "instance": cfg.instance}
    timings = {}
    try:
        t0 = time.perf_counter()
        inst = load_instance(
            cfg.instance, cfg.format, objective=cfg.objective, k=cfg.k, requirements=cfg.requirements
        )
        timings["time_load"] = time.perf_counter() - t0
        algo = _resolve_algorithm(cfg, inst.objective)
        report.update(
            {
                "objective": inst.objective,
                "algorithm": algo,
                "epsilon": cfg.epsilon,
                "grid": cfg.grid,
                "inner": cfg.inner,
                "fair_mode": cfg.fair_mode,
                "coreset": cfg.coreset,
                "seed": cfg.seed,
                "k": inst.k,
                "t": inst.t,
                "clients": int(inst.metric.client_ids.size),
                "facilities_available": int(inst.metric.facility_ids.size),
            }
        )
        t0 = time.perf_counter()
        sol = _solve(cfg, inst, algo, threads)
        timings["time_solve"] = time.perf_counter() - t0
        feasible = check_fair(inst, sol.facilities) if algo == "fair" else check_div_r_sat(inst, sol.facilities)
        report.update(
            {
                "status": "ok",
                "solution": list(sol.facilities),
                "cost": sol.cost,
                "feasible": feasible,
                "provenance": sol.provenance,
                "patterns": sol.stats.get("patterns", 0),
                "guesses": sol.stats.get("guesses", 0),
            }
        )
        if cfg.exact:
            t0 = time.perf_counter()
            opt = brute_force_fair(inst) if algo == "fair" else brute_force_div(inst)
            timings["time_exact"] = time.perf_counter() - t0
            report["opt"] = opt.cost
            report["ratio"] = 1.0 if opt.cost == 0 and sol.cost == 0 else sol.cost / opt.cost if opt.cost else None
        code = 0
    except (ParseError, SchemaError, MetricViolation, BadParameter, OSError) as exc:
        report.update({"status": "error", "error": f"{type(exc).__name__}: {exc}"})
        code = EXIT_PARSE
    except Infeasible as exc:
        report.update({"status": "Infeasible", "error": str(exc)})
        code = EXIT_INFEASIBLE
    except CapExceeded as exc:
        report.update({"status": "CapExceeded", "error": str(exc)})
        code = EXIT_CAP
    report["threads"] = threads
    report.update(timings)
    return report, code


def format_report(report):
    return "".join(f"{key}={json.dumps(value)}\n" for key, value in report.items())


def canonical_report(text):
    """Report text with timing and thread-count lines removed."""
    keep = [line for line in text.splitlines() if not line.startswith(("time_", "threads="))]
    return "\n".join(keep) + "\n"


def _parse_requirements(text):
    if text is None:
        return None
    return tuple(int(x) for x in text.split(","))


def _parse_params(items):
    params = {}
    for item in items or []:
        key, _, value = item.partition("=")
        try:
            params[key.replace("-", "_")] = json.loads(value)
        except json.JSONDecodeError:
            params[key.replace("-", "_")] = value
    return params


def build_parser():
    parser = argparse.ArgumentParser(prog="divclust", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command")

    solve = sub.add_parser("solve", help="solve an instance and print a report")
    solve.add_argument("--instance", required=True)
    solve.add_argument("--format", choices=("json", "csv-points"), default="json")
    solve.add_argument("--objective", choices=("median", "means", "supplier"))
    solve.add_argument("--algorithm", choices=ALGORITHMS, default="auto")
    solve.add_argument("--epsilon", type=float, default=0.25)
    solve.add_argument("--exact", action="store_true", help="also run the exhaustive oracle")
    solve.add_argument("--coreset", choices=("auto", "on", "off"), default="auto")
    solve.add_argument("--grid", choices=("geometric", "exact"), default="geometric")
    solve.add_argument("--inner", choices=("greedy", "exhaustive"), default="greedy")
    solve.add_argument("--fair-mode", choices=("zero-copy", "paper-epsilon"), default="zero-copy")
    solve.add_argument("--seed", type=int, default=0)
    solve.add_argument("--threads", type=int, default=0, help="0 = all cores")
    solve.add_argument("--k", type=int, help="k for csv-points instances")
    solve.add_argument("--requirements", help="comma-separated r for csv-points instances")
    solve.add_argument("--out")

    gen = sub.add_parser("generate", help="write a random instance as JSON")
    gen.add_argument("--kind", choices=KINDS, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--param", action="append", metavar="KEY=VALUE")
    gen.add_argument("--objective", choices=("median", "means", "supplier"), default="median")
    gen.add_argument("--out")
    return parser


def _write(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] not in ("solve", "generate", "-h", "--help"):
        argv.insert(0, "solve")
    args = build_parser().parse_args(argv)
    if args.command == "generate":
        try:
            inst = generate(args.kind, _parse_params(args.param), args.seed)
        except (BadParameter, TypeError) as exc:
            sys.stderr.write(f"divclust: {exc}\n")
            return EXIT_PARSE
        if args.objective != inst.objective:
            from dataclasses import replace

            inst = replace(inst, objective=args.objective)
        validate = None if args.kind != "vertex-cover-hard" else False
        _write(dumps_instance(inst, validate) + "\n", args.out)
        return 0
    if args.command is None:
        build_parser().print_help()
        return EXIT_PARSE
    cfg = Config(
        instance=args.instance,
        format=args.format,
        objective=args.objective,
        algorithm=args.algorithm,
        epsilon=args.epsilon,
        exact=args.exact,
        coreset=args.coreset,
        grid=args.grid,
        inner=args.inner,
        fair_mode=args.fair_mode,
        seed=args.seed,
        threads=args.threads,
        k=args.k,
        requirements=_parse_requirements(args.requirements),
        out=args.out,
    )
    report, code = run(cfg)
    _write(format_report(report), cfg.out)
    return code


def config_dict(cfg):
    return asdict(cfg)


if __name__ == "__main__":
    sys.exit(main())
