"""Command-line harness.

Subcommands: run, compare, oracle, gantt, augment.  Exit codes: 0 on
success, 2 on usage errors (argparse's own convention), 3 on input errors
such as unreadable or malformed graph files.

The seed defaults to the TGSCHED_SEED environment variable when --seed is
not given, and to 0 when neither is set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from pathlib import Path

from .ga import GAConfig
from .gantt import render_svg, text_lanes
from .graph import (
    CommAugmentSpec,
    GraphError,
    TaskGraph,
    augment_comm,
    load_graph,
    to_native,
)
from .hybrid import MODES, HybridConfig, compare, run
from .oracle import GraphTooLargeError, brute_force_optimum
from .schedule import Schedule, check_schedule


class InputError(Exception):
    """Unusable input file or value; mapped to exit code 3."""


def _detect_format(path: str, explicit: str | None) -> str:
    if explicit:
        return explicit
    return "stg" if Path(path).suffix.lower() == ".stg" else "native"


def _read_graph(path: str, fmt: str | None) -> tuple[TaskGraph, str]:
    resolved = _detect_format(path, fmt)
    try:
        return load_graph(path, resolved), resolved
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    except GraphError as exc:
        raise InputError(f"{path}: {exc}") from None


def _seed_default() -> int:
    env = os.environ.get("TGSCHED_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise InputError(f"TGSCHED_SEED is not an integer: {env!r}") from None


def _parse_seed_range(text: str) -> list[int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError("expected a range like 1..10")
    try:
        a, b = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError("expected integer endpoints like 1..10")
    if b < a:
        raise argparse.ArgumentTypeError("seed range end must be >= start")
    return list(range(a, b + 1))


def _add_graph_args(p: argparse.ArgumentParser):
    p.add_argument("--graph", required=True, help="path to the task graph file")
    p.add_argument(
        "--format",
        choices=("stg", "native"),
        help="graph file format (default: stg for .stg files, else native)",
    )


def _add_search_args(p: argparse.ArgumentParser):
    p.add_argument("-p", "--processors", type=int, default=2)
    p.add_argument("--pop", type=int, default=100, help="population size")
    p.add_argument("--crossover", type=float, default=0.7, help="crossover rate")
    p.add_argument("--mutation", type=float, default=0.3, help="mutation rate")
    p.add_argument("--elite", type=float, default=0.1, help="elite fraction")
    p.add_argument("--memory-depth", type=int, default=5)
    p.add_argument(
        "--switch-stagnation",
        type=int,
        default=5,
        help="stagnant generations before the automata phase starts",
    )
    p.add_argument(
        "--switch-generation",
        type=int,
        default=None,
        help="switch to the automata phase after this many generations instead",
    )
    p.add_argument(
        "--term-stagnation",
        type=int,
        default=10,
        help="iterations with an unchanged phase-best makespan that end the run",
    )
    p.add_argument("--max-iters", type=int, default=10000)
    p.add_argument(
        "--augment-seed",
        type=int,
        default=None,
        help="overwrite comm costs with seeded uniform draws before the run",
    )
    p.add_argument("--min-comm", type=int, default=1)
    p.add_argument("--max-comm", type=int, default=20)


def _build_config(args, mode: str, seed: int) -> HybridConfig:
    return HybridConfig(
        ga=GAConfig(
            popsize=args.pop,
            crossover_rate=args.crossover,
            mutation_rate=args.mutation,
            elite_fraction=args.elite,
            seed=seed,
        ),
        processors=args.processors,
        mode=mode,
        memory_depth=args.memory_depth,
        switch_stagnation=args.switch_stagnation,
        switch_generation=args.switch_generation,
        term_stagnation=args.term_stagnation,
        max_iterations=args.max_iters,
    )


def _maybe_augment(g: TaskGraph, args) -> tuple[TaskGraph, dict | None]:
    if args.augment_seed is None:
        return g, None
    spec = CommAugmentSpec(
        seed=args.augment_seed, min_comm=args.min_comm, max_comm=args.max_comm
    )
    info = {
        "seed": spec.seed,
        "min_comm": spec.min_comm,
        "max_comm": spec.max_comm,
    }
    return augment_comm(g, spec), info


def _write_gantt(schedule: Schedule, path: str):
    out = Path(path)
    if out.suffix.lower() == ".svg":
        out.write_text(render_svg(schedule), encoding="utf-8")
    else:
        out.write_text(text_lanes(schedule), encoding="utf-8")


def cmd_run(args) -> int:
    g, _ = _read_graph(args.graph, args.format)
    g, augment_info = _maybe_augment(g, args)
    seed = args.seed if args.seed is not None else _seed_default()
    cfg = _build_config(args, args.mode, seed)
    report = run(g, cfg, graph_name=Path(args.graph).name, augment_info=augment_info)
    Path(args.out).write_text(report.to_json(), encoding="utf-8")
    if args.gantt:
        _write_gantt(report.best_schedule, args.gantt)
    print(
        f"makespan={report.best_makespan} "
        f"iterations={report.ga_generations}+{report.la_iterations} "
        f"evals={report.evaluations} wall_ms={report.wall_ms:.1f}"
    )
    print(f"report written to {args.out}")
    return 0


def cmd_compare(args) -> int:
    g, _ = _read_graph(args.graph, args.format)
    g, augment_info = _maybe_augment(g, args)
    seeds = args.seeds if args.seeds else [
        args.seed if args.seed is not None else _seed_default()
    ]
    modes = args.mode or ["hybrid", "ga-only"]
    base = _build_config(args, modes[0], seeds[0])
    result = compare(
        g,
        base,
        modes=modes,
        seeds=seeds,
        graph_name=Path(args.graph).name,
        jobs=args.jobs,
        augment_info=augment_info,
    )
    Path(args.out).write_text(result.to_csv(), encoding="utf-8")
    for mode in modes:
        s = result.summary(mode)
        print(
            f"{mode}: mean makespan {s.mean_makespan:.2f}, "
            f"min {s.min_makespan}, mean iterations {s.mean_iterations:.1f}"
        )
    print(f"comparison written to {args.out}")
    return 0


def cmd_oracle(args) -> int:
    g, _ = _read_graph(args.graph, args.format)
    try:
        result = brute_force_optimum(g, args.processors)
    except GraphTooLargeError as exc:
        raise InputError(str(exc)) from None
    print(
        f"optimum={result.optimum_makespan} "
        f"nodes_explored={result.nodes_explored}"
    )
    if args.out:
        doc = {
            "optimum_makespan": result.optimum_makespan,
            "nodes_explored": result.nodes_explored,
            "schedule": {
                "processor_count": result.schedule.processor_count,
                "placements": [
                    {"task": t, "processor": p, "start": s, "finish": f}
                    for t, p, s, f in result.schedule.placements
                ],
            },
        }
        Path(args.out).write_text(
            json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
        print(f"witness written to {args.out}")
    return 0


def cmd_gantt(args) -> int:
    try:
        doc = json.loads(Path(args.report).read_text(encoding="utf-8"))
        sched = doc["best_schedule"]
        graph = doc["graph"]
        placements = sched["placements"]
        schedule = Schedule(
            processors=tuple(p["processor"] for p in placements),
            starts=tuple(p["start"] for p in placements),
            finishes=tuple(p["finish"] for p in placements),
            makespan=sched["makespan"],
            processor_count=sched["processor_count"],
        )
        g = TaskGraph(
            costs=tuple(t["cost"] for t in sorted(graph["tasks"], key=lambda t: t["id"])),
            edges=tuple((e["from"], e["to"], e["comm"]) for e in graph["edges"]),
        )
    except OSError as exc:
        raise InputError(f"cannot read {args.report}: {exc.strerror or exc}") from None
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise InputError(f"{args.report} is not a run report: {exc}") from None
    try:
        check_schedule(schedule, g)  # never render an inconsistent chart
    except ValueError as exc:
        raise InputError(f"{args.report}: {exc}") from None
    _write_gantt(schedule, args.out)
    print(f"gantt written to {args.out}")
    return 0


def cmd_augment(args) -> int:
    g, _ = _read_graph(args.graph, args.format)
    seed = args.seed if args.seed is not None else _seed_default()
    spec = CommAugmentSpec(seed=seed, min_comm=args.min_comm, max_comm=args.max_comm)
    augmented = augment_comm(g, spec)
    meta = {
        "source": Path(args.graph).name,
        "augment": {
            "seed": spec.seed,
            "min_comm": spec.min_comm,
            "max_comm": spec.max_comm,
        },
    }
    Path(args.out).write_text(to_native(augmented, meta=meta), encoding="utf-8")
    print(f"augmented graph written to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tgsched",
        description="Schedule task graphs on homogeneous processors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one seeded search and write a report")
    _add_graph_args(p_run)
    _add_search_args(p_run)
    p_run.add_argument("--mode", choices=MODES, default="hybrid")
    p_run.add_argument("--seed", type=int, default=None)
    p_run.add_argument("--gantt", help="also render the best schedule to this path")
    p_run.add_argument("--out", default="run_report.json")
    p_run.set_defaults(func=cmd_run)

    p_cmp = sub.add_parser("compare", help="run a mode/seed grid and write a CSV")
    _add_graph_args(p_cmp)
    _add_search_args(p_cmp)
    p_cmp.add_argument(
        "--mode",
        choices=MODES,
        action="append",
        help="mode to include; repeatable (default: hybrid and ga-only)",
    )
    p_cmp.add_argument("--seed", type=int, default=None)
    p_cmp.add_argument(
        "--seeds", type=_parse_seed_range, help="inclusive seed range like 1..10"
    )
    p_cmp.add_argument("--jobs", type=int, default=1)
    p_cmp.add_argument("--out", default="compare.csv")
    p_cmp.set_defaults(func=cmd_compare)

    p_orc = sub.add_parser("oracle", help="exact optimum for a small instance")
    _add_graph_args(p_orc)
    p_orc.add_argument("-p", "--processors", type=int, default=2)
    p_orc.add_argument("--out", help="write the witness schedule as JSON")
    p_orc.set_defaults(func=cmd_oracle)

    p_gnt = sub.add_parser("gantt", help="render the schedule of a run report")
    p_gnt.add_argument("--report", required=True, help="run report JSON path")
    p_gnt.add_argument(
        "--out", required=True, help="output path (.svg for SVG, else text lanes)"
    )
    p_gnt.set_defaults(func=cmd_gantt)

    p_aug = sub.add_parser(
        "augment", help="overwrite comm costs with seeded uniform draws"
    )
    _add_graph_args(p_aug)
    p_aug.add_argument("--seed", type=int, default=None)
    p_aug.add_argument("--min-comm", type=int, default=1)
    p_aug.add_argument("--max-comm", type=int, default=20)
    p_aug.add_argument("--out", required=True)
    p_aug.set_defaults(func=cmd_augment)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
