"""Two-phase search orchestration.

A hybrid run breeds a GA population until its best member stagnates for
``switch_stagnation`` consecutive generations (or, when configured, until a
fixed generation count), then maps every chromosome onto a learning
automaton and continues with automata sweeps.  Each generation and each
sweep counts as one iteration.

Termination watches the best makespan of the current population or pool:
the run stops once that value is unchanged for ``term_stagnation``
consecutive iterations of the active phase (the counter restarts at the
phase switch), or when the iteration safety cap is hit.  Under elitism the
population best only moves by improving, so in a GA phase "unchanged" and
"not improved" are the same thing.  In an automata phase the pool best can
drift up when boundary replacements hit the leading automata, and any such
movement resets the counter: the sweeps continue until the pool settles.
``ga-only`` skips the automata phase, ``la-only`` maps a random population
straight onto automata.

The best solution is tracked globally across both phases, so a boundary
replacement inside the automata pool can never lose it.
"""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from statistics import mean

from . import __version__
from ._core import BACKEND
from .ga import GAConfig, best_of, initial_population, next_generation
from .graph import TaskGraph
from .oma import from_chromosome, la_sweep
from .rng import Xoshiro256StarStar
from .schedule import Schedule, decode, gene_range

MODES = ("hybrid", "ga-only", "la-only")


@dataclass(frozen=True)
class HybridConfig:
    ga: GAConfig = field(default_factory=GAConfig)
    processors: int = 2
    mode: str = "hybrid"
    memory_depth: int = 5
    switch_stagnation: int = 5
    switch_generation: int | None = None
    term_stagnation: int = 10
    max_iterations: int = 10000

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.processors < 1:
            raise ValueError("need at least one processor")
        if self.memory_depth < 1:
            raise ValueError("memory depth must be >= 1")
        if self.switch_stagnation < 1 or self.term_stagnation < 1:
            raise ValueError("stagnation windows must be >= 1")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")


@dataclass
class RunReport:
    """Everything needed to reconstruct a run's result.

    ``trace[i]`` is the best makespan seen up to iteration i (entry 0 covers
    the initial population), so the trace is non-increasing by construction.
    ``wall_ms`` is kept out of the JSON serialization: reports with the same
    seed must be byte-identical, and wall time is the one field that never
    is.  It still reaches stdout and the comparison CSV.
    """

    mode: str
    best_makespan: int
    best_chromosome: list[int]
    best_schedule: Schedule
    ga_generations: int
    la_iterations: int
    iterations_to_best: int
    phase_switch_iteration: int | None
    trace: list[int]
    evaluations: int
    config: dict
    graph: dict
    wall_ms: float = 0.0

    @property
    def total_iterations(self) -> int:
        return self.ga_generations + self.la_iterations

    def to_dict(self) -> dict:
        return {
            "schema": "tgsched-run-report@1",
            "version": __version__,
            "backend": BACKEND,
            "mode": self.mode,
            "best_makespan": self.best_makespan,
            "best_chromosome": self.best_chromosome,
            "best_schedule": {
                "processor_count": self.best_schedule.processor_count,
                "makespan": self.best_schedule.makespan,
                "placements": [
                    {"task": t, "processor": p, "start": s, "finish": f}
                    for t, p, s, f in self.best_schedule.placements
                ],
            },
            "ga_generations": self.ga_generations,
            "la_iterations": self.la_iterations,
            "iterations_to_best": self.iterations_to_best,
            "phase_switch_iteration": self.phase_switch_iteration,
            "trace": self.trace,
            "evaluations": self.evaluations,
            "config": self.config,
            "graph": self.graph,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def _config_echo(cfg: HybridConfig, k: int) -> dict:
    return {
        "processors": cfg.processors,
        "mode": cfg.mode,
        "popsize": cfg.ga.popsize,
        "crossover_rate": cfg.ga.crossover_rate,
        "mutation_rate": cfg.ga.mutation_rate,
        "elite_fraction": cfg.ga.elite_fraction,
        "seed": cfg.ga.seed,
        "memory_depth": cfg.memory_depth,
        "switch_stagnation": cfg.switch_stagnation,
        "switch_generation": cfg.switch_generation,
        "term_stagnation": cfg.term_stagnation,
        "max_iterations": cfg.max_iterations,
        "gene_range": gene_range(k, cfg.processors),
        "prng": "xoshiro256**",
    }


def _graph_echo(g: TaskGraph, name: str | None, augment: dict | None) -> dict:
    return {
        "name": name,
        "task_count": g.task_count,
        "tasks": [{"id": i, "cost": c} for i, c in enumerate(g.costs)],
        "edges": [{"from": u, "to": v, "comm": c} for u, v, c in g.edges],
        "augment": augment,
    }


def run(g: TaskGraph, cfg: HybridConfig, graph_name: str | None = None,
        augment_info: dict | None = None) -> RunReport:
    """Execute one seeded run and collect its report."""
    t0 = time.perf_counter()
    nprocs = cfg.processors
    rng = Xoshiro256StarStar(cfg.ga.seed)

    pop = initial_population(g, nprocs, cfg.ga, rng)
    evaluations = cfg.ga.popsize
    leader = best_of(pop)
    best_ms = leader.makespan
    best_genes = leader.genes.copy()
    trace = [best_ms]
    iterations_to_best = 0
    ga_generations = 0
    la_iterations = 0
    phase_switch_iteration: int | None = None
    stagnant = 0
    phase_best = best_ms  # best of the current population or pool
    phase = "la" if cfg.mode == "la-only" else "ga"
    pool = None
    if phase == "la":
        pool = [
            from_chromosome(ind.genes, g, nprocs, cfg.memory_depth, ind.makespan)
            for ind in pop.members
        ]
        phase_switch_iteration = 0

    iteration = 0
    while iteration < cfg.max_iterations:
        if phase == "ga" and cfg.mode == "hybrid":
            due = (
                stagnant >= cfg.switch_stagnation
                if cfg.switch_generation is None
                else ga_generations >= cfg.switch_generation
            )
            if due:
                pool = [
                    from_chromosome(
                        ind.genes, g, nprocs, cfg.memory_depth, ind.makespan
                    )
                    for ind in pop.members
                ]
                phase = "la"
                phase_switch_iteration = iteration
                stagnant = 0
                # the mapping preserves makespans, so the pool best equals
                # the final population best and the counter continues from it

        if phase == "ga":
            pop = next_generation(pop, cfg.ga, g, nprocs, rng)
            evaluations += cfg.ga.popsize - cfg.ga.elite_count
            ga_generations += 1
            leader = best_of(pop)
            round_best, round_genes = leader.makespan, leader.genes
        else:
            pool = la_sweep(pool, g, nprocs, rng)
            evaluations += len(pool)
            la_iterations += 1
            round_best, round_genes = min(
                ((a.makespan, a.genes) for a in pool), key=lambda x: x[0]
            )
        iteration += 1

        if round_best < best_ms:
            best_ms = round_best
            best_genes = round_genes.copy()
            iterations_to_best = iteration
        trace.append(best_ms)
        stagnant = stagnant + 1 if round_best == phase_best else 0
        phase_best = round_best
        if stagnant >= cfg.term_stagnation:
            break

    wall_ms = (time.perf_counter() - t0) * 1000.0
    return RunReport(
        mode=cfg.mode,
        best_makespan=best_ms,
        best_chromosome=[int(x) for x in best_genes],
        best_schedule=decode(best_genes, g, nprocs),
        ga_generations=ga_generations,
        la_iterations=la_iterations,
        iterations_to_best=iterations_to_best,
        phase_switch_iteration=phase_switch_iteration,
        trace=trace,
        evaluations=evaluations,
        config=_config_echo(cfg, g.task_count),
        graph=_graph_echo(g, graph_name, augment_info),
        wall_ms=wall_ms,
    )


CSV_COLUMNS = (
    "graph",
    "processors",
    "mode",
    "seed",
    "makespan",
    "ga_gens",
    "la_iters",
    "evals",
    "wall_ms",
)


@dataclass(frozen=True)
class ModeSummary:
    mode: str
    mean_makespan: float
    min_makespan: int
    mean_iterations: float
    mean_evaluations: float


@dataclass
class Comparison:
    graph_name: str
    processors: int
    seeds: list[int]
    modes: list[str]
    reports: dict[tuple[str, int], RunReport]

    def summary(self, mode: str) -> ModeSummary:
        runs = [self.reports[(mode, s)] for s in self.seeds]
        return ModeSummary(
            mode=mode,
            mean_makespan=mean(r.best_makespan for r in runs),
            min_makespan=min(r.best_makespan for r in runs),
            mean_iterations=mean(r.total_iterations for r in runs),
            mean_evaluations=mean(r.evaluations for r in runs),
        )

    def to_csv(self) -> str:
        """Data rows per (mode, seed) plus one mean row per mode."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for mode in self.modes:
            for seed in self.seeds:
                r = self.reports[(mode, seed)]
                writer.writerow(
                    [
                        self.graph_name,
                        self.processors,
                        mode,
                        seed,
                        r.best_makespan,
                        r.ga_generations,
                        r.la_iterations,
                        r.evaluations,
                        round(r.wall_ms, 3),
                    ]
                )
        for mode in self.modes:
            s = self.summary(mode)
            runs = [self.reports[(mode, seed)] for seed in self.seeds]
            writer.writerow(
                [
                    self.graph_name,
                    self.processors,
                    mode,
                    "mean",
                    round(s.mean_makespan, 3),
                    round(mean(r.ga_generations for r in runs), 3),
                    round(mean(r.la_iterations for r in runs), 3),
                    round(s.mean_evaluations, 3),
                    round(mean(r.wall_ms for r in runs), 3),
                ]
            )
        return buf.getvalue()


def compare(g: TaskGraph, base: HybridConfig, modes: list[str], seeds: list[int],
            graph_name: str = "graph", jobs: int = 1,
            augment_info: dict | None = None) -> Comparison:
    """Run every (mode, seed) cell; cells are independent seeded runs."""
    cells = [(mode, seed) for mode in modes for seed in seeds]

    def one(cell: tuple[str, int]) -> RunReport:
        mode, seed = cell
        cfg = replace(base, mode=mode, ga=replace(base.ga, seed=seed))
        return run(g, cfg, graph_name=graph_name, augment_info=augment_info)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(one, cells))
    else:
        results = [one(cell) for cell in cells]
    return Comparison(
        graph_name=graph_name,
        processors=base.processors,
        seeds=list(seeds),
        modes=list(modes),
        reports=dict(zip(cells, results)),
    )
