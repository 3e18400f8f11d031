"""Chromosome decoding and schedule validation.

A chromosome for a k-task graph on P processors is a length-k integer
vector.  Gene i plays two roles at once: its magnitude is task i's priority
(larger runs earlier among simultaneously ready tasks) and its remainder
modulo P is task i's processor.  Values live in [0, 2*k*P) so that every
(priority rank, processor) combination is reachable.

Decoding is strict-priority list scheduling: the highest-priority ready task
is placed next even if a lower-priority ready task could start earlier, and
placements are append-only per processor (no idle-slot backfilling).  A
task's start time is the maximum of its processor's availability and, over
its predecessors, finish time plus the edge's comm cost when the two tasks
sit on different processors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ._core import decode_kernel
from .graph import TaskGraph


def gene_range(k: int, nprocs: int) -> int:
    """Exclusive upper bound for gene values: 2 * k * P."""
    if k < 1 or nprocs < 1:
        raise ValueError("need at least one task and one processor")
    return 2 * k * nprocs


def processor_of(gene: int, nprocs: int) -> int:
    """Processor encoded by a gene value: gene mod P."""
    if nprocs < 1:
        raise ValueError("need at least one processor")
    if gene < 0:
        raise ValueError("gene values are non-negative")
    return gene % nprocs


class InvalidScheduleError(ValueError):
    """A schedule violates one of its structural invariants."""


@dataclass(frozen=True)
class Schedule:
    """Placement of every task: processor, start and finish, by task id."""

    processors: tuple[int, ...]
    starts: tuple[int, ...]
    finishes: tuple[int, ...]
    makespan: int
    processor_count: int

    @cached_property
    def placements(self) -> tuple[tuple[int, int, int, int], ...]:
        """(task, processor, start, finish) tuples in task-id order."""
        return tuple(
            (t, self.processors[t], self.starts[t], self.finishes[t])
            for t in range(len(self.processors))
        )

    def lanes(self) -> list[list[tuple[int, int, int]]]:
        """Per-processor placements as (start, finish, task), time-ordered."""
        rows: list[list[tuple[int, int, int]]] = [
            [] for _ in range(self.processor_count)
        ]
        for t, p, s, f in self.placements:
            rows[p].append((s, f, t))
        for row in rows:
            row.sort()
        return rows


def _as_gene_array(genes) -> np.ndarray:
    arr = np.ascontiguousarray(genes, dtype=np.int64)
    if arr.ndim != 1:
        raise ValueError("a chromosome must be a flat integer vector")
    return arr


def decode(genes, g: TaskGraph, nprocs: int) -> Schedule:
    """Decode a chromosome into a full Schedule."""
    arr = _as_gene_array(genes)
    if len(arr) != g.task_count:
        raise ValueError(
            f"chromosome length {len(arr)} does not match task count {g.task_count}"
        )
    if nprocs < 1:
        raise ValueError("need at least one processor")
    ka = g.kernel_arrays
    proc, start, finish, ms = decode_kernel(
        arr, ka.costs, ka.pred_ptr, ka.pred_src, ka.pred_comm,
        ka.succ_ptr, ka.succ_dst, nprocs,
    )
    return Schedule(
        processors=tuple(int(x) for x in proc),
        starts=tuple(int(x) for x in start),
        finishes=tuple(int(x) for x in finish),
        makespan=int(ms),
        processor_count=nprocs,
    )


def evaluate_makespan(genes, g: TaskGraph, nprocs: int) -> int:
    """Makespan of the decoded schedule, skipping Schedule construction.

    Hot path: called once per fitness evaluation.
    """
    arr = _as_gene_array(genes)
    if len(arr) != g.task_count:
        raise ValueError(
            f"chromosome length {len(arr)} does not match task count {g.task_count}"
        )
    ka = g.kernel_arrays
    return int(
        decode_kernel(
            arr, ka.costs, ka.pred_ptr, ka.pred_src, ka.pred_comm,
            ka.succ_ptr, ka.succ_dst, nprocs,
        )[3]
    )


def makespan(s: Schedule) -> int:
    """Completion time of the whole schedule."""
    return s.makespan


def check_schedule(s: Schedule, g: TaskGraph) -> None:
    """Raise InvalidScheduleError unless all schedule invariants hold.

    Checked invariants:
      1. finish(t) = start(t) + cost(t) for every task;
      2. tasks on the same processor never overlap in time;
      3. start(v) >= finish(u) + comm(u, v) when u, v sit on different
         processors, and start(v) >= finish(u) when co-located;
      4. makespan equals the maximum finish time.
    """
    k = g.task_count
    if not (len(s.processors) == len(s.starts) == len(s.finishes) == k):
        raise InvalidScheduleError("schedule does not cover every task exactly once")
    for t in range(k):
        if not (0 <= s.processors[t] < s.processor_count):
            raise InvalidScheduleError(f"task {t} placed on unknown processor")
        if s.starts[t] < 0:
            raise InvalidScheduleError(f"task {t} starts before time 0")
        if s.finishes[t] != s.starts[t] + g.costs[t]:
            raise InvalidScheduleError(
                f"task {t}: finish {s.finishes[t]} != start {s.starts[t]} + "
                f"cost {g.costs[t]}"
            )
    for row in s.lanes():
        for (s1, f1, t1), (s2, f2, t2) in zip(row, row[1:]):
            if s2 < f1:
                raise InvalidScheduleError(
                    f"tasks {t1} and {t2} overlap on processor {s.processors[t1]}"
                )
    for u, v, comm in g.edges:
        lag = comm if s.processors[u] != s.processors[v] else 0
        if s.starts[v] < s.finishes[u] + lag:
            raise InvalidScheduleError(
                f"edge ({u}, {v}) violated: start {s.starts[v]} < "
                f"finish {s.finishes[u]} + lag {lag}"
            )
    if s.makespan != max(s.finishes):
        raise InvalidScheduleError(
            f"makespan {s.makespan} != max finish {max(s.finishes)}"
        )
