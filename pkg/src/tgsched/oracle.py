"""Exhaustive optimum for small instances.

The search enumerates (ready task, processor) choices under the same
earliest-start timing rule the decoder uses: a task starts at the maximum
of its processor's availability and, over its predecessors, finish plus
comm when placed across processors.  That space contains an optimal
schedule: take any feasible schedule, replay its tasks in start-time order
with the same processor assignment, and every start can only move earlier
(predecessor finishes and processor availability only shrink), so the
replayed makespan is no larger.  Inserting idle time therefore never helps,
and every decoder output is one branch of this search, which is what makes
the oracle a sound lower bound for the metaheuristics.

Branches are cut with an admissible lower bound, a dominance memo on
identical search states, and processor-relabeling symmetry breaking (only
the lowest-indexed empty processor is ever tried).  None of these change
the optimum, only the node count.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import TaskGraph, topo_order
from .schedule import Schedule

MAX_ORACLE_TASKS = 12


class GraphTooLargeError(ValueError):
    """Instance exceeds the exhaustive-search size guard."""


@dataclass(frozen=True)
class OracleResult:
    optimum_makespan: int
    schedule: Schedule
    nodes_explored: int


def _downstream_weight(g: TaskGraph) -> list[int]:
    """cost(t) + heaviest zero-comm path below t; admissible remainder."""
    weight = [0] * g.task_count
    for t in reversed(topo_order(g)):
        below = max((weight[v] for v in g.successors[t]), default=0)
        weight[t] = g.costs[t] + below
    return weight


def _greedy_incumbent(g: TaskGraph, nprocs: int, weight: list[int]):
    """Heaviest-path-first list schedule; a decent starting upper bound."""
    k = g.task_count
    pending = [len(g.predecessors[t]) for t in range(k)]
    ready = [t for t in range(k) if pending[t] == 0]
    proc = [0] * k
    start = [0] * k
    finish = [0] * k
    avail = [0] * nprocs
    placed = [False] * k
    for _ in range(k):
        ready.sort(key=lambda t: (-weight[t], t))
        t = ready.pop(0)
        best_p, best_st = 0, None
        for p in range(nprocs):
            st = avail[p]
            for u in g.predecessors[t]:
                arrival = finish[u] + (g.comm[(u, t)] if proc[u] != p else 0)
                st = max(st, arrival)
            if best_st is None or st < best_st:
                best_p, best_st = p, st
        proc[t], start[t] = best_p, best_st
        finish[t] = best_st + g.costs[t]
        avail[best_p] = finish[t]
        placed[t] = True
        for v in g.successors[t]:
            pending[v] -= 1
            if pending[v] == 0:
                ready.append(v)
    return max(finish), proc, start, finish


def brute_force_optimum(g: TaskGraph, nprocs: int) -> OracleResult:
    """Optimal makespan and a witness schedule; k is capped for tractability."""
    k = g.task_count
    if k > MAX_ORACLE_TASKS:
        raise GraphTooLargeError(
            f"exhaustive search is limited to {MAX_ORACLE_TASKS} tasks, got {k}"
        )
    if nprocs < 1:
        raise ValueError("need at least one processor")

    weight = _downstream_weight(g)
    total_cost = sum(g.costs)
    preds = g.predecessors
    succs = g.successors
    comm = g.comm
    costs = g.costs
    full_mask = (1 << k) - 1

    incumbent, best_proc, best_start, best_finish = _greedy_incumbent(
        g, nprocs, weight
    )

    pending = [len(preds[t]) for t in range(k)]
    proc = [0] * k
    start = [0] * k
    finish = [0] * k
    avail = [0] * nprocs
    nodes = 0
    seen: set = set()
    topo = topo_order(g)

    def remaining_bound(placed_mask: int, partial_ms: int) -> int:
        # max of: work already committed; perfectly balanced remaining load
        # (append-only, so each processor is blocked until its avail time);
        # heaviest remaining precedence path ignoring comm.
        rem = total_cost
        cp = 0
        est = [0] * k
        for t in range(k):
            if placed_mask >> t & 1:
                rem -= costs[t]
        load = -(-(rem + sum(avail)) // nprocs)  # ceil
        for t in topo:
            if placed_mask >> t & 1:
                continue
            lo = 0
            for u in preds[t]:
                lo = max(lo, finish[u] if placed_mask >> u & 1 else est[u])
            est[t] = lo + costs[t]
            cp = max(cp, est[t])
        return max(partial_ms, load, cp)

    def dfs(placed_mask: int, partial_ms: int, used: int):
        nonlocal incumbent, nodes, best_proc, best_start, best_finish
        nodes += 1
        if placed_mask == full_mask:
            if partial_ms < incumbent:
                incumbent = partial_ms
                best_proc = proc.copy()
                best_start = start.copy()
                best_finish = finish.copy()
            return
        if remaining_bound(placed_mask, partial_ms) >= incumbent:
            return
        frontier = tuple(
            (t, proc[t], finish[t])
            for t in range(k)
            if placed_mask >> t & 1 and any(not placed_mask >> v & 1 for v in succs[t])
        )
        key = (placed_mask, tuple(avail), frontier)
        if key in seen:
            return
        seen.add(key)
        ready = sorted(
            (t for t in range(k) if not placed_mask >> t & 1 and pending[t] == 0),
            key=lambda t: (-weight[t], t),
        )
        for t in ready:
            for p in range(min(used + 1, nprocs)):
                st = avail[p]
                for u in preds[t]:
                    arrival = finish[u] + (comm[(u, t)] if proc[u] != p else 0)
                    if arrival > st:
                        st = arrival
                saved_avail = avail[p]
                proc[t], start[t], finish[t] = p, st, st + costs[t]
                avail[p] = finish[t]
                for v in succs[t]:
                    pending[v] -= 1
                dfs(
                    placed_mask | 1 << t,
                    max(partial_ms, finish[t]),
                    max(used, p + 1),
                )
                for v in succs[t]:
                    pending[v] += 1
                avail[p] = saved_avail

    dfs(0, 0, 0)

    witness = Schedule(
        processors=tuple(best_proc),
        starts=tuple(best_start),
        finishes=tuple(best_finish),
        makespan=incumbent,
        processor_count=nprocs,
    )
    return OracleResult(
        optimum_makespan=incumbent, schedule=witness, nodes_explored=nodes
    )
