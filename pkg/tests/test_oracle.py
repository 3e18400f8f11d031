"""Exact-optimum search: closed forms, cross-checks, witness validity."""

import itertools

import numpy as np
import pytest

from daggen import random_dag
from tgsched.graph import TaskGraph, topo_order
from tgsched.oracle import (
    MAX_ORACLE_TASKS,
    GraphTooLargeError,
    brute_force_optimum,
    OracleResult,
)
from tgsched.rng import Xoshiro256StarStar
from tgsched.schedule import check_schedule, evaluate_makespan, gene_range


def diamond():
    return TaskGraph(
        costs=(1, 2, 3, 1),
        edges=((0, 1, 5), (0, 2, 5), (1, 3, 5), (2, 3, 5)),
    )


def critical_path(g):
    """Longest cost-weighted path, communication ignored."""
    finish = [0] * len(g.costs)
    for t in topo_order(g):
        est = max((finish[u] for u in g.predecessors[t]), default=0)
        finish[t] = est + g.costs[t]
    return max(finish)


class TestClosedForms:
    def test_single_task(self):
        res = brute_force_optimum(TaskGraph(costs=(7,), edges=()), 2)
        assert res.optimum_makespan == 7
        assert res.nodes_explored >= 1

    def test_single_processor_is_total_work(self):
        rng = Xoshiro256StarStar(40)
        for _ in range(20):
            g = random_dag(rng, 2 + rng.randbelow(6))
            res = brute_force_optimum(g, 1)
            assert res.optimum_makespan == sum(g.costs)

    def test_diamond_is_seven(self):
        """Every split pays a comm of 5; one processor does 1+2+3+1."""
        assert brute_force_optimum(diamond(), 2).optimum_makespan == 7

    def test_independent_tasks_partition(self):
        g = TaskGraph(costs=(2, 3, 4), edges=())
        assert brute_force_optimum(g, 2).optimum_makespan == 5

    def test_zero_comm_many_procs_is_critical_path(self):
        rng = Xoshiro256StarStar(41)
        for _ in range(20):
            k = 2 + rng.randbelow(6)
            g = random_dag(rng, k, comm_range=(0, 0))
            res = brute_force_optimum(g, k)
            assert res.optimum_makespan == critical_path(g)


class TestAgainstChromosomes:
    def test_lower_bounds_random_decodings(self):
        rng = Xoshiro256StarStar(42)
        for _ in range(30):
            k = 2 + rng.randbelow(7)
            g = random_dag(rng, k)
            opt = brute_force_optimum(g, 2).optimum_makespan
            for _ in range(20):
                genes = np.fromiter(
                    (rng.randbelow(gene_range(k, 2)) for _ in range(k)),
                    dtype=np.int64,
                )
                assert evaluate_makespan(genes, g, 2) >= opt

    def test_equals_exhaustive_chromosome_minimum(self):
        """Every append-only order is realizable by some chromosome, so the
        exhaustive minimum over all gene vectors must hit the optimum."""
        rng = Xoshiro256StarStar(43)
        for _ in range(12):
            k = 2 + rng.randbelow(2)  # k in {2, 3}: full enumeration stays cheap
            g = random_dag(rng, k, comm_range=(0, 6))
            opt = brute_force_optimum(g, 2).optimum_makespan
            best = min(
                evaluate_makespan(np.array(genes, dtype=np.int64), g, 2)
                for genes in itertools.product(range(gene_range(k, 2)), repeat=k)
            )
            assert best == opt


class TestWitness:
    def test_witness_is_valid_and_achieves_optimum(self):
        rng = Xoshiro256StarStar(44)
        for _ in range(25):
            g = random_dag(rng, 2 + rng.randbelow(7))
            res = brute_force_optimum(g, 2)
            check_schedule(res.schedule, g)
            assert res.schedule.makespan == res.optimum_makespan

    def test_more_processors_never_hurt(self):
        rng = Xoshiro256StarStar(45)
        for _ in range(15):
            g = random_dag(rng, 2 + rng.randbelow(5))
            m2 = brute_force_optimum(g, 2).optimum_makespan
            m3 = brute_force_optimum(g, 3).optimum_makespan
            assert m3 <= m2

    def test_node_count_is_deterministic(self):
        g = diamond()
        a = brute_force_optimum(g, 2)
        b = brute_force_optimum(g, 2)
        assert a.nodes_explored == b.nodes_explored
        assert a.optimum_makespan == b.optimum_makespan


class TestSizeGuard:
    def test_rejects_beyond_limit(self):
        k = MAX_ORACLE_TASKS + 1
        g = TaskGraph(costs=(1,) * k, edges=tuple((i, i + 1, 0) for i in range(k - 1)))
        with pytest.raises(GraphTooLargeError):
            brute_force_optimum(g, 2)

    def test_limit_itself_is_accepted(self):
        k = MAX_ORACLE_TASKS
        g = TaskGraph(costs=(2,) * k, edges=tuple((i, i + 1, 3) for i in range(k - 1)))
        res = brute_force_optimum(g, 2)
        assert res.optimum_makespan == 2 * k  # chain co-locates
