"""Learning-automata transitions, steps, and sweep determinism."""

import numpy as np
import pytest

from tgsched.graph import TaskGraph
from tgsched.oma import (
    Automaton,
    apply_feedback,
    from_chromosome,
    la_step,
    la_sweep,
    to_chromosome,
)
from tgsched.rng import Xoshiro256StarStar, substream_seed
from tgsched.schedule import evaluate_makespan


@pytest.fixture
def chain():
    """Two tasks, one edge: makespan 5 co-located, 9 across processors."""
    return TaskGraph(costs=(2, 3), edges=((0, 1, 4),))


def automaton(genes, depths, memory_depth, makespan):
    return Automaton(
        genes=np.array(genes, dtype=np.int64),
        depths=np.array(depths, dtype=np.int64),
        memory_depth=memory_depth,
        makespan=makespan,
    )


class TestConstruction:
    def test_from_chromosome_starts_at_boundary(self, chain):
        genes = np.array([0, 2], dtype=np.int64)
        a = from_chromosome(genes, chain, 2, memory_depth=5)
        assert a.depths.tolist() == [1, 1]
        assert a.makespan == 5
        assert a.memory_depth == 5

    def test_genes_are_copied(self, chain):
        genes = np.array([0, 2], dtype=np.int64)
        a = from_chromosome(genes, chain, 2, memory_depth=5)
        genes[0] = 7
        assert a.genes.tolist() == [0, 2]
        out = to_chromosome(a)
        out[0] = 9
        assert a.genes.tolist() == [0, 2]

    def test_known_makespan_short_circuits(self, chain):
        genes = np.array([0, 2], dtype=np.int64)
        a = from_chromosome(genes, chain, 2, memory_depth=5, makespan=123)
        assert a.makespan == 123  # trusted, not recomputed

    def test_validation(self):
        with pytest.raises(ValueError):
            automaton([0, 1], [1], 5, 4)
        with pytest.raises(ValueError):
            automaton([0, 1], [1, 1], 0, 4)


class TestApplyFeedback:
    """Exhaustive transition laws over depth 1..N and all outcome signs."""

    def test_all_transitions(self):
        for n in range(1, 6):
            for depth in range(1, n + 1):
                for cand, kind in ((9, "better"), (10, "equal"), (14, "worse")):
                    a = automaton([5, 6, 7], [depth, n, 1], n, 10)
                    out = apply_feedback(a, 0, 3, cand)
                    # untouched positions never move
                    assert out.depths[1] == n and out.depths[2] == 1
                    assert out.genes[1] == 6 and out.genes[2] == 7
                    if kind == "better":
                        assert out.genes[0] == 3
                        assert out.makespan == 9
                        assert out.depths[0] == min(depth + 1, n)
                    elif depth > 1:
                        assert out.genes[0] == 5
                        assert out.makespan == 10
                        assert out.depths[0] == depth - 1
                    else:
                        # boundary: adopt the candidate even though not better
                        assert out.genes[0] == 3
                        assert out.makespan == cand
                        assert out.depths[0] == 1

    def test_reward_saturates_at_memory_depth(self):
        a = automaton([5], [4], 4, 10)
        out = apply_feedback(a, 0, 2, 9)
        assert out.depths[0] == 4

    def test_input_is_not_mutated(self):
        a = automaton([5, 6], [2, 3], 5, 10)
        apply_feedback(a, 0, 1, 3)
        apply_feedback(a, 1, 1, 99)
        assert a.genes.tolist() == [5, 6]
        assert a.depths.tolist() == [2, 3]
        assert a.makespan == 10

    def test_reaching_depth_n_takes_n_minus_one_rewards(self):
        n = 5
        a = automaton([5], [1], n, 100)
        rewards = 0
        while a.depths[0] < n:
            a = apply_feedback(a, 0, 5, a.makespan - 1)
            rewards += 1
        assert rewards == n - 1


class TestLaStep:
    def test_changes_at_most_one_gene(self, chain):
        rng = Xoshiro256StarStar(30)
        a = from_chromosome(np.array([0, 1], dtype=np.int64), chain, 2, 5)
        for _ in range(200):
            out = la_step(a, chain, 2, rng)
            assert int(np.count_nonzero(out.genes != a.genes)) <= 1
            assert int(np.count_nonzero(out.depths != a.depths)) <= 1
            a = out

    def test_deterministic(self, chain):
        a = from_chromosome(np.array([0, 1], dtype=np.int64), chain, 2, 5)
        x = la_step(a, chain, 2, Xoshiro256StarStar(31))
        y = la_step(a, chain, 2, Xoshiro256StarStar(31))
        assert np.array_equal(x.genes, y.genes)
        assert np.array_equal(x.depths, y.depths)
        assert x.makespan == y.makespan

    def test_makespan_tracks_genes(self, chain):
        rng = Xoshiro256StarStar(32)
        a = from_chromosome(np.array([1, 0], dtype=np.int64), chain, 2, 5)
        for _ in range(100):
            a = la_step(a, chain, 2, rng)
            assert a.makespan == evaluate_makespan(a.genes, chain, 2)


class TestLaSweep:
    def test_matches_manual_substreams(self, chain):
        pool = [
            from_chromosome(np.array(g, dtype=np.int64), chain, 2, 5)
            for g in ([0, 1], [2, 2], [3, 0])
        ]
        swept = la_sweep(pool, chain, 2, Xoshiro256StarStar(33))
        key = Xoshiro256StarStar(33).next_raw()
        for i, a in enumerate(pool):
            expect = la_step(a, chain, 2, Xoshiro256StarStar(substream_seed(key, i)))
            assert np.array_equal(swept[i].genes, expect.genes)
            assert np.array_equal(swept[i].depths, expect.depths)
            assert swept[i].makespan == expect.makespan

    def test_each_position_is_independent_of_pool_size(self, chain):
        """Dropping trailing automata does not change earlier results."""
        pool = [
            from_chromosome(np.array(g, dtype=np.int64), chain, 2, 5)
            for g in ([0, 1], [2, 2], [3, 0], [1, 1])
        ]
        full = la_sweep(pool, chain, 2, Xoshiro256StarStar(34))
        short = la_sweep(pool[:2], chain, 2, Xoshiro256StarStar(34))
        for a, b in zip(short, full):
            assert np.array_equal(a.genes, b.genes)
            assert a.makespan == b.makespan

    def test_pool_size_preserved(self, chain):
        rng = Xoshiro256StarStar(35)
        pool = [from_chromosome(np.array([0, 1], dtype=np.int64), chain, 2, 5)] * 7
        assert len(la_sweep(pool, chain, 2, rng)) == 7
