from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rotorchip.bruteforce import (
    bfs_reach_chip,
    oracle_is_recurrent,
    random_maximal_bounded_chip_game,
)
from rotorchip.chipfiring import (
    bounded_chip_game,
    fire,
    fire_many,
    halts,
    is_legal_fire,
    is_recurrent,
    is_recurrent_via_reach,
    lin_equiv,
    reach_chip,
    validate_legal_firing_sequence,
    verify_nonhalting_certificate,
)
from rotorchip.errors import BudgetExceededError
from rotorchip.intlinalg import primitive_period_vector
from rotorchip.multigraph import DirectedMultigraph


class TestFire:
    def test_two_cycle(self, c2: DirectedMultigraph) -> None:
        assert fire(c2, (1, 0), 0) == (0, 1)
        assert fire(c2, (0, 0), 0) == (-1, 1)

    def test_double_edge(self, d21: DirectedMultigraph) -> None:
        assert fire(d21, (2, 0), 0) == (0, 2)

    def test_legality(self, c2: DirectedMultigraph) -> None:
        assert is_legal_fire(c2, (1, 0), 0)
        assert not is_legal_fire(c2, (0, 0), 0)

    def test_sink_fire_is_noop(self, fig1: DirectedMultigraph) -> None:
        x = (0, 0, 0, 2)
        assert is_legal_fire(fig1, x, 3)
        assert fire(fig1, x, 3) == x
        assert not is_legal_fire(fig1, (0, 0, 0, -1), 3)

    def test_fire_many(self, d21: DirectedMultigraph) -> None:
        assert fire_many(d21, (4, 0), 0, 2) == (0, 4)

    @given(st.lists(st.integers(min_value=-3, max_value=3), min_size=2, max_size=2))
    @settings(max_examples=50, deadline=None)
    def test_chip_count_conserved(self, chips: list[int]) -> None:
        c2 = DirectedMultigraph.from_edges(2, [(0, 1, 1), (1, 0, 1)])
        x = tuple(chips)
        assert sum(fire(c2, x, 0)) == sum(x)


class TestBoundedGame:
    def test_two_cycle(self, c2: DirectedMultigraph) -> None:
        res = bounded_chip_game(c2, (1, 0), (1, 1))
        assert res.firing_vector == (1, 1)
        assert res.final == (1, 0)

    def test_double_edge(self, d21: DirectedMultigraph) -> None:
        res = bounded_chip_game(d21, (2, 0), (1, 2))
        assert res.firing_vector == (1, 2)
        assert res.final == (2, 0)

    def test_stuck_below_bound(self, c2: DirectedMultigraph) -> None:
        res = bounded_chip_game(c2, (0, 0), (1, 1))
        assert res.firing_vector == (0, 0)
        assert res.final == (0, 0)

    def test_trace_replays(self, d21: DirectedMultigraph) -> None:
        res = bounded_chip_game(d21, (2, 0), (1, 2))
        assert res.trace.replay(d21)
        assert res.trace.initial == (2, 0)
        assert res.trace.final == res.final

    def test_budget_raises(self, c2: DirectedMultigraph) -> None:
        with pytest.raises(BudgetExceededError):
            bounded_chip_game(c2, (1, 0), (10, 10), max_batches=3)

    def test_large_pile_batches(self) -> None:
        # One batch per vertex drains an astronomically large pile.
        big = 10 ** 18
        c2 = DirectedMultigraph.from_edges(2, [(0, 1, 1), (1, 0, 1)])
        res = bounded_chip_game(c2, (big, 0), (big, big), max_batches=10)
        assert res.firing_vector == (big, big)
        assert res.final == (big, 0)

    @given(st.integers(min_value=0, max_value=500))
    @settings(max_examples=30, deadline=None)
    def test_recurrent_start_realizes_bound(self, b: int) -> None:
        c2 = DirectedMultigraph.from_edges(2, [(0, 1, 1), (1, 0, 1)])
        res = bounded_chip_game(c2, (1, 1), (b, b))
        assert res.firing_vector == (b, b)
        assert res.final == (1, 1)


class TestAbelian:
    @given(st.integers(min_value=0, max_value=2 ** 32))
    @settings(max_examples=40, deadline=None)
    def test_random_schedules_agree_with_engine(self, seed: int) -> None:
        rng = random.Random(seed)
        d21 = DirectedMultigraph.from_edges(2, [(0, 1, 2), (1, 0, 1)])
        x = (rng.randint(0, 4), rng.randint(0, 4))
        bound = (rng.randint(0, 3), rng.randint(0, 3))
        res = bounded_chip_game(d21, x, bound)
        f1, y1 = random_maximal_bounded_chip_game(d21, x, bound, random.Random(seed + 1))
        f2, y2 = random_maximal_bounded_chip_game(d21, x, bound, random.Random(seed + 2))
        assert f1 == f2 == res.firing_vector
        assert y1 == y2 == res.final


class TestReach:
    def test_yes_two_cycle(self, c2: DirectedMultigraph) -> None:
        v = reach_chip(c2, (1, 0), (0, 1))
        assert v.decision == "YES"
        assert v.firing_vector == (1, 0)
        assert v.trace is not None and v.trace.replay(c2)

    def test_no_stuck(self, c2: DirectedMultigraph) -> None:
        v = reach_chip(c2, (0, 0), (1, -1))
        assert v.decision == "NO"
        assert v.reason == "bounded-game-stuck"

    def test_no_lattice(self, c2: DirectedMultigraph) -> None:
        v = reach_chip(c2, (0, 0), (1, 0))
        assert v.decision == "NO"
        assert v.reason == "no-nonneg-firing-vector"

    def test_self_reach(self, c2: DirectedMultigraph) -> None:
        v = reach_chip(c2, (2, -1), (2, -1))
        assert v.decision == "YES"
        assert v.firing_vector == (0, 0)

    def test_agrees_with_bfs_on_examples(self, c2: DirectedMultigraph) -> None:
        cases = [((1, 0), (0, 1)), ((0, 0), (1, -1)), ((2, 0), (0, 2)), ((1, 1), (1, 1))]
        for x, y in cases:
            assert (reach_chip(c2, x, y).decision == "YES") == bfs_reach_chip(c2, x, y)


class TestRecurrence:
    def test_frozen_examples(self, c2: DirectedMultigraph, d21: DirectedMultigraph) -> None:
        assert is_recurrent(c2, (1, 0))
        assert not is_recurrent(c2, (0, 0))
        assert is_recurrent(d21, (2, 0))

    def test_via_reach_matches(self, c2: DirectedMultigraph, d21: DirectedMultigraph) -> None:
        assert is_recurrent_via_reach(c2, (1, 0))
        assert not is_recurrent_via_reach(c2, (0, 0))
        assert is_recurrent_via_reach(d21, (2, 0))
        assert not is_recurrent_via_reach(c2, (2, -1))

    def test_matches_bfs_oracle(self, d21: DirectedMultigraph) -> None:
        for x0 in range(0, 4):
            for x1 in range(0, 4):
                x = (x0, x1)
                expected = oracle_is_recurrent(d21, x)
                assert is_recurrent(d21, x) == expected
                assert is_recurrent_via_reach(d21, x) == expected

    def test_requires_strongly_connected(self, fig1: DirectedMultigraph) -> None:
        with pytest.raises(ValueError):
            is_recurrent(fig1, (0, 0, 0, 0))


class TestLinEquiv:
    def test_frozen_examples(self, c2: DirectedMultigraph) -> None:
        assert lin_equiv(c2, (1, 0), (0, 1)) == (1, 0)
        assert lin_equiv(c2, (1, 0), (0, 0)) is None

    def test_symmetric_up_to_kernel(self, d21: DirectedMultigraph) -> None:
        f = lin_equiv(d21, (3, 0), (0, 3))
        assert f is not None
        p = primitive_period_vector(d21)
        g = lin_equiv(d21, (0, 3), (3, 0))
        assert g is not None
        # Round trip composes to a kernel multiple.
        total = tuple(a + b for a, b in zip(f, g))
        k = total[0] // p[0]
        assert total == tuple(k * pv for pv in p)


class TestHalting:
    def test_nonhalting_two_cycle(self, c2: DirectedMultigraph) -> None:
        v = halts(c2, (1, 0))
        assert v.kind == "non-halting"
        assert v.certificate == (1, 0)
        assert verify_nonhalting_certificate(c2, (1, 0), v.certificate)

    def test_halting_empty(self, c2: DirectedMultigraph) -> None:
        v = halts(c2, (0, 0))
        assert v.kind == "halts"
        assert v.final == (0, 0)
        assert v.firing_vector == (0, 0)

    def test_halting_double_edge(self, d21: DirectedMultigraph) -> None:
        v = halts(d21, (1, 0))
        assert v.kind == "halts"
        assert v.final == (1, 0)

    def test_halting_final_is_stable(self, d21: DirectedMultigraph) -> None:
        for x0 in range(0, 3):
            for x1 in range(0, 3):
                v = halts(d21, (x0, x1))
                if v.kind == "halts":
                    assert all(
                        not is_legal_fire(d21, v.final, u) for u in range(d21.n)
                    )
                else:
                    assert verify_nonhalting_certificate(d21, (x0, x1), v.certificate)

    def test_budget_verdict(self, c2: DirectedMultigraph) -> None:
        v = halts(c2, (5, 5), max_steps=2)
        assert v.kind == "budget-exceeded"


class TestSequences:
    def test_validator_accepts_legal(self, c2: DirectedMultigraph) -> None:
        assert validate_legal_firing_sequence(c2, (1, 0), (0, 1, 0))
        assert not validate_legal_firing_sequence(c2, (1, 0), (1,))

    @given(st.integers(min_value=0, max_value=2 ** 32))
    @settings(max_examples=40, deadline=None)
    def test_deletion_preserves_legality_and_endpoint(self, seed: int) -> None:
        # Delete the first p(v) occurrences of each v from a dominating legal
        # sequence; the result stays legal and lands on the same endpoint.
        rng = random.Random(seed)
        d21 = DirectedMultigraph.from_edges(2, [(0, 1, 2), (1, 0, 1)])
        p = primitive_period_vector(d21)
        degs = d21.out_degrees()
        # Starting from p * outdeg every maximal p-bounded schedule fires p.
        x = tuple(p[v] * degs[v] for v in range(2))
        cur = x
        remaining = list(p)
        seq: list[int] = []
        while True:
            options = [v for v in range(2) if remaining[v] > 0 and cur[v] >= degs[v]]
            if not options:
                break
            v = rng.choice(options)
            seq.append(v)
            remaining[v] -= 1
            cur = fire(d21, cur, v)
        assert remaining == [0, 0]
        for _ in range(rng.randint(0, 6)):
            options = [v for v in range(2) if cur[v] >= degs[v]]
            if not options:
                break
            v = rng.choice(options)
            seq.append(v)
            cur = fire(d21, cur, v)
        assert validate_legal_firing_sequence(d21, x, seq)
        quota = list(p)
        trimmed = []
        for v in seq:
            if quota[v] > 0:
                quota[v] -= 1
            else:
                trimmed.append(v)
        assert validate_legal_firing_sequence(d21, x, trimmed)
        assert _after(d21, x, seq) == _after(d21, x, trimmed)


def _after(g: DirectedMultigraph, x: tuple[int, ...], seq: list[int]) -> tuple[int, ...]:
    cur = x
    for v in seq:
        cur = fire(g, cur, v)
    return cur
