"""The insertion solver: marginal costs, bounds, policies, and run invariants."""

import pytest

from polynash import (
    GameInstance,
    MalformedInputError,
    Profile,
    RankFunction,
    SolverPolicy,
    compute_pne,
    improving_players,
    insertion_step_bound,
    iteration_bound,
    marginal_vector,
    private_cost,
    verify_pne,
)
from polynash.generators import gen_random
from polynash.solver import (
    EVENT_DEMAND_INCREASE,
    EVENT_EQUILIBRIUM,
    EVENT_GREEDY_EXTEND,
    EVENT_IMPROVEMENT_MOVE,
)

from helpers import shared_pool_instance


def test_two_player_split_across_resources():
    g = shared_pool_instance()
    profile, trace = compute_pne(g, SolverPolicy(debug_assertions=True))
    assert profile.strategies == ((1, 0), (0, 1))
    assert [private_cost(g, profile, i) for i in range(2)] == [1, 1]
    assert verify_pne(g, profile).is_pne
    assert not trace.improvement_moves()


def test_arrival_displaces_a_settled_player_in_one_move():
    # player 0 settles on a; player 1's arrival there makes a expensive for
    # player 0, who must shift its unit to b in a single improvement move
    f = RankFunction((0, 1, 1, 1))
    g = GameInstance(
        ("a", "b"),
        (1, 1),
        (f, f),
        (((0, 1, 10), (0, 3, 3)), ((0, 1, 2), (0, 9, 9))),
    )
    profile, trace = compute_pne(g, SolverPolicy(debug_assertions=True))
    assert profile.strategies == ((0, 1), (1, 0))
    assert [private_cost(g, profile, i) for i in range(2)] == [3, 1]
    assert verify_pne(g, profile).is_pne
    moves = trace.improvement_moves()
    assert len(moves) == 1
    move = moves[0]
    assert (move.player, move.from_resource, move.to_resource) == (0, 0, 1)
    assert move.marginal_sorted == (3, 2)  # strictly below the (10, 2) before it


def test_zero_demand_game_has_an_empty_trace():
    f = RankFunction((0, 1, 1, 1))
    g = GameInstance(("a", "b"), (0, 0), (f, f), (((0,), (0,)), ((0,), (0,))))
    profile, trace = compute_pne(g)
    assert profile.strategies == ((0, 0), (0, 0))
    assert trace.events == ()


def test_single_player_solve_is_pure_greedy():
    g = gen_random(17, 1, 4, 3)
    profile, trace = compute_pne(g, SolverPolicy(debug_assertions=True))
    assert not trace.improvement_moves()
    assert verify_pne(g, profile).is_pne
    kinds = {e.kind for e in trace.events}
    assert kinds == {EVENT_DEMAND_INCREASE, EVENT_GREEDY_EXTEND, EVENT_EQUILIBRIUM}


def test_marginal_vector_two_case_rule():
    f = RankFunction((0, 3, 3, 3))
    linear = tuple(range(7))
    g = GameInstance(("a", "b"), (2, 1), (f, f), ((linear, linear), (linear, linear)))
    # player 0 keeps two units on a, player 1 one more: load 3
    p = Profile(((2, 0), (1, 0)))
    mv = marginal_vector(g, p, 0)
    # on the overloaded resource: c(3)*2 - c(2)*1 = 4 for each of player 0's units
    assert mv.entries[0][2] == 4 and mv.entries[1][2] == 4
    off = marginal_vector(g, Profile(((1, 0), (0, 0))), 1)
    # elsewhere: c(2)*1 - c(1)*0 = 2
    assert off.entries[0][2] == 2
    assert marginal_vector(g, Profile(((0, 0), (0, 0))), None).entries == ()


def test_marginal_vector_sorted_view_is_nonincreasing():
    g = gen_random(5, 3, 3, 2)
    profile, _ = compute_pne(g)
    mv = marginal_vector(g, profile, 0)
    assert list(mv.sorted_view) == sorted(mv.sorted_view, reverse=True)
    assert len(mv.entries) == g.total_demand


def test_iteration_bound_examples():
    f1 = RankFunction((0, 1, 1, 1))
    g1 = GameInstance(
        ("a", "b"), (1, 1), (f1, f1), (((0, 1, 2), (0, 1, 2)), ((0, 1, 2), (0, 1, 2)))
    )
    assert iteration_bound(g1) == 8  # 2^2 * 2^1 * 1^2
    zero = GameInstance(("a", "b"), (0,), (f1,), (((0,), (0,)),))
    assert iteration_bound(zero) == 0
    f2 = RankFunction(tuple(min(bin(mask).count("1") * 2, 2) for mask in range(16)))
    tables = tuple(tuple(range(7)) for _ in range(4))
    g2 = GameInstance(
        ("a", "b", "c", "d"), (2, 2, 2), (f2, f2, f2), (tables, tables, tables)
    )
    assert iteration_bound(g2) == 3456  # 3^3 * 4^2 * 2^3
    assert insertion_step_bound(g2) == 3 * (4 * 2) ** 2


def test_improving_players_on_an_equilibrium_is_empty():
    g = shared_pool_instance()
    profile, _ = compute_pne(g)
    assert improving_players(g, profile, None) == []


def test_improving_players_flags_the_disturbed_player():
    f = RankFunction((0, 1, 1, 1))
    flat = (1, 1, 1)  # player 0 pays the same price everywhere
    linear = (0, 1, 2)
    g = GameInstance(("a", "b"), (1, 1), (f, f), ((flat, flat), (linear, linear)))
    stacked = Profile(((1, 0), (1, 0)))
    assert improving_players(g, stacked, 0, debug=True) == [1]


def test_round_robin_and_seeded_random_policies_also_settle():
    for seed in range(20):
        g = gen_random(seed, 3, 3, 2)
        for selection in ("round_robin", "seeded_random"):
            policy = SolverPolicy(selection, seed=seed, debug_assertions=True)
            profile, _ = compute_pne(g, policy)
            assert verify_pne(g, profile).is_pne


def test_policy_rejects_unknown_selection():
    with pytest.raises(MalformedInputError):
        SolverPolicy("fastest_first")


def test_repeated_runs_are_identical():
    g = gen_random(33, 3, 4, 3)
    policy = SolverPolicy("seeded_random", seed=12, debug_assertions=True)
    first = compute_pne(g, policy)
    second = compute_pne(g, policy)
    assert first[0] == second[0]
    assert first[1] == second[1]


def _replay(g, trace):
    """Rebuild the per-insertion profiles from the trace alone."""
    strategies = [[0] * g.m for _ in range(g.n)]
    checkpoints = []
    for e in trace.events:
        if e.kind == EVENT_GREEDY_EXTEND:
            strategies[e.player][e.to_resource] += 1
        elif e.kind == EVENT_IMPROVEMENT_MOVE:
            strategies[e.player][e.from_resource] -= 1
            strategies[e.player][e.to_resource] += 1
        elif e.kind == EVENT_EQUILIBRIUM:
            checkpoints.append(
                (e.outer, Profile(tuple(tuple(s) for s in strategies)))
            )
    return checkpoints


def test_every_insertion_ends_in_a_prefix_equilibrium():
    for seed in (2, 9, 14, 27, 40):
        g = gen_random(seed, 3, 3, 3)
        profile, trace = compute_pne(g, SolverPolicy(debug_assertions=True))
        checkpoints = _replay(g, trace)
        assert checkpoints[-1][1] == profile
        for outer, prefix_profile in checkpoints:
            demands = [sum(s) for s in prefix_profile.strategies]
            assert sum(demands) == outer
            reduced = GameInstance(g.resources, tuple(demands), g.ranks, g.costs)
            reduced.check_profile(prefix_profile)
            assert verify_pne(reduced, prefix_profile).is_pne


def test_improvement_moves_are_local_and_counted_within_bounds():
    moves_seen = 0
    for seed in range(60):
        g = gen_random(seed, 3, 2, 3)
        profile, trace = compute_pne(g, SolverPolicy(debug_assertions=True))
        assert verify_pne(g, profile).is_pne
        per_step = trace.moves_per_insertion()
        assert sum(per_step.values()) <= iteration_bound(g)
        assert all(count <= insertion_step_bound(g) for count in per_step.values())
        for e in trace.improvement_moves():
            moves_seen += 1
            assert e.from_resource != e.to_resource
            assert e.player is not None and e.unit is not None
    assert moves_seen > 0  # the batch must actually exercise the repair path


def test_trace_marginals_strictly_decrease_within_each_insertion():
    for seed in (4, 13, 31, 44, 57):
        g = gen_random(seed, 3, 2, 3)
        _, trace = compute_pne(g)
        previous = None
        for e in trace.events:
            if e.kind == EVENT_GREEDY_EXTEND:
                previous = e.marginal_sorted
            elif e.kind == EVENT_IMPROVEMENT_MOVE:
                assert previous is not None
                assert e.marginal_sorted < previous
                previous = e.marginal_sorted
