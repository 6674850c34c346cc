"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines. Every comparison is exact integer equality; the random batches are
seeded and therefore reproducible.
"""

import random
import time

import pytest

from polynash import (
    MatroidSpec,
    SolverPolicy,
    WeightedGround,
    check_convex,
    check_ssc,
    compute_pne,
    extend_best_response,
    gen_matroid_game,
    gen_random,
    gen_singleton,
    induced_weights,
    insertion_step_bound,
    iteration_bound,
    ordered_greedy,
    repair_best_response,
    verify_pne,
    write_profile,
    write_trace,
)
from polynash.generators import matroid_total_demand, random_convex_table
from polynash.solver import EVENT_GREEDY_EXTEND, EVENT_IMPROVEMENT_MOVE

from helpers import bounded_random_rank, hamming, min_weight, random_admissible_rows

SOLVE_COUNT = 500
GREEDY_TRIPLES = 1000
EXTENSION_CASES = 500
REPAIR_CASES = 500
CONVEX_TABLES = 200


def _report(num: int, description: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    line = f"criterion {num} [{status}]: {description}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def solve_batch():
    """The criterion-1 batch, shared with criteria 5 and 6."""
    runs = []
    start = time.perf_counter()
    for seed in range(SOLVE_COUNT):
        n = 1 + seed % 3
        m = 1 + seed % 4
        delta = 1 + (seed // 3) % 3
        g = gen_random(seed, n, m, delta)
        profile, trace = compute_pne(g, SolverPolicy(debug_assertions=True))
        runs.append((g, profile, trace))
    return runs, time.perf_counter() - start


def test_criterion_1_equilibrium_soundness(solve_batch):
    runs, elapsed = solve_batch
    violations = 0
    for g, profile, _ in runs:
        assert all(
            value <= 100 for i in range(g.n) for r in range(g.m)
            for value in g.costs[i][r].values
        )
        report = verify_pne(g, profile)
        violations += len(report.violations)
    ok = violations == 0 and len(runs) >= SOLVE_COUNT and elapsed < 60
    _report(
        1,
        f"{len(runs)} solved instances verified by the brute-force oracle",
        ok,
        f"{violations} violations, {elapsed:.1f}s",
    )


def test_criterion_2_greedy_matches_the_exhaustive_minimum():
    rng = random.Random(1001)
    start = time.perf_counter()
    checked = 0
    mismatches = 0
    while checked < GREEDY_TRIPLES:
        f = bounded_random_rank(rng, rng.randint(1, 4), full_rank_cap=6)
        d = rng.randint(0, f.rank_of_all)
        lengths = [min(f.singleton(r), d) for r in range(f.m)]
        w = WeightedGround(random_admissible_rows(rng, lengths))
        result = ordered_greedy(f, d, w)
        prefix = (0,) * f.m
        for k in range(1, d + 1):
            prefix = extend_best_response(f, w, prefix)
            best, _ = min_weight(f.values, k, w.weights)
            if w.ideal_weight(prefix) != best:
                mismatches += 1
        if prefix != result:
            mismatches += 1
        checked += 1
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and elapsed < 30
    _report(
        2,
        f"{checked} greedy runs equal the exhaustive optimum at every prefix",
        ok,
        f"{mismatches} mismatches, {elapsed:.1f}s",
    )


def test_criterion_3_demand_increase_is_a_single_added_unit():
    rng = random.Random(1002)
    start = time.perf_counter()
    cases = 0
    failures = 0
    seed = 0
    while cases < EXTENSION_CASES:
        seed += 1
        g = gen_random(10_000 + seed, 1 + seed % 3, 1 + seed % 4, 1 + seed % 3)
        i = rng.randrange(g.n)
        slack = g.total_demand - g.demands[i]
        a = [0] * g.m
        for _ in range(rng.randint(0, slack)):
            a[rng.randrange(g.m)] += 1
        w = induced_weights(g, i, a)
        f = g.ranks[i]
        for d in range(g.demands[i]):
            _, minima = min_weight(f.values, d, w.weights)
            x = rng.choice(minima)
            y = extend_best_response(f, w, x)
            best_next, _ = min_weight(f.values, d + 1, w.weights)
            if hamming(x, y) != 1 or w.ideal_weight(y) != best_next:
                failures += 1
            cases += 1
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 30
    _report(
        3,
        f"{cases} demand-increase extensions optimal at Hamming distance 1",
        ok,
        f"{failures} failures, {elapsed:.1f}s",
    )


def _literal_shift(rng, w, resource):
    """New weights = old weights moved down one position on one chain."""
    rows = [list(row) for row in w.weights]
    row = rows[resource]
    lifted = row[1:] + [row[-1] + rng.randint(0, 3)]
    rows[resource] = lifted
    return WeightedGround(tuple(tuple(r) for r in rows))


def test_criterion_4_load_increase_is_repaired_by_one_swap():
    rng = random.Random(1003)
    start = time.perf_counter()
    cases = 0
    failures = 0
    seed = 0
    while cases < REPAIR_CASES:
        seed += 1
        if seed % 2:
            # literal single-chain shift on synthetic admissible weights
            f = bounded_random_rank(rng, rng.randint(1, 4), full_rank_cap=6)
            d = rng.randint(1, f.rank_of_all)
            lengths = [min(f.singleton(r), d) for r in range(f.m)]
            w_old = WeightedGround(random_admissible_rows(rng, lengths))
            candidates = [r for r in range(f.m) if w_old.length(r) > 0]
            if not candidates:
                continue
            r_star = rng.choice(candidates)
            w_new = _literal_shift(rng, w_old, r_star)
        else:
            # shift induced by one more opponent unit landing on a resource
            g = gen_random(20_000 + seed, 1 + seed % 3, 1 + seed % 4, 1 + seed % 3)
            i = rng.randrange(g.n)
            f = g.ranks[i]
            d = g.demands[i]
            slack = g.total_demand - d - 1
            if slack < 0:
                continue
            a = [0] * g.m
            for _ in range(rng.randint(0, slack)):
                a[rng.randrange(g.m)] += 1
            w_old = induced_weights(g, i, a)
            candidates = [r for r in range(g.m) if w_old.length(r) > 0]
            if not candidates:
                continue
            r_star = rng.choice(candidates)
            lifted = list(a)
            lifted[r_star] += 1
            w_new = induced_weights(g, i, lifted)
        _, minima = min_weight(f.values, d, w_old.weights)
        x = rng.choice(minima)
        repaired, swap = repair_best_response(f, x, r_star, w_old, w_new)
        best_new, _ = min_weight(f.values, d, w_new.weights)
        distance = hamming(x, repaired)
        if (
            distance not in (0, 2)
            or w_new.ideal_weight(repaired) != best_new
            or (swap is None) != (distance == 0)
        ):
            failures += 1
        cases += 1
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 30
    _report(
        4,
        f"{cases} load-increase repairs optimal at Hamming distance 0 or 2",
        ok,
        f"{failures} failures, {elapsed:.1f}s",
    )


def test_criterion_5_sorted_marginals_strictly_decrease(solve_batch):
    runs, _ = solve_batch
    moves = 0
    violations = 0
    for _, _, trace in runs:
        previous = None
        for e in trace.events:
            if e.kind == EVENT_GREEDY_EXTEND:
                previous = e.marginal_sorted
            elif e.kind == EVENT_IMPROVEMENT_MOVE:
                moves += 1
                if previous is None or not e.marginal_sorted < previous:
                    violations += 1
                previous = e.marginal_sorted
    ok = violations == 0
    _report(
        5,
        "every improvement move strictly lowers the sorted marginal vector "
        "(debug assertions enabled throughout)",
        ok,
        f"{moves} moves across {len(runs)} solves, {violations} violations",
    )


def test_criterion_6_iteration_bounds_hold_exactly(solve_batch):
    runs, _ = solve_batch
    breaches = 0
    for g, _, trace in runs:
        per_step = trace.moves_per_insertion()
        step_cap = insertion_step_bound(g)
        total_cap = iteration_bound(g)
        if any(count > step_cap for count in per_step.values()):
            breaches += 1
        if sum(per_step.values()) > total_cap:
            breaches += 1
    ok = breaches == 0
    _report(
        6,
        "improvement-move counts stay within the per-insertion and total bounds",
        ok,
        f"{len(runs)} solves, {breaches} breaches",
    )


def test_criterion_7_convexity_is_sufficient_but_not_necessary():
    rng = random.Random(1007)
    failures = 0
    for _ in range(CONVEX_TABLES):
        table = random_convex_table(rng, 11)
        if not check_ssc(table, 5):
            failures += 1
    # 4x for loads <= 2 and 4x - 1 afterwards: load-sensitive yet non-convex
    kinked = tuple(4 * k if k <= 2 else 4 * k - 1 for k in range(11))
    counterexample_ok = check_ssc(kinked, 5) and not check_convex(kinked)
    ok = failures == 0 and counterexample_ok
    _report(
        7,
        f"{CONVEX_TABLES} convex tables pass the load-sensitivity check and the "
        "kinked non-convex table passes it too",
        ok,
        f"{failures} convex failures, counterexample ok: {counterexample_ok}",
    )


def test_criterion_8_special_case_families_settle():
    rng = random.Random(1008)
    solved = 0
    failures = 0
    # free-split games over private resource subsets, convex costs
    for _ in range(15):
        n, m = rng.randint(1, 3), rng.randint(2, 4)
        demands = [rng.randint(1, 3) for _ in range(n)]
        sets = [rng.sample(range(m), rng.randint(1, m)) for _ in range(n)]
        total = sum(demands)
        costs = [
            [random_convex_table(rng, total + 1).values for _ in range(m)]
            for _ in range(n)
        ]
        g = gen_singleton(sets, demands, costs)
        profile, _ = compute_pne(g, SolverPolicy(debug_assertions=True))
        failures += not verify_pne(g, profile).is_pne
        solved += 1
    # matroid games with unit-capacity chains and merely nondecreasing costs
    spec_pool = [
        MatroidSpec.uniform(2),
        MatroidSpec.graphic([(0, 1), (1, 2), (2, 0)]),
        MatroidSpec.partition([[0], [1, 2]], [1, 1]),
    ]
    for _ in range(15):
        n = rng.randint(1, 3)
        specs = [rng.choice(spec_pool) for _ in range(n)]
        total = matroid_total_demand(specs, 3)
        costs = []
        for _ in range(n):
            row = []
            for _ in range(3):
                values = [rng.randint(0, 3)]
                for _ in range(total):
                    values.append(values[-1] + rng.randint(0, 3))
                row.append(tuple(values))
            costs.append(row)
        g = gen_matroid_game(specs, costs)
        assert all(
            g.ranks[i].singleton(r) <= 1 for i in range(g.n) for r in range(g.m)
        )
        profile, _ = compute_pne(g, SolverPolicy(debug_assertions=True))
        failures += not verify_pne(g, profile).is_pne
        solved += 1
    ok = failures == 0
    _report(
        8,
        f"{solved} free-split and matroid instances settle to verified equilibria",
        ok,
        f"{failures} failures",
    )


def test_criterion_9_identical_seeds_give_identical_bytes():
    mismatches = 0
    compared = 0
    for seed in (20, 21, 34, 42):  # seeds whose solves include improvement moves
        g1 = gen_random(seed, 3, 2, 3)
        g2 = gen_random(seed, 3, 2, 3)
        for policy in (
            SolverPolicy(),
            SolverPolicy("seeded_random", seed=5),
            SolverPolicy("round_robin", debug_assertions=True),
        ):
            p1, t1 = compute_pne(g1, policy)
            p2, t2 = compute_pne(g2, policy)
            compared += 1
            if write_profile(g1, p1) != write_profile(g2, p2):
                mismatches += 1
            if write_trace(g1, t1) != write_trace(g2, t2):
                mismatches += 1
    ok = mismatches == 0
    _report(
        9,
        "repeated solves with identical seeds and flags produce byte-identical "
        "profiles and traces",
        ok,
        f"{compared} paired runs, {mismatches} mismatches",
    )
