"""Independent oracles shared by the test suite.

Everything here re-derives results from the raw definitions (full subset
pair scans, product enumeration of count vectors, direct quadruple scans)
without calling the library code paths it is used to check.
"""

from __future__ import annotations

import random
from itertools import product


def full_pair_rank_ok(values) -> bool:
    """Rank validity via the unrestricted definitions over every subset pair."""
    if values[0] != 0:
        return False
    size = len(values)
    for u in range(size):
        for v in range(size):
            if u | v == v and values[u] > values[v]:
                return False
            if values[u] + values[v] < values[u | v] + values[u & v]:
                return False
    return True


def feasible_vectors(values, d) -> list[tuple[int, ...]]:
    """All count vectors summing to d inside every subset capacity (product scan)."""
    m = (len(values) - 1).bit_length()
    axes = [range(values[1 << r] + 1) for r in range(m)]
    out = []
    for x in product(*axes):
        if sum(x) != d:
            continue
        ok = True
        for mask in range(len(values)):
            if sum(x[r] for r in range(m) if mask >> r & 1) > values[mask]:
                ok = False
                break
        if ok:
            out.append(tuple(x))
    return out


def ideal_weight(weights, counts) -> int:
    return sum(sum(weights[r][:c]) for r, c in enumerate(counts))


def min_weight(values, d, weights) -> tuple[int, list[tuple[int, ...]]]:
    """Exhaustive minimum weight at demand d and every attaining vector."""
    vectors = feasible_vectors(values, d)
    best = min(ideal_weight(weights, x) for x in vectors)
    return best, [x for x in vectors if ideal_weight(weights, x) == best]


def hamming(x, y) -> int:
    return sum(abs(a - b) for a, b in zip(x, y))


def random_admissible_rows(
    rng: random.Random, lengths, start_cap: int = 5, step_cap: int = 4
) -> tuple[tuple[int, ...], ...]:
    """Random nondecreasing weight row per chain."""
    rows = []
    for length in lengths:
        value = rng.randint(0, start_cap)
        row = []
        for _ in range(length):
            row.append(value)
            value += rng.randint(0, step_cap)
        rows.append(tuple(row))
    return tuple(rows)


def ssc_ok(values, u, ab_max=None) -> bool:
    """Quadruple scan of the load-sensitivity inequality, written independently."""
    top = len(values) - 1

    def marginal(load, x):
        return values[load + x] * x - values[load + x - 1] * (x - 1)

    for a in range(top + 1):
        for b in range(a, top + 1):
            if ab_max is not None and (a > ab_max or b > ab_max):
                continue
            for x in range(1, u + 1):
                for y in range(x, u + 1):
                    if b + y > top or a + x > top:
                        continue
                    if marginal(a, x) > marginal(b, y):
                        return False
    return True


def bounded_random_rank(rng: random.Random, m: int, full_rank_cap: int, max_chain: int = 3):
    """Seeded valid rank function with full rank in [1, full_rank_cap]."""
    from polynash.generators import random_rank

    while True:
        f = random_rank(rng, m, max_chain=max_chain)
        if f.rank_of_all <= full_rank_cap:
            return f


def shared_pool_instance():
    """Two players, two resources, linear prices; each splits one unit freely."""
    from polynash import GameInstance, RankFunction

    f = RankFunction((0, 1, 1, 1))
    tables = ((0, 1, 2), (0, 1, 2))
    return GameInstance(("a", "b"), (1, 1), (f, f), (tables, tables))
