"""Instance families: free-split games, matroid games, and seeded random games.

All generation is deterministic per seed. Every construction funnels through
GameInstance, so generated instances are always fully validated.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .errors import GenerationError, InvariantError, MalformedInputError
from .game import CostTable, GameInstance, find_ssc_violation
from .rank import RankFunction, validate_rank

__all__ = [
    "MatroidSpec",
    "gen_matroid_game",
    "gen_random",
    "gen_singleton",
    "random_convex_table",
    "random_rank",
]

COST_FAMILIES = ("convex_nondecreasing", "truncated_ssc")
MAX_PLAYERS = 10
MAX_RESOURCES = 10
MAX_DEMAND = 8
RETRY_BUDGET = 64


class _UnionFind:
    """Union by size with path compression; tracks successful merges."""

    def __init__(self) -> None:
        self.parent: dict = {}
        self.size: dict = {}
        self.merges = 0

    def find(self, v):
        if v not in self.parent:
            self.parent[v] = v
            self.size[v] = 1
            return v
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.merges += 1
        return True


@dataclass(frozen=True)
class MatroidSpec:
    """One player's matroid over the resource list.

    Resources map to the ground set by index. ``uniform`` takes any set of
    at most ``rank`` resources; ``partition`` caps each block of resources
    separately; ``graphic`` treats resource j as edge j of a multigraph
    (self-loops allowed, contributing nothing). Every induced rank table is
    subcardinal, so single-resource capacities never exceed one.
    """

    kind: str
    rank: int | None = None
    blocks: tuple[tuple[int, ...], ...] | None = None
    caps: tuple[int, ...] | None = None
    edges: tuple[tuple[int, int], ...] | None = None

    @classmethod
    def uniform(cls, rank: int) -> "MatroidSpec":
        if rank < 0:
            raise MalformedInputError("uniform rank must be nonnegative")
        return cls(kind="uniform", rank=int(rank))

    @classmethod
    def partition(
        cls, blocks: Sequence[Sequence[int]], caps: Sequence[int]
    ) -> "MatroidSpec":
        blocks = tuple(tuple(int(r) for r in b) for b in blocks)
        caps = tuple(int(c) for c in caps)
        if len(blocks) != len(caps):
            raise MalformedInputError("one cap per block required")
        if any(c < 0 for c in caps):
            raise MalformedInputError("block caps must be nonnegative")
        seen: set[int] = set()
        for b in blocks:
            for r in b:
                if r in seen:
                    raise MalformedInputError(f"resource {r} appears in two blocks")
                seen.add(r)
        return cls(kind="partition", blocks=blocks, caps=caps)

    @classmethod
    def graphic(cls, edges: Sequence[Sequence[int]]) -> "MatroidSpec":
        edges = tuple((int(e[0]), int(e[1])) for e in edges)
        return cls(kind="graphic", edges=edges)

    def rank_table(self, m: int) -> RankFunction:
        if self.kind == "uniform":
            values = [min(bin(mask).count("1"), self.rank) for mask in range(1 << m)]
        elif self.kind == "partition":
            for b in self.blocks:
                for r in b:
                    if not 0 <= r < m:
                        raise MalformedInputError(f"block resource {r} out of range")
            values = []
            for mask in range(1 << m):
                total = 0
                for b, cap in zip(self.blocks, self.caps):
                    inside = sum(1 for r in b if mask >> r & 1)
                    total += min(inside, cap)
                values.append(total)
        elif self.kind == "graphic":
            if len(self.edges) != m:
                raise MalformedInputError(
                    f"graphic matroid has {len(self.edges)} edges, expected {m}"
                )
            values = []
            for mask in range(1 << m):
                uf = _UnionFind()
                for r in range(m):
                    if mask >> r & 1:
                        uf.union(*self.edges[r])
                values.append(uf.merges)
        else:
            raise MalformedInputError(f"unknown matroid kind {self.kind!r}")
        f = RankFunction(tuple(values))
        for mask in range(1 << m):
            if f.values[mask] > bin(mask).count("1"):
                raise InvariantError(
                    f"matroid rank table is not subcardinal at mask {mask}"
                )
        return f


def gen_singleton(
    resource_sets: Sequence[Sequence[int]],
    demands: Sequence[int],
    costs: Sequence[Sequence[Sequence[int]]],
    resource_names: Sequence[str] | None = None,
) -> GameInstance:
    """Game where each player splits a demand freely over a private resource subset.

    Player i's rank table is d_i on every subset touching their set and 0
    elsewhere, so any split of d_i over the allowed resources is feasible.
    """
    n = len(demands)
    if n == 0 or len(resource_sets) != n or len(costs) != n:
        raise MalformedInputError("need one resource set and cost row per player")
    m = len(costs[0])
    names = _resource_names(m, resource_names)
    demands = tuple(int(d) for d in demands)
    ranks = []
    for i in range(n):
        allowed = 0
        for r in resource_sets[i]:
            r = int(r)
            if not 0 <= r < m:
                raise MalformedInputError(f"player {i} resource index {r} out of range")
            allowed |= 1 << r
        if allowed == 0:
            raise MalformedInputError(f"player {i} has an empty resource set")
        values = tuple(
            demands[i] if mask & allowed else 0 for mask in range(1 << m)
        )
        f = RankFunction(values)
        if not validate_rank(f).ok:
            raise InvariantError("free-split rank table failed validation")
        ranks.append(f)
    return GameInstance(names, demands, tuple(ranks), tuple(tuple(row) for row in costs))


def gen_matroid_game(
    specs: Sequence[MatroidSpec],
    costs: Sequence[Sequence[Sequence[int]]],
    resource_names: Sequence[str] | None = None,
) -> GameInstance:
    """Game whose strategies are the bases of player-specific matroids.

    Demands are pinned to each matroid's full rank. Because matroid rank
    tables are subcardinal, every chain has length at most one and merely
    nondecreasing cost tables already validate.
    """
    n = len(specs)
    if n == 0 or len(costs) != n:
        raise MalformedInputError("need one matroid and one cost row per player")
    m = len(costs[0])
    names = _resource_names(m, resource_names)
    ranks = tuple(spec.rank_table(m) for spec in specs)
    demands = tuple(f.rank_of_all for f in ranks)
    return GameInstance(names, demands, ranks, tuple(tuple(row) for row in costs))


def matroid_total_demand(specs: Sequence[MatroidSpec], m: int) -> int:
    """Sum of full ranks; the cost-table length needed is this plus one."""
    return sum(spec.rank_table(m).rank_of_all for spec in specs)


def _resource_names(
    m: int, resource_names: Sequence[str] | None
) -> tuple[str, ...]:
    if resource_names is None:
        return tuple(f"r{k}" for k in range(m))
    names = tuple(str(s) for s in resource_names)
    if len(names) != m:
        raise MalformedInputError(f"{len(names)} resource names for {m} resources")
    return names


def random_rank(rng: random.Random, m: int, max_chain: int = 3) -> RankFunction:
    """Random normalized monotone submodular table with full rank at least one.

    Builds a valid table (a concave function of the subset size plus capped
    block counts, truncated by a random ceiling), then tries a few random
    single-entry nudges, keeping each only if the table still validates.
    """
    if m < 1:
        raise MalformedInputError("need at least one resource")
    if max_chain < 1:
        raise MalformedInputError("max_chain must be positive")
    inc = rng.randint(1, max_chain)
    concave = [0]
    for _ in range(m):
        concave.append(concave[-1] + inc)
        inc = rng.randint(0, inc)
    order = list(range(m))
    rng.shuffle(order)
    blocks: list[list[int]] = []
    idx = 0
    while idx < m:
        size = rng.randint(1, min(3, m - idx))
        blocks.append(order[idx : idx + size])
        idx += size
    caps = [rng.randint(1, max_chain) for _ in blocks]
    ceiling = rng.randint(1, concave[m] + sum(caps))
    values = []
    for mask in range(1 << m):
        k = bin(mask).count("1")
        blocked = sum(
            min(sum(1 for r in b if mask >> r & 1), cap)
            for b, cap in zip(blocks, caps)
        )
        values.append(min(concave[k] + blocked, ceiling))
    f = RankFunction(tuple(values))
    for _ in range(rng.randint(0, 3)):
        mask = rng.randrange(1, 1 << m)
        nudged = list(f.values)
        nudged[mask] += rng.choice((-1, 1))
        if nudged[mask] < 0:
            continue
        trial = RankFunction(tuple(nudged))
        if trial.rank_of_all >= 1 and validate_rank(trial).ok:
            f = trial
    assert validate_rank(f).ok
    return f


def random_convex_table(
    rng: random.Random,
    length: int,
    start_cap: int = 3,
    first_step_cap: int = 2,
    growth_cap: int = 1,
) -> CostTable:
    """Convex nondecreasing table; default caps keep values at most 100 for length <= 10."""
    if length < 1:
        raise MalformedInputError("cost table length must be positive")
    value = rng.randint(0, start_cap)
    step = rng.randint(0, first_step_cap)
    out = [value]
    for _ in range(length - 1):
        value += step
        out.append(value)
        step += rng.randint(0, growth_cap)
    return CostTable(tuple(out))


def _random_ssc_table(
    rng: random.Random, length: int, u: int, budget: int = RETRY_BUDGET
) -> CostTable:
    """Nondecreasing table passing the u-truncated load-sensitivity check.

    Draws alternate between convex tables (which always pass) and free
    nondecreasing walks rejection-tested against the check, so non-convex
    specimens do occur.
    """
    for _ in range(budget):
        if rng.random() < 0.5:
            candidate = random_convex_table(rng, length)
        else:
            values = [rng.randint(0, 3)]
            for _ in range(length - 1):
                values.append(values[-1] + rng.randint(0, 3))
            candidate = CostTable(tuple(values))
        if find_ssc_violation(candidate.values, u) is None:
            return candidate
    raise GenerationError(
        f"no load-sensitive table found in {budget} draws (length {length}, usage {u})"
    )


def gen_random(
    seed: int,
    n: int,
    m: int,
    max_demand: int,
    cost_family: str = "convex_nondecreasing",
) -> GameInstance:
    """Seed-deterministic valid instance with randomized polymatroid constraints.

    Demands are uniform in [1, min(max_demand, full rank)] per player.
    ``cost_family`` picks how tables are drawn: convex nondecreasing ones
    (always load-sensitive), or tables rejection-sampled directly against
    the truncated load-sensitivity check (non-convex specimens allowed).
    """
    if not 1 <= n <= MAX_PLAYERS:
        raise MalformedInputError(f"player count must be in [1, {MAX_PLAYERS}]")
    if not 1 <= m <= MAX_RESOURCES:
        raise MalformedInputError(f"resource count must be in [1, {MAX_RESOURCES}]")
    if not 1 <= max_demand <= MAX_DEMAND:
        raise MalformedInputError(f"max demand must be in [1, {MAX_DEMAND}]")
    if cost_family not in COST_FAMILIES:
        raise MalformedInputError(
            f"unknown cost family {cost_family!r}; expected one of {COST_FAMILIES}"
        )
    rng = random.Random(seed)
    ranks = [random_rank(rng, m, max_chain=max_demand) for _ in range(n)]
    demands = [rng.randint(1, min(max_demand, f.rank_of_all)) for f in ranks]
    total = sum(demands)
    costs = []
    for i in range(n):
        row = []
        for r in range(m):
            if cost_family == "convex_nondecreasing":
                row.append(random_convex_table(rng, total + 1))
            else:
                row.append(
                    _random_ssc_table(rng, total + 1, ranks[i].singleton(r))
                )
        costs.append(tuple(row))
    return GameInstance(
        _resource_names(m, None), tuple(demands), tuple(ranks), tuple(costs)
    )
