"""Game instances: cost tables, eager validation, private cost, induced chain weights.

A game couples players (demand + rank function + per-resource cost tables)
with a shared ordered resource list. Construction validates everything the
solver later relies on: feasible demands, well-formed rank tables, and the
load-sensitivity condition on every cost table. Instances are immutable and
all evaluation is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (
    AdmissibilityError,
    CostTableRangeError,
    MalformedInputError,
    ValidationError,
)
from .rank import ChainPoset, RankFunction, member_base, validate_rank

__all__ = [
    "CostTable",
    "GameInstance",
    "Profile",
    "WeightedGround",
    "check_convex",
    "check_nondecreasing",
    "check_ssc",
    "check_truncated_ssc",
    "find_ssc_violation",
    "induced_weights",
    "private_cost",
]


@dataclass(frozen=True)
class CostTable:
    """Per-unit price of a resource as a function of its total load.

    ``values[k]`` is the price charged for each unit a player keeps on the
    resource while the total load is k. Tables must be nonnegative and
    nondecreasing; evaluation past the end is a hard error, never
    extrapolation.
    """

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        values = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if not values:
            raise ValidationError("cost table must not be empty", witness=("empty",))
        for k, v in enumerate(values):
            if v < 0:
                raise ValidationError(
                    f"cost table entry {k} is negative ({v})", witness=("negative", k)
                )
        for k in range(len(values) - 1):
            if values[k] > values[k + 1]:
                raise ValidationError(
                    f"cost table decreases between loads {k} and {k + 1} "
                    f"({values[k]} > {values[k + 1]})",
                    witness=("decreasing", k),
                )

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, load: int) -> int:
        if not 0 <= load < len(self.values):
            raise CostTableRangeError(
                f"load {load} outside cost table of length {len(self.values)}"
            )
        return self.values[load]


def _values_of(c) -> tuple[int, ...]:
    if isinstance(c, CostTable):
        return c.values
    return tuple(int(v) for v in c)


def check_nondecreasing(c) -> bool:
    values = _values_of(c)
    return all(values[k] <= values[k + 1] for k in range(len(values) - 1))


def check_convex(c) -> bool:
    """First differences nondecreasing."""
    values = _values_of(c)
    diffs = [values[k + 1] - values[k] for k in range(len(values) - 1)]
    return all(diffs[k] <= diffs[k + 1] for k in range(len(diffs) - 1))


def find_ssc_violation(
    c, u: int, ab_max: int | None = None
) -> tuple[int, int, int, int] | None:
    """Search for a violation of the load-sensitivity inequality within the table.

    The inequality compares the marginal bill of keeping x units at prior
    load a against keeping y units at prior load b:

        c[a+x]*x - c[a+x-1]*(x-1)  <=  c[b+y]*y - c[b+y-1]*(y-1)

    quantified over 1 <= x <= y <= u and 0 <= a <= b, restricted to the
    quadruples whose table indices exist (b + y inside the table) and, when
    ``ab_max`` is given, to a, b <= ab_max. Returns the first violating
    (a, b, x, y) in scan order, or None.
    """
    values = _values_of(c)
    top = len(values) - 1
    for y in range(1, min(u, top) + 1):
        b_top = top - y
        if ab_max is not None:
            b_top = min(b_top, ab_max)
        for x in range(1, y + 1):
            for b in range(b_top + 1):
                rhs = values[b + y] * y - values[b + y - 1] * (y - 1)
                for a in range(b + 1):
                    lhs = values[a + x] * x - values[a + x - 1] * (x - 1)
                    if lhs > rhs:
                        return (a, b, x, y)
    return None


def check_truncated_ssc(c, u: int) -> bool:
    """Load-sensitivity check with own usage x, y capped at u.

    Quantifies prior loads a <= b over everything the table can express;
    with u = 1 this reduces to the table being nondecreasing from load 1 on.
    """
    values = _values_of(c)
    if u <= 0:
        return True
    if len(values) < 2:
        raise CostTableRangeError("cost table too short: no load 1 to evaluate")
    return find_ssc_violation(values, u) is None


def check_ssc(c, horizon: int) -> bool:
    """Load-sensitivity check with usage and prior loads both capped at ``horizon``.

    Requires the table to cover every quadruple up to the horizon, i.e.
    length at least 2 * horizon + 1.
    """
    values = _values_of(c)
    if horizon <= 0:
        return True
    if len(values) < 2 * horizon + 1:
        raise CostTableRangeError(
            f"cost table of length {len(values)} too short for horizon {horizon}; "
            f"need {2 * horizon + 1}"
        )
    return find_ssc_violation(values, horizon, ab_max=horizon) is None


@dataclass(frozen=True)
class WeightedGround:
    """Element weights on per-resource chains, nondecreasing along every chain.

    ``weights[r][t-1]`` is the weight of position t on resource r's chain.
    The nondecreasing requirement along each chain is what makes the greedy
    ideal construction exact, so it is asserted at construction.
    """

    weights: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(v) for v in row) for row in self.weights)
        object.__setattr__(self, "weights", rows)
        for r, row in enumerate(rows):
            for t in range(len(row) - 1):
                if row[t] > row[t + 1]:
                    raise AdmissibilityError(
                        f"weights decrease along the chain of resource {r}: "
                        f"position {t + 1} has {row[t]}, position {t + 2} has {row[t + 1]}"
                    )

    @property
    def chain_lengths(self) -> tuple[int, ...]:
        return tuple(len(row) for row in self.weights)

    def length(self, r: int) -> int:
        return len(self.weights[r])

    def weight(self, r: int, t: int) -> int:
        if not 0 <= r < len(self.weights):
            raise MalformedInputError(f"resource index {r} out of range")
        if not 1 <= t <= len(self.weights[r]):
            raise MalformedInputError(
                f"chain position {t} outside resource {r}'s chain of length "
                f"{len(self.weights[r])}"
            )
        return self.weights[r][t - 1]

    def ideal_weight(self, counts: Sequence[int]) -> int:
        """Total weight of the ideal taking the first counts[r] positions per chain."""
        counts = tuple(int(v) for v in counts)
        if len(counts) != len(self.weights):
            raise MalformedInputError(
                f"count vector has length {len(counts)}, expected {len(self.weights)}"
            )
        total = 0
        for r, c in enumerate(counts):
            if not 0 <= c <= len(self.weights[r]):
                raise MalformedInputError(
                    f"count {c} outside resource {r}'s chain of length "
                    f"{len(self.weights[r])}"
                )
            total += sum(self.weights[r][:c])
        return total


@dataclass(frozen=True)
class Profile:
    """One count vector per player; loads are the per-resource sums."""

    strategies: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        strategies = tuple(tuple(int(v) for v in s) for s in self.strategies)
        object.__setattr__(self, "strategies", strategies)
        if strategies:
            m = len(strategies[0])
            if any(len(s) != m for s in strategies):
                raise MalformedInputError("strategies must all have the same length")
        if any(v < 0 for s in strategies for v in s):
            raise MalformedInputError("strategies must be nonnegative")

    def loads(self, m: int | None = None) -> tuple[int, ...]:
        if not self.strategies:
            if m is None:
                raise MalformedInputError("resource count needed for an empty profile")
            return (0,) * m
        width = len(self.strategies[0])
        if m is not None and m != width:
            raise MalformedInputError(f"profile is over {width} resources, expected {m}")
        return tuple(sum(s[r] for s in self.strategies) for r in range(width))


@dataclass(frozen=True)
class GameInstance:
    """A fully validated game.

    ``resources`` fixes the bitmask bit order and every tie-breaking index.
    Validation is eager: rank tables must be normalized/monotone/submodular,
    demands feasible, and every cost table nonnegative, nondecreasing, and
    load-sensitive up to that player's single-resource capacity.
    """

    resources: tuple[str, ...]
    demands: tuple[int, ...]
    ranks: tuple[RankFunction, ...]
    costs: tuple[tuple[CostTable, ...], ...]

    def __post_init__(self) -> None:
        resources = tuple(str(name) for name in self.resources)
        demands = tuple(int(d) for d in self.demands)
        ranks = tuple(
            f if isinstance(f, RankFunction) else RankFunction(tuple(f))
            for f in self.ranks
        )
        costs = tuple(
            tuple(t if isinstance(t, CostTable) else CostTable(tuple(t)) for t in row)
            for row in self.costs
        )
        object.__setattr__(self, "resources", resources)
        object.__setattr__(self, "demands", demands)
        object.__setattr__(self, "ranks", ranks)
        object.__setattr__(self, "costs", costs)
        self._validate()

    def _validate(self) -> None:
        if len(set(self.resources)) != len(self.resources):
            raise ValidationError("resource names must be unique", witness=("names",))
        n, m = len(self.demands), len(self.resources)
        if len(self.ranks) != n or len(self.costs) != n:
            raise ValidationError(
                f"{n} demands but {len(self.ranks)} rank tables and "
                f"{len(self.costs)} cost rows",
                witness=("shape",),
            )
        for i, d in enumerate(self.demands):
            if d < 0:
                raise ValidationError(
                    f"player {i} has negative demand {d}", witness=("demand", i)
                )
        total = self.total_demand
        # strategy-space constraints first: they are independent of the total
        # demand, which the cost-table requirements below derive from
        for i in range(n):
            f = self.ranks[i]
            if f.m != m:
                raise ValidationError(
                    f"player {i} rank table covers {f.m} resources, expected {m}",
                    witness=("rank_shape", i),
                )
            report = validate_rank(f)
            if not report.ok:
                prop, u, v = report.violations[0]
                raise ValidationError(
                    f"player {i} rank table is not {prop}: "
                    f"witness subsets {{{self.subset_label(u)}}} and "
                    f"{{{self.subset_label(v)}}}",
                    witness=("rank", i, prop, u, v),
                )
            if self.demands[i] > f.rank_of_all:
                raise ValidationError(
                    f"player {i} demand {self.demands[i]} exceeds the rank "
                    f"{f.rank_of_all} of the full resource set",
                    witness=("infeasible_demand", i),
                )
        for i in range(n):
            f = self.ranks[i]
            if len(self.costs[i]) != m:
                raise ValidationError(
                    f"player {i} has {len(self.costs[i])} cost tables, expected {m}",
                    witness=("cost_shape", i),
                )
            for r in range(m):
                table = self.costs[i][r]
                if len(table) < total + 1:
                    raise ValidationError(
                        f"player {i} cost table on {self.resources[r]!r} has length "
                        f"{len(table)}, need at least {total + 1} to cover the total "
                        f"demand",
                        witness=("cost_length", i, r),
                    )
                u = f.singleton(r)
                quad = find_ssc_violation(table.values, u)
                if quad is not None:
                    a, b, x, y = quad
                    raise ValidationError(
                        f"player {i} cost table on {self.resources[r]!r} is not "
                        f"load-sensitive up to usage {u}: violated at prior loads "
                        f"a={a}, b={b} with usages x={x}, y={y}",
                        witness=("ssc", i, r, quad),
                    )

    @property
    def n(self) -> int:
        return len(self.demands)

    @property
    def m(self) -> int:
        return len(self.resources)

    @property
    def total_demand(self) -> int:
        return sum(self.demands)

    def subset_label(self, mask: int) -> str:
        return ",".join(
            self.resources[r] for r in range(self.m) if mask >> r & 1
        )

    def chain_cap(self, i: int, r: int) -> int:
        """Positions player i can ever occupy on r: min of capacity and demand."""
        return min(self.ranks[i].singleton(r), self.demands[i])

    def chain_poset(self, i: int) -> ChainPoset:
        return ChainPoset.from_rank(self.ranks[i], max_length=self.demands[i])

    def check_profile(self, p: Profile, demands: Sequence[int] | None = None) -> None:
        """Raise unless every strategy sits in its player's base polyhedron."""
        wanted = self.demands if demands is None else tuple(int(d) for d in demands)
        if len(p.strategies) != self.n:
            raise ValidationError(
                f"profile has {len(p.strategies)} strategies, expected {self.n}",
                witness=("profile_shape",),
            )
        for i, strategy in enumerate(p.strategies):
            if len(strategy) != self.m:
                raise ValidationError(
                    f"player {i} strategy has length {len(strategy)}, expected {self.m}",
                    witness=("profile_shape", i),
                )
            if not member_base(self.ranks[i], wanted[i], strategy):
                raise ValidationError(
                    f"player {i} strategy {strategy} is not a feasible split of "
                    f"demand {wanted[i]}",
                    witness=("profile_member", i),
                )


def private_cost(g: GameInstance, p: Profile, i: int) -> int:
    """Exact bill of player i: sum over resources of price-at-load times own units."""
    if not 0 <= i < g.n:
        raise MalformedInputError(f"player index {i} out of range")
    loads = p.loads(g.m)
    strategy = p.strategies[i]
    return sum(
        g.costs[i][r][loads[r]] * strategy[r] for r in range(g.m) if strategy[r]
    )


def induced_weights(g: GameInstance, i: int, a: Sequence[int]) -> WeightedGround:
    """Per-element prices on player i's chains given fixed opponent loads ``a``.

    The weight of position t on resource r is the bill increase of going
    from t-1 to t own units at opponent load a_r:

        t * c(a_r + t) - (t - 1) * c(a_r + t - 1)

    so prefix sums reproduce the player's exact private cost. For a validated
    instance the rows come out nondecreasing along each chain.
    """
    if not 0 <= i < g.n:
        raise MalformedInputError(f"player index {i} out of range")
    loads = tuple(int(v) for v in a)
    if len(loads) != g.m:
        raise MalformedInputError(f"load vector has length {len(loads)}, expected {g.m}")
    if any(v < 0 for v in loads):
        raise MalformedInputError("opponent loads must be nonnegative")
    rows = []
    for r in range(g.m):
        length = g.chain_cap(i, r)
        table = g.costs[i][r]
        if loads[r] + length > len(table) - 1:
            raise CostTableRangeError(
                f"player {i} cost table on {g.resources[r]!r} covers loads up to "
                f"{len(table) - 1}, but weights need {loads[r] + length}"
            )
        row = tuple(
            t * table[loads[r] + t] - (t - 1) * table[loads[r] + t - 1]
            for t in range(1, length + 1)
        )
        rows.append(row)
    try:
        return WeightedGround(tuple(rows))
    except AdmissibilityError as exc:
        raise AdmissibilityError(
            f"player {i}: {exc}; the instance's cost tables fail the "
            f"load-sensitivity requirement"
        ) from None
