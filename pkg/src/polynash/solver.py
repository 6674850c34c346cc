"""Equilibrium computation by unit-by-unit demand insertion.

Demands enter one unit at a time. Each insertion raises the load of exactly
one resource; after it, a sequence of single-unit best-response moves lets
the players touching that resource settle again. Across those moves the
sorted vector of per-unit marginal costs strictly decreases
lexicographically, which bounds the run; the decrease, the locality of each
move, and the iteration bounds are asserted on every solve.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .bestresponse import (
    extend_best_response,
    is_best_response,
    repair_best_response,
)
from .errors import CostTableRangeError, InvariantError, MalformedInputError
from .game import GameInstance, Profile, induced_weights

__all__ = [
    "MarginalVector",
    "SolverPolicy",
    "Trace",
    "TraceEvent",
    "compute_pne",
    "improving_players",
    "insertion_step_bound",
    "iteration_bound",
    "marginal_vector",
]

PLAYER_SELECTION_MODES = ("min_index", "round_robin", "seeded_random")

EVENT_DEMAND_INCREASE = "demand_increase"
EVENT_GREEDY_EXTEND = "greedy_extend"
EVENT_IMPROVEMENT_MOVE = "improvement_move"
EVENT_EQUILIBRIUM = "equilibrium_reached"


@dataclass(frozen=True)
class SolverPolicy:
    """How the solver breaks its one genuinely free choice, plus self-check depth.

    ``min_index`` (default) inserts a player's whole demand before the next
    player starts; ``round_robin`` deals units out cyclically;
    ``seeded_random`` draws the next player from a seeded generator.
    ``debug_assertions`` additionally verifies the expensive preconditions:
    each repair input is re-checked for optimality by exhaustive enumeration,
    and every player flagged as improvable must use the overloaded resource.
    """

    player_selection: str = "min_index"
    seed: int | None = None
    debug_assertions: bool = False

    def __post_init__(self) -> None:
        if self.player_selection not in PLAYER_SELECTION_MODES:
            raise MalformedInputError(
                f"unknown player selection {self.player_selection!r}; "
                f"expected one of {PLAYER_SELECTION_MODES}"
            )


@dataclass(frozen=True)
class MarginalVector:
    """Per-unit marginal costs of a profile, with the overloaded resource designated.

    ``entries`` holds (player, unit index, value) triples, units numbered
    from 1 along ascending resource index; all units one player keeps on one
    resource share the same value. ``sorted_view`` is the values in
    non-increasing order -- the quantity that must shrink lexicographically
    across improvement moves.
    """

    entries: tuple[tuple[int, int, int], ...]
    overloaded: int | None
    sorted_view: tuple[int, ...]


@dataclass(frozen=True)
class TraceEvent:
    """One step of a solve; resource fields are indices into the instance's list."""

    kind: str
    outer: int
    inner: int
    player: int | None = None
    unit: int | None = None
    from_resource: int | None = None
    to_resource: int | None = None
    overloaded: int | None = None
    marginal_sorted: tuple[int, ...] = ()


@dataclass(frozen=True)
class Trace:
    events: tuple[TraceEvent, ...]

    def improvement_moves(self) -> tuple[TraceEvent, ...]:
        return tuple(e for e in self.events if e.kind == EVENT_IMPROVEMENT_MOVE)

    def moves_per_insertion(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for e in self.events:
            if e.kind == EVENT_IMPROVEMENT_MOVE:
                out[e.outer] = out.get(e.outer, 0) + 1
        return out


def marginal_vector(
    g: GameInstance, p: Profile, overloaded: int | None = None
) -> MarginalVector:
    """Marginal cost of every placed unit under the two-case rule.

    Units on the overloaded resource are priced as the saving of removing
    one own unit at the current load; units elsewhere as the saving of
    removing one own unit after the load there grows by one.
    """
    if overloaded is not None and not 0 <= overloaded < g.m:
        raise MalformedInputError(f"resource index {overloaded} out of range")
    loads = p.loads(g.m)
    entries: list[tuple[int, int, int]] = []
    for i, strategy in enumerate(p.strategies):
        unit = 0
        for r in range(g.m):
            own = strategy[r]
            if own == 0:
                continue
            table = g.costs[i][r]
            if r == overloaded:
                delta = table[loads[r]] * own - table[loads[r] - 1] * (own - 1)
            else:
                if loads[r] + 1 >= len(table):
                    raise CostTableRangeError(
                        f"player {i} cost table on resource {r} covers loads up to "
                        f"{len(table) - 1}, marginal evaluation needs {loads[r] + 1}"
                    )
                delta = table[loads[r] + 1] * own - table[loads[r]] * (own - 1)
            for _ in range(own):
                unit += 1
                entries.append((i, unit, delta))
    sorted_view = tuple(sorted((e[2] for e in entries), reverse=True))
    return MarginalVector(tuple(entries), overloaded, sorted_view)


def iteration_bound(g: GameInstance) -> int:
    """Global cap on improvement moves across a whole solve, as an exact integer.

    With n players, m resources and peak demand D the bound is
    n**(D+1) * m**D * D**(D+1); zero when every demand is zero.
    """
    delta = max(g.demands, default=0)
    if delta == 0:
        return 0
    return g.n ** (delta + 1) * g.m**delta * delta ** (delta + 1)


def insertion_step_bound(g: GameInstance) -> int:
    """Cap on improvement moves following any single demand insertion.

    Sums, per player, the number of distinct marginal-cost vectors the
    player can exhibit: (m * d_i) ** d_i.
    """
    return sum((g.m * d) ** d for d in g.demands)


def improving_players(
    g: GameInstance, p: Profile, overloaded: int | None = None, *, debug: bool = False
) -> list[int]:
    """Players whose strategy is not currently a best response, ascending index.

    Scans every player. With ``debug`` set, additionally asserts that each
    improvable player keeps at least one unit on the overloaded resource --
    the only way a previously settled player can become improvable.
    """
    out = [i for i in range(g.n) if not is_best_response(g, p, i)]
    if debug and overloaded is not None:
        for i in out:
            if p.strategies[i][overloaded] == 0:
                raise InvariantError(
                    f"player {i} can improve without using the overloaded resource "
                    f"{overloaded}; strategies={p.strategies} loads={p.loads(g.m)}"
                )
    return out


def _pick_player(
    policy: SolverPolicy,
    demands: tuple[int, ...],
    placed: list[int],
    rng: random.Random,
    cursor: int,
) -> tuple[int, int]:
    eligible = [i for i in range(len(demands)) if placed[i] < demands[i]]
    if policy.player_selection == "min_index":
        return eligible[0], cursor
    if policy.player_selection == "round_robin":
        n = len(demands)
        for offset in range(n):
            cand = (cursor + offset) % n
            if placed[cand] < demands[cand]:
                return cand, cand + 1
        raise AssertionError("unreachable: eligible was non-empty")
    return rng.choice(eligible), cursor


def compute_pne(
    g: GameInstance, policy: SolverPolicy | None = None
) -> tuple[Profile, Trace]:
    """Insert all demand units and settle after each one; returns an equilibrium.

    The returned profile makes every player's strategy a best response. The
    trace records every insertion and every improvement move together with
    the sorted marginal-cost vector after it.
    """
    policy = policy or SolverPolicy()
    n, m = g.n, g.m
    strategies: list[tuple[int, ...]] = [(0,) * m for _ in range(n)]
    placed = [0] * n
    unit_home: list[list[int]] = [[] for _ in range(n)]
    events: list[TraceEvent] = []
    rng = random.Random(0 if policy.seed is None else policy.seed)
    cursor = 0
    total_moves = 0
    total_cap = iteration_bound(g)
    step_cap = insertion_step_bound(g)

    def current_profile() -> Profile:
        return Profile(tuple(strategies))

    def opponent_loads(i: int) -> tuple[int, ...]:
        return tuple(
            sum(strategies[h][r] for h in range(n) if h != i) for r in range(m)
        )

    for outer in range(1, g.total_demand + 1):
        i, cursor = _pick_player(policy, g.demands, placed, rng, cursor)
        placed[i] += 1
        settled_loads = current_profile().loads(m)
        a = opponent_loads(i)
        w = induced_weights(g, i, a)
        old = strategies[i]
        new = extend_best_response(g.ranks[i], w, old)
        r0 = next(r for r in range(m) if new[r] == old[r] + 1)
        strategies[i] = new
        unit_home[i].append(r0)
        events.append(
            TraceEvent(EVENT_DEMAND_INCREASE, outer, 0, player=i, unit=placed[i])
        )
        over = r0
        snapshot = marginal_vector(g, current_profile(), over)
        events.append(
            TraceEvent(
                EVENT_GREEDY_EXTEND,
                outer,
                0,
                player=i,
                unit=placed[i],
                to_resource=r0,
                overloaded=over,
                marginal_sorted=snapshot.sorted_view,
            )
        )
        inner = 0
        while True:
            movers = improving_players(
                g, current_profile(), over, debug=policy.debug_assertions
            )
            if not movers:
                break
            j = movers[0]
            if strategies[j][over] == 0:
                raise InvariantError(
                    f"improving player {j} holds no unit on overloaded resource "
                    f"{over}; strategies={strategies}"
                )
            aj = opponent_loads(j)
            if aj[over] == 0:
                raise InvariantError(
                    f"the extra unit on resource {over} belongs to the mover "
                    f"{j} itself; strategies={strategies}"
                )
            pre_shift = tuple(aj[r] - (1 if r == over else 0) for r in range(m))
            w_old = induced_weights(g, j, pre_shift)
            w_new = induced_weights(g, j, aj)
            repaired, swap = repair_best_response(
                g.ranks[j],
                strategies[j],
                over,
                w_old,
                w_new,
                verify_input_optimal=policy.debug_assertions,
            )
            if swap is None:
                raise InvariantError(
                    f"player {j} was flagged improvable but its repair found the "
                    f"strategy optimal; strategies={strategies} overloaded={over}"
                )
            from_r = swap.remove[0]
            to_r = swap.add[0]
            if from_r != over:
                raise InvariantError(
                    f"improvement move leaves resource {from_r}, expected the "
                    f"overloaded resource {over}"
                )
            unit_idx = unit_home[j].index(from_r)
            unit_home[j][unit_idx] = to_r
            strategies[j] = repaired
            inner += 1
            total_moves += 1
            if inner > step_cap:
                raise InvariantError(
                    f"improvement moves after insertion {outer} exceeded the bound "
                    f"{step_cap}"
                )
            if total_moves > total_cap:
                raise InvariantError(
                    f"total improvement moves exceeded the bound {total_cap}"
                )
            over = to_r
            loads_now = current_profile().loads(m)
            expected = tuple(
                settled_loads[r] + (1 if r == over else 0) for r in range(m)
            )
            if loads_now != expected:
                raise InvariantError(
                    f"loads {loads_now} are not the settled loads {settled_loads} "
                    f"plus one unit on resource {over}"
                )
            nxt = marginal_vector(g, current_profile(), over)
            if not nxt.sorted_view < snapshot.sorted_view:
                raise InvariantError(
                    "sorted marginal vector failed to strictly decrease: "
                    f"{snapshot.sorted_view} -> {nxt.sorted_view}"
                )
            events.append(
                TraceEvent(
                    EVENT_IMPROVEMENT_MOVE,
                    outer,
                    inner,
                    player=j,
                    unit=unit_idx + 1,
                    from_resource=from_r,
                    to_resource=to_r,
                    overloaded=over,
                    marginal_sorted=nxt.sorted_view,
                )
            )
            snapshot = nxt
        events.append(
            TraceEvent(
                EVENT_EQUILIBRIUM,
                outer,
                inner,
                overloaded=over,
                marginal_sorted=snapshot.sorted_view,
            )
        )
    return current_profile(), Trace(tuple(events))
