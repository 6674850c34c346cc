"""Exact best responses as minimum-weight chain ideals.

A strategy of one player is an ideal of their chain ground set, and under
the induced per-element weights its total weight equals the player's
private cost. Best responses are therefore minimum-weight ideals of a fixed
size: built greedily from scratch, extended by one element when the demand
grows, and repaired by one swap when the weights of a single chain rise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ContractError, InfeasibleTruncationError, MalformedInputError
from .game import GameInstance, Profile, WeightedGround, induced_weights
from .rank import RankFunction, enumerate_base, member_polytope

__all__ = [
    "SwapStep",
    "extend_best_response",
    "feasible_additions",
    "is_best_response",
    "local_improvement",
    "ordered_greedy",
    "repair_best_response",
]


@dataclass(frozen=True)
class SwapStep:
    """One improving exchange: drop the top of one chain prefix, extend another.

    ``remove`` and ``add`` are (resource, position) chain elements;
    ``improvement`` is the strictly positive weight decrease.
    """

    remove: tuple[int, int] | None
    add: tuple[int, int] | None
    improvement: int


def _require_coverage(f: RankFunction, w: WeightedGround, demand: int) -> None:
    if len(w.weights) != f.m:
        raise MalformedInputError(
            f"weights cover {len(w.weights)} resources, rank function has {f.m}"
        )
    for r in range(f.m):
        need = min(f.singleton(r), demand)
        if w.length(r) < need:
            raise MalformedInputError(
                f"weights cover only {w.length(r)} of the {need} chain positions "
                f"reachable on resource {r} at demand {demand}"
            )


def feasible_additions(f: RankFunction, counts: Sequence[int]) -> list[tuple[int, int]]:
    """Chain elements whose addition keeps every subset capacity satisfied.

    Candidates are the next free position of each chain; each is tested by
    full subset enumeration.
    """
    counts = tuple(int(v) for v in counts)
    out = []
    for r in range(f.m):
        if counts[r] >= f.singleton(r):
            continue
        candidate = counts[:r] + (counts[r] + 1,) + counts[r + 1 :]
        if member_polytope(f, candidate):
            out.append((r, counts[r] + 1))
    return out


def _extend_once(
    f: RankFunction, w: WeightedGround, counts: tuple[int, ...]
) -> tuple[int, ...]:
    best: tuple[int, int, int] | None = None  # (weight, resource, position)
    for r, t in feasible_additions(f, counts):
        if t > w.length(r):
            continue
        wt = w.weight(r, t)
        if best is None or wt < best[0]:
            best = (wt, r, t)
    if best is None:
        raise InfeasibleTruncationError(
            "no feasible addition exists; the demand exceeds the ground rank"
        )
    _, r, t = best
    return counts[:r] + (t,) + counts[r + 1 :]


def ordered_greedy(f: RankFunction, d: int, w: WeightedGround) -> tuple[int, ...]:
    """Minimum-weight ideal with exactly d elements, one cheapest element at a time.

    Every intermediate prefix of size k is itself minimum-weight among the
    ideals of size k. Ties go to the lowest resource index.
    """
    if d < 0:
        raise MalformedInputError("demand must be nonnegative")
    if d > f.rank_of_all:
        raise InfeasibleTruncationError(
            f"demand {d} exceeds the rank {f.rank_of_all} of the full resource set"
        )
    _require_coverage(f, w, d)
    counts = (0,) * f.m
    for _ in range(d):
        counts = _extend_once(f, w, counts)
    return counts


def extend_best_response(
    f: RankFunction, w: WeightedGround, counts: Sequence[int]
) -> tuple[int, ...]:
    """Grow a minimum-weight ideal by one element, staying minimum-weight.

    The input must be minimum-weight at its own size; adding the cheapest
    feasible chain element (lowest resource index on ties) is then optimal
    at size + 1, so the result differs in exactly one coordinate by +1.
    """
    counts = tuple(int(v) for v in counts)
    d = sum(counts)
    if d + 1 > f.rank_of_all:
        raise InfeasibleTruncationError(
            f"demand {d + 1} exceeds the rank {f.rank_of_all} of the full resource set"
        )
    _require_coverage(f, w, d + 1)
    return _extend_once(f, w, counts)


def local_improvement(
    f: RankFunction, counts: Sequence[int], w: WeightedGround
) -> SwapStep | None:
    """Best single exchange that lowers the weight, or None when counts is optimal.

    None is reliable: an ideal that is not minimum-weight at its size always
    admits an improving exchange. Among improving exchanges the one with the
    largest saving wins; ties go to the lowest removal resource index, then
    the lowest addition resource index. Feasibility of each exchange is
    checked by full subset enumeration.
    """
    counts = tuple(int(v) for v in counts)
    _require_coverage(f, w, sum(counts))
    best: SwapStep | None = None
    for r in range(f.m):
        if counts[r] == 0:
            continue
        w_out = w.weight(r, counts[r])
        for s in range(f.m):
            if s == r:
                continue
            t = counts[s] + 1
            if t > f.singleton(s) or t > w.length(s):
                continue
            w_in = w.weight(s, t)
            if w_in >= w_out:
                continue
            swapped = list(counts)
            swapped[r] -= 1
            swapped[s] += 1
            if not member_polytope(f, tuple(swapped)):
                continue
            improvement = w_out - w_in
            if best is None or improvement > best.improvement:
                best = SwapStep(remove=(r, counts[r]), add=(s, t), improvement=improvement)
    return best


def _check_shift_structure(
    shifted_resource: int, w_old: WeightedGround, w_new: WeightedGround
) -> None:
    if len(w_old.weights) != len(w_new.weights):
        raise ContractError("old and new weights cover different resource counts")
    if not 0 <= shifted_resource < len(w_old.weights):
        raise ContractError(f"shifted resource {shifted_resource} out of range")
    for r, (old_row, new_row) in enumerate(zip(w_old.weights, w_new.weights)):
        if len(old_row) != len(new_row):
            raise ContractError(f"chain length changed on resource {r}")
        if r != shifted_resource:
            if old_row != new_row:
                raise ContractError(
                    f"weights changed on resource {r}, but only resource "
                    f"{shifted_resource} may shift"
                )
            continue
        for t in range(len(old_row)):
            if new_row[t] < old_row[t]:
                raise ContractError(
                    f"shifted chain weight dropped at position {t + 1}: "
                    f"{old_row[t]} -> {new_row[t]}"
                )
            if t + 1 < len(old_row) and new_row[t] > old_row[t + 1]:
                raise ContractError(
                    f"shifted chain weight at position {t + 1} ({new_row[t]}) "
                    f"overtakes the old weight of position {t + 2} ({old_row[t + 1]})"
                )


def repair_best_response(
    f: RankFunction,
    counts: Sequence[int],
    shifted_resource: int,
    w_old: WeightedGround,
    w_new: WeightedGround,
    *,
    verify_input_optimal: bool = False,
) -> tuple[tuple[int, ...], SwapStep | None]:
    """Restore a minimum-weight ideal after the weights of one chain rise.

    The input must be minimum-weight under ``w_old``, and ``w_new`` may raise
    weights only on ``shifted_resource``'s chain, with no position overtaking
    the old weight of the position above it (the exact pattern produced when
    one more opponent unit lands on that resource). Either the input is still
    optimal (returned unchanged) or the feasible exchange with the largest
    saving moves exactly one unit off the shifted chain and restores
    optimality, so the result is at count-vector Hamming distance 0 or 2.

    ``verify_input_optimal`` re-checks the optimality precondition by
    exhaustive enumeration; intended for debugging at desk scale.
    """
    counts = tuple(int(v) for v in counts)
    _check_shift_structure(shifted_resource, w_old, w_new)
    if verify_input_optimal:
        best = min(w_old.ideal_weight(x) for x in enumerate_base(f, sum(counts)))
        if w_old.ideal_weight(counts) != best:
            raise ContractError(
                f"input ideal {counts} is not minimum-weight under the pre-shift "
                f"weights (has {w_old.ideal_weight(counts)}, optimum is {best})"
            )
    swap = local_improvement(f, counts, w_new)
    if swap is None:
        return counts, None
    r = swap.remove[0]
    s = swap.add[0]
    repaired = list(counts)
    repaired[r] -= 1
    repaired[s] += 1
    return tuple(repaired), swap


def is_best_response(g: GameInstance, p: Profile, i: int) -> bool:
    """Whether player i's strategy achieves their optimum against the current loads.

    The player's demand is taken as the size of their current strategy, so
    this works both for finished profiles and for partially inserted ones.
    """
    x = p.strategies[i]
    k = sum(x)
    if k == 0:
        return True
    loads = p.loads(g.m)
    a = tuple(loads[r] - x[r] for r in range(g.m))
    w = induced_weights(g, i, a)
    optimum = ordered_greedy(g.ranks[i], k, w)
    return w.ideal_weight(x) <= w.ideal_weight(optimum)
