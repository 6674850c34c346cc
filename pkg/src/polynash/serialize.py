"""JSON documents for instances, profiles, and traces.

Output is byte-deterministic: UTF-8, LF line endings, fixed key order. The
resource order in a document is authoritative -- it fixes bitmask bit order
and every tie-breaking index. Instance and profile documents are single
pretty-printed objects; traces are line-delimited records, one event per
line after a header line carrying the schema version.
"""

from __future__ import annotations

import json
from typing import Sequence

from .errors import InvariantError, ParseError
from .game import CostTable, GameInstance, Profile
from .rank import RankFunction
from .solver import (
    EVENT_DEMAND_INCREASE,
    EVENT_EQUILIBRIUM,
    EVENT_GREEDY_EXTEND,
    EVENT_IMPROVEMENT_MOVE,
    Trace,
    TraceEvent,
)

__all__ = [
    "FORMAT_VERSION",
    "check_trace",
    "parse_instance",
    "parse_profile",
    "write_instance",
    "write_profile",
    "write_trace",
]

FORMAT_VERSION = 1

_EVENT_KINDS = (
    EVENT_DEMAND_INCREASE,
    EVENT_GREEDY_EXTEND,
    EVENT_IMPROVEMENT_MOVE,
    EVENT_EQUILIBRIUM,
)


def _decode(data: bytes | str) -> str:
    if isinstance(data, str):
        return data
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"document is not valid UTF-8: {exc}") from None


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno
        ) from None


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ParseError(message)


def _check_version(doc: dict, what: str) -> None:
    version = doc.get("format_version")
    _require(
        isinstance(version, int) and version == FORMAT_VERSION,
        f"{what} must carry format_version {FORMAT_VERSION}, got {version!r}",
    )


def _int_field(value, what: str) -> int:
    _require(isinstance(value, int) and not isinstance(value, bool), f"{what} must be an integer")
    return value


def _parse_rank(raw, names: Sequence[str], player: int) -> RankFunction:
    m = len(names)
    if isinstance(raw, list):
        _require(
            len(raw) == 1 << m,
            f"player {player} dense rank table has length {len(raw)}, expected {1 << m}",
        )
        return RankFunction(
            tuple(_int_field(v, f"player {player} rank entry") for v in raw)
        )
    _require(isinstance(raw, dict), f"player {player} rank must be an array or a map")
    index = {name: r for r, name in enumerate(names)}
    table = [None] * (1 << m)
    table[0] = 0
    for key, value in raw.items():
        _require(isinstance(key, str), f"player {player} rank keys must be strings")
        mask = 0
        if key:
            for part in key.split(","):
                _require(
                    part in index,
                    f"player {player} rank key {key!r} names unknown resource {part!r}",
                )
                bit = 1 << index[part]
                _require(
                    not mask & bit,
                    f"player {player} rank key {key!r} repeats resource {part!r}",
                )
                mask |= bit
        table[mask] = _int_field(value, f"player {player} rank value for {key!r}")
    for mask in range(1, 1 << m):
        if table[mask] is None:
            label = ",".join(names[r] for r in range(m) if mask >> r & 1)
            raise ParseError(
                f"player {player} rank map is missing the subset {{{label}}}"
            )
    return RankFunction(tuple(table))


def parse_instance(data: bytes | str) -> GameInstance:
    """Parse and fully validate an instance document.

    Raises ParseError with a position for syntax problems, and
    ValidationError with witness data for semantic ones (rank properties,
    cost-table requirements, infeasible demands).
    """
    doc = _load_json(_decode(data))
    _require(isinstance(doc, dict), "instance document must be a JSON object")
    _check_version(doc, "instance document")
    names_raw = doc.get("resources")
    _require(isinstance(names_raw, list), "resources must be a list of names")
    names = tuple(str(s) for s in names_raw)
    _require(len(set(names)) == len(names), "resource names must be unique")
    players = doc.get("players")
    _require(isinstance(players, list), "players must be a list")
    demands: list[int] = []
    ranks: list[RankFunction] = []
    costs: list[tuple[CostTable, ...]] = []
    for i, entry in enumerate(players):
        _require(isinstance(entry, dict), f"player {i} entry must be an object")
        demands.append(_int_field(entry.get("demand"), f"player {i} demand"))
        ranks.append(_parse_rank(entry.get("rank"), names, i))
        cost_map = entry.get("costs")
        _require(isinstance(cost_map, dict), f"player {i} costs must be a map")
        unknown = set(cost_map) - set(names)
        _require(
            not unknown,
            f"player {i} costs name unknown resources {sorted(unknown)}",
        )
        row = []
        for name in names:
            _require(
                name in cost_map, f"player {i} costs are missing resource {name!r}"
            )
            values = cost_map[name]
            _require(
                isinstance(values, list),
                f"player {i} cost table for {name!r} must be an array",
            )
            row.append(
                CostTable(
                    tuple(
                        _int_field(v, f"player {i} cost entry on {name!r}")
                        for v in values
                    )
                )
            )
        costs.append(tuple(row))
    return GameInstance(names, tuple(demands), tuple(ranks), tuple(costs))


def write_instance(g: GameInstance) -> bytes:
    doc = {
        "format_version": FORMAT_VERSION,
        "resources": list(g.resources),
        "players": [
            {
                "demand": g.demands[i],
                "rank": list(g.ranks[i].values),
                "costs": {
                    name: list(g.costs[i][r].values)
                    for r, name in enumerate(g.resources)
                },
            }
            for i in range(g.n)
        ],
    }
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


def write_profile(g: GameInstance, p: Profile) -> bytes:
    from .game import private_cost  # avoids a cycle at import time

    loads = p.loads(g.m)
    doc = {
        "format_version": FORMAT_VERSION,
        "players": [
            {
                "strategy": {
                    name: p.strategies[i][r] for r, name in enumerate(g.resources)
                },
                "cost": private_cost(g, p, i),
            }
            for i in range(g.n)
        ],
        "loads": {name: loads[r] for r, name in enumerate(g.resources)},
    }
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


def parse_profile(data: bytes | str, g: GameInstance) -> Profile:
    """Parse a profile document and validate it against the instance.

    Strategy maps may omit resources (treated as zero); unknown names are an
    error. The result is checked to lie in every player's base polyhedron.
    """
    doc = _load_json(_decode(data))
    _require(isinstance(doc, dict), "profile document must be a JSON object")
    _check_version(doc, "profile document")
    players = doc.get("players")
    _require(isinstance(players, list), "players must be a list")
    _require(
        len(players) == g.n,
        f"profile has {len(players)} players, instance has {g.n}",
    )
    index = {name: r for r, name in enumerate(g.resources)}
    strategies = []
    for i, entry in enumerate(players):
        _require(isinstance(entry, dict), f"player {i} entry must be an object")
        strategy_map = entry.get("strategy")
        _require(isinstance(strategy_map, dict), f"player {i} strategy must be a map")
        counts = [0] * g.m
        for name, value in strategy_map.items():
            _require(
                name in index,
                f"player {i} strategy names unknown resource {name!r}",
            )
            counts[index[name]] = _int_field(value, f"player {i} count on {name!r}")
        strategies.append(tuple(counts))
    profile = Profile(tuple(strategies))
    g.check_profile(profile)
    return profile


def _event_record(g: GameInstance, e: TraceEvent) -> dict:
    def name(r: int | None) -> str | None:
        return None if r is None else g.resources[r]

    return {
        "kind": e.kind,
        "outer": e.outer,
        "inner": e.inner,
        "player": e.player,
        "unit": e.unit,
        "from": name(e.from_resource),
        "to": name(e.to_resource),
        "overloaded": name(e.overloaded),
        "marginal": list(e.marginal_sorted),
    }


def write_trace(g: GameInstance, trace: Trace) -> bytes:
    header = {
        "kind": "header",
        "format_version": FORMAT_VERSION,
        "resources": list(g.resources),
        "players": g.n,
    }
    lines = [json.dumps(header, separators=(",", ":"))]
    lines.extend(
        json.dumps(_event_record(g, e), separators=(",", ":")) for e in trace.events
    )
    return ("\n".join(lines) + "\n").encode("utf-8")


def check_trace(data: bytes | str) -> tuple[int, int]:
    """Independent replay check of a trace document.

    Verifies that within each insertion the sorted marginal vector of every
    improvement move is strictly lexicographically below its predecessor's.
    Returns (insertions seen, improvement moves checked); raises
    InvariantError on the first violated decrease and ParseError on
    malformed input.
    """
    text = _decode(data)
    lines = [line for line in text.split("\n") if line]
    _require(bool(lines), "trace document is empty")
    header = _load_json(lines[0])
    _require(
        isinstance(header, dict) and header.get("kind") == "header",
        "trace must start with a header line",
    )
    _check_version(header, "trace header")
    insertions = 0
    moves = 0
    current_outer: int | None = None
    previous: tuple[int, ...] | None = None
    for lineno, line in enumerate(lines[1:], start=2):
        record = _load_json(line)
        _require(isinstance(record, dict), f"trace line {lineno} must be an object")
        kind = record.get("kind")
        _require(kind in _EVENT_KINDS, f"trace line {lineno} has unknown kind {kind!r}")
        outer = _int_field(record.get("outer"), f"trace line {lineno} outer")
        marginal = record.get("marginal")
        _require(
            isinstance(marginal, list),
            f"trace line {lineno} must carry a marginal vector",
        )
        snapshot = tuple(_int_field(v, "marginal entry") for v in marginal)
        if kind == EVENT_GREEDY_EXTEND:
            insertions += 1
            current_outer = outer
            previous = snapshot
        elif kind == EVENT_IMPROVEMENT_MOVE:
            _require(
                current_outer == outer and previous is not None,
                f"trace line {lineno}: improvement move before its insertion",
            )
            if not snapshot < previous:
                raise InvariantError(
                    f"trace line {lineno}: sorted marginal vector did not strictly "
                    f"decrease ({previous} -> {snapshot})"
                )
            moves += 1
            previous = snapshot
    return insertions, moves
