"""Integral polymatroid rank functions stored as explicit subset tables.

Subsets of the resource set are encoded as bitmasks: bit j set means resource
j is in the subset. A rank function over m resources is therefore a table of
2**m nonnegative integers indexed by bitmask. All arithmetic is exact
(Python ints), and every operation here is a pure function of immutable
inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import (
    EnumerationTooLargeError,
    InfeasibleTruncationError,
    MalformedInputError,
)

MAX_RESOURCES = 20


@dataclass(frozen=True)
class RankFunction:
    """Integer set function f: 2^R -> N as an explicit bitmask-indexed table.

    Construction checks shape only; use :func:`validate_rank` to test the
    polymatroid properties (normalized, monotone, submodular).
    """

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        values = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", values)
        size = len(values)
        if size == 0 or size & (size - 1):
            raise MalformedInputError(
                f"rank table length must be a power of two, got {size}"
            )
        if size > 1 << MAX_RESOURCES:
            raise MalformedInputError(
                f"rank table for more than {MAX_RESOURCES} resources is not supported"
            )
        if any(v < 0 for v in values):
            raise MalformedInputError("rank table entries must be nonnegative")

    @property
    def m(self) -> int:
        """Number of resources."""
        return (len(self.values) - 1).bit_length()

    @property
    def full_mask(self) -> int:
        return len(self.values) - 1

    @property
    def rank_of_all(self) -> int:
        """Value on the full resource set; the largest feasible demand."""
        return self.values[-1]

    def __call__(self, mask: int) -> int:
        if not 0 <= mask < len(self.values):
            raise MalformedInputError(f"subset mask {mask} out of range")
        return self.values[mask]

    def singleton(self, r: int) -> int:
        """Value on the single resource r; the capacity of r's chain."""
        if not 0 <= r < self.m:
            raise MalformedInputError(f"resource index {r} out of range")
        return self.values[1 << r]


@dataclass(frozen=True)
class RankReport:
    """Outcome of validate_rank: ok, or every violated inequality.

    Violations are (property, U, V) triples with U, V the witnessing subset
    bitmasks; for the normalization check both are 0.
    """

    ok: bool
    violations: tuple[tuple[str, int, int], ...]


def validate_rank(f: RankFunction) -> RankReport:
    """Check that f is normalized, monotone, and submodular.

    Monotonicity is tested on all single-element extensions (U, U + {j}) and
    submodularity on all pairs (U + {j}, U + {k}) of extensions of a common
    U; both local families are equivalent to the unrestricted definitions.
    Violations are listed in increasing bitmask order of the base subset.
    """
    values = f.values
    m = f.m
    violations: list[tuple[str, int, int]] = []
    if values[0] != 0:
        violations.append(("normalized", 0, 0))
    for base in range(len(values)):
        free = [j for j in range(m) if not base >> j & 1]
        for idx, j in enumerate(free):
            with_j = base | 1 << j
            if values[base] > values[with_j]:
                violations.append(("monotone", base, with_j))
            for k in free[idx + 1 :]:
                with_k = base | 1 << k
                if values[with_j] + values[with_k] < values[with_j | with_k] + values[base]:
                    violations.append(("submodular", with_j, with_k))
    return RankReport(ok=not violations, violations=tuple(violations))


def _checked_vector(f: RankFunction, x: Sequence[int]) -> tuple[int, ...]:
    vec = tuple(int(v) for v in x)
    if len(vec) != f.m:
        raise MalformedInputError(f"vector has length {len(vec)}, expected {f.m}")
    if any(v < 0 for v in vec):
        raise MalformedInputError("count vectors must be nonnegative")
    return vec


def member_polytope(f: RankFunction, x: Sequence[int]) -> bool:
    """True iff the count vector x satisfies every subset capacity of f."""
    vec = _checked_vector(f, x)
    values = f.values
    for mask in range(1, len(values)):
        total = 0
        mm = mask
        while mm:
            low = mm & -mm
            total += vec[low.bit_length() - 1]
            mm ^= low
        if total > values[mask]:
            return False
    return True


def member_base(f: RankFunction, d: int, x: Sequence[int]) -> bool:
    """True iff x lies in the polytope of f and its entries sum to exactly d."""
    if d < 0:
        raise MalformedInputError("demand must be nonnegative")
    if d > f.rank_of_all:
        raise InfeasibleTruncationError(
            f"demand {d} exceeds the rank {f.rank_of_all} of the full resource set"
        )
    vec = _checked_vector(f, x)
    return sum(vec) == d and member_polytope(f, vec)


def enumerate_base(
    f: RankFunction, d: int, cap: int | None = None
) -> list[tuple[int, ...]]:
    """All count vectors summing to d inside every capacity, ascending lexicographically.

    Intended for desk scale; pass ``cap`` to abort once the result would
    exceed it.
    """
    if d < 0:
        raise MalformedInputError("demand must be nonnegative")
    if d > f.rank_of_all:
        raise InfeasibleTruncationError(
            f"demand {d} exceeds the rank {f.rank_of_all} of the full resource set"
        )
    m = f.m
    caps = [f.singleton(r) for r in range(m)]
    out: list[tuple[int, ...]] = []

    def walk(r: int, remaining: int, prefix: list[int]) -> None:
        if r == m:
            if remaining == 0:
                vec = tuple(prefix)
                if member_polytope(f, vec):
                    out.append(vec)
                    if cap is not None and len(out) > cap:
                        raise EnumerationTooLargeError(
                            f"more than {cap} vectors in the base polyhedron at demand {d}"
                        )
            return
        for v in range(min(caps[r], remaining) + 1):
            prefix.append(v)
            walk(r + 1, remaining - v, prefix)
            prefix.pop()

    walk(0, d, [])
    return out


@dataclass(frozen=True)
class ChainPoset:
    """Per-resource chains r_1 < r_2 < ...; element identity is (resource, position).

    Two elements are comparable exactly when they share a resource, so a
    down-closed subset is a prefix of every chain and count vectors encode
    ideals with no extra structure.
    """

    lengths: tuple[int, ...]

    def __post_init__(self) -> None:
        lengths = tuple(int(v) for v in self.lengths)
        object.__setattr__(self, "lengths", lengths)
        if any(v < 0 for v in lengths):
            raise MalformedInputError("chain lengths must be nonnegative")

    @classmethod
    def from_rank(cls, f: RankFunction, max_length: int | None = None) -> "ChainPoset":
        lengths = [f.singleton(r) for r in range(f.m)]
        if max_length is not None:
            lengths = [min(length, max_length) for length in lengths]
        return cls(tuple(lengths))

    @property
    def size(self) -> int:
        return sum(self.lengths)

    def elements(self) -> Iterator[tuple[int, int]]:
        for r, length in enumerate(self.lengths):
            for t in range(1, length + 1):
                yield (r, t)

    def contains(self, element: tuple[int, int]) -> bool:
        r, t = element
        return 0 <= r < len(self.lengths) and 1 <= t <= self.lengths[r]


def matroid_rank(f: RankFunction, elements: Iterable[tuple[int, int]]) -> int:
    """Rank of a set of chain elements in the single-unit reduction of f.

    Evaluates min over all resource subsets T of |U without the chains of T|
    plus f(T), exhaustively over the 2**m choices of T.
    """
    chains = ChainPoset.from_rank(f)
    counts = [0] * f.m
    seen: set[tuple[int, int]] = set()
    for element in elements:
        e = (int(element[0]), int(element[1]))
        if e in seen:
            continue
        seen.add(e)
        if not chains.contains(e):
            raise MalformedInputError(f"element {e!r} lies outside the ground chains")
        counts[e[0]] += 1
    best: int | None = None
    for tmask in range(len(f.values)):
        outside = sum(counts[r] for r in range(f.m) if not tmask >> r & 1)
        value = outside + f.values[tmask]
        if best is None or value < best:
            best = value
    assert best is not None
    return best
