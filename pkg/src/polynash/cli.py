"""Command-line entry points: solve, verify, gen, check, bound.

Exit codes: 0 success (including "equilibrium verified"), 1 usage error,
2 validation failure, 3 verification found violations, 4 internal invariant
failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .errors import (
    AdmissibilityError,
    ContractError,
    CostTableRangeError,
    EnumerationTooLargeError,
    GenerationError,
    InfeasibleTruncationError,
    InvariantError,
    MalformedInputError,
    ParseError,
    ValidationError,
)
from .generators import (
    MatroidSpec,
    gen_matroid_game,
    gen_random,
    gen_singleton,
    matroid_total_demand,
    random_convex_table,
)
from .oracle import verify_pne
from .serialize import (
    parse_instance,
    parse_profile,
    write_instance,
    write_profile,
    write_trace,
)
from .solver import SolverPolicy, compute_pne, iteration_bound

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_VIOLATIONS = 3
EXIT_INTERNAL = 4

_INVALID_ERRORS = (
    ParseError,
    ValidationError,
    MalformedInputError,
    InfeasibleTruncationError,
    CostTableRangeError,
    AdmissibilityError,
    EnumerationTooLargeError,
    GenerationError,
)
_INTERNAL_ERRORS = (InvariantError, ContractError)

_POLICY_NAMES = {
    "min_index": "min_index",
    "round_robin": "round_robin",
    "random": "seeded_random",
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit(2); we reserve 2
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="polynash", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="compute a pure Nash equilibrium")
    solve.add_argument("--instance", required=True, help="instance document to solve")
    solve.add_argument(
        "--policy",
        choices=sorted(_POLICY_NAMES),
        default="min_index",
        help="how to pick the next player to receive a demand unit",
    )
    solve.add_argument("--seed", type=int, default=None, help="seed for --policy random")
    solve.add_argument("--trace", help="also write the move trace to this path")
    solve.add_argument(
        "--verify",
        action="store_true",
        help="run the brute-force verifier on the output",
    )
    solve.add_argument(
        "--debug-assertions",
        action="store_true",
        help="enable the expensive internal precondition checks",
    )
    solve.add_argument("--output", required=True, help="where to write the profile")
    solve.set_defaults(func=_cmd_solve)

    verify = sub.add_parser("verify", help="check a profile against an instance")
    verify.add_argument("--instance", required=True)
    verify.add_argument("--profile", required=True)
    verify.set_defaults(func=_cmd_verify)

    gen = sub.add_parser("gen", help="generate an instance document")
    gen.add_argument(
        "--kind", choices=("singleton", "matroid", "random"), required=True
    )
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--output", required=True)
    gen.add_argument("--players", type=int, help="player count (kind random)")
    gen.add_argument("--resources", type=int, help="resource count (kind random)")
    gen.add_argument("--max-demand", type=int, help="per-player demand cap (kind random)")
    gen.add_argument(
        "--cost-family",
        choices=("convex_nondecreasing", "truncated_ssc", "nondecreasing"),
        default=None,
        help="table family; 'nondecreasing' is allowed for matroid games only",
    )
    gen.add_argument(
        "--resource-sets",
        help="kind singleton: per-player resource names, ';' between players, "
        "',' within (example: 'a;a,b')",
    )
    gen.add_argument(
        "--demands", help="kind singleton: comma-separated per-player demands"
    )
    gen.add_argument(
        "--matroids",
        help="kind matroid: JSON list of per-player specs, e.g. "
        '\'[{"kind":"uniform","rank":2},{"kind":"graphic","edges":[[0,1],[1,2],[2,0]]}]\'',
    )
    gen.add_argument(
        "--resource-names", help="comma-separated names; defaults to r0,r1,..."
    )
    gen.set_defaults(func=_cmd_gen)

    check = sub.add_parser("check", help="validate an instance document")
    check.add_argument("--instance", required=True)
    check.set_defaults(func=_cmd_check)

    bound = sub.add_parser(
        "bound", help="print the worst-case improvement-move bound for an instance"
    )
    bound.add_argument("--instance", required=True)
    bound.set_defaults(func=_cmd_bound)

    return parser


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None


def _cmd_solve(args) -> int:
    g = parse_instance(_read(args.instance))
    policy = SolverPolicy(
        player_selection=_POLICY_NAMES[args.policy],
        seed=args.seed,
        debug_assertions=args.debug_assertions,
    )
    profile, trace = compute_pne(g, policy)
    Path(args.output).write_bytes(write_profile(g, profile))
    if args.trace:
        Path(args.trace).write_bytes(write_trace(g, trace))
    moves = len(trace.improvement_moves())
    print(
        f"solved: {g.total_demand} insertions, {moves} improvement moves; "
        f"profile -> {args.output}"
    )
    if args.verify:
        report = verify_pne(g, profile)
        if not report.is_pne:
            for player, current, best, witness in report.violations:
                print(
                    f"solver output is not an equilibrium: player {player} pays "
                    f"{current}, could pay {best} via {witness}",
                    file=sys.stderr,
                )
            return EXIT_INTERNAL
        print("equilibrium verified")
    return EXIT_OK


def _cmd_verify(args) -> int:
    g = parse_instance(_read(args.instance))
    profile = parse_profile(_read(args.profile), g)
    report = verify_pne(g, profile)
    if report.is_pne:
        print("equilibrium: no player can improve")
        return EXIT_OK
    for player, current, best, witness in report.violations:
        print(
            f"player {player} pays {current}, could pay {best} via "
            f"{dict(zip(g.resources, witness))}"
        )
    return EXIT_VIOLATIONS


def _split_names(raw: str) -> list[str]:
    return [part for part in raw.split(",") if part]


def _cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    if args.kind == "random":
        if args.players is None or args.resources is None or args.max_demand is None:
            raise _UsageError("kind random needs --players, --resources, --max-demand")
        family = args.cost_family or "convex_nondecreasing"
        if family == "nondecreasing":
            raise _UsageError("cost family 'nondecreasing' is for matroid games only")
        g = gen_random(args.seed, args.players, args.resources, args.max_demand, family)
    elif args.kind == "singleton":
        if args.resource_sets is None or args.demands is None:
            raise _UsageError("kind singleton needs --resource-sets and --demands")
        demands = [int(part) for part in args.demands.split(",")]
        set_names = [_split_names(block) for block in args.resource_sets.split(";")]
        if len(set_names) != len(demands):
            raise _UsageError("one resource set per demand required")
        if args.resource_names:
            names = _split_names(args.resource_names)
        else:
            names = sorted({name for block in set_names for name in block})
        index = {name: r for r, name in enumerate(names)}
        for block in set_names:
            for name in block:
                if name not in index:
                    raise _UsageError(f"resource {name!r} missing from the name list")
        sets = [[index[name] for name in block] for block in set_names]
        total = sum(demands)
        costs = [
            [random_convex_table(rng, total + 1).values for _ in names]
            for _ in demands
        ]
        g = gen_singleton(sets, demands, costs, resource_names=names)
    else:
        if args.matroids is None:
            raise _UsageError("kind matroid needs --matroids")
        try:
            raw_specs = json.loads(args.matroids)
        except json.JSONDecodeError as exc:
            raise _UsageError(f"--matroids is not valid JSON: {exc}") from None
        if not isinstance(raw_specs, list) or not raw_specs:
            raise _UsageError("--matroids must be a non-empty JSON list")
        specs = [_matroid_spec(entry) for entry in raw_specs]
        if args.resources is not None:
            m = args.resources
        elif args.resource_names:
            m = len(_split_names(args.resource_names))
        else:
            graphic = [s for s in specs if s.kind == "graphic"]
            if not graphic:
                raise _UsageError(
                    "kind matroid needs --resources or --resource-names "
                    "unless a graphic spec fixes the count"
                )
            m = len(graphic[0].edges)
        names = (
            _split_names(args.resource_names)
            if args.resource_names
            else [f"r{k}" for k in range(m)]
        )
        family = args.cost_family or "nondecreasing"
        total = matroid_total_demand(specs, m)
        costs = []
        for _ in specs:
            row = []
            for _ in range(m):
                if family == "convex_nondecreasing":
                    row.append(random_convex_table(rng, total + 1).values)
                else:
                    values = [rng.randint(0, 3)]
                    for _ in range(total):
                        values.append(values[-1] + rng.randint(0, 3))
                    row.append(tuple(values))
            costs.append(row)
        g = gen_matroid_game(specs, costs, resource_names=names)
    Path(args.output).write_bytes(write_instance(g))
    print(
        f"generated {args.kind} instance: {g.n} players, {g.m} resources, "
        f"total demand {g.total_demand} -> {args.output}"
    )
    return EXIT_OK


def _matroid_spec(entry) -> MatroidSpec:
    if not isinstance(entry, dict) or "kind" not in entry:
        raise _UsageError("each matroid spec must be an object with a 'kind'")
    kind = entry["kind"]
    if kind == "uniform":
        return MatroidSpec.uniform(entry.get("rank", 1))
    if kind == "partition":
        return MatroidSpec.partition(entry.get("blocks", []), entry.get("caps", []))
    if kind == "graphic":
        return MatroidSpec.graphic(entry.get("edges", []))
    raise _UsageError(f"unknown matroid kind {kind!r}")


def _cmd_check(args) -> int:
    g = parse_instance(_read(args.instance))
    print(
        f"instance valid: {g.n} players, {g.m} resources, total demand "
        f"{g.total_demand}"
    )
    return EXIT_OK


def _cmd_bound(args) -> int:
    g = parse_instance(_read(args.instance))
    print(iteration_bound(g))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help exits 0 through argparse
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _INVALID_ERRORS as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except _INTERNAL_ERRORS as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
