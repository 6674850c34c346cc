"""Build a small game by hand, solve it, and audit the result.

Two players each place one indivisible unit on one of two resources. Prices
rise linearly with the load, so the players should spread out -- and the
solver's answer is checked against the brute-force oracle at the end.
"""

from polynash import (
    GameInstance,
    RankFunction,
    SolverPolicy,
    compute_pne,
    exhaustive_pne_search,
    private_cost,
    verify_pne,
)

# Each player's capacity table: one unit on a, one on b, one in total.
# Index = subset bitmask over (a, b); entry = how many units fit inside.
capacity = RankFunction((0, 1, 1, 1))

# Price per unit as a function of the resource's total load: 0, 1, 2.
linear = (0, 1, 2)

game = GameInstance(
    resources=("a", "b"),
    demands=(1, 1),
    ranks=(capacity, capacity),
    costs=((linear, linear), (linear, linear)),
)

profile, trace = compute_pne(game, SolverPolicy(debug_assertions=True))

print("strategies:", profile.strategies)
print("loads:     ", profile.loads(game.m))
for i in range(game.n):
    print(f"player {i} pays {private_cost(game, profile, i)}")

print("\ntrace:")
for event in trace.events:
    print(f"  outer {event.outer} inner {event.inner}: {event.kind}"
          + (f" player {event.player}" if event.player is not None else ""))

report = verify_pne(game, profile)
print("\nbrute-force verification:", "equilibrium" if report.is_pne else report.violations)

everyone = [p.strategies for p in exhaustive_pne_search(game)]
print("all equilibria of this game:", everyone)
