"""Two classic families as instances of the same model.

Free-split games give each player a private subset of resources over which
an integer demand may be split arbitrarily. Matroid games let each player
pick a basis of a player-specific matroid; their chains all have unit
capacity, so merely nondecreasing (not convex) prices already behave.
Both solve through the same insertion loop and verify exactly.
"""

import random

from polynash import (
    MatroidSpec,
    SolverPolicy,
    compute_pne,
    gen_matroid_game,
    gen_singleton,
    private_cost,
    verify_pne,
)
from polynash.generators import matroid_total_demand, random_convex_table

rng = random.Random(7)

# --- free-split: player 0 may only use a; player 1 may use a or b ----------
demands = [2, 1]
sets = [[0], [0, 1]]
total = sum(demands)
costs = [
    [random_convex_table(rng, total + 1).values for _ in range(2)]
    for _ in range(2)
]
g = gen_singleton(sets, demands, costs, resource_names=("a", "b"))
print("free-split rank tables:")
for i in range(g.n):
    print(f"  player {i}: {g.ranks[i].values}")
profile, _ = compute_pne(g, SolverPolicy(debug_assertions=True))
print("equilibrium:", profile.strategies)
print("verified:", verify_pne(g, profile).is_pne)

# --- matroid: spanning trees of a triangle vs. any two of three resources --
specs = [
    MatroidSpec.graphic([(0, 1), (1, 2), (2, 0)]),  # pick a spanning tree
    MatroidSpec.uniform(2),  # pick any two resources
]
total = matroid_total_demand(specs, 3)
bumpy_costs = []
for _ in specs:
    row = []
    for _ in range(3):
        values = [rng.randint(0, 2)]
        for _ in range(total):
            values.append(values[-1] + rng.randint(0, 3))  # nondecreasing only
        row.append(tuple(values))
    bumpy_costs.append(row)
gm = gen_matroid_game(specs, bumpy_costs)
print("\nmatroid game demands (= full ranks):", gm.demands)
print("single-resource capacities:",
      [[gm.ranks[i].singleton(r) for r in range(3)] for i in range(2)])
profile, trace = compute_pne(gm, SolverPolicy(debug_assertions=True))
print("equilibrium:", profile.strategies)
for i in range(gm.n):
    print(f"  player {i} pays {private_cost(gm, profile, i)}")
print("improvement moves during the solve:", len(trace.improvement_moves()))
print("verified:", verify_pne(gm, profile).is_pne)
