"""Best responses as minimum-weight ideals: greedy, extension, and repair.

Against fixed opponent loads, a player's bill equals the total weight of the
chain slots they occupy, where slot t on a resource is priced at the bill
increase of going from t-1 to t own units there. This script prices a small
ground set, builds optima greedily, then shows the two sensitivity moves:
one added slot when the demand grows, one swapped slot when an opponent
lands on a resource the player uses.
"""

from polynash import (
    GameInstance,
    RankFunction,
    WeightedGround,
    enumerate_base,
    extend_best_response,
    induced_weights,
    local_improvement,
    ordered_greedy,
    repair_best_response,
)

f = RankFunction((0, 2, 1, 2))  # a holds 2, b holds 1, both hold 2
w = WeightedGround(((1, 5), (2,)))  # slot prices: a1=1, a2=5, b1=2

print("exhaustive weights at demand 2:")
for x in enumerate_base(f, 2):
    print(f"  {x}: {w.ideal_weight(x)}")

best = ordered_greedy(f, 2, w)
print("greedy optimum:", best, "weight", w.ideal_weight(best))

print("\ngrowing the demand one unit at a time:")
x = (0, 0)
for d in (1, 2):
    x = extend_best_response(f, w, x)
    print(f"  demand {d}: {x} (weight {w.ideal_weight(x)})")

print("\na deliberately bad ideal and its best single exchange:")
swap = local_improvement(f, (2, 0), w)
print(f"  (2, 0): move slot {swap.remove} -> {swap.add}, saving {swap.improvement}")

# Now the game-induced version: resource a prices like a square, resource b
# linearly. One opponent unit landing on a should push our player off it.
free = RankFunction((0, 2, 2, 2))
squares = (0, 1, 4, 9)
linear = (0, 1, 2, 3)
g = GameInstance(
    ("a", "b"),
    (2, 1),
    (free, free),
    ((squares, linear), (squares, linear)),
)
before = induced_weights(g, 0, (0, 0))
after = induced_weights(g, 0, (1, 0))  # one opponent unit landed on a
print("\nslot prices before the arrival:", before.weights)
print("slot prices after the arrival: ", after.weights)

mine = ordered_greedy(free, 2, before)
repaired, move = repair_best_response(free, mine, 0, before, after)
print(f"my optimum before: {mine} (weight {before.ideal_weight(mine)})")
if move is None:
    print(f"still optimal after: {repaired} (weight {after.ideal_weight(repaired)})")
else:
    print(
        f"repaired by one swap {move.remove} -> {move.add}: {repaired} "
        f"(weight {after.ideal_weight(repaired)}, saved {move.improvement})"
    )
