"""Documents and the command line, end to end.

Generates an instance document, validates it, prints the worst-case move
bound, solves with a trace, verifies the profile, and replays the trace
with the independent checker. Everything runs through the same entry point
the `polynash` console script uses.
"""

import json
import tempfile
from pathlib import Path

from polynash import check_trace, parse_instance
from polynash.cli import main

workdir = Path(tempfile.mkdtemp(prefix="polynash-demo-"))
instance = workdir / "instance.json"
profile = workdir / "profile.json"
trace = workdir / "trace.jsonl"

steps = [
    ["gen", "--kind", "random", "--players", "3", "--resources", "2",
     "--max-demand", "3", "--seed", "20", "--output", str(instance)],
    ["check", "--instance", str(instance)],
    ["bound", "--instance", str(instance)],
    ["solve", "--instance", str(instance), "--output", str(profile),
     "--trace", str(trace), "--verify", "--debug-assertions"],
    ["verify", "--instance", str(instance), "--profile", str(profile)],
]
for argv in steps:
    print(f"\n$ polynash {' '.join(argv)}")
    code = main(argv)
    print(f"(exit {code})")
    assert code == 0

g = parse_instance(instance.read_bytes())
print("\nparsed back:", g.n, "players over", g.resources)

doc = json.loads(profile.read_text())
print("profile document loads:", doc["loads"])

insertions, moves = check_trace(trace.read_bytes())
print(f"trace replay: {insertions} insertions, {moves} improvement moves, "
      "all marginal decreases confirmed")

print("\nfiles written to", workdir)
