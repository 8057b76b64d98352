#!/usr/bin/env python3
"""Final-term surgery and the boundary repair loop, on A5 and in the abstract.

The non-boundary chain orbits pair up by deleting or appending a defect
group as final term; a canonical bijection between the signed pair families
is then repaired so that the trivial-chain pairs land exactly on the
defect-group-chain pairs.  The same repair loop runs on plain finite sets.
"""

from pblocks.blocks import p_blocks
from pblocks.chartable import character_table
from pblocks.conjectures import pairing_with_repair, repair_bijection
from pblocks.library import library_group

G = library_group("A5")
B = p_blocks(character_table(G), 2)[0]
report, witness = pairing_with_repair(G, B)
print("final-term surgery on A5, principal 2-block:")
for (ci, cj, n, m) in witness.chain_pairs:
    print(f"  plus chain orbit {ci} <-> minus chain orbit {cj}  "
          f"({n} = {m} eligible characters)")
print(f"repair swaps performed: {len(witness.swap_log)}")
for entry in witness.swap_log:
    print(f"  chased {entry['start']} -> {entry['end']} "
          f"in {len(entry['chase']) - 1} step(s)")

print("\nabstract repair example:")
x_plus = ["a0", "a1"]
x_minus = ["b1", "b2"]
omega = {"a0": "b2", "a1": "b1"}   # crosses the boundary the wrong way
pi = {"a1": "b2"}                  # pairing of the complements
result = repair_bijection(x_plus, {"a0"}, x_minus, {"b1"}, omega, pi)
print(f"  omega  = {omega}")
print(f"  omega' = {result.mapping}")
print(f"  chase  = {result.swap_log[0]['chase']}")
