#!/usr/bin/env python3
"""Scan the whole built-in corpus: every counting check at every prime.

Prints one line per (group, prime) with the verdict tallies.  Runs in well
under a minute.
"""

from pblocks.blocks import p_blocks
from pblocks.chartable import character_table
from pblocks.conjectures import (
    verify_am_count,
    verify_blockfree,
    verify_max_defect,
)
from pblocks.library import acceptance_corpus, library_group


def primes_of(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


grand = {"pass": 0, "fail": 0, "not-applicable": 0}
for name in acceptance_corpus():
    G = library_group(name)
    table = character_table(G)
    for p in primes_of(G.order):
        reports = []
        reports += verify_max_defect(G, p)
        for B in p_blocks(table, p):
            reports.append(verify_am_count(G, B))
        if p in (2, 3, 5):
            reports.append(verify_blockfree(G, p))
        tally = {"pass": 0, "fail": 0, "not-applicable": 0}
        for r in reports:
            tally[r.verdict] += 1
            grand[r.verdict] += 1
        print(f"{name:>10} @ {p}: {tally['pass']:3d} pass, "
              f"{tally['not-applicable']:2d} n/a, {tally['fail']} fail")

print(f"\ntotal: {grand['pass']} pass, {grand['not-applicable']} n/a, "
      f"{grand['fail']} fail")
assert grand["fail"] == 0
