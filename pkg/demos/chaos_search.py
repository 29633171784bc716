"""Probing rules for computational chaos.

A rule that cannot emulate any multi-state automaton non-trivially has no
proper subalgebra with two or more elements in any of its supercell
algebras.  The search below first looks for two-element closed pairs, then
closes every singleton, then every pair of fixed points; rules 30 and 45
(with their mirrored forms 86 and 89) come out empty at every size tried,
while ordered and linear rules give up a subalgebra immediately.
"""

import time

from eca_emulation import proper_subalgebra_search, rule_from_wolfram

KMAX = 7

for n in (30, 45, 86, 89):
    rule = rule_from_wolfram(n)
    t0 = time.perf_counter()
    found = {k: proper_subalgebra_search(rule, k) for k in range(2, KMAX + 1)}
    dt = time.perf_counter() - t0
    assert all(s is None for s in found.values())
    print(f"rule {n:3d}: no proper multi-element subalgebra for sizes 2..{KMAX} "
          f"({dt:.2f} s)")

print()
for n in (204, 90, 184, 110):
    rule = rule_from_wolfram(n)
    for k in range(2, KMAX + 1):
        sub = proper_subalgebra_search(rule, k)
        if sub is not None:
            elems = sorted(w.text for w in sub.elements)
            print(f"rule {n:3d}: size-{k} subalgebra {{{', '.join(elems)}}}")
            break
    else:
        print(f"rule {n:3d}: nothing up to size {KMAX}")
