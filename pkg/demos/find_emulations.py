"""Finding emulation witnesses two ways.

The naive decision procedure scans all encoding pairs for one candidate
rule; the subalgebra enumeration finds every two-element closed subset of
the supercell algebra at once, which yields all emulated rules in a single
pass.  Both certify their answers with an encoding that can be re-verified
independently on random configurations.
"""

from eca_emulation import (
    EmulationWitness,
    check_emulation_naive,
    compose_witnesses,
    emulated_rules,
    rule_from_wolfram,
    verify_witness,
)

R = rule_from_wolfram

# rule 137 is the dual of 110: inverting the state encoding witnesses it
enc = check_emulation_naive(R(110), R(137), 1)
print("110 inside 137 at size 1:", enc)

# rule 148 reproduces the traffic rule 184 on supercells of two cells
enc = check_emulation_naive(R(184), R(148), 2)
print("184 inside 148 at size 2:", enc)
witness = EmulationWitness(R(184), R(148), 2, enc)
print("  re-verified on 100 random words:",
      verify_witness(witness, 30, 5, samples=100, seed=1))

print("\neverything rule 148 emulates at size 2:")
for f, e in emulated_rules(R(148), 2):
    print(f"  rule {f.wolfram:3d}  enc0={e.enc0.text} enc1={e.enc1.text}")

# witnesses compose: 148 lives inside 41 at size 2, so 184 lives inside 41
via = check_emulation_naive(R(148), R(41), 2)
chained = compose_witnesses(witness, EmulationWitness(R(148), R(41), 2, via))
print(f"\ncomposed: rule {chained.emulated.wolfram} inside rule "
      f"{chained.emulator.wolfram} at size {chained.k}, "
      f"enc0={chained.encoding.enc0.text} enc1={chained.encoding.enc1.text}")
print("  composed witness verifies:", verify_witness(chained, 30, 3, samples=50))

print("\nrule 30 emulates nothing at size 2:",
      emulated_rules(R(30), 2))
