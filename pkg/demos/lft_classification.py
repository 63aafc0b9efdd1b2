"""Checking a four-family classification of double-number LFTs.

Run with ``python3 demos/lft_classification.py``.
"""

from splitlinalg.yaglom import (
    InversionSpec,
    classify,
    counterexample,
    demo,
    format_demo,
    inversion_matrix,
    proposed_family_covers,
    proposed_matrix,
)

print(format_demo(demo()))
print()

# Families overlap: a few members are matched by more than one kind.
for spec in (InversionSpec.first(1), InversionSpec.third(1), InversionSpec.fourth(-1)):
    v = classify(inversion_matrix(spec))
    print(f"{str(spec):<18} -> {v}  (all matches: {', '.join(v.kinds)})")

# The missing class: any [J_2(c), J_2(c)] with c != 2.
M = counterexample()
print(f"\n[J_2(1), J_2(1)]: {classify(M)}, covered by the replacement family: {proposed_family_covers(M)}")
for k in (0.5, 1, 3):
    print(f"  [[{k}, 1+j], [1-j, {k}]] has invariant {classify(proposed_matrix(k)).invariant.describe()}")
