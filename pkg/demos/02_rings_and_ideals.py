"""Finite rings, their ideal lattices, powers and radicals."""
from torsion_kit.catalog import small_rings
from torsion_kit.rings import (
    idempotent_ideals,
    ideal_power,
    ideal_radical,
    make_ring,
    power_stabilization_index,
)

for text in ("Z/8", "F2 x F3", "F2[x]/(x^3)", "F4"):
    R = make_ring(text)
    print(f"{text}: order {R.order}, ideals {[J.label for J in R.ideals]}")
    print("   idempotent:", [J.label for J in idempotent_ideals(R)])

R = make_ring("Z/8")
I = R.ideal(2)
s = power_stabilization_index(I)
print(f"\nI = {I.label} in Z/8: powers", [ideal_power(I, k).label for k in range(1, s + 2)],
      f"stabilize at {s}")
print("radical of (4):", ideal_radical(R.ideal(4)).label)

print("\nsmall ring catalog (order <= 9):")
for name, S in small_rings(9).items():
    kind = "PIR" if S.is_principal_ideal_ring() else "not principal"
    print(f"  {name:<20} order {S.order}  {len(S.ideals)} ideals  {kind}")
