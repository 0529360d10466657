"""Contraction on Q[X] truncated at degree D: annihilators of powers of an ideal."""
from torsion_kit.apolarity import PolyIdeal, check_apolarity_layers, reducedness_profile

J = PolyIdeal.monomial((2,))
prof = reducedness_profile(5, 1, J, 3)
print(f"J = {J}, D = 5")
for k, (d, basis) in enumerate(zip(prof.dims, prof.bases), 1):
    print(f"  (0 : J^{k}) has dimension {d}: {', '.join(basis)}")
print("  reduced:", prof.reduced, " witness:", prof.witness, " powers past D:", prof.exceeds_truncation)

rep = check_apolarity_layers(5, 1, J, 1)
d = rep.details
print(f"  layer identity: {d['quotient_annihilator_dim']} = {d['high_dim']} - {d['low_dim']}  ({rep.verdict})")

J2 = PolyIdeal.monomial((2, 0), (1, 1))
prof2 = reducedness_profile(4, 2, J2, 2)
print(f"\nJ = {J2} in two variables, D = 4: dims {prof2.dims}, witness {prof2.witness}")
