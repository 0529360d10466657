"""The equivalence checks on exhaustive families, including a failing one with its witness."""
from torsion_kit.families import module_family
from torsion_kit.harness import (
    check_hom_radical,
    check_radical_equivalence,
    check_splitting,
    check_ttf,
)
from torsion_kit.modules import annihilator_submodule, regular_module
from torsion_kit.rings import is_idempotent, make_ring

for text in ("Z/4", "F2 x F2", "F2[x]/(x^2)"):
    R = make_ring(text)
    fam = module_family(R, 64, 2)
    for I in R.ideals:
        rep = check_radical_equivalence(fam, I)
        vals = set(rep.details["conditions"].values())
        print(f"{text:<12} I = {I.label:<8} idempotent={str(is_idempotent(I)):<6} "
              f"conditions={vals}  verdict={rep.verdict}")

# Z/4 is not (2)-reduced: the witness is a coset killed by I that is not zero
R = make_ring("Z/4")
I = R.ideal(2)
M = regular_module(R)
rep = check_hom_radical(M, I)
m = rep.witnesses[0]["coset_representative"]
A = annihilator_submodule(M, I)
print(f"\nhom_radical on Z/4: {rep.verdict}; witness m = {m}, m in (0:I)? {tuple(m) in A}, "
      f"2m in (0:I)? {M.act(R.element(2), m) in A}")

S = make_ring("F2 x F3")
e = S.ideal([1, 0])
print("\nTTF on F2 x F3:", check_ttf(module_family(S, 16), e).verdict)
sp = check_splitting(regular_module(S), e)
print("splitting of R: torsion", sp.details["torsion"].cardinality,
      "complement", sp.details["complement"].cardinality)
