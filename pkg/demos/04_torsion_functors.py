"""Gamma_I, big Gamma_I and Lambda_I, with the reducedness predicates."""
from torsion_kit.families import module_family
from torsion_kit.modules import annihilator_submodule
from torsion_kit.rings import make_ring
from torsion_kit.torsion import (
    chain_profile,
    gamma,
    gamma_bar,
    is_coreduced,
    is_reduced,
    lambda_,
)

R = make_ring("Z/8")
I = R.ideal(2)
print(f"R = Z/8, I = {I.label}")
print(f"{'module':<14}{'|Gamma|':>8}{'|bigG|':>8}{'|Lambda|':>9}{'|0:I|':>7}  reduced coreduced  chains")
for M in module_family(R, 32, 2):
    p = chain_profile(M, I)
    L, _ = lambda_(M, I)
    print(f"{M.label:<14}{gamma(M, I).cardinality:>8}{gamma_bar(M, I).cardinality:>8}"
          f"{L.cardinality:>9}{annihilator_submodule(M, I).cardinality:>7}  "
          f"{str(is_reduced(M, I)):<8}{str(is_coreduced(M, I)):<10}"
          f"{[A.cardinality for A in p.ascending]}")

S = make_ring("F2 x F3")
e = S.ideal([1, 0])
print("\nover F2 x F3 with e = (1,0) every module is reduced and coreduced:")
print(all(is_reduced(M, e) and is_coreduced(M, e) for M in module_family(S, 36)))
