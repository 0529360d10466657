"""Finite modules, submodule lattices, Hom, and exhaustive module families."""
from torsion_kit.catalog import complete_extras, small_rings
from torsion_kit.families import module_family
from torsion_kit.modules import (
    cyclic_module,
    direct_sum,
    enumerate_submodules,
    hom_module,
    is_indecomposable,
    regular_module,
)
from torsion_kit.rings import make_ring

R = make_ring("Z/8")
M = regular_module(R)
print("submodules of Z/8:", sorted(N.cardinality for N in enumerate_submodules(M)))

A = direct_sum(cyclic_module(R.ideal(2)), cyclic_module(R.ideal(4)))
print(f"{A.label}: order {A.cardinality}, invariants {A.abelian_invariants()}")
H, _ = hom_module(A, M)
print("|Hom(Z/2 + Z/4, Z/8)| =", H.cardinality)

fam = module_family(R, 64, max_summands=2)
print(f"\nZ/8-modules of order <= 64 with at most two cyclic summands: {len(fam)}")
print("  ", ", ".join(N.label for N in fam[:8]), "...")

# over a ring that is not principal, cyclic sums are not enough
S = small_rings()["F2[x,y]/(x,y)^2"]
full = module_family(S, 32, extra=complete_extras(S, 32))
ind = [N for N in full if is_indecomposable(N)]
print(f"\n{S.description['name']}: {len(full)} modules of order <= 32, "
      f"{len(ind)} indecomposable, orders {sorted(N.cardinality for N in ind)}")
