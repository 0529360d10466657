"""Free resolutions, Ext and Tor, local (co)homology and Koszul towers."""
from torsion_kit.homological import (
    ext,
    free_resolution,
    local_cohomology_zero,
    tor,
    weak_proregularity_check,
)
from torsion_kit.modules import cyclic_module, regular_module
from torsion_kit.rings import make_ring
from torsion_kit.torsion import gamma

R = make_ring("Z/4")
k = cyclic_module(R.ideal(2))
F = free_resolution(k, 4)
print("resolution of Z/2 over Z/4, ranks:", F.ranks)
print("|Ext^q(Z/2, Z/2)|:", [ext(q, k, k).cardinality for q in range(4)])
print("|Tor_q(Z/2, Z/2)|:", [tor(q, k, k).cardinality for q in range(4)])

S = make_ring("F2 x F3")
A = cyclic_module(S.ideal([1, 0]))
print("\nover F2 x F3 everything is projective:",
      [ext(q, A, regular_module(S)).cardinality for q in range(1, 4)])

R8 = make_ring("Z/8")
M = regular_module(R8)
I = R8.ideal(2)
H, ev = local_cohomology_zero(I, M)
print("\nH^0_I(Z/8) has order", H.cardinality, "and maps onto Gamma_I:", ev.image() == gamma(M, I))

v = weak_proregularity_check(R8, [(2,)], degree_bound=4)
print("Koszul tower for 2 in Z/8:", v.verdict,
      {f"i={i}": j for (p, i), j in sorted(v.offsets.items())})
