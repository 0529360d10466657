import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torsion_kit.catalog import small_rings
from torsion_kit.families import module_family
from torsion_kit.modules import (
    annihilator_submodule,
    cyclic_module,
    direct_sum,
    enumerate_submodules,
    ideal_scale,
    quotient_module,
    regular_module,
    submodule_as_module,
)
from torsion_kit.rings import idempotent_ideals, is_idempotent, make_ring, power_stabilization_index
from torsion_kit.torsion import (
    chain_profile,
    colon,
    coreduction_index,
    gamma,
    gamma_bar,
    is_complete,
    is_coreduced,
    is_reduced,
    is_torsion,
    lambda_,
    locally_nilradical,
    reduction_index,
)

FAMS = {name: module_family(R, 32, 2) for name, R in small_rings(9).items()
        if R.is_principal_ideal_ring() and R.order <= 8}
CASES = [(name, M, I) for name, fam in FAMS.items() for M in fam for I in M.ring.ideals]


def elems_in(M, N):
    return {m for m in M.elements() if m in N}


def brute_gamma(M, I):
    """m with I^k m = 0 for some k, by iterating products of generators."""
    R = M.ring
    gens = [g for g in I.elements()]
    out = set()
    for m in M.elements():
        layer = {m}
        for _ in range(M.cardinality.bit_length() + 1):
            layer = {M.act(g, v) for g in gens for v in layer}
        # I^k m is the span of layer; it is zero iff every product vanishes
        if all(not any(v) for v in layer):
            out.add(m)
    return out


def brute_gamma_bar(M, I):
    out = set()
    for m in M.elements():
        ok = True
        for a in I.elements():
            v = m
            for _ in range(M.cardinality.bit_length() + 1):
                v = M.act(a, v)
            ok = ok and not any(v)
        if ok:
            out.add(m)
    return out


@pytest.mark.parametrize("name,M,I", CASES[::5])
def test_gamma_and_big_gamma_brute_force(name, M, I):
    assert elems_in(M, gamma(M, I)) == brute_gamma(M, I)
    assert elems_in(M, gamma_bar(M, I)) == brute_gamma_bar(M, I)


@pytest.mark.parametrize("name,M,I", CASES[::3])
def test_functor_laws(name, M, I):
    G = gamma(M, I)
    Gm, _ = submodule_as_module(G)
    assert gamma(Gm, I).is_full()  # idempotent
    Q, _ = quotient_module(M, G)
    assert gamma(Q, I).is_zero()
    bound = int(math.log2(M.cardinality)) + 1
    assert reduction_index(M, I) <= bound and coreduction_index(M, I) <= bound
    if is_reduced(M, I):
        assert G == annihilator_submodule(M, I)
    if is_coreduced(M, I):
        assert ideal_scale(M, I, ideal_scale(M, I)) == ideal_scale(M, I)
    L, proj = lambda_(M, I)
    p = chain_profile(M, I)
    assert L.cardinality * p.power_multiple(p.desc_stab_index).cardinality == M.cardinality
    assert is_torsion(M, I) == G.is_full()
    assert is_complete(M, I) == (L.cardinality == M.cardinality)


@pytest.mark.parametrize("name", sorted(FAMS))
def test_gamma_left_exact_on_submodules(name):
    # Gamma_I(N) = N intersected with Gamma_I(M)
    for M in FAMS[name][::3]:
        for I in M.ring.ideals:
            G = gamma(M, I)
            for N in enumerate_submodules(M):
                Nm, incl = submodule_as_module(N)
                assert incl.image(gamma(Nm, I)) == (N & G)


@pytest.mark.parametrize("name", sorted(FAMS))
def test_idempotent_ideal_gives_reduced_and_coreduced(name):
    for I in idempotent_ideals(FAMS[name][0].ring):
        for M in FAMS[name]:
            assert is_reduced(M, I) and is_coreduced(M, I)
            assert reduction_index(M, I) == 1


def test_chain_values_z8():
    R = make_ring("Z/8")
    M = regular_module(R)
    I = R.ideal(2)
    p = chain_profile(M, I)
    assert [A.cardinality for A in p.ascending] == [2, 4, 8, 8]
    assert [A.cardinality for A in p.descending] == [4, 2, 1, 1]
    assert p.annihilator(99).is_full() and p.power_multiple(99).is_zero()
    assert reduction_index(M, I) == 3 == power_stabilization_index(I)
    assert gamma(M, I).is_full() and is_complete(M, I)
    assert not is_reduced(M, I)


def test_colon():
    R = make_ring("Z/8")
    M = regular_module(R)
    N = M.submodule([[4]])
    assert colon(M, R.ideal(2), N) == M.submodule([[2]])


def test_locally_nilradical():
    R = make_ring("Z/8")
    M = regular_module(R)
    assert locally_nilradical(M, (2,)) == M.submodule([[2]])
    assert locally_nilradical(M, (1,)).is_zero()
    R2 = make_ring("F2 x F3")
    assert locally_nilradical(regular_module(R2), (1, 0)).is_zero()


def test_mixed_product_ring():
    R = make_ring("F2 x Z/4")
    I = R.ideal([0, 2])
    M = direct_sum(regular_module(R), cyclic_module(R.ideal([1, 0])))
    assert not is_idempotent(I)
    # I is zero on the F2 factor and nilpotent on Z/4, so everything is torsion
    assert gamma(M, I).is_full()
    assert annihilator_submodule(M, I).cardinality == 2 * 2 * 2
    assert gamma_bar(M, I) == gamma(M, I)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CASES))
def test_big_gamma_contains_gamma(case):
    _, M, I = case
    assert gamma(M, I) <= gamma_bar(M, I)
