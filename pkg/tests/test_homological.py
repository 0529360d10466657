import pytest

from torsion_kit.families import module_family
from torsion_kit.homological import (
    ChainComplex,
    NotComputed,
    check_idempotent_weakly_proregular,
    check_local_cohomology_hom,
    check_spectral_vnr,
    ext,
    free_resolution,
    hom_complex,
    koszul_cohomology,
    koszul_complex,
    koszul_tower_map,
    local_cohomology,
    local_cohomology_zero,
    local_homology,
    local_homology_zero,
    ring_entries,
    stable_quotient,
    tensor_complex,
    tor,
    weak_proregularity_check,
)
from torsion_kit.modules import cyclic_module, hom_module, quotient_module, regular_module, ideal_scale
from torsion_kit.report import PASS, UNDETERMINED
from torsion_kit.rings import RingError, make_ring
from torsion_kit.torsion import chain_profile, gamma


def test_resolution_of_residue_field_over_z4():
    R = make_ring("Z/4")
    k = cyclic_module(R.ideal(2))
    F = free_resolution(k, 3)
    assert F.ranks == (1, 1, 1, 1)
    C = F.complex()
    for d in C.maps:
        assert ring_entries(d, 1, 1) == (((2,),),)
    for q in range(4):
        assert ext(q, k, k).cardinality == 2
        assert tor(q, k, k).cardinality == 2


def test_free_module_has_no_higher_ext():
    R = make_ring("Z/8")
    M = regular_module(R)
    for N in module_family(R, 16, 2):
        assert ext(1, M, N).is_zero() and tor(1, M, N).is_zero()
        assert ext(0, M, N).cardinality == N.cardinality


@pytest.mark.parametrize("ring", ["Z/4", "Z/8", "F2[x]/(x^2)", "F2 x Z/4", "Z/6"])
def test_ext_zero_is_hom_and_tor_zero_is_tensor(ring):
    R = make_ring(ring)
    fam = module_family(R, 16, 2)
    for A in fam:
        for M in fam:
            assert ext(0, A, M, length=1).cardinality == hom_module(A, M)[0].cardinality
        for I in R.ideals:
            RI = cyclic_module(I)
            Q, _ = quotient_module(A, ideal_scale(A, I))
            assert tor(0, RI, A, length=1).cardinality == Q.cardinality


@pytest.mark.parametrize("ring", ["Z/8", "F2[x]/(x^3)", "F2 x Z/4"])
def test_independent_of_generator_order(ring):
    R = make_ring(ring)
    fam = module_family(R, 16, 2)
    for A in fam[:6]:
        for M in fam[:6]:
            for q in (1, 2):
                assert ext(q, A, M, 2).cardinality == ext(q, A, M, 2, reverse=True).cardinality
                assert tor(q, A, M, 2).cardinality == tor(q, A, M, 2, reverse=True).cardinality


def test_complexes_are_complexes():
    R = make_ring("F2[x]/(x^3)")
    for A in module_family(R, 8, 2):
        F = free_resolution(A, 3)
        M = cyclic_module(R.ideal(R.basis_element(1)))
        for C in (F.complex(), hom_complex(F, M), tensor_complex(F, M)):
            for f, g in zip(C.maps, C.maps[1:]):
                comp = g.compose(f) if C.cohomological else f.compose(g)
                assert comp.is_zero()


def test_chain_complex_rejects_bad_input():
    R = make_ring("Z/4")
    M = regular_module(R)
    two = M.submodule([[2]])
    from torsion_kit.modules import ModuleMap

    d = ModuleMap(M, M, ((2,),))
    with pytest.raises(ValueError):
        ChainComplex(R, (M, M), ())
    with pytest.raises(ValueError):
        ChainComplex(R, (M, M, M), (ModuleMap(M, M, ((1,),)), ModuleMap(M, M, ((1,),))))
    C = ChainComplex(R, (M, M, M), (d, d))
    assert C.homology(1)[0].cardinality == 1
    assert C.cycles(1) == two == C.boundaries(1)
    assert C.homology(7)[0].is_zero()


def test_degree_bounds():
    R = make_ring("Z/4")
    k = cyclic_module(R.ideal(2))
    with pytest.raises(NotComputed):
        ext(5, k, k, length=4)
    with pytest.raises(NotComputed):
        tor(3, k, k, length=2)
    with pytest.raises(ValueError):
        ext(-1, k, k)
    with pytest.raises(ValueError):
        free_resolution(k, -1)


@pytest.mark.parametrize("ring", ["Z/8", "F2 x F2", "F2[x]/(x^2)", "Z/6"])
def test_degree_zero_local_cohomology_and_homology(ring):
    R = make_ring(ring)
    for M in module_family(R, 16, 2):
        for I in R.ideals:
            H, ev = local_cohomology_zero(I, M)
            assert ev.is_injective() and ev.image() == gamma(M, I)
            L, pi = local_homology_zero(I, M)
            p = chain_profile(M, I)
            assert pi.is_surjective() and pi.kernel() == p.power_multiple(p.desc_stab_index)
            assert local_cohomology(0, I, M).cardinality == H.cardinality
            assert local_homology(0, I, M).cardinality == L.cardinality


def test_stable_quotient():
    R = make_ring("Z/8")
    assert stable_quotient(R.ideal(2)).cardinality == 8
    assert stable_quotient(R.ideal(0)).cardinality == 8
    assert stable_quotient(R.ideal(1)).is_zero()


def test_nilpotent_ideal_has_no_higher_local_cohomology():
    R = make_ring("Z/4")
    k = cyclic_module(R.ideal(2))
    # (2) is nilpotent in Z/4, so the stable quotient is R itself and everything is free
    assert local_cohomology(1, R.ideal(2), k).is_zero()
    assert local_cohomology(1, R.ideal(0), k).is_zero()


def test_koszul_single_element():
    R = make_ring("Z/8")
    K = koszul_complex(R, [(2,)])
    assert K.lo == -1 and K.ranks == (1, 1)
    assert koszul_cohomology(R, [(2,)], -1).cardinality == 2
    assert koszul_cohomology(R, [(2,)], 0).cardinality == 2
    with pytest.raises(ValueError):
        koszul_cohomology(R, [(2,)], -2)
    with pytest.raises(ValueError):
        koszul_tower_map(R, [(2,)], 3, 1, -1)


def test_koszul_two_elements_is_a_complex():
    R = make_ring("Z/4 x Z/4")
    r = [(2, 0), (0, 2)]
    K = koszul_complex(R, r)
    assert K.ranks == (1, 2, 1)
    assert koszul_cohomology(R, r, -2).cardinality == 4


def test_offsets_z8():
    R = make_ring("Z/8")
    v = weak_proregularity_check(R, [(2,)], degree_bound=3, offset_bound=8)
    assert v.verdict == PASS
    assert all(j == i + 3 for (p, i), j in v.offsets.items())
    short = weak_proregularity_check(R, [(2,)], degree_bound=2, offset_bound=2)
    assert short.verdict == UNDETERMINED
    assert short.to_dict()["offsets"][0]["j"] is None


def test_idempotent_weakly_proregular():
    R = make_ring("F2 x Z/4")
    e = R.ideal([1, 0])
    rep = check_idempotent_weakly_proregular(e)
    assert rep.verdict == PASS
    with pytest.raises(RingError):
        check_idempotent_weakly_proregular(R.ideal([0, 2]))


def test_spectral_vnr_small():
    R = make_ring("F2 x F3")
    for M in module_family(R, 12):
        for I in R.ideals:
            rep = check_spectral_vnr(I, M, qmax=2)
            assert rep.passed, rep.witnesses
    with pytest.raises(RingError):
        check_spectral_vnr(make_ring("Z/4").ideal(2), regular_module(make_ring("Z/4")))


def test_local_cohomology_hom():
    R = make_ring("F2 x Z/4")
    I = R.ideal([1, 0])
    for M in module_family(R, 16, 2):
        assert check_local_cohomology_hom(I, M, qmax=2).passed
    R4 = make_ring("Z/4")
    rep = check_local_cohomology_hom(R4.ideal(2), regular_module(R4))
    assert rep.verdict == UNDETERMINED
    rep = check_local_cohomology_hom(I, regular_module(R), qmax=6, length=3)
    assert rep.verdict == UNDETERMINED and rep.details["not_computed_from"] == 4
