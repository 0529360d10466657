import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torsion_kit.catalog import complete_extras, small_rings
from torsion_kit.families import ModuleFamily, all_maps, module_family, sample_maps
from torsion_kit.linalg import howell_form
from torsion_kit.modules import (
    BoundExceeded,
    FinModule,
    ModuleError,
    ModuleMap,
    annihilator_submodule,
    cyclic_module,
    direct_sum,
    element_annihilator,
    enumerate_submodules,
    free_module,
    hom_module,
    ideal_scale,
    is_indecomposable,
    is_isomorphic,
    module_from_dict,
    module_to_dict,
    quotient_module,
    regular_module,
    submodule_as_module,
    zero_module,
)
from torsion_kit.rings import make_ring
from torsion_kit.harness import check_explicit_iso

SMALL = {name: module_family(R, 16, 2) for name, R in small_rings(8).items()
         if R.is_principal_ideal_ring()}
CASES = [(name, M) for name, fam in SMALL.items() for M in fam]


def brute_submodule_elements(M, gens):
    R = M.ring
    S = {M.zero()}
    frontier = [M.act(r, g) for g in gens for r in R.elements()]
    while frontier:
        nxt = [v for v in frontier if v not in S]
        S.update(nxt)
        frontier = [M.add(a, b) for a in nxt for b in list(S)]
    return S


def brute_submodules(M):
    elems = list(M.elements())
    subs = {frozenset(brute_submodule_elements(M, [x])) for x in elems}
    changed = True
    while changed:
        changed = False
        for a, b in itertools.product(list(subs), repeat=2):
            s = frozenset(M.add(x, y) for x in a for y in b)
            if s not in subs:
                subs.add(s)
                changed = True
    return subs


def test_regular_and_cyclic():
    R = make_ring("Z/8")
    assert regular_module(R).cardinality == 8
    C = cyclic_module(R.ideal(2))
    assert C.cardinality == 2 and C.label == "R/(2)"
    assert free_module(R, 2).cardinality == 64
    assert zero_module(R).is_zero()


@pytest.mark.parametrize("name,M", CASES[::3])
def test_annihilator_and_scale_brute_force(name, M):
    R = M.ring
    E = list(M.elements())
    for J in R.ideals:
        ann = {m for m in E if all(not any(M.act(j, m)) for j in J.elements())}
        assert set(annihilator_submodule(M, J).basis.elements()) >= ann
        assert {m for m in E if m in annihilator_submodule(M, J)} == ann
        scaled = brute_submodule_elements(M, [M.act(j, m) for j in J.group_generators() for m in E])
        assert {m for m in E if m in ideal_scale(M, J)} == scaled


@pytest.mark.parametrize("name,M", [c for c in CASES if c[1].cardinality <= 16][::2])
def test_enumerate_submodules_brute_force(name, M):
    subs = enumerate_submodules(M)
    assert len(subs) == len(set(subs))
    got = {frozenset(m for m in M.elements() if m in N) for N in subs}
    assert got == brute_submodules(M)


def test_enumerate_bound():
    R = make_ring("Z/4")
    with pytest.raises(BoundExceeded):
        enumerate_submodules(free_module(R, 3), bound=32)


@pytest.mark.parametrize("name,M", CASES[::4])
def test_quotient_cardinality_multiplicative(name, M):
    for N in enumerate_submodules(M):
        Q, proj = quotient_module(M, N)
        assert M.cardinality == N.cardinality * Q.cardinality
        assert proj.is_surjective()
        assert proj.kernel() == N


def test_quotient_by_non_submodule_rejected():
    R = make_ring("F2 x F2")
    M = regular_module(R)
    from torsion_kit.modules import Submodule

    N = Submodule(M, howell_form([[1, 1]], 2, 2))
    with pytest.raises(ModuleError):
        N.check_closed()


def brute_hom_count(M, N):
    """Count R-linear maps by brute force over images of the coordinate generators."""
    R = M.ring
    gens = [tuple(int(i == j) for j in range(M.ncoords)) for i in range(M.ncoords)]
    count = 0
    for imgs in itertools.product(list(N.elements()), repeat=len(gens)):
        try:
            ModuleMap(M, N, tuple(imgs))
        except ModuleError:
            continue
        count += 1
    return count


@pytest.mark.parametrize("ring", ["Z/4", "Z/6", "F2 x F2", "F2[x]/(x^2)"])
def test_hom_module_brute_force(ring):
    R = make_ring(ring)
    fam = [M for M in module_family(R, 8, 2) if M.cardinality <= 8]
    for M, N in itertools.product(fam, repeat=2):
        if M.cardinality ** 1 * N.cardinality ** M.ncoords > 5000:
            continue
        H, emb = hom_module(M, N)
        assert H.cardinality == brute_hom_count(M, N)
        assert len({tuple(emb.to_map(y).matrix) for y in H.elements()}) <= H.cardinality


@pytest.mark.parametrize("name,M", CASES[::3])
def test_hom_from_cyclic_is_annihilator(name, M):
    R = M.ring
    for I in R.ideals:
        RI = cyclic_module(I)
        H, emb = hom_module(RI, M)
        A = annihilator_submodule(M, I)
        assert H.cardinality == A.cardinality
        ev = emb.evaluation(RI.canonical(R.unit))
        assert ev.is_injective() and ev.image() == A


def test_direct_sum_and_summands():
    R = make_ring("Z/6")
    A, B = cyclic_module(R.ideal(2)), cyclic_module(R.ideal(3))
    S = direct_sum(A, B)
    assert S.cardinality == 6
    assert is_isomorphic(S, regular_module(R))


def test_submodule_as_module_and_annihilator():
    R = make_ring("Z/8")
    M = regular_module(R)
    N = M.submodule([[2]])
    Nm, incl = submodule_as_module(N)
    assert Nm.cardinality == 4
    assert incl.image() == N and incl.is_injective()
    assert element_annihilator(M, (4,)) == R.ideal(2)


def test_module_validation():
    R = make_ring("Z/4")
    with pytest.raises(ModuleError):
        # x -> 2x is fine but the unit must act as the identity
        FinModule(R, 1, howell_form([], 4, 1), (((2,),),))
    with pytest.raises(ModuleError):
        ModuleMap(cyclic_module(R.ideal(2)), regular_module(R), ((1,),))


def test_dict_round_trip():
    R = make_ring("F2 x Z/4")
    M = direct_sum(cyclic_module(R.ideal([0, 2])), regular_module(R))
    d = module_to_dict(M)
    M2 = module_from_dict(d, R)
    assert M2.cardinality == M.cardinality
    assert M2.relations == M.relations and M2.actions == M.actions


def test_explicit_iso():
    R = make_ring("Z/6")
    A = direct_sum(cyclic_module(R.ideal(2)), cyclic_module(R.ideal(3)))
    M = regular_module(R)
    # 1 -> (1, 1)
    f = ModuleMap(M, A, ((1, 1),))
    assert check_explicit_iso(f).passed
    g = ModuleMap(M, A, ((1, 0),))
    rep = check_explicit_iso(g)
    assert not rep.passed and rep.witnesses


@pytest.mark.parametrize("name", ["F2[x,y]/(x,y)^2", "Z/4[x]/(2x,x^2)"])
def test_non_principal_families(name):
    R = small_rings()[name]
    fam = module_family(R, 32, extra=complete_extras(R, 32))
    ind = [M for M in fam if is_indecomposable(M)]
    # Kronecker count: one simple, three of length 2, two of length 3, four of length 4, two of length 5
    assert sorted(M.cardinality for M in ind) == [2, 4, 4, 4, 8, 8, 16, 16, 16, 16, 32, 32]
    for M, N in itertools.combinations(ind, 2):
        assert is_isomorphic(M, N) is False


def test_is_isomorphic_detects_iso_and_not():
    R = small_rings()["F2[x,y]/(x,y)^2"]
    M = regular_module(R)
    x, y = R.basis_element(1), R.basis_element(2)
    A = cyclic_module(R.ideal(x))
    B = cyclic_module(R.ideal(y))
    assert is_isomorphic(A, A) is True
    assert is_isomorphic(A, B) is False
    assert is_isomorphic(M, M) is True
    assert is_indecomposable(M) is True
    assert is_indecomposable(direct_sum(A, B)) is False


def test_family_helpers():
    R = make_ring("Z/4")
    I = R.ideal(2)
    fam = ModuleFamily.exhaustive(R, I, 16, with_maps=True)
    assert len(fam) == len(module_family(R, 16))
    assert fam.maps and all(f.source.ring is R for f in fam.maps)
    small = fam.where(lambda M: M.cardinality <= 4)
    assert all(M.cardinality <= 4 for M in small)
    assert fam.contains_iso(direct_sum(cyclic_module(I), cyclic_module(I)))
    import random

    maps = sample_maps(regular_module(R), regular_module(R), 2, random.Random(0))
    assert len(maps) == 2
    assert len(list(all_maps(regular_module(R), regular_module(R)))) == 4
    with pytest.raises(ValueError):
        ModuleFamily(R, I, [regular_module(make_ring("Z/4"))])


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CASES), st.data())
def test_preradical_law_on_random_maps(case, data):
    name, M = case
    fam = SMALL[name]
    N = data.draw(st.sampled_from(fam))
    H, emb = hom_module(M, N)
    elems = list(itertools.islice(H.elements(), 64))
    f = emb.to_map(data.draw(st.sampled_from(elems)))
    for I in M.ring.ideals:
        assert f.image(annihilator_submodule(M, I)) <= annihilator_submodule(N, I)
        assert f.image(ideal_scale(M, I)) <= ideal_scale(N, I)
