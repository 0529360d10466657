from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torsion_kit.apolarity import (
    InverseSystem,
    PolyIdeal,
    annihilator_in_system,
    basis_polys,
    check_apolarity_layers,
    contract,
    differentiate,
    parse_poly,
    poly_mul,
    reducedness_profile,
)
from torsion_kit.linalg import subspace_contains


def exps(nvars, top=4):
    return st.lists(st.integers(0, top), min_size=nvars, max_size=nvars).map(tuple)


def polys(nvars, top=4):
    return st.dictionaries(exps(nvars, top), st.integers(-3, 3).map(Fraction), max_size=4).map(
        lambda d: {e: c for e, c in d.items() if c})


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(exps(n), exps(n))))
def test_contraction_is_differentiation(pair):
    a, b = pair
    assert contract(a, b) == differentiate({b: Fraction(1)}, a)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 2).flatmap(lambda n: st.tuples(st.just(n), polys(n, 2), polys(n, 2), polys(n))))
def test_action_is_a_module_action(data):
    n, g, h, f = data
    S = InverseSystem(n, 4 * n)
    # (gh) o f = g o (h o f), and the action is bilinear
    assert S.act(poly_mul(g, h), f) == S.act(g, S.act(h, f))
    two_f = {e: 2 * c for e, c in f.items()}
    assert S.act(g, two_f) == {e: 2 * c for e, c in S.act(g, f).items()}
    assert S.act({(0,) * n: Fraction(1)}, f) == f


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 2).flatmap(lambda n: st.tuples(st.just(n), st.lists(exps(n, 3), min_size=1, max_size=3))),
       st.integers(0, 5))
def test_annihilator_brute_force_monomial_ideals(data, D):
    n, gens = data
    gens = [g for g in gens if any(g)] or [(1,) * n]
    J = PolyIdeal.monomial(*gens)
    S = InverseSystem(n, D)
    A = S.annihilator(J)
    # for monomial J the annihilator is spanned by the monomials X^b with b not above any generator
    want = [b for b in S.monomials if not any(all(x >= y for x, y in zip(b, g)) for g in gens)]
    assert len(A) == len(want)
    for b in want:
        assert subspace_contains(A, S.vector({b: Fraction(1)}), S.dim)
    for f in basis_polys(S, A):
        for g in J.polys():
            assert S.act(g, f) == {}


def test_dims_grow_with_truncation():
    J = PolyIdeal.monomial((1, 1))
    dims = [len(annihilator_in_system(D, 2, J)) for D in range(6)]
    assert dims == [1, 3, 5, 7, 9, 11]
    assert all(a <= b for a, b in zip(dims, dims[1:]))


def test_profile_one_variable():
    J = PolyIdeal.monomial((2,))
    p = reducedness_profile(5, 1, J, 3)
    assert p.dims == (2, 4, 6)
    assert p.bases[0] == ("1", "X")
    assert not p.reduced and p.witness == "X^2"
    assert p.exceeds_truncation == (3,)
    assert p.to_dict()["exceeds_truncation"] == [3]
    q = reducedness_profile(3, 1, PolyIdeal.monomial((4,)), 2)
    assert q.dims == (4, 4) and q.reduced and q.witness is None
    assert q.exceeds_truncation == (1, 2)


def test_profile_two_variables():
    J = PolyIdeal.monomial((1, 0), (0, 1))
    p = reducedness_profile(3, 2, J, 2)
    assert p.dims == (1, 3)
    assert p.witness in ("X1", "X2")
    assert str(J) == "<x2, x1>"


def test_layers_pass_on_mixed_ideals():
    for J in (PolyIdeal.monomial((2, 0), (1, 1)),
              PolyIdeal.from_polys(2, [{(1, 0): Fraction(1), (0, 1): Fraction(-1)}]),
              PolyIdeal.monomial((3,))):
        for k in (1, 2):
            rep = check_apolarity_layers(5, J.nvars, J, k)
            assert rep.passed, rep.witnesses
            d = rep.details
            assert d["quotient_annihilator_dim"] == d["high_dim"] - d["low_dim"]


def test_parse_poly_forms():
    assert parse_poly([2, 1], 2) == {(2, 1): 1}
    assert parse_poly([[[1, 0], 3], [[1, 0], -3]], 2) == {}
    assert parse_poly({"1,2": "1/2"}, 2) == {(1, 2): Fraction(1, 2)}
    with pytest.raises(ValueError):
        parse_poly([1, 2, 3], 2)
    with pytest.raises(ValueError):
        parse_poly([[[-1, 0], 1]], 2)


def test_errors():
    with pytest.raises(ValueError):
        contract((1,), (1, 2))
    with pytest.raises(ValueError):
        contract((-1,), (1,))
    with pytest.raises(ValueError):
        InverseSystem(0, 3)
    with pytest.raises(ValueError):
        InverseSystem(1, 2).vector({(3,): Fraction(1)})
    with pytest.raises(ValueError):
        PolyIdeal.from_polys(1, [{}])
    with pytest.raises(ValueError):
        reducedness_profile(3, 1, PolyIdeal.monomial((1,)), 0)
    with pytest.raises(ValueError):
        InverseSystem(2, 2).annihilator(PolyIdeal.monomial((1,)))
    with pytest.raises(ValueError):
        PolyIdeal.monomial((1,)).power(-1)


def test_ideal_powers():
    J = PolyIdeal.monomial((1, 0), (0, 1))
    assert len(J.power(2).generators) == 3
    assert J.power(0).min_degree() == 0
    assert J.power(3).min_degree() == 3
