import itertools
from fractions import Fraction
from math import gcd, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torsion_kit.linalg import (
    Solver,
    abelian_invariants,
    full_basis,
    howell_form,
    intersection,
    kernel,
    preimage,
    rational_left_kernel,
    rational_preimage,
    rational_rank,
    rref,
    smith_diagonal,
    solve,
    subspace_contains,
    subspace_equal,
    to_fractions,
    vecmat,
    zero_basis,
)


def brute_span(rows, n, c):
    seen = {(0,) * c}
    frontier = list(seen)
    while frontier:
        nxt = []
        for v in frontier:
            for r in rows:
                w = tuple((a + b) % n for a, b in zip(v, r))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


@st.composite
def residue_matrix(draw, max_n=16, max_rows=4, max_cols=3):
    n = draw(st.integers(2, max_n))
    c = draw(st.integers(1, max_cols))
    k = draw(st.integers(0, max_rows))
    rows = [[draw(st.integers(0, n - 1)) for _ in range(c)] for _ in range(k)]
    return n, c, rows


@settings(max_examples=300, deadline=None)
@given(residue_matrix())
def test_howell_span_matches_brute_force(data):
    n, c, rows = data
    H = howell_form(rows, n, c)
    S = brute_span(rows, n, c)
    assert set(H.elements()) == S
    assert H.cardinality() == len(S)
    for v in itertools.product(range(n), repeat=c):
        assert H.contains(v) == (v in S)


@settings(max_examples=300, deadline=None)
@given(residue_matrix(), st.randoms(use_true_random=False))
def test_howell_canonical_for_equal_spans(data, rnd):
    n, c, rows = data
    S = sorted(brute_span(rows, n, c))
    other = [list(v) for v in rnd.sample(S, min(len(S), 5))]
    if brute_span(other, n, c) == set(S):
        assert howell_form(other, n, c) == howell_form(rows, n, c)
    # scaling rows by units and adding combinations never changes the form
    mixed = [list(r) for r in rows]
    if len(mixed) >= 2:
        mixed[0] = [(a + 3 * b) % n for a, b in zip(mixed[0], mixed[1])]
        mixed.append(rows[0])
    assert howell_form(mixed + rows, n, c) == howell_form(rows, n, c)


@settings(max_examples=300, deadline=None)
@given(residue_matrix())
def test_howell_property_on_every_suffix(data):
    # rows with pivot >= j span exactly the elements vanishing on the first j columns
    n, c, rows = data
    H = howell_form(rows, n, c)
    S = brute_span(rows, n, c)
    for j in range(c + 1):
        want = {v for v in S if not any(v[:j])}
        tail = [r for r, p in zip(H.rows, H.pivots) if p >= j]
        assert brute_span(tail, n, c) == want


@settings(max_examples=200, deadline=None)
@given(residue_matrix(max_rows=3))
def test_kernel_matches_brute_force(data):
    n, c, rows = data
    if not rows:
        return
    K = kernel(rows, n, c)
    k = len(rows)
    want = {x for x in itertools.product(range(n), repeat=k)
            if not any(vecmat(x, rows, n, c))}
    assert set(K.elements()) == want
    for r in K.rows:
        assert not any(vecmat(r, rows, n, c))


@settings(max_examples=200, deadline=None)
@given(residue_matrix(), st.data())
def test_solve_finds_preimages_exactly_on_the_span(data, draw):
    n, c, rows = data
    b = tuple(draw.draw(st.integers(0, n - 1)) for _ in range(c))
    x = solve(rows, b, n) if rows else None
    inside = b in brute_span(rows, n, c)
    if rows:
        if inside:
            assert x is not None and vecmat(x, rows, n, c) == b
        else:
            assert x is None
        s = Solver(rows, n, c)
        assert s(b) == x


def test_solve_zero_matrix_is_none_off_zero():
    assert solve([[0, 0]], (1, 0), 6) is None
    assert solve([[0, 0]], (0, 0), 6) == (0,)


@settings(max_examples=150, deadline=None)
@given(residue_matrix(max_cols=2, max_rows=3), residue_matrix(max_cols=2, max_rows=3))
def test_intersection_and_sum(a, b):
    n = a[0]
    c = a[1]
    rows_b = [[x % n for x in (r + [0] * c)[:c]] for r in b[2]]
    A, B = howell_form(a[2], n, c), howell_form(rows_b, n, c)
    SA, SB = brute_span(a[2], n, c), brute_span(rows_b, n, c)
    assert set(intersection(A, B).elements()) == SA & SB
    assert set((A + B).elements()) == brute_span(a[2] + rows_b, n, c)
    assert (A <= B) == SA.issubset(SB)


def test_preimage_of_submodule():
    n = 12
    m = [[2, 0], [0, 3], [1, 1]]
    target = howell_form([[4, 0]], n, 2)
    P = preimage(m, target, nrows=3)
    for x in itertools.product(range(n), repeat=3):
        assert P.contains(x) == target.contains(vecmat(x, m, n, 2))


def test_zero_and_full_bases():
    assert zero_basis(6, 3).cardinality() == 1
    assert full_basis(6, 3).cardinality() == 216
    assert howell_form([], 5, 2).is_zero()
    with pytest.raises(ValueError):
        howell_form([[1]], 1, 1)


@settings(max_examples=200, deadline=None)
@given(residue_matrix(max_n=12, max_cols=3))
def test_abelian_invariants_count_elements_of_each_order(data):
    n, c, rows = data
    inv = abelian_invariants(rows, n, c)
    H = howell_form(rows, n, c)
    order = n ** c // H.cardinality()
    assert prod(inv) == order
    assert all(b % a == 0 for a, b in zip(inv, inv[1:]))
    # number of classes killed by d is prod gcd(d, e_i)
    for d in range(1, n + 1):
        killed = sum(1 for v in itertools.product(range(n), repeat=c) if H.contains([d * x for x in v]))
        assert killed // H.cardinality() == prod(gcd(d, e) for e in inv)


def test_smith_diagonal_known():
    assert smith_diagonal([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], 3) == [2, 6, 12]
    assert smith_diagonal([[0, 0], [0, 0]], 2) == []
    assert smith_diagonal([[6, 4]], 2) == [2]


@settings(max_examples=150, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=1, max_size=5))
def test_rational_rank_plus_nullity(rows):
    m = to_fractions(rows)
    K = rational_left_kernel(m, 4)
    assert rational_rank(m, 4) + len(K) == len(rows)
    for v in K:
        assert all(sum(v[i] * m[i][j] for i in range(len(m))) == 0 for j in range(4))


def test_rref_and_subspaces():
    R, piv = rref(to_fractions([[2, 4], [1, 2], [0, 1]]), 2)
    assert R == [[1, 0], [0, 1]] and piv == [0, 1]
    a = to_fractions([[1, 1, 0]])
    assert subspace_contains(a, [Fraction(3), Fraction(3), Fraction(0)], 3)
    assert not subspace_contains(a, [Fraction(1), Fraction(0), Fraction(0)], 3)
    assert subspace_equal(to_fractions([[1, 0], [0, 1]]), to_fractions([[1, 1], [1, -1]]), 2)


def test_rational_preimage():
    m = to_fractions([[1, 0], [0, 0], [0, 1]])
    target = to_fractions([[1, 0]])
    P = rational_preimage(m, target, 3, 2)
    assert subspace_equal(P, to_fractions([[1, 0, 0], [0, 1, 0]]), 3)
