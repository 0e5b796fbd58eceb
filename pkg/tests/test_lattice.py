import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ngtrace.lattice import (
    DimensionError,
    UnboundedRegionError,
    enumerate_slice,
    hermite_rows,
    hnf_lattice,
    integer_kernel,
    lattice_contains,
    solve_rational,
)


def test_hnf_examples():
    L = hnf_lattice([(2, 0), (0, 2)])
    assert L.basis == ((2, 0), (0, 2)) and L.rank == 2
    assert hnf_lattice([(0, 1), (1, 2)]).basis == ((1, 0), (0, 1))
    L = hnf_lattice([(3, 1), (6, 2)])
    assert L.basis == ((3, 1),) and L.rank == 1


def test_contains_examples():
    L = hnf_lattice([(2, 0), (0, 2)])
    assert lattice_contains(L, (2, 2))
    assert not lattice_contains(L, (1, 1))
    assert lattice_contains(hnf_lattice([(1, 0), (0, 1)]), (-7, 5))
    with pytest.raises(DimensionError):
        lattice_contains(L, (1, 2, 3))


def test_coordinates_round_trip():
    L = hnf_lattice([(2, 1, 0), (0, 3, 3), (1, 1, 1)])
    v = (5, 9, 7)
    c = L.coordinates(v)
    if c is None:
        assert v not in L
    else:
        assert L.point(c) == v


vec3 = st.tuples(*[st.integers(-6, 6)] * 3)


@settings(max_examples=60, deadline=None)
@given(st.lists(vec3, min_size=1, max_size=4))
def test_hnf_idempotent_and_contains_generators(gens):
    if not any(any(g) for g in gens):
        return
    L = hnf_lattice(gens)
    assert hnf_lattice(L.basis).basis == L.basis
    for g in gens:
        assert g in L
    # pivots positive, entries above pivots reduced
    for i, (row, p) in enumerate(zip(L.basis, L.pivots)):
        assert row[p] > 0
        for above in L.basis[:i]:
            assert 0 <= above[p] < row[p]


@settings(max_examples=40, deadline=None)
@given(st.lists(vec3, min_size=1, max_size=3), vec3)
def test_membership_by_small_combinations(gens, v):
    """Points built from small integer combinations are members; reduce is the identity mod L."""
    if not any(any(g) for g in gens):
        return
    L = hnf_lattice(gens)
    for coeffs in itertools.product(range(-2, 3), repeat=len(gens)):
        w = tuple(sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(3))
        assert w in L
    r = L.reduce(v)
    assert tuple(a - b for a, b in zip(v, r)) in L
    assert L.reduce(r) == r


def test_kernel():
    K = integer_kernel([(1, 1, 1)], 3)
    assert len(K) == 2
    for k in K:
        assert sum(k) == 0
    assert hnf_lattice(K).basis == hnf_lattice([(1, -1, 0), (0, 1, -1)]).basis


def test_solve_rational():
    assert solve_rational([(2, 0), (0, 3)], (1, 1)) == [Fraction(1, 2), Fraction(1, 3)]
    assert solve_rational([(1, 1)], (1, 0)) is None


def test_hermite_rows_drops_zero():
    assert hermite_rows([(0, 0), (4, 6), (2, 3)]) == ((2, 3),)


def test_enumerate_examples():
    assert enumerate_slice([((1,), 0), ((-1,), -3)]) == [(0,), (1,), (2,), (3,)]
    assert enumerate_slice([((1,), 1), ((-1,), -2)]) == [(1,), (2,)]
    tri = [((1, 0), 0), ((0, 1), 0), ((-1, -1), -1)]
    assert enumerate_slice(tri) == [(0, 0), (0, 1), (1, 0)]


def test_enumerate_rational_rhs_and_equalities():
    pts = enumerate_slice([((1, 0), Fraction(1, 2)), ((-1, 0), Fraction(-7, 2)), ((0, 1), 0), ((0, -1), -5)],
                          [((1, 1), 4)])
    assert pts == [(1, 3), (2, 2), (3, 1)]


def test_enumerate_unbounded():
    with pytest.raises(UnboundedRegionError):
        enumerate_slice([((1, 0), 0), ((0, 1), 0)])
    # infeasible regions are empty, not unbounded
    assert enumerate_slice([((1, 0), 1), ((-1, 0), 0), ((0, 1), 0)]) == []


ineq2 = st.tuples(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), st.integers(-6, 6))


@settings(max_examples=80, deadline=None)
@given(st.lists(ineq2, min_size=1, max_size=5))
def test_enumerate_matches_box_scan(extra):
    box = [((1, 0), -5), ((-1, 0), -5), ((0, 1), -5), ((0, -1), -5)]
    cons = box + extra
    got = enumerate_slice(cons)
    want = [p for p in itertools.product(range(-5, 6), repeat=2)
            if all(n[0] * p[0] + n[1] * p[1] >= c for n, c in cons)]
    assert got == sorted(want)
    assert len(set(got)) == len(got)
