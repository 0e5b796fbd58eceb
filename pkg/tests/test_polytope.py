import random

import pytest

from oracles import box_points, facets_by_subsets, random_polytope_vertices
from ngtrace.polytope import (
    NotFullDimensionalError,
    Region,
    codegree,
    convex_hull,
    decomposition_check,
    dilation_points,
    facet_presentation,
    floor_remainder_bracket,
    is_01,
    is_idp,
    minkowski_sum,
    product,
    product_factorization,
)

SEGMENT = facet_presentation([(0,), (1,)])
SQUARE = facet_presentation([(0, 0), (1, 0), (0, 1), (1, 1)])
TRIANGLE = facet_presentation([(0, 0), (1, 0), (0, 1)])
REEVE = facet_presentation([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 2)])


def seg(a, b):
    return facet_presentation([(a,), (b,)])


def _facet_set(P):
    return sorted((n, -h) for n, h in P.facets)


def test_facet_examples():
    assert _facet_set(SEGMENT) == [((-1,), -1), ((1,), 0)]
    assert _facet_set(SQUARE) == sorted([((1, 0), 0), ((0, 1), 0), ((-1, 0), -1), ((0, -1), -1)])
    P = facet_presentation([(0, 0), (3, 0), (0, 3), (1, 1)])
    assert len(P.facets) == 3 and (1, 1) not in P.vertices


def test_lower_dimensional_hull():
    P = convex_hull([(0, 0), (1, 1), (3, 3)])
    assert not P.full_dimensional
    assert P.vertices == ((0, 0), (3, 3))
    with pytest.raises(NotFullDimensionalError):
        facet_presentation([(0, 0), (1, 1)])


def test_dilation_examples():
    assert dilation_points(SEGMENT, 2, Region.INTERIOR) == [(1,)]
    assert dilation_points(SEGMENT, -1, Region.ANTI) == [(-1,), (0,)]
    assert dilation_points(seg(0, 3), 1, Region.CLOSED) == [(0,), (1,), (2,), (3,)]


def test_codegree_examples():
    assert codegree(SEGMENT) == 2
    assert codegree(seg(0, 3)) == 1
    assert codegree(SQUARE) == 2


def test_minkowski_examples():
    assert minkowski_sum(seg(1, 2), seg(-1, 1)).vertices == seg(0, 3).vertices
    point = convex_hull([(0,)])
    assert minkowski_sum(seg(0, 3), point).vertices == seg(0, 3).vertices
    e1 = convex_hull([(0, 0), (1, 0)])
    e2 = convex_hull([(0, 0), (0, 1)])
    assert minkowski_sum(e1, e2).vertices == SQUARE.vertices


def test_floor_remainder_bracket_examples():
    t = floor_remainder_bracket(seg(0, 3))
    assert t.floor.vertices == ((1,), (2,))
    assert t.remainder.vertices == ((-1,), (1,))
    assert t.bracket.vertices == ((1,), (2,))
    t = floor_remainder_bracket(SEGMENT)
    assert t.floor is None and t.codegree == 2
    assert t.remainder.vertices == ((-1,), (0,))
    assert t.bracket.vertices == ((1,),)
    t = floor_remainder_bracket(SQUARE)
    assert t.bracket.vertices == ((1, 1),)
    assert t.remainder.vertices == ((-1, -1), (-1, 0), (0, -1), (0, 0))


def test_decomposition_examples():
    assert decomposition_check(seg(0, 3)).holds
    assert decomposition_check(SEGMENT).holds


def _oracle_decomposes(P):
    vs = P.vertices
    a = next(k for k in range(1, P.ambient + 2) if box_points(vs, k, shift=-1))
    bracket = box_points(vs, a, shift=-1)
    remainder = box_points(vs, 1 - a, shift=1)
    sums = {tuple(x + y for x, y in zip(b, r)) for b in bracket for r in remainder}
    # the sums always lie in P, so equality of hulls means every vertex is hit
    return a, set(vs) <= sums


def test_reeve_decomposition_against_oracle():
    a, holds = _oracle_decomposes(REEVE)
    dec = decomposition_check(REEVE)
    assert (dec.codegree, dec.holds) == (a, holds) == (2, True)
    assert dec.bracket.vertices == ((1, 1, 1),)


@pytest.mark.parametrize("seed", range(4))
def test_decomposition_against_oracle(seed):
    for P in _random_polys(100 + seed, 6):
        a, holds = _oracle_decomposes(P)
        dec = decomposition_check(P)
        assert (dec.codegree, dec.holds) == (a, holds)


def test_idp_examples():
    assert is_idp(SQUARE)
    assert is_idp(seg(0, 3))
    assert not is_idp(REEVE)


def test_factorization_examples():
    fac = product_factorization(SQUARE)
    assert [f.vertices for f in fac] == [SEGMENT.vertices, SEGMENT.vertices]
    assert [f.vertices for f in product_factorization(SEGMENT)] == [SEGMENT.vertices]
    assert [f.vertices for f in product_factorization(TRIANGLE)] == [TRIANGLE.vertices]
    with pytest.raises(ValueError):
        product_factorization(seg(0, 3))


def test_factorization_round_trip():
    cube_tri = product(product(TRIANGLE, SEGMENT), TRIANGLE)
    assert is_01(cube_tri)
    fac = product_factorization(cube_tri)
    assert sorted(len(f.vertices) for f in fac) == [2, 3, 3]
    rebuilt = fac[0]
    for f in fac[1:]:
        rebuilt = product(rebuilt, f)
    assert len(rebuilt.vertices) == len(cube_tri.vertices)


def _random_polys(seed, n):
    rng = random.Random(seed)
    return [facet_presentation(random_polytope_vertices(rng)) for _ in range(n)]


@pytest.mark.parametrize("P", _random_polys(5, 25), ids=lambda P: str(P.vertices))
def test_slices_match_box_scan(P):
    assert _facet_set(P) == facets_by_subsets(P.vertices)
    for k in (1, 2):
        assert dilation_points(P, k, Region.CLOSED) == box_points(P.vertices, k)
        assert dilation_points(P, k, Region.INTERIOR) == box_points(P.vertices, k, shift=-1)
    for k in (-1, 0, 1 - codegree(P)):
        assert dilation_points(P, k, Region.ANTI) == box_points(P.vertices, k, shift=1)


@pytest.mark.parametrize("P", _random_polys(6, 25), ids=lambda P: str(P.vertices))
def test_codegree_and_containment(P):
    d, a = P.ambient, codegree(P)
    assert 1 <= a <= d + 1
    assert dilation_points(P, a, Region.INTERIOR)
    assert a == 1 or not box_points(P.vertices, a - 1, shift=-1)
    tri = floor_remainder_bracket(P)
    if tri.remainder is not None:
        total = minkowski_sum(tri.bracket, tri.remainder)
        assert all(P.contains(v) for v in total.vertices)


def test_minkowski_laws():
    rng = random.Random(11)
    for _ in range(5):
        d = rng.choice((1, 2))
        A, B, C = (facet_presentation(random_polytope_vertices(rng, dims=(d,), coord_max=3)) for _ in range(3))
        assert minkowski_sum(A, B).vertices == minkowski_sum(B, A).vertices
        assert minkowski_sum(minkowski_sum(A, B), C).vertices == minkowski_sum(A, minkowski_sum(B, C)).vertices
        # set-theoretic sum: every lattice point sum lies in the hull
        S = minkowski_sum(A, B)
        for x in A.lattice_points():
            for y in B.lattice_points():
                assert S.contains(tuple(p + q for p, q in zip(x, y)))


def test_idp_against_sums():
    rng = random.Random(3)
    for _ in range(10):
        P = facet_presentation(random_polytope_vertices(rng, dims=(2, 3), coord_max=2))
        pts = P.lattice_points()
        two = {tuple(a + b for a, b in zip(x, y)) for x in pts for y in pts}
        full = set(box_points(P.vertices, 2))
        if two != full:
            assert not is_idp(P)
        if P.ambient == 2:
            # lattice polygons are always IDP
            assert is_idp(P)
