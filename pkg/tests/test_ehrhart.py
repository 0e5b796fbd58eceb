import random

import pytest

from oracles import box_points, naive_hilbert_basis, random_polytope_vertices
from ngtrace.ehrhart import (
    ant_points,
    anticanonical_module,
    canonical_module,
    cone_semigroup,
    hilbert_basis,
    interior_points,
)
from ngtrace.polytope import codegree, facet_presentation, is_idp
from ngtrace.trace import duality_validate, module_stats, veronese_module
from ngtrace.semigroup import veronese_semigroup

SEGMENT = facet_presentation([(0,), (1,)])
SEG3 = facet_presentation([(0,), (3,)])
SQUARE = facet_presentation([(0, 0), (1, 0), (0, 1), (1, 1)])
REEVE = facet_presentation([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 2)])


def test_hilbert_basis_examples():
    assert hilbert_basis(SQUARE) == [(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1)]
    assert hilbert_basis(REEVE) == sorted([v + (1,) for v in REEVE.vertices] + [(1, 1, 1, 2)])
    assert hilbert_basis(SEG3) == [(0, 1), (1, 1), (2, 1), (3, 1)]


@pytest.mark.parametrize("seed", range(10))
def test_hilbert_basis_oracle(seed):
    P = facet_presentation(random_polytope_vertices(random.Random(seed), dims=(2, 3), coord_max=3))
    assert hilbert_basis(P) == naive_hilbert_basis(P.vertices, P.ambient + 1)


def test_canonical_examples():
    assert canonical_module(SEGMENT).gens == ((1, 2),)
    assert canonical_module(SEG3).gens == ((1, 1), (2, 1))
    assert canonical_module(SQUARE).gens == ((1, 1, 2),)


def test_anticanonical_examples():
    assert anticanonical_module(SEG3).gens == ((-1, 0), (0, 0), (1, 0))
    assert anticanonical_module(SEGMENT).gens == ((-1, -2),)
    assert anticanonical_module(SQUARE).gens == ((-1, -1, -2),)


def test_module_stats_examples():
    assert module_stats(canonical_module(SEGMENT)) == (-2, 2)
    assert module_stats(canonical_module(SEG3)) == (-1, 1)


def test_veronese_of_canonical_module():
    S = cone_semigroup(SEGMENT)
    S2 = veronese_semigroup(S, 2)
    w2 = veronese_module(canonical_module(SEGMENT, S), 2, S2)
    assert w2.gens == ((1, 1),)
    assert w2.gens == canonical_module(facet_presentation([(0,), (2,)])).gens


def _polys():
    rng = random.Random(17)
    out = [SEGMENT, SEG3, SQUARE, REEVE]
    out += [facet_presentation(random_polytope_vertices(rng)) for _ in range(12)]
    return out


@pytest.mark.parametrize("P", _polys(), ids=lambda P: str(P.vertices))
def test_module_invariants(P):
    S = cone_semigroup(P)
    w = canonical_module(P, S)
    inv = anticanonical_module(P, S)
    assert w.indeg == codegree(P)
    for g in w.gens:
        assert all(v >= 1 for v in S.facet_values(g))
    for g in inv.gens:
        assert all(v >= -1 for v in S.facet_values(g))
    # slices agree with the box scan oracle
    for k in range(codegree(P), codegree(P) + 2):
        assert interior_points(P, k) == [y + (k,) for y in box_points(P.vertices, k, shift=-1)]
    for k in range(1 - codegree(P), 2):
        assert ant_points(P, k) == [y + (k,) for y in box_points(P.vertices, k, shift=1)]
    # degree-one Hilbert basis elements are the lattice points; they generate iff IDP
    ones = [g[:-1] for g in S.generators if g[-1] == 1]
    assert ones == P.lattice_points()
    assert is_idp(P) == all(g[-1] == 1 for g in S.generators)
    assert duality_validate(S, w, 10)
