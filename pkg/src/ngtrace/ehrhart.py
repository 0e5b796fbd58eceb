"""Ehrhart rings: the cone over a lattice polytope and its (anti-)canonical module."""
from __future__ import annotations

from .lattice import Vector, vsub
from .polytope import LatticePolytope, Region, codegree, dilation_points
from .semigroup import AffineSemigroup, ClosureError
from .trace import MonomialModule, inverse_module, polyhedral_module


def _in_cone(P: LatticePolytope, x: Vector) -> bool:
    *y, k = x
    return all(sum(a * b for a, b in zip(n, y)) >= -k * h for n, h in P.facets)


def hilbert_basis(P: LatticePolytope, max_degree: int | None = None) -> list[Vector]:
    """Minimal generators of C_P intersected with Z^(d+1), graded by the last coordinate.

    Slices 1..d are scanned and the result is confirmed by finding nothing new
    at degree d + 1 (generators never exceed degree d - 1 when d >= 2).
    """
    d = P.ambient
    top = max(d, 1) + 1 if max_degree is None else max_degree
    basis: list[Vector] = []
    for k in range(1, top + 1):
        new = []
        for y in dilation_points(P, k, Region.CLOSED):
            x = y + (k,)
            if not any(_in_cone(P, vsub(x, g)) for g in basis):
                new.append(x)
        if k == top and new and max_degree is None:
            raise ClosureError(f"new Hilbert basis elements at degree {k}")
        basis.extend(new)
    return sorted(basis)


def cone_semigroup(P: LatticePolytope) -> AffineSemigroup:
    return AffineSemigroup(hilbert_basis(P), tuple([0] * P.ambient + [1]), normal=True, assume_cm=True)


def _shifts(S: AffineSemigroup, value: int) -> tuple[int, ...]:
    return (value,) * len(S.facets)


def canonical_module(P: LatticePolytope, S: AffineSemigroup | None = None) -> MonomialModule:
    """Generators of the interior lattice points of C_P."""
    S = S or cone_semigroup(P)
    w = polyhedral_module(S, _shifts(S, 1), "omega")
    if w.indeg != codegree(P):
        raise AssertionError("least degree of the canonical module must equal the codegree")
    w.provenance = "interior points of the cone"
    return w


def anticanonical_module(P: LatticePolytope, S: AffineSemigroup | None = None, cross_check: bool = True) -> MonomialModule:
    """Generators of the anti-cone lattice points ``n_F(x) >= -k h_F - 1``.

    The lowest nonempty level is 1 - a_P when P is not Gorenstein and -a_P
    when it is, so the scan starts at -a_P.
    """
    S = S or cone_semigroup(P)
    a = codegree(P)
    inv = polyhedral_module(S, _shifts(S, -1), "anti-omega")
    if inv.indeg < -a:
        raise AssertionError("anti-canonical generator below level -a_P")
    inv.provenance = "anti-cone lattice points"
    if cross_check:
        other = inverse_module(canonical_module(P, S))
        if other.gens != inv.gens:
            raise AssertionError("anti-canonical module differs from the inverse of the canonical module")
    return inv


def ant_points(P: LatticePolytope, k: int) -> list[Vector]:
    return [y + (k,) for y in dilation_points(P, k, Region.ANTI)]


def interior_points(P: LatticePolytope, k: int) -> list[Vector]:
    return [y + (k,) for y in dilation_points(P, k, Region.INTERIOR)]
