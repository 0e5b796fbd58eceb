"""Lattice polytopes, their dilations, and the floor/remainder/bracket calculus."""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .lattice import (
    DimensionError,
    Vector,
    _common_dim,
    dot,
    enumerate_slice,
    primitive,
    rational_rank,
    vadd,
    vsub,
)

DEFAULT_HULL_LIMIT = 6


class NotFullDimensionalError(ValueError):
    pass


class HullLimitError(ValueError):
    pass


class Region(enum.Enum):
    CLOSED = "closed"
    INTERIOR = "interior"
    ANTI = "anti"


Facet = tuple[Vector, int]  # (primitive inner normal n, height h): n.x >= -h


@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of finitely many lattice points.

    ``facets`` is populated only for full-dimensional polytopes; lower
    dimensional hulls (which arise as bracket polytopes or Minkowski summands)
    carry their vertex list and affine dimension only.
    """

    vertices: tuple[Vector, ...]
    facets: tuple[Facet, ...]
    dim: int

    @property
    def ambient(self) -> int:
        return len(self.vertices[0])

    @property
    def full_dimensional(self) -> bool:
        return self.dim == self.ambient

    def contains(self, x: Sequence) -> bool:
        if not self.full_dimensional:
            raise NotFullDimensionalError("containment test needs a facet presentation")
        return all(dot(n, x) >= -h for n, h in self.facets)

    def lattice_points(self) -> list[Vector]:
        return dilation_points(self, 1, Region.CLOSED)

    def to_json(self) -> dict:
        return {"vertices": [list(v) for v in self.vertices]}


# ---------------------------------------------------------------------------
# Double description


def _solve_columns(basis: list[Vector], m: int) -> list[Vector]:
    """Integer columns r_j with basis[i] . r_j = 0 for i != j and > 0 for i == j."""
    out = []
    for j in range(m):
        aug = [[Fraction(x) for x in row] + [Fraction(int(i == j))] for i, row in enumerate(basis)]
        for c in range(m):
            p = next(i for i in range(c, m) if aug[i][c] != 0)
            aug[c], aug[p] = aug[p], aug[c]
            pv = aug[c][c]
            aug[c] = [x / pv for x in aug[c]]
            for i in range(m):
                if i != c and aug[i][c] != 0:
                    f = aug[i][c]
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
        sol = [aug[i][m] for i in range(m)]
        den = 1
        for x in sol:
            den = den * x.denominator // _gcd(den, x.denominator)
        out.append(primitive([int(x * den) for x in sol]))
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def cone_extreme_rays(rows: Sequence[Sequence[int]]) -> list[tuple[Vector, frozenset]]:
    """Extreme rays of the pointed cone ``{y : r . y >= 0 for r in rows}``.

    Returns ``(ray, tight_rows)`` pairs with primitive integer rays. The rows
    must have full rank (the cone is then pointed).
    """
    m = _common_dim(rows)
    rows = [tuple(r) for r in rows]
    chosen: list[int] = []
    for i, r in enumerate(rows):
        if rational_rank([rows[j] for j in chosen] + [r]) > len(chosen):
            chosen.append(i)
            if len(chosen) == m:
                break
    if len(chosen) < m:
        raise ValueError("constraint rows do not have full rank")
    cols = _solve_columns([rows[i] for i in chosen], m)
    rays: list[tuple[Vector, frozenset]] = []
    chosen_set = set(chosen)
    for j, r in enumerate(cols):
        rays.append((r, frozenset(chosen[i] for i in range(m) if i != j)))
    for idx, a in enumerate(rows):
        if idx in chosen_set:
            continue
        pos, zero, neg = [], [], []
        for ray, z in rays:
            s = dot(a, ray)
            if s > 0:
                pos.append((ray, z, s))
            elif s < 0:
                neg.append((ray, z, s))
            else:
                zero.append((ray, z | {idx}))
        new = []
        everything = [(r, z) for r, z, _ in pos] + [(r, z) for r, z, _ in neg] + zero
        for rp, zp, sp in pos:
            for rn, zn, sn in neg:
                common = zp & zn
                if len(common) < m - 2:
                    continue
                if any(common <= z for r, z in everything if r is not rp and r is not rn):
                    continue
                ray = primitive([sp * y - sn * x for x, y in zip(rp, rn)])
                new.append((ray, common | {idx}))
        rays = [(r, z) for r, z, _ in pos] + zero + new
    return rays


# ---------------------------------------------------------------------------
# Hulls


def _facets_full(points: list[Vector]) -> list[Facet]:
    rows = [tuple(p) + (1,) for p in points]
    facets = []
    for ray, _ in cone_extreme_rays(rows):
        a, b = ray[:-1], ray[-1]
        if not any(a):
            continue
        g = _gcd_all(a)
        facets.append((tuple(x // g for x in a), b // g))
    return sorted(set(facets))


def _gcd_all(v) -> int:
    g = 0
    for x in v:
        g = _gcd(g, x)
    return g


def _vertices_from_facets(points: list[Vector], facets: list[Facet], d: int) -> list[Vector]:
    out = []
    for p in points:
        tight = [n for n, h in facets if dot(n, p) == -h]
        if rational_rank(tight) == d if tight else d == 0:
            out.append(p)
    return sorted(set(out))


def _affine_chart(points: list[Vector]) -> tuple[int, list[int]]:
    """Affine dimension and a coordinate subset on which projection is injective."""
    p0 = points[0]
    diffs = [vsub(p, p0) for p in points[1:] if p != p0]
    r = rational_rank(diffs) if diffs else 0
    if r == 0:
        return 0, []
    n = len(p0)
    for coords in itertools.combinations(range(n), r):
        proj = [tuple(v[c] for c in coords) for v in diffs]
        if rational_rank(proj) == r:
            return r, list(coords)
    raise AssertionError("unreachable: some coordinate chart has full rank")


def convex_hull(points: Iterable[Sequence[int]], hull_limit: int = DEFAULT_HULL_LIMIT) -> LatticePolytope:
    """Hull of arbitrary lattice points (any affine dimension)."""
    pts = sorted(set(tuple(int(x) for x in p) for p in points))
    if not pts:
        raise ValueError("convex hull of no points")
    n = _common_dim(pts)
    if n > hull_limit:
        raise HullLimitError(f"ambient dimension {n} exceeds hull limit {hull_limit}")
    r, chart = _affine_chart(pts)
    if r == n:
        facets = _facets_full(pts)
        return LatticePolytope(tuple(_vertices_from_facets(pts, facets, n)), tuple(facets), n)
    if r == 0:
        return LatticePolytope((pts[0],), (), 0)
    proj = [tuple(p[c] for c in chart) for p in pts]
    back = dict(zip(proj, pts))
    facets = _facets_full(proj)
    verts = _vertices_from_facets(proj, facets, r)
    return LatticePolytope(tuple(sorted(back[v] for v in verts)), (), r)


def facet_presentation(vertices: Sequence[Sequence[int]], hull_limit: int = DEFAULT_HULL_LIMIT) -> LatticePolytope:
    P = convex_hull(vertices, hull_limit)
    if not P.full_dimensional:
        raise NotFullDimensionalError(f"points span an affine space of dimension {P.dim} < {P.ambient}")
    return P


def polyhedron_vertices(inequalities: Sequence[tuple[Sequence[int], int]]) -> tuple[list[tuple[Fraction, ...]], list[Vector]]:
    """Vertices and extreme rays of the pointed polyhedron ``{x : a.x >= c}``."""
    n = _common_dim([a for a, _ in inequalities])
    rows = [tuple(a) + (-c,) for a, c in inequalities] + [(0,) * n + (1,)]
    verts, rays = set(), set()
    for ray, _ in cone_extreme_rays(rows):
        t = ray[-1]
        if t > 0:
            verts.add(tuple(Fraction(x, t) for x in ray[:-1]))
        elif t < 0:
            raise AssertionError("homogenization produced a ray with t < 0")
        else:
            rays.add(ray[:-1])
    return sorted(verts), sorted(rays)


def h_to_v(inequalities: Sequence[tuple[Sequence[int], int]]) -> list[tuple[Fraction, ...]]:
    """Vertices of the bounded polyhedron ``{x : a.x >= c}`` (possibly rational)."""
    verts, rays = polyhedron_vertices(inequalities)
    if rays:
        raise ValueError("polyhedron is unbounded")
    return verts


# ---------------------------------------------------------------------------
# Slices, codegree, Minkowski sums


def _shift(region: Region) -> int:
    return {Region.CLOSED: 0, Region.INTERIOR: 1, Region.ANTI: -1}[region]


def slice_constraints(P: LatticePolytope, k: int, region: Region) -> list[tuple[Vector, int]]:
    s = _shift(region)
    return [(n, -k * h + s) for n, h in P.facets]


def dilation_points(P: LatticePolytope, k: int, region: Region = Region.CLOSED) -> list[Vector]:
    """Lattice points x with ``(x, k)`` in C_P, int(C_P) or ant(C_P)."""
    if not P.full_dimensional:
        raise NotFullDimensionalError("dilation slices need a full-dimensional polytope")
    if region is not Region.ANTI and k < 0:
        raise ValueError("closed and interior slices need k >= 0")
    return enumerate_slice(slice_constraints(P, k, region))


def codegree(P: LatticePolytope) -> int:
    d = P.ambient
    for k in range(1, d + 2):
        if dilation_points(P, k, Region.INTERIOR):
            return k
    raise AssertionError(f"no interior lattice point in kP for k <= {d + 1}")


def minkowski_sum(A: LatticePolytope, B: LatticePolytope) -> LatticePolytope:
    if A.ambient != B.ambient:
        raise DimensionError("Minkowski summands live in different dimensions")
    return convex_hull(vadd(a, b) for a in A.vertices for b in B.vertices)


def product(A: LatticePolytope, B: LatticePolytope) -> LatticePolytope:
    return convex_hull(a + b for a in A.vertices for b in B.vertices)


# ---------------------------------------------------------------------------
# Floor, remainder, bracket


@dataclass(frozen=True)
class PolytopeTriple:
    floor: LatticePolytope | None  # None encodes the empty polytope
    remainder: LatticePolytope | None  # empty when ant(C_P) has no points at level 1 - a_P
    bracket: LatticePolytope
    codegree: int


def floor_remainder_bracket(P: LatticePolytope) -> PolytopeTriple:
    a = codegree(P)
    floor_pts = dilation_points(P, 1, Region.INTERIOR)
    floor = convex_hull(floor_pts) if floor_pts else None
    bracket = convex_hull(dilation_points(P, a, Region.INTERIOR))
    rem_pts = dilation_points(P, 1 - a, Region.ANTI)
    remainder = convex_hull(rem_pts) if rem_pts else None
    return PolytopeTriple(floor, remainder, bracket, a)


@dataclass(frozen=True)
class Decomposition:
    holds: bool
    bracket: LatticePolytope
    remainder: LatticePolytope | None
    codegree: int


def decomposition_check(P: LatticePolytope) -> Decomposition:
    """Decide whether P equals the Minkowski sum of its bracket and remainder."""
    tri = floor_remainder_bracket(P)
    a = tri.codegree
    if tri.remainder is None:
        return Decomposition(False, tri.bracket, None, a)
    total = minkowski_sum(tri.bracket, tri.remainder)
    if not all(P.contains(v) for v in total.vertices):
        raise AssertionError("bracket + remainder escapes P")
    holds = total.vertices == P.vertices
    if holds:
        expect_bracket = h_to_v([(n, 1 - a * h) for n, h in P.facets])
        expect_rem = h_to_v([(n, (a - 1) * h - 1) for n, h in P.facets])
        if [tuple(Fraction(x) for x in v) for v in tri.bracket.vertices] != expect_bracket:
            raise AssertionError("bracket polytope does not match its facet description")
        if [tuple(Fraction(x) for x in v) for v in tri.remainder.vertices] != expect_rem:
            raise AssertionError("remainder polytope does not match its facet description")
    return Decomposition(holds, tri.bracket, tri.remainder, a)


# ---------------------------------------------------------------------------
# IDP and (0,1) products


def is_idp(P: LatticePolytope, max_k: int | None = None) -> bool:
    """Integer decomposition property.

    Checking ``2 <= k <= max(2, d - 1)`` suffices: the Hilbert basis of the
    cone over P lives in degrees at most ``d - 1``.
    """
    d = P.ambient
    if max_k is None:
        max_k = max(2, d - 1)
    base = P.lattice_points()
    reach = set(base)
    for k in range(2, max_k + 1):
        reach = {vadd(x, y) for x in reach for y in base}
        if reach != set(dilation_points(P, k)):
            return False
    return True


def is_01(P: LatticePolytope) -> bool:
    return all(x in (0, 1) for v in P.vertices for x in v)


def product_blocks(P: LatticePolytope) -> list[tuple[int, ...]]:
    """Finest partition of the non-constant coordinates along which vert(P) splits."""
    if not is_01(P):
        raise ValueError("product factorization needs a (0,1)-polytope")
    V = set(P.vertices)
    coords = [c for c in range(P.ambient) if len({v[c] for v in V}) > 1]
    blocks = []
    while coords:
        proj_all = {tuple(v[c] for c in coords) for v in V}
        first, others = coords[0], coords[1:]
        found = None
        for size in range(0, len(others) + 1):
            for extra in itertools.combinations(others, size):
                block = (first,) + extra
                rest = [c for c in coords if c not in block]
                pb = {tuple(v[c] for c in block) for v in V}
                pr = {tuple(v[c] for c in rest) for v in V}
                if len(pb) * len(pr) == len(proj_all):
                    found = block
                    break
            if found:
                break
        blocks.append(tuple(sorted(found)))
        coords = [c for c in coords if c not in found]
    return blocks


def product_factorization(P: LatticePolytope) -> list[LatticePolytope]:
    return [convex_hull({tuple(v[c] for c in b) for v in P.vertices}) for b in product_blocks(P)]
