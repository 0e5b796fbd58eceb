"""Pointed affine semigroups with a positive integer grading."""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Iterable, Sequence

from .lattice import (
    DimensionError,
    IntegerLattice,
    Vector,
    _common_dim,
    dot,
    enumerate_slice,
    hnf_lattice,
    rational_rank,
    vsub,
    xgcd,
)
from .polytope import cone_extreme_rays


class NotPointedError(ValueError):
    pass


class GradingError(ValueError):
    pass


class NotSemiStandardError(ValueError):
    pass


class ClosureError(RuntimeError):
    """A degree-window scan failed to certify that it found every generator."""


def _grading_vector(grading, n: int) -> Vector:
    if grading is None or grading == "last":
        return tuple(int(i == n - 1) for i in range(n))
    w = tuple(int(x) for x in grading)
    if len(w) != n:
        raise DimensionError(f"grading of length {len(w)} for vectors in Z^{n}")
    return w


class AffineSemigroup:
    """Finitely generated pointed submonoid of Z^n with a positive grading.

    Instances are treated as immutable. Cone and lattice data are held in the
    coordinates of a Hermite basis of the group ZS, where facet normals are
    primitive integer functionals on ZS.
    """

    def __init__(
        self,
        generators: Sequence[Vector],
        grading: Vector,
        *,
        normal: bool | None = None,
        assume_cm: bool = False,
        parent: tuple["AffineSemigroup", int, Vector] | None = None,
    ):
        self.generators: tuple[Vector, ...] = tuple(sorted(generators))
        self.grading = grading
        self.ambient = len(grading)
        self.assume_cm = assume_cm or bool(normal)
        self.group: IntegerLattice = hnf_lattice(self.generators)
        self.rank = self.group.rank
        self._lat_gens = [self.group.coordinates(g) for g in self.generators]
        self._lat_grading = tuple(dot(self.grading, b) for b in self.group.basis)
        self.facets: tuple[Vector, ...] = _dual_rays(self._lat_gens)
        if rational_rank(list(self.facets)) != self.rank if self.facets else self.rank > 0:
            raise NotPointedError("cone over the generators contains a line")
        self.degrees = tuple(dot(self.grading, g) for g in self.generators)
        if any(d < 1 for d in self.degrees):
            bad = [g for g, d in zip(self.generators, self.degrees) if d < 1]
            raise GradingError(f"generators of non-positive degree: {bad}")
        self._parent = parent
        self._lock = threading.Lock()
        self._memo: dict[Vector, bool] = {}
        self.extremal_flags = self._extremal_flags()
        self.semi_standard = all(self.degree(e) == 1 for e in self.extremal_generators())
        self._normal = normal
        self._module_gens: tuple[tuple[Vector, ...], int] | None = None

    # -- basic data ---------------------------------------------------------

    def __repr__(self) -> str:
        return f"AffineSemigroup(generators={list(self.generators)}, grading={self.grading})"

    def __eq__(self, other) -> bool:
        return isinstance(other, AffineSemigroup) and (self.generators, self.grading) == (other.generators, other.grading)

    def __hash__(self) -> int:
        return hash((self.generators, self.grading))

    @property
    def dim(self) -> int:
        return self.rank

    def zero(self) -> Vector:
        return (0,) * self.ambient

    def degree(self, x: Sequence[int]) -> int:
        return dot(self.grading, x)

    def lattice_coords(self, x: Sequence[int]) -> Vector | None:
        return self.group.coordinates(x)

    def facet_values(self, x: Sequence[int]) -> Vector | None:
        c = self.group.coordinates(x)
        if c is None:
            return None
        return tuple(dot(y, c) for y in self.facets)

    def in_cone_lattice(self, x: Sequence[int]) -> bool:
        vals = self.facet_values(x)
        return vals is not None and all(v >= 0 for v in vals)

    def in_group(self, x: Sequence[int]) -> bool:
        return x in self.group

    # -- slices -------------------------------------------------------------

    def lattice_slice(self, k: int, shifts: Sequence[int] | None = None) -> list[Vector]:
        """Points x of ZS with deg x = k and facet values ``y_F(x) >= shifts[F]``."""
        if shifts is None:
            shifts = (0,) * len(self.facets)
        ineqs = list(zip(self.facets, shifts))
        pts = enumerate_slice(ineqs, [(self._lat_grading, k)])
        return sorted(self.group.point(c) for c in pts)

    def interior_slice(self, k: int) -> list[Vector]:
        return self.lattice_slice(k, (1,) * len(self.facets))

    def elements(self, k: int) -> list[Vector]:
        """Elements of S of degree k, sorted."""
        pts = self.lattice_slice(k)
        if self.is_normal():
            return pts
        return [p for p in pts if self.contains(p)]

    # -- membership ---------------------------------------------------------

    def contains(self, v: Sequence[int]) -> bool:
        v = tuple(v)
        if len(v) != self.ambient:
            raise DimensionError(f"vector of length {len(v)} in Z^{self.ambient}")
        c = self.group.coordinates(v)
        if c is None:
            return False
        if any(dot(y, c) < 0 for y in self.facets):
            return False
        if not any(c):
            return True
        if self._parent is not None:
            parent, k, u = self._parent
            return parent.contains(_veronese_lift(v, self.grading, k, u))
        if self._normal:
            return True
        with self._lock:
            return self._search(c)

    __contains__ = contains

    def _search(self, target: Vector) -> bool:
        # iterative depth-first search over target - (sums of generators)
        memo = self._memo
        if target in memo:
            return memo[target]
        gens = [(g, tuple(dot(y, g) for y in self.facets)) for g in self._lat_gens]
        gens.sort(key=lambda t: -dot(self._lat_grading, t[0]))

        def children(node, vals):
            for g, gv in gens:
                cv = tuple(a - b for a, b in zip(vals, gv))
                if min(cv) < 0:
                    continue
                yield tuple(a - b for a, b in zip(node, g)), cv

        stack = [(target, children(target, tuple(dot(y, target) for y in self.facets)))]
        last = None
        while stack:
            node, it = stack[-1]
            if last is True:
                memo[node] = True
                stack.pop()
                continue
            last = None
            pushed = False
            for child, cv in it:
                if not any(child):
                    last = True
                    break
                r = memo.get(child)
                if r is True:
                    last = True
                    break
                if r is False:
                    continue
                stack.append((child, children(child, cv)))
                pushed = True
                break
            if last is True:
                memo[node] = True
                stack.pop()
            elif not pushed:
                memo[node] = False
                stack.pop()
                last = False
        return memo[target]

    # -- cone structure -----------------------------------------------------

    def _extremal_flags(self) -> tuple[bool, ...]:
        flags = []
        for c in self._lat_gens:
            tight = [y for y in self.facets if dot(y, c) == 0]
            flags.append((rational_rank(tight) if tight else 0) == self.rank - 1)
        return tuple(flags)

    def extremal_generators(self) -> list[Vector]:
        """The least-degree generator on each extreme ray of the cone."""
        by_ray: dict[frozenset, Vector] = {}
        for g, c, flag in zip(self.generators, self._lat_gens, self.extremal_flags):
            if not flag:
                continue
            key = frozenset(i for i, y in enumerate(self.facets) if dot(y, c) == 0)
            if key not in by_ray or self.degree(g) < self.degree(by_ray[key]):
                by_ray[key] = g
        return sorted(by_ray.values())

    def ray_keys(self) -> dict[frozenset, Vector]:
        """Extreme rays, keyed by the set of facet indices containing them."""
        out = {}
        for e in self.extremal_generators():
            c = self.group.coordinates(e)
            out[frozenset(i for i, y in enumerate(self.facets) if dot(y, c) == 0)] = e
        return out

    def degree_one_generators(self) -> list[Vector]:
        return [g for g, d in zip(self.generators, self.degrees) if d == 1]

    def is_normal(self) -> bool:
        """Whether S equals cone(S) intersected with ZS."""
        if self._normal is None:
            # the Hilbert basis of cone and ZS lies below the sum of the r largest degrees
            bound = sum(sorted(self.degrees, reverse=True)[: self.rank])
            self._normal = False
            ok = all(self.contains(p) for k in range(1, bound + 1) for p in self.lattice_slice(k))
            self._normal = ok
        return self._normal

    # -- module structure over the degree-one part ----------------------------

    def degree_one_subsemigroup(self) -> "AffineSemigroup":
        ones = self.degree_one_generators()
        if not ones:
            raise NotSemiStandardError("no generators of degree one")
        return AffineSemigroup(ones, self.grading)


def _dual_rays(lat_gens: list[Vector]) -> tuple[Vector, ...]:
    if not lat_gens or not lat_gens[0]:
        return ()
    rays = cone_extreme_rays(lat_gens)
    return tuple(sorted(r for r, _ in rays))


def build_semigroup(
    raw_generators: Iterable[Sequence[int]],
    grading=None,
    *,
    assume_cm: bool = False,
) -> AffineSemigroup:
    """Minimal generating set, cone data and flags of the semigroup spanned by the input."""
    raw = [tuple(int(x) for x in g) for g in raw_generators]
    if not raw:
        raise ValueError("empty generator list")
    n = _common_dim(raw)
    w = _grading_vector(grading, n)
    uniq = sorted(set(raw))
    if any(not any(g) for g in uniq):
        raise GradingError("the zero vector is not a valid generator")
    # pointedness is checked on the full list before degrees are inspected
    lat = hnf_lattice(uniq)
    lat_gens = [lat.coordinates(g) for g in uniq]
    facets = _dual_rays(lat_gens)
    if (rational_rank(list(facets)) if facets else 0) != lat.rank:
        raise NotPointedError("cone over the generators contains a line")
    degs = {g: dot(w, g) for g in uniq}
    bad = [g for g in uniq if degs[g] < 1]
    if bad:
        raise GradingError(f"generators of non-positive degree: {bad}")
    kept: list[Vector] = []
    for g in sorted(uniq, key=lambda g: (degs[g], g)):
        lower = [h for h in kept if degs[h] < degs[g]]
        if lower and AffineSemigroup(lower, w).contains(g):
            continue
        kept.append(g)
    return AffineSemigroup(kept, w, assume_cm=assume_cm)


def membership(S: AffineSemigroup, v: Sequence[int]) -> bool:
    return S.contains(v)


def extremal_generators(S: AffineSemigroup) -> list[Vector]:
    return S.extremal_generators()


# ---------------------------------------------------------------------------
# Veronese subsemigroups


def unit_vector_for(w: Vector) -> Vector:
    """An integer vector u with w . u = 1."""
    for i in range(len(w) - 1, -1, -1):
        if abs(w[i]) == 1:
            return tuple(w[i] if j == i else 0 for j in range(len(w)))
    coeffs = [0] * len(w)
    g = 0
    for i, wi in enumerate(w):
        x, y, g2 = xgcd(g, wi)
        coeffs = [c * x for c in coeffs]
        coeffs[i] = y
        g = g2
    if g != 1:
        raise GradingError("grading functional is not primitive")
    return tuple(coeffs)


def veronese_map(x: Sequence[int], w: Vector, k: int, u: Vector) -> Vector:
    """Regrade an element of degree divisible by k so its degree is divided by k."""
    d = dot(w, x)
    if d % k:
        raise ValueError(f"degree {d} is not divisible by {k}")
    return tuple(a - (d - d // k) * b for a, b in zip(x, u))


def _veronese_lift(x: Sequence[int], w: Vector, k: int, u: Vector) -> Vector:
    d = dot(w, x)
    return tuple(a + (k - 1) * d * b for a, b in zip(x, u))


def veronese_semigroup(S: AffineSemigroup, k: int) -> AffineSemigroup:
    """The k-th Veronese subsemigroup, regraded so its generators keep the grading functional."""
    if k < 1:
        raise ValueError("Veronese index must be positive")
    if k == 1:
        return S
    if not S.semi_standard:
        raise NotSemiStandardError("Veronese construction needs a semi-standard graded semigroup")
    _, rt = module_generators_over_degree_one(S)
    # an element of degree jk >= rt + k splits off k degree-one generators
    top = max(k, rt + k - 1)
    u = unit_vector_for(S.grading)
    kept: list[Vector] = []
    for j in range(1, top // k + 1):
        # elements of one degree are never sums of each other
        sub = AffineSemigroup(kept, S.grading) if kept else None
        kept.extend(x for x in S.elements(j * k) if sub is None or not sub.contains(x))
    gens = [veronese_map(x, S.grading, k, u) for x in kept]
    return AffineSemigroup(gens, S.grading, normal=True if S._normal else None,
                           assume_cm=S.assume_cm, parent=(S, k, u))


# ---------------------------------------------------------------------------
# Module generators over the subsemigroup of degree-one generators


def module_generators_over_degree_one(S: AffineSemigroup, window: int | None = None) -> tuple[list[Vector], int]:
    """Minimal m_i with S the union of m_i + D, D generated by the degree-one generators.

    Degrees are scanned until ``window`` consecutive degrees add nothing
    (default: the largest generator degree); the candidate set is then
    certified by checking that it is closed under adding every generator.
    """
    if S._module_gens is not None:
        return list(S._module_gens[0]), S._module_gens[1]
    if not S.semi_standard:
        raise NotSemiStandardError("semigroup is not semi-standard graded")
    D = S.degree_one_subsemigroup()
    ones = D.generators
    W = window or max(S.degrees)
    found: list[Vector] = [S.zero()]
    k, quiet = 1, 0
    while True:
        new = [x for x in S.elements(k) if not any(S.contains(vsub(x, e)) for e in ones)]
        found.extend(new)
        quiet = 0 if new else quiet + 1
        if quiet >= W and _certify(S, D, found):
            break
        if quiet >= 4 * W + 50:
            raise ClosureError(f"module generator scan did not close by degree {k}")
        k += 1
    found.sort(key=lambda x: (S.degree(x), x))
    rt = max(S.degree(x) for x in found)
    S._module_gens = (tuple(found), rt)
    return list(found), rt


def _certify(S: AffineSemigroup, D: AffineSemigroup, M: list[Vector]) -> bool:
    higher = [g for g, d in zip(S.generators, S.degrees) if d > 1]
    for m in M:
        for g in higher:
            x = tuple(a + b for a, b in zip(m, g))
            if not any(D.contains(vsub(x, m2)) for m2 in M):
                return False
    return True


# ---------------------------------------------------------------------------
# Hilbert data


@dataclass(frozen=True)
class HilbertData:
    dim: int
    h_vector: tuple[int, ...]
    socle_degree: int
    a_invariant: int
    multiplicity: int
    embdim: int
    minimal_multiplicity: bool
    assume_cm: bool


def hilbert_function(S: AffineSemigroup, k: int) -> int:
    return len(S.elements(k))


def hilbert_data(S: AffineSemigroup, assume_cm: bool | None = None, max_depth: int = 400) -> HilbertData:
    """h-vector of the Hilbert series numerator over (1 - t)^dim."""
    if not S.semi_standard:
        raise NotSemiStandardError("Hilbert data needs a semi-standard graded semigroup")
    if assume_cm is None:
        assume_cm = S.assume_cm
    d = S.rank
    _, rt = module_generators_over_degree_one(S)
    hf: list[int] = []
    h: list[int] = []
    zeros = 0
    i = 0
    while True:
        hf.append(hilbert_function(S, i))
        hi = sum((-1) ** j * math.comb(d, j) * hf[i - j] for j in range(0, min(d, i) + 1))
        h.append(hi)
        zeros = zeros + 1 if hi == 0 else 0
        if zeros >= d + 1 and i >= rt + d:
            break
        i += 1
        if i > max_depth:
            raise ClosureError(f"h-vector did not terminate by degree {max_depth}")
    while h and h[-1] == 0:
        h.pop()
    if assume_cm and any(x < 0 for x in h):
        raise AssertionError(f"negative h-vector entry for a ring declared Cohen-Macaulay: {h}")
    s = len(h) - 1
    e = sum(h)
    embdim = len(S.generators)
    return HilbertData(d, tuple(h), s, s - d, e, embdim, e == embdim - d + 1, assume_cm)
