"""Monomial fractional ideals over an affine semigroup, their inverses and traces.

A graded monomial fractional ideal J is stored by finitely many exponent
vectors in ZS; its elements are the points g + S for g a generator. The trace
is tr(J) = J J^{-1}, and every verdict is answered by an exact finite search:
an element of J^{-1} in degree j can only pair with a generator g to land
below a target m when -indeg(J) <= j <= deg m - deg g.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .lattice import Vector, dot, vadd, vsub
from .polytope import polyhedron_vertices
from .semigroup import (
    AffineSemigroup,
    ClosureError,
    NotSemiStandardError,
    hilbert_data,
    module_generators_over_degree_one,
    unit_vector_for,
    veronese_map,
    veronese_semigroup,
)


class ModuleError(ValueError):
    pass


class MonomialModule:
    """Finitely generated monomial fractional ideal ``union(g + S)``."""

    def __init__(self, ambient: AffineSemigroup, gens: Sequence[Vector], kind: str = "ideal", provenance: str = ""):
        self.ambient = ambient
        self.gens: tuple[Vector, ...] = tuple(sorted(gens))
        if not self.gens:
            raise ModuleError("a fractional ideal needs at least one generator")
        self.kind = kind
        self.provenance = provenance
        degs = [ambient.degree(g) for g in self.gens]
        self.indeg = min(degs)
        self.rt = max(degs)
        self._inverse_slices: dict[int, tuple[Vector, ...]] = {}

    def __repr__(self) -> str:
        return f"MonomialModule({list(self.gens)}, kind={self.kind!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, MonomialModule) and self.ambient == other.ambient and self.gens == other.gens

    def __hash__(self) -> int:
        return hash((self.ambient, self.gens))

    def contains(self, x: Sequence[int]) -> bool:
        x = tuple(x)
        S = self.ambient
        return any(S.contains(vsub(x, g)) for g in self.gens)

    __contains__ = contains

    def degree_slice(self, k: int) -> list[Vector]:
        """Elements of J of degree k."""
        S = self.ambient
        out = set()
        for g in self.gens:
            j = k - S.degree(g)
            if j >= 0:
                out.update(vadd(g, s) for s in S.elements(j))
        return sorted(out)

    def is_level(self) -> bool:
        return self.indeg == self.rt


def _irredundant(S: AffineSemigroup, gens: Iterable[Vector]) -> list[Vector]:
    gens = sorted(set(gens))
    return [g for g in gens if not any(h != g and S.contains(vsub(g, h)) for h in gens)]


def validate_module(ambient: AffineSemigroup, raw_gens: Iterable[Sequence], kind: str = "ideal", provenance: str = "") -> MonomialModule:
    """Check generators lie in ZS and drop redundant ones."""
    gens = []
    for g in raw_gens:
        if any(isinstance(x, Fraction) and x.denominator != 1 for x in g) or any(isinstance(x, float) for x in g):
            raise ModuleError(f"generator {g} is not a lattice point")
        v = tuple(int(x) for x in g)
        if len(v) != ambient.ambient:
            raise ModuleError(f"generator {v} has the wrong dimension")
        if not ambient.in_group(v):
            raise ModuleError(f"generator {v} is not in the group generated by the semigroup")
        gens.append(v)
    return MonomialModule(ambient, _irredundant(ambient, gens), kind, provenance)


def unit_ideal(S: AffineSemigroup) -> MonomialModule:
    return MonomialModule(S, [S.zero()])


def maximal_ideal(S: AffineSemigroup) -> MonomialModule:
    return MonomialModule(S, list(S.generators))


# ---------------------------------------------------------------------------
# Inverses


def inverse_slice(J: MonomialModule, k: int) -> list[Vector]:
    """Degree-k part of J^{-1} = {a : a + g in S for every generator g}."""
    cached = J._inverse_slices.get(k)
    if cached is not None:
        return list(cached)
    S = J.ambient
    out: list[Vector] = []
    if k >= -J.indeg:
        vals = [S.facet_values(g) for g in J.gens]
        shifts = tuple(-min(v[i] for v in vals) for i in range(len(S.facets)))
        cand = S.lattice_slice(k, shifts)
        if S.is_normal():
            out = cand
        else:
            out = [a for a in cand if all(S.contains(vadd(a, g)) for g in J.gens)]
    J._inverse_slices[k] = tuple(out)
    return out


def _in_inverse(J: MonomialModule, a: Vector) -> bool:
    S = J.ambient
    return all(S.contains(vadd(a, g)) for g in J.gens)


def polyhedral_module(S: AffineSemigroup, shifts: Sequence[int], kind: str = "ideal") -> MonomialModule:
    """Minimal generators of ``{a in ZS : y_F(a) >= shifts[F]}`` over a normal S.

    Q = conv(V) + cone(S), so a minimal generator has degree below the largest
    vertex degree plus the sum of the rank-many largest generator degrees.
    """
    if not S.is_normal():
        raise ModuleError("polyhedral description of a module needs a normal semigroup")
    verts, _ = polyhedron_vertices(list(zip(S.facets, shifts)))
    wl = S._lat_grading
    vdeg = [sum(Fraction(a) * b for a, b in zip(wl, v)) for v in verts]
    lo = math.ceil(min(vdeg))
    hi = math.floor(max(vdeg)) + sum(sorted(S.degrees, reverse=True)[: S.rank])
    shifts = tuple(shifts)

    def inside(x):
        vals = S.facet_values(x)
        return vals is not None and all(v >= s for v, s in zip(vals, shifts))

    gens: list[Vector] = []
    for k in range(lo, hi + 1):
        for x in S.lattice_slice(k, shifts):
            if not any(inside(vsub(x, g)) for g in S.generators):
                gens.append(x)
    return MonomialModule(S, gens, kind)


def inverse_module(J: MonomialModule, window: int | None = None) -> MonomialModule:
    """Minimal generators of J^{-1}.

    Exact for normal ambient semigroups; otherwise degrees are scanned until
    a window of consecutive degrees yields nothing new and a second window
    confirms it.
    """
    S = J.ambient
    if S.is_normal():
        vals = [S.facet_values(g) for g in J.gens]
        shifts = tuple(-min(v[i] for v in vals) for i in range(len(S.facets)))
        return polyhedral_module(S, shifts, "inverse")
    W = window or max(max(S.degrees), J.rt - J.indeg + 1)
    gens: list[Vector] = []
    k, quiet = -J.indeg, 0
    while quiet < 2 * W:
        new = [a for a in inverse_slice(J, k) if not any(_in_inverse(J, vsub(a, g)) for g in S.generators)]
        gens.extend(new)
        quiet = 0 if new else quiet + 1
        k += 1
        if k > -J.indeg + 50 * W + 200:
            raise ClosureError("inverse module scan did not close")
    if not gens:
        raise ModuleError("the inverse of a nonzero fractional ideal cannot be zero")
    return MonomialModule(S, gens, "inverse")


def product_module(J: MonomialModule, K: MonomialModule) -> MonomialModule:
    S = J.ambient
    return MonomialModule(S, _irredundant(S, (vadd(a, b) for a in J.gens for b in K.gens)), "ideal")


def trace_ideal(J: MonomialModule) -> MonomialModule:
    """tr(J) = J J^{-1} with its minimal generators."""
    T = product_module(J, inverse_module(J))
    T.kind = "trace"
    return T


# ---------------------------------------------------------------------------
# Trace membership and verdicts


def trace_membership(m: Sequence[int], J: MonomialModule) -> bool:
    m = tuple(m)
    S = J.ambient
    if not S.contains(m):
        return False
    dm = S.degree(m)
    for g in J.gens:
        rest = vsub(m, g)
        for j in range(-J.indeg, dm - S.degree(g) + 1):
            for a in inverse_slice(J, j):
                if S.contains(vsub(rest, a)):
                    return True
    return False


def is_gorenstein(J_omega: MonomialModule) -> bool:
    principal = len(J_omega.gens) == 1
    if principal != trace_membership(J_omega.ambient.zero(), J_omega):
        raise AssertionError("principal canonical module should have unit trace and conversely")
    return principal


def is_nearly_gorenstein(S: AffineSemigroup, J_omega: MonomialModule) -> tuple[bool, list[Vector]]:
    missing = [g for g in S.generators if not trace_membership(g, J_omega)]
    return not missing, missing


def trace_degree_one(S: AffineSemigroup, J_omega: MonomialModule) -> list[Vector]:
    return [x for x in S.elements(1) if trace_membership(x, J_omega)]


def is_m_primary(S: AffineSemigroup, gens: Sequence[Vector]) -> bool:
    """A monomial ideal of S is primary to the maximal ideal iff it meets every extreme ray."""
    for key in S.ray_keys():
        if not any(_on_ray(S, g, key) for g in gens):
            return False
    return True


def _on_ray(S: AffineSemigroup, x: Vector, key: frozenset) -> bool:
    vals = S.facet_values(x)
    return vals is not None and all(vals[i] == 0 for i in key)


def satisfies_natural(S: AffineSemigroup, J_omega: MonomialModule) -> tuple[bool, list[Vector]]:
    """Property that tr(omega)_1 R has radical containing the maximal ideal.

    Decided from the definition: the ideal generated by the degree-one part of
    the trace must meet every extreme ray. The list of extremal generators
    missing from the trace is returned as witnesses.
    """
    if not S.semi_standard:
        raise NotSemiStandardError("property needs a semi-standard graded semigroup")
    t1 = trace_degree_one(S, J_omega)
    verdict = bool(t1) and is_m_primary(S, t1)
    missing = [e for e in S.extremal_generators() if e not in t1]
    if verdict != (not missing):
        raise AssertionError("degree-one trace is m-primary exactly when it contains every extremal generator")
    return verdict, missing


def in_face_localization(S: AffineSemigroup, x: Sequence[int], key: frozenset) -> bool:
    """Whether x lies in S + Z(S on the ray cut out by the facets in ``key``)."""
    c = S.lattice_coords(x)
    if c is None:
        return False
    psi = [sum(S.facets[i][j] for i in key) for j in range(S.rank)]
    target = dot(psi, c)
    if target < 0:
        return False
    off, on = [], []
    for g in S._lat_gens:
        (off if dot(psi, g) > 0 else on).append(g)
    ray_lattice = _ray_lattice(on, S.rank)
    off.sort(key=lambda g: -dot(psi, g))
    weights = [dot(psi, g) for g in off]

    def rec(i: int, budget: int, rem: tuple) -> bool:
        if budget == 0:
            return _in_ray_lattice(rem, ray_lattice)
        if i == len(off):
            return False
        g, w = off[i], weights[i]
        top = budget // w
        for t in range(top, -1, -1):
            nxt = tuple(a - t * b for a, b in zip(rem, g))
            if rec(i + 1, budget - t * w, nxt):
                return True
        return False

    return rec(0, target, tuple(c))


def _ray_lattice(on: list[Vector], r: int) -> tuple[Vector, int] | None:
    if not on:
        return None
    prim = on[0]
    g = math.gcd(*prim)
    prim = tuple(x // g for x in prim)
    mults = []
    for v in on:
        idx = next(i for i, x in enumerate(prim) if x)
        mults.append(v[idx] // prim[idx])
    return prim, math.gcd(*mults)


def _in_ray_lattice(v: tuple, lat) -> bool:
    if not any(v):
        return True
    if lat is None:
        return False
    prim, step = lat
    idx = next(i for i, x in enumerate(prim) if x)
    if v[idx] % prim[idx]:
        return False
    t = v[idx] // prim[idx]
    return all(a == t * b for a, b in zip(v, prim)) and t % step == 0


@dataclass
class PuncturedResult:
    verdict: str  # "true" | "false" | "unknown"
    powers: dict = field(default_factory=dict)  # extremal generator -> least j with j e in tr, or None
    failing_rays: list = field(default_factory=list)


def punctured_gorenstein(S: AffineSemigroup, J_omega: MonomialModule, power_bound: int = 32) -> PuncturedResult:
    """Gorenstein on the punctured spectrum: tr(omega) is primary to the maximal ideal.

    For each extreme ray the trace meets the ray exactly when omega becomes
    principal after inverting the ray, i.e. some generator g has
    g' - g in S + Z(S on the ray) for every generator g'. Powers of the
    extremal generator inside the trace are searched up to ``power_bound`` as
    explicit witnesses.
    """
    powers: dict = {}
    failing = []
    for key, e in sorted(S.ray_keys().items(), key=lambda kv: kv[1]):
        meets = any(all(in_face_localization(S, vsub(h, g), key) for h in J_omega.gens) for g in J_omega.gens)
        witness = None
        if meets:
            for j in range(1, power_bound + 1):
                if trace_membership(tuple(j * x for x in e), J_omega):
                    witness = j
                    break
        powers[e] = witness
        if not meets:
            failing.append(e)
    return PuncturedResult("false" if failing else "true", powers, failing)


# ---------------------------------------------------------------------------
# Degree data, Veronese modules, Artinian quotients


def module_stats(J_omega: MonomialModule) -> tuple[int, int]:
    """(a-invariant, rt) of a canonical module: a = -indeg(omega)."""
    return -J_omega.indeg, J_omega.rt


def veronese_module(J: MonomialModule, k: int, Sk: AffineSemigroup | None = None) -> MonomialModule:
    """The k-th Veronese module {x in J : k | deg x}, regraded over the Veronese subsemigroup.

    A generator x = g + m + d_1 + ... + d_t (d_i of degree one) with t >= k
    is not minimal, so generators have degree at most rt(J) + rt(S) + k - 1.
    """
    S = J.ambient
    if k == 1:
        return J
    if Sk is None:
        Sk = veronese_semigroup(S, k)
    _, rtS = module_generators_over_degree_one(S)
    u = unit_vector_for(S.grading)
    top = J.rt + rtS + k - 1
    found: list[Vector] = []
    for i in range(-((-J.indeg) // k), top // k + 1):
        level = [x for x in J.degree_slice(i * k) if not any(S.contains(vsub(x, y)) for y in found)]
        found.extend(level)
    gens = [veronese_map(x, S.grading, k, u) for x in found]
    return validate_module(Sk, gens, J.kind, f"Veronese module of index {k}")


def ideal_contains(S: AffineSemigroup, gens: Sequence[Vector], x: Vector) -> bool:
    return any(S.contains(vsub(x, g)) for g in gens)


def socle_of_artinian_quotient(S: AffineSemigroup, I: MonomialModule | Sequence[Vector]) -> int:
    """Top nonzero degree of k[S]/I for an m-primary monomial ideal I.

    Once all of S in degrees K .. K + rt_S lies in I, every higher degree does
    too, because S is the union of m_i + D with deg m_i <= rt_S.
    """
    gens = list(I.gens) if isinstance(I, MonomialModule) else [tuple(g) for g in I]
    if not all(S.contains(g) for g in gens):
        raise ModuleError("ideal generators must lie in the semigroup")
    if not is_m_primary(S, gens):
        raise ModuleError("ideal is not primary to the maximal ideal")
    _, rtS = module_generators_over_degree_one(S)
    top, covered, k = -1, 0, 0
    while covered < rtS + 1:
        if all(ideal_contains(S, gens, x) for x in S.elements(k)):
            covered += 1
        else:
            covered, top = 0, k
        k += 1
    return top


# ---------------------------------------------------------------------------
# Duality check for canonical modules


def duality_validate(S: AffineSemigroup, J_omega: MonomialModule, depth: int) -> bool:
    """Compare the Hilbert function of omega with t^d h(1/t) / (1 - t)^d.

    Degrees below ``depth`` are compared; the series of the canonical module
    of a Cohen-Macaulay domain is determined by the h-vector of S.
    """
    hd = hilbert_data(S)
    d, h = hd.dim, hd.h_vector
    num = {d - i: hi for i, hi in enumerate(h)}
    lo = min(min(num), J_omega.indeg)
    for n in range(lo, depth):
        expected = sum(c * math.comb(n - e + d - 1, d - 1) for e, c in num.items() if n >= e)
        if len(J_omega.degree_slice(n)) != expected:
            return False
    return True


# ---------------------------------------------------------------------------
# Veronese thresholds


@dataclass
class Thresholds:
    standard_threshold: int | None
    k_R: int | None
    k_R_minimal: int | None
    literal_rt: int
    b_used: int
    a_invariant: int
    rt_omega: int
    socle_b: int | None
    notes: list[str]


def ng_thresholds(S: AffineSemigroup, J_omega: MonomialModule, stated_rt: int | None = None) -> Thresholds:
    """Veronese indices from which nearly Gorensteinness is guaranteed.

    For standard graded S with the degree-one trace m-primary, every k above
    s(R / tr(omega)_1 R) works. For semi-standard S, with b = rt over the
    degree-one part, j_R is the least j with
    b j >= max(|a|, rt(omega), (s(R^(b) / tr_1) + 1) b) and k_R_minimal = b j_R.
    ``k_R`` is b * max(|a|, rt(omega), s + 1), also a valid threshold, which
    is at least k_R_minimal. ``stated_rt`` substitutes an externally asserted
    value for b and is reported alongside the computed one.
    """
    a, rt_omega = module_stats(J_omega)
    _, literal_rt = module_generators_over_degree_one(S)
    notes: list[str] = []
    natural, _ = satisfies_natural(S, J_omega)
    if not natural:
        return Thresholds(None, None, None, literal_rt, literal_rt, a, rt_omega, None,
                          ["degree-one trace is not m-primary; no threshold"])
    if all(d == 1 for d in S.degrees):
        s = socle_of_artinian_quotient(S, trace_degree_one(S, J_omega))
        return Thresholds(s + 1, s + 1, s + 1, 0, 1, a, rt_omega, s, notes)
    b = literal_rt if stated_rt is None else stated_rt
    if stated_rt is not None and stated_rt != literal_rt:
        notes.append(f"stated rt {stated_rt} differs from computed rt {literal_rt}")
    Sb = veronese_semigroup(S, b)
    if not all(d == 1 for d in Sb.degrees):
        notes.append(f"Veronese of index {b} is not standard graded")
    wb = veronese_module(J_omega, b, Sb)
    s = socle_of_artinian_quotient(Sb, trace_degree_one(Sb, wb))
    need = max(abs(a), rt_omega, (s + 1) * b)
    j_r = -(-need // b)
    k_min = b * j_r
    k_r = b * max(abs(a), rt_omega, s + 1)
    return Thresholds(None, k_r, k_min, literal_rt, b, a, rt_omega, s, notes)


# ---------------------------------------------------------------------------
# Property report


@dataclass
class PropertyReport:
    gorenstein: bool
    nearly_gorenstein: bool
    natural: bool | None
    punctured_gorenstein: str
    minimal_multiplicity: bool
    level: bool
    h_vector: tuple[int, ...]
    a_invariant: int
    dim: int
    assume_cm: bool
    witnesses: dict = field(default_factory=dict)

    def __post_init__(self):
        chain = [self.gorenstein, self.nearly_gorenstein]
        if self.natural is not None:
            chain.append(self.natural)
        chain.append(self.punctured_gorenstein == "true")
        for x, y in zip(chain, chain[1:]):
            if x and not y:
                raise AssertionError(f"verdict chain broken: {chain}")

    def to_json(self) -> dict:
        return {
            "gorenstein": self.gorenstein,
            "nearly_gorenstein": self.nearly_gorenstein,
            "natural": self.natural,
            "punctured_gorenstein": self.punctured_gorenstein,
            "minimal_multiplicity": self.minimal_multiplicity,
            "level": self.level,
            "h_vector": list(self.h_vector),
            "a_invariant": self.a_invariant,
            "dim": self.dim,
            "assume_cm": self.assume_cm,
            "witnesses": {k: [list(v) for v in vs] for k, vs in self.witnesses.items()},
        }


def property_report(S: AffineSemigroup, J_omega: MonomialModule, power_bound: int = 32) -> PropertyReport:
    gor = is_gorenstein(J_omega)
    ng, missing_ng = is_nearly_gorenstein(S, J_omega)
    nat, missing_nat = satisfies_natural(S, J_omega) if S.semi_standard else (None, [])
    punc = punctured_gorenstein(S, J_omega, power_bound)
    hd = hilbert_data(S)
    if nat and hd.assume_cm and gor != (hd.h_vector[-1] == 1):
        raise AssertionError("under the degree-one trace condition Gorenstein should match h_s = 1")
    if hd.assume_cm and hd.minimal_multiplicity and nat is not None and nat != ng:
        raise AssertionError("minimal multiplicity rings should have matching verdicts")
    return PropertyReport(
        gorenstein=gor,
        nearly_gorenstein=ng,
        natural=nat,
        punctured_gorenstein=punc.verdict,
        minimal_multiplicity=hd.minimal_multiplicity,
        level=J_omega.is_level(),
        h_vector=hd.h_vector,
        a_invariant=hd.a_invariant,
        dim=hd.dim,
        assume_cm=hd.assume_cm,
        witnesses={"not_in_trace": missing_ng, "extremal_not_in_trace": missing_nat,
                   "rays_outside_trace": punc.failing_rays},
    )
