"""Exact integer linear algebra and bounded lattice-point enumeration.

Vectors are plain tuples of Python ints. Nothing in this module uses floating
point; rational quantities are :class:`fractions.Fraction`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

Vector = tuple[int, ...]


class DimensionError(ValueError):
    """Vectors combined in one operation have different lengths."""


class UnboundedRegionError(ValueError):
    """A lattice-point enumeration was requested over an unbounded region."""


def as_vector(v: Iterable[int]) -> Vector:
    out = tuple(int(x) for x in v)
    if not out:
        raise DimensionError("vectors must have at least one coordinate")
    return out


def _common_dim(vectors: Sequence[Sequence[int]]) -> int:
    dims = {len(v) for v in vectors}
    if len(dims) != 1:
        raise DimensionError(f"mixed dimensions {sorted(dims)}")
    return dims.pop()


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def vadd(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vscale(c: int, a: Vector) -> Vector:
    return tuple(c * x for x in a)


def primitive(v: Sequence[int]) -> Vector:
    """Divide an integer vector by the gcd of its entries."""
    g = math.gcd(*v)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(x, y, g)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a - (a // b) * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -x0, -y0, -a
    return x0, y0, a


# ---------------------------------------------------------------------------
# Hermite normal form


def _echelon(rows: list[list[int]], ncols: int, track: list[list[int]] | None = None) -> list[list[int]]:
    """Unimodular row reduction to echelon form on the first ``ncols`` columns.

    ``track`` (if given) receives the same row operations. Rows are modified in
    place and returned in echelon order, zero rows last.
    """
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        # gcd-combine every row below r into row r at column c
        for i in range(r + 1, nrows):
            if rows[i][c] == 0:
                continue
            a, b = rows[r][c], rows[i][c]
            if a == 0:
                rows[r], rows[i] = rows[i], rows[r]
                if track is not None:
                    track[r], track[i] = track[i], track[r]
                continue
            x, y, g = xgcd(a, b)
            ag, bg = a // g, b // g
            ra, rb = rows[r], rows[i]
            rows[r] = [x * p + y * q for p, q in zip(ra, rb)]
            rows[i] = [-bg * p + ag * q for p, q in zip(ra, rb)]
            if track is not None:
                ta, tb = track[r], track[i]
                track[r] = [x * p + y * q for p, q in zip(ta, tb)]
                track[i] = [-bg * p + ag * q for p, q in zip(ta, tb)]
        if r < nrows and rows[r][c] != 0:
            if rows[r][c] < 0:
                rows[r] = [-p for p in rows[r]]
                if track is not None:
                    track[r] = [-p for p in track[r]]
            r += 1
            if r == nrows:
                break
    return rows


def hermite_rows(generators: Sequence[Sequence[int]]) -> tuple[Vector, ...]:
    """Row-style Hermite normal form of the integer span of ``generators``.

    Pivots are positive and every entry above a pivot lies in ``[0, pivot)``.
    Zero rows are dropped.
    """
    n = _common_dim(generators)
    rows = _echelon([list(g) for g in generators], n)
    rows = [row for row in rows if any(row)]
    pivots = [next(j for j, x in enumerate(row) if x) for row in rows]
    for i, (row, p) in enumerate(zip(rows, pivots)):
        for k in range(i):
            q = rows[k][p] // row[p]
            if q:
                rows[k] = [a - q * b for a, b in zip(rows[k], row)]
    return tuple(tuple(row) for row in rows)


@dataclass(frozen=True)
class IntegerLattice:
    """A sublattice of Z^n stored by its Hermite normal form basis."""

    basis: tuple[Vector, ...]
    dim: int

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(row) if x) for row in self.basis)

    def reduce(self, v: Sequence[int]) -> Vector:
        """Canonical representative of ``v`` modulo the lattice."""
        if len(v) != self.dim:
            raise DimensionError(f"vector of length {len(v)} in Z^{self.dim}")
        w = list(v)
        for row, p in zip(self.basis, self.pivots):
            q = w[p] // row[p]
            if q:
                w = [a - q * b for a, b in zip(w, row)]
        return tuple(w)

    def __contains__(self, v) -> bool:
        return not any(self.reduce(v))

    def coordinates(self, v: Sequence[int]) -> Vector | None:
        """Integer coefficients of ``v`` in the basis, or ``None`` if ``v`` is not in the lattice."""
        if len(v) != self.dim:
            raise DimensionError(f"vector of length {len(v)} in Z^{self.dim}")
        w = list(v)
        coeffs = []
        for row, p in zip(self.basis, self.pivots):
            q, r = divmod(w[p], row[p])
            if r:
                return None
            coeffs.append(q)
            if q:
                w = [a - q * b for a, b in zip(w, row)]
        if any(w):
            return None
        return tuple(coeffs)

    def point(self, coeffs: Sequence[int]) -> Vector:
        out = [0] * self.dim
        for c, row in zip(coeffs, self.basis):
            if c:
                out = [a + c * b for a, b in zip(out, row)]
        return tuple(out)

    def index_in_ambient(self) -> int | None:
        """``[Z^n : L]`` for full-rank lattices, else ``None``."""
        if self.rank != self.dim:
            return None
        return math.prod(row[p] for row, p in zip(self.basis, self.pivots))


def hnf_lattice(generators: Sequence[Sequence[int]]) -> IntegerLattice:
    if not generators:
        raise ValueError("hnf_lattice needs at least one generator")
    n = _common_dim(generators)
    return IntegerLattice(hermite_rows(generators), n)


def lattice_contains(lattice: IntegerLattice, v: Sequence[int]) -> bool:
    return v in lattice


def integer_kernel(rows: Sequence[Sequence[int]], n: int) -> tuple[Vector, ...]:
    """Basis of ``{y in Z^n : r . y = 0 for every r in rows}`` (HNF rows)."""
    if not rows:
        return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    m = len(rows)
    cols = [[rows[i][j] for i in range(m)] for j in range(n)]
    track = [[int(i == j) for j in range(n)] for i in range(n)]
    _echelon(cols, m, track)
    kernel = [track[i] for i in range(n) if not any(cols[i])]
    if not kernel:
        return ()
    return hermite_rows(kernel)


def rational_rank(rows: Sequence[Sequence[int]]) -> int:
    if not rows:
        return 0
    return len(hermite_rows(rows))


def solve_rational(rows: Sequence[Sequence[int]], target: Sequence[int]) -> list[Fraction] | None:
    """Coefficients ``c`` with ``sum c_i rows[i] == target``; ``None`` if impossible.

    ``rows`` must be linearly independent.
    """
    m, n = len(rows), len(target)
    # Gaussian elimination on the n x (m+1) system M^T c = target
    aug = [[Fraction(rows[i][j]) for i in range(m)] + [Fraction(target[j])] for j in range(n)]
    piv_cols = []
    r = 0
    for c in range(m):
        p = next((i for i in range(r, n) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    if any(aug[i][m] != 0 for i in range(r, n)):
        return None
    coeffs = [Fraction(0)] * m
    for i, c in enumerate(piv_cols):
        coeffs[c] = aug[i][m]
    return coeffs


# ---------------------------------------------------------------------------
# Lattice points of bounded polyhedra


@dataclass
class _Level:
    # constraints c * x_k + sum(prefix[j] * x_j) >= rhs with c != 0
    coef: list[int]
    prefix: list[tuple[int, ...]]
    rhs_forms: list[tuple[tuple[int, Fraction], ...]]


class _CompiledSystem:
    """Fourier-Motzkin projections for a fixed set of constraint normals.

    The projections depend only on the normals; right-hand sides are supplied
    per call, so dilated slices of one region reuse the same projections.
    """

    def __init__(self, ineqs: tuple[Vector, ...], eqs: tuple[Vector, ...], n: int):
        self.n = n
        self.n_ineq = len(ineqs)
        self.n_eq = len(eqs)
        self._reduce_equalities(eqs)
        self._substitute(ineqs)
        self._project()

    def _reduce_equalities(self, eqs):
        n = self.n
        # each row: coefficients over x (Fractions) plus a combination of eq rhs
        rows = [([Fraction(a) for a in e], {i: Fraction(1)}) for i, e in enumerate(eqs)]
        pivots: list[int] = []
        r = 0
        for c in range(n):
            p = next((i for i in range(r, len(rows)) if rows[i][0][c] != 0), None)
            if p is None:
                continue
            rows[r], rows[p] = rows[p], rows[r]
            pv = rows[r][0][c]
            coeffs = [x / pv for x in rows[r][0]]
            comb = {k: v / pv for k, v in rows[r][1].items()}
            rows[r] = (coeffs, comb)
            for i in range(len(rows)):
                if i != r and rows[i][0][c] != 0:
                    f = rows[i][0][c]
                    new_c = [x - f * y for x, y in zip(rows[i][0], coeffs)]
                    new_comb = dict(rows[i][1])
                    for k, v in comb.items():
                        new_comb[k] = new_comb.get(k, Fraction(0)) - f * v
                    rows[i] = (new_c, new_comb)
            pivots.append(c)
            r += 1
        # rows r.. have zero coefficients: their rhs combinations must vanish
        self.consistency = [rows[i][1] for i in range(r, len(rows))]
        self.pivots = pivots
        self.free = [c for c in range(n) if c not in pivots]
        # x_p = sum(comb_e * beq_e) - sum_f coeff_f * x_f
        self.pivot_forms = []
        for i, p in enumerate(pivots):
            coeffs, comb = rows[i]
            self.pivot_forms.append((p, comb, {f: coeffs[f] for f in self.free if coeffs[f] != 0}))

    def _substitute(self, ineqs):
        free_index = {f: k for k, f in enumerate(self.free)}
        self.base: list[tuple[tuple[int, ...], int, dict[int, Fraction]]] = []
        for i, a in enumerate(ineqs):
            normal = [Fraction(0)] * len(self.free)
            eq_part: dict[int, Fraction] = {}
            for f, k in free_index.items():
                normal[k] += a[f]
            for p, comb, coeffs in self.pivot_forms:
                if a[p] == 0:
                    continue
                for f, c in coeffs.items():
                    normal[free_index[f]] -= a[p] * c
                for e, v in comb.items():
                    eq_part[e] = eq_part.get(e, Fraction(0)) + a[p] * v
            scale = math.lcm(*(x.denominator for x in normal)) if normal else 1
            int_normal = tuple(int(x * scale) for x in normal)
            # rhs of the substituted row: scale * (b_i - sum eq_part_e * beq_e)
            self.base.append((int_normal, scale, eq_part))

    def _project(self):
        m = len(self.free)
        # derived constraints: (normal, multipliers over base rows)
        current = [(normal, ((i, Fraction(1)),)) for i, (normal, _, _) in enumerate(self.base)]
        self.constants = []
        self.levels: list[_Level] = [None] * m  # type: ignore[list-item]
        self.unbounded = False
        eliminated = 0
        for k in range(m - 1, -1, -1):
            pos, neg, rest = [], [], []
            for con in current:
                c = con[0][k]
                (pos if c > 0 else neg if c < 0 else rest).append(con)
            if not pos or not neg:
                self.unbounded = True
            level = _Level([], [], [])
            for normal, mult in pos + neg:
                level.coef.append(normal[k])
                level.prefix.append(normal[:k])
                level.rhs_forms.append(mult)
            self.levels[k] = level
            eliminated += 1
            derived = []
            seen_supports: list[frozenset] = []
            for n1, m1 in pos:
                for n2, m2 in neg:
                    support = frozenset(i for i, _ in m1) | frozenset(i for i, _ in m2)
                    if len(support) > eliminated + 1:
                        continue
                    p, q = n1[k], -n2[k]
                    normal = [q * a + p * b for a, b in zip(n1, n2)]
                    mult: dict[int, Fraction] = {}
                    for i, v in m1:
                        mult[i] = mult.get(i, Fraction(0)) + q * v
                    for i, v in m2:
                        mult[i] = mult.get(i, Fraction(0)) + p * v
                    g = math.gcd(*normal)
                    if g > 1:
                        normal = [a // g for a in normal]
                        mult = {i: v / g for i, v in mult.items()}
                    derived.append((tuple(normal[:k]) + (0,) * (m - k), tuple(sorted(mult.items())), support))
                    seen_supports.append(support)
            kept = []
            for normal, mult, support in derived:
                if any(s < support for s in seen_supports):
                    continue
                kept.append((normal, mult))
            # exact duplicates are common; drop them
            uniq = list(dict.fromkeys(kept))
            current = rest + uniq
            current = [c for c in current if not self._is_constant(c)]
        self.constants.extend(current)

    def _is_constant(self, con) -> bool:
        if any(con[0]):
            return False
        self.constants.append(con)
        return True

    def run(self, b: Sequence, beq: Sequence) -> list[Vector]:
        for comb in self.consistency:
            if sum(v * beq[e] for e, v in comb.items()) != 0:
                return []
        base_rhs = []
        for (normal, scale, eq_part), bi in zip(self.base, b):
            base_rhs.append(scale * (Fraction(bi) - sum(v * beq[e] for e, v in eq_part.items())))

        def rhs_of(mult) -> Fraction:
            return sum(v * base_rhs[i] for i, v in mult)

        for _, mult in self.constants:
            if rhs_of(mult) > 0:
                return []
        if self.unbounded:
            raise UnboundedRegionError("constraint system does not bound every coordinate")
        m = len(self.free)
        levels = []
        for lev in self.levels:
            levels.append([(c, pre, math.ceil(rhs_of(mult))) for c, pre, mult in zip(lev.coef, lev.prefix, lev.rhs_forms)])
        points: list[list[int]] = []
        x = [0] * m

        def dfs(k: int):
            lo, hi = None, None
            for c, pre, r in levels[k]:
                val = r - sum(a * xj for a, xj in zip(pre, x))
                if c > 0:
                    t = -((-val) // c)
                    if lo is None or t > lo:
                        lo = t
                else:
                    # c < 0: c*x >= val  <=>  x <= floor(val / c)
                    t = val // c
                    if hi is None or t < hi:
                        hi = t
            for v in range(lo, hi + 1):
                x[k] = v
                if k + 1 == m:
                    points.append(list(x))
                else:
                    dfs(k + 1)

        if m == 0:
            points.append([])
        else:
            dfs(0)
        out = []
        for free_vals in points:
            full: list[Fraction | int] = [0] * self.n
            for f, val in zip(self.free, free_vals):
                full[f] = val
            ok = True
            for p, comb, coeffs in self.pivot_forms:
                val = sum(v * beq[e] for e, v in comb.items()) - sum(c * full[f] for f, c in coeffs.items())
                if Fraction(val).denominator != 1:
                    ok = False
                    break
                full[p] = int(val)
            if ok:
                out.append(tuple(int(t) for t in full))
        return out


@lru_cache(maxsize=4096)
def _compile(ineqs: tuple[Vector, ...], eqs: tuple[Vector, ...], n: int) -> _CompiledSystem:
    return _CompiledSystem(ineqs, eqs, n)


def enumerate_slice(
    inequalities: Sequence[tuple[Sequence[int], Fraction | int]],
    equalities: Sequence[tuple[Sequence[int], Fraction | int]] = (),
) -> list[Vector]:
    """All lattice points with ``normal . x >= rhs`` and ``normal . x == rhs``.

    The region must be bounded; otherwise :class:`UnboundedRegionError` is
    raised (an empty region is never reported as unbounded). Output is sorted
    lexicographically and duplicate-free.
    """
    all_normals = [tuple(a) for a, _ in inequalities] + [tuple(a) for a, _ in equalities]
    if not all_normals:
        raise ValueError("enumerate_slice needs at least one constraint")
    n = _common_dim(all_normals)
    ineq_n = tuple(tuple(int(x) for x in a) for a, _ in inequalities)
    eq_n = tuple(tuple(int(x) for x in a) for a, _ in equalities)
    system = _compile(ineq_n, eq_n, n)
    pts = system.run([r for _, r in inequalities], [Fraction(r) for _, r in equalities])
    return sorted(set(pts))
