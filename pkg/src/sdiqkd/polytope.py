"""Exact H-representation of the convex hull of integer points.

Uses the double description method on the homogenised cone in pure Python
integers, so every facet comes out as a primitive integer inequality
``w . x <= c``. Lower-dimensional point sets are handled by projecting onto
coordinates that parametrise the affine hull.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

Vector = tuple[int, ...]


@dataclass(frozen=True)
class Inequality:
    """``sum(w[i] * x[i]) <= c`` with primitive integer coefficients."""

    w: Vector
    c: int

    def value(self, x) -> object:
        return sum(wi * xi for wi, xi in zip(self.w, x))

    def slack(self, x) -> object:
        return self.c - self.value(x)


def _primitive(v: Sequence[int]) -> Vector:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def row_echelon(rows: Sequence[Sequence]) -> tuple[int, list[int]]:
    """Exact rank and pivot columns of a rational matrix."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0, []
    ncols = len(m[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for i in range(rank + 1, len(m)):
            if m[i][col] != 0:
                f = m[i][col] / p
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(m):
            break
    return rank, pivots


def rank(rows) -> int:
    return row_echelon(rows)[0]


def affine_dimension(points: Sequence[Sequence[int]]) -> int:
    if not points:
        return -1
    p0 = points[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in points[1:]])


def _inverse_columns(mat: list[list[int]]) -> list[Vector]:
    """Columns of ``mat^-1`` scaled to primitive integer vectors."""
    n = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    cols = []
    for j in range(n):
        col = [aug[i][n + j] for i in range(n)]
        den = 1
        for x in col:
            den = den * x.denominator // gcd(den, x.denominator)
        cols.append(_primitive([int(x * den) for x in col]))
    return cols


def _cone_rays(gens: list[Vector]) -> list[Vector]:
    """Extreme rays of ``{h : g . h >= 0 for g in gens}`` (gens must span)."""
    dim = len(gens[0])
    basis, rest = [], []
    for i, g in enumerate(gens):
        if len(basis) < dim and rank([gens[j] for j in basis] + [g]) == len(basis) + 1:
            basis.append(i)
        else:
            rest.append(i)
    if len(basis) < dim:
        raise ValueError("generators do not span; cone is not pointed")

    rays = _inverse_columns([list(gens[i]) for i in basis])
    # zero set of ray j among processed constraints: every basis row except j
    zeros = []
    for j in range(dim):
        mask = 0
        for k, i in enumerate(basis):
            if k != j:
                mask |= 1 << i
        zeros.append(mask)
    need = dim - 2

    for i in rest:
        g = gens[i]
        vals = [_dot(g, r) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        zer = [k for k, v in enumerate(vals) if v == 0]
        new_rays = [rays[k] for k in pos] + [rays[k] for k in zer]
        new_zeros = [zeros[k] for k in pos] + [zeros[k] | (1 << i) for k in zer]
        for p in pos:
            zp = zeros[p]
            for n in neg:
                common = zp & zeros[n]
                if common.bit_count() < need:
                    continue
                adjacent = True
                for k in range(len(rays)):
                    if k != p and k != n and zeros[k] & common == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                r = tuple(vals[p] * a - vals[n] * b for a, b in zip(rays[n], rays[p]))
                new_rays.append(_primitive(r))
                new_zeros.append(common | (1 << i))
        rays, zeros = new_rays, new_zeros
    return rays


def facets(points: Sequence[Sequence[int]]) -> list[Inequality]:
    """Facet inequalities of ``conv(points)`` for integer points.

    For a polytope of full dimension the list is its unique irredundant
    H-representation. If the affine hull is a proper subspace, the facets are
    computed in a coordinate chart of the hull and returned with zero
    coefficients on the eliminated coordinates.
    """
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if not pts:
        return []
    n = len(pts[0])
    p0 = pts[0]
    k, pivots = row_echelon([[a - b for a, b in zip(p, p0)] for p in pts[1:]])
    if k == 0:
        return []
    chart = pivots if k < n else list(range(n))
    sub = [tuple(p[c] for c in chart) for p in pts]
    out = []
    for h in _cone_rays([(1,) + p for p in sub]):
        w = [0] * n
        for c, coef in zip(chart, h[1:]):
            w[c] = -coef
        out.append(Inequality(tuple(w), h[0]))
    return sorted(out, key=lambda f: (f.c, f.w))


def is_valid(ineq: Inequality, points) -> bool:
    return all(ineq.slack(p) >= 0 for p in points)


def tight_points(ineq: Inequality, points) -> list:
    return [p for p in points if ineq.slack(p) == 0]


def is_facet(ineq: Inequality, points) -> bool:
    """Valid, and tight on a set whose affine dimension is one less than the
    polytope's."""
    if not is_valid(ineq, points):
        return False
    tight = tight_points(ineq, points)
    return bool(tight) and affine_dimension(tight) == affine_dimension(list(points)) - 1
