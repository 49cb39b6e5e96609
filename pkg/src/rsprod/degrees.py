"""Attainable polynomial degrees in the span of {g^i f^j : 0 <= i,j < r}.

Two independent routes: a closed formula for the degree set, its sorted
enumeration, and the breakpoint dimensions; and a symbolic row-echelon
reduction of the expanded products, whose pivot degrees must coincide
with the formula.  The codec uses the reduced basis rows directly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import poly_mul, poly_trim
from .linearized import LinearizedPair

# row reduction is capped here; callers fall back to the formula beyond
REF_MAX_RN = 1 << 13


@dataclass(frozen=True)
class DegreeProfile:
    """Degree bookkeeping for one (n, r) parameter pair.

    partials[k-1] is the k-th smallest attainable degree; breakpoints
    holds (t, k_t, partial at k_t); intervals[t] is the t-th contiguous
    run of degrees.
    """

    n_frak: int
    r: int
    D: tuple[int, ...]
    partials: tuple[int, ...]
    breakpoints: tuple[tuple[int, int, int], ...]
    intervals: tuple[tuple[int, ...], ...]

    def partial(self, k: int) -> int:
        if not 1 <= k <= len(self.partials):
            raise ValueError(f"k must be in [1, {len(self.partials)}], got {k}")
        return self.partials[k - 1]

    @property
    def breakpoint_dims(self) -> tuple[int, ...]:
        return tuple(k for _, k, _ in self.breakpoints)


def degree_profile(n_frak: int, r: int) -> DegreeProfile:
    """Degrees, breakpoints and intervals for local length n and local
    dimension r, 1 <= r <= n."""
    if not 1 <= r <= n_frak:
        raise ValueError(f"need 1 <= r <= {n_frak}, got r={r}")
    intervals = []
    for t in range(2 * r - 1):
        top = r - 1 - (t + 1) // 2
        intervals.append(tuple(t * n_frak + ell for ell in range(top + 1)))
    d = tuple(sorted(x for iv in intervals for x in iv))
    if len(d) != r * r:
        raise AssertionError("degree set has wrong cardinality")
    breakpoints = []
    for t in range(2 * r - 1):
        k_t = (t + 1) * r - ((t + 1) // 2) * ((t + 2) // 2)
        deg_t = t * n_frak + r - 1 - (t + 1) // 2
        if d[k_t - 1] != deg_t:
            raise AssertionError("breakpoint formula disagrees with degree set")
        breakpoints.append((t, k_t, deg_t))
    return DegreeProfile(n_frak, r, d, d, tuple(breakpoints), tuple(intervals))


def _product_rows(pair: LinearizedPair, r: int) -> tuple[np.ndarray, int]:
    """Coefficient matrix of g^i f^j, one product per row, columns in
    descending degree order, rows sorted by descending degree then (i, j)."""
    ctx = pair.ctx
    n = pair.n_frak
    maxdeg = 2 * (r - 1) * n
    gx = pair.g.to_unipoly()
    fx = pair.f.to_unipoly()
    g_pows = [np.ones(1, dtype=np.int64)]
    f_pows = [np.ones(1, dtype=np.int64)]
    for _ in range(r - 1):
        g_pows.append(poly_mul(ctx, g_pows[-1], gx))
        f_pows.append(poly_mul(ctx, f_pows[-1], fx))
    order = sorted(
        ((i, j) for i in range(r) for j in range(r)), key=lambda ij: (-sum(ij), ij)
    )
    mat = np.zeros((r * r, maxdeg + 1), dtype=np.int64)
    for row, (i, j) in enumerate(order):
        p = poly_mul(ctx, g_pows[i], f_pows[j])
        mat[row, maxdeg - len(p) + 1 :] = p[::-1]
    return mat, maxdeg


def ref_basis(pair: LinearizedPair, r: int) -> list[np.ndarray]:
    """Row-echelon basis of the product span, ascending by degree.

    Deterministic policy: pivot is the highest remaining degree, rows are
    eliminated downward only, and every pivot row is normalized monic.
    Returned polynomials are trimmed coefficient arrays, lowest degree
    first, with pairwise distinct degrees.
    """
    if not 1 <= r <= pair.n_frak:
        raise ValueError(f"need 1 <= r <= {pair.n_frak}, got r={r}")
    if r * pair.n_frak > REF_MAX_RN:
        raise ValueError(
            f"row reduction capped at r*n <= {REF_MAX_RN}; use the degree formula"
        )
    ctx = pair.ctx
    mat, maxdeg = _product_rows(pair, r)
    nrows = mat.shape[0]
    pr = 0
    basis: list[np.ndarray] = []
    for col in range(maxdeg + 1):
        if pr == nrows:
            break
        nz = np.nonzero(mat[pr:, col])[0]
        if len(nz) == 0:
            continue
        row = pr + int(nz[0])
        if row != pr:
            mat[[pr, row]] = mat[[row, pr]]
        mat[pr] = ctx.mul_arr(mat[pr], ctx.inv(int(mat[pr, col])))
        below = pr + 1 + np.nonzero(mat[pr + 1 :, col])[0]
        if len(below):
            mat[below] ^= ctx.mul_arr(mat[below, col][:, None], mat[pr][None, :])
        basis.append(poly_trim(mat[pr][::-1]))
        pr += 1
    basis.reverse()
    return basis


def ref_degree_oracle(pair: LinearizedPair, r: int) -> tuple[int, ...]:
    """Pivot degrees of the row-echelon reduction, ascending."""
    return tuple(len(p) - 1 for p in ref_basis(pair, r))


def rank_check_B(pair: LinearizedPair, r: int) -> int:
    """Rank of the expanded product coefficient matrix (contract: r^2)."""
    return len(ref_basis(pair, r))
