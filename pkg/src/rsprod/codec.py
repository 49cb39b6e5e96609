"""Concrete code instances: echelon basis polynomials, generator matrices
over the evaluation grid, encoding, and the grid/flat coordinate maps.

A code instance of dimension k evaluates the k lowest-degree basis
polynomials of the product span on the pairwise-sum point set.  The flat
coordinate i*n + j corresponds to grid cell (i, j); grid rows live on the
Zg point set and grid columns on Zf.
"""

from __future__ import annotations

import csv
import functools
import io
import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .degrees import DegreeProfile, degree_profile, ref_basis
from .field import FieldCtx, poly_divmod, poly_eval, poly_eval_many, poly_from_roots
from .linearized import LinearizedPair


@dataclass
class CodeInstance:
    """Immutable-by-convention bundle for one constructed code."""

    pair: LinearizedPair
    r: int
    k: int
    profile: DegreeProfile
    basis_polys: tuple[np.ndarray, ...]
    G: np.ndarray

    @property
    def ctx(self) -> FieldCtx:
        return self.pair.ctx

    @property
    def n_frak(self) -> int:
        return self.pair.n_frak

    @property
    def length(self) -> int:
        return self.pair.n_frak ** 2

    @property
    def heavy_parities(self) -> int:
        return self.r * self.r - self.k


@dataclass
class GridWord:
    entries: np.ndarray  # n x n, entry (i, j) sits at flat index i*n + j


def build_code(pair: LinearizedPair, r: int, k: int) -> CodeInstance:
    """C_k: the k lowest-degree echelon basis polynomials evaluated on the
    grid; G[i][j] = basis_polys[i](eval_points[j])."""
    n = pair.n_frak
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= {n}, got r={r}")
    if not 1 <= k <= r * r:
        raise ValueError(f"need 1 <= k <= r^2 = {r * r}, got k={k}")
    profile = degree_profile(n, r)
    basis = ref_basis(pair, r)[:k]
    for i, p in enumerate(basis):
        if len(p) - 1 != profile.partial(i + 1):  # pragma: no cover
            raise AssertionError("echelon degrees disagree with the profile")
    pts = np.array(pair.eval_points, dtype=np.int64)
    g = np.zeros((k, n * n), dtype=np.int64)
    for i, p in enumerate(basis):
        g[i] = poly_eval_many(pair.ctx, p, pts)
    return CodeInstance(pair, r, k, profile, tuple(basis), g)


def encode(code: CodeInstance, msg: Sequence[int]) -> np.ndarray:
    if len(msg) != code.k:
        raise ValueError(f"message length must be {code.k}, got {len(msg)}")
    m = np.asarray(msg, dtype=np.int64)
    return np.bitwise_xor.reduce(code.ctx.mul_arr(code.G, m[:, None]), axis=0)


def relabel(pair: LinearizedPair, word) -> GridWord:
    """Flat word on the sum points -> n x n grid (coordinate beta+gamma
    becomes cell (beta index, gamma index))."""
    n = pair.n_frak
    w = np.asarray(word, dtype=np.int64)
    if w.shape != (n * n,):
        raise ValueError(f"word length must be {n * n}")
    return GridWord(w.reshape(n, n).copy())


def unrelabel(pair: LinearizedPair, gw: GridWord) -> np.ndarray:
    n = pair.n_frak
    if gw.entries.shape != (n, n):
        raise ValueError(f"grid shape must be {(n, n)}")
    return gw.entries.reshape(n * n).copy()


@functools.lru_cache(maxsize=32)
def _interp_matrix(ctx: FieldCtx, points: tuple[int, ...]) -> np.ndarray:
    """Lagrange interpolation as a matrix: coefficient vector (lowest
    degree first) = values @ L, built from barycentric weights."""
    ann = poly_from_roots(ctx, points)
    n = len(points)
    mat = np.zeros((n, n), dtype=np.int64)
    for m, x_m in enumerate(points):
        quot, rem = poly_divmod(ctx, ann, np.array([x_m, 1], dtype=np.int64))
        if len(rem):  # pragma: no cover
            raise AssertionError("annihilator must vanish at its own roots")
        w = ctx.inv(poly_eval(ctx, quot, x_m))
        mat[m, : len(quot)] = ctx.mul_arr(quot, w)
    return mat


def interpolate(ctx: FieldCtx, points: Sequence[int], values) -> np.ndarray:
    """Coefficients (lowest first, untrimmed length n) of the unique
    degree < n polynomial through the given points."""
    lm = _interp_matrix(ctx, tuple(points))
    v = np.asarray(values, dtype=np.int64)
    return np.bitwise_xor.reduce(ctx.mul_arr(lm, v[:, None]), axis=0)


def local_membership(pair: LinearizedPair, r: int, gw: GridWord) -> bool:
    """True iff every grid row interpolates to degree < r on Zg and every
    grid column to degree < r on Zf."""
    n = pair.n_frak
    if r >= n:
        return True
    ctx = pair.ctx
    lg = _interp_matrix(ctx, pair.Zg)
    lf = _interp_matrix(ctx, pair.Zf)
    rows = gw.entries
    # coefficient matrices for all rows / columns at once
    row_coeffs = np.bitwise_xor.reduce(
        ctx.mul_arr(rows[:, :, None], lg[None, :, :]), axis=1
    )
    if np.any(row_coeffs[:, r:]):
        return False
    cols = gw.entries.T
    col_coeffs = np.bitwise_xor.reduce(
        ctx.mul_arr(cols[:, :, None], lf[None, :, :]), axis=1
    )
    return not np.any(col_coeffs[:, r:])


def export_generator_csv(code: CodeInstance) -> str:
    """Generator matrix as hex CSV, row-major, preceded by a JSON header
    comment line fixing the field and the coordinate order."""
    header = {
        "q": code.pair.f.q,
        "M": code.ctx.extension_degree,
        "reduction_poly_hex": format(code.ctx.reduction_poly, "x"),
        "r": code.r,
        "k": code.k,
        "coordinate_order": "Zf-major",
    }
    buf = io.StringIO()
    buf.write("# " + json.dumps(header, sort_keys=True) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    for row in code.G:
        writer.writerow([format(int(x), "x") for x in row])
    return buf.getvalue()
