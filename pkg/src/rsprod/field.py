"""Arithmetic in GF(2^M) and polynomial algebra over it.

Field elements are plain Python ints in [0, 2^M): the binary digits of an
element are the coefficients of its polynomial-basis representation over
GF(2).  Addition is XOR.  A :class:`FieldCtx` fixes the extension degree
and the reduction polynomial; its scalar product is carry-less
multiplication followed by reduction, while bulk operations on numpy
arrays go through log/antilog tables built by walking a multiplicative
generator.

Univariate polynomials over the field are numpy int64 arrays of
coefficients, lowest degree first, with no trailing zeros (the zero
polynomial is the empty array).  Bivariate polynomials are dense 2-D
arrays indexed by (x-degree, y-degree).
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

import numpy as np

MAX_EXTENSION_DEGREE = 24

# log/exp tables are only built up to this extension degree; larger
# contexts still work, but without vectorized array products.
_TABLE_LIMIT = 20


def _gf2_deg(p: int) -> int:
    return p.bit_length() - 1


def _gf2_mod(a: int, b: int) -> int:
    """Remainder of GF(2)[x] division of a by b (both as bit vectors)."""
    db = _gf2_deg(b)
    while a.bit_length() - 1 >= db:
        a ^= b << (a.bit_length() - 1 - db)
    return a


def is_irreducible(poly: int, m: int) -> bool:
    """Trial division of a degree-m polynomial over GF(2) by all
    polynomials of degree at most m/2."""
    if poly.bit_length() - 1 != m:
        return False
    for d in range(1, m // 2 + 1):
        for div in range(1 << d, 1 << (d + 1)):
            if _gf2_mod(poly, div) == 0:
                return False
    return True


def smallest_irreducible(m: int) -> int:
    """Lexicographically smallest irreducible bit vector of degree m."""
    for cand in range(1 << m, 1 << (m + 1)):
        if is_irreducible(cand, m):
            return cand
    raise AssertionError(f"no irreducible polynomial of degree {m}")


class FieldCtx:
    """The field GF(2^M) with a fixed reduction polynomial.

    Immutable after construction and safe to share across workers; all
    operations are pure functions of their inputs.
    """

    def __init__(self, m: int, reduction_poly: Optional[int] = None) -> None:
        if not 1 <= m <= MAX_EXTENSION_DEGREE:
            raise ValueError(
                f"extension degree must be in [1, {MAX_EXTENSION_DEGREE}], got {m}"
            )
        if reduction_poly is None:
            reduction_poly = smallest_irreducible(m)
        else:
            reduction_poly = int(reduction_poly)
            if reduction_poly.bit_length() - 1 != m:
                raise ValueError(
                    f"reduction polynomial must be monic of degree {m}, "
                    f"got {bin(reduction_poly)}"
                )
            if not is_irreducible(reduction_poly, m):
                raise ValueError(
                    f"reduction polynomial {bin(reduction_poly)} is reducible"
                )
        self.extension_degree = m
        self.reduction_poly = reduction_poly
        self.order = 1 << m
        self._exp2: Optional[np.ndarray] = None
        self._log: Optional[np.ndarray] = None
        self.generator: Optional[int] = None

    # -- identity ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FieldCtx)
            and other.extension_degree == self.extension_degree
            and other.reduction_poly == self.reduction_poly
        )

    def __hash__(self) -> int:
        return hash((self.extension_degree, self.reduction_poly))

    def __repr__(self) -> str:
        return f"FieldCtx(GF(2^{self.extension_degree}), poly={bin(self.reduction_poly)})"

    def to_json(self) -> dict:
        return {
            "M": self.extension_degree,
            "reduction_poly_hex": format(self.reduction_poly, "x"),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "FieldCtx":
        return cls(int(obj["M"]), int(obj["reduction_poly_hex"], 16))

    # -- scalar arithmetic --------------------------------------------------

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        """Carry-less product reduced modulo the reduction polynomial."""
        p = 0
        red = self.reduction_poly
        top = self.order
        while b:
            if b & 1:
                p ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= red
        return p

    def pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        """Multiplicative inverse via exponentiation to 2^M - 2."""
        if a == 0:
            raise ValueError("zero has no multiplicative inverse")
        return self.pow(a, self.order - 2)

    def elements(self) -> range:
        return range(self.order)

    # -- vectorized arithmetic ----------------------------------------------

    def _build_tables(self) -> None:
        if self.extension_degree > _TABLE_LIMIT:
            raise ValueError(
                f"log/antilog tables unsupported beyond M={_TABLE_LIMIT}"
            )
        n = self.order - 1
        exp = np.zeros(n, dtype=np.int64)
        for g in range(1, self.order):
            val = 1
            length = 0
            for i in range(n):
                exp[i] = val
                val = self.mul(val, g)
                length = i + 1
                if val == 1:
                    break
            if length == n and val == 1:
                self.generator = g
                break
        else:  # pragma: no cover - multiplicative group is always cyclic
            raise AssertionError("no generator found")
        log = np.zeros(self.order, dtype=np.int64)
        log[exp] = np.arange(n, dtype=np.int64)
        self._exp2 = np.concatenate([exp, exp])
        self._log = log

    def _tables(self) -> tuple[np.ndarray, np.ndarray]:
        if self._exp2 is None:
            self._build_tables()
        return self._exp2, self._log  # type: ignore[return-value]

    def mul_arr(self, a, b) -> np.ndarray:
        """Elementwise product of int arrays (broadcasting)."""
        exp2, log = self._tables()
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = exp2[log[a] + log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv_arr(self, a) -> np.ndarray:
        exp2, log = self._tables()
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ValueError("zero has no multiplicative inverse")
        n = self.order - 1
        return exp2[n - log[a]]


def field_new(m: int, reduction_poly: Optional[int] = None) -> FieldCtx:
    """Construct GF(2^m); with no reduction polynomial given, the
    lexicographically smallest irreducible of degree m is selected."""
    return FieldCtx(m, reduction_poly)


# ---------------------------------------------------------------------------
# Univariate polynomials: int64 coefficient arrays, lowest degree first.
# ---------------------------------------------------------------------------

ZERO_POLY = np.zeros(0, dtype=np.int64)


def poly(coeffs: Iterable[int]) -> np.ndarray:
    return poly_trim(np.array(list(coeffs), dtype=np.int64))


def poly_trim(c: np.ndarray) -> np.ndarray:
    c = np.asarray(c, dtype=np.int64)
    nz = np.nonzero(c)[0]
    if len(nz) == 0:
        return ZERO_POLY.copy()
    return c[: nz[-1] + 1]


def poly_deg(c: np.ndarray) -> int:
    """Degree, with the zero polynomial mapped to -1."""
    return len(c) - 1


def poly_add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if len(a) < len(b):
        a, b = b, a
    out = a.copy()
    out[: len(b)] ^= b
    return poly_trim(out)


def poly_scale(ctx: FieldCtx, p: np.ndarray, s: int) -> np.ndarray:
    if s == 0 or len(p) == 0:
        return ZERO_POLY.copy()
    return ctx.mul_arr(p, s)


def poly_mul(ctx: FieldCtx, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if len(a) == 0 or len(b) == 0:
        return ZERO_POLY.copy()
    if np.count_nonzero(a) > np.count_nonzero(b):
        a, b = b, a
    out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
    for i in np.nonzero(a)[0]:
        out[i : i + len(b)] ^= ctx.mul_arr(b, int(a[i]))
    return out


def poly_eval(ctx: FieldCtx, p: np.ndarray, x: int) -> int:
    """Horner evaluation at a single point."""
    acc = 0
    for c in p[::-1]:
        acc = ctx.mul(acc, x) ^ int(c)
    return acc


def poly_eval_many(ctx: FieldCtx, p: np.ndarray, xs) -> np.ndarray:
    xs = np.asarray(xs, dtype=np.int64)
    acc = np.zeros_like(xs)
    for c in p[::-1]:
        acc = ctx.mul_arr(acc, xs) ^ int(c)
    return acc


def poly_divmod(ctx: FieldCtx, a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if len(b) == 0:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return ZERO_POLY.copy(), poly_trim(a.copy())
    r = a.copy()
    q = np.zeros(len(a) - len(b) + 1, dtype=np.int64)
    inv_lead = ctx.inv(int(b[-1]))
    for i in range(len(a) - 1, len(b) - 2, -1):
        if r[i]:
            f = ctx.mul(int(r[i]), inv_lead)
            q[i - len(b) + 1] = f
            r[i - len(b) + 1 : i + 1] ^= ctx.mul_arr(b, f)
    return poly_trim(q), poly_trim(r)


def poly_deriv(p: np.ndarray) -> np.ndarray:
    """Formal derivative; in characteristic 2 only odd-degree terms survive."""
    if len(p) <= 1:
        return ZERO_POLY.copy()
    d = p[1:].copy()
    d[1::2] = 0
    return poly_trim(d)


def poly_from_roots(ctx: FieldCtx, roots: Sequence[int]) -> np.ndarray:
    """The annihilator polynomial prod (x - rho) of the given points."""
    p = np.ones(1, dtype=np.int64)
    for rho in roots:
        p = poly_mul(ctx, p, np.array([rho, 1], dtype=np.int64))
    return p


# ---------------------------------------------------------------------------
# Bivariate polynomials: dense (x-degree, y-degree) coefficient matrices.
# ---------------------------------------------------------------------------


def poly_compose(ctx: FieldCtx, outer: np.ndarray, gx: np.ndarray, fx: np.ndarray) -> np.ndarray:
    """Expand outer(g(x), f(x)) into a univariate polynomial.

    ``outer[i, j]`` is the coefficient of x^i y^j; x is substituted by
    ``gx`` and y by ``fx``.
    """
    outer = np.asarray(outer, dtype=np.int64)
    r1, r2 = outer.shape
    f_pows = [np.ones(1, dtype=np.int64)]
    for _ in range(r2 - 1):
        f_pows.append(poly_mul(ctx, f_pows[-1], fx))
    acc = ZERO_POLY.copy()
    for i in range(r1 - 1, -1, -1):
        inner = ZERO_POLY.copy()
        for j in range(r2):
            if outer[i, j]:
                inner = poly_add(inner, poly_scale(ctx, f_pows[j], int(outer[i, j])))
        acc = poly_add(poly_mul(ctx, acc, gx), inner)
    return acc


def bipoly_eval_many(ctx: FieldCtx, s: np.ndarray, xs, ys) -> np.ndarray:
    """Evaluate a bivariate polynomial at paired point arrays."""
    s = np.asarray(s, dtype=np.int64)
    xs = np.asarray(xs, dtype=np.int64)
    ys = np.asarray(ys, dtype=np.int64)
    acc = np.zeros_like(xs)
    for i in range(s.shape[0] - 1, -1, -1):
        row = np.zeros_like(ys)
        for j in range(s.shape[1] - 1, -1, -1):
            row = ctx.mul_arr(row, ys) ^ int(s[i, j])
        acc = ctx.mul_arr(acc, xs) ^ row
    return acc


# ---------------------------------------------------------------------------
# Dense linear algebra over the field.
# ---------------------------------------------------------------------------


def mat_rref(ctx: FieldCtx, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns (matrix, pivot column indices)."""
    r = np.array(a, dtype=np.int64, copy=True)
    if r.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    nrows, ncols = r.shape
    pivots: list[int] = []
    pr = 0
    for col in range(ncols):
        if pr == nrows:
            break
        nz = np.nonzero(r[pr:, col])[0]
        if len(nz) == 0:
            continue
        row = pr + int(nz[0])
        if row != pr:
            r[[pr, row]] = r[[row, pr]]
        r[pr] = ctx.mul_arr(r[pr], ctx.inv(int(r[pr, col])))
        others = np.nonzero(r[:, col])[0]
        others = others[others != pr]
        if len(others):
            r[others] ^= ctx.mul_arr(r[others, col][:, None], r[pr][None, :])
        pivots.append(col)
        pr += 1
    return r, pivots


def mat_rank(ctx: FieldCtx, a: np.ndarray) -> int:
    return len(mat_rref(ctx, a)[1])


def mat_nullspace(ctx: FieldCtx, a: np.ndarray) -> np.ndarray:
    """Basis (as rows) of {x : a @ x = 0} over the field."""
    a = np.asarray(a, dtype=np.int64)
    ncols = a.shape[1]
    r, pivots = mat_rref(ctx, a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for bi, fc in enumerate(free):
        basis[bi, fc] = 1
        for pr, pc in enumerate(pivots):
            basis[bi, pc] = int(r[pr, fc])
    return basis


def mat_solve(ctx: FieldCtx, a: np.ndarray, b: np.ndarray) -> tuple[str, Optional[np.ndarray]]:
    """Solve a @ x = b; returns ("unique"|"multiple"|"inconsistent", x)."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    aug = np.concatenate([a, b[:, None]], axis=1)
    r, pivots = mat_rref(ctx, aug)
    ncols = a.shape[1]
    if ncols in pivots:
        return "inconsistent", None
    x = np.zeros(ncols, dtype=np.int64)
    for pr, pc in enumerate(pivots):
        x[pc] = int(r[pr, ncols])
    if len(pivots) < ncols:
        return "multiple", x
    return "unique", x
