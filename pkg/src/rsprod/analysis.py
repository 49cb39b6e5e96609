"""Ground-truth oracles: exhaustive weight spectra, erasure recoverability
by rank, the peeling erasure decoder, and the double-root structural check.

Exhaustive enumeration walks the message space with the top digits in
mixed-radix reflected Gray order, so each step XORs a single scalar
multiple of one generator row into the running partial codeword; the
lowest digits are expanded once into a vectorized span block.  When a
whole codeword fits in 64 bits the block is bit-packed and weights come
from a popcount, otherwise symbols stay in a small unsigned dtype.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from .codec import CodeInstance, GridWord, encode, relabel, unrelabel
from .field import (
    FieldCtx,
    mat_nullspace,
    mat_rank,
    mat_solve,
    poly_add,
    poly_deriv,
    poly_divmod,
    poly_eval,
    poly_eval_many,
    poly_from_roots,
    poly_scale,
)

DEFAULT_BUDGET = 1 << 28
_BLOCK_DIGITS_LIMIT = 1 << 16


class BudgetExceeded(ValueError):
    """Message space too large for exhaustive enumeration."""


@dataclass
class WeightSpectrum:
    counts: dict[int, int]
    exact: bool

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def min_nonzero_weight(self) -> int:
        return min(w for w, c in self.counts.items() if w > 0 and c > 0)

    def to_csv(self) -> str:
        lines = ["weight,count"]
        lines += [f"{w},{c}" for w, c in sorted(self.counts.items()) if c > 0]
        return "\n".join(lines) + "\n"


@dataclass
class ErasureMask:
    n_frak: int
    erased: np.ndarray  # bool grid (n, n); flat index i*n + j is cell (i, j)

    @classmethod
    def from_flat(cls, n_frak: int, flat) -> "ErasureMask":
        flat = np.asarray(flat, dtype=bool)
        if flat.shape != (n_frak * n_frak,):
            raise ValueError(f"flat mask length must be {n_frak * n_frak}")
        return cls(n_frak, flat.reshape(n_frak, n_frak).copy())

    def flat(self) -> np.ndarray:
        return self.erased.reshape(-1)

    @property
    def count(self) -> int:
        return int(self.erased.sum())

    def to_rle(self) -> dict:
        """Run lengths of alternating kept/erased cells, starting with kept."""
        runs: list[int] = []
        cur = False
        length = 0
        for bit in self.flat():
            if bool(bit) == cur:
                length += 1
            else:
                runs.append(length)
                cur = bool(bit)
                length = 1
        runs.append(length)
        return {"n_frak": self.n_frak, "rle": ",".join(str(x) for x in runs)}

    @classmethod
    def from_rle(cls, obj: dict) -> "ErasureMask":
        n = int(obj["n_frak"])
        runs = [int(x) for x in str(obj["rle"]).split(",") if x != ""]
        flat = np.zeros(n * n, dtype=bool)
        pos = 0
        cur = False
        for length in runs:
            flat[pos : pos + length] = cur
            pos += length
            cur = not cur
        if pos != n * n:
            raise ValueError("run lengths do not cover the grid")
        return cls.from_flat(n, flat)


# ---------------------------------------------------------------------------
# Exhaustive enumeration
# ---------------------------------------------------------------------------


def _gray_transitions(radix: int, ndigits: int) -> Iterator[tuple[int, int, int]]:
    """(digit, old value, new value) steps of the reflected mixed-radix
    Gray walk over radix^ndigits tuples, one digit changing by +-1."""
    digits = [0] * ndigits
    dirs = [1] * ndigits
    while True:
        i = 0
        while i < ndigits:
            nxt = digits[i] + dirs[i]
            if 0 <= nxt < radix:
                break
            dirs[i] = -dirs[i]
            i += 1
        if i == ndigits:
            return
        old = digits[i]
        digits[i] = old + dirs[i]
        yield i, old, digits[i]


def _pack_rows(ctx: FieldCtx, rows: np.ndarray) -> Optional[dict]:
    """Bit-packing setup when a codeword fits into one uint64."""
    m = ctx.extension_degree
    length = rows.shape[1] if rows.ndim == 2 else len(rows)
    if length * m > 64:
        return None
    shifts = (np.arange(length, dtype=np.uint64) * np.uint64(m))
    lane_mask = np.uint64(0)
    for i in range(length):
        lane_mask |= np.uint64(1) << np.uint64(i * m)
    return {"m": m, "shifts": shifts, "lane_mask": lane_mask}


def _pack(vecs: np.ndarray, packing: dict) -> np.ndarray:
    v = vecs.astype(np.uint64)
    return np.bitwise_or.reduce(v << packing["shifts"], axis=-1)


def _packed_weights(x: np.ndarray, packing: dict) -> np.ndarray:
    t = x
    s = 1
    while s < packing["m"]:
        t = t | (t >> np.uint64(s))
        s <<= 1
    return np.bitwise_count(t & packing["lane_mask"])


def _sym_dtype(ctx: FieldCtx):
    if ctx.extension_degree <= 8:
        return np.uint8
    if ctx.extension_degree <= 16:
        return np.uint16
    return np.uint32


def _spectrum_over(
    ctx: FieldCtx, rows: np.ndarray, length: int, base: np.ndarray
) -> np.ndarray:
    """Weight histogram of {base + span(rows combinations)} over all
    |F|^len(rows) message tuples."""
    q = ctx.order
    packing = _pack_rows(ctx, np.zeros((1, length), dtype=np.int64))
    scalars = np.arange(q, dtype=np.int64)
    multiples = [ctx.mul_arr(scalars[:, None], row[None, :]) for row in rows]
    if packing is not None:
        tables = [_pack(t, packing) for t in multiples]
        span = _pack(base.reshape(1, -1), packing)
    else:
        dt = _sym_dtype(ctx)
        tables = [t.astype(dt) for t in multiples]
        span = base.astype(dt).reshape(1, -1)

    n_bottom = 0
    while (
        n_bottom < len(rows)
        and q ** (n_bottom + 1) <= _BLOCK_DIGITS_LIMIT
    ):
        t = tables[n_bottom]
        if packing is not None:
            span = (span[:, None] ^ t[None, :]).reshape(-1)
        else:
            span = (span[:, None, :] ^ t[None, :, :]).reshape(-1, length)
        n_bottom += 1

    counts = np.zeros(length + 1, dtype=np.int64)

    def flush(partial):
        x = span ^ partial
        if packing is not None:
            w = _packed_weights(x, packing)
        else:
            w = np.count_nonzero(x, axis=1)
        counts[:] += np.bincount(w, minlength=length + 1)[: length + 1]

    gray_tables = tables[n_bottom:]
    if packing is not None:
        partial = np.uint64(0)
    else:
        partial = np.zeros(length, dtype=_sym_dtype(ctx))
    flush(partial)
    for digit, old, new in _gray_transitions(q, len(gray_tables)):
        partial = partial ^ gray_tables[digit][old ^ new]
        flush(partial)
    return counts


def _spectrum_worker(payload: dict) -> np.ndarray:
    ctx = FieldCtx(payload["m"], payload["poly"])
    rows = np.array(payload["rows"], dtype=np.int64)
    top = np.array(payload["top_row"], dtype=np.int64)
    length = rows.shape[1] if len(rows) else len(top)
    counts = np.zeros(length + 1, dtype=np.int64)
    for v in payload["values"]:
        base = ctx.mul_arr(top, v)
        counts += _spectrum_over(ctx, rows, length, base)
    return counts


def _span_spectrum(
    ctx: FieldCtx, rows: np.ndarray, workers: int = 1
) -> np.ndarray:
    rows = np.asarray(rows, dtype=np.int64)
    length = rows.shape[1]
    if workers <= 1 or len(rows) < 2:
        return _spectrum_over(ctx, rows, length, np.zeros(length, dtype=np.int64))
    chunks = np.array_split(np.arange(ctx.order), workers)
    payloads = [
        {
            "m": ctx.extension_degree,
            "poly": ctx.reduction_poly,
            "rows": rows[:-1].tolist(),
            "top_row": rows[-1].tolist(),
            "values": chunk.tolist(),
        }
        for chunk in chunks
        if len(chunk)
    ]
    counts = np.zeros(length + 1, dtype=np.int64)
    with ProcessPoolExecutor(max_workers=len(payloads)) as pool:
        for part in pool.map(_spectrum_worker, payloads):
            counts += part
    return counts


def exhaustive_distance(
    code: CodeInstance, budget: int = DEFAULT_BUDGET, workers: int = 1
) -> tuple[int, WeightSpectrum]:
    """Exact minimum nonzero weight and full spectrum of the code.

    Enumerates the whole |F|^k message space; raises BudgetExceeded when
    that exceeds the budget so callers can fall back to sampling.
    """
    size = code.ctx.order ** code.k
    if size > budget:
        raise BudgetExceeded(
            f"budget exceeded: |F|^k = {size} > {budget}; "
            "raise the budget or fall back to sampled_distance"
        )
    if size > DEFAULT_BUDGET:
        warnings.warn(
            f"exhaustive enumeration of {size} codewords; expect minutes of runtime",
            RuntimeWarning,
            stacklevel=2,
        )
    counts = _span_spectrum(code.ctx, code.G, workers=workers)
    spectrum = WeightSpectrum(
        {w: int(c) for w, c in enumerate(counts) if c}, exact=True
    )
    return spectrum.min_nonzero_weight(), spectrum


def sampled_distance(code: CodeInstance, trials: int, seed: int = 0) -> int:
    """Minimum weight over random nonzero messages: an upper estimate."""
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = np.random.default_rng(seed)
    best = code.length
    done = 0
    while done < trials:
        batch = min(trials - done, 1 << 14)
        msgs = rng.integers(0, code.ctx.order, size=(batch, code.k), dtype=np.int64)
        msgs = msgs[np.any(msgs != 0, axis=1)]
        if len(msgs) == 0:
            continue
        words = np.zeros((len(msgs), code.length), dtype=np.int64)
        for i in range(code.k):
            words ^= code.ctx.mul_arr(msgs[:, i][:, None], code.G[i][None, :])
        best = min(best, int(np.count_nonzero(words, axis=1).min()))
        done += len(msgs)
    return best


# ---------------------------------------------------------------------------
# Spectrum through the dual code
# ---------------------------------------------------------------------------


def macwilliams_transform(counts: dict[int, int], n: int, q: int) -> dict[int, int]:
    """Weight distribution of the dual code, by the exact integer
    MacWilliams identity over a field of size q."""
    size = sum(counts.values())
    out: dict[int, int] = {}
    for i in range(n + 1):
        acc = 0
        for w, a_w in counts.items():
            if not a_w:
                continue
            k_i = 0
            for j in range(min(i, w) + 1):
                term = math.comb(w, j) * math.comb(n - w, i - j) * (q - 1) ** (i - j)
                k_i += -term if j & 1 else term
            acc += a_w * k_i
        val, rem = divmod(acc, size)
        if rem:  # pragma: no cover - identity guarantees divisibility
            raise AssertionError("transform did not divide evenly")
        if val:
            out[i] = val
    return out


def spectrum_via_dual(
    code: CodeInstance, budget: int = DEFAULT_BUDGET, workers: int = 1
) -> WeightSpectrum:
    """Exact spectrum obtained by exhaustively enumerating the dual code
    and transforming; useful when the code itself is over budget."""
    ctx = code.ctx
    dual = mat_nullspace(ctx, code.G)
    size = ctx.order ** len(dual)
    if size > budget:
        raise BudgetExceeded(
            f"dual enumeration needs {size} words, over budget {budget}"
        )
    counts = _span_spectrum(ctx, dual, workers=workers)
    dual_counts = {w: int(c) for w, c in enumerate(counts) if c}
    primal = macwilliams_transform(dual_counts, code.length, ctx.order)
    expected = ctx.order ** code.k
    if sum(primal.values()) != expected:  # pragma: no cover
        raise AssertionError("transformed spectrum has wrong total")
    return WeightSpectrum(primal, exact=True)


# ---------------------------------------------------------------------------
# Erasures
# ---------------------------------------------------------------------------


def erasure_recoverable(code: CodeInstance, mask: ErasureMask) -> bool:
    """True iff the generator restricted to surviving coordinates keeps
    full rank, i.e. the erasure pattern is uniquely decodable."""
    if mask.n_frak != code.n_frak:
        raise ValueError("mask size does not match the code")
    surv = ~mask.flat()
    if int(surv.sum()) < code.k:
        return False
    return mat_rank(code.ctx, code.G[:, surv]) == code.k


@dataclass
class PeelResult:
    word: Optional[np.ndarray]
    residual: Optional[ErasureMask]
    used_global: bool = False

    @property
    def ok(self) -> bool:
        return self.word is not None


def _interp_through(ctx: FieldCtx, xs: Sequence[int], ys: Sequence[int]) -> np.ndarray:
    total = np.zeros(0, dtype=np.int64)
    ann = poly_from_roots(ctx, xs)
    for x, y in zip(xs, ys):
        if y == 0:
            continue
        quot, _ = poly_divmod(ctx, ann, np.array([x, 1], dtype=np.int64))
        w = ctx.inv(poly_eval(ctx, quot, x))
        total = poly_add(total, poly_scale(ctx, quot, ctx.mul(w, int(y))))
    return total


def _repair_line(
    ctx: FieldCtx, r: int, points: np.ndarray, values: np.ndarray, known: np.ndarray
) -> Optional[np.ndarray]:
    idx = np.nonzero(known)[0]
    if len(idx) < r:
        return None
    use = idx[:r]
    coeffs = _interp_through(ctx, [int(points[i]) for i in use], [int(values[i]) for i in use])
    preds = poly_eval_many(ctx, coeffs, points)
    if np.any(preds[idx] != values[idx]):
        raise ValueError("interpolation mismatch on a known symbol")
    return preds


def peel_decode(code: CodeInstance, word, mask: ErasureMask) -> PeelResult:
    """Iterated local repair: any grid line with at least r surviving
    symbols is interpolated and filled; a global linear solve against the
    generator finishes off whatever peeling leaves behind."""
    pair = code.pair
    n = code.n_frak
    if mask.n_frak != n:
        raise ValueError("mask size does not match the code")
    ctx = code.ctx
    grid = relabel(pair, word).entries
    erased = mask.erased.copy()
    grid[erased] = 0
    zg = np.array(pair.Zg, dtype=np.int64)
    zf = np.array(pair.Zf, dtype=np.int64)
    progress = True
    while progress and erased.any():
        progress = False
        for i in range(n):
            if erased[i].any():
                fixed = _repair_line(ctx, code.r, zg, grid[i], ~erased[i])
                if fixed is not None:
                    grid[i] = fixed
                    erased[i] = False
                    progress = True
        for j in range(n):
            if erased[:, j].any():
                fixed = _repair_line(ctx, code.r, zf, grid[:, j], ~erased[:, j])
                if fixed is not None:
                    grid[:, j] = fixed
                    erased[:, j] = False
                    progress = True
    if not erased.any():
        return PeelResult(unrelabel(pair, GridWord(grid)), None, used_global=False)
    flat = grid.reshape(-1)
    surv = np.nonzero(~erased.reshape(-1))[0]
    status, msg = mat_solve(ctx, code.G[:, surv].T, flat[surv])
    if status == "inconsistent":
        raise ValueError("surviving symbols are not consistent with any codeword")
    if status == "unique":
        return PeelResult(encode(code, msg), None, used_global=True)
    return PeelResult(None, ErasureMask(n, erased), used_global=True)


# ---------------------------------------------------------------------------
# Structural check behind the main lower bound
# ---------------------------------------------------------------------------

_SYNTHETIC_DIV_MAX_DEG = 1 << 10


def double_root_check(code: CodeInstance, msg: Sequence[int]) -> bool:
    """At every crossing of a zero grid-row and a zero grid-column, the
    encoded univariate polynomial must vanish to order at least two."""
    if not any(msg):
        raise ValueError("message must be nonzero")
    ctx = code.ctx
    h = np.zeros(0, dtype=np.int64)
    for coeff, basis in zip(msg, code.basis_polys):
        h = poly_add(h, poly_scale(ctx, basis, int(coeff)))
    grid = relabel(code.pair, encode(code, msg)).entries
    zero_rows = [i for i in range(code.n_frak) if not grid[i].any()]
    zero_cols = [j for j in range(code.n_frak) if not grid[:, j].any()]
    hp = poly_deriv(h)
    confirm = len(h) - 1 <= _SYNTHETIC_DIV_MAX_DEG
    for i in zero_rows:
        for j in zero_cols:
            alpha = code.pair.Zf[i] ^ code.pair.Zg[j]
            if poly_eval(ctx, h, alpha) != 0 or poly_eval(ctx, hp, alpha) != 0:
                return False
            if confirm:
                lin = np.array([alpha, 1], dtype=np.int64)
                q1, r1 = poly_divmod(ctx, h, lin)
                _, r2 = poly_divmod(ctx, q1, lin)
                if len(r1) or len(r2):
                    return False
    return True


# ---------------------------------------------------------------------------
# Canonical unrecoverable patterns
# ---------------------------------------------------------------------------


def block_margin_mask(n: int, r: int, a: int, b: int) -> ErasureMask:
    """Erasures on ([0,b) u [r,n)) rows x ([0,a) u [r,n)) columns, plus the
    two locally repairable margins; total (a+n-r)(b+n-r) + (n-r)(2r-a-b)."""
    if not (0 <= a <= r and 0 <= b <= r and r <= n):
        raise ValueError("need 0 <= a, b <= r <= n")
    er = np.zeros((n, n), dtype=bool)
    row_sel = np.zeros(n, dtype=bool)
    row_sel[:b] = True
    row_sel[r:] = True
    col_sel = np.zeros(n, dtype=bool)
    col_sel[:a] = True
    col_sel[r:] = True
    er[np.ix_(row_sel, col_sel)] = True
    er[np.ix_(np.arange(r, n), np.arange(a, r))] = True
    er[np.ix_(np.arange(b, r), np.arange(r, n))] = True
    return ErasureMask(n, er)


def strip_margin_mask(n: int, r: int, a: int, b: int) -> ErasureMask:
    """Erasures on a full-width block of a rows (all but the last column),
    a length-b strip on the next row, a (n-a-1) x (delta-1) margin, and
    delta-1 bottom cells of the last column; total a(n-1)+b + (n-a)(delta-1)."""
    delta = n - r + 1
    if r < 2 or not (0 <= a <= n - 1 and 0 <= b <= n - 1):
        raise ValueError("need r >= 2 and 0 <= a, b <= n - 1")
    er = np.zeros((n, n), dtype=bool)
    er[:a, : n - 1] = True
    er[a, :b] = True
    er[a + 1 :, : delta - 1] = True
    # the last column carries no other erasures, so the margin fits anywhere
    er[n - delta + 1 :, n - 1] = True
    return ErasureMask(n, er)
