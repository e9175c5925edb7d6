"""Pure numpy implementations of the hot loops.

These are the reference kernels; ``_ckernels.pyx`` mirrors them loop for loop.
Both share the same array conventions:

* elements are dense indices 0..N-1 in canonical order (length-sorted);
* ``conj`` tables hold the index of ``r z r`` for each generator/reflection r;
* bit rows are uint64 words, bit ``y & 63`` of word ``y >> 6``;
* a canonical table is CSR: ``row_ptr`` (N+1), ``cols`` (nnz) and
  ``coefs`` (nnz, D+1) where ``coefs[p, k]`` is the coefficient of v^-k.
"""

from __future__ import annotations

import numpy as np

from .laurent import INT64_MAX, CoefficientOverflow

BACKEND = "python"


class KernelInvariantError(RuntimeError):
    """The canonical recursion produced a row with a non-negative-degree term."""

    def __init__(self, y: int, x: int, detail: str):
        super().__init__(f"row {y}: entry {x}: {detail}")
        self.y = y
        self.x = x


def n_words(n_elems: int) -> int:
    return max(1, (n_elems + 63) // 64)


def bit_closure(conj: np.ndarray, lengths: np.ndarray, upward: bool) -> np.ndarray:
    """Reflexive-transitive closure of the height-increasing conjugation moves.

    With ``upward`` the row of x is the up-set {y : x <= y}; otherwise the row
    of y is the down-set {x : x <= y}.
    """
    n_gen, n_elems = conj.shape
    words = n_words(n_elems)
    bits = np.zeros((n_elems, words), dtype=np.uint64)
    order = range(n_elems - 1, -1, -1) if upward else range(n_elems)
    for x in order:
        nbrs = conj[:, x]
        if upward:
            nbrs = nbrs[lengths[nbrs] > lengths[x]]
        else:
            nbrs = nbrs[lengths[nbrs] < lengths[x]]
        if len(nbrs):
            bits[x] = np.bitwise_or.reduce(bits[nbrs], axis=0)
        bits[x, x >> 6] |= np.uint64(1) << np.uint64(x & 63)
    return bits


def _row_bound(coefs: np.ndarray) -> int:
    return int(np.abs(coefs).max()) if coefs.size else 0


def canonical_table(
    sconj: np.ndarray,
    lengths: np.ndarray,
    descent: np.ndarray,
    depth: int,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Canonical basis rows, computed in index (= height) order.

    ``descent[y]`` is the 0-based simple generator used for row y, or -1 for
    the minimal element. Row y is ``(H_s + v^-1) row(sys)`` minus
    ``mu(t, sys) row(t)`` for each t with ``sts <= t`` and ``mu(t, sys) != 0``.
    """
    n_elems = lengths.shape[0]
    width = depth + 1
    scratch = np.zeros((n_elems, width), dtype=np.int64)
    rows_idx: list[np.ndarray] = []
    rows_coef: list[np.ndarray] = []
    bounds: list[int] = []

    for y in range(n_elems):
        s = int(descent[y])
        if s < 0:
            idx = np.array([y], dtype=np.int32)
            coef = np.zeros((1, width), dtype=np.int64)
            coef[0, 0] = 1
            rows_idx.append(idx)
            rows_coef.append(coef)
            bounds.append(1)
            continue
        conj_s = sconj[s]
        w = int(conj_s[y])
        idx_w, coef_w = rows_idx[w], rows_coef[w]

        # t with a weak descent at s and mu(t, w) != 0, excluding t = w
        mu_w = coef_w[:, 1]
        sel = (mu_w != 0) & (lengths[conj_s[idx_w]] <= lengths[idx_w]) & (idx_w != w)
        corr_t = idx_w[sel]
        corr_mu = mu_w[sel]

        bound = 2 * bounds[w] + sum(abs(int(m)) * bounds[t] for t, m in zip(corr_t, corr_mu))
        if bound > INT64_MAX:
            idx, coef = _row_exact(y, w, conj_s, lengths, idx_w, coef_w,
                                   corr_t, corr_mu, rows_idx, rows_coef, width)
        else:
            idx, coef = _row_int64(y, w, conj_s, lengths, idx_w, coef_w,
                                   corr_t, corr_mu, rows_idx, rows_coef, scratch)
        rows_idx.append(idx)
        rows_coef.append(coef)
        bounds.append(_row_bound(coef))

    row_ptr = np.zeros(n_elems + 1, dtype=np.int64)
    row_ptr[1:] = np.cumsum([len(r) for r in rows_idx])
    cols = np.concatenate(rows_idx).astype(np.int32)
    coefs = np.concatenate(rows_coef, axis=0)
    return row_ptr, cols, coefs


def _apply_generator(C, x, sx, lengths, coef_w):
    up = lengths[sx] > lengths[x]
    down = lengths[sx] < lengths[x]
    fixed = ~(up | down)
    moved = ~fixed
    # the M_{sxs} term, for sxs != x
    C[sx[moved]] += coef_w[moved]
    # v^-1 M_x when s raises x, v M_x when it lowers x, both when it fixes x
    lo = up | fixed
    hi = down | fixed
    C[x[lo], 1:] += coef_w[lo, :-1]
    C[x[hi], :-1] += coef_w[hi, 1:]
    return (coef_w[lo, -1] != 0).any() or (coef_w[hi, 0] != 0).any()


def _finish_row(y, C, touched):
    rows = C[touched]
    keep = rows.any(axis=1)
    idx = touched[keep].astype(np.int32)
    coef = rows[keep].copy()
    C[touched] = 0
    head = coef[:, 0]
    bad = np.nonzero(head != np.where(idx == y, 1, 0))[0]
    if len(bad):
        x = int(idx[bad[0]])
        raise KernelInvariantError(y, x, f"coefficient of v^0 is {int(head[bad[0]])}")
    return idx, coef


def _row_int64(y, w, conj_s, lengths, idx_w, coef_w, corr_t, corr_mu,
               rows_idx, rows_coef, C):
    sx = conj_s[idx_w]
    if _apply_generator(C, idx_w, sx, lengths, coef_w):
        raise KernelInvariantError(y, w, "degree range exceeded")
    parts = [idx_w, sx]
    for t, m in zip(corr_t, corr_mu):
        it = rows_idx[t]
        C[it] -= int(m) * rows_coef[t]
        parts.append(it)
    touched = np.unique(np.concatenate(parts))
    return _finish_row(y, C, touched)


def _row_exact(y, w, conj_s, lengths, idx_w, coef_w, corr_t, corr_mu,
               rows_idx, rows_coef, width):
    # arbitrary-precision replay of _row_int64 for rows whose a-priori bound
    # does not fit in int64; only the final values decide overflow
    C = np.zeros((lengths.shape[0], width), dtype=object)
    sx = conj_s[idx_w]
    _apply_generator(C, idx_w, sx, lengths, coef_w.astype(object))
    parts = [idx_w, sx]
    for t, m in zip(corr_t, corr_mu):
        it = rows_idx[t]
        C[it] -= int(m) * rows_coef[t].astype(object)
        parts.append(it)
    touched = np.unique(np.concatenate(parts))
    idx, coef = _finish_row(y, C, touched)
    if coef.size and max(abs(int(c)) for c in coef.ravel()) > INT64_MAX:
        raise CoefficientOverflow(f"row {y} has a coefficient beyond 64 bits")
    return idx, coef.astype(np.int64)
