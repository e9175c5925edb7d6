"""The Hecke-module M spanned by M_x (x in F_n) and its canonical basis.

Row y of a :class:`CanonicalTable` is the expansion of the canonical basis
element  M_y = sum_x m_{x,y} M_x.  Rows are built in height order: for a strict
descent s of y (ht(sys) < ht(y)),

    M_y = (H_s + v^-1) M_{sys}  -  sum_t mu(t, sys) M_t

where t runs over the support of M_{sys} with s t s <= t and t != sys.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from . import _kernels
from .bruhat import BruhatPoset, build_poset
from .laurent import LaurentPoly, is_one_plus_even_positive, is_strictly_negative_support
from .permutation import FpfInvolution
from .report import Report

__all__ = [
    "ModuleVector", "CanonicalTable", "InvariantViolation", "NoDescentError",
    "act_simple", "canonical_basis", "mu", "m_tilde", "descents",
    "verify_table_invariants", "verify_mu_descent_lemma", "verify_descent_independence",
]

V = LaurentPoly.v()
V_MINUS_VINV = LaurentPoly({1: 1, -1: -1})


class InvariantViolation(RuntimeError):
    """A computed canonical-basis row failed one of the table invariants."""


class NoDescentError(RuntimeError):
    """A non-minimal element without a strict descent (the grading is broken)."""


class ModuleVector:
    """A finite A-linear combination of basis vectors M_x."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[FpfInvolution, LaurentPoly] | None = None):
        self._c = {x: p for x, p in (coeffs or {}).items() if not p.is_zero()}

    @classmethod
    def basis(cls, x: FpfInvolution) -> "ModuleVector":
        return cls({x: LaurentPoly.one()})

    def items(self):
        return self._c.items()

    def support(self) -> set[FpfInvolution]:
        return set(self._c)

    def __getitem__(self, x) -> LaurentPoly:
        return self._c.get(x, LaurentPoly.zero())

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        out = dict(self._c)
        for x, p in other._c.items():
            out[x] = out.get(x, LaurentPoly.zero()) + p
        return ModuleVector(out)

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        return self + other.scale(LaurentPoly.const(-1))

    def scale(self, p: LaurentPoly | int) -> "ModuleVector":
        p = p if isinstance(p, LaurentPoly) else LaurentPoly.const(p)
        return ModuleVector({x: q * p for x, q in self._c.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, ModuleVector) and self._c == other._c

    def __repr__(self) -> str:
        if not self._c:
            return "0"
        terms = sorted(self._c.items(), key=lambda kv: kv[0].image)
        return " + ".join(f"({p})*M[{x}]" for x, p in terms)


def act_simple(i: int, vec: ModuleVector, poset: BruhatPoset) -> ModuleVector:
    """H_{s_i} acting on ``vec`` (i is 1-based)."""
    if not 1 <= i <= poset.n - 1:
        raise ValueError(f"simple index {i} out of range 1..{poset.n - 1}")
    out: dict[FpfInvolution, LaurentPoly] = {}

    def put(z, p):
        out[z] = out.get(z, LaurentPoly.zero()) + p

    for x, p in vec.items():
        k = poset.idx(x)
        sk = poset.conj_simple_idx(i, k)
        sx = poset.elements[sk]
        if poset.lengths[sk] > poset.lengths[k]:
            put(sx, p)
        elif poset.lengths[sk] < poset.lengths[k]:
            put(sx, p)
            put(x, p * V_MINUS_VINV)
        else:
            put(x, p * V)
    return ModuleVector(out)


def descents(poset: BruhatPoset, rule: str = "smallest") -> np.ndarray:
    """0-based strict descent chosen for each element (-1 for the minimum)."""
    L = poset.lengths
    lower = L[poset.sconj] < L[None, :]          # (n-1, N)
    out = np.full(poset.size, -1, dtype=np.int32)
    for k in range(poset.size):
        cand = np.nonzero(lower[:, k])[0]
        if len(cand):
            out[k] = cand[0] if rule == "smallest" else cand[-1]
        elif k != 0:
            raise NoDescentError(f"{poset.elements[k]} has no strict descent")
    if rule not in ("smallest", "largest"):
        raise ValueError(f"unknown descent rule {rule!r}")
    return out


def _poly(row: np.ndarray) -> LaurentPoly:
    return LaurentPoly({-k: int(c) for k, c in enumerate(row) if c})


class CanonicalTable:
    """Sparse triangular table y -> {x -> m_{x,y}}, stored as CSR arrays."""

    def __init__(self, poset: BruhatPoset, row_ptr: np.ndarray, cols: np.ndarray,
                 coefs: np.ndarray, rule: str = "smallest"):
        self.poset = poset
        self.n = poset.n
        self.row_ptr = row_ptr
        self.cols = cols
        self.coefs = coefs
        self.rule = rule

    # -- index-level access ---------------------------------------------------
    def _pos(self, i: int, j: int) -> int:
        lo, hi = int(self.row_ptr[j]), int(self.row_ptr[j + 1])
        p = lo + int(np.searchsorted(self.cols[lo:hi], i))
        return p if p < hi and self.cols[p] == i else -1

    def row_indices(self, j: int) -> np.ndarray:
        return self.cols[self.row_ptr[j]:self.row_ptr[j + 1]]

    def row_coefs(self, j: int) -> np.ndarray:
        return self.coefs[self.row_ptr[j]:self.row_ptr[j + 1]]

    def m_idx(self, i: int, j: int) -> LaurentPoly:
        p = self._pos(i, j)
        return LaurentPoly.zero() if p < 0 else _poly(self.coefs[p])

    def mu_idx(self, i: int, j: int) -> int:
        p = self._pos(i, j)
        return 0 if p < 0 or self.coefs.shape[1] < 2 else int(self.coefs[p, 1])

    def m_tilde_idx(self, i: int, j: int) -> LaurentPoly:
        return self.m_idx(i, j).shift(self.poset.height_gap(i, j))

    def mu_column(self) -> np.ndarray:
        """mu(x, y) for every stored entry, aligned with ``cols``."""
        if self.coefs.shape[1] < 2:
            return np.zeros(len(self.cols), dtype=np.int64)
        return self.coefs[:, 1]

    def row_of_entry(self) -> np.ndarray:
        """The y index of every stored entry."""
        return np.repeat(np.arange(self.poset.size), np.diff(self.row_ptr))

    # -- element-level access -------------------------------------------------
    def m(self, x, y) -> LaurentPoly:
        return self.m_idx(self.poset.idx(x), self.poset.idx(y))

    def row(self, y) -> ModuleVector:
        j = self.poset.idx(y)
        els = self.poset.elements
        return ModuleVector({els[i]: _poly(c) for i, c in zip(self.row_indices(j), self.row_coefs(j))})

    def same_as(self, other: "CanonicalTable") -> bool:
        return (np.array_equal(self.row_ptr, other.row_ptr)
                and np.array_equal(self.cols, other.cols)
                and np.array_equal(self.coefs, other.coefs))

    @property
    def nnz(self) -> int:
        return len(self.cols)

    def __repr__(self) -> str:
        return f"CanonicalTable(n={self.n}, nnz={self.nnz}, rule={self.rule!r})"


def canonical_basis(n: int, poset: BruhatPoset | None = None, rule: str = "smallest",
                    backend: str | None = None, check: bool = True) -> CanonicalTable:
    P = poset or build_poset(n, backend=backend)
    if P.n != n:
        raise ValueError(f"poset is for n={P.n}, not n={n}")
    kern = _kernels.get(backend)
    try:
        row_ptr, cols, coefs = kern.canonical_table(P.sconj, P.lengths, descents(P, rule), P.depth)
    except _kernels.KernelInvariantError as exc:
        raise InvariantViolation(str(exc)) from exc
    table = CanonicalTable(P, row_ptr, cols, coefs, rule)
    if check:
        rep = verify_table_invariants(table)
        if not rep.ok:
            raise InvariantViolation(rep.to_text())
    return table


def mu(table: CanonicalTable, x, y) -> int:
    return table.mu_idx(table.poset.idx(x), table.poset.idx(y))


def m_tilde(table: CanonicalTable, x, y) -> LaurentPoly:
    return table.m_tilde_idx(table.poset.idx(x), table.poset.idx(y))


# -- checks ---------------------------------------------------------------------

def verify_table_invariants(table: CanonicalTable, rows: Iterable[int] | None = None) -> Report:
    """m_yy = 1, triangularity, negative support, m~ in 1 + v^2 Z[v^2], mu parity.

    Vectorised over the stored entries: for x <= y the coefficient of v^-k in
    m_{x,y} may only be nonzero when k >= 1 (or x = y, k = 0) and
    k = gap - 2j, and the coefficient at k = gap must be exactly 1.
    """
    P = table.poset
    rep = Report("table-invariants", P.n)
    selected = np.arange(P.size) if rows is None else np.fromiter(rows, dtype=np.int64)
    els = P.elements
    width = table.coefs.shape[1]
    ks = np.arange(width)
    for j in selected:
        idx = table.row_indices(j)
        coef = table.row_coefs(j)
        down = P.down_set(j)
        rep.check(np.array_equal(idx, down), y=els[j], property="support == {x <= y}")
        gaps = (P.lengths[j] - P.lengths[idx]) // 2
        diag = idx == j
        rep.check(bool(diag.any()) and coef[diag, 0].tolist() == [1]
                  and not coef[diag, 1:].any(), y=els[j], property="m_yy = 1")
        off = ~diag
        # exponents <= -1 off the diagonal
        bad_neg = off & (coef[:, 0] != 0)
        # only k = gap, gap-2, ... survive, nothing beyond the gap, constant of m~ is 1
        parity_ok = ((gaps[:, None] - ks[None, :]) % 2 == 0) & (ks[None, :] <= gaps[:, None])
        bad_par = ((coef != 0) & ~parity_ok).any(axis=1)
        top = coef[np.arange(len(idx)), np.minimum(gaps, width - 1)]
        bad_top = top != 1
        mu_bad = (gaps % 2 == 0) & (coef[:, 1] != 0) if width > 1 else np.zeros(len(idx), bool)
        for name, bad in (("negative support", bad_neg), ("m~ in 1+v^2Z[v^2]", bad_par | bad_top),
                          ("mu = 0 at even gap", mu_bad)):
            rep.domain_size += int(off.sum())
            for p in np.nonzero(bad & off)[0]:
                rep.violations.append({"x": str(els[idx[p]]), "y": str(els[j]), "property": name})
    return rep


def check_row_with_polys(table: CanonicalTable, j: int) -> list[str]:
    """Slow restatement of the invariants through LaurentPoly, for cross-checking."""
    P = table.poset
    problems = []
    for i in range(P.size):
        m = table.m_idx(i, j)
        if i == j:
            if m != LaurentPoly.one():
                problems.append(f"m_yy = {m}")
        elif P.leq_idx(i, j):
            if not is_strictly_negative_support(m):
                problems.append(f"{P.elements[i]}: support {m}")
            if not is_one_plus_even_positive(m.shift(P.height_gap(i, j))):
                problems.append(f"{P.elements[i]}: m~ = {m.shift(P.height_gap(i, j))}")
        elif not m.is_zero():
            problems.append(f"{P.elements[i]}: nonzero off the ideal")
    return problems


def verify_mu_descent_lemma(n: int, table: CanonicalTable, poset: BruhatPoset | None = None) -> Report:
    """x < y, s y s <= y, s x s > x  imply  mu(x, y) = [s x s = y]."""
    P = poset or table.poset
    rep = Report("mu-descent-lemma", n)
    L = P.lengths
    rows = table.row_of_entry()
    cols = table.cols
    mus = table.mu_column()
    strict = rows != cols
    for s in range(n - 1):
        conj = P.sconj[s]
        # entries stored are exactly the pairs x <= y
        hyp = strict & (L[conj[rows]] <= L[rows]) & (L[conj[cols]] > L[cols])
        expect = (conj[cols] == rows).astype(np.int64)
        rep.domain_size += int(hyp.sum())
        for p in np.nonzero(hyp & (mus != expect))[0]:
            rep.violations.append({"x": str(P.elements[cols[p]]), "y": str(P.elements[rows[p]]),
                                   "s": s + 1, "mu": int(mus[p]), "expected": int(expect[p])})
    return rep


def verify_descent_independence(n: int, poset: BruhatPoset | None = None,
                                table: CanonicalTable | None = None,
                                backend: str | None = None) -> Report:
    """The table does not depend on which strict descent drives each row."""
    P = poset or build_poset(n, backend=backend)
    first = table if table is not None and table.rule == "smallest" else canonical_basis(n, P, "smallest", backend)
    other = canonical_basis(n, P, "largest", backend)
    rep = Report("descent-independence", n)
    d1, d2 = descents(P, "smallest"), descents(P, "largest")
    rep.note = f"{int((d1 != d2).sum())} rows have a different descent under the two rules"
    for j in range(P.size):
        a = (first.row_indices(j), first.row_coefs(j))
        b = (other.row_indices(j), other.row_coefs(j))
        rep.check(np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1]), y=P.elements[j])
    return rep


def height_of(poset: BruhatPoset, x) -> Fraction:
    return poset.height(x)
