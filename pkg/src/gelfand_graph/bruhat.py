"""The Bruhat order on F_n as a quasiparabolic set under conjugation.

x <= y is the reflexive-transitive closure of x -> r x r over reflections r
with ht(r x r) > ht(x). The closure is held as two packed bit matrices (up-sets
and down-sets), built level by level in height order by the kernel backend.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _kernels
from .permutation import FpfInvolution, Reflection, enumerate_fpf, reflections
from .report import Report

__all__ = [
    "BruhatPoset", "UnknownElement", "build_poset", "leq", "covers",
    "verify_qp1", "verify_qp2", "verify_bruhat_lifting", "verify_reflection_lemma",
    "verify_partial_order",
]


class UnknownElement(KeyError):
    """The involution is not an element of this F_n."""


def _conj_table(images: np.ndarray, index: dict, pairs: Sequence[tuple[int, int]]) -> np.ndarray:
    # images: (N, n) 0-based one-line rows; pairs: 0-based transpositions (i, j)
    n_elems, n = images.shape
    out = np.empty((len(pairs), n_elems), dtype=np.int32)
    for g, (i, j) in enumerate(pairs):
        conj = images.copy()
        conj[:, [i, j]] = conj[:, [j, i]]
        hit_i, hit_j = conj == i, conj == j
        conj[hit_i], conj[hit_j] = j, i
        out[g] = [index[row.tobytes()] for row in conj]
    return out


def _bits_to_bool(bits: np.ndarray, n_elems: int) -> np.ndarray:
    as_bytes = bits.view(np.uint8).reshape(bits.shape[0], -1)
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :n_elems].astype(bool)


class BruhatPoset:
    """F_n with dense indices, conjugation tables and the order relation."""

    def __init__(self, n: int, backend: str | None = None):
        if n < 2 or n % 2:
            raise ValueError(f"n must be even and >= 2, got {n}")
        self.n = n
        self.elements: list[FpfInvolution] = enumerate_fpf(n)
        self.index: dict[FpfInvolution, int] = {z: k for k, z in enumerate(self.elements)}
        self.size = len(self.elements)

        images = np.array([z.image for z in self.elements], dtype=np.int8) - 1
        by_bytes = {row.tobytes(): k for k, row in enumerate(images)}
        self.images = images
        self.lengths = np.array([_inv(z.image) for z in self.elements], dtype=np.int32)
        self.reflections: list[Reflection] = reflections(n)
        self.sconj = _conj_table(images, by_bytes, [(i, i + 1) for i in range(n - 1)])
        self.rconj = _conj_table(images, by_bytes, [(r.i - 1, r.j - 1) for r in self.reflections])

        # equal-height reflection moves must be trivial (QP1); they add no relations
        same = self.lengths[self.rconj] == self.lengths[None, :]
        moved = self.rconj != np.arange(self.size)[None, :]
        if (same & moved).any():
            raise AssertionError("a height-preserving reflection moved an element")

        kern = _kernels.get(backend)
        self.up_bits = kern.bit_closure(self.rconj, self.lengths, True)
        self.down_bits = kern.bit_closure(self.rconj, self.lengths, False)
        self._bool = None

    # -- lookup -------------------------------------------------------------
    def idx(self, z) -> int:
        try:
            return self.index[z]
        except KeyError:
            raise UnknownElement(f"{z} is not in F_{self.n}") from None

    def height(self, z) -> Fraction:
        return Fraction(int(self.lengths[self.idx(z)]), 2)

    def height_gap(self, i: int, j: int) -> int:
        """ht(elements[j]) - ht(elements[i]), always an integer."""
        return (int(self.lengths[j]) - int(self.lengths[i])) // 2

    @property
    def depth(self) -> int:
        """The largest height difference in F_n."""
        return self.height_gap(0, self.size - 1)

    def conj_simple_idx(self, i: int, k: int) -> int:
        """Index of s_i z s_i for z = elements[k] (i is 1-based)."""
        return int(self.sconj[i - 1, k])

    # -- order --------------------------------------------------------------
    def leq_idx(self, i: int, j: int) -> bool:
        i, j = int(i), int(j)
        return bool((int(self.up_bits[i, j >> 6]) >> (j & 63)) & 1)

    def lt_idx(self, i: int, j: int) -> bool:
        return i != j and self.leq_idx(i, j)

    def leq(self, x, y) -> bool:
        return self.leq_idx(self.idx(x), self.idx(y))

    def leq_matrix(self) -> np.ndarray:
        """Dense boolean matrix with ``M[x, y] = x <= y``."""
        if self._bool is None:
            self._bool = _bits_to_bool(self.up_bits, self.size)
        return self._bool

    def up_set(self, i: int) -> np.ndarray:
        return np.nonzero(_bits_to_bool(self.up_bits[i:i + 1], self.size)[0])[0]

    def down_set(self, j: int) -> np.ndarray:
        return np.nonzero(_bits_to_bool(self.down_bits[j:j + 1], self.size)[0])[0]

    def covers_idx(self, i: int) -> list[int]:
        above = [j for j in self.up_set(i) if j != i]
        return [j for j in above if not any(k != j and self.leq_idx(k, j) for k in above)]

    def covers(self, x) -> list[FpfInvolution]:
        return [self.elements[j] for j in self.covers_idx(self.idx(x))]

    def minimum(self) -> FpfInvolution:
        return self.elements[0]

    def maximum(self) -> FpfInvolution:
        return self.elements[-1]

    def __repr__(self) -> str:
        return f"BruhatPoset(n={self.n}, size={self.size})"


def _inv(image) -> int:
    n = len(image)
    return sum(1 for a in range(n) for b in range(a + 1, n) if image[a] > image[b])


def build_poset(n: int, backend: str | None = None) -> BruhatPoset:
    return BruhatPoset(n, backend=backend)


def leq(poset: BruhatPoset, x, y) -> bool:
    return poset.leq(x, y)


def covers(poset: BruhatPoset, x) -> list[FpfInvolution]:
    return poset.covers(x)


# -- axiom and lemma checks ---------------------------------------------------

def verify_qp1(n: int, poset: BruhatPoset | None = None) -> Report:
    """ht(rx) = ht(x) forces rx = x, over all (r, x)."""
    P = poset or build_poset(n)
    rep = Report("QP1", n)
    ar = np.arange(P.size)
    for g, r in enumerate(P.reflections):
        rx = P.rconj[g]
        for k in range(P.size):
            if P.lengths[rx[k]] == P.lengths[k]:
                rep.check(rx[k] == ar[k], r=(r.i, r.j), x=P.elements[k])
            else:
                rep.domain_size += 1
    return rep


def verify_qp2(n: int, poset: BruhatPoset | None = None) -> Report:
    """ht(rx) > ht(x) and ht(srx) < ht(sx) force rx = sx, over all (r, x, s)."""
    P = poset or build_poset(n)
    rep = Report("QP2", n)
    L = P.lengths
    for g, r in enumerate(P.reflections):
        rx = P.rconj[g]
        for s in range(n - 1):
            sx = P.sconj[s]
            srx = sx[rx]
            hyp = (L[rx] > L) & (L[srx] < L[sx])
            bad = np.nonzero(hyp & (rx != sx))[0]
            rep.domain_size += P.size
            for k in bad:
                rep.violations.append({"r": [r.i, r.j], "x": str(P.elements[k]), "s": s + 1})
    return rep


def verify_bruhat_lifting(n: int, poset: BruhatPoset | None = None) -> Report:
    """For x <= y and simple s: sys <= y => sxs <= y, and x <= sxs => x <= sys."""
    P = poset or build_poset(n)
    rep = Report("bruhat-lifting", n)
    M = P.leq_matrix()
    L = P.lengths
    for s in range(n - 1):
        perm = P.sconj[s]
        y_desc = L[perm] <= L            # s y s <= y
        x_asc = L[perm] >= L             # x <= s x s
        first = M & y_desc[None, :] & ~M[perm, :]
        second = M & x_asc[:, None] & ~M[:, perm]
        rep.domain_size += int(M.sum())
        for x, y in zip(*np.nonzero(first)):
            rep.violations.append({"case": "sy<=y => sx<=y", "x": str(P.elements[x]),
                                   "y": str(P.elements[y]), "s": s + 1})
        for x, y in zip(*np.nonzero(second)):
            rep.violations.append({"case": "x<=sx => x<=sy", "x": str(P.elements[x]),
                                   "y": str(P.elements[y]), "s": s + 1})
    return rep


def verify_reflection_lemma(n: int, poset: BruhatPoset | None = None) -> Report:
    """r x r = r' x r' != x implies r' in {r, x r x}."""
    P = poset or build_poset(n)
    rep = Report("reflection-lemma", n)
    refl = [(r.i, r.j) for r in P.reflections]
    for k, x in enumerate(P.elements):
        groups: dict[int, list[int]] = {}
        for g in range(len(refl)):
            target = int(P.rconj[g, k])
            if target != k:
                groups.setdefault(target, []).append(g)
        for target, gs in groups.items():
            for g in gs:
                i, j = refl[g]
                xi, xj = sorted((x(i), x(j)))
                allowed = {refl[g], (xi, xj)}
                for h in gs:
                    rep.check(refl[h] in allowed, x=x, r=refl[g], r2=refl[h])
    return rep


def verify_partial_order(n: int, poset: BruhatPoset | None = None) -> Report:
    """Reflexivity, antisymmetry, transitivity and strict height monotonicity."""
    P = poset or build_poset(n)
    rep = Report("partial-order", n)
    M = P.leq_matrix()
    Mi = M.astype(np.int64)
    rep.check(bool(M.diagonal().all()), property="reflexive")
    rep.check(not (M & M.T & ~np.eye(P.size, dtype=bool)).any(), property="antisymmetric")
    rep.check(not ((Mi @ Mi > 0) & ~M).any(), property="transitive")
    strict = M & ~np.eye(P.size, dtype=bool)
    rep.check(not (strict & (P.lengths[:, None] >= P.lengths[None, :])).any(),
              property="x<y => ht(x)<ht(y)")
    rep.check(bool(M[0].all()) and bool(M[:, -1].all()), property="unique min and max")
    down = _bits_to_bool(P.down_bits, P.size)
    rep.check(bool((down.T == M).all()), property="up/down closures agree")
    return rep
