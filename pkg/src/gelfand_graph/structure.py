"""The recursive apparatus on F_n and the structural checks built on it.

Maps (all on one-line FPF involutions, 1-based):

* ``theta(n, z) = w0 z w0``
* ``rho(n, z) = w0 (z s_{n-1}) w0`` for z in F_{n-2}, embedded as fixing n-1, n
* ``nu(n, j, z) = sigma_j z sigma_j^-1`` for z in Y_1, sigma_j = s_j ... s_1
* ``phi = rho_n rho_{n-2}`` and ``lam(n, j, phi(y)) = rho_n(nu_j(rho_{n-2}(y)))``

Y_i is the set of z with z(1) = i + 1.  Every x in Y_1 has unique
coordinates (j, i, y) with x = lam_j(phi(y)) and y in Z_i (the Y-block of
F_{n-4} with index i); see :func:`coordinates`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from .bruhat import BruhatPoset, build_poset
from .canonical import CanonicalTable, canonical_basis
from .permutation import (
    FpfInvolution, Permutation, compose, conj_simple, double_factorial, enumerate_fpf,
    inverse, minimal_fpf, simple,
)
from .report import Report
from .wgraph import WGraph

__all__ = [
    "theta", "rho", "rho_inverse", "sigma", "nu", "nu_inverse", "y_index",
    "y_decomposition", "phi", "phi_inverse", "lam", "z_blocks", "coordinates",
    "staircase_vertical", "staircase_column", "RecursiveLabeling", "recursive_labels",
    "YDecomposition", "Tower", "middle_element", "build_d1", "named_molecule",
    "verify_staircase", "verify_molecule_theorems", "verify_ck_structure",
    "verify_cell_theorem", "verify_recursion_invariants", "verify_middle_element",
    "verify_d1", "verify_partitions", "verify_worked_example",
]


# -- maps -------------------------------------------------------------------------

def _relabel(z: FpfInvolution, f: Callable[[int], int], n: int) -> FpfInvolution:
    image = [0] * n
    for a, b in z.pairs():
        fa, fb = f(a), f(b)
        image[fa - 1], image[fb - 1] = fb, fa
    return FpfInvolution(tuple(image))


def _check_n(z: FpfInvolution, n: int) -> None:
    if z.n != n:
        raise ValueError(f"{z} is in F_{z.n}, expected F_{n}")


def theta(n: int, z: FpfInvolution) -> FpfInvolution:
    _check_n(z, n)
    return _relabel(z, lambda a: n + 1 - a, n)


def rho(n: int, z: FpfInvolution) -> FpfInvolution:
    """F_{n-2} -> Y_1; sends s_i to s_{n-i}."""
    _check_n(z, n - 2)
    image = [0] * n
    image[0], image[1] = 2, 1
    for a, b in z.pairs():
        fa, fb = n + 1 - a, n + 1 - b
        image[fa - 1], image[fb - 1] = fb, fa
    return FpfInvolution(tuple(image))


def rho_inverse(n: int, z: FpfInvolution) -> FpfInvolution:
    _check_n(z, n)
    if z(1) != 2:
        raise ValueError(f"{z} is not in Y_1")
    image = [0] * (n - 2)
    for a, b in z.pairs():
        if a == 1:
            continue
        fa, fb = n + 1 - a, n + 1 - b
        image[fa - 1], image[fb - 1] = fb, fa
    return FpfInvolution(tuple(image))


@lru_cache(maxsize=None)
def sigma(j: int, n: int) -> Permutation:
    """sigma_j = s_j s_{j-1} ... s_1 (sigma_0 is the identity)."""
    out = Permutation(tuple(range(1, n + 1)))
    for i in range(1, j + 1):
        out = compose(simple(i, n), out)
    return out


def y_index(z: FpfInvolution) -> int:
    return z(1) - 1


def nu(n: int, j: int, z: FpfInvolution) -> FpfInvolution:
    """Y_1 -> Y_j by conjugation with sigma_j."""
    _check_n(z, n)
    if z(1) != 2:
        raise ValueError(f"{z} is not in Y_1")
    if not 1 <= j <= n - 1:
        raise ValueError(f"nu_j needs 1 <= j <= {n - 1}, got {j}")
    s = sigma(j, n)
    return _relabel(z, s, n)


def nu_inverse(n: int, j: int, z: FpfInvolution) -> FpfInvolution:
    _check_n(z, n)
    if y_index(z) != j:
        raise ValueError(f"{z} is not in Y_{j}")
    s = inverse(sigma(j, n))
    return _relabel(z, s, n)


def phi(n: int, z: FpfInvolution) -> FpfInvolution:
    if n < 6:
        raise ValueError("phi needs n >= 6")
    return rho(n, rho(n - 2, z))


def phi_inverse(n: int, x: FpfInvolution) -> FpfInvolution:
    return rho_inverse(n - 2, rho_inverse(n, x))


def lam(n: int, j: int, x: FpfInvolution) -> FpfInvolution:
    """lambda_j on phi(F_{n-4}), 1 <= j <= n-3."""
    if not 1 <= j <= n - 3:
        raise ValueError(f"lambda_j needs 1 <= j <= {n - 3}, got {j}")
    y = phi_inverse(n, x)
    return rho(n, nu(n - 2, j, rho(n - 2, y)))


def coordinates(n: int, x: FpfInvolution) -> tuple[int, int, FpfInvolution]:
    """(j, i, y) with x = lam_j(phi(y)) and y in Z_i, for x in Y_1 and n >= 6."""
    if n < 6:
        raise ValueError("coordinates need n >= 6")
    u = rho_inverse(n, x)                 # in F_{n-2}, block Y_j there
    j = y_index(u)
    y = rho_inverse(n - 2, nu_inverse(n - 2, j, u))
    return j, y_index(y), y


@dataclass(frozen=True)
class YDecomposition:
    n: int
    blocks: tuple[tuple[FpfInvolution, ...], ...]     # blocks[i-1] = Y_i

    def block(self, i: int) -> tuple[FpfInvolution, ...]:
        return self.blocks[i - 1]


def y_decomposition(n: int) -> YDecomposition:
    buckets: list[list[FpfInvolution]] = [[] for _ in range(n - 1)]
    for z in enumerate_fpf(n):
        buckets[y_index(z) - 1].append(z)
    return YDecomposition(n, tuple(tuple(b) for b in buckets))


def z_blocks(n: int) -> list[set[FpfInvolution]]:
    """phi(Z_1), ..., phi(Z_{n-5}) for the decomposition of F_{n-4}."""
    if n < 6:
        raise ValueError("z_blocks needs n >= 6")
    dec = y_decomposition(n - 4)
    return [{phi(n, y) for y in block} for block in dec.blocks]


def staircase_vertical(n: int, k: int, x: FpfInvolution) -> bool:
    """s_1 nu_k(x) s_1 == s_k nu_k(x) s_k."""
    v = nu(n, k, x)
    return conj_simple(v, 1) == conj_simple(v, k)


# -- recursive labelling -------------------------------------------------------------

@dataclass(frozen=True)
class RecursiveLabeling:
    n: int
    label_to_elem: tuple[FpfInvolution, ...]          # label i at position i-1
    elem_to_label: dict = field(compare=False)

    def x(self, i: int) -> FpfInvolution:
        return self.label_to_elem[i - 1]

    def label(self, z: FpfInvolution) -> int:
        return self.elem_to_label[z]


@lru_cache(maxsize=None)
def recursive_labels(n: int) -> RecursiveLabeling:
    if n < 2 or n % 2:
        raise ValueError(f"n must be even and >= 2, got {n}")
    if n == 2:
        seq: list[FpfInvolution] = [minimal_fpf(2)]
    else:
        prev = recursive_labels(n - 2).label_to_elem
        base = [rho(n, x) for x in prev]
        seq = [nu(n, j, x) for j in range(1, n) for x in base]
    return RecursiveLabeling(n, tuple(seq), {z: i for i, z in enumerate(seq, start=1)})


# -- graph tower ------------------------------------------------------------------

class Tower:
    """Lazily built poset, canonical table and W-graph for each even n."""

    def __init__(self, backend: str | None = None,
                 loader: Callable[[int], tuple[BruhatPoset, CanonicalTable]] | None = None):
        self.backend = backend
        self.loader = loader
        self._graphs: dict[int, WGraph] = {}

    def graph(self, n: int) -> WGraph:
        if n not in self._graphs:
            if self.loader is not None:
                P, T = self.loader(n)
            else:
                P = build_poset(n, backend=self.backend)
                T = canonical_basis(n, P, backend=self.backend)
            self._graphs[n] = WGraph(P, T)
        return self._graphs[n]

    # conveniences on top of graph(n)
    def tau(self, n: int, z: FpfInvolution) -> frozenset[int]:
        return self.graph(n).tau(z)

    def tau_mask(self, n: int, z: FpfInvolution) -> int:
        g = self.graph(n)
        return int(g.tau_mask[g.poset.idx(z)])

    def molecule_of(self, n: int, z: FpfInvolution) -> frozenset[FpfInvolution]:
        g = self.graph(n)
        block = g.molecules().block_containing(g.poset.idx(z))
        return frozenset(g.vertices[k] for k in block)

    def same_molecule(self, n: int, a: FpfInvolution, b: FpfInvolution) -> bool:
        g = self.graph(n)
        M = g.molecules()
        return M.block_of[g.poset.idx(a)] == M.block_of[g.poset.idx(b)]

    def bidirected(self, n: int, a: FpfInvolution, b: FpfInvolution) -> bool:
        g = self.graph(n)
        i, j = g.poset.idx(a), g.poset.idx(b)
        return g.weight_idx(i, j) != 0 and g.weight_idx(j, i) != 0

    def omega(self, n: int, a: FpfInvolution, b: FpfInvolution) -> int:
        return self.graph(n).omega(a, b)

    def down_conj(self, n: int, z: FpfInvolution, i: int) -> bool:
        """s_i z s_i < z."""
        P = self.graph(n).poset
        return P.lengths[P.conj_simple_idx(i, P.idx(z))] < P.lengths[P.idx(z)]


def _p(n: int) -> int:
    return n // 2


def named_molecule(n: int, k: int, tower: Tower) -> frozenset[FpfInvolution]:
    """C_k^n: the molecule of x_{(2k-1)!!}; C_p^n = {w0}."""
    p = _p(n)
    if not 1 <= k <= p:
        raise ValueError(f"C_k^{n} needs 1 <= k <= {p}, got {k}")
    labels = recursive_labels(n)
    if k == p:
        return frozenset([labels.x(double_factorial(n - 1))])
    return tower.molecule_of(n, labels.x(double_factorial(2 * k - 1)))


def staircase_column(n: int, j: int, i: int) -> int:
    """Column k where the staircase crosses row lam_j phi(Z_i).

    Read off the staircase figures: k = i + 2 up to the step where the line
    moves two columns at once, then k = i + 3; for j = n-3 the line is
    vertical at k = n-1.
    """
    if j == n - 3:
        return n - 1
    return i + 2 if i <= n - 4 - j else i + 3


def _y1(n: int) -> list[FpfInvolution]:
    return [z for z in enumerate_fpf(n) if z(1) == 2]


# -- staircase ---------------------------------------------------------------------

def verify_staircase(n: int, tower: Tower) -> list[Report]:
    lit = Report("vert-stair", n)
    fig = Report("vert-stair-figure", n,
                 note="crossing column read off the staircase figures, see staircase_column")
    tau_rep = Report("vert-stair-tau", n)
    hor = Report("hori-stair", n)
    hor_fig = Report("hori-stair-figure", n)
    if n < 6:
        return [lit, fig, tau_rep, hor, hor_fig]
    for x in _y1(n):
        j, i, _ = coordinates(n, x)
        crossing = None
        for k in range(3, n):
            holds = staircase_vertical(n, k, x)
            lit.check(holds == (i == k - 1), x=x, j=j, i=i, k=k, identity=holds)
            fig.check(holds == (k == staircase_column(n, j, i)), x=x, j=j, i=i, k=k, identity=holds)
            if holds:
                crossing = k
                a, b = nu(n, k - 1, x), nu(n, k, x)
                ta, tb = tower.tau(n, a), tower.tau(n, b)
                tau_rep.check(ta < tb and tb - ta == {1, k} and not tower.bidirected(n, a, b),
                              x=x, k=k, tau_lower=ta, tau_upper=tb,
                              bidirected=tower.bidirected(n, a, b))
        for rep, k in ((hor, i + 1), (hor_fig, crossing)):
            if k is None or k + 1 > n - 1:
                continue
            x2 = conj_simple(x, k + 1)
            in_row = x2(1) == 2 and coordinates(n, x2)[:2] == (j, i + 1)
            bi = x2(1) == 2 and tower.bidirected(n, nu(n, k, x), nu(n, k, x2))
            rep.check(in_row and not bi, x=x, j=j, i=i, k=k, next_row=in_row, bidirected=bi)
    return [lit, fig, tau_rep, hor, hor_fig]


# -- molecules ---------------------------------------------------------------------

def verify_molecule_theorems(n: int, tower: Tower) -> list[Report]:
    out = []
    g = tower.graph(n)
    Y1 = _y1(n)

    rep = Report("rho-bi-prop", n)
    rep_m = Report("rho-bi-prop-molecule", n)
    merge = Report("merge-cor", n)
    if n >= 4:
        h = tower.graph(n - 2)
        Q = h.poset
        for a in range(Q.size):
            for b in range(a + 1, Q.size):
                x, y = Q.elements[a], Q.elements[b]
                rx, ry = rho(n, x), rho(n, y)
                if Q.leq_idx(a, b):
                    rep.check(tower.bidirected(n - 2, x, y) == tower.bidirected(n, rx, ry), x=x, y=y)
                same_lo = tower.same_molecule(n - 2, x, y)
                same_hi = tower.same_molecule(n, rx, ry)
                rep_m.check(same_lo == same_hi, x=x, y=y)
                if not same_lo:
                    merge.check(not same_hi, x=x, y=y)
    out += [rep, rep_m, merge]

    for tid, j in (("nu-2-thm", 2), ("nu-n-thm", n - 1)):
        edge = Report(tid, n)
        mol = Report(tid + "-molecule", n)
        if n >= 4:
            for a, x in enumerate(Y1):
                for y in Y1[a + 1:]:
                    vx, vy = nu(n, j, x), nu(n, j, y)
                    mol.check(tower.same_molecule(n, x, y) == tower.same_molecule(n, vx, vy), x=x, y=y)
                    if j == n - 1 and not (g.poset.leq(x, y) or g.poset.leq(y, x)):
                        continue
                    bx, bv = tower.bidirected(n, x, y), tower.bidirected(n, vx, vy)
                    edge.check(bx == bv, x=x, y=y, edge=bx, edge_after=bv,
                               tau=(tower.tau(n, x), tower.tau(n, y)),
                               tau_after=(tower.tau(n, vx), tower.tau(n, vy)))
        out += [edge, mol]

    cor = Report("tau-cor", n)
    lem = Report("tau-lem1", n, note="subset read as inclusion; the two sets always differ in s_j")
    for x in Y1:
        t = tower.tau(n, x)
        for j in range(2, n):
            lo, hi = nu(n, j - 1, x), nu(n, j, x)
            t_lo, t_hi = tower.tau(n, lo), tower.tau(n, hi)
            if j <= n - 2:
                pred_edge = (j + 1) in t or j not in t
                pred_sub = j in t and (j + 1) not in t
            else:
                pred_edge = (n - 1) not in t
                pred_sub = (n - 1) in t
            cor.check(tower.bidirected(n, lo, hi) == pred_edge, x=x, j=j)
            lem.check((t_lo <= t_hi) == pred_sub, x=x, j=j)
    out += [cor, lem]

    between = Report("between-mole-thm", n, note="verified empirically (proof absent in source)")
    dif = Report("difmole-prop", n)
    for x in Y1:
        orbit = [nu(n, j, x) for j in range(1, n)]
        for a in range(len(orbit)):
            for b in range(a + 1, len(orbit)):
                if tower.same_molecule(n, orbit[a], orbit[b]):
                    between.check(all(tower.same_molecule(n, orbit[c], orbit[a])
                                      for c in range(a, b + 1)), x=x, i=a + 1, j=b + 1)
        for k in range(2, n):
            if staircase_vertical(n, k, x):
                for i in range(1, k):
                    dif.check(not tower.same_molecule(n, orbit[k - 1], orbit[i - 1]), x=x, k=k, i=i)
    out += [between, dif]

    C1 = tower.molecule_of(n, minimal_fpf(n))
    lem_c1 = Report("C1-lem", n)
    prop_c1 = Report("C1-prop", n, note="induction base taken at n = 4 (the source says n = 3)")
    for x in sorted(C1, key=lambda z: z.image):
        t = tower.tau(n, x)
        lem_c1.check(not any(i in t and i + 1 in t for i in range(1, n - 1)), x=x, tau=t)
        for i in range(1, n):
            if tower.down_conj(n, x, i):
                prop_c1.check(conj_simple(x, i) in C1, x=x, s=i)
    out += [lem_c1, prop_c1]
    return out


def verify_partitions(n: int, tower: Tower) -> list[Report]:
    g = tower.graph(n)
    M, C = g.molecules(), g.cells()
    rep = Report("molecules-are-cells", n)
    rep.check(M == C, molecules=len(M), cells=len(C))
    ref = Report("molecules-inside-cells", n)
    ref.check(M.refines(C))
    count = Report("molecule-count", n, note=f"{len(M)} molecules, {len(C)} cells")
    count.check(len(M) >= _p(n), molecules=len(M), lower_bound=_p(n))
    w0 = g.poset.size - 1
    single = Report("w0-singleton", n)
    single.check(M.block_containing(w0) == (w0,) and C.block_containing(w0) == (w0,))
    return [rep, ref, count, single]


# -- D_1, middle element, C_k -------------------------------------------------------

@dataclass
class D1Result:
    n: int
    elements: set[FpfInvolution]
    k: dict[FpfInvolution, int]
    problems: list[dict]


@lru_cache(maxsize=None)
def _build_d1_cached(n: int) -> D1Result:
    if n == 2:
        return D1Result(2, {minimal_fpf(2)}, {}, [])
    prev = _build_d1_cached(n - 2)
    p = _p(n)
    elements: set[FpfInvolution] = set()
    ks: dict[FpfInvolution, int] = {}
    problems = list(prev.problems)
    for z0 in sorted(prev.elements, key=lambda z: z.image):
        z = rho(n, z0)
        hits = [k for k in range(2, n) if conj_simple(nu(n, k, z), 1) == nu(n, k - 1, z)]
        if not hits:
            problems.append({"n": n, "z": str(z), "problem": "no k_z"})
            k_z = n
        else:
            k_z = hits[0]
            if k_z > p + 1:
                problems.append({"n": n, "z": str(z), "k_z": k_z, "problem": "k_z > p+1"})
            if len([k for k in hits if k <= p + 1]) > 1:
                problems.append({"n": n, "z": str(z), "hits": hits, "problem": "k_z not unique"})
        ks[z] = k_z
        elements.update(nu(n, j, z) for j in range(1, k_z))
    return D1Result(n, elements, ks, problems)


def build_d1(n: int) -> set[FpfInvolution]:
    if n < 2 or n % 2:
        raise ValueError(f"n must be even and >= 2, got {n}")
    return set(_build_d1_cached(n).elements)


def verify_d1(n: int, tower: Tower) -> list[Report]:
    res = _build_d1_cached(n)
    eq = Report("D1-equals-C1", n)
    C1 = tower.molecule_of(n, minimal_fpf(n))
    eq.check(res.elements == set(C1), only_d1=sorted(map(str, res.elements - C1)),
             only_c1=sorted(map(str, C1 - res.elements)))
    kz = Report("k-bound", n)
    for z, k in sorted(res.k.items(), key=lambda kv: kv[0].image):
        kz.check(k <= _p(n) + 1, z=z, k_z=k)
    for prob in res.problems:
        kz.violations.append(prob)
    desc = Report("k-lem-descents", n)
    for z, k in sorted(res.k.items(), key=lambda kv: kv[0].image):
        for j in range(2, k):
            desc.check((j - 1) not in tower.tau(n, nu(n, j, z)), z=z, j=j)
    return [eq, kz, desc]


def middle_element(n: int, tower: Tower) -> tuple[FpfInvolution | None, list[FpfInvolution]]:
    """The unique z with tau(z) = {s_{n/2}}, plus the full list of candidates."""
    g = tower.graph(n)
    want = 1 << (_p(n) - 1)
    found = [g.vertices[k] for k in np.nonzero(g.tau_mask == want)[0]]
    return (found[0] if len(found) == 1 else None), found


def verify_middle_element(n: int, tower: Tower) -> list[Report]:
    rep = Report("mid-uniq-prop", n)
    w, found = middle_element(n, tower)
    rep.check(w is not None, candidates=[str(z) for z in found])
    if w is not None and n >= 4:
        prev, _ = middle_element(n - 2, tower)
        expect = nu(n, _p(n), rho(n, prev)) if prev is not None else None
        rep.check(w == expect, found=w, expected=expect)
    return [rep]


def _h_paths(n: int) -> tuple[list[FpfInvolution], list[FpfInvolution]]:
    """The two bidirected paths whose union is H; the second is theta_n of the first."""
    top = recursive_labels(n).x(double_factorial(n - 3))
    first = [top] + [nu(n, j, top) for j in range(2, n - 1)]
    second = [theta(n, z) for z in reversed(first)]
    return first, second


def verify_ck_structure(n: int, tower: Tower) -> list[Report]:
    p = _p(n)
    main = Report("main-thm", n)
    paths = Report("k-lem-paths", n, note="second path taken as the theta_n image of the first")
    cor = Report("Cp-1-cor", n)
    if n < 6:
        return [main, paths, cor]
    L = recursive_labels(n)
    for k in range(2, p):
        Ck = named_molecule(n, k, tower)
        main.check(tower.molecule_of(n, L.x(double_factorial(2 * k - 1))) == Ck, k=k, part="label")
        lower = {nu(n, n - 1, rho(n, z)) for z in named_molecule(n - 2, k - 1, tower)}
        main.check(lower <= Ck, k=k, part="nu_{n-1} rho(C_{k-1})")
        same = {rho(n, z) for z in named_molecule(n - 2, k, tower)}
        main.check(same <= Ck, k=k, part="rho(C_k)")

    first, second = _h_paths(n)
    v = nu(n, n - 1, first[0])
    for a, b in zip(first, first[1:]):
        paths.check(tower.bidirected(n, a, b), path=1, a=a, b=b)
    paths.check(first[-1] == conj_simple(v, n - 1), path=1, part="end")
    paths.check(conj_simple(v, n - 1) == conj_simple(v, 1) == second[0], path=2, part="start")
    for a, b in zip(second, second[1:]):
        paths.check(tower.bidirected(n, a, b), path=2, a=a, b=b)
    end = nu(n, n - 3, recursive_labels(n).x(double_factorial(n - 5)))
    paths.check(second[-1] == end, path=2, part="end", found=second[-1], expected=end)

    H = set(first) | set(second)
    rhs = H | {nu(n, n - 1, rho(n, z)) for z in named_molecule(n - 2, p - 2, tower)} if p >= 3 else H
    lhs = set(named_molecule(n, p - 1, tower))
    cor.check(lhs == rhs, only_molecule=sorted(map(str, lhs - rhs)),
              only_formula=sorted(map(str, rhs - lhs)))
    return [main, paths, cor]


# -- cells -------------------------------------------------------------------------

def verify_cell_theorem(n: int, tower: Tower) -> list[Report]:
    g = tower.graph(n)
    P, T = g.poset, g.table
    C1 = tower.molecule_of(n, minimal_fpf(n))
    inside = np.zeros(P.size, dtype=bool)
    inside[[P.idx(z) for z in C1]] = True

    thm = Report("C1-cell-thm", n)
    back = int(np.sum(~inside[g.src] & inside[g.dst]))
    thm.note = f"{back} edges enter C_1 from outside"
    for a, b, w in zip(g.src, g.dst, g.weight):
        if inside[a] and not inside[b]:
            thm.violations.append({"x": str(P.elements[a]), "y": str(P.elements[b]), "w": int(w)})
    thm.domain_size = int(inside.sum()) * int((~inside).sum())
    is_cell = Report("C1-is-cell", n)
    is_cell.check(tuple(sorted(P.idx(z) for z in C1)) in g.cells().blocks)

    ploy = Report("ploy-lem", n)
    ploy_mu = Report("ploy-lem-mu", n, note="mu = 0 restricted to height gap > 1")
    mum0 = Report("mum-lem-zero", n)
    mum = Report("mum-lem-5-1", n)
    c1_sorted = sorted(C1, key=lambda z: z.image)
    for y in P.elements:
        if y in C1:
            continue
        i = y_index(y)
        sy = conj_simple(y, i)
        ty, tsy = tower.tau(n, y), tower.tau(n, sy)
        jy, jsy = P.idx(y), P.idx(sy)
        for x in c1_sorted:
            jx = P.idx(x)
            m = T.m_idx(jx, jy)
            mu_xy = m.coeff(-1)
            if tsy < ty:
                ploy.check(m.is_zero() or m.top_degree() <= -3, x=x, y=y, m=m)
                mum0.check(mu_xy == 0, x=x, y=y, mu=mu_xy)
                if P.height_gap(jx, jy) > 1:
                    ploy_mu.check(mu_xy == 0, x=x, y=y, mu=mu_xy)
            elif i >= 2:
                sx, s2x = conj_simple(x, i), conj_simple(x, i - 1)
                rhs = (0 if sx == x else 1) * T.mu_idx(P.idx(sx), jsy)
                if s2x in C1:
                    rhs += T.mu_idx(P.idx(s2x), jsy)
                mum.check(mu_xy == rhs, x=x, y=y, i=i, mu=mu_xy, predicted=rhs)
    return [thm, is_cell, ploy, ploy_mu, mum0, mum]


# -- recursion invariants ---------------------------------------------------------

def verify_recursion_invariants(n: int, tower: Tower) -> list[Report]:
    g = tower.graph(n)
    P = g.poset
    els = P.elements
    out = []

    th = Report("theta-prop", n)
    img = [P.idx(theta(n, z)) for z in els]
    th.check(sorted(img) == list(range(P.size)), part="bijection")
    M = P.leq_matrix()
    perm = np.array(img)
    th.check(bool((M[np.ix_(perm, perm)] == M).all()), part="order")
    th.check(bool((P.lengths[perm] == P.lengths).all()), part="height")
    out.append(th)

    dec = Report("recurs-thm", n)
    Y = y_decomposition(n)
    dec.check(sum(len(b) for b in Y.blocks) == P.size, part="partition")
    if n >= 4:
        prev = enumerate_fpf(n - 2)
        for j in range(1, n):
            block = set(Y.block(j))
            dec.check(block == {nu(n, j, rho(n, z)) for z in prev}, j=j, part="nu_j rho")
            dec.check(len(block) == double_factorial(n - 3), j=j, part="size")
    out.append(dec)

    rp = Report("rho-prop", n)
    nj = Report("nuj-prop", n)
    if n >= 4:
        Q = tower.graph(n - 2).poset
        images = [P.idx(rho(n, z)) for z in Q.elements]
        rp.check(len(set(images)) == Q.size and all(els[k](1) == 2 for k in images), part="into Y_1")
        rp.check(bool((M[np.ix_(images, images)] == Q.leq_matrix()).all()), part="order")
        y1 = [P.idx(z) for z in _y1(n)]
        M1 = M[np.ix_(y1, y1)]
        for j in range(1, n):
            im = [P.idx(nu(n, j, els[k])) for k in y1]
            nj.check(bool((M[np.ix_(im, im)] == M1).all()), j=j, part="order")
            nj.check(bool((P.lengths[im] - P.lengths[y1] == 2 * (j - 1)).all()), j=j, part="height")
    out += [rp, nj]

    nl = Report("nu-lem", n)
    nc = Report("nu-cor", n)
    for j in range(1, n):
        sj = sigma(j, n)
        for i in range(2, j + 1):
            nl.check(compose(sj, simple(i, n)) == compose(simple(i - 1, n), sj), j=j, i=i, part="sigma")
        if j + 1 <= n - 1:
            lhs = compose(sj, simple(j + 1, n))
            a = compose(compose(simple(j, n), simple(j + 1, n)), compose(simple(j, n), sj))
            b = compose(compose(simple(j + 1, n), simple(j, n)), compose(simple(j + 1, n), sj))
            nl.check(lhs == a == b, j=j, part="sigma s_{j+1}")
    for x in _y1(n):
        for j in range(1, n):
            for i in range(3, j + 1):
                nl.check(nu(n, j, conj_simple(x, i)) == conj_simple(nu(n, j, x), i - 1), x=x, j=j, i=i)
        orbit = [nu(n, j, x) for j in range(1, n)]
        for a in range(len(orbit)):
            for b in range(a, len(orbit)):
                nc.check(P.leq(orbit[a], orbit[b]), x=x, i=a + 1, j=b + 1)
    out += [nl, nc]

    sk = Report("skip-prop", n)
    for z in els:
        i = y_index(z)
        if i == 1:
            allowed = {2}
        elif i == n - 1:
            allowed = {1, n - 1}
        else:
            allowed = {1, i, i + 1}
        for s in range(1, n):
            if y_index(conj_simple(z, s)) != i:
                sk.check(s in allowed, z=z, s=s, block=i)
    out.append(sk)

    rt = Report("reflection-transport", n,
                note="cases as stated; k = j (i <= j) is outside the three stated cases")
    for j in range(1, n):
        sj = sigma(j, n)
        for i in range(2, n):
            for k in range(i, n):
                r = _transposition(i, k + 1, n)
                if j + 1 < i:
                    r2 = r
                elif k < j:
                    r2 = _transposition(i - 1, k, n)
                elif i <= j + 1 <= k:
                    r2 = _transposition(i - 1, k + 1, n)
                else:
                    continue
                rt.check(compose(sj, r) == compose(r2, sj), j=j, r=(i, k + 1))
    out.append(rt)

    tt = Report("tau-rho-transport", n)
    if n >= 4:
        for z in tower.graph(n - 2).poset.elements:
            tt.check(tower.tau(n, rho(n, z)) == {1} | {n - i for i in tower.tau(n - 2, z)}, z=z)
    out.append(tt)
    return out


def _transposition(a: int, b: int, n: int) -> Permutation:
    image = list(range(1, n + 1))
    image[a - 1], image[b - 1] = b, a
    return Permutation(tuple(image))


# -- worked example ----------------------------------------------------------------

def verify_worked_example(n: int, tower: Tower) -> list[Report]:
    """tau(x_1) = {s_1, s_3, ...} and the x_1 -> nu_{n-1}(x_1) path directions."""
    x1 = minimal_fpf(n)
    tau_rep = Report("example-tau-x1", n)
    tau_rep.check(tower.tau(n, x1) == frozenset(range(1, n, 2)), tau=tower.tau(n, x1))
    path = Report("example-path", n)
    if n >= 4:
        orbit = [nu(n, j, x1) for j in range(1, n)]
        for t in range(2, n):
            lo, hi = orbit[t - 2], orbit[t - 1]
            fwd, bwd = tower.omega(n, lo, hi), tower.omega(n, hi, lo)
            if t % 2 == 0:
                path.check(fwd != 0 and bwd != 0, step=t, expect="bidirected", fwd=fwd, bwd=bwd)
            else:
                path.check(fwd == 0 and bwd != 0, step=t, expect="nu_t -> nu_(t-1) only",
                           fwd=fwd, bwd=bwd)
    return [tau_rep, path]
