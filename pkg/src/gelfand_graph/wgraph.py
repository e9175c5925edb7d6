"""The W-graph on F_n: descent sets, edge weights, molecules and cells.

Descents are stored as bitmasks (bit i-1 for s_i) so subset tests are a single
``a & ~b``.  Edges come straight from the nonzero mu entries of the canonical
table; nothing is computed for incomparable pairs, where mu vanishes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .bruhat import BruhatPoset, build_poset
from .canonical import CanonicalTable, canonical_basis
from .permutation import FpfInvolution
from .report import Report

__all__ = [
    "WGraph", "Partition", "build_wgraph", "tau", "tau_masks", "omega",
    "bidirected_edges", "molecules", "cells", "verify_bidirected_criterion",
    "export_dot", "export_json", "parse_json", "mask_to_set",
]


def tau_masks(poset: BruhatPoset) -> np.ndarray:
    """Weak descent set of every element as a bitmask."""
    L = poset.lengths
    weak = L[poset.sconj] <= L[None, :]            # (n-1, N)
    weights = (np.int64(1) << np.arange(poset.n - 1, dtype=np.int64))[:, None]
    return (weak.astype(np.int64) * weights).sum(axis=0)


def mask_to_set(mask: int) -> frozenset[int]:
    out, i = [], 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def tau(z: FpfInvolution, poset: BruhatPoset) -> frozenset[int]:
    """{i : s_i z s_i <= z}, 1-based."""
    k = poset.idx(z)
    L = poset.lengths
    return frozenset(i + 1 for i in range(poset.n - 1) if L[poset.sconj[i, k]] <= L[k])


def omega(x, y, table: CanonicalTable, poset: BruhatPoset | None = None) -> int:
    P = poset or table.poset
    i, j = P.idx(x), P.idx(y)
    if i == j:
        raise ValueError("omega is defined for x != y")
    tx, ty = tau(x, P), tau(y, P)
    if tx <= ty:
        return 0
    return table.mu_idx(i, j) + table.mu_idx(j, i)


@dataclass(frozen=True)
class Partition:
    """Disjoint blocks of vertex indices, sorted by (min height, min index)."""

    blocks: tuple[tuple[int, ...], ...]
    block_of: np.ndarray

    @classmethod
    def from_labels(cls, labels: np.ndarray, lengths: np.ndarray) -> "Partition":
        groups: dict[int, list[int]] = {}
        for v, lab in enumerate(labels):
            groups.setdefault(int(lab), []).append(v)
        blocks = sorted((tuple(g) for g in groups.values()),
                        key=lambda b: (int(lengths[list(b)].min()), b[0]))
        block_of = np.empty(len(labels), dtype=np.int64)
        for b, members in enumerate(blocks):
            block_of[list(members)] = b
        return cls(tuple(blocks), block_of)

    def __len__(self) -> int:
        return len(self.blocks)

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash(self.blocks)

    def block_containing(self, v: int) -> tuple[int, ...]:
        return self.blocks[int(self.block_of[v])]

    def refines(self, other: "Partition") -> bool:
        """Every block of self lies inside a block of other."""
        return all(len({int(other.block_of[v]) for v in b}) == 1 for b in self.blocks)


class WGraph:
    """Vertices F_n with tau masks and the nonzero weights omega(x -> y).

    Edges are held as parallel arrays ``src``, ``dst``, ``weight`` sorted by
    (src, dst).
    """

    def __init__(self, poset: BruhatPoset, table: CanonicalTable):
        self.n = poset.n
        self.poset = poset
        self.table = table
        self.vertices = poset.elements
        self.tau_mask = tau_masks(poset)

        y = table.row_of_entry()
        x = table.cols.astype(np.int64)
        mu = table.mu_column()
        keep = (x != y) & (mu != 0)
        x, y, mu = x[keep], y[keep], mu[keep]
        tm = self.tau_mask
        # x < y so mu(y, x) = 0 and omega in either direction is mu(x, y)
        up = (tm[x] & ~tm[y]) != 0
        down = (tm[y] & ~tm[x]) != 0
        src = np.concatenate([x[up], y[down]])
        dst = np.concatenate([y[up], x[down]])
        w = np.concatenate([mu[up], mu[down]])
        order = np.lexsort((dst, src))
        self.src, self.dst, self.weight = src[order], dst[order], w[order]
        self._molecules: Partition | None = None
        self._cells: Partition | None = None

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.src)

    @property
    def edges(self) -> dict[tuple[FpfInvolution, FpfInvolution], int]:
        V = self.vertices
        return {(V[a], V[b]): int(w) for a, b, w in zip(self.src, self.dst, self.weight)}

    def tau(self, z) -> frozenset[int]:
        return mask_to_set(int(self.tau_mask[self.poset.idx(z)]))

    def tau_idx(self, k: int) -> frozenset[int]:
        return mask_to_set(int(self.tau_mask[k]))

    def weight_idx(self, a: int, b: int) -> int:
        lo = np.searchsorted(self.src, a, "left")
        hi = np.searchsorted(self.src, a, "right")
        p = lo + np.searchsorted(self.dst[lo:hi], b)
        return int(self.weight[p]) if p < hi and self.dst[p] == b else 0

    def omega(self, x, y) -> int:
        return self.weight_idx(self.poset.idx(x), self.poset.idx(y))

    def bidirected_pairs(self) -> np.ndarray:
        """(k, 2) array of index pairs (a, b), a < b, joined in both directions."""
        code = self.src * self.size + self.dst
        rev = self.dst * self.size + self.src
        both = np.isin(code, rev) & (self.src < self.dst)
        return np.stack([self.src[both], self.dst[both]], axis=1)

    def _adj(self, pairs: np.ndarray, symmetric: bool):
        a, b = pairs[:, 0], pairs[:, 1]
        if symmetric:
            a, b = np.concatenate([a, b]), np.concatenate([b, a])
        data = np.ones(len(a), dtype=np.int8)
        return coo_matrix((data, (a, b)), shape=(self.size, self.size)).tocsr()

    def molecules(self) -> Partition:
        if self._molecules is None:
            adj = self._adj(self.bidirected_pairs(), True)
            _, labels = connected_components(adj, directed=False)
            self._molecules = Partition.from_labels(labels, self.poset.lengths)
        return self._molecules

    def cells(self) -> Partition:
        if self._cells is None:
            adj = self._adj(np.stack([self.src, self.dst], axis=1), False)
            _, labels = connected_components(adj, directed=True, connection="strong")
            self._cells = Partition.from_labels(labels, self.poset.lengths)
        return self._cells

    def __repr__(self) -> str:
        return f"WGraph(n={self.n}, vertices={self.size}, edges={self.edge_count})"


def build_wgraph(n: int, poset: BruhatPoset | None = None, table: CanonicalTable | None = None,
                 backend: str | None = None) -> WGraph:
    P = poset or (table.poset if table is not None else build_poset(n, backend=backend))
    T = table or canonical_basis(n, P, backend=backend)
    return WGraph(P, T)


def bidirected_edges(g: WGraph) -> set[frozenset[FpfInvolution]]:
    V = g.vertices
    return {frozenset((V[a], V[b])) for a, b in g.bidirected_pairs()}


def molecules(g: WGraph) -> Partition:
    return g.molecules()


def cells(g: WGraph) -> Partition:
    return g.cells()


def verify_bidirected_criterion(n: int, g: WGraph | None = None) -> Report:
    """Bidirected edges are exactly the pairs x < sxs with tau(x) not inside tau(sxs).

    The opposite non-containment, tau(sxs) not inside tau(x), always holds
    because s is a descent of sxs and not of x; it is checked too.
    """
    G = g or build_wgraph(n)
    P = G.poset
    rep = Report("bidirected-criterion", n)
    tm = G.tau_mask
    L = P.lengths
    predicted = set()
    for s in range(n - 1):
        conj = P.sconj[s]
        for a in range(P.size):
            b = int(conj[a])
            if L[b] > L[a]:
                rep.check(bool(tm[b] & ~tm[a]), x=P.elements[a], s=s + 1,
                          property="tau(sxs) not inside tau(x)")
                if tm[a] & ~tm[b]:
                    predicted.add((a, b))
    actual = {(int(a), int(b)) for a, b in G.bidirected_pairs()}
    for a, b in sorted(predicted | actual):
        rep.check((a, b) in predicted and (a, b) in actual,
                  x=P.elements[a], y=P.elements[b],
                  predicted=(a, b) in predicted, actual=(a, b) in actual)
    return rep


# -- export -----------------------------------------------------------------------

def _fmt_ht(h: Fraction) -> str:
    return str(h.numerator) if h.denominator == 1 else f"{h.numerator}/{h.denominator}"


def _fmt_tau(mask: int) -> str:
    return "{" + ",".join(str(i) for i in sorted(mask_to_set(mask))) + "}"


_PALETTE = ["#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
            "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f"]


def export_dot(g: WGraph, partition: Partition | None = None) -> str:
    P = g.poset
    out = [f'digraph "F{g.n}" {{', "  node [shape=box, style=filled, fillcolor=white];"]

    def node(k: int, indent: str) -> str:
        z = P.elements[k]
        label = f"{z}|{_fmt_ht(P.height(z))}|{_fmt_tau(int(g.tau_mask[k]))}"
        return f'{indent}v{k} [label="{label}"];'

    if partition is None:
        out.extend(node(k, "  ") for k in range(g.size))
    else:
        for b, members in enumerate(partition.blocks):
            colour = _PALETTE[b % len(_PALETTE)]
            out.append(f"  subgraph cluster_{b} {{")
            out.append(f'    style=filled; color="{colour}"; label="block {b}";')
            out.extend(node(k, "    ") for k in members)
            out.append("  }")
    for a, b, w in zip(g.src, g.dst, g.weight):
        out.append(f'  v{a} -> v{b} [label="{int(w)}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def export_json(g: WGraph) -> str:
    P = g.poset
    doc = {
        "n": g.n,
        "vertices": [{"perm": str(z), "ht": _fmt_ht(P.height(z)), "tau": sorted(g.tau_idx(k))}
                     for k, z in enumerate(P.elements)],
        "edges": [{"from": str(P.elements[a]), "to": str(P.elements[b]), "w": int(w)}
                  for a, b, w in zip(g.src, g.dst, g.weight)],
    }
    return json.dumps(doc, indent=1) + "\n"


@dataclass(frozen=True)
class ParsedGraph:
    """A W-graph read back from JSON: enough to compare against a built one."""

    n: int
    vertices: tuple[FpfInvolution, ...]
    heights: tuple[Fraction, ...]
    tau: tuple[frozenset[int], ...]
    edges: dict

    @classmethod
    def of(cls, g: WGraph) -> "ParsedGraph":
        P = g.poset
        return cls(g.n, tuple(P.elements), tuple(P.height(z) for z in P.elements),
                   tuple(g.tau_idx(k) for k in range(g.size)), g.edges)


def parse_json(text: str) -> ParsedGraph:
    doc = json.loads(text)
    verts = tuple(FpfInvolution.parse(v["perm"]) for v in doc["vertices"])
    return ParsedGraph(
        n=int(doc["n"]),
        vertices=verts,
        heights=tuple(Fraction(v["ht"]) for v in doc["vertices"]),
        tau=tuple(frozenset(v["tau"]) for v in doc["vertices"]),
        edges={(FpfInvolution.parse(e["from"]), FpfInvolution.parse(e["to"])): int(e["w"])
               for e in doc["edges"]},
    )


def block_elements(g: WGraph, block: Iterable[int]) -> set[FpfInvolution]:
    return {g.vertices[k] for k in block}
