"""On-disk cache of canonical tables.

One text file per n.  Header lines start with ``#`` and carry ``key=value``
pairs; every other line is one row of the table::

    <y>\t<x>:<m_{x,y}>\t<x>:<m_{x,y}> ...

with permutations in one-line notation and polynomials in their canonical
rendering (``v^-1 + 2v^-3``).  A file written under another format version is
ignored and recomputed; a file whose poset digest disagrees with the poset
rebuilt in memory is rejected with a warning.
"""

from __future__ import annotations

import hashlib
import logging
import os
import tempfile
import warnings
from pathlib import Path

import numpy as np

from .bruhat import BruhatPoset
from .canonical import CanonicalTable, canonical_basis
from .laurent import LaurentPoly
from .permutation import FpfInvolution

__all__ = ["FORMAT_VERSION", "CacheMismatch", "cache_dir", "cache_path", "poset_digest",
           "write_table", "read_table", "load_or_build"]

FORMAT_VERSION = 1
ENV_VAR = "GELFAND_CACHE_DIR"

log = logging.getLogger(__name__)


class CacheMismatch(UserWarning):
    pass


def cache_dir(flag: str | os.PathLike | None = None) -> Path:
    if flag:
        return Path(flag)
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else Path("cache")


def cache_path(n: int, directory: str | os.PathLike | None = None) -> Path:
    return cache_dir(directory) / f"table_n{n}.txt"


def poset_digest(poset: BruhatPoset) -> str:
    h = hashlib.sha256()
    h.update(poset.images.astype(np.int8).tobytes())
    h.update(poset.lengths.astype(np.int64).tobytes())
    h.update(np.packbits(poset.leq_matrix()).tobytes())
    return h.hexdigest()


def _render_table(table: CanonicalTable) -> str:
    P = table.poset
    els = P.elements
    lines = [
        "# gelfand canonical table",
        f"# n={P.n}",
        f"# format_version={FORMAT_VERSION}",
        f"# poset_digest={poset_digest(P)}",
        f"# rule={table.rule}",
        f"# width={table.coefs.shape[1]}",
        f"# rows={P.size}",
    ]
    for j in range(P.size):
        cells = [str(els[j])]
        for i, row in zip(table.row_indices(j), table.row_coefs(j)):
            poly = LaurentPoly({-k: int(c) for k, c in enumerate(row) if c})
            cells.append(f"{els[i]}:{poly}")
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"


def write_table(table: CanonicalTable, directory: str | os.PathLike | None = None) -> Path:
    """Write atomically (temp file in the same directory, then rename)."""
    path = cache_path(table.n, directory)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=path.name, suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="ascii") as fh:
            fh.write(_render_table(table))
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
    return path


def read_table(poset: BruhatPoset, directory: str | os.PathLike | None = None) -> CanonicalTable | None:
    """The cached table for ``poset.n``, or None if absent, stale or foreign."""
    path = cache_path(poset.n, directory)
    if not path.exists():
        return None
    header: dict[str, str] = {}
    body: list[str] = []
    with open(path, encoding="ascii") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("#"):
                if "=" in line:
                    k, _, v = line[1:].strip().partition("=")
                    header[k] = v
            elif line:
                body.append(line)

    if header.get("format_version") != str(FORMAT_VERSION):
        log.info("cache %s has format version %s, recomputing", path, header.get("format_version"))
        return None
    if header.get("n") != str(poset.n) or header.get("poset_digest") != poset_digest(poset):
        warnings.warn(f"{path}: poset digest does not match, ignoring cached table", CacheMismatch)
        return None

    width = int(header["width"])
    if len(body) != poset.size:
        warnings.warn(f"{path}: expected {poset.size} rows, found {len(body)}", CacheMismatch)
        return None
    rows: dict[int, list[tuple[int, np.ndarray]]] = {}
    for line in body:
        cells = line.split("\t")
        entries = []
        for cell in cells[1:]:
            x, _, poly = cell.partition(":")
            row = np.zeros(width, dtype=np.int64)
            for e, c in LaurentPoly.parse(poly).terms.items():
                row[-e] = c
            entries.append((poset.idx(FpfInvolution.parse(x)), row))
        rows[poset.idx(FpfInvolution.parse(cells[0]))] = sorted(entries, key=lambda t: t[0])

    counts = [len(rows.get(j, ())) for j in range(poset.size)]
    row_ptr = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
    flat = [e for j in range(poset.size) for e in rows.get(j, ())]
    cols = np.array([i for i, _ in flat], dtype=np.int32)
    coef_arr = np.array([r for _, r in flat], dtype=np.int64).reshape(len(flat), width)
    return CanonicalTable(poset, row_ptr, cols, coef_arr,
                          header.get("rule", "smallest"))


def load_or_build(poset: BruhatPoset, directory: str | os.PathLike | None = None,
                  force: bool = False, backend: str | None = None) -> tuple[CanonicalTable, bool]:
    """Return (table, from_cache), writing the cache after a fresh build."""
    if not force:
        table = read_table(poset, directory)
        if table is not None:
            return table, True
    table = canonical_basis(poset.n, poset, backend=backend)
    write_table(table, directory)
    return table, False
