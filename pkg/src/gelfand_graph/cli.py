"""Command-line driver: ``gelfand build|verify|export|poly``.

Exit status is 0 on success (for ``verify``: no violations), 1 when a
computation fails or a check finds counterexamples, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import _kernels
from .bruhat import (
    build_poset, verify_bruhat_lifting, verify_partial_order, verify_qp1, verify_qp2,
    verify_reflection_lemma,
)
from .cache import load_or_build
from .canonical import InvariantViolation, verify_descent_independence, verify_mu_descent_lemma, \
    verify_table_invariants
from .laurent import CoefficientOverflow
from .permutation import FpfInvolution
from .report import Report, all_ok, reports_to_json, reports_to_text
from .structure import (
    Tower, verify_cell_theorem, verify_ck_structure, verify_d1, verify_middle_element,
    verify_molecule_theorems, verify_partitions, verify_recursion_invariants, verify_staircase,
    verify_worked_example,
)
from .wgraph import export_dot, export_json, verify_bidirected_criterion

log = logging.getLogger("gelfand")

DEFAULT_MAX_N = 12
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _tower(args: argparse.Namespace) -> Tower:
    def loader(n: int):
        P = build_poset(n, backend=args.backend)
        T, hit = load_or_build(P, args.cache_dir, force=args.force and n == args.n,
                               backend=args.backend)
        log.info("n=%d: table %s", n, "read from cache" if hit else "computed")
        return P, T
    return Tower(args.backend, loader)


# -- suites ------------------------------------------------------------------------

def _qp(n: int, t: Tower) -> list[Report]:
    P = t.graph(n).poset
    return [verify_qp1(n, P), verify_qp2(n, P), verify_partial_order(n, P),
            verify_bruhat_lifting(n, P), verify_reflection_lemma(n, P)]


def _canonical(n: int, t: Tower) -> list[Report]:
    g = t.graph(n)
    return [verify_table_invariants(g.table), verify_mu_descent_lemma(n, g.table, g.poset),
            verify_descent_independence(n, g.poset, g.table, t.backend)]


def _molecules(n: int, t: Tower) -> list[Report]:
    return ([verify_bidirected_criterion(n, t.graph(n))] + verify_worked_example(n, t)
            + verify_molecule_theorems(n, t) + verify_d1(n, t) + verify_middle_element(n, t)
            + verify_ck_structure(n, t))


def _cells(n: int, t: Tower) -> list[Report]:
    return verify_partitions(n, t) + verify_cell_theorem(n, t)


SUITES: dict[str, Callable[[int, Tower], list[Report]]] = {
    "qp": _qp,
    "canonical": _canonical,
    "staircase": verify_staircase,
    "molecules": _molecules,
    "cells": _cells,
    "recursion": verify_recursion_invariants,
}


def run_suite(name: str, n: int, tower: Tower) -> list[Report]:
    if name == "all":
        return [r for key in SUITES for r in SUITES[key](n, tower)]
    return SUITES[name](n, tower)


# -- commands ----------------------------------------------------------------------

def cmd_build(args: argparse.Namespace) -> int:
    g = _tower(args).graph(args.n)
    print(f"n={args.n} vertices={g.size} nnz={g.table.nnz} edges={g.edge_count} "
          f"molecules={len(g.molecules())} cells={len(g.cells())}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    reports = run_suite(args.suite, args.n, _tower(args))
    print(reports_to_json(reports) if args.json else reports_to_text(reports))
    return EXIT_OK if all_ok(reports) else EXIT_FAIL


def cmd_export(args: argparse.Namespace) -> int:
    g = _tower(args).graph(args.n)
    if args.format == "json":
        text = export_json(g)
    else:
        part = {"molecule": g.molecules, "cell": g.cells}.get(args.color_by)
        text = export_dot(g, part() if part else None)
    if args.out in (None, "-"):
        sys.stdout.write(text)
        return EXIT_OK
    try:
        Path(args.out).write_text(text, encoding="ascii")
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_poly(args: argparse.Namespace) -> int:
    pts = []
    for text in (args.x, args.y):
        try:
            z = FpfInvolution.parse(text)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if z.n != args.n:
            raise UsageError(f"{text} is not a permutation of 1..{args.n}")
        pts.append(z)
    x, y = pts
    T = _tower(args).graph(args.n).table
    m = T.m(x, y)
    i, j = T.poset.idx(x), T.poset.idx(y)
    print(f"m({x},{y}) = {m}")
    print(f"m~({x},{y}) = {T.m_tilde_idx(i, j) if not m.is_zero() else m}")
    print(f"mu({x},{y}) = {T.mu_idx(i, j)}")
    return EXIT_OK


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gelfand", description=__doc__.splitlines()[0])
    p.add_argument("--cache-dir", help="cache directory (default: $GELFAND_CACHE_DIR or ./cache)")
    p.add_argument("--force", action="store_true", help="recompute even if a cached table exists")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="refuse larger n (default 12)")
    p.add_argument("--backend", choices=sorted(_kernels.available()), default=None,
                   help=f"kernel backend (default: {_kernels.BACKEND})")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def with_n(name: str, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.add_argument("n", type=int)
        return sp

    with_n("build", "build and cache the canonical table, print a summary")
    v = with_n("verify", "run the verification suites")
    v.add_argument("--suite", choices=["all", *SUITES], default="all")
    v.add_argument("--json", action="store_true")
    e = with_n("export", "write the W-graph as DOT or JSON")
    e.add_argument("--format", choices=["dot", "json"], default="dot")
    e.add_argument("--color-by", choices=["molecule", "cell", "none"], default="molecule")
    e.add_argument("--out", help="output file (default: stdout)")
    q = with_n("poly", "print m, m~ and mu for one pair")
    q.add_argument("x")
    q.add_argument("y")
    return p


COMMANDS = {"build": cmd_build, "verify": cmd_verify, "export": cmd_export, "poly": cmd_poly}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.n < 2 or args.n % 2:
            raise UsageError(f"n must be even and >= 2, got {args.n}")
        if args.n > args.max_n:
            raise UsageError(f"n={args.n} exceeds --max-n {args.max_n}")
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvariantViolation, CoefficientOverflow, _kernels.KernelInvariantError,
            MemoryError) as exc:
        print(f"error: computation failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
