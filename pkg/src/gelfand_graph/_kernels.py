"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
numpy implementations in ``_pykernels`` are used. Setting the environment
variable ``GELFAND_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels

KernelInvariantError = _pykernels.KernelInvariantError


def _load_compiled() -> ModuleType | None:
    try:
        from . import _ckernels
    except ImportError:
        return None
    return _ckernels


_compiled = _load_compiled()

if _compiled is not None and not os.environ.get("GELFAND_PURE_PYTHON"):
    active: ModuleType = _compiled
else:
    active = _pykernels

BACKEND: str = active.BACKEND


def available() -> dict[str, ModuleType]:
    """All importable backends by name."""
    out = {"python": _pykernels}
    if _compiled is not None:
        out["cython"] = _compiled
    return out


def get(name: str | None = None) -> ModuleType:
    if name is None:
        return active
    try:
        return available()[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} is not available") from None
