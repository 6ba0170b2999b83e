"""Kernel selection: compiled extension when importable, pure Python otherwise.

Set REPCLASS_PURE=1 to force the pure-Python kernels even when the extension
is built (used by tests and the benchmark).
"""

from __future__ import annotations

import os

from . import _pykernels as pykernels

if os.environ.get("REPCLASS_PURE"):
    kernels = pykernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        kernels = pykernels

COMPILED: bool = bool(getattr(kernels, "COMPILED", False))


def kernel_flavor() -> str:
    return "compiled" if COMPILED else "pure-python"
