"""Kernel selection: compiled GMP kernel when importable, else pure Python.

Set ``BOCSKIT_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernel

kernel = _pykernel
name = "python"

if os.environ.get("BOCSKIT_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernel
    except ImportError:  # extension not built
        pass
    else:
        kernel = _ckernel
        name = "gmp"


def use(which: str) -> None:
    """Switch kernels at runtime (``"gmp"`` or ``"python"``); for benchmarks and tests."""
    global kernel, name
    if which == "python":
        kernel, name = _pykernel, "python"
    elif which == "gmp":
        from . import _ckernel

        kernel, name = _ckernel, "gmp"
    else:
        raise ValueError(f"unknown kernel {which!r}")
