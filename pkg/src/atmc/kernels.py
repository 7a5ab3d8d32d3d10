"""Backend selection for the stepping kernel.

The compiled Cython kernel is preferred when its extension module imported
cleanly at install time; otherwise the pure-Python twin takes over with
identical results. Set ATMC_KERNEL=python or ATMC_KERNEL=compiled to force
a backend (the latter fails loudly if the extension is missing).
"""

import os

from . import _kernel_py

try:
    from . import _kernel
except ImportError:
    _kernel = None

_forced = os.environ.get("ATMC_KERNEL", "").strip().lower()
if _forced == "python":
    BACKEND = "python"
elif _forced == "compiled":
    if _kernel is None:
        raise ImportError("ATMC_KERNEL=compiled but atmc._kernel is not built")
    BACKEND = "compiled"
elif _forced:
    raise ValueError(f"ATMC_KERNEL must be 'python' or 'compiled', got {_forced!r}")
else:
    BACKEND = "compiled" if _kernel is not None else "python"

_ACTIVE = _kernel if BACKEND == "compiled" else _kernel_py

simulate_steps = _ACTIVE.simulate_steps
move_mt = _kernel_py.move_mt  # single-step path; speed is irrelevant here


def available_backends():
    """Names of the kernel backends importable in this installation."""
    names = ["python"]
    if _kernel is not None:
        names.insert(0, "compiled")
    return names


def get_kernel(name):
    """Return the kernel module for an explicit backend name."""
    if name == "python":
        return _kernel_py
    if name == "compiled":
        if _kernel is None:
            raise ValueError("compiled kernel is not built in this installation")
        return _kernel
    raise ValueError(f"unknown kernel backend {name!r}")
