"""Kernel backend selection.

The compiled ``_kernels`` extension is used when it imports; setting
``ISODYN_PURE=1`` forces the numpy fallback.
"""
import os

from . import _kernels_py as python_kernels

compiled_kernels = None
if os.environ.get("ISODYN_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as compiled_kernels
    except ImportError:  # pragma: no cover - depends on the build
        compiled_kernels = None

kernels = compiled_kernels if compiled_kernels is not None else python_kernels
BACKEND = "cython" if compiled_kernels is not None else "python"


def get_kernels(name=None):
    """Return the kernel module for ``name`` ("cython", "python" or None for the active one)."""
    if name is None:
        return kernels
    if name == "python":
        return python_kernels
    if name == "cython":
        if compiled_kernels is None:
            raise ImportError("compiled kernels are not built")
        return compiled_kernels
    raise ValueError(f"unknown backend {name!r}")


class use_backend:
    """Context manager that makes ``name`` the active kernel module."""

    def __init__(self, name):
        self.name = name

    def __enter__(self):
        global kernels
        self._saved = kernels
        kernels = get_kernels(self.name)
        return kernels

    def __exit__(self, *exc):
        global kernels
        kernels = self._saved
        return False
