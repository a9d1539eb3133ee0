"""Pick the kernel at import: compiled if available, else pure Python.

Set ``WDFA_PURE_PYTHON=1`` to force the pure-Python kernel.
"""
import os

from . import _pykernel

kernel = _pykernel
if not os.environ.get("WDFA_PURE_PYTHON"):
    try:
        from . import _ckernel as kernel
    except ImportError:
        pass

BACKEND = kernel.BACKEND


def available():
    """Names of the kernels importable in this environment."""
    names = ["python"]
    try:
        from . import _ckernel  # noqa: F401
    except ImportError:
        return names
    return ["cython", *names]


def get(name):
    if name == "python":
        return _pykernel
    if name == "cython":
        from . import _ckernel
        return _ckernel
    raise ValueError(f"unknown backend {name!r}")
