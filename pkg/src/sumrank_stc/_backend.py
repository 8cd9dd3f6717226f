"""Kernel selection: the compiled extension when available, else pure Python.

Set ``SUMRANK_PURE_PYTHON=1`` to force the Python kernel.
"""
from __future__ import annotations

import os

from . import _search as python_kernel

try:
    from . import _search_ext as compiled_kernel
except ImportError:  # pragma: no cover - depends on the build
    compiled_kernel = None

if compiled_kernel is not None and os.environ.get("SUMRANK_PURE_PYTHON", "") != "1":
    default_kernel = compiled_kernel
    BACKEND = "cython"
else:
    default_kernel = python_kernel
    BACKEND = "python"


def get_kernel(name: str | None = None):
    """Kernel module by name: None (default), 'python' or 'cython'."""
    if name is None:
        return default_kernel
    if name == "python":
        return python_kernel
    if name == "cython":
        if compiled_kernel is None:
            raise ImportError("compiled search kernel is not built")
        return compiled_kernel
    raise ValueError(f"unknown backend {name!r}")
