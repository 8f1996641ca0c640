"""Backend selection: compiled kernels when available, pure Python otherwise.

Set RADIXSA_BACKEND=pure or =cython to force one; the default ("auto")
prefers the compiled extension and silently falls back.
"""
from __future__ import annotations

import os

_CHOICES = ("auto", "cython", "pure")


def get_backend(name: str | None = None):
    name = name or os.environ.get("RADIXSA_BACKEND", "auto")
    if name not in _CHOICES:
        raise ValueError(f"unknown backend {name!r}; choose from {_CHOICES}")
    if name in ("auto", "cython"):
        try:
            from . import _kernels
            return _kernels
        except ImportError:
            if name == "cython":
                raise
    from . import _pure
    return _pure


def active_backend_name(name: str | None = None) -> str:
    return get_backend(name).NAME
