"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when importable; otherwise, or
when ``MLAT_PURE_PYTHON=1``, the pure-Python ``_pykernels`` module is used.
Both expose the same functions with identical results.
"""

from __future__ import annotations

import importlib
import os
from types import ModuleType

_FUNCTIONS = (
    "closure",
    "extensions",
    "moufang_violation",
    "associative_violation",
    "extend_hom",
    "image_mask",
)


def available_backends() -> list[str]:
    names = ["python"]
    try:
        importlib.import_module("moufang_lattice._ckernels")
    except ImportError:
        pass
    else:
        names.insert(0, "cython")
    return names


def load_backend(name: str) -> ModuleType:
    if name == "cython":
        return importlib.import_module("moufang_lattice._ckernels")
    if name == "python":
        return importlib.import_module("moufang_lattice._pykernels")
    raise ValueError(f"unknown kernel backend {name!r}")


def _select() -> ModuleType:
    if os.environ.get("MLAT_PURE_PYTHON", "") == "1":
        return load_backend("python")
    try:
        return load_backend("cython")
    except ImportError:
        return load_backend("python")


_backend = _select()
BACKEND: str = _backend.NAME

closure = _backend.closure
extensions = _backend.extensions
moufang_violation = _backend.moufang_violation
associative_violation = _backend.associative_violation
extend_hom = _backend.extend_hom
image_mask = _backend.image_mask


def thread_count() -> int:
    """Worker cap from ``MLAT_THREADS`` (0 or unset means one per CPU)."""
    raw = os.environ.get("MLAT_THREADS", "0").strip() or "0"
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"MLAT_THREADS must be an integer, got {raw!r}") from None
    if value < 0:
        raise ValueError("MLAT_THREADS must be >= 0")
    return value or (os.cpu_count() or 1)
