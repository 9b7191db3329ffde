"""Kernel backend selection.

Two interchangeable implementations of the scan kernels exist: a compiled
extension (``psl2coset._kernels``) and a NumPy fallback
(``psl2coset._kernels_py``).  Both expose the same nine functions with
identical signatures and bit-identical results; the compiled one is the
default when the build produced it.

Set ``PSL2COSET_BACKEND`` to ``c``, ``py`` or ``auto`` (default) to force
a choice; forcing ``c`` when the extension is missing raises at import of
this module's :func:`get_backend`.
"""

from __future__ import annotations

import os

try:
    from . import _kernels as _c_backend
except ImportError:          # extension not built; fallback carries the API
    _c_backend = None

from . import _kernels_py as _py_backend

_FUNCS = (
    "psl_first", "psl_collect", "pgl_first", "pgl_collect",
    "normalizer_collect", "sl2_mismatches", "build_a_set",
    "variety_first_pair", "count_x_fibers",
)


def available_backends() -> tuple[str, ...]:
    return ("c", "py") if _c_backend is not None else ("py",)


def get_backend(name: str = "auto"):
    """Return the kernel module for `name` ('auto', 'c' or 'py')."""
    if name == "auto":
        name = os.environ.get("PSL2COSET_BACKEND", "auto")
    if name == "auto":
        return _c_backend if _c_backend is not None else _py_backend
    if name == "c":
        if _c_backend is None:
            raise RuntimeError(
                "compiled kernel backend requested but the extension is not "
                "built; reinstall the package or set PSL2COSET_BACKEND=py")
        return _c_backend
    if name == "py":
        return _py_backend
    raise ValueError(f"unknown backend {name!r}; use 'auto', 'c' or 'py'")


_active = get_backend()
BACKEND_NAME = _active.BACKEND_NAME

for _f in _FUNCS:
    globals()[_f] = getattr(_active, _f)


def use(name: str):
    """Re-bind the module-level kernels to the named backend.

    Callers that import functions from this module at call time (the rest
    of the package does) switch over immediately.  Returns the module so
    benchmarks can also call it directly.
    """
    global _active, BACKEND_NAME
    _active = get_backend(name)
    BACKEND_NAME = _active.BACKEND_NAME
    for f in _FUNCS:
        globals()[f] = getattr(_active, f)
    return _active


__all__ = list(_FUNCS) + ["BACKEND_NAME", "get_backend",
                          "available_backends", "use"]
