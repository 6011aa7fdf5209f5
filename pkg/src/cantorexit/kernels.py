"""Kernel backend selection.

The compiled extension ``_ckernels`` is used when it was built; otherwise the
pure-Python module provides the same functions.  ``use_backend`` switches at
runtime (benchmarks and tests compare the two).
"""

from __future__ import annotations

from types import ModuleType

from cantorexit import _pykernels

try:
    from cantorexit import _ckernels
except ImportError:  # extension not built
    _ckernels = None

__all__ = [
    "BACKEND",
    "available_backends",
    "use_backend",
    "surd_sign",
    "floor_div_surd",
    "orbit_digits",
    "to_base3",
]

_MODULES: dict[str, ModuleType] = {"python": _pykernels}
if _ckernels is not None:
    _MODULES["cython"] = _ckernels

BACKEND = ""
surd_sign = _pykernels.surd_sign
floor_div_surd = _pykernels.floor_div_surd
orbit_digits = _pykernels.orbit_digits
to_base3 = _pykernels.to_base3


def available_backends() -> list[str]:
    return sorted(_MODULES)


def use_backend(name: str) -> str:
    """Bind the module-level kernel names to backend ``name``; returns the previous one."""
    global BACKEND, surd_sign, floor_div_surd, orbit_digits, to_base3
    if name not in _MODULES:
        raise ValueError(f"unknown or unavailable kernel backend: {name!r}")
    mod = _MODULES[name]
    previous = BACKEND
    BACKEND = name
    surd_sign = mod.surd_sign
    floor_div_surd = mod.floor_div_surd
    orbit_digits = mod.orbit_digits
    to_base3 = mod.to_base3
    return previous


use_backend("cython" if _ckernels is not None else "python")
