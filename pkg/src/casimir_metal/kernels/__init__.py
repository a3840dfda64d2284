"""Integrand kernels: compiled extension when available, numpy otherwise.

Set ``CASIMIR_METAL_FORCE_FALLBACK=1`` to skip the compiled extension (used
by the benchmark and the backend-parity tests).  ``BACKEND`` reports which
implementation is active.
"""

import os

if os.environ.get("CASIMIR_METAL_FORCE_FALLBACK") == "1":
    from . import _purepy as _impl
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _purepy as _impl

BACKEND = _impl.BACKEND

plates_plasma = _impl.plates_plasma
plates_generic = _impl.plates_generic
sphere_log_plasma = _impl.sphere_log_plasma
sphere_log_generic = _impl.sphere_log_generic
sphere_parts_plasma = _impl.sphere_parts_plasma
sphere_parts_generic = _impl.sphere_parts_generic

__all__ = [
    "BACKEND",
    "plates_plasma",
    "plates_generic",
    "sphere_log_plasma",
    "sphere_log_generic",
    "sphere_parts_plasma",
    "sphere_parts_generic",
]
