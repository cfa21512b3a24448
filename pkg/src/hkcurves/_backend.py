"""Kernel backend selection.

The compiled extension is preferred when built; set HKCURVES_BACKEND=python or
=cython to force one (the benchmark uses this to compare them honestly).
"""

import os

_forced = os.environ.get("HKCURVES_BACKEND", "").lower()

if _forced == "python":
    from hkcurves._kernel_py import kernel_merge, kernel_scale, kernel_mul, BACKEND
elif _forced == "cython":
    from hkcurves._kernel import kernel_merge, kernel_scale, kernel_mul, BACKEND
elif _forced:
    raise ImportError("unknown HKCURVES_BACKEND %r (use 'python' or 'cython')" % _forced)
else:
    try:
        from hkcurves._kernel import kernel_merge, kernel_scale, kernel_mul, BACKEND
    except ImportError:
        from hkcurves._kernel_py import kernel_merge, kernel_scale, kernel_mul, BACKEND

__all__ = ["kernel_merge", "kernel_scale", "kernel_mul", "BACKEND"]
