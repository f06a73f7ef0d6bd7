"""Selects the optimal-cut DP backend: compiled extension or pure Python.

The compiled kernels in ``_dpcore`` (Cython) and the fallback in ``_dppy``
share contracts exactly; ``BACKEND`` records which one was importable.
"""

from __future__ import annotations

import os

from . import _dppy

if os.environ.get("PARPRIVACY_FORCE_PYTHON_KERNELS"):
    _impl = _dppy
    BACKEND = "python"
else:  # pragma: no cover - exercised indirectly depending on the build
    try:
        from . import _dpcore as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _dppy
        BACKEND = "python"

dp2_avg = _impl.dp2_avg
dp2_worst = _impl.dp2_worst
dp3_avg = _impl.dp3_avg
dp3_worst = _impl.dp3_worst


def available_backends() -> dict[str, object]:
    """Importable kernel modules keyed by name (for benchmarks and tests)."""
    out = {"python": _dppy}
    if BACKEND == "compiled":
        out["compiled"] = _impl
    return out


def rect_index(dims: tuple[int, ...]):
    """Flat index of a sub-rectangle in the kernels' memo layout."""
    if len(dims) == 2:
        n0, n1 = dims

        def idx2(lo, hi):
            return ((lo[0] * n0 + hi[0]) * n1 + lo[1]) * n1 + hi[1]

        return idx2
    if len(dims) == 3:
        n = dims[0]

        def idx3(lo, hi):
            return (((((lo[0] * n + hi[0]) * n + lo[1]) * n + hi[1])
                     * n + lo[2]) * n + hi[2])

        return idx3
    raise ValueError(f"unsupported dimension count {len(dims)}")


def decode_choice(raw: int) -> tuple[int, int]:
    """Split a packed cut choice into (axis, cut coordinate)."""
    return raw // 256, raw % 256
