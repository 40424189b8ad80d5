"""Kernel backend selection.

The compiled Cython module is preferred when present; the numpy fallback is
behaviourally identical (tests assert equivalence).  Set the environment
variable WAVELEADER_KERNELS to "numpy" or "c" to force a backend; "c" raises
if the extension was not built.
"""

import os

_requested = os.environ.get("WAVELEADER_KERNELS", "auto").lower()

if _requested not in ("auto", "c", "numpy"):
    raise ValueError(f"WAVELEADER_KERNELS must be auto|c|numpy, got {_requested!r}")

if _requested == "numpy":
    from . import _numpy as _impl

    BACKEND = "numpy"
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]

        BACKEND = "c"
    except ImportError:
        if _requested == "c":
            raise
        from . import _numpy as _impl

        BACKEND = "numpy"

dwt_level_1d = _impl.dwt_level_1d
dwt_level_2d = _impl.dwt_level_2d
leader_level_1d = _impl.leader_level_1d
leader_level_2d = _impl.leader_level_2d
power_stats = _impl.power_stats
block_power_stats = _impl.block_power_stats

__all__ = [
    "BACKEND",
    "dwt_level_1d",
    "dwt_level_2d",
    "leader_level_1d",
    "leader_level_2d",
    "power_stats",
    "block_power_stats",
]
