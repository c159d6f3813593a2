"""Backend selection for the hot loops.

The compiled extension is used when it imports; set ``SU3BLOCH_PURE_PYTHON=1``
to force the NumPy fallback.
"""
import os

import numpy as np

from . import _kernels_py

BACKEND = "python"
rk4_linear = _kernels_py.rk4_linear
subset_deviations = _kernels_py.subset_deviations

if os.environ.get("SU3BLOCH_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        BACKEND = "cython"

        def rk4_linear(m, s0, dt, n_steps):
            return _kernels.rk4_linear(
                np.ascontiguousarray(m, dtype=np.float64), np.ascontiguousarray(s0, dtype=np.float64),
                float(dt), int(n_steps),
            )

        def subset_deviations(states, masks):
            return _kernels.subset_deviations(
                np.ascontiguousarray(states, dtype=np.float64), np.ascontiguousarray(masks, dtype=np.int64)
            )


def backends():
    """Mapping of available backend name -> kernel module."""
    found = {"python": _kernels_py}
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        found["cython"] = _kernels
    return found
