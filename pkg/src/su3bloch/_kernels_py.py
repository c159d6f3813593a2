"""Pure-Python/NumPy versions of the compiled kernels in ``_kernels.pyx``."""
import numpy as np


def rk4_linear(m, s0, dt, n_steps):
    """Classic RK4 for ``ds/dt = m @ s``; returns the ``(n_steps + 1, n)`` trajectory."""
    m = np.ascontiguousarray(m, dtype=np.float64)
    s = np.array(s0, dtype=np.float64)
    if m.shape != (s.size, s.size):
        raise ValueError("generator and state dimensions differ")
    out = np.empty((n_steps + 1, s.size))
    out[0] = s
    half = 0.5 * dt
    for step in range(1, n_steps + 1):
        k1 = m @ s
        k2 = m @ (s + half * k1)
        k3 = m @ (s + half * k2)
        k4 = m @ (s + dt * k3)
        s = s + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[step] = s
    return out


def subset_deviations(states, masks):
    """Max over samples of ``|sum_{i in A} s_i(t)^2 - s_i(0)^2|`` for each bitmask ``A``."""
    states = np.asarray(states, dtype=np.float64)
    masks = np.asarray(masks, dtype=np.int64)
    n = states.shape[1]
    if n > 62:
        raise ValueError("at most 62 components supported")
    select = ((masks[:, None] >> np.arange(n)) & 1).astype(np.float64)
    drift = states**2 - states[0] ** 2
    return np.abs(drift @ select.T).max(axis=0) if len(states) else np.zeros(len(masks))
