"""Four-angle parametrization of a normalized qutrit state.

``|q> = cos(t0/2)|0> + sin(t0/2) sin(t1/2) sin(t2/2) e^{i phi}|1>
        + sin(t0/2) (cos(t1/2) + i sin(t1/2) cos(t2/2))|2>``

Basis order |0>, |1>, |2> maps onto matrix rows 1, 2, 3.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bloch import bloch_from_density, density_from_amplitudes
from .exceptions import InvalidArgumentError
from .invariants import casimir_norm

_EDGE = 1e-12


@dataclass(frozen=True)
class QutritAngles:
    theta0: float
    theta1: float
    theta2: float
    phi: float = 0.0

    def __post_init__(self):
        for name in ("theta0", "theta1", "theta2"):
            v = float(getattr(self, name))
            if not (math.isfinite(v) and -_EDGE <= v <= math.pi + _EDGE):
                raise InvalidArgumentError(f"{name}={v} outside [0, pi]")
            object.__setattr__(self, name, min(max(v, 0.0), math.pi))
        phi = float(self.phi)
        if not (math.isfinite(phi) and 0.0 <= phi < 2 * math.pi):
            raise InvalidArgumentError(f"phi={phi} outside [0, 2 pi)")
        object.__setattr__(self, "phi", phi)


def _amplitude_arrays(t0, t1, t2, phi):
    h0, h1, h2 = np.asarray(t0) / 2, np.asarray(t1) / 2, np.asarray(t2) / 2
    c0 = np.cos(h0) + 0j
    c1 = np.sin(h0) * np.sin(h1) * np.sin(h2) * np.exp(1j * np.asarray(phi))
    c2 = np.sin(h0) * (np.cos(h1) + 1j * np.sin(h1) * np.cos(h2))
    return np.stack(np.broadcast_arrays(c0, c1, c2), axis=-1)


def qutrit_amplitudes(q: QutritAngles) -> np.ndarray:
    return _amplitude_arrays(q.theta0, q.theta1, q.theta2, q.phi)


def qutrit_amplitudes_grid(theta0, theta1, theta2, phi) -> np.ndarray:
    """Vectorized amplitudes over broadcastable angle arrays, shape ``(..., 3)``.

    No range validation; intended for scans over known-valid grids.
    """
    return _amplitude_arrays(theta0, theta1, theta2, phi)


def qutrit_density(q: QutritAngles) -> np.ndarray:
    """Outer product of :func:`qutrit_amplitudes`."""
    return density_from_amplitudes(qutrit_amplitudes(q))


def printed_density_elements(q: QutritAngles) -> dict[str, complex]:
    """Closed-form density-matrix entries in the published form.

    ``rho11`` is listed there as ``cos^2(theta1/2)``; the outer product gives
    ``cos^2(theta0/2)``. Both are returned (``rho11_printed``, ``rho11``).
    The off-diagonal entries follow ``rho_ij = conj(c_i) c_j``, so ``"rho12"``
    equals ``qutrit_density(q)[1, 0]`` and so on.
    """
    t0, t1, t2, phi = q.theta0, q.theta1, q.theta2, q.phi
    s0, s1, s2 = math.sin(t0 / 2), math.sin(t1 / 2), math.sin(t2 / 2)
    c1, c2 = math.cos(t1 / 2), math.cos(t2 / 2)
    mix = c1 + 1j * s1 * c2
    return {
        "rho11_printed": math.cos(t1 / 2) ** 2,
        "rho11": math.cos(t0 / 2) ** 2,
        "rho22": (s0 * s1 * s2) ** 2,
        "rho33": 0.25 * (3 + math.cos(t1) + math.cos(t2) - math.cos(t1) * math.cos(t2)) * s0**2,
        "rho12": 0.5 * np.exp(1j * phi) * math.sin(t0) * s1 * s2,
        "rho23": np.exp(-1j * phi) * s0**2 * s1 * mix * s2,
        "rho13": 0.5 * math.sin(t0) * mix,
    }


def qutrit_bloch(q: QutritAngles) -> np.ndarray:
    return bloch_from_density(qutrit_density(q))


def qutrit_bloch_norm(q: QutritAngles) -> float:
    """``sum_i Tr(rho lambda_i)^2``; 4/3 for every angle tuple."""
    return casimir_norm(qutrit_bloch(q))


BASIS_LABELS = ("|0>", "|1>", "|2>")


@dataclass(frozen=True)
class DegeneracyReport:
    resolution: int
    grid: np.ndarray = field(repr=False)
    preimages: dict = field(repr=False)

    def points(self, label: str) -> set[tuple[float, float, float]]:
        return {tuple(p) for p in self.preimages[label]}

    def zero_is_plane(self) -> bool:
        """|0> preimage is every grid point with theta0 = 0 and nothing else."""
        expected = {(0.0, a, b) for a in self.grid for b in self.grid}
        return self.points("|0>") == expected

    def one_is_point(self) -> bool:
        return self.points("|1>") == {(math.pi, math.pi, math.pi)}

    def two_lines(self) -> tuple[set, set]:
        """The two lines (pi, 0, theta2) and (pi, theta1, 0) on the grid."""
        line_a = {(math.pi, 0.0, b) for b in self.grid}
        line_b = {(math.pi, a, 0.0) for a in self.grid}
        return line_a, line_b

    def two_contains_line(self) -> bool:
        return self.two_lines()[0] <= self.points("|2>")

    def two_is_lines(self) -> bool:
        """|2> preimage is exactly the union of the lines (pi, 0, t2) and (pi, t1, 0)."""
        a, b = self.two_lines()
        return self.points("|2>") == a | b

    def summary(self) -> dict:
        return {
            "resolution": self.resolution,
            "counts": {k: len(v) for k, v in self.preimages.items()},
            "zero_is_plane": self.zero_is_plane(),
            "one_is_point": self.one_is_point(),
            "two_contains_line_pi_0_t2": self.two_contains_line(),
            "two_is_two_lines": self.two_is_lines(),
        }


def degeneracy_scan(resolution: int, threshold: float = 1 - 1e-9) -> DegeneracyReport:
    """Classify grid points of the (theta0, theta1, theta2) cube by basis-state fidelity.

    Fidelity is ``|<k|q>|^2``, which is independent of ``phi`` and of any
    global phase. Grid values are ``linspace(0, pi, resolution)`` with the end
    points set exactly.
    """
    if isinstance(resolution, bool) or int(resolution) != resolution or resolution < 2:
        raise InvalidArgumentError(f"resolution must be an integer >= 2, got {resolution!r}")
    grid = np.linspace(0.0, math.pi, int(resolution))
    grid[-1] = math.pi
    t0, t1, t2 = np.meshgrid(grid, grid, grid, indexing="ij")
    fid = np.abs(_amplitude_arrays(t0, t1, t2, 0.0)) ** 2
    preimages = {}
    for k, label in enumerate(BASIS_LABELS):
        hit = fid[..., k] > threshold
        preimages[label] = np.stack([t0[hit], t1[hit], t2[hit]], axis=-1)
    return DegeneracyReport(resolution=int(resolution), grid=grid, preimages=preimages)
