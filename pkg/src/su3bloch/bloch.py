"""Amplitudes, density matrices and 8-component Bloch vectors.

``S_i = Tr(rho lambda_i)``, ``rho = (1 + 3/2 sum_i S_i lambda_i) / 3`` and the
Liouville equation ``d rho/dt = i [rho, H]`` (hbar = 1) give the linear Bloch
equation ``dS/dt = M S`` with ``M_ij = -sum_k f_ijk Tr(H lambda_k)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .algebra import GELLMANN, SQRT3, structure_constants
from .exceptions import InvalidArgumentError, InvalidStateError, NormalizationError
from .model import Configuration, SystemConfig

HERMITIAN_TOL = 1e-10
NORM_TOL = 1e-10


def _is_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    return m.shape == (3, 3) and np.abs(m - m.conj().T).max() <= tol


def as_amplitudes(c, normalize: bool = False) -> np.ndarray:
    """Validate a length-3 amplitude vector; raises :class:`NormalizationError`."""
    c = np.asarray(c, dtype=np.complex128).reshape(-1)
    if c.shape != (3,):
        raise InvalidArgumentError(f"expected 3 amplitudes, got shape {c.shape}")
    if not np.all(np.isfinite(c)):
        raise InvalidArgumentError("amplitudes must be finite")
    norm2 = float(np.vdot(c, c).real)
    if normalize:
        if norm2 == 0.0:
            raise NormalizationError("cannot normalize the zero vector")
        return c / math.sqrt(norm2)
    if abs(norm2 - 1.0) > NORM_TOL:
        raise NormalizationError(f"amplitudes have squared norm {norm2}, expected 1")
    return c


def density_from_amplitudes(c, normalize: bool = False) -> np.ndarray:
    """Pure-state density matrix ``|psi><psi|``."""
    c = as_amplitudes(c, normalize)
    return np.outer(c, c.conj())


def bloch_from_density(rho) -> np.ndarray:
    """``S_i = Tr(rho lambda_i)``. Accepts a single matrix or a stack ``(..., 3, 3)``."""
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape[-2:] != (3, 3):
        raise InvalidArgumentError(f"expected 3x3 matrices, got shape {rho.shape}")
    if np.abs(rho - np.swapaxes(rho.conj(), -1, -2)).max() > HERMITIAN_TOL:
        raise InvalidStateError("density matrix is not Hermitian")
    return np.einsum("...ab,kba->...k", rho, GELLMANN).real


def density_from_bloch(s) -> np.ndarray:
    """Inverse of :func:`bloch_from_density`; positivity is not checked."""
    s = np.asarray(s, dtype=np.float64)
    if s.shape[-1] != 8:
        raise InvalidArgumentError("Bloch vectors have 8 components")
    return (np.eye(3) + 1.5 * np.einsum("...k,kab->...ab", s, GELLMANN)) / 3


def is_physical(s, tol: float = 1e-10) -> bool:
    """True if the density matrix of ``s`` has no eigenvalue below ``-tol``."""
    return bool(np.linalg.eigvalsh(density_from_bloch(s)).min() >= -tol)


def liouville_rhs(rho, h) -> np.ndarray:
    """``i [rho, H]``."""
    rho = np.asarray(rho, dtype=np.complex128)
    h = np.asarray(h, dtype=np.complex128)
    return 1j * (rho @ h - h @ rho)


def generator_matrix(h) -> np.ndarray:
    """Antisymmetric 8x8 ``M`` with ``dS/dt = M S`` for the Hamiltonian ``h``."""
    h = np.asarray(h, dtype=np.complex128)
    if not _is_hermitian(h):
        raise InvalidArgumentError("Hamiltonian must be a Hermitian 3x3 matrix")
    coeffs = np.einsum("ab,kba->k", h, GELLMANN).real
    return -np.einsum("ijk,k->ij", structure_constants().f, coeffs)


def populations(s) -> np.ndarray:
    """Level populations (p1, p2, p3) = (rho_33, rho_22, rho_11) from Bloch vectors.

    Level 1 is the lowest level, which sits in matrix row 3.
    """
    s = np.asarray(s, dtype=np.float64)
    s3, s8 = s[..., 2], s[..., 7]
    rho11 = 1 / 3 + 0.5 * (s3 + s8 / SQRT3)
    rho22 = 1 / 3 + 0.5 * (-s3 + s8 / SQRT3)
    rho33 = 1 / 3 - s8 / SQRT3
    return np.stack([rho33, rho22, rho11], axis=-1)


# Printed generator matrices, entries as (row, col, coefficient-name, factor), 1-based,
# upper triangle and lower triangle listed separately exactly as printed.
_PRINTED = {
    Configuration.CASCADE: [
        (1, 2, "d2", 1), (1, 5, "k1", -1),
        (2, 1, "d2", -1), (2, 3, "k2", 2), (2, 4, "k1", 1),
        (3, 2, "k2", -2), (3, 7, "k1", 1),
        (4, 2, "k1", -1), (4, 5, "d1+d2", 1), (4, 7, "k2", 1),
        (5, 1, "k1", 1), (5, 4, "d1+d2", -1), (5, 6, "k2", -1),
        (6, 5, "k2", 1), (6, 7, "d1", 1),
        (7, 3, "k1", -1), (7, 4, "k2", -1), (7, 6, "d1", -1), (7, 8, "k1", SQRT3),
        (8, 7, "k1", -SQRT3),
    ],
    Configuration.LAMBDA: [
        (1, 2, "d2", 1), (1, 7, "k1", -1),
        (2, 1, "d2", -1), (2, 3, "k2", 2), (2, 6, "k1", 1),
        (3, 2, "k2", -2), (3, 5, "k1", -1),
        (4, 5, "d1", 1), (4, 7, "k2", 1),
        (5, 3, "k1", 1), (5, 4, "d1", -1), (5, 6, "k2", -1), (5, 8, "k1", SQRT3),
        (6, 2, "k1", 1), (6, 5, "k2", 1), (6, 7, "d1-d2", 1),
        (7, 1, "k1", 1), (7, 4, "k2", -1), (7, 6, "d1-d2", -1),
        (8, 5, "k1", -SQRT3),
    ],
    Configuration.VEE: [
        (1, 2, "d1-d2", 1), (1, 5, "k2", -1), (1, 7, "k1", -1),
        (2, 1, "d1-d2", -1), (2, 4, "k2", -1), (2, 6, "k1", -1),
        (3, 5, "k1", -1), (3, 7, "k2", 1),
        (4, 2, "k2", -1), (4, 5, "d1", 1),
        (5, 1, "k2", 1), (5, 3, "k1", 1), (5, 4, "d1", -1), (5, 8, "k1", SQRT3),
        (6, 2, "k1", 1), (6, 7, "d2", -1),
        (7, 1, "k1", 1), (7, 3, "k2", -1), (7, 6, "d2", -1), (7, 8, "k2", SQRT3),
        (8, 5, "k1", -SQRT3), (8, 7, "k2", -SQRT3),
    ],
}


def _printed_generator(config: SystemConfig) -> np.ndarray:
    values = {
        "k1": config.kappa1,
        "k2": config.kappa2,
        "d1": config.delta1,
        "d2": config.delta2,
        "d1+d2": config.delta1 + config.delta2,
        "d1-d2": config.delta1 - config.delta2,
    }
    m = np.zeros((8, 8))
    for i, j, name, factor in _PRINTED[config.configuration]:
        m[i - 1, j - 1] = factor * values[name]
    return m


def transcription_repairs(configuration) -> list[tuple[int, int, float, float]]:
    """Printed entries that break antisymmetry, as ``(row, col, printed_sign, repaired_sign)``.

    Each pair is resolved from its lower-triangle partner. The list is
    parameter independent: it is computed symbolically from the printed
    coefficient table.
    """
    from .model import as_configuration

    table = {(i, j): (name, factor) for i, j, name, factor in _PRINTED[as_configuration(configuration)]}
    repairs = []
    for (i, j), (name, factor) in sorted(table.items()):
        if i >= j:
            continue
        partner = table.get((j, i))
        if partner is None or partner[0] != name:
            raise AssertionError(f"printed matrix has unpaired entry ({i}, {j})")
        if partner[1] != -factor:
            repairs.append((i, j, float(np.sign(factor)), float(-np.sign(partner[1]))))
    return repairs


def paper_generator(config: SystemConfig, verbatim: bool = False) -> np.ndarray:
    """Published generator matrix for ``config``, used only as a comparison target.

    The printed lambda and vee matrices carry sign slips that make them
    non-antisymmetric; unless ``verbatim`` is set, each upper-triangle entry is
    replaced by minus its lower-triangle partner (see
    :func:`transcription_repairs`).
    """
    m = _printed_generator(config)
    if verbatim:
        return m
    lower = np.tril(m, -1)
    return lower - lower.T


def propagate_exact(h, c0, t):
    """``exp(-i H t) c0`` via the eigendecomposition of the Hermitian ``h``.

    ``t`` may be a scalar (returns shape ``(3,)``) or an array of times
    (returns ``(len(t), 3)``).
    """
    h = np.asarray(h, dtype=np.complex128)
    if not _is_hermitian(h):
        raise InvalidArgumentError("Hamiltonian must be a Hermitian 3x3 matrix")
    c0 = as_amplitudes(c0)
    h = (h + h.conj().T) / 2
    evals, evecs = np.linalg.eigh(h)
    coeffs = evecs.conj().T @ c0
    t_arr = np.asarray(t, dtype=np.float64)
    phases = np.exp(-1j * np.multiply.outer(t_arr, evals))
    return (phases * coeffs) @ evecs.T


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray
    populations: np.ndarray

    def __post_init__(self):
        for arr in (self.times, self.states, self.populations):
            arr.setflags(write=False)

    def __len__(self):
        return len(self.times)

    @classmethod
    def from_states(cls, times, states) -> "Trajectory":
        times = np.array(times, dtype=np.float64)
        states = np.array(states, dtype=np.float64)
        if times.ndim != 1 or states.shape != (times.size, 8):
            raise InvalidArgumentError("times and states have inconsistent shapes")
        if times.size > 1 and np.any(np.diff(times) <= 0):
            raise InvalidArgumentError("times must be strictly increasing")
        return cls(times=times, states=states, populations=populations(states))


def sample_times(t_max: float, dt: float) -> np.ndarray:
    """Grid ``0, dt, 2 dt, ...`` ending exactly at ``t_max``."""
    if not (math.isfinite(dt) and dt > 0):
        raise InvalidArgumentError(f"step must be positive, got {dt}")
    if not (math.isfinite(t_max) and t_max >= 0):
        raise InvalidArgumentError(f"horizon must be non-negative, got {t_max}")
    n = int(math.floor(t_max / dt + 1e-9))
    times = dt * np.arange(n + 1)
    if t_max - times[-1] > 1e-9 * max(1.0, t_max):
        times = np.append(times, t_max)
    else:
        times[-1] = t_max if n else 0.0
    return times


def exact_trajectory(h, c0, times) -> Trajectory:
    """Bloch trajectory from exact amplitude propagation at the given times."""
    times = np.asarray(times, dtype=np.float64)
    amps = propagate_exact(h, c0, times)
    rho = np.einsum("ta,tb->tab", amps, amps.conj())
    return Trajectory.from_states(times, bloch_from_density(rho))


def integrate_bloch(m, s0, t_max: float, dt: float) -> Trajectory:
    """Fixed-step classic RK4 solution of ``dS/dt = M S`` sampled every ``dt``.

    If ``t_max`` is not a multiple of ``dt`` the last step is shortened.
    Keep ``dt * |M|`` below about 0.1.
    """
    m = np.ascontiguousarray(m, dtype=np.float64)
    s0 = np.ascontiguousarray(s0, dtype=np.float64)
    if m.shape != (8, 8) or s0.shape != (8,):
        raise InvalidArgumentError("expected an 8x8 generator and an 8-component state")
    times = sample_times(t_max, dt)
    n_uniform = int(math.floor(t_max / dt + 1e-9))
    states = kernels.rk4_linear(m, s0, float(dt), n_uniform)
    if len(times) > n_uniform + 1:
        last = kernels.rk4_linear(m, states[-1].copy(), float(times[-1] - times[-2]), 1)
        states = np.vstack([states, last[1:]])
    return Trajectory.from_states(times, states)
