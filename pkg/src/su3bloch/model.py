"""Hamiltonians of the cascade, lambda and vee configurations.

Units: hbar = 1. Matrix rows are ordered top level first, i.e. row 1 is
level |3>, row 2 is |2> and row 3 is the lowest level |1>, for every
configuration.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .algebra import shift_operator
from .exceptions import ConfigurationIncompleteError, InvalidArgumentError


class Configuration(str, enum.Enum):
    CASCADE = "cascade"
    LAMBDA = "lambda"
    VEE = "vee"


# (diagonal operator driven by field 1, by field 2)
_FREE_OPERATORS = {
    Configuration.CASCADE: ("U", "T"),
    Configuration.LAMBDA: ("V", "T"),
    Configuration.VEE: ("V", "U"),
}

# matrix positions (0-based, upper triangle) of kappa1 and kappa2
COUPLED_ROWS = {
    Configuration.CASCADE: ((1, 2), (0, 1)),
    Configuration.LAMBDA: ((0, 2), (0, 1)),
    Configuration.VEE: ((0, 2), (1, 2)),
}


def as_configuration(value) -> Configuration:
    if isinstance(value, Configuration):
        return value
    aliases = {"xi": "cascade", "ladder": "cascade", "v": "vee", "lam": "lambda"}
    key = str(value).strip().lower()
    try:
        return Configuration(aliases.get(key, key))
    except ValueError:
        raise InvalidArgumentError(f"unknown configuration {value!r}") from None


def detunings_from_frequencies(omega1, omega2, big_omega1, big_omega2, configuration=None):
    """Detunings of the two driving fields.

    Without ``configuration`` this is the uniform rule
    ``delta1 = 2 w1 + w2 - W1``, ``delta2 = w1 + 2 w2 - W2``, which is the
    gap mismatch for lambda and vee. The cascade gaps are ``2 w1 - w2`` and
    ``2 w2 - w1``; pass ``configuration='cascade'`` to get detunings that are
    consistent with the cascade dressed Hamiltonian.
    """
    vals = [float(v) for v in (omega1, omega2, big_omega1, big_omega2)]
    if not all(math.isfinite(v) for v in vals):
        raise InvalidArgumentError("frequencies must be finite")
    w1, w2, W1, W2 = vals
    if configuration is not None and as_configuration(configuration) is Configuration.CASCADE:
        return 2 * w1 - w2 - W1, 2 * w2 - w1 - W2
    return 2 * w1 + w2 - W1, w1 + 2 * w2 - W2


@dataclass(frozen=True)
class SystemConfig:
    """Configuration tag plus couplings, detunings and optional lab-frame frequencies.

    If all four frequencies are given, detunings left as ``None`` are derived
    from them; explicitly given detunings must agree within 1e-12.
    """

    configuration: Configuration
    kappa1: float
    kappa2: float
    delta1: float | None = None
    delta2: float | None = None
    omega1: float | None = None
    omega2: float | None = None
    big_omega1: float | None = None
    big_omega2: float | None = None
    check_hierarchy: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "configuration", as_configuration(self.configuration))
        for name in ("kappa1", "kappa2", "delta1", "delta2", "omega1", "omega2",
                     "big_omega1", "big_omega2"):
            v = getattr(self, name)
            if v is None:
                continue
            try:
                v = float(v)
            except (TypeError, ValueError):
                raise InvalidArgumentError(f"{name} must be a real number, got {v!r}") from None
            if not math.isfinite(v):
                raise InvalidArgumentError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, v)
        if self.kappa1 is None or self.kappa2 is None:
            raise InvalidArgumentError("kappa1 and kappa2 are required")

        if self.has_frequencies:
            derived = detunings_from_frequencies(
                self.omega1, self.omega2, self.big_omega1, self.big_omega2, self.configuration
            )
            for name, value in zip(("delta1", "delta2"), derived):
                given = getattr(self, name)
                if given is None:
                    object.__setattr__(self, name, value)
                elif abs(given - value) > 1e-12:
                    raise InvalidArgumentError(
                        f"{name}={given} inconsistent with frequencies (expected {value})"
                    )
            if self.check_hierarchy:
                self._warn_on_hierarchy()
        if self.delta1 is None or self.delta2 is None:
            raise InvalidArgumentError("detunings are required unless all four frequencies are given")

    @property
    def has_frequencies(self) -> bool:
        return None not in (self.omega1, self.omega2, self.big_omega1, self.big_omega2)

    @property
    def has_level_frequencies(self) -> bool:
        return None not in (self.omega1, self.omega2)

    @property
    def resonant(self) -> bool:
        return abs(self.delta1) <= 1e-12 and abs(self.delta2) <= 1e-12

    def replace(self, **changes) -> "SystemConfig":
        fields = {
            "configuration": self.configuration,
            "kappa1": self.kappa1,
            "kappa2": self.kappa2,
            "delta1": self.delta1,
            "delta2": self.delta2,
            "omega1": self.omega1,
            "omega2": self.omega2,
            "big_omega1": self.big_omega1,
            "big_omega2": self.big_omega2,
            "check_hierarchy": self.check_hierarchy,
        }
        if {"omega1", "omega2", "big_omega1", "big_omega2"} & changes.keys():
            fields.update(delta1=None, delta2=None)
        fields.update(changes)
        return SystemConfig(**fields)

    def _warn_on_hierarchy(self):
        e = free_level_energies(self)
        if not (e[0] > e[1] > e[2]):
            warnings.warn(
                f"{self.configuration.value} level energies {tuple(e)} violate E3 > E2 > E1",
                stacklevel=3,
            )


def reference_rate(config: SystemConfig) -> float:
    """max(|kappa1|, |kappa2|, |delta1|, |delta2|, 1); sets step size and search horizon."""
    return max(abs(config.kappa1), abs(config.kappa2), abs(config.delta1), abs(config.delta2), 1.0)


def free_level_energies(config: SystemConfig) -> np.ndarray:
    """Diagonal of the free Hamiltonian, rows top level first."""
    if not config.has_level_frequencies:
        raise ConfigurationIncompleteError("omega1 and omega2 are required")
    op1, op2 = _FREE_OPERATORS[config.configuration]
    h = config.omega1 * shift_operator(op1, "three") + config.omega2 * shift_operator(op2, "three")
    return np.diag(h).real.copy()


def dressed_hamiltonian(config: SystemConfig) -> np.ndarray:
    """Time-independent Hamiltonian in the dressed (rotating) frame."""
    d1, d2 = config.delta1, config.delta2
    c = config.configuration
    if c is Configuration.CASCADE:
        diag = [(d1 + 2 * d2) / 3, (d1 - d2) / 3, -(2 * d1 + d2) / 3]
    elif c is Configuration.LAMBDA:
        diag = [(d1 + d2) / 3, (d1 - 2 * d2) / 3, (d2 - 2 * d1) / 3]
    else:
        diag = [(2 * d1 - d2) / 3, (2 * d2 - d1) / 3, -(d1 + d2) / 3]
    h = np.diag(np.asarray(diag, dtype=np.complex128))
    (a1, b1), (a2, b2) = COUPLED_ROWS[c]
    h[a1, b1] = h[b1, a1] = config.kappa1
    h[a2, b2] = h[b2, a2] = config.kappa2
    return h


def _require_frequencies(config: SystemConfig):
    if not config.has_frequencies:
        raise ConfigurationIncompleteError(
            "omega1, omega2, big_omega1 and big_omega2 are required for lab-frame quantities"
        )


def rwa_hamiltonian(config: SystemConfig, t: float) -> np.ndarray:
    """Time-dependent RWA Hamiltonian ``H(t)``.

    The detuning terms are folded into the free part, so the diagonal is the
    bare level energies; couplings rotate as ``exp(-i W t)`` above the diagonal.
    """
    _require_frequencies(config)
    op1, op2 = _FREE_OPERATORS[config.configuration]
    h = config.omega1 * shift_operator(op1, "three") + config.omega2 * shift_operator(op2, "three")
    coupling = {
        Configuration.CASCADE: ("U", "T"),
        Configuration.LAMBDA: ("V", "T"),
        Configuration.VEE: ("V", "U"),
    }[config.configuration]
    for kappa, freq, kind in zip(
        (config.kappa1, config.kappa2), (config.big_omega1, config.big_omega2), coupling
    ):
        h = h + kappa * (
            shift_operator(kind, "plus") * np.exp(-1j * freq * t)
            + shift_operator(kind, "minus") * np.exp(1j * freq * t)
        )
    return h


def dressing_exponent(config: SystemConfig) -> np.ndarray:
    """Diagonal ``A`` (as a length-3 vector) with ``U(t) = exp(-i A t)``."""
    _require_frequencies(config)
    W1, W2 = config.big_omega1, config.big_omega2
    c = config.configuration
    if c is Configuration.CASCADE:
        a = (W1 + 2 * W2) * shift_operator("T", "three") + (2 * W1 + W2) * shift_operator("U", "three")
    elif c is Configuration.LAMBDA:
        a = (2 * W2 - W1) * shift_operator("T", "three") + (2 * W1 - W2) * shift_operator("V", "three")
    else:
        a = (2 * W2 - W1) * shift_operator("U", "three") + (2 * W1 - W2) * shift_operator("V", "three")
    return np.diag(a).real / 3


def dressing_unitary(config: SystemConfig, t: float) -> np.ndarray:
    return np.diag(np.exp(-1j * dressing_exponent(config) * t))


@dataclass(frozen=True)
class DressingReport:
    times: tuple
    spread: float
    deviation: float
    transformed: np.ndarray = field(repr=False)

    def passed(self, tol: float = 1e-10) -> bool:
        return self.spread < tol and self.deviation < tol


def verify_dressing(config: SystemConfig, sample_times) -> DressingReport:
    """Transform ``H(t)`` into the dressed frame at each sample time.

    ``H~(t) = U^dag H U - i U^dag dU/dt`` with ``dU/dt = -i A U``; reports the
    entrywise spread across times and the deviation from
    :func:`dressed_hamiltonian`.
    """
    times = tuple(float(t) for t in sample_times)
    if not times:
        raise InvalidArgumentError("at least one sample time is required")
    a = dressing_exponent(config)
    target = dressed_hamiltonian(config)
    out = []
    for t in times:
        u = dressing_unitary(config, t)
        udot = -1j * np.diag(a) @ u
        ud = u.conj().T
        out.append(ud @ rwa_hamiltonian(config, t) @ u - 1j * ud @ udot)
    stack = np.array(out)
    spread = float(np.abs(stack - stack[0]).max())
    deviation = float(np.abs(stack - target).max())
    return DressingReport(times=times, spread=spread, deviation=deviation, transformed=stack)
