"""Search for conserved quadratic forms ``sum_{i in A} S_i^2``.

Two independent routes: exhaustive trajectory testing over all 255 nonempty
index subsets (:func:`search_invariants`) and connected components of the
generator's sparsity graph (:func:`block_structure`).
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .bloch import (
    as_amplitudes,
    bloch_from_density,
    density_from_amplitudes,
    exact_trajectory,
    generator_matrix,
)
from .exceptions import InvalidArgumentError, UnsupportedClosedFormError
from .model import Configuration, SystemConfig, as_configuration, dressed_hamiltonian, reference_rate

TOTAL_NORM = 4.0 / 3.0

# Resonant splitting: (3-component block, 5-component block), 1-based
RESONANT_BLOCKS = {
    Configuration.CASCADE: ((1, 5, 6), (2, 3, 4, 7, 8)),
    Configuration.LAMBDA: ((1, 4, 7), (2, 3, 5, 6, 8)),
    Configuration.VEE: ((2, 4, 6), (1, 3, 5, 7, 8)),
}

# Coupled row pairs entering r2^2 = 4 (|c_p c_q|^2 + |c_q c_r|^2), 1-based rows
COUPLED_PAIRS = {
    Configuration.CASCADE: ((1, 2), (2, 3)),
    Configuration.LAMBDA: ((1, 2), (1, 3)),
    Configuration.VEE: ((2, 3), (1, 3)),
}

ALL_SUBSETS = tuple(
    subset for n in range(1, 9) for subset in itertools.combinations(range(1, 9), n)
)


def _mask(subset) -> int:
    return sum(1 << (i - 1) for i in subset)


_ALL_MASKS = np.array([_mask(s) for s in ALL_SUBSETS], dtype=np.int64)


def _check_subset(subset) -> tuple[int, ...]:
    subset = tuple(sorted(set(int(i) for i in subset)))
    if not subset:
        raise InvalidArgumentError("subset must be nonempty")
    if subset[0] < 1 or subset[-1] > 8:
        raise InvalidArgumentError(f"subset indices must lie in 1..8, got {subset}")
    return subset


def subset_deviation(traj, subset) -> float:
    """``max_t |sum_{i in A} S_i(t)^2 - S_i(0)^2|``."""
    subset = _check_subset(subset)
    states = traj.states if hasattr(traj, "states") else np.asarray(traj, dtype=np.float64)
    if len(states) == 0:
        raise InvalidArgumentError("trajectory is empty")
    dev = kernels.subset_deviations(
        np.ascontiguousarray(states, dtype=np.float64), np.array([_mask(subset)], dtype=np.int64)
    )
    return float(dev[0])


def casimir_norm(s) -> float:
    """Quadratic Casimir ``sum_i S_i^2``; 4/3 for normalized pure states."""
    s = np.asarray(s, dtype=np.float64)
    return float(np.dot(s, s))


def block_structure(m, atol: float = 1e-12) -> list[tuple[int, ...]]:
    """Connected components (1-based, sorted) of the graph with edges where ``|m_ij| > atol``."""
    m = np.asarray(m, dtype=np.float64)
    n = m.shape[0]
    adjacency = (np.abs(m) > atol) | (np.abs(m.T) > atol)
    seen = [False] * n
    components = []
    for start in range(n):
        if seen[start]:
            continue
        stack, comp = [start], []
        seen[start] = True
        while stack:
            v = stack.pop()
            comp.append(v + 1)
            for w in np.flatnonzero(adjacency[v]):
                if not seen[w]:
                    seen[w] = True
                    stack.append(int(w))
        components.append(tuple(sorted(comp)))
    return sorted(components, key=lambda c: (len(c), c))


@dataclass(frozen=True)
class SubsetCandidate:
    indices: tuple[int, ...]
    max_deviation: float
    conserved: bool
    minimal: bool = False


@dataclass
class InvariantReport:
    configuration: Configuration
    resonant: bool
    trials: int
    tolerance: float
    seed: int
    candidates: list[SubsetCandidate] = field(repr=False)

    @property
    def conserved_minimal(self) -> list[SubsetCandidate]:
        found = [c for c in self.candidates if c.minimal]
        return sorted(found, key=lambda c: (len(c.indices), c.indices))

    @property
    def minimal_subsets(self) -> list[tuple[int, ...]]:
        return [c.indices for c in self.conserved_minimal]

    def is_union_closed(self) -> bool:
        """Disjoint unions of conserved subsets are conserved."""
        conserved = {c.indices for c in self.candidates if c.conserved}
        for a, b in itertools.combinations(conserved, 2):
            if not set(a) & set(b) and tuple(sorted(a + b)) not in conserved:
                return False
        return True

    def to_dict(self) -> dict:
        return {
            "configuration": self.configuration.value,
            "resonant": self.resonant,
            "seed": self.seed,
            "trials": self.trials,
            "tolerance": self.tolerance,
            "minimal_conserved": [list(s) for s in self.minimal_subsets],
            "all_candidates": [
                {"subset": list(c.indices), "max_deviation": c.max_deviation}
                for c in self.candidates
            ],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def random_amplitudes(rng: np.random.Generator) -> np.ndarray:
    c = rng.normal(size=3) + 1j * rng.normal(size=3)
    return c / np.linalg.norm(c)


def is_degenerate(config: SystemConfig, min_coupling: float = 0.1) -> bool:
    """A (nearly) switched-off coupling splits the blocks further."""
    return min(abs(config.kappa1), abs(config.kappa2)) < min_coupling


def search_invariants(
    config: SystemConfig,
    trials: int = 5,
    tol: float = 1e-8,
    seed: int = 42,
    samples: int = 200,
    allow_degenerate: bool = False,
) -> InvariantReport:
    """Exhaustive search over all 255 nonempty subsets of {1..8}.

    Each trial starts from a random normalized complex state drawn from a
    generator seeded with ``(seed, trial)`` and is propagated exactly over
    ``[0, 20 / reference_rate]``. A subset is conserved when its worst
    deviation over all trials is below ``tol``.
    """
    if isinstance(trials, bool) or int(trials) != trials or trials < 3:
        raise InvalidArgumentError(f"trials must be an integer >= 3, got {trials!r}")
    if not (tol > 0):
        raise InvalidArgumentError(f"tolerance must be positive, got {tol!r}")
    if samples < 2:
        raise InvalidArgumentError("need at least two samples per trajectory")
    if not allow_degenerate and is_degenerate(config):
        raise InvalidArgumentError(
            f"couplings kappa1={config.kappa1}, kappa2={config.kappa2} are degenerate "
            "(one below 0.1); pass allow_degenerate=True to run anyway"
        )
    h = dressed_hamiltonian(config)
    times = np.linspace(0.0, 20.0 / reference_rate(config), samples)
    worst = np.zeros(len(ALL_SUBSETS))
    for trial in range(int(trials)):
        rng = np.random.default_rng([int(seed), trial])
        traj = exact_trajectory(h, random_amplitudes(rng), times)
        dev = kernels.subset_deviations(np.ascontiguousarray(traj.states), _ALL_MASKS)
        np.maximum(worst, dev, out=worst)

    conserved = {s: bool(w < tol) for s, w in zip(ALL_SUBSETS, worst)}
    candidates = []
    for subset, w in zip(ALL_SUBSETS, worst):
        minimal = conserved[subset] and not any(
            conserved[sub]
            for n in range(1, len(subset))
            for sub in itertools.combinations(subset, n)
        )
        candidates.append(SubsetCandidate(subset, float(w), conserved[subset], minimal))
    return InvariantReport(
        configuration=config.configuration,
        resonant=config.resonant,
        trials=int(trials),
        tolerance=float(tol),
        seed=int(seed),
        candidates=candidates,
    )


def direct_constants(c0, configuration) -> tuple[float, float]:
    """Subset sums over the resonant 3- and 5-blocks evaluated from ``Tr(rho(0) lambda_i)``.

    Valid for any (complex) normalized amplitudes.
    """
    three, five = RESONANT_BLOCKS[as_configuration(configuration)]
    s = bloch_from_density(density_from_amplitudes(c0))
    return (
        float(sum(s[i - 1] ** 2 for i in three)),
        float(sum(s[i - 1] ** 2 for i in five)),
    )


def _pair_term(c: np.ndarray, configuration) -> float:
    p = np.abs(c) ** 2
    return 4.0 * sum(p[a - 1] * p[b - 1] for a, b in COUPLED_PAIRS[as_configuration(configuration)])


def closed_form_constants(c0, config) -> tuple[float, float]:
    """Closed-form ``(r2^2, r4^2)`` for real initial amplitudes.

    ``r2^2 = 4 (|c_p|^2 |c_q|^2 + |c_q|^2 |c_r|^2)`` over the configuration's
    coupled row pairs and ``r4^2 = 4/3 - r2^2``. Complex amplitudes raise
    :class:`UnsupportedClosedFormError`; use :func:`direct_constants`.
    """
    configuration = config.configuration if isinstance(config, SystemConfig) else config
    c = as_amplitudes(c0)
    if np.abs(c.imag).max() > 1e-12:
        raise UnsupportedClosedFormError(
            "closed forms assume real amplitudes; evaluate Tr(rho(0) lambda_i) directly "
            "with direct_constants()"
        )
    r2 = _pair_term(c, configuration)
    return r2, TOTAL_NORM - r2


def printed_complement(c0, config) -> float:
    """The 5-block constant with the published coefficient -3 instead of -4.

    Kept only to document the discrepancy; it does not satisfy
    ``r2^2 + r4^2 = 4/3``.
    """
    configuration = config.configuration if isinstance(config, SystemConfig) else config
    c = as_amplitudes(c0)
    return TOTAL_NORM * float(np.sum(np.abs(c) ** 2)) ** 2 - 0.75 * _pair_term(c, configuration)


def propagating_blocks(config: SystemConfig) -> list[tuple[int, ...]]:
    return block_structure(generator_matrix(dressed_hamiltonian(config)))
