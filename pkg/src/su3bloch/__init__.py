"""SU(3) Bloch-vector dynamics of cascade, lambda and vee three-level systems."""

__version__ = "0.1.0"

from .algebra import gellmann, shift_operator, structure_constant, verify_algebra
from .bloch import (
    bloch_from_density,
    density_from_amplitudes,
    density_from_bloch,
    generator_matrix,
    integrate_bloch,
    liouville_rhs,
    paper_generator,
    propagate_exact,
)
from .invariants import block_structure, casimir_norm, closed_form_constants, search_invariants, subset_deviation
from .model import (
    Configuration,
    SystemConfig,
    detunings_from_frequencies,
    dressed_hamiltonian,
    dressing_unitary,
    rwa_hamiltonian,
    verify_dressing,
)
from .qutrit import QutritAngles, degeneracy_scan, qutrit_amplitudes, qutrit_bloch_norm, qutrit_density

__all__ = [
    "Configuration",
    "QutritAngles",
    "SystemConfig",
    "block_structure",
    "bloch_from_density",
    "casimir_norm",
    "closed_form_constants",
    "degeneracy_scan",
    "density_from_amplitudes",
    "density_from_bloch",
    "detunings_from_frequencies",
    "dressed_hamiltonian",
    "dressing_unitary",
    "gellmann",
    "generator_matrix",
    "integrate_bloch",
    "liouville_rhs",
    "paper_generator",
    "propagate_exact",
    "qutrit_amplitudes",
    "qutrit_bloch_norm",
    "qutrit_density",
    "rwa_hamiltonian",
    "search_invariants",
    "shift_operator",
    "structure_constant",
    "subset_deviation",
    "verify_algebra",
    "verify_dressing",
]
