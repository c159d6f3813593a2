"""Gell-Mann matrices, SU(3) shift operators and structure constants.

Indices in the public interface are 1-based (lambda_1 .. lambda_8).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exceptions import InvalidArgumentError

SQRT3 = np.sqrt(3.0)
ALGEBRA_TOL = 1e-12


def _build_gellmann() -> np.ndarray:
    lam = np.zeros((8, 3, 3), dtype=np.complex128)
    lam[0][0, 1] = lam[0][1, 0] = 1
    lam[1][0, 1], lam[1][1, 0] = -1j, 1j
    lam[2] = np.diag([1, -1, 0])
    lam[3][0, 2] = lam[3][2, 0] = 1
    lam[4][0, 2], lam[4][2, 0] = -1j, 1j
    lam[5][1, 2] = lam[5][2, 1] = 1
    lam[6][1, 2], lam[6][2, 1] = -1j, 1j
    lam[7] = np.diag([1, 1, -2]) / SQRT3
    lam.setflags(write=False)
    return lam


GELLMANN = _build_gellmann()


def _check_index(i) -> int:
    if isinstance(i, bool) or not isinstance(i, (int, np.integer)) or not 1 <= i <= 8:
        raise InvalidArgumentError(f"Gell-Mann index must be an integer in 1..8, got {i!r}")
    return int(i)


def gellmann(i: int) -> np.ndarray:
    """Return a copy of the Gell-Mann matrix lambda_i (1 <= i <= 8)."""
    return GELLMANN[_check_index(i) - 1].copy()


_SHIFT_PARTS = {
    "T": (1, 2),
    "U": (6, 7),
    "V": (4, 5),
}


def shift_operator(kind: str, part: str) -> np.ndarray:
    """SU(3) shift operator.

    Parameters
    ----------
    kind : {'T', 'U', 'V'}
    part : {'plus', 'minus', 'three'}

    ``T+- = (l1 +- i l2)/2``, ``U+- = (l6 +- i l7)/2``, ``V+- = (l4 +- i l5)/2``,
    ``T3 = l3``, ``U3 = (sqrt3 l8 - l3)/2``, ``V3 = (sqrt3 l8 + l3)/2``.
    """
    kind = str(kind).upper()
    if kind not in _SHIFT_PARTS:
        raise InvalidArgumentError(f"unknown shift operator kind {kind!r}")
    if part == "three":
        if kind == "T":
            return gellmann(3)
        sign = -1.0 if kind == "U" else 1.0
        return (SQRT3 * gellmann(8) + sign * gellmann(3)) / 2
    if part not in ("plus", "minus"):
        raise InvalidArgumentError(f"unknown shift operator part {part!r}")
    a, b = _SHIFT_PARTS[kind]
    sign = 1.0 if part == "plus" else -1.0
    return (gellmann(a) + sign * 1j * gellmann(b)) / 2


@dataclass(frozen=True)
class StructureConstants:
    """Totally antisymmetric ``f`` and totally symmetric ``d`` tensors, 0-based storage."""

    f: np.ndarray
    d: np.ndarray


def compute_structure_constants(basis: np.ndarray = GELLMANN) -> StructureConstants:
    """Trace formulas f_ijk = Tr([li,lj] lk)/(4i), d_ijk = Tr({li,lj} lk)/4."""
    prod = np.einsum("iab,jbc->ijac", basis, basis)
    comm = prod - prod.transpose(1, 0, 2, 3)
    anti = prod + prod.transpose(1, 0, 2, 3)
    f = (np.einsum("ijab,kba->ijk", comm, basis) / 4j).real
    d = (np.einsum("ijab,kba->ijk", anti, basis) / 4).real
    f.setflags(write=False)
    d.setflags(write=False)
    return StructureConstants(f=f, d=d)


@lru_cache(maxsize=1)
def structure_constants() -> StructureConstants:
    return compute_structure_constants(GELLMANN)


def structure_constant(tensor: str, i: int, j: int, k: int) -> float:
    """Single entry ``f_ijk`` or ``d_ijk`` (1-based indices)."""
    i, j, k = (_check_index(x) - 1 for x in (i, j, k))
    sc = structure_constants()
    if tensor == "f":
        return float(sc.f[i, j, k])
    if tensor == "d":
        return float(sc.d[i, j, k])
    raise InvalidArgumentError(f"tensor must be 'f' or 'd', got {tensor!r}")


def nonzero_table(tensor: str, atol: float = 1e-12) -> list[tuple[tuple[int, int, int], float]]:
    """Nonzero entries with i <= j <= k (1-based) for ``d``; i < j < k for ``f``."""
    sc = structure_constants()
    arr = sc.f if tensor == "f" else sc.d
    out = []
    for i in range(8):
        for j in range(i, 8):
            for k in range(j, 8):
                if tensor == "f" and (i == j or j == k):
                    continue
                if abs(arr[i, j, k]) > atol:
                    out.append(((i + 1, j + 1, k + 1), float(arr[i, j, k])))
    return out


@dataclass(frozen=True)
class AlgebraReport:
    commutator: float
    anticommutator: float
    orthonormality: float
    tracelessness: float
    hermiticity: float
    f_antisymmetry: float
    d_symmetry: float
    jacobi: float
    tolerance: float = ALGEBRA_TOL

    def residuals(self) -> dict[str, float]:
        return {
            "commutator": self.commutator,
            "anticommutator": self.anticommutator,
            "orthonormality": self.orthonormality,
            "tracelessness": self.tracelessness,
            "hermiticity": self.hermiticity,
            "f_antisymmetry": self.f_antisymmetry,
            "d_symmetry": self.d_symmetry,
            "jacobi": self.jacobi,
        }

    @property
    def max_residual(self) -> float:
        return max(self.residuals().values())

    @property
    def passed(self) -> bool:
        return self.max_residual < self.tolerance


def _perm_residual(t: np.ndarray, sign: float) -> float:
    worst = 0.0
    for axes in [(1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1)]:
        cyclic = axes in [(1, 2, 0), (2, 0, 1)]
        s = 1.0 if cyclic else sign
        worst = max(worst, float(np.abs(t - s * t.transpose(axes)).max()))
    return worst


def verify_algebra(basis: np.ndarray | None = None) -> AlgebraReport:
    """Check the commutator/anticommutator expansions and related identities.

    ``basis`` defaults to the Gell-Mann matrices; passing a perturbed basis is
    how the negative control is exercised. Structure constants are recomputed
    from ``basis`` with the trace formulas.
    """
    lam = GELLMANN if basis is None else np.asarray(basis, dtype=np.complex128)
    sc = structure_constants() if basis is None else compute_structure_constants(lam)
    f, d = sc.f, sc.d
    eye = np.eye(3)

    prod = np.einsum("iab,jbc->ijac", lam, lam)
    comm = prod - prod.transpose(1, 0, 2, 3)
    anti = prod + prod.transpose(1, 0, 2, 3)
    comm_rhs = 2j * np.einsum("ijk,kab->ijab", f, lam)
    anti_rhs = (4 / 3) * np.einsum("ij,ab->ijab", np.eye(8), eye) + 2 * np.einsum(
        "ijk,kab->ijab", d, lam
    )
    gram = np.einsum("iab,jba->ij", lam, lam)

    jac = (
        np.einsum("ijm,mkl->ijkl", f, f)
        + np.einsum("jkm,mil->ijkl", f, f)
        + np.einsum("kim,mjl->ijkl", f, f)
    )
    return AlgebraReport(
        commutator=float(np.abs(comm - comm_rhs).max()),
        anticommutator=float(np.abs(anti - anti_rhs).max()),
        orthonormality=float(np.abs(gram - 2 * np.eye(8)).max()),
        tracelessness=float(np.abs(np.einsum("iaa->i", lam)).max()),
        hermiticity=float(np.abs(lam - lam.conj().transpose(0, 2, 1)).max()),
        f_antisymmetry=_perm_residual(f, -1.0),
        d_symmetry=_perm_residual(d, 1.0),
        jacobi=float(np.abs(jac).max()),
    )
