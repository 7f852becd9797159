"""Entanglement measures of the simulated state.

Pure-state atom-field entanglement of formation via the closed-form
trigonometric eigenvalues of the reduced atomic density matrix (checked
against a direct Hermitian eigensolver), and mixed-state atom-atom
concurrence / EOF via the spin-flip construction.  All entropies are in
natural-log units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TOL_SYMMETRY = 1e-9

# sigma_y (x) sigma_y in the standard {|ee>, |eg>, |ge>, |gg>} basis
_YY = np.array([
    [0.0, 0.0, 0.0, -1.0],
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 1.0, 0.0, 0.0],
    [-1.0, 0.0, 0.0, 0.0],
])


class SymmetryViolation(Exception):
    """Atomic density matrix lacks the B = C structural symmetry."""


@dataclass(frozen=True)
class MeasureResult:
    eof_atom_field: float
    concurrence: float
    eof_atom_atom: float
    zeta: np.ndarray
    consistency_gap: float


def _as_matrix(rho) -> np.ndarray:
    mat = getattr(rho, "matrix", rho)
    return np.asarray(mat, dtype=complex)


def atomic_eigenvalues_closed_form(rho, tol_symmetry: float = TOL_SYMMETRY) -> np.ndarray:
    """Eigenvalues (zeta_1..zeta_3, 0) of the atomic density matrix.

    Uses the trigonometric solution of the characteristic cubic of the
    symmetric 3x3 sector; the antisymmetric combination of |eg> and |ge>
    carries eigenvalue zero exactly.  Valid only under the structural
    symmetry rho_22 = rho_33, rho_12 = rho_13, rho_24 = rho_34.
    """
    r = _as_matrix(rho)
    sym_gap = max(abs(r[1, 1] - r[2, 2]), abs(r[0, 1] - r[0, 2]),
                  abs(r[1, 3] - r[2, 3]))
    if sym_gap > tol_symmetry:
        raise SymmetryViolation(
            f"structural symmetry violated by {sym_gap:.3e} (> {tol_symmetry:g})")
    p1 = -(r[0, 0] + 2.0 * r[1, 1] + r[3, 3]).real
    if abs(p1 + 1.0) > 1e-12:
        raise ValueError(f"trace self-check failed: p1 = {p1!r} != -1")
    p2 = (-2.0 * r[0, 1] * r[1, 0] - r[0, 3] * r[3, 0] - 2.0 * r[1, 3] * r[3, 1]
          + 2.0 * r[1, 1] * r[3, 3] + r[0, 0] * (2.0 * r[1, 1] + r[3, 3])).real
    p3 = 2.0 * (r[0, 3] * (r[1, 1] * r[3, 0] - r[1, 0] * r[3, 1])
                + r[0, 1] * (r[1, 0] * r[3, 3] - r[1, 3] * r[3, 0])
                + r[0, 0] * (r[1, 3] * r[3, 1] - r[1, 1] * r[3, 3])).real
    s = p1 * p1 - 3.0 * p2
    if s <= 0.0:
        zeta3 = np.full(3, -p1 / 3.0)
    else:
        arg = (9.0 * p1 * p2 - 2.0 * p1 ** 3 - 27.0 * p3) / (2.0 * s ** 1.5)
        w = math.acos(min(1.0, max(-1.0, arg))) / 3.0
        zeta3 = np.array([-p1 / 3.0 + 2.0 / 3.0 * math.sqrt(s)
                          * math.cos(w + 2.0 * math.pi * j / 3.0) for j in range(3)])
    return np.append(zeta3, 0.0)


def _entropy(vals: np.ndarray) -> float:
    vals = np.clip(np.real(vals), 0.0, 1.0)
    nz = vals[vals > 0.0]
    return float(-np.sum(nz * np.log(nz))) + 0.0


def eof_pure(rho) -> float:
    """Von Neumann entropy of the atomic reduced state (pure global state)."""
    return _entropy(np.linalg.eigvalsh(_as_matrix(rho)))


def spin_flip(rho) -> np.ndarray:
    """(sigma_y x sigma_y) rho^* (sigma_y x sigma_y), elementwise conjugate."""
    r = _as_matrix(rho)
    return _YY @ r.conj() @ _YY


def concurrence(rho) -> float:
    """Two-qubit concurrence max(0, 2 max lam_j - sum lam_j).

    lam_j are the square roots of the eigenvalues of rho * rho_tilde
    (same spectrum as rho_tilde * rho), sorted descending; tiny negative
    and imaginary numerical dust is clamped before the square roots.
    """
    r = _as_matrix(rho)
    evals = np.linalg.eigvals(r @ spin_flip(r))
    if np.abs(evals.imag).max() > 1e-9:
        raise ValueError("rho*rho_tilde spectrum has non-negligible imaginary part")
    lam = np.sqrt(np.clip(evals.real, 0.0, None))
    lam[::-1].sort()
    return float(min(1.0, max(0.0, 2.0 * lam[0] - lam.sum())))


def eof_from_concurrence(c: float) -> float:
    """EOF of a two-qubit state from its concurrence, h((1+sqrt(1-c^2))/2)."""
    c = min(1.0, max(0.0, c))
    x = 0.5 * (1.0 + math.sqrt(1.0 - c * c))
    return _entropy(np.array([x, 1.0 - x]))


def compute_measures(rho) -> MeasureResult:
    """All measures for one atomic density matrix.

    ``consistency_gap`` is the largest discrepancy between the closed-form
    eigenvalues and a direct Hermitian eigensolver (descending order).
    """
    r = _as_matrix(rho)
    zeta = atomic_eigenvalues_closed_form(r)
    zeta_eig = np.linalg.eigvalsh(r)
    gap = float(np.abs(np.sort(zeta)[::-1] - np.sort(zeta_eig)[::-1]).max())
    c = concurrence(r)
    return MeasureResult(eof_atom_field=_entropy(zeta),
                         concurrence=c,
                         eof_atom_atom=eof_from_concurrence(c),
                         zeta=zeta,
                         consistency_gap=gap)
