"""Exact solution of one invariant Fock block.

Each block spans {|ee,n,m>, |eg,n+1,m+1>, |ge,n+1,m+1>, |gg,n+2,m+2>}.
The symmetric sector reduces to a real 3x3 problem whose characteristic
cubic is solved in closed trigonometric form; the amplitudes A, B(=C), D
follow from the roots and the initial-condition coefficients eta_j.
Near-degenerate spectra are routed through an eigendecomposition
fallback instead of the eta/xi closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import ModelParams, couplings, effective_shifts

TOL_DEGENERATE = 1e-8
TOL_NORM = 1e-9
TOL_INIT = 1e-10


class DegenerateSpectrum(Exception):
    """Roots too close for the closed-form coefficients; use the eigen path."""


@dataclass(frozen=True)
class BlockAmplitudes:
    """Amplitudes (A, B, C, D) of one block at one time; B = C by construction."""

    a: complex
    b: complex
    c: complex
    d: complex

    @property
    def norm_sq(self) -> float:
        return (abs(self.a) ** 2 + abs(self.b) ** 2
                + abs(self.c) ** 2 + abs(self.d) ** 2)

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d])


@dataclass(frozen=True)
class BlockSolution:
    """Closed-form data of one (n, m) block."""

    n: int
    m: int
    v_a: float
    v_b: float
    v_d: float
    k1: float
    k2: float
    delta: float
    phi: float
    x1: float
    x2: float
    x3: float
    xi: np.ndarray          # three real roots, ascending
    eta: np.ndarray | None  # None on the degenerate path
    degenerate: bool


def cubic_coefficients(v_a: float, v_b: float, v_d: float,
                       k1: float, k2: float, delta: float) -> tuple[float, float, float]:
    """Coefficients of the block's characteristic cubic xi^3 + x1 xi^2 + x2 xi + x3."""
    x1 = v_a + v_b + v_d - 3.0 * delta
    x2 = ((v_b - delta) * (v_d - 2.0 * delta)
          + v_a * (v_b + v_d - 3.0 * delta)
          - 2.0 * (k1 ** 2 + k2 ** 2))
    x3 = ((2.0 * delta - v_d) * (v_a * (delta - v_b) + 2.0 * k1 ** 2)
          - 2.0 * v_a * k2 ** 2)
    return x1, x2, x3


def solve_cubic(x1: float, x2: float, x3: float,
                tol_degenerate: float = TOL_DEGENERATE) -> tuple[np.ndarray, bool]:
    """Three real roots of xi^3 + x1 xi^2 + x2 xi + x3 = 0, trigonometric form.

    Returns (roots sorted ascending, degenerate flag).  The flag fires when
    x1^2 - 3 x2 is below ``tol_degenerate`` or when two roots are closer
    than ``tol_degenerate`` relative to the spectral scale; callers must
    then take the eigendecomposition path.
    """
    s = x1 * x1 - 3.0 * x2
    if s < tol_degenerate:
        # (near-)triple root
        return np.full(3, -x1 / 3.0), True
    # cos argument can drift just past +-1 in floating point
    arg = (9.0 * x1 * x2 - 2.0 * x1 ** 3 - 27.0 * x3) / (2.0 * s ** 1.5)
    theta = math.acos(min(1.0, max(-1.0, arg))) / 3.0
    r = 2.0 / 3.0 * math.sqrt(s)
    xi = np.array([-x1 / 3.0 + r * math.cos(theta + 2.0 * math.pi * j / 3.0)
                   for j in range(3)])
    xi.sort()
    scale = max(1.0, float(np.abs(xi).max()))
    degenerate = bool(np.diff(xi).min() < tol_degenerate * scale)
    return xi, degenerate


def eta_coefficients(xi: np.ndarray, v_a: float, k1: float, k2: float,
                     phi: float, tol_degenerate: float = TOL_DEGENERATE) -> np.ndarray:
    """Initial-condition coefficients eta_j for A(0) = cos(phi/2), B(0) = 0.

    eta_j = [2 sin(phi/2) k1 k2 + cos(phi/2)(2 k1^2 + (xi_k+V_A)(xi_l+V_A))]
            / ((xi_j - xi_k)(xi_j - xi_l)),
    with (k, l) the complement of j.  Requires pairwise-distinct roots.
    """
    xi = np.asarray(xi, dtype=float)
    scale = max(1.0, float(np.abs(xi).max()))
    half = 0.5 * phi
    sin_h, cos_h = math.sin(half), math.cos(half)
    eta = np.empty(3)
    for j in range(3):
        k, l = (j + 1) % 3, (j + 2) % 3
        d1, d2 = xi[j] - xi[k], xi[j] - xi[l]
        if min(abs(d1), abs(d2)) < tol_degenerate * scale:
            raise DegenerateSpectrum(
                f"root gap below {tol_degenerate:g} * scale; eta undefined")
        num = (2.0 * sin_h * k1 * k2
               + cos_h * (2.0 * k1 ** 2 + (xi[k] + v_a) * (xi[l] + v_a)))
        eta[j] = num / (d1 * d2)
    return eta


def solve_block(params: ModelParams, n: int, m: int) -> BlockSolution:
    """Build the full closed-form solution of the (n, m) block."""
    v_a, v_b, v_d = effective_shifts(params, n, m)
    k1, k2 = couplings(params, n, m)
    x1, x2, x3 = cubic_coefficients(v_a, v_b, v_d, k1, k2, params.delta)
    xi, degenerate = solve_cubic(x1, x2, x3)
    eta = None
    if not degenerate:
        try:
            eta = eta_coefficients(xi, v_a, k1, k2, params.phi)
        except DegenerateSpectrum:
            degenerate = True
    return BlockSolution(n=n, m=m, v_a=v_a, v_b=v_b, v_d=v_d, k1=k1, k2=k2,
                         delta=params.delta, phi=params.phi,
                         x1=x1, x2=x2, x3=x3, xi=xi, eta=eta,
                         degenerate=degenerate)


def block_matrix(sol: BlockSolution) -> np.ndarray:
    """Effective real symmetric 3x3 matrix of the rotated symmetric sector."""
    return np.array([
        [sol.v_a, math.sqrt(2.0) * sol.k1, 0.0],
        [math.sqrt(2.0) * sol.k1, sol.v_b - sol.delta, math.sqrt(2.0) * sol.k2],
        [0.0, math.sqrt(2.0) * sol.k2, sol.v_d - 2.0 * sol.delta],
    ])


def mode_coefficients(sol: BlockSolution) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Frequencies and per-mode coefficients of the block evolution.

    Returns (freqs, coef_a, coef_b, coef_d) such that

        A(t) = sum_j coef_a[j] e^{i freqs[j] t}
        B(t) = C(t) = e^{-i delta t}   sum_j coef_b[j] e^{i freqs[j] t}
        D(t) =        e^{-2i delta t}  sum_j coef_d[j] e^{i freqs[j] t}.

    Non-degenerate blocks use the analytic roots and eta coefficients;
    degenerate blocks fall back to diagonalizing the 3x3 sector matrix
    (freqs are then the negated eigenvalues).
    """
    if not sol.degenerate:
        xi, eta = sol.xi, sol.eta
        coef_a = eta.astype(float)
        coef_b = -(sol.v_a + xi) * eta / (2.0 * sol.k1)
        coef_d = (((xi + sol.v_a) * (xi - sol.delta + sol.v_b) - 2.0 * sol.k1 ** 2)
                  * eta / (2.0 * sol.k1 * sol.k2))
        return xi, coef_a, coef_b, coef_d
    energies, u = np.linalg.eigh(block_matrix(sol))
    v0 = np.array([math.cos(0.5 * sol.phi), 0.0, math.sin(0.5 * sol.phi)])
    w = u.T @ v0
    return -energies, u[0] * w, u[1] * w / math.sqrt(2.0), u[2] * w


def _amplitudes_from_modes(freqs, coef_a, coef_b, coef_d, delta, t) -> BlockAmplitudes:
    phase = np.exp(1j * freqs * t)
    a = complex(np.sum(coef_a * phase))
    b = complex(np.exp(-1j * delta * t) * np.sum(coef_b * phase))
    d = complex(np.exp(-2j * delta * t) * np.sum(coef_d * phase))
    return BlockAmplitudes(a=a, b=b, c=b, d=d)


def evolve_block(sol: BlockSolution, t: float) -> BlockAmplitudes:
    """Analytic amplitudes (A, B, C, D) at time t; closed-form path only."""
    if sol.degenerate:
        raise DegenerateSpectrum(
            f"block ({sol.n}, {sol.m}) is degenerate; use evolve_block_eig")
    xi, coef_a, coef_b, coef_d = mode_coefficients(sol)
    return _amplitudes_from_modes(xi, coef_a, coef_b, coef_d, sol.delta, t)


def evolve_block_eig(sol: BlockSolution, t: float) -> BlockAmplitudes:
    """Amplitudes via direct diagonalization; valid for any spectrum."""
    energies, u = np.linalg.eigh(block_matrix(sol))
    v0 = np.array([math.cos(0.5 * sol.phi), 0.0, math.sin(0.5 * sol.phi)])
    w = u.T @ v0
    return _amplitudes_from_modes(-energies, u[0] * w, u[1] * w / math.sqrt(2.0),
                                  u[2] * w, sol.delta, t)
