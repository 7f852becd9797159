"""Truncated two-mode Fock expansion of the global state.

Coherent-state weights with automatic truncation, batched evaluation of
all block amplitudes at a time point, and the partial trace over both
field modes down to the 4x4 atomic density matrix.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln
from scipy.stats import poisson

from .blocks import BlockAmplitudes, mode_coefficients, solve_block
from .model import ModelParams

EPS_TRUNC = 1e-12


@dataclass(frozen=True)
class CoherentWeights:
    """Coherent-state expansion weights q_n = e^{-|a|^2/2} a^n / sqrt(n!)."""

    alpha: complex
    n_max: int
    q: np.ndarray


def coherent_weights(alpha: complex, eps_trunc: float = EPS_TRUNC) -> CoherentWeights:
    """Weights of |alpha> truncated so the Poisson tail mass is <= eps_trunc.

    Magnitudes are computed in the log domain; |q_n|^2 is the
    Poisson(|alpha|^2) mass at n.
    """
    if not (0.0 < eps_trunc < 1.0):
        raise ValueError("eps_trunc must lie in (0, 1)")
    alpha = complex(alpha)
    nbar = abs(alpha) ** 2
    if nbar == 0.0:
        return CoherentWeights(alpha=alpha, n_max=0, q=np.array([1.0 + 0.0j]))
    n_max = int(poisson.isf(eps_trunc, nbar))
    while poisson.sf(n_max, nbar) > eps_trunc:
        n_max += 1
    n = np.arange(n_max + 1)
    log_mag = -0.5 * nbar + n * math.log(abs(alpha)) - 0.5 * gammaln(n + 1)
    phase = n * cmath.phase(alpha)
    q = np.exp(log_mag) * np.exp(1j * phase)
    return CoherentWeights(alpha=alpha, n_max=n_max, q=q)


@dataclass(frozen=True)
class GlobalState:
    """All block amplitudes of the joint state at one time.

    ``amp_ee[n, m]`` is A(n, m, t); ``amp_eg[n, m]`` is B(n+1, m+1, t)
    (equal to C by symmetry); ``amp_gg[n, m]`` is D(n+2, m+2, t).
    """

    t: float
    amp_ee: np.ndarray
    amp_eg: np.ndarray
    amp_gg: np.ndarray
    weights1: CoherentWeights
    weights2: CoherentWeights

    def block(self, n: int, m: int) -> BlockAmplitudes:
        b = complex(self.amp_eg[n, m])
        return BlockAmplitudes(a=complex(self.amp_ee[n, m]), b=b, c=b,
                               d=complex(self.amp_gg[n, m]))

    @property
    def norm_error(self) -> float:
        w = np.outer(np.abs(self.weights1.q) ** 2, np.abs(self.weights2.q) ** 2)
        total = float(np.sum(w * (np.abs(self.amp_ee) ** 2
                                  + 2.0 * np.abs(self.amp_eg) ** 2
                                  + np.abs(self.amp_gg) ** 2)))
        return abs(1.0 - total)


class BlockEnsemble:
    """Closed-form mode data of every block on the truncation grid.

    Built once per parameter set; evaluating the state at a time point is
    then a vectorized phase sum over all blocks.
    """

    def __init__(self, params: ModelParams, eps_trunc: float = EPS_TRUNC):
        self.params = params
        self.eps_trunc = eps_trunc
        self.weights1 = coherent_weights(params.alpha1, eps_trunc)
        self.weights2 = coherent_weights(params.alpha2, eps_trunc)
        n1 = self.weights1.n_max + 1
        n2 = self.weights2.n_max + 1
        self.freqs = np.empty((n1, n2, 3))
        self.coef_a = np.empty((n1, n2, 3))
        self.coef_b = np.empty((n1, n2, 3))
        self.coef_d = np.empty((n1, n2, 3))
        self.degenerate = np.zeros((n1, n2), dtype=bool)
        for n in range(n1):
            for m in range(n2):
                sol = solve_block(params, n, m)
                fr, ca, cb, cd = mode_coefficients(sol)
                self.freqs[n, m] = fr
                self.coef_a[n, m] = ca
                self.coef_b[n, m] = cb
                self.coef_d[n, m] = cd
                self.degenerate[n, m] = sol.degenerate

    def state_at(self, t: float) -> GlobalState:
        phase = np.exp(1j * self.freqs * t)
        delta = self.params.delta
        amp_ee = np.sum(self.coef_a * phase, axis=-1)
        amp_eg = cmath.exp(-1j * delta * t) * np.sum(self.coef_b * phase, axis=-1)
        amp_gg = cmath.exp(-2j * delta * t) * np.sum(self.coef_d * phase, axis=-1)
        return GlobalState(t=t, amp_ee=amp_ee, amp_eg=amp_eg, amp_gg=amp_gg,
                           weights1=self.weights1, weights2=self.weights2)


def assemble_state(params: ModelParams, t: float,
                   eps_trunc: float = EPS_TRUNC) -> GlobalState:
    """Evaluate every block of the truncation grid at time t."""
    return BlockEnsemble(params, eps_trunc).state_at(t)


@dataclass(frozen=True)
class AtomicDensityMatrix:
    """4x4 atomic density matrix over {|ee>, |eg>, |ge>, |gg>}."""

    matrix: np.ndarray

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)


def reduced_atomic_rho(state: GlobalState) -> AtomicDensityMatrix:
    """Trace out both field modes.

    Atomic level |ee> rides on field state (n, m), |eg>/|ge> on
    (n+1, m+1) and |gg> on (n+2, m+2), so the per-level field-basis
    coefficient arrays are shifted against each other before the
    contraction.  The result is renormalized to unit trace, absorbing
    the truncated coherent tail (relative size <= 2*eps_trunc).
    """
    q1, q2 = state.weights1.q, state.weights2.q
    n1, n2 = len(q1), len(q2)
    qq = np.outer(q1, q2)
    c = np.zeros((4, n1 + 2, n2 + 2), dtype=complex)
    c[0, :n1, :n2] = qq * state.amp_ee
    c[1, 1:n1 + 1, 1:n2 + 1] = qq * state.amp_eg
    c[2, 1:n1 + 1, 1:n2 + 1] = qq * state.amp_eg
    c[3, 2:, 2:] = qq * state.amp_gg
    rho = np.einsum("iab,jab->ij", c, c.conj())
    rho /= np.trace(rho).real
    return AtomicDensityMatrix(matrix=rho)
