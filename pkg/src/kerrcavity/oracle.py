"""Brute-force verification of the analytic block amplitudes.

Integrates the explicitly time-dependent interaction-picture Schrodinger
equation of one block with fixed-step classical RK4 and compares against
the closed-form solution.  The integrator works on the raw 4x4
Hamiltonian with its e^{+-i delta t} phases, sharing no algebra with the
analytic path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .blocks import BlockAmplitudes, mode_coefficients, solve_block
from .model import ModelParams, couplings, effective_shifts

DEFAULT_DT = 1e-4


class StepTooLarge(Exception):
    """dt * spectral radius exceeds the accuracy bound of the fixed-step scheme."""


@dataclass(frozen=True)
class BlockOde:
    """Generator data of one block, basis (|ee,n,m>, |eg,+1>, |ge,+1>, |gg,+2>)."""

    v_a: float
    v_b: float
    v_d: float
    k1: float
    k2: float
    delta: float

    @classmethod
    def from_params(cls, params: ModelParams, n: int, m: int) -> "BlockOde":
        v_a, v_b, v_d = effective_shifts(params, n, m)
        k1, k2 = couplings(params, n, m)
        return cls(v_a=v_a, v_b=v_b, v_d=v_d, k1=k1, k2=k2, delta=params.delta)

    @property
    def spectral_radius(self) -> float:
        """Gershgorin bound on |H_I(t)| eigenvalues (t-independent)."""
        return max(abs(self.v_a) + 2.0 * self.k1,
                   abs(self.v_b) + self.k1 + self.k2,
                   abs(self.v_d) + 2.0 * self.k2)


def _deriv(t, c0, c1, c2, c3, v_a, v_b, v_d, k1, k2, delta):
    ph = complex(math.cos(delta * t), math.sin(delta * t))  # e^{+i delta t}
    phc = ph.conjugate()
    d0 = -1j * (v_a * c0 + k1 * ph * (c1 + c2))
    d1 = -1j * (k1 * phc * c0 + v_b * c1 + k2 * ph * c3)
    d2 = -1j * (k1 * phc * c0 + v_b * c2 + k2 * ph * c3)
    d3 = -1j * (k2 * phc * (c1 + c2) + v_d * c3)
    return d0, d1, d2, d3


def _rk4_block(v_a, v_b, v_d, k1, k2, delta, cin, n_samples, steps, dt):
    """RK4 on i dc/dt = H_I(t) c, recording every ``steps`` steps.

    Returns (samples array of shape (n_samples+1, 4), max |norm^2 - 1|).
    """
    out = np.empty((n_samples + 1, 4), dtype=np.complex128)
    c0, c1, c2, c3 = cin[0], cin[1], cin[2], cin[3]
    out[0, 0], out[0, 1], out[0, 2], out[0, 3] = c0, c1, c2, c3
    drift = 0.0
    h2 = 0.5 * dt
    for s in range(n_samples):
        t = s * steps * dt
        for i in range(steps):
            a0, a1, a2, a3 = _deriv(t, c0, c1, c2, c3,
                                    v_a, v_b, v_d, k1, k2, delta)
            b0, b1, b2, b3 = _deriv(t + h2, c0 + h2 * a0, c1 + h2 * a1,
                                    c2 + h2 * a2, c3 + h2 * a3,
                                    v_a, v_b, v_d, k1, k2, delta)
            g0, g1, g2, g3 = _deriv(t + h2, c0 + h2 * b0, c1 + h2 * b1,
                                    c2 + h2 * b2, c3 + h2 * b3,
                                    v_a, v_b, v_d, k1, k2, delta)
            e0, e1, e2, e3 = _deriv(t + dt, c0 + dt * g0, c1 + dt * g1,
                                    c2 + dt * g2, c3 + dt * g3,
                                    v_a, v_b, v_d, k1, k2, delta)
            c0 = c0 + dt / 6.0 * (a0 + 2.0 * b0 + 2.0 * g0 + e0)
            c1 = c1 + dt / 6.0 * (a1 + 2.0 * b1 + 2.0 * g1 + e1)
            c2 = c2 + dt / 6.0 * (a2 + 2.0 * b2 + 2.0 * g2 + e2)
            c3 = c3 + dt / 6.0 * (a3 + 2.0 * b3 + 2.0 * g3 + e3)
            t = (s * steps + i + 1) * dt
        out[s + 1, 0], out[s + 1, 1] = c0, c1
        out[s + 1, 2], out[s + 1, 3] = c2, c3
        nrm = (abs(c0) ** 2 + abs(c1) ** 2 + abs(c2) ** 2 + abs(c3) ** 2)
        err = abs(nrm - 1.0)
        if err > drift:
            drift = err
    return out, drift


try:  # jit the hot loop; the pure-python definitions above stay as fallback
    from numba import njit

    _deriv = njit(cache=True, inline="always")(_deriv)
    _rk4_block = njit(cache=True)(_rk4_block)
except ImportError:  # pragma: no cover
    pass


def _initial_vector(phi: float) -> np.ndarray:
    return np.array([math.cos(0.5 * phi), 0.0, 0.0, math.sin(0.5 * phi)],
                    dtype=np.complex128)


def integrate_block_grid(ode: BlockOde, phi: float, t_grid: np.ndarray,
                         dt: float = DEFAULT_DT) -> tuple[np.ndarray, float]:
    """Integrate one block over a uniform grid starting at t = 0.

    dt is rounded down to divide the grid spacing.  Returns the amplitude
    samples (len(t_grid) x 4) and the worst norm drift of the run.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if len(t_grid) < 1 or t_grid[0] != 0.0:
        raise ValueError("time grid must start at 0")
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    if dt * ode.spectral_radius > 0.1:
        raise StepTooLarge(
            f"dt*radius = {dt * ode.spectral_radius:.3g} > 0.1; reduce dt")
    c0 = _initial_vector(phi)
    if len(t_grid) == 1:
        return c0[None, :].copy(), 0.0
    spacing = t_grid[1] - t_grid[0]
    if not np.allclose(np.diff(t_grid), spacing):
        raise ValueError("time grid must be uniform")
    steps = max(1, int(math.ceil(spacing / dt - 1e-12)))
    out, drift = _rk4_block(ode.v_a, ode.v_b, ode.v_d, ode.k1, ode.k2,
                            ode.delta, c0, len(t_grid) - 1, steps,
                            spacing / steps)
    return out, drift


def integrate_block(ode: BlockOde, phi: float, t_end: float,
                    dt: float = DEFAULT_DT) -> BlockAmplitudes:
    """Amplitudes at t_end from the fixed-step integration."""
    if t_end == 0.0:
        c = _initial_vector(phi)
    else:
        out, _ = integrate_block_grid(ode, phi, np.array([0.0, t_end]), dt)
        c = out[-1]
    return BlockAmplitudes(a=complex(c[0]), b=complex(c[1]),
                           c=complex(c[2]), d=complex(c[3]))


def accuracy_dt(ode: BlockOde, t_end: float, target: float = 1e-7,
                dt_max: float = DEFAULT_DT) -> float:
    """Step size keeping the accumulated RK4 error of this block below target.

    Global error of the scheme on oscillation frequency w scales like
    t_end * w^5 * dt^4 / 120; w is bounded by the spectral radius plus the
    2*|delta| drive of the interaction-picture phases.
    """
    w = ode.spectral_radius + 2.0 * abs(ode.delta)
    dt = min(dt_max, 0.1 / max(w, 1e-30))
    if w > 0.0 and t_end > 0.0:
        dt = min(dt, (120.0 * target / (t_end * w ** 5)) ** 0.25)
    return dt


def compare_block(params: ModelParams, n: int, m: int, time_grid: np.ndarray,
                  dt: float = DEFAULT_DT) -> float:
    """Max 4-vector distance between analytic and integrated amplitudes."""
    time_grid = np.asarray(time_grid, dtype=float)
    sol = solve_block(params, n, m)
    freqs, coef_a, coef_b, coef_d = mode_coefficients(sol)
    phase = np.exp(1j * np.outer(time_grid, freqs))
    ana = np.empty((len(time_grid), 4), dtype=complex)
    ana[:, 0] = phase @ coef_a
    ana[:, 1] = np.exp(-1j * sol.delta * time_grid) * (phase @ coef_b)
    ana[:, 2] = ana[:, 1]
    ana[:, 3] = np.exp(-2j * sol.delta * time_grid) * (phase @ coef_d)
    ode = BlockOde.from_params(params, n, m)
    num, _ = integrate_block_grid(ode, params.phi, time_grid, dt)
    return float(np.linalg.norm(ana - num, axis=1).max())
