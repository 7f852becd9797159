"""Physical parameters of the two-atom, two-mode nonlinear cavity model.

Holds the coupling / detuning / Kerr / Stark parameters, the photon-number
nonlinearity functions, and the per-block quantities derived from them:
the deformed Kerr potential, the Stark-shifted diagonal energies and the
two-photon couplings of each invariant Fock block.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class NonlinearityFn:
    """Photon-number function h(n) evaluated on non-negative integers.

    Supported kinds:
      * ``unit``          h(n) = 1
      * ``sqrt``          h(n) = sqrt(n)
      * ``inverse-sqrt``  h(n) = 1/sqrt(n), n >= 1
      * ``tabulated``     h(n) = values[n]

    ``inverse-sqrt`` is undefined at n = 0; call sites that form products
    like n*h(n)**2 must check the integer prefactor first (a zero
    prefactor annihilates the factor, so h(0) is never evaluated).
    """

    kind: str
    values: tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind not in ("unit", "sqrt", "inverse-sqrt", "tabulated"):
            raise ValueError(f"unknown nonlinearity kind {self.kind!r}")
        if self.kind == "tabulated":
            if not self.values:
                raise ValueError("tabulated nonlinearity needs values")
            for v in self.values:
                if not math.isfinite(v) or v < 0:
                    raise ValueError("tabulated values must be finite and non-negative")

    @classmethod
    def unit(cls) -> "NonlinearityFn":
        return cls("unit")

    @classmethod
    def sqrt(cls) -> "NonlinearityFn":
        return cls("sqrt")

    @classmethod
    def inverse_sqrt(cls) -> "NonlinearityFn":
        return cls("inverse-sqrt")

    @classmethod
    def tabulated(cls, values) -> "NonlinearityFn":
        return cls("tabulated", tuple(float(v) for v in values))

    def __call__(self, n: int) -> float:
        if n < 0:
            raise ValueError("photon number must be non-negative")
        if self.kind == "unit":
            return 1.0
        if self.kind == "sqrt":
            return math.sqrt(n)
        if self.kind == "inverse-sqrt":
            if n == 0:
                raise ValueError("1/sqrt(n) is undefined at n = 0; "
                                 "check the integer prefactor before evaluating")
            return 1.0 / math.sqrt(n)
        # tabulated
        if n >= len(self.values):
            raise ValueError(f"tabulated nonlinearity has no value at n = {n}")
        return self.values[n]


@dataclass(frozen=True)
class ModelParams:
    """All physical parameters of the model.

    Rates (``lam``, ``delta``, ``chi1``, ``chi2``, ``chi_cross``, ``beta1``,
    ``beta2``) share one unit of inverse time; ``lam`` sets the time scale
    and must be positive.  The two atoms are identical by construction:
    one detuning, one coupling rate, one pair of Stark coefficients.
    ``phi`` parametrizes the atomic superposition cos(phi/2)|ee> +
    sin(phi/2)|gg> and must lie in [0, pi].
    """

    lam: float = 1.0
    delta: float = 0.0
    chi1: float = 0.0
    chi2: float = 0.0
    chi_cross: float = 0.0
    beta1: float = 0.0
    beta2: float = 0.0
    phi: float = math.pi
    alpha1: complex = 0.0 + 0.0j
    alpha2: complex = 0.0 + 0.0j
    f1: NonlinearityFn = field(default_factory=NonlinearityFn.unit)
    f2: NonlinearityFn = field(default_factory=NonlinearityFn.unit)
    g1: NonlinearityFn = field(default_factory=NonlinearityFn.unit)
    g2: NonlinearityFn = field(default_factory=NonlinearityFn.unit)

    def __post_init__(self):
        if not (self.lam > 0 and math.isfinite(self.lam)):
            raise ValueError("coupling rate lam must be positive and finite")
        for name in ("delta", "chi1", "chi2", "chi_cross", "beta1", "beta2", "phi"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if not (0.0 <= self.phi <= math.pi):
            raise ValueError("phi must lie in [0, pi]")
        for name in ("alpha1", "alpha2"):
            if not cmath.isfinite(complex(getattr(self, name))):
                raise ValueError(f"{name} must be finite")


def kerr_potential(params: ModelParams, n: int, m: int) -> float:
    """Deformed Kerr energy of the two-mode Fock state |n, m>.

    chi1*n(n-1)*g1(n)^2 g1(n-1)^2 + chi2*m(m-1)*g2(m)^2 g2(m-1)^2
    + chi*n*m*g1(n)^2 g2(m)^2, with each term dropped outright when its
    integer prefactor vanishes so that g(0) is never evaluated.
    """
    if n < 0 or m < 0:
        raise ValueError("photon numbers must be non-negative")
    g1, g2 = params.g1, params.g2
    total = 0.0
    if n >= 2:
        total += params.chi1 * n * (n - 1) * g1(n) ** 2 * g1(n - 1) ** 2
    if m >= 2:
        total += params.chi2 * m * (m - 1) * g2(m) ** 2 * g2(m - 1) ** 2
    if n >= 1 and m >= 1:
        total += params.chi_cross * n * m * g1(n) ** 2 * g2(m) ** 2
    return total


def effective_shifts(params: ModelParams, n: int, m: int) -> tuple[float, float, float]:
    """Diagonal energies (V_A, V_B, V_D) of the (n, m) block.

    Kerr potential at the three photon-number points of the block plus
    the Stark contributions of each atomic configuration.
    """
    v1 = kerr_potential(params, n, m)
    v2 = kerr_potential(params, n + 1, m + 1)
    v3 = kerr_potential(params, n + 2, m + 2)
    v_a = v1 + 2.0 * params.beta2 * m
    v_b = v2 + params.beta1 * (n + 1) + params.beta2 * (m + 1)
    v_d = v3 + 2.0 * params.beta1 * (n + 2)
    return v_a, v_b, v_d


def couplings(params: ModelParams, n: int, m: int) -> tuple[float, float]:
    """Two-photon couplings (k1, k2) of the (n, m) block.

    k_j = lam * f1(n+j) * f2(m+j) * sqrt((n+j)(m+j)), j = 1, 2.
    """
    if n < 0 or m < 0:
        raise ValueError("photon numbers must be non-negative")
    k = []
    for j in (1, 2):
        k.append(params.lam * params.f1(n + j) * params.f2(m + j)
                 * math.sqrt((n + j) * (m + j)))
    return k[0], k[1]
