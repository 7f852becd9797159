"""Exact dynamics and entanglement measures for two two-level atoms coupled
to a two-mode field in a deformed-Kerr cavity with Stark shift and detuning."""

from .model import ModelParams, NonlinearityFn, couplings, effective_shifts, kerr_potential
from .blocks import (BlockAmplitudes, BlockSolution, DegenerateSpectrum,
                     cubic_coefficients, eta_coefficients, evolve_block,
                     evolve_block_eig, solve_block, solve_cubic)
from .state import (AtomicDensityMatrix, BlockEnsemble, CoherentWeights,
                    GlobalState, assemble_state, coherent_weights,
                    reduced_atomic_rho)
from .measures import (MeasureResult, SymmetryViolation,
                       atomic_eigenvalues_closed_form, compute_measures,
                       concurrence, eof_from_concurrence, eof_pure, spin_flip)
from .oracle import BlockOde, StepTooLarge, compare_block, integrate_block
from .scenarios import EntanglementSeries, Scenario, UnknownPreset, preset, run, verify

__all__ = [
    "ModelParams", "NonlinearityFn", "kerr_potential", "effective_shifts",
    "couplings", "BlockSolution", "BlockAmplitudes", "DegenerateSpectrum",
    "cubic_coefficients", "solve_cubic", "eta_coefficients", "solve_block",
    "evolve_block", "evolve_block_eig", "CoherentWeights", "coherent_weights",
    "GlobalState", "BlockEnsemble", "assemble_state", "AtomicDensityMatrix",
    "reduced_atomic_rho", "MeasureResult", "SymmetryViolation",
    "atomic_eigenvalues_closed_form", "eof_pure", "spin_flip", "concurrence",
    "eof_from_concurrence", "compute_measures", "BlockOde", "StepTooLarge",
    "integrate_block", "compare_block", "Scenario", "EntanglementSeries",
    "UnknownPreset", "preset", "run", "verify",
]
