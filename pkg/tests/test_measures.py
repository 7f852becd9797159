import math

import numpy as np
import pytest
import scipy.linalg

from kerrcavity import (ModelParams, SymmetryViolation, assemble_state,
                        atomic_eigenvalues_closed_form, compute_measures,
                        concurrence, eof_from_concurrence, eof_pure,
                        reduced_atomic_rho, spin_flip)

BELL_PHI_PLUS = 0.5 * np.array([
    [1, 0, 0, 1],
    [0, 0, 0, 0],
    [0, 0, 0, 0],
    [1, 0, 0, 1],
], dtype=complex)


def simulated_rhos(count=8, seed=1):
    rng = np.random.default_rng(seed)
    p = ModelParams(delta=1.5, chi1=0.2, chi_cross=0.5, beta2=0.3,
                    alpha1=math.sqrt(5), alpha2=math.sqrt(5), phi=2.2)
    return [reduced_atomic_rho(assemble_state(p, t, 1e-12)).matrix
            for t in rng.uniform(0, 20, count)]


def random_x_state(rng):
    a, d = rng.uniform(0.1, 0.5, 2)
    b = (1 - a - d) / 2
    off = rng.uniform(0, math.sqrt(a * d)) * np.exp(1j * rng.uniform(0, 2 * np.pi))
    rho = np.diag([a, b, b, d]).astype(complex)
    rho[0, 3] = off
    rho[3, 0] = np.conj(off)
    return rho


def test_closed_form_pure_state():
    z = atomic_eigenvalues_closed_form(np.diag([1.0, 0, 0, 0]).astype(complex))
    assert np.sort(z) == pytest.approx([0, 0, 0, 1], abs=1e-12)


def test_closed_form_classical_mixture():
    z = atomic_eigenvalues_closed_form(np.diag([0.5, 0, 0, 0.5]).astype(complex))
    assert np.sort(z) == pytest.approx([0, 0, 0.5, 0.5], abs=1e-12)


def test_closed_form_matches_eigensolver_on_simulated_states():
    for rho in simulated_rhos():
        z = np.sort(atomic_eigenvalues_closed_form(rho))[::-1]
        ev = np.sort(np.linalg.eigvalsh(rho))[::-1]
        assert np.abs(z - ev).max() <= 1e-8


def test_closed_form_symmetry_violation():
    rho = np.diag([0.4, 0.35, 0.15, 0.1]).astype(complex)
    with pytest.raises(SymmetryViolation):
        atomic_eigenvalues_closed_form(rho)


def test_closed_form_trace_self_check():
    rho = np.diag([0.3, 0.2, 0.2, 0.2]).astype(complex)  # trace 0.9
    with pytest.raises(ValueError):
        atomic_eigenvalues_closed_form(rho)


def test_eof_pure_separable_and_mixed():
    assert eof_pure(np.diag([1.0, 0, 0, 0]).astype(complex)) == pytest.approx(0.0, abs=1e-12)
    assert eof_pure(np.eye(4, dtype=complex) / 4) == pytest.approx(math.log(4), abs=1e-12)


def test_eof_pure_bell_angle_initial_state():
    p = ModelParams(phi=math.pi / 2, alpha1=math.sqrt(10), alpha2=math.sqrt(10))
    rho = reduced_atomic_rho(assemble_state(p, 0.0, 1e-12)).matrix
    # two-level sector {1/2, 1/2, rho_14}: eigenvalues 1/2 +- |rho_14|
    r14 = abs(rho[0, 3])
    expected = -sum(v * math.log(v) for v in (0.5 + r14, 0.5 - r14))
    assert eof_pure(rho) == pytest.approx(expected, abs=1e-10)


def test_spin_flip_diagonal():
    rho = np.diag([0.4, 0.3, 0.2, 0.1]).astype(complex)
    assert spin_flip(rho) == pytest.approx(np.diag([0.1, 0.2, 0.3, 0.4]))


def test_spin_flip_bell_invariant():
    assert spin_flip(BELL_PHI_PLUS) == pytest.approx(BELL_PHI_PLUS)


def test_spin_flip_preserves_hermiticity_and_trace():
    rng = np.random.default_rng(9)
    for _ in range(10):
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        rho = a @ a.conj().T
        rho /= np.trace(rho).real
        flipped = spin_flip(rho)
        assert np.abs(flipped - flipped.conj().T).max() <= 1e-12
        assert np.trace(flipped).real == pytest.approx(1.0, abs=1e-12)


def test_concurrence_bell_state():
    assert concurrence(BELL_PHI_PLUS) == pytest.approx(1.0, abs=1e-12)


def test_concurrence_product_state():
    assert concurrence(np.diag([1.0, 0, 0, 0]).astype(complex)) == 0.0


def test_concurrence_x_states():
    # only rho_11, rho_44, rho_14 nonzero: C = 2|rho_14|
    rng = np.random.default_rng(21)
    for _ in range(20):
        a = rng.uniform(0.2, 0.8)
        off = rng.uniform(0, math.sqrt(a * (1 - a))) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        rho = np.diag([a, 0, 0, 1 - a]).astype(complex)
        rho[0, 3], rho[3, 0] = off, np.conj(off)
        assert concurrence(rho) == pytest.approx(2 * abs(off), abs=1e-10)


def test_concurrence_matches_hermitian_form():
    # sqrt(rho) rho_tilde sqrt(rho) route must give identical lambdas
    rng = np.random.default_rng(33)
    for rho in simulated_rhos(4, seed=5) + [random_x_state(rng) for _ in range(5)]:
        sq = scipy.linalg.sqrtm(rho)
        lam = np.sqrt(np.clip(np.linalg.eigvalsh(sq @ spin_flip(rho) @ sq), 0, None))
        lam = np.sort(lam)[::-1]
        c_herm = max(0.0, 2 * lam[0] - lam.sum())
        assert concurrence(rho) == pytest.approx(c_herm, abs=1e-8)


def test_eof_from_concurrence_values():
    assert eof_from_concurrence(0.0) == 0.0
    assert eof_from_concurrence(1.0) == pytest.approx(math.log(2), abs=1e-12)
    h09 = -0.9 * math.log(0.9) - 0.1 * math.log(0.1)
    assert eof_from_concurrence(0.6) == pytest.approx(h09, abs=1e-12)
    assert h09 == pytest.approx(0.3251, abs=1e-4)


def test_eof_from_concurrence_monotone():
    grid = np.linspace(0.0, 1.0, 1000)
    vals = [eof_from_concurrence(c) for c in grid]
    assert all(v2 >= v1 for v1, v2 in zip(vals, vals[1:]))


def test_separable_angles_have_zero_entanglement():
    for phi in (0.0, math.pi):
        p = ModelParams(phi=phi, alpha1=1.3, alpha2=1.3)
        rho = reduced_atomic_rho(assemble_state(p, 0.0, 1e-12))
        res = compute_measures(rho)
        assert res.eof_atom_field <= 1e-9
        assert res.eof_atom_atom <= 1e-9


def test_compute_measures_bounds_and_gap():
    for rho in simulated_rhos(6, seed=13):
        res = compute_measures(rho)
        assert 0.0 <= res.eof_atom_field <= math.log(4) + 1e-12
        assert 0.0 <= res.concurrence <= 1.0
        assert 0.0 <= res.eof_atom_atom <= math.log(2) + 1e-12
        assert res.consistency_gap <= 1e-8
        assert res.zeta[3] == 0.0
        assert res.zeta.min() >= -1e-10
        assert res.zeta.sum() == pytest.approx(1.0, abs=1e-10)
