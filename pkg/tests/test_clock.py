from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from glsim.clock import (
    Gate, QuantumCircuit, build_clock, build_kitaev, cheeger_constant,
    clock_energies, clock_energy, clock_jump_set, clock_state_index,
    history_overlap, history_states, kernel_projectors, level_dimension_formula,
    level_dimensions, measure_ff_terms, measure_ff_terms_sampled,
    verify_move_lemma,
)
from glsim.operators import PAULI_X


def _random_circuit(n, T, rng):
    gates = []
    for _ in range(T):
        k = 1 if n == 1 else int(rng.integers(1, 3))
        g = rng.normal(size=(2**k, 2**k)) + 1j * rng.normal(size=(2**k, 2**k))
        U, _ = np.linalg.qr(g)
        if k == 1:
            targets = (int(rng.integers(n)),)
        else:
            q = int(rng.integers(n - 1))
            targets = (q, q + 1)
        gates.append(Gate(targets, U))
    return QuantumCircuit(n, tuple(gates))


def _single_x_circuit(T):
    eye = np.eye(2, dtype=complex)
    return QuantumCircuit(1, (Gate((0,), PAULI_X),) + (Gate((0,), eye),) * (T - 1))


def test_clock_energy_counts_01_substrings():
    # String "0101" (read MSB first) has two "01" substrings.
    assert clock_energy(0b0101, 4) == 2
    assert clock_energy(0b1100, 4) == 0
    assert clock_energy(0b0011, 4) == 1


def test_clock_energies_match_string_oracle():
    T = 6
    E = clock_energies(T)
    for x in range(2**T):
        s = format(x, f"0{T}b")
        assert E[x] == s.count("01")


@pytest.mark.parametrize("T", range(4, 15))
def test_level_dimensions_closed_form(T):
    dims = level_dimensions(T)
    for i, d in enumerate(dims):
        assert int(d) == level_dimension_formula(T, i) == comb(T + 1, 2 * i + 1)
    assert int(dims.sum()) == 2**T


def test_unary_states_are_exactly_the_ground_level():
    T = 5
    E = clock_energies(T)
    unary = {clock_state_index(t, T) for t in range(T + 1)}
    assert unary == set(np.where(E == 0)[0])


def test_build_clock_is_diagonal_with_unary_kernel():
    T = 4
    H = build_clock(T)
    assert np.allclose(H, np.diag(np.diag(H)))
    for t in range(T + 1):
        idx = clock_state_index(t, T)
        assert H[idx, idx] == 0


@pytest.mark.parametrize("T", [4, 8, 12])
def test_move_lemma_exhaustive(T):
    rep = verify_move_lemma(T)
    assert rep.passed
    assert rep.checked == 2**T


@pytest.mark.parametrize("T,expected_C", [(4, 2.1), (8, 1.25), (12, 0.885)])
def test_cheeger_constant_frozen_values(T, expected_C):
    rep = cheeger_constant(T)
    assert rep.C == pytest.approx(expected_C, rel=1e-3)
    assert rep.C >= rep.lower_bound


def test_history_state_is_ground_state_standard():
    rng = np.random.default_rng(0)
    circ = _random_circuit(2, 3, rng)
    bundle = build_kitaev(circ, 0.5, "standard")
    # |η⟩ is annihilated by H_in and lies in the clock ground level.
    assert np.linalg.norm(bundle.H_in @ bundle.eta) < 1e-9
    assert np.linalg.norm(bundle.H_clock @ bundle.eta) < 1e-9


@settings(max_examples=10, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10_000))
def test_ff_terms_annihilate_history_state(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 3))
    T = int(rng.integers(2, 7 - n))
    circ = _random_circuit(n, T, rng)
    bundle = build_kitaev(circ, 1.0, "frustration_free")
    for term in bundle.ff_terms:
        assert np.linalg.norm(term @ bundle.eta) < 1e-9
        w = np.linalg.eigvalsh(term)
        assert w.min() > -1e-10          # every term is positive semidefinite


def test_history_overlap_dephased_equality():
    for T in (2, 3, 4):
        circ = _single_x_circuit(T)
        bundle = build_kitaev(circ, 1.0, "standard")
        coherent, dephased = history_overlap(bundle)
        assert dephased == pytest.approx(1.0 / (T + 1), abs=1e-12)
        assert coherent >= 1.0 / (T + 1) - 1e-12


def test_history_states_normalized():
    eta, eta_p = history_states(_single_x_circuit(4))
    assert np.linalg.norm(eta) == pytest.approx(1.0, abs=1e-12)
    assert np.linalg.norm(eta_p) == pytest.approx(1.0, abs=1e-12)


def test_measurement_accepts_history_state_with_certainty():
    bundle = build_kitaev(_single_x_circuit(3), 1.0, "frustration_free")
    rho = np.outer(bundle.eta, bundle.eta.conj())
    prob, post = measure_ff_terms(rho, bundle)
    assert prob == pytest.approx(1.0, abs=1e-12)
    assert abs(np.vdot(bundle.eta, post @ bundle.eta)) == pytest.approx(1.0, abs=1e-10)


def test_measurement_acceptance_equals_eta_overlap():
    rng = np.random.default_rng(4)
    bundle = build_kitaev(_single_x_circuit(3), 1.0, "frustration_free")
    d = 2**4
    for _ in range(3):
        g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        rho = g @ g.conj().T
        rho /= np.trace(rho).real
        prob, post = measure_ff_terms(rho, bundle)
        target = float(np.vdot(bundle.eta, rho @ bundle.eta).real)
        assert prob == pytest.approx(target, abs=1e-10)
        assert abs(np.vdot(bundle.eta, post @ bundle.eta)) == pytest.approx(1.0, abs=1e-8)


def test_measurement_on_maximally_mixed():
    bundle = build_kitaev(_single_x_circuit(3), 1.0, "frustration_free")
    d = 2**4
    prob, _ = measure_ff_terms(np.eye(d) / d, bundle)
    assert prob == pytest.approx(1.0 / d, abs=1e-10)


def test_sampled_measurement_matches_probability():
    bundle = build_kitaev(_single_x_circuit(3), 1.0, "frustration_free")
    d = 2**4
    accepts, shots = measure_ff_terms_sampled(np.eye(d) / d, bundle, shots=20_000, seed=1)
    assert accepts / shots == pytest.approx(1.0 / d, abs=0.01)
    again, _ = measure_ff_terms_sampled(np.eye(d) / d, bundle, shots=20_000, seed=1)
    assert again == accepts


def test_kernel_projectors_require_ff_variant():
    bundle = build_kitaev(_single_x_circuit(3), 1.0, "standard")
    with pytest.raises(ValueError):
        kernel_projectors(bundle)


def test_clock_jump_set_size_and_labels():
    js = clock_jump_set(4, n=1)
    assert len(js) == 7
    assert js.labels[0] == "X1" and js.labels[-1] == "X3X4"
    for _, A in js:
        assert np.allclose(A, A.conj().T)
        assert A.shape == (32, 32)


def test_gate_validation():
    with pytest.raises(ValueError):
        Gate((0,), np.array([[1.0, 1.0], [0.0, 1.0]]))   # not unitary
    with pytest.raises(ValueError):
        Gate((0, 2), np.eye(4))                          # non-adjacent targets


def test_circuit_snapshots_single_x():
    snaps = _single_x_circuit(2).snapshots()
    assert np.allclose(snaps[0], [1, 0])
    assert np.allclose(snaps[1], [0, 1])
    assert np.allclose(snaps[2], [0, 1])
