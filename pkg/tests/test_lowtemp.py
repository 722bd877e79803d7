import numpy as np
import pytest

from glsim.clock import Gate, QuantumCircuit, build_clock, clock_jump_set
from glsim.filters import ALPHA_00_INFINITE_BETA, FilterSpec
from glsim.lindblad import assemble_lindbladian
from glsim.lowtemp import (
    PROP_C3_C2, ground_overlap_experiment, herbst_overlap_bound, laplace_bound,
    laplace_curve, laplace_transform, level_chain, generator_distance,
    perturbation_bound_hamiltonian, perturbation_bound_infinite,
    prop_c1_pointwise_bound, zero_temp_generator,
)
from glsim.operators import PAULI_X
from glsim.spectral import diagonalize


def _clock_setup(T=4):
    H = build_clock(T)
    return diagonalize(H), clock_jump_set(T)


def test_zero_temp_generator_preserves_trace_and_positivity():
    s, jumps = _clock_setup()
    L = zero_temp_generator(s, jumps)
    from scipy.linalg import expm
    E = expm(2.0 * L.matrix)
    d = s.dim
    rng = np.random.default_rng(2)
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    out = (E @ rho.reshape(-1)).reshape(d, d)
    assert np.trace(out).real == pytest.approx(1.0, abs=1e-9)
    assert np.linalg.eigvalsh((out + out.conj().T) / 2).min() > -1e-9


def test_zero_temp_generator_rejects_non_hermitian_jump():
    s, _ = _clock_setup()
    from glsim.lindblad import JumpSet
    bad = np.zeros((16, 16), dtype=complex)
    bad[0, 1] = 1.0
    with pytest.raises(ValueError):
        zero_temp_generator(s, JumpSet(("raise",), (bad,)))


def test_ground_space_is_absorbing():
    # Populations never leave the clock ground level under L_∞.
    s, jumps = _clock_setup()
    chain = level_chain(s, jumps)
    d = s.dim
    rho0 = s.eigvecs.conj().T @ (np.eye(d) / d) @ s.eigvecs
    pops = [chain.level_populations(
        s.eigvecs @ chain.evolve_diagonal(rho0, t) @ s.eigvecs.conj().T)
        for t in (0.0, 1.0, 5.0, 50.0)]
    ground = [p[0] for p in pops]
    assert all(b >= a - 1e-10 for a, b in zip(ground, ground[1:]))
    assert ground[-1] == pytest.approx(1.0, abs=1e-6)


def test_level_chain_matches_full_dynamics():
    s, jumps = _clock_setup()
    L = zero_temp_generator(s, jumps)
    chain = level_chain(s, jumps)
    d = s.dim
    rho0 = np.eye(d, dtype=complex) / d
    t = 3.0
    full = L.propagate(rho0, t)
    rho0_eig = s.eigvecs.conj().T @ rho0 @ s.eigvecs
    fast = s.eigvecs @ chain.evolve_diagonal(rho0_eig, t) @ s.eigvecs.conj().T
    assert np.linalg.norm(full - fast) < 1e-12


def test_rate_matrix_invariants():
    s, jumps = _clock_setup()
    R = level_chain(s, jumps).rate_matrix
    assert np.allclose(R.sum(axis=0), 0.0, atol=1e-12)   # probability conserved
    off = R - np.diag(np.diag(R))
    assert off.min() >= 0                                 # transition rates ≥ 0
    assert np.all(np.triu(off, 1) >= 0) and np.allclose(np.tril(off, -1), 0.0)
    # Strictly lower-triangular structure: only downhill transitions.


def test_prop_c1_pointwise_bounds_over_clock_bohr_set():
    s, _ = _clock_setup()
    from glsim.filters import metropolis_alpha
    for beta in (1.0, 10.0, 100.0):
        sigma = 1.0 / beta
        for nu1 in s.bohr_set:
            for nu2 in s.bohr_set:
                alpha = float(metropolis_alpha(beta, sigma, nu1, nu2))
                kind, bound = prop_c1_pointwise_bound(beta, nu1, nu2, s.delta_E)
                if kind == "alpha":
                    assert alpha <= bound + 1e-12
                elif kind == "alpha_minus_half":
                    assert abs(alpha - 0.5) <= bound + 1e-12
                else:
                    assert alpha == pytest.approx(ALPHA_00_INFINITE_BETA, abs=1e-12)


def test_prop_c1_requires_resolvable_gap():
    with pytest.raises(ValueError):
        prop_c1_pointwise_bound(0.1, -1.0, -1.0, 1.0)     # 2βΔ_E ≤ 1


@pytest.mark.parametrize("beta", [5.0, 10.0, 20.0])
def test_beta_infinity_continuity_bound(beta):
    s, jumps = _clock_setup()
    Linf = zero_temp_generator(s, jumps)
    Lb = assemble_lindbladian(build_clock(4), jumps, FilterSpec("metropolis", beta))
    lower, method = generator_distance(Linf, Lb, "1→1", restarts=40, seed=3)
    rhs = perturbation_bound_infinite(beta, len(jumps), 1.0, s.delta_E, s.delta_nu)
    assert method == "rank-one lower bound"
    assert lower <= rhs
    assert lower >= 0


def test_continuity_bound_decreases_with_beta():
    s, _ = _clock_setup()
    vals = [perturbation_bound_infinite(b, 7, 1.0, s.delta_E, s.delta_nu)
            for b in (5.0, 10.0, 20.0)]
    assert vals[0] > vals[1] > vals[2]


def test_hamiltonian_perturbation_bound_properties():
    bound, eta = perturbation_bound_hamiltonian(3, 2.0, 4.0, 0.1)
    assert bound > 0 and 0 < eta <= 1
    # Linear in the perturbation scale to leading order: doubling ‖V‖ with the
    # log term dominating roughly doubles the bound.
    bound2, _ = perturbation_bound_hamiltonian(3, 2.0, 4.0, 0.2)
    assert bound < bound2 <= 2.5 * bound
    assert PROP_C3_C2 == pytest.approx(4.0 * (1.0 + np.sqrt(np.pi) * np.exp(0.125) * 1.2))


def test_laplace_transform_of_ground_state_is_one():
    H = build_clock(4)
    d = 16
    rho = np.zeros((d, d), dtype=complex)
    rho[d - 1, d - 1] = 1.0        # |1111⟩: a zero-energy clock string
    assert laplace_transform(rho, H, 0.3) == pytest.approx(1.0)


def test_laplace_curve_within_bound_and_herbst_dominates_leakage():
    H = build_clock(4)
    jumps = clock_jump_set(4)
    times = [0.0, 10.0, 100.0, 1000.0]
    C = min(1.0, 6.0 / 9.0)
    curve = laplace_curve(H, jumps, 0.1, times, C)
    assert np.all(curve.values <= curve.bound + 1e-9)
    herbst = herbst_overlap_bound(curve, E1=1.0)
    leakage = 1.0 - curve.ground_pops
    assert np.all(leakage <= herbst + 1e-9)
    # The bound decays toward 1 and the Laplace transform itself approaches 1.
    assert curve.values[-1] == pytest.approx(1.0, abs=1e-9)
    assert curve.bound[-1] < curve.bound[0]


def test_laplace_bound_monotone_in_time():
    t = np.array([0.0, 1.0, 10.0, 100.0])
    b = laplace_bound(0.1, t, 0.5, 1.0, 2.0)
    assert np.all(np.diff(b) < 0)
    assert b[-1] > 1.0


def test_ground_overlap_experiment_initial_values():
    eye = np.eye(2, dtype=complex)
    circ = QuantumCircuit(1, (Gate((0,), PAULI_X),) + (Gate((0,), eye),) * 3)
    curve = ground_overlap_experiment(circ, 1e-3, 20.0, [0.0])
    assert curve.overlaps[0] == pytest.approx(2.0**-5, abs=1e-8)
    assert curve.ground_pops[0] == pytest.approx(10.0 / 32.0, abs=1e-8)
    assert curve.herbst[0] >= 1.0 - curve.ground_pops[0]


def test_ground_overlap_experiment_size_cap():
    eye = np.eye(2, dtype=complex)
    circ = QuantumCircuit(3, tuple(Gate((q % 3,), eye) for q in range(4)))
    with pytest.raises(ValueError):
        ground_overlap_experiment(circ, 1e-3, 20.0, [0.0])
