import numpy as np
import pytest

from glsim.filters import DEPOLARIZING_LAMBDA, FilterSpec
from glsim.lindblad import (
    JumpSet, SuperOperator, assemble_lindbladian, assemble_lindbladian_reference,
    gibbs_state, left_mul, right_mul, single_site_pauli_jumps,
    stationarity_defect,
)
from glsim.operators import (
    PAULI_X, PAULI_Z, build_hamiltonian, random_local_chain, tfim_chain,
)


def _tfim_setup(n, beta, variant="gaussian"):
    H = build_hamiltonian(tfim_chain(n))
    jumps = single_site_pauli_jumps(n)
    L = assemble_lindbladian(H, jumps, FilterSpec(variant, beta))
    return H, L


def test_vectorization_convention():
    rho = np.arange(4, dtype=complex).reshape(2, 2)
    X = np.array([[0, 1], [2, 0]], dtype=complex)
    Y = np.array([[1, 3], [0, 2]], dtype=complex)
    lhs = (left_mul(X) @ right_mul(Y) @ rho.reshape(-1)).reshape(2, 2)
    assert np.allclose(lhs, X @ rho @ Y)


def test_gibbs_state_two_level_closed_form():
    sigma = gibbs_state(PAULI_Z, 1.0)
    Z = np.exp(1.0) + np.exp(-1.0)
    assert np.allclose(sigma, np.diag([np.exp(-1.0), np.exp(1.0)]) / Z)


def test_gibbs_state_large_beta_does_not_overflow():
    sigma = gibbs_state(100.0 * PAULI_Z, 50.0)
    assert np.isfinite(sigma).all()
    assert np.trace(sigma).real == pytest.approx(1.0)
    assert sigma[1, 1].real == pytest.approx(1.0, abs=1e-300)


@pytest.mark.parametrize("variant", ["gaussian", "metropolis"])
def test_fast_assembly_matches_bohr_reference(variant):
    H, _ = _tfim_setup(2, 0.4)
    jumps = single_site_pauli_jumps(2)
    fast = assemble_lindbladian(H, jumps, FilterSpec(variant, 0.4))
    slow = assemble_lindbladian_reference(H, jumps, FilterSpec(variant, 0.4))
    assert np.linalg.norm(fast.matrix - slow.matrix) < 1e-10


@pytest.mark.parametrize("variant", ["gaussian", "metropolis"])
@pytest.mark.parametrize("beta", [0.1, 1.0])
def test_gibbs_state_is_stationary(variant, beta):
    H, L = _tfim_setup(2, beta, variant)
    sigma = gibbs_state(H, beta)
    assert stationarity_defect(L, sigma) < 1e-10


def test_wrong_coherent_sign_breaks_stationarity():
    # Flipping the sign of the coherent weight must visibly break the fixed
    # point; guards against a silent sign regression in assembly.
    H = build_hamiltonian(tfim_chain(2))
    jumps = single_site_pauli_jumps(2)
    filt = FilterSpec("gaussian", 0.4)
    L = assemble_lindbladian(H, jumps, filt)
    sigma = gibbs_state(H, 0.4)
    dim = L.dim
    # Reference assembly with b → −b.
    from glsim.spectral import bohr_decompose, diagonalize
    from glsim.filters import coefficient_fn
    s = diagonalize(H)
    cfun = coefficient_fn(filt)
    S = np.zeros((dim * dim, dim * dim), dtype=complex)
    ident = np.eye(dim, dtype=complex)
    for label, A in jumps:
        comps = bohr_decompose(A, s, label)
        B = np.zeros((dim, dim), dtype=complex)
        Theta = np.zeros((dim, dim), dtype=complex)
        for nu1, A1 in comps.components.items():
            for nu2, A2 in comps.components.items():
                c = complex(cfun(nu1, nu2))
                b = -np.tanh(-0.4 * (nu1 - nu2) / 4.0) / 2j * c
                S += c * np.kron(A1, A2.conj())
                Theta += c * (A2.conj().T @ A1)
                B += b * (A2.conj().T @ A1)
        S -= 0.5 * (np.kron(Theta, ident) + np.kron(ident, Theta.T))
        S += -1j * (np.kron(B, ident) - np.kron(ident, B.T))
    flipped = SuperOperator(0.25 * S, dim)
    assert stationarity_defect(flipped, sigma) > 1e-3
    assert stationarity_defect(L, sigma) < 1e-10


@pytest.mark.parametrize("variant", ["gaussian", "metropolis"])
def test_semigroup_is_cptp(variant):
    H, L = _tfim_setup(2, 0.7, variant)
    d = L.dim
    from scipy.linalg import expm
    E = expm(1.0 * L.matrix)
    # Trace preservation: tr(Φ(ρ)) = tr(ρ) for a basis of inputs.
    for k in range(d * d):
        rho = np.zeros(d * d, dtype=complex)
        rho[k] = 1.0
        out = (E @ rho).reshape(d, d)
        assert np.trace(out) == pytest.approx(rho.reshape(d, d).trace(), abs=1e-10)
    # Complete positivity: the Choi matrix C[(i,k),(j,l)] = Φ(|i⟩⟨j|)[k,l] ≥ 0.
    choi = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            unit = np.zeros((d, d), dtype=complex)
            unit[i, j] = 1.0
            out = (E @ unit.reshape(-1)).reshape(d, d)
            for k in range(d):
                for l in range(d):
                    choi[i * d + k, j * d + l] = out[k, l]
    w = np.linalg.eigvalsh((choi + choi.conj().T) / 2)
    assert w.min() > -1e-10


def test_adjoint_is_unital():
    # L†(I) = 0: the Heisenberg generator annihilates the identity.
    H, L = _tfim_setup(2, 0.5)
    ident = np.eye(L.dim, dtype=complex)
    assert np.linalg.norm(L.adjoint().apply(ident)) < 1e-10


def test_beta_zero_single_site_is_depolarizing():
    # One site, no Hamiltonian: L = λ(X − tr_a(X)⊗I/2) with λ = −1/(√2e^{1/4}).
    jumps = single_site_pauli_jumps(1)
    L = assemble_lindbladian(np.zeros((2, 2)), jumps, FilterSpec("gaussian", 0.0))
    lam = DEPOLARIZING_LAMBDA
    expected = np.zeros((4, 4), dtype=complex)
    for k in range(4):
        rho = np.zeros((2, 2), dtype=complex)
        rho[divmod(k, 2)] = 1.0
        dep = lam * (rho - np.trace(rho) * np.eye(2) / 2.0)
        expected[:, k] = dep.reshape(-1)
    assert np.linalg.norm(L.matrix - expected) < 1e-12


def test_random_chain_stationarity():
    rng = np.random.default_rng(11)
    spec = random_local_chain(3, rng)
    H = build_hamiltonian(spec)
    L = assemble_lindbladian(H, single_site_pauli_jumps(3), FilterSpec("gaussian", 0.5))
    assert stationarity_defect(L, gibbs_state(H, 0.5)) < 1e-10


def test_superoperator_save_load_roundtrip(tmp_path):
    _, L = _tfim_setup(2, 0.3)
    path = tmp_path / "gen.npz"
    L.save(path)
    loaded = SuperOperator.load(path)
    assert loaded.dim == L.dim
    assert np.array_equal(loaded.matrix, L.matrix)


def test_superoperator_load_rejects_unknown_convention(tmp_path):
    path = tmp_path / "bad.npz"
    np.savez_compressed(path, matrix=np.eye(4, dtype=complex), dim=2,
                        convention=np.array("column-major"))
    with pytest.raises(ValueError):
        SuperOperator.load(path)


def test_jump_set_validation():
    with pytest.raises(ValueError):
        JumpSet(("a",), (PAULI_X, PAULI_Z))
    js = single_site_pauli_jumps(2)
    assert len(js) == 6
    assert js.labels[0] == "X0"
