"""Zero-temperature Metropolis generator, continuity/perturbation inequalities,
and the Laplace-transform/Herbst route to ground-space convergence.

The β→∞ limit of the Metropolis generator keeps only energy-lowering Bohr
components at rate ½ and the energy-conserving components at rate
½Erfc(1/(2√2)):

    L_∞(ρ) = ½ Σ_{a, ν<0} D[A^a_ν](ρ) + ½Erfc(1/(2√2)) Σ_a D[A^a_0](ρ),

with D[A](ρ) = AρA† − ½{A†A, ρ}.  Bohr components with ν = E_i − E_j < 0 map
level j down to level i (ascending energy ordering throughout), so the induced
classical chain on energy levels is absorbing toward the ground space.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .filters import ALPHA_00_INFINITE_BETA
from .lindblad import JumpSet, SuperOperator
from .norms import infty_to_infty_lower, one_to_one_lower, two_to_two
from .spectral import SpectralData, bohr_decompose, diagonalize

NU_ZERO_TOL = 1e-9


def zero_temp_generator(s: SpectralData, jumps: JumpSet) -> SuperOperator:
    """The β→∞ Metropolis generator for Hermitian jumps, in the site basis."""
    d = s.dim
    ident = np.eye(d, dtype=complex)
    S = np.zeros((d * d, d * d), dtype=complex)
    for label, A in jumps:
        if np.linalg.norm(A - A.conj().T, 2) > 1e-12:
            raise ValueError(f"jump {label} is not Hermitian")
        comps = bohr_decompose(A, s, label)
        for nu, A_nu in comps.components.items():
            if nu < -NU_ZERO_TOL:
                w = 0.5
            elif abs(nu) <= NU_ZERO_TOL:
                w = ALPHA_00_INFINITE_BETA
            else:
                continue
            S += w * np.kron(A_nu, A_nu.conj())
            AA = A_nu.conj().T @ A_nu
            S -= 0.5 * w * (np.kron(AA, ident) + np.kron(ident, AA.T))
    return SuperOperator(S, d)


@dataclass(frozen=True)
class LevelChain:
    """Exact restriction of L_∞ to level-block-diagonal states, plus the
    induced M×M population rate matrix for level-uniform inputs.

    The dynamics does not preserve uniformity within a level, so the faithful
    reduced object is the block-diagonal restriction (dimension Σ_i d_i²); the
    M×M rate matrix is reported with its conservation invariants but is only
    exact on level-uniform states at t=0.
    """

    spectral: SpectralData
    block_index: np.ndarray      # flattened (p,q) positions with equal levels
    matrix: np.ndarray           # restriction of L_∞ to the block subspace
    rate_matrix: np.ndarray      # (M, M), columns sum to zero

    def evolve_diagonal(self, rho: np.ndarray, t: float) -> np.ndarray:
        """Evolve a level-block-diagonal state; returns the full density matrix."""
        v = np.asarray(rho, dtype=complex).reshape(-1)[self.block_index]
        out = expm(t * self.matrix) @ v
        full = np.zeros(self.spectral.dim**2, dtype=complex)
        full[self.block_index] = out
        return full.reshape(self.spectral.dim, self.spectral.dim)

    def level_populations(self, rho: np.ndarray) -> np.ndarray:
        s = self.spectral
        return np.array([
            float(np.trace(s.projector(i) @ rho).real) for i in range(s.M)
        ])


def level_chain(s: SpectralData, jumps: JumpSet) -> LevelChain:
    """Build the block-diagonal fast path of L_∞ in the eigenbasis of H."""
    d = s.dim
    L = zero_temp_generator(s, jumps)
    V = s.eigvecs
    U = np.kron(V.conj().T, V.T)            # site basis → eigenbasis on vec
    L_eig = U @ L.matrix @ U.conj().T
    same = (s.level_of[:, None] == s.level_of[None, :]).reshape(-1)
    block_index = np.where(same)[0]
    block = L_eig[np.ix_(block_index, block_index)]
    # Leakage out of the block subspace must vanish identically.
    off = L_eig[np.ix_(np.where(~same)[0], block_index)]
    if off.size and np.linalg.norm(off) > 1e-10:
        raise RuntimeError("zero-temperature generator leaks off the level blocks")

    M = s.M
    dims = s.level_dims()
    R = np.zeros((M, M))
    for label, A in jumps:
        comps = bohr_decompose(A, s, label)
        for nu, A_nu in comps.components.items():
            if nu >= -NU_ZERO_TOL:
                continue
            for j in range(M):
                Pj = s.projector(j)
                for i in range(M):
                    if i == j:
                        continue
                    if abs((s.levels[i] - s.levels[j]) - nu) > NU_ZERO_TOL:
                        continue
                    Pi = s.projector(i)
                    R[i, j] += 0.5 * float(
                        np.trace(Pi @ A_nu @ Pj @ A_nu.conj().T).real
                    ) / dims[j]
    np.fill_diagonal(R, 0.0)
    R[np.diag_indices(M)] = -R.sum(axis=0)
    return LevelChain(spectral=s, block_index=block_index, matrix=block, rate_matrix=R)


def generator_distance(
    L1: SuperOperator, L2: SuperOperator, norm: str = "2→2", **kwargs
) -> tuple[float, str]:
    """Distance between generators; exact for 2→2, certified lower bound else."""
    diff = SuperOperator(L1.matrix - L2.matrix, L1.dim)
    if norm == "2→2":
        return two_to_two(diff), "exact singular value"
    if norm == "1→1":
        return one_to_one_lower(diff, **kwargs), "rank-one lower bound"
    if norm == "∞→∞":
        return infty_to_infty_lower(diff, **kwargs), "rank-one lower bound (dual)"
    raise ValueError(f"unknown norm {norm!r}")


def prop_c1_pointwise_bound(
    beta: float, nu1: float, nu2: float, delta_E: float
) -> tuple[str, float]:
    """Applicable proof bound for a Metropolis coefficient at (ν1, ν2):

    equal positive frequencies: α ≤ 2e^{−βΔ_E/2};
    equal negative frequencies (2βΔ_E > 1): |α − ½| ≤ (2βΔ_E/(2βΔ_E−1))e^{−βΔ_E/4};
    distinct frequencies: α ≤ e^{−β²(ν1−ν2)²/8}.
    Returns (which quantity is bounded, bound value).
    """
    if abs(nu1 - nu2) > NU_ZERO_TOL:
        return "alpha", float(np.exp(-(beta**2) * (nu1 - nu2) ** 2 / 8.0))
    if nu1 > NU_ZERO_TOL:
        return "alpha", float(2.0 * np.exp(-beta * delta_E / 2.0))
    if nu1 < -NU_ZERO_TOL:
        x = 2.0 * beta * delta_E
        if x <= 1.0:
            raise ValueError("bound requires 2βΔ_E > 1")
        return "alpha_minus_half", float(x / (x - 1.0) * np.exp(-beta * delta_E / 4.0))
    return "alpha_minus_limit", 0.0   # ν=0 coefficient is β-independent


def perturbation_bound_infinite(
    beta: float, m: int, M_norm: float, delta_E: float, delta_nu: float
) -> float:
    """RHS of the β→∞ continuity bound:
    3mM⁴ max{e^{−β²Δν²/8}, (4βΔ_E/(2βΔ_E−1))e^{−βΔ_E/4}}."""
    x = 2.0 * beta * delta_E
    if x <= 1.0:
        raise ValueError("bound requires 2βΔ_E > 1")
    return 3.0 * m * M_norm**4 * max(
        float(np.exp(-(beta**2) * delta_nu**2 / 8.0)),
        float(2.0 * x / (x - 1.0) * np.exp(-beta * delta_E / 4.0)),
    )


#: Constants in the Hamiltonian-perturbation bound, read from the proof's final
#: display chain (not stated numerically in the theorem).
PROP_C3_C1 = 1.0
PROP_C3_C2 = 4.0 * (1.0 + np.sqrt(np.pi) * np.exp(0.125) * 6.0 / 5.0)


def perturbation_bound_hamiltonian(
    m: int, beta: float, H0_norm: float, V_norm: float, eta_grid=None
) -> tuple[float, float]:
    """min over η of mβ(C1·η(‖H0‖+‖V‖) + C2‖V‖(1 + ln(1/η))); returns (bound, η*)."""
    if eta_grid is None:
        eta_grid = np.logspace(-8, 0, 81)
    vals = m * beta * (
        PROP_C3_C1 * eta_grid * (H0_norm + V_norm)
        + PROP_C3_C2 * V_norm * (1.0 + np.log(1.0 / eta_grid))
    )
    idx = int(np.argmin(vals))
    return float(vals[idx]), float(eta_grid[idx])


def laplace_transform(rho: np.ndarray, H: np.ndarray | SpectralData, theta: float) -> float:
    """tr(ρ e^{θH}), evaluated in the eigenbasis of H."""
    if theta < 0:
        raise ValueError("theta must be nonnegative")
    s = H if isinstance(H, SpectralData) else diagonalize(np.asarray(H))
    rho_eig = s.eigvecs.conj().T @ np.asarray(rho, dtype=complex) @ s.eigvecs
    return float(np.sum(np.diag(rho_eig).real * np.exp(theta * s.level_values)))


@dataclass(frozen=True)
class LaplaceCurve:
    theta: float
    times: np.ndarray
    values: np.ndarray           # 𝔏(θ, t)
    bound: np.ndarray
    ground_pops: np.ndarray      # tr(P_0 ρ_t)
    C: float
    delta_E: float
    H0_norm: float


def laplace_bound(
    theta: float, t, C: float, delta_E: float, H0_norm: float
):
    """Lemma bound 1 + exp(−(C/2)θΔ_E e^{−Δ_Eθ} t + θ‖H0‖)."""
    t = np.asarray(t, dtype=float)
    return 1.0 + np.exp(
        -(C / 2.0) * theta * delta_E * np.exp(-delta_E * theta) * t + theta * H0_norm
    )


def laplace_curve(
    H0: np.ndarray,
    jumps: JumpSet,
    theta: float,
    times,
    C: float,
    rho0: np.ndarray | None = None,
    dynamics: SuperOperator | None = None,
) -> LaplaceCurve:
    """𝔏(θ,t) = tr(e^{tL}(ρ0) e^{θH0}) with the Lemma's bound per sample time.

    Default dynamics is L_∞ evolved on the level-block-diagonal fast path;
    pass an explicit SuperOperator (e.g. a finite-β generator) to override.
    """
    if C <= 0:
        raise ValueError("Cheeger constant must be positive")
    s = diagonalize(np.asarray(H0))
    d = s.dim
    if rho0 is None:
        rho0 = np.eye(d, dtype=complex) / d
    times = np.asarray(times, dtype=float)
    H0_norm = float(np.max(np.abs(s.levels)))
    P0 = s.projector(0)

    values = np.empty(len(times))
    pops = np.empty(len(times))
    if dynamics is None:
        chain = level_chain(s, jumps)
        for idx, t in enumerate(times):
            rho_t = chain.evolve_diagonal(
                s.eigvecs.conj().T @ rho0 @ s.eigvecs, t
            )
            rho_site = s.eigvecs @ rho_t @ s.eigvecs.conj().T
            values[idx] = laplace_transform(rho_site, s, theta)
            pops[idx] = float(np.trace(P0 @ rho_site).real)
    else:
        for idx, t in enumerate(times):
            rho_t = dynamics.propagate(rho0, t)
            values[idx] = laplace_transform(rho_t, s, theta)
            pops[idx] = float(np.trace(P0 @ rho_t).real)

    bound = laplace_bound(theta, times, C, s.delta_E, H0_norm)
    return LaplaceCurve(
        theta=theta, times=times, values=values, bound=np.asarray(bound),
        ground_pops=pops, C=C, delta_E=float(s.delta_E), H0_norm=H0_norm,
    )


def herbst_overlap_bound(curve: LaplaceCurve, E1: float) -> np.ndarray:
    """Ground-space-leakage bound e^{−θE1}·𝔏(θ,t) per sample time."""
    if E1 <= 0:
        raise ValueError("E1 must be positive")
    return np.exp(-curve.theta * E1) * curve.values


@dataclass(frozen=True)
class OverlapCurve:
    """History-state overlap and clock-ground population under dissipative
    evolution of the maximally mixed state."""

    times: np.ndarray
    overlaps: np.ndarray         # ⟨η'|ρ_t|η'⟩
    ground_pops: np.ndarray      # tr(P_0(H_clock) ρ_t)
    herbst: np.ndarray           # e^{−θ}·tr(ρ_t e^{θ H_clock}) leakage bound
    theta: float
    beta: float
    lam: float


def ground_overlap_experiment(
    circuit, lam: float, beta: float, times, theta: float = 0.1,
    variant: str = "standard",
) -> OverlapCurve:
    """Evolve the maximally mixed state under the Metropolis generator of the
    circuit Hamiltonian H_clock + λ(H_in + H_prop) with the clock jump set,
    tracking ⟨η'|ρ_t|η'⟩ and the clock-ground population.

    The stationary overlap is set by βλ: for βλ ≪ 1 the thermal state is
    nearly uniform on the 2(T+1)-dimensional clock-ground block, capping the
    overlap near 1/(2(T+1)); concentration on the history state needs βλ ≳ 1.
    Propagation uses the Hermitian similarity transform of the generator.
    """
    from .clock import build_kitaev, clock_energies, clock_jump_set
    from .lindblad import assemble_lindbladian, gibbs_state
    from .operators import embed
    from .filters import FilterSpec
    from .tilde import tilde_transform

    n, T = circuit.n_qubits, circuit.T
    if n + T > 6:
        raise ValueError("full dynamics capped at n+T ≤ 6 qubits")
    times = np.asarray(times, dtype=float)
    bundle = build_kitaev(circuit, lam, variant)
    jumps = clock_jump_set(T, n)
    L = assemble_lindbladian(bundle.H, jumps, FilterSpec("metropolis", beta))
    sigma = gibbs_state(bundle.H, beta)
    tg = tilde_transform(L, sigma, beta)
    vals, vecs = tg.eigensystem()
    w, V = np.linalg.eigh(sigma)
    q = w**0.25
    s_quarter = (V * q) @ V.conj().T
    s_mquarter = (V / q) @ V.conj().T

    d = 2 ** (n + T)
    rho0 = np.eye(d, dtype=complex) / d
    coeffs = vecs.conj().T @ (s_mquarter @ rho0 @ s_mquarter).reshape(-1)

    clock_E = clock_energies(T)
    P0_clock = np.diag((clock_E == 0).astype(complex))
    P0 = embed(P0_clock, tuple(range(n, n + T)), n + T)
    H_clock = bundle.H_clock

    overlaps = np.empty(len(times))
    pops = np.empty(len(times))
    herbst = np.empty(len(times))
    for idx, t in enumerate(times):
        xt = vecs @ (np.exp(vals * t) * coeffs)
        rho_t = s_quarter @ xt.reshape(d, d) @ s_quarter
        overlaps[idx] = float(np.vdot(bundle.eta_prime, rho_t @ bundle.eta_prime).real)
        pops[idx] = float(np.trace(P0 @ rho_t).real)
        herbst[idx] = float(np.exp(-theta) * laplace_transform(rho_t, H_clock, theta))
    return OverlapCurve(
        times=times, overlaps=overlaps, ground_pops=pops, herbst=herbst,
        theta=theta, beta=beta, lam=lam,
    )
