"""Hermitian parent-Hamiltonian form of KMS-symmetric generators, gaps,
mixing curves, and quasi-locality via telescopic ball increments.

The tilde map sends a Schrödinger-picture generator L with fixed point σ to

    L̃(X) = σ^{−1/4} L(σ^{1/4} X σ^{1/4}) σ^{−1/4},

which is Hermitian for the HS inner product when L is KMS-symmetric, has the
same spectrum as L, and annihilates vec(√σ).  −L̃ is a parent Hamiltonian on
the doubled space whose spectral gap governs mixing.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gamma as gamma_fn

import numpy as np

from .filters import DEPOLARIZING_LAMBDA, FilterSpec
from .lindblad import JumpSet, SuperOperator, assemble_lindbladian, gibbs_state, single_site_pauli_jumps
from .operators import InteractionList, build_hamiltonian, embed, lieb_robinson_velocity, restrict_to_ball
from .spectral import diagonalize

HERMITICITY_REL_TOL = 1e-10
KERNEL_RESIDUAL_TOL = 1e-8
SPECTRUM_POSITIVE_TOL = 1e-9
GAP_KERNEL_THRESHOLD = 1e-7


@dataclass(frozen=True)
class TildeGenerator:
    """Hermitian vectorized form of a generator, with its kernel vector."""

    matrix: np.ndarray          # (dim², dim²) Hermitian, spectrum ≤ 0
    kernel_vector: np.ndarray   # vec(√σ), unit norm
    beta: float
    dim: int

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        herm = np.linalg.norm(m - m.conj().T) / max(np.linalg.norm(m), 1e-300)
        if herm > HERMITICITY_REL_TOL:
            raise ValueError(f"tilde matrix not Hermitian: relative defect {herm:.3e}")
        if np.linalg.norm(m @ self.kernel_vector) > KERNEL_RESIDUAL_TOL:
            raise ValueError("kernel vector is not annihilated")
        object.__setattr__(self, "matrix", m)

    def eigensystem(self) -> tuple[np.ndarray, np.ndarray]:
        vals, vecs = np.linalg.eigh(self.matrix)
        if vals[-1] > SPECTRUM_POSITIVE_TOL:
            raise ValueError(f"tilde spectrum has positive eigenvalue {vals[-1]:.3e}")
        return vals, vecs


def tilde_transform(L: SuperOperator, sigma: np.ndarray, beta: float = np.nan) -> TildeGenerator:
    """Conjugate L by σ^{±1/4} into its Hermitian parent-Hamiltonian form."""
    sigma = np.asarray(sigma, dtype=complex)
    w, V = np.linalg.eigh(sigma)
    if w.min() <= 0:
        raise ValueError("sigma is not positive definite")
    q = w**0.25
    s_quarter = (V * q) @ V.conj().T
    s_mquarter = (V / q) @ V.conj().T
    left = np.kron(s_mquarter, s_mquarter.T)
    right = np.kron(s_quarter, s_quarter.T)
    M = left @ L.matrix @ right
    M = (M + M.conj().T) / 2.0
    sqrt_sigma = (V * np.sqrt(w)) @ V.conj().T
    kv = sqrt_sigma.reshape(-1)
    kv = kv / np.linalg.norm(kv)
    return TildeGenerator(matrix=M, kernel_vector=kv, beta=beta, dim=L.dim)


def spectral_gap(T: TildeGenerator) -> tuple[float, int]:
    """Smallest nonzero eigenvalue of −L̃ and the kernel dimension.

    Eigenvalues within GAP_KERNEL_THRESHOLD of zero count as kernel; the gap is
    measured above the full kernel.
    """
    vals, _ = T.eigensystem()
    kernel_dim = int(np.sum(vals > -GAP_KERNEL_THRESHOLD))
    nonzero = vals[vals <= -GAP_KERNEL_THRESHOLD]
    if len(nonzero) == 0:
        return 0.0, kernel_dim
    return float(-nonzero.max()), kernel_dim


def mixing_curve(
    L: SuperOperator, sigma: np.ndarray, rho0: np.ndarray, times
) -> np.ndarray:
    """‖e^{tL}(ρ0) − σ‖_1 per t, propagated in the Hermitian L̃ eigenbasis."""
    times = np.asarray(times, dtype=float)
    T = tilde_transform(L, sigma)
    vals, vecs = T.eigensystem()
    sigma = np.asarray(sigma, dtype=complex)
    w, V = np.linalg.eigh(sigma)
    q = w**0.25
    s_quarter = (V * q) @ V.conj().T
    s_mquarter = (V / q) @ V.conj().T
    x0 = (s_mquarter @ rho0 @ s_mquarter).reshape(-1)
    coeffs = vecs.conj().T @ x0
    out = np.empty(len(times))
    for idx, t in enumerate(times):
        xt = vecs @ (np.exp(vals * t) * coeffs)
        rho_t = s_quarter @ xt.reshape(L.dim, L.dim) @ s_quarter
        out[idx] = np.linalg.norm(rho_t - sigma, "nuc")
    return out


def _ball_tilde(
    spec: InteractionList, site: int, jump: np.ndarray, beta: float,
    radius: int, filt_variant: str
) -> TildeGenerator:
    """L̃^{a,α}_{β,r}: generator of the single jump α at site a, dressed and
    modular-weighted by the ball-restricted Hamiltonian H_{B_a(r)}."""
    sub = restrict_to_ball(spec, site, radius)
    H = build_hamiltonian(sub)
    jumps = JumpSet(("a",), (jump,))
    L = assemble_lindbladian(H, jumps, FilterSpec(filt_variant, beta))
    sigma = gibbs_state(H, beta)
    return tilde_transform(L, sigma, beta)


@dataclass(frozen=True)
class TelescopicReport:
    site: int
    jump_label: str
    beta: float
    radii: tuple[int, ...]
    measured: tuple[float, ...]      # ‖E_{β,r}‖_{2→2}
    bound: tuple[float, ...]
    J: float
    bound_vacuous: bool              # βJ ≥ 4: decay factor not < 1


def telescopic_bound(beta: float, J: float, r: int) -> float:
    """Closed-form decay bound 4e^{3π²/4}(βJ/4)^r + (√3βJ/4)^r/Γ(1+r/2)."""
    x = beta * J / 4.0
    return 4.0 * np.exp(3.0 * np.pi**2 / 4.0) * x**r \
        + (np.sqrt(3.0) * x) ** r / gamma_fn(1.0 + r / 2.0)


def telescopic_norms(
    spec: InteractionList,
    site: int,
    jump: np.ndarray,
    beta: float,
    r_max: int,
    jump_label: str = "a",
    filt_variant: str = "gaussian",
) -> TelescopicReport:
    """Measured vs bounded norms of the ball increments E_{β,r} = L̃_{β,r+1} − L̃_{β,r}."""
    diameter = spec.n_sites - 1
    if r_max > diameter:
        raise ValueError("r_max exceeds the chain diameter")
    J, _ = lieb_robinson_velocity(spec)
    tildes = [
        _ball_tilde(spec, site, jump, beta, r, filt_variant)
        for r in range(r_max + 2)
    ]
    measured = []
    bound = []
    for r in range(r_max + 1):
        E = tildes[r + 1].matrix - tildes[r].matrix
        measured.append(float(np.linalg.norm(E, 2)))
        bound.append(telescopic_bound(beta, J, r))
    return TelescopicReport(
        site=site, jump_label=jump_label, beta=beta,
        radii=tuple(range(r_max + 1)), measured=tuple(measured),
        bound=tuple(bound), J=J, bound_vacuous=(beta * J >= 4.0),
    )


def increment_support_defect(
    spec: InteractionList, site: int, jump: np.ndarray, beta: float, radius: int,
    probe: np.ndarray, probe_site: int, filt_variant: str = "gaussian",
) -> float:
    """‖[E_{β,r}(ρ), O] residual‖ for a probe operator outside B_a(r+1).

    Operationally: apply E = L̃_{r+1} − L̃_{r} to random inputs and measure how
    far its output-commutes with conjugation by a unitary supported outside the
    ball; returns ‖E∘Ad_U − Ad_U∘E‖_F with U = e^{iO} embedded at probe_site.
    """
    if abs(probe_site - site) <= radius + 1:
        raise ValueError("probe must lie outside the radius-(r+1) ball")
    Ta = _ball_tilde(spec, site, jump, beta, radius, filt_variant)
    Tb = _ball_tilde(spec, site, jump, beta, radius + 1, filt_variant)
    E = Tb.matrix - Ta.matrix
    w, V = np.linalg.eigh(np.asarray(probe, dtype=complex))
    U_small = (V * np.exp(1j * w)) @ V.conj().T
    U = embed(U_small, (probe_site,), spec.n_sites)
    AdU = np.kron(U, U.conj())
    return float(np.linalg.norm(E @ AdU - AdU @ E))


def depolarizing_distance(
    spec: InteractionList, beta: float, filt_variant: str = "gaussian"
) -> tuple[float, float]:
    """(max per-(site, jump) ‖L̃_{β,0} − L̃_{0,0}‖_{2→2}, closed-form bound).

    Radius-0 ball generator of each single Pauli jump at each site, compared
    against its β=0 depolarizing limit; the closed-form bound
    √π(e^{β²h²}−1) + (e^{(3/4)β²h²}−1)/(√2 e^{1/4}) (h = largest term norm)
    controls each individual jump contribution, so the comparison is per jump.
    """
    h = spec.h
    worst = 0.0
    pauli_jumps = single_site_pauli_jumps(spec.n_sites)
    for site in range(spec.n_sites):
        sub = restrict_to_ball(spec, site, 0)
        H = build_hamiltonian(sub)
        sigma = gibbs_state(H, beta)
        for label, mat in pauli_jumps:
            if label[1:] != str(site):
                continue
            jumps = JumpSet((label,), (mat,))
            L_beta = assemble_lindbladian(H, jumps, FilterSpec(filt_variant, beta))
            T_beta = tilde_transform(L_beta, sigma, beta)
            L_zero = assemble_lindbladian(
                np.zeros_like(H), jumps, FilterSpec(filt_variant, 0.0)
            )
            worst = max(worst, float(np.linalg.norm(T_beta.matrix - L_zero.matrix, 2)))
    bound = np.sqrt(np.pi) * (np.exp(beta**2 * h**2) - 1.0) + (
        np.exp(0.75 * beta**2 * h**2) - 1.0
    ) * (-DEPOLARIZING_LAMBDA)
    return worst, float(bound)
