"""Assembly of Gibbs-sampler Lindbladians as dense superoperators.

Vectorization convention (fixed package-wide): row-major stacking,
vec(ρ) = ρ.reshape(-1), so vec(XρY) = (X ⊗ Yᵀ)vec(ρ) and the Hilbert–Schmidt
adjoint of a superoperator is the conjugate transpose of its matrix.

The generator for a Hamiltonian H, jump set {A^a} and filter with dissipative
weight c(ν1,ν2) and coherent weight b(ν1,ν2) is

    L(ρ) = r·Σ_a [ −i[B^a,ρ] + Σ_{ν1,ν2} c(ν1,ν2)(A^a_{ν1} ρ A^a_{ν2}†
                                   − ½{A^a_{ν2}†A^a_{ν1}, ρ}) ],
    B^a  = Σ_{ν1,ν2} b(ν1,ν2) A^a_{ν2}† A^a_{ν1},

where A_ν are the Bohr components of A and r is the filter's overall rate
normalization.  Assembly works elementwise in the eigenbasis of H, which is
equivalent to (and cross-checked in the tests against) the explicit sum over
Bohr components.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .filters import FilterSpec, coefficient_fn, rate_normalization
from .operators import PAULI_X, PAULI_Y, PAULI_Z, InteractionList, build_hamiltonian, embed
from .spectral import SpectralData, bohr_decompose, diagonalize


@dataclass(frozen=True)
class JumpSet:
    """A labelled family of (not necessarily Hermitian) jump operators."""

    labels: tuple[str, ...]
    matrices: tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.matrices):
            raise ValueError("labels and matrices must have equal length")
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(
            self, "matrices", tuple(np.asarray(m, dtype=complex) for m in self.matrices)
        )

    def __len__(self) -> int:
        return len(self.matrices)

    def __iter__(self):
        return iter(zip(self.labels, self.matrices))


def single_site_pauli_jumps(n_sites: int) -> JumpSet:
    """The default jump set for chains: X, Y, Z on every site."""
    labels = []
    mats = []
    for site in range(n_sites):
        for name, P in (("X", PAULI_X), ("Y", PAULI_Y), ("Z", PAULI_Z)):
            labels.append(f"{name}{site}")
            mats.append(embed(P, (site,), n_sites))
    return JumpSet(tuple(labels), tuple(mats))


def gibbs_state(s: SpectralData | np.ndarray, beta: float) -> np.ndarray:
    """Gibbs state e^{−βH}/Z, computed with the spectrum shifted by its minimum."""
    if not isinstance(s, SpectralData):
        s = diagonalize(np.asarray(s))
    w = np.exp(-beta * (s.level_values - s.levels[0]))
    w /= w.sum()
    return (s.eigvecs * w) @ s.eigvecs.conj().T


@dataclass(frozen=True)
class SuperOperator:
    """Dense superoperator matrix in the row-stacked vectorization."""

    matrix: np.ndarray            # (dim², dim²)
    dim: int

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (self.dim**2, self.dim**2):
            raise ValueError("superoperator matrix has wrong shape")
        object.__setattr__(self, "matrix", m)

    def apply(self, rho: np.ndarray) -> np.ndarray:
        return (self.matrix @ np.asarray(rho, dtype=complex).reshape(-1)).reshape(
            self.dim, self.dim
        )

    def adjoint(self) -> "SuperOperator":
        """Hilbert–Schmidt adjoint (the Heisenberg-picture generator)."""
        return SuperOperator(self.matrix.conj().T, self.dim)

    def propagate(self, rho: np.ndarray, t: float) -> np.ndarray:
        return (expm(t * self.matrix) @ np.asarray(rho, dtype=complex).reshape(-1)).reshape(
            self.dim, self.dim
        )

    def save(self, path) -> None:
        np.savez_compressed(
            path, matrix=self.matrix, dim=self.dim,
            convention=np.array("row-major-vec-complex128"),
        )

    @staticmethod
    def load(path) -> "SuperOperator":
        data = np.load(path)
        tag = str(data["convention"]) if "convention" in data else ""
        if tag != "row-major-vec-complex128":
            raise ValueError(f"unknown serialization convention {tag!r}")
        return SuperOperator(data["matrix"], int(data["dim"]))


def left_mul(X: np.ndarray) -> np.ndarray:
    """vec-representation of ρ ↦ Xρ."""
    d = X.shape[0]
    return np.kron(X, np.eye(d, dtype=complex))


def right_mul(Y: np.ndarray) -> np.ndarray:
    """vec-representation of ρ ↦ ρY."""
    d = Y.shape[0]
    return np.kron(np.eye(d, dtype=complex), Y.T)


def assemble_lindbladian(
    H: InteractionList | np.ndarray,
    jumps: JumpSet,
    filt: FilterSpec,
    spectral: SpectralData | None = None,
) -> SuperOperator:
    """Assemble the Gibbs-sampler generator elementwise in the eigenbasis of H."""
    if isinstance(H, InteractionList):
        H = build_hamiltonian(H)
    s = spectral if spectral is not None else diagonalize(np.asarray(H))
    V = s.eigvecs
    d = s.dim
    E = s.level_values
    cfun = coefficient_fn(filt)
    beta = filt.beta

    nu = E[:, None] - E[None, :]                       # nu[i,k] = E_i − E_k
    # c(E_i−E_k, E_j−E_l) on row (i,j), column (k,l); shared by all jumps.
    W = cfun(nu[:, None, :, None], nu[None, :, None, :]).astype(complex)
    W = W.reshape(d * d, d * d)
    # Weights for Θ_{pq} = Σ_k Â†_{pk}Â_{kq}·c(E_k−E_q, E_k−E_p) (and B with b).
    C3 = cfun(E[:, None, None] - E[None, None, :], E[:, None, None] - E[None, :, None])
    # ν1−ν2 = (E_k−E_q) − (E_k−E_p) = E_p − E_q on the [k,p,q] grid.
    tanh3 = np.tanh(-beta * ((E[None, :, None] - E[None, None, :]) / 4.0)) / 2j
    B3 = tanh3 * C3                                    # b(ν1,ν2) from the same grid

    S_jump = np.zeros((d * d, d * d), dtype=complex)
    Theta = np.zeros((d, d), dtype=complex)
    Bcoh = np.zeros((d, d), dtype=complex)
    for _, A in jumps:
        A_eig = V.conj().T @ A @ V
        S_jump += W * np.kron(A_eig, A_eig.conj())
        Theta += np.einsum("kp,kq,kpq->pq", A_eig.conj(), A_eig, C3)
        Bcoh += np.einsum("kp,kq,kpq->pq", A_eig.conj(), A_eig, B3)

    ident = np.eye(d, dtype=complex)
    S = S_jump
    S -= 0.5 * (np.kron(Theta, ident) + np.kron(ident, Theta.T))
    S += -1j * (np.kron(Bcoh, ident) - np.kron(ident, Bcoh.T))
    S *= rate_normalization(filt)
    # Back to the computational basis: L = (V⊗V*) L_eig (V⊗V*)†.
    U = np.kron(V, V.conj())
    return SuperOperator(U @ S @ U.conj().T, d)


def assemble_lindbladian_reference(
    H: InteractionList | np.ndarray, jumps: JumpSet, filt: FilterSpec
) -> SuperOperator:
    """Direct assembly from explicit Bohr components; slow oracle for tests."""
    if isinstance(H, InteractionList):
        H = build_hamiltonian(H)
    s = diagonalize(np.asarray(H))
    d = s.dim
    cfun = coefficient_fn(filt)
    beta = filt.beta
    S = np.zeros((d * d, d * d), dtype=complex)
    ident = np.eye(d, dtype=complex)
    for label, A in jumps:
        comps = bohr_decompose(A, s, label)
        B = np.zeros((d, d), dtype=complex)
        Theta = np.zeros((d, d), dtype=complex)
        for nu1, A1 in comps.components.items():
            for nu2, A2 in comps.components.items():
                c = complex(cfun(nu1, nu2))
                b = np.tanh(-beta * (nu1 - nu2) / 4.0) / 2j * c
                S += c * np.kron(A1, A2.conj())
                Theta += c * (A2.conj().T @ A1)
                B += b * (A2.conj().T @ A1)
        S -= 0.5 * (np.kron(Theta, ident) + np.kron(ident, Theta.T))
        S += -1j * (np.kron(B, ident) - np.kron(ident, B.T))
    return SuperOperator(rate_normalization(filt) * S, d)


def stationarity_defect(L: SuperOperator, sigma: np.ndarray) -> float:
    """Trace norm of L(σ): zero iff σ is a fixed point."""
    return float(np.linalg.norm(L.apply(sigma), "nuc"))
