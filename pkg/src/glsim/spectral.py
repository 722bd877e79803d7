"""Spectral decomposition with degeneracy grouping and Bohr-frequency components."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERM_TOL = 1e-10
BOHR_DROP_TOL = 1e-14


def default_grouping_tol(H: np.ndarray) -> float:
    return 1e-9 * max(1.0, float(np.linalg.norm(H, 2)))


@dataclass(frozen=True)
class SpectralData:
    """Grouped eigendecomposition H = Σ_i E_i P_i with ascending distinct levels.

    eigvecs holds one orthonormal eigenbasis column per Hilbert-space dimension;
    level_of[d] maps basis column d to its level index; level_values[d] is the
    grouped level energy of column d (so Bohr frequencies computed from columns
    are exactly differences of level energies).
    """

    levels: np.ndarray          # (M,) ascending distinct energies
    eigvecs: np.ndarray         # (dim, dim) unitary
    level_of: np.ndarray        # (dim,) int level index per column
    grouping_tol: float

    @property
    def M(self) -> int:
        return len(self.levels)

    @property
    def dim(self) -> int:
        return self.eigvecs.shape[0]

    @property
    def level_values(self) -> np.ndarray:
        return self.levels[self.level_of]

    def projector(self, i: int) -> np.ndarray:
        cols = self.eigvecs[:, self.level_of == i]
        return cols @ cols.conj().T

    @property
    def projectors(self) -> list[np.ndarray]:
        return [self.projector(i) for i in range(self.M)]

    def level_dims(self) -> np.ndarray:
        return np.bincount(self.level_of, minlength=self.M)

    @property
    def bohr_set(self) -> np.ndarray:
        """All distinct Bohr frequencies ν = E_i − E_j, ascending."""
        diffs = self.levels[:, None] - self.levels[None, :]
        return np.unique(np.round(diffs, 12))

    @property
    def delta_E(self) -> float:
        """Minimum gap between distinct energies (inf for a single level)."""
        if self.M < 2:
            return np.inf
        return float(np.min(np.diff(self.levels)))

    @property
    def delta_nu(self) -> float:
        """Minimum gap between distinct Bohr frequencies."""
        bohr = self.bohr_set
        if len(bohr) < 2:
            return np.inf
        return float(np.min(np.diff(bohr)))

    def reconstruct(self) -> np.ndarray:
        return (self.eigvecs * self.level_values) @ self.eigvecs.conj().T


def diagonalize(H: np.ndarray, grouping_tol: float | None = None) -> SpectralData:
    """Eigendecompose a Hermitian matrix, merging eigenvalues within grouping_tol.

    Merged levels carry the mean of their raw eigenvalues; chained near-degeneracies
    are grouped transitively (gap-based clustering on the sorted spectrum).
    """
    H = np.asarray(H, dtype=complex)
    if np.linalg.norm(H - H.conj().T, 2) > HERM_TOL:
        raise ValueError("matrix is not Hermitian within tolerance")
    if grouping_tol is None:
        grouping_tol = default_grouping_tol(H)
    if grouping_tol <= 0:
        raise ValueError("grouping_tol must be positive")
    raw, vecs = np.linalg.eigh(H)
    level_of = np.zeros(len(raw), dtype=int)
    if len(raw) > 1:
        level_of[1:] = np.cumsum(np.diff(raw) > grouping_tol)
    M = level_of[-1] + 1 if len(raw) else 0
    levels = np.array([raw[level_of == i].mean() for i in range(M)])
    return SpectralData(levels=levels, eigvecs=vecs, level_of=level_of,
                        grouping_tol=grouping_tol)


@dataclass(frozen=True)
class BohrComponents:
    """Decomposition A = Σ_ν A_ν with A_ν = Σ_{E_i−E_j=ν} P_i A P_j."""

    jump_label: str
    components: dict[float, np.ndarray]
    dropped: tuple[float, ...]

    def total(self) -> np.ndarray:
        mats = list(self.components.values())
        return np.sum(mats, axis=0)

    @property
    def frequencies(self) -> list[float]:
        return sorted(self.components)


def bohr_decompose(A: np.ndarray, s: SpectralData, label: str = "A") -> BohrComponents:
    """Split an operator into its Bohr-frequency components in the eigenbasis of H."""
    A = np.asarray(A, dtype=complex)
    if A.shape != (s.dim, s.dim):
        raise ValueError("operator dimension does not match spectral data")
    V = s.eigvecs
    A_eig = V.conj().T @ A @ V
    comps: dict[float, np.ndarray] = {}
    dropped = []
    E = s.levels
    for i in range(s.M):
        for j in range(s.M):
            nu = float(np.round(E[i] - E[j], 12))
            block = np.zeros_like(A_eig)
            rows = s.level_of == i
            cols = s.level_of == j
            block[np.ix_(rows, cols)] = A_eig[np.ix_(rows, cols)]
            mat = V @ block @ V.conj().T
            if np.linalg.norm(mat) < BOHR_DROP_TOL:
                if not np.any(np.abs(block) > 0):
                    continue
                dropped.append(nu)
                continue
            if nu in comps:
                comps[nu] = comps[nu] + mat
            else:
                comps[nu] = mat
    return BohrComponents(jump_label=label, components=comps, dropped=tuple(dropped))
