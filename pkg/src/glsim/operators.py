"""Local Hamiltonians on qubit chains: interaction lists, embedding, locality constants.

An interaction list is a collection of Hermitian terms, each supported on a small
set of sites of a 1D chain.  All dense matrices use complex128; qubit 0 is the
leftmost (most significant) tensor factor throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce

import numpy as np

I2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = {"I": I2, "X": PAULI_X, "Y": PAULI_Y, "Z": PAULI_Z}

HERMITICITY_TOL = 1e-12


def kron_all(mats) -> np.ndarray:
    """Tensor product of a sequence of matrices, left factor most significant."""
    return reduce(np.kron, mats)


def embed(matrix: np.ndarray, support: tuple[int, ...], n_sites: int) -> np.ndarray:
    """Embed an operator on `support` (ordered site tuple) into the full chain.

    The operator's tensor factors must be ordered like `support`; identities are
    inserted on all other sites.
    """
    support = tuple(support)
    if len(set(support)) != len(support):
        raise ValueError(f"repeated sites in support {support}")
    if any(s < 0 or s >= n_sites for s in support):
        raise ValueError(f"support {support} out of range for {n_sites} sites")
    dim = 2 ** len(support)
    if matrix.shape != (dim, dim):
        raise ValueError(
            f"matrix shape {matrix.shape} does not match support size {len(support)}"
        )
    # Reshape to a 2n-index tensor and lay the support factors onto their sites.
    full = np.zeros((2**n_sites, 2**n_sites), dtype=complex)
    tensor = matrix.reshape((2,) * (2 * len(support)))
    rest = [s for s in range(n_sites) if s not in support]
    ident = np.eye(2 ** len(rest), dtype=complex).reshape((2,) * (2 * len(rest)))
    # Build by explicit index bookkeeping: out axes = row sites then column sites.
    src = np.tensordot(tensor, ident, axes=0)
    k = len(support)
    r = len(rest)
    # src axes: support rows (k), support cols (k), rest rows (r), rest cols (r)
    row_axes = [None] * n_sites
    col_axes = [None] * n_sites
    for i, s in enumerate(support):
        row_axes[s] = i
        col_axes[s] = k + i
    for i, s in enumerate(rest):
        row_axes[s] = 2 * k + i
        col_axes[s] = 2 * k + r + i
    src = np.transpose(src, axes=row_axes + col_axes)
    full[:, :] = src.reshape(2**n_sites, 2**n_sites)
    return full


def pauli_string(spec: str, n_sites: int, coefficient: complex = 1.0) -> np.ndarray:
    """Dense operator for a Pauli-string like "Z0 Z1" or "X2" on `n_sites` qubits."""
    support = []
    mats = []
    for token in spec.split():
        name, site = token[0].upper(), int(token[1:])
        if name not in PAULIS:
            raise ValueError(f"unknown Pauli letter {name!r} in {spec!r}")
        support.append(site)
        mats.append(PAULIS[name])
    if not support:
        return coefficient * np.eye(2**n_sites, dtype=complex)
    return coefficient * embed(kron_all(mats), tuple(support), n_sites)


@dataclass(frozen=True)
class Term:
    """A single interaction: a Hermitian matrix on an ordered tuple of sites."""

    support: tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "support", tuple(self.support))
        if np.linalg.norm(m - m.conj().T, 2) > HERMITICITY_TOL:
            raise ValueError(f"term on {self.support} is not Hermitian")

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.matrix, 2))


@dataclass(frozen=True)
class InteractionList:
    """A geometrically local Hamiltonian on a 1D open chain.

    k: max support size; l: max number of terms touching any one site;
    h: max operator norm of a term.  All three are recomputed from the terms.
    """

    n_sites: int
    terms: tuple[Term, ...]
    geometry: str = "chain"

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        for t in self.terms:
            if any(s < 0 or s >= self.n_sites for s in t.support):
                raise ValueError(f"term support {t.support} out of range")

    @property
    def k(self) -> int:
        return max((len(t.support) for t in self.terms), default=0)

    @property
    def l(self) -> int:
        counts = [0] * self.n_sites
        for t in self.terms:
            for s in t.support:
                counts[s] += 1
        return max(counts, default=0)

    @property
    def h(self) -> float:
        return max((t.norm for t in self.terms), default=0.0)

    @property
    def dim(self) -> int:
        return 2**self.n_sites


def build_hamiltonian(spec: InteractionList) -> np.ndarray:
    """Sum of all terms, each embedded by tensoring identities on the complement."""
    H = np.zeros((spec.dim, spec.dim), dtype=complex)
    for t in spec.terms:
        H += embed(t.matrix, t.support, spec.n_sites)
    return H


def lieb_robinson_velocity(spec: InteractionList) -> tuple[float, float]:
    """Locality constant J = max_u Σ_{Z∋u} |Z|·‖h_Z‖ and the coarser bound 2hkl."""
    per_site = [0.0] * spec.n_sites
    for t in spec.terms:
        w = len(t.support) * t.norm
        for s in t.support:
            per_site[s] += w
    J = max(per_site, default=0.0)
    coarse = 2.0 * spec.h * spec.k * spec.l
    return J, coarse


def ball(center: int, radius: int, n_sites: int) -> set[int]:
    """Chain-graph ball of given radius around `center`."""
    return {s for s in range(n_sites) if abs(s - center) <= radius}


def restrict_to_ball(spec: InteractionList, center: int, radius: int) -> InteractionList:
    """Keep exactly the terms whose support lies inside the chain ball B_center(radius)."""
    if center < 0 or center >= spec.n_sites:
        raise ValueError(f"center {center} out of range")
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    allowed = ball(center, radius, spec.n_sites)
    kept = tuple(t for t in spec.terms if set(t.support) <= allowed)
    return InteractionList(spec.n_sites, kept, spec.geometry)


def tfim_chain(n_sites: int, coupling: float = 1.0, field: float = 1.0) -> InteractionList:
    """Transverse-field Ising chain: Σ coupling·Z_iZ_{i+1} + Σ field·X_i (open ends)."""
    terms = [
        Term((i, i + 1), coupling * np.kron(PAULI_Z, PAULI_Z))
        for i in range(n_sites - 1)
    ]
    terms += [Term((i,), field * PAULI_X) for i in range(n_sites)]
    return InteractionList(n_sites, tuple(terms))


def single_term(n_sites: int, support: tuple[int, ...], matrix: np.ndarray) -> InteractionList:
    return InteractionList(n_sites, (Term(tuple(support), matrix),))


def random_local_chain(
    n_sites: int, rng: np.random.Generator, h_max: float = 1.0
) -> InteractionList:
    """Random (2,2)-local chain: one Hermitian nearest-neighbour term per bond plus
    one single-site term per site, each of norm ≤ h_max."""
    def random_herm(dim):
        g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        m = (g + g.conj().T) / 2
        return m / max(np.linalg.norm(m, 2) / h_max, 1.0)

    terms = [Term((i, i + 1), random_herm(4)) for i in range(n_sites - 1)]
    terms += [Term((i,), random_herm(2)) for i in range(n_sites)]
    return InteractionList(n_sites, tuple(terms))
