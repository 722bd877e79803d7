"""Superoperator norms: exact 2→2, certified lower bounds for 1→1 and ∞→∞.

The 2→2 norm (Hilbert–Schmidt to Hilbert–Schmidt) is exactly the largest
singular value of the vectorized matrix, since vec is an isometry for the
HS inner product.

The 1→1 and ∞→∞ norms are NP-hard in general; we report *certified lower
bounds*: ‖Φ‖_{1→1} ≥ ‖Φ(|ψ⟩⟨φ|)‖_1 for any unit vectors ψ, φ (every rank-one
|ψ⟩⟨φ| has trace norm 1).  The bound is tightened by random restarts plus an
alternating refinement that is exact in each coordinate:

    maximize Re tr(U† Φ(|ψ⟩⟨φ|)) over unitary U (polar step) and unit ψ, φ
    (each a linear maximization once the other two are fixed).

∞→∞ comes from the duality ‖Φ‖_{∞→∞} = ‖Φ†‖_{1→1} with Φ† the HS adjoint.
"""

from __future__ import annotations

import numpy as np

from .lindblad import SuperOperator


def two_to_two(S: SuperOperator | np.ndarray) -> float:
    """Exact 2→2 superoperator norm: top singular value of the vec matrix."""
    m = S.matrix if isinstance(S, SuperOperator) else np.asarray(S)
    return float(np.linalg.norm(m, 2))


def _polar_unitary(X: np.ndarray) -> np.ndarray:
    u, _, vh = np.linalg.svd(X)
    return u @ vh


def one_to_one_lower(
    S: SuperOperator,
    restarts: int = 200,
    refine_steps: int = 40,
    seed: int = 7,
    tol: float = 1e-12,
) -> float:
    """Certified lower bound on ‖Φ‖_{1→1} by rank-one input search."""
    d = S.dim
    M = S.matrix
    rng = np.random.default_rng(seed)
    best = 0.0

    def trace_norm_of_pair(psi, phi):
        out = (M @ np.kron(psi, phi.conj())).reshape(d, d)
        return float(np.linalg.norm(out, "nuc")), out

    starts = []
    for _ in range(restarts):
        psi = rng.normal(size=d) + 1j * rng.normal(size=d)
        phi = rng.normal(size=d) + 1j * rng.normal(size=d)
        starts.append((psi / np.linalg.norm(psi), phi / np.linalg.norm(phi)))
    # Structured starts: computational basis pairs on the diagonal.
    eye = np.eye(d)
    for i in range(d):
        starts.append((eye[i].astype(complex), eye[i].astype(complex)))

    for psi, phi in starts:
        val, out = trace_norm_of_pair(psi, phi)
        for _ in range(refine_steps):
            U = _polar_unitary(out)
            # w = vec-gradient; objective Re Σ conj(W_ij) ψ_i conj(φ_j).
            W = (M.conj().T @ U.reshape(-1)).reshape(d, d)
            a = W.conj() @ phi.conj()
            na = np.linalg.norm(a)
            if na > tol:
                psi = a.conj() / na
            b = (psi @ W.conj()).conj()
            nb = np.linalg.norm(b)
            if nb > tol:
                phi = b.conj() / nb
            new_val, out = trace_norm_of_pair(psi, phi)
            if new_val <= val + tol:
                val = max(val, new_val)
                break
            val = new_val
        best = max(best, val)
    return best


def infty_to_infty_lower(S: SuperOperator, **kwargs) -> float:
    """Certified lower bound on ‖Φ‖_{∞→∞} via ‖Φ‖_{∞→∞} = ‖Φ†‖_{1→1}."""
    return one_to_one_lower(S.adjoint(), **kwargs)
