"""Clock Hamiltonians, circuit-to-Hamiltonian constructions, and their
combinatorial lemmas.

Conventions:
  * The register layout is (data ⊗ clock): n data qubits followed by T clock
    qubits; clock qubit t (t = 1..T) is tensor factor n+t−1, and qubit 0 is
    the most significant bit of the computational index.
  * The clock Hamiltonian counts "01" substrings of the clock bitstring read
    left to right.  The time-t clock state is the unary string with the first
    t bits set, |1^t 0^{T−t}⟩ — the unique zero-energy unary states.
  * Propagation terms move time t−1 → t by flipping clock bit t with the
    pattern |110⟩⟨100| on bits (t−1, t, t+1) while applying gate U_t to the
    data register, with boundary forms at t = 1 and t = T.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, sqrt

import numpy as np

from .lindblad import JumpSet
from .operators import PAULI_X, embed, kron_all

UNITARITY_TOL = 1e-12

_KET = {0: np.array([[1.0], [0.0]], dtype=complex), 1: np.array([[0.0], [1.0]], dtype=complex)}


def _pattern(bra_bits: str, ket_bits: str) -> np.ndarray:
    """|bra⟩⟨ket| for computational bitstring patterns, e.g. _pattern("110","100")."""
    bra = kron_all([_KET[int(b)] for b in bra_bits])
    ket = kron_all([_KET[int(b)] for b in ket_bits])
    return bra @ ket.conj().T


@dataclass(frozen=True)
class Gate:
    """A 1- or 2-qubit unitary on adjacent data qubits."""

    targets: tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "targets", tuple(self.targets))
        if len(self.targets) not in (1, 2):
            raise ValueError("gates act on 1 or 2 qubits")
        if len(self.targets) == 2 and abs(self.targets[0] - self.targets[1]) != 1:
            raise ValueError("two-qubit gates must act on adjacent qubits")
        dim = 2 ** len(self.targets)
        if m.shape != (dim, dim):
            raise ValueError("gate matrix shape does not match target count")
        if np.linalg.norm(m.conj().T @ m - np.eye(dim), 2) > UNITARITY_TOL:
            raise ValueError("gate matrix is not unitary")


@dataclass(frozen=True)
class QuantumCircuit:
    """An ordered sequence of T adjacent-qubit gates on n data qubits."""

    n_qubits: int
    gates: tuple[Gate, ...]

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.T < 1:
            raise ValueError("circuit needs at least one gate")
        for g in self.gates:
            if any(q < 0 or q >= self.n_qubits for q in g.targets):
                raise ValueError(f"gate targets {g.targets} out of range")

    @property
    def T(self) -> int:
        return len(self.gates)

    def first_touch(self, qubit: int) -> int | None:
        """1-based time of the first gate acting on `qubit`, or None."""
        for t, g in enumerate(self.gates, start=1):
            if qubit in g.targets:
                return t
        return None

    def snapshots(self) -> list[np.ndarray]:
        """State vectors U_t…U_1|0^n⟩ for t = 0..T."""
        psi = np.zeros(2**self.n_qubits, dtype=complex)
        psi[0] = 1.0
        out = [psi]
        for g in self.gates:
            U = embed(g.matrix, g.targets, self.n_qubits)
            psi = U @ psi
            out.append(psi)
        return out


def clock_energy(bits: int, T: int) -> int:
    """Number of "01" substrings of the T-bit clock string (MSB = clock bit 1)."""
    return int.bit_count((~bits >> 1) & bits & ((1 << (T - 1)) - 1))


def clock_energies(T: int) -> np.ndarray:
    """Energies of all 2^T clock strings, indexed by computational index."""
    x = np.arange(2**T, dtype=np.uint64)
    pat = (~x >> np.uint64(1)) & x & np.uint64((1 << (T - 1)) - 1)
    counts = np.zeros(2**T, dtype=np.int64)
    for p in range(T - 1):
        counts += ((pat >> np.uint64(p)) & np.uint64(1)).astype(np.int64)
    return counts


def build_clock(T: int) -> np.ndarray:
    """Diagonal clock Hamiltonian on T qubits counting "01" substrings."""
    if T < 2:
        raise ValueError("T must be at least 2")
    return np.diag(clock_energies(T).astype(complex))


def level_dimensions(T: int) -> np.ndarray:
    """Eigenspace dimensions of the clock Hamiltonian by enumeration."""
    e = clock_energies(T)
    return np.bincount(e, minlength=T // 2 + 1)


def level_dimension_formula(T: int, i: int) -> int:
    """Closed form binom(T+1, 2i+1) for the dimension of clock level i."""
    return comb(T + 1, 2 * i + 1)


def clock_state_index(t: int, T: int) -> int:
    """Computational index of the time-t clock state |1^t 0^{T−t}⟩."""
    if not 0 <= t <= T:
        raise ValueError("time out of range")
    return (2**T - 1) ^ (2 ** (T - t) - 1)


@dataclass(frozen=True)
class ClockBundle:
    """All pieces of a circuit-to-Hamiltonian construction H = H_clock + λ(H_in + H_prop)."""

    circuit: QuantumCircuit
    lam: float
    variant: str                     # "standard" | "frustration_free"
    H: np.ndarray                    # full Hamiltonian on n+T qubits
    H_clock: np.ndarray              # embedded on the full register
    H_in: np.ndarray
    H_prop: np.ndarray
    h_couplings: tuple[float, ...]
    eta: np.ndarray                  # uniform history state
    eta_prime: np.ndarray            # binomial-weighted history state
    ff_terms: tuple[np.ndarray, ...]  # projector list (empty unless FF variant)

    @property
    def n_total(self) -> int:
        return self.circuit.n_qubits + self.circuit.T


def _clock_support(t: int, n: int, T: int) -> tuple[tuple[int, ...], str, str]:
    """Support and bra/ket clock patterns of the time-(t−1)→t move."""
    if t == 1:
        return (n, n + 1), "10", "00"
    if t == T:
        return (n + T - 2, n + T - 1), "11", "10"
    return (n + t - 2, n + t - 1, n + t), "110", "100"


def history_states(circuit: QuantumCircuit) -> tuple[np.ndarray, np.ndarray]:
    """(uniform |η⟩, binomial |η'⟩): superpositions of snapshots ⊗ unary clocks."""
    n, T = circuit.n_qubits, circuit.T
    dim = 2 ** (n + T)
    snaps = circuit.snapshots()
    eta = np.zeros(dim, dtype=complex)
    eta_p = np.zeros(dim, dtype=complex)
    for t in range(T + 1):
        vec = np.zeros(2**T)
        vec[clock_state_index(t, T)] = 1.0
        joint = np.kron(snaps[t], vec)
        eta += joint / sqrt(T + 1)
        eta_p += sqrt(comb(T, t)) / 2 ** (T / 2) * joint
    return eta, eta_p


def build_kitaev(circuit: QuantumCircuit, lam: float, variant: str = "standard") -> ClockBundle:
    """Assemble H_clock + λ(H_in + H_prop) (or the frustration-free variant)."""
    if variant not in ("standard", "frustration_free"):
        raise ValueError(f"unknown variant {variant!r}")
    if lam <= 0:
        raise ValueError("lambda must be positive")
    n, T = circuit.n_qubits, circuit.T
    if T < 2:
        raise ValueError("T must be at least 2")
    n_total = n + T
    dim = 2**n_total
    clock_sites = tuple(range(n, n_total))

    H_clock = embed(build_clock(T), clock_sites, n_total)

    H_in = np.zeros((dim, dim), dtype=complex)
    one = _pattern("1", "1")
    for j in range(n):
        t_j = circuit.first_touch(j)
        if t_j is None:
            continue
        if t_j == 1:
            # Time-0 marker: clock bit 1 still zero.
            marker = embed(np.kron(one, _pattern("0", "0")), (j, n), n_total)
        else:
            marker = embed(
                np.kron(one, _pattern("10", "10")), (j, n + t_j - 2, n + t_j - 1), n_total
            )
        H_in += marker

    h_couplings = tuple(sqrt(t * (T - t + 1)) for t in range(1, T + 1))
    H_prop = np.zeros((dim, dim), dtype=complex)
    ff_terms: list[np.ndarray] = []
    ident = np.eye(dim, dtype=complex)
    for t, g in enumerate(circuit.gates, start=1):
        support, bra, ket = _clock_support(t, n, T)
        move = np.kron(g.matrix, _pattern(bra, ket))
        move_full = embed(move, g.targets + support, n_total)
        hop = move_full + move_full.conj().T
        if variant == "standard":
            H_prop += 0.5 * (ident - h_couplings[t - 1] * hop)
        else:
            anchors = embed(
                np.kron(np.eye(2 ** len(g.targets)),
                        _pattern(bra, bra) + _pattern(ket, ket)),
                g.targets + support, n_total,
            )
            term = anchors - hop          # PSD with eigenvalues {0, 2}
            H_prop += term
            ff_terms.append(term)

    H = H_clock + lam * (H_in + H_prop)
    eta, eta_p = history_states(circuit)
    return ClockBundle(
        circuit=circuit, lam=lam, variant=variant, H=H, H_clock=H_clock,
        H_in=H_in, H_prop=H_prop, h_couplings=h_couplings,
        eta=eta, eta_prime=eta_p, ff_terms=tuple(ff_terms),
    )


def clock_jump_set(T: int, n: int = 0) -> JumpSet:
    """The 2T−1 clock jumps {X_t} ∪ {X_t X_{t+1}}, identity on the data register."""
    if T < 2:
        raise ValueError("T must be at least 2")
    n_total = n + T
    labels = []
    mats = []
    for t in range(1, T + 1):
        labels.append(f"X{t}")
        mats.append(embed(PAULI_X, (n + t - 1,), n_total))
    XX = np.kron(PAULI_X, PAULI_X)
    for t in range(1, T):
        labels.append(f"X{t}X{t + 1}")
        mats.append(embed(XX, (n + t - 1, n + t), n_total))
    return JumpSet(tuple(labels), tuple(mats))


@dataclass(frozen=True)
class MoveLemmaReport:
    T: int
    checked: int
    counterexamples: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return not self.counterexamples


def verify_move_lemma(T: int) -> MoveLemmaReport:
    """Exhaustive check: clock strings below energy T/4 admit a single-flip
    raise by 1; strings at or above T/4 admit a single- or double-flip lowering
    by 1."""
    if T % 4 != 0:
        raise ValueError("T must be divisible by 4")
    if T > 20:
        raise ValueError("enumeration capped at T = 20")
    E = clock_energies(T)
    x = np.arange(2**T, dtype=np.int64)
    single = [x ^ (1 << p) for p in range(T)]
    double = [x ^ (3 << p) for p in range(T - 1)]
    can_raise = np.zeros(2**T, dtype=bool)
    can_lower = np.zeros(2**T, dtype=bool)
    for f in single:
        can_raise |= E[f] == E + 1
        can_lower |= E[f] == E - 1
    for f in double:
        can_lower |= E[f] == E - 1
    low = E < T // 4
    bad = np.where((low & ~can_raise) | (~low & ~can_lower))[0]
    return MoveLemmaReport(T=T, checked=2**T, counterexamples=tuple(int(b) for b in bad))


@dataclass(frozen=True)
class CheegerReport:
    T: int
    level_dims: tuple[int, ...]
    conductances: tuple[float, ...]   # per level i = 1..T/2
    C: float

    @property
    def lower_bound(self) -> float:
        return min(1.0, 6.0 / (self.T - 1) ** 2)


def cheeger_constant(T: int) -> CheegerReport:
    """Per-level conductance Σ_a tr(P_i A^a P_{i−1} A^a)/tr(P_i) of the clock
    jumps, by pure bitstring enumeration (no matrices)."""
    if T > 20:
        raise ValueError("enumeration capped at T = 20")
    E = clock_energies(T)
    dims = np.bincount(E, minlength=T // 2 + 1)
    x = np.arange(2**T, dtype=np.int64)
    flips = [x ^ (1 << p) for p in range(T)] + [x ^ (3 << p) for p in range(T - 1)]
    conductances = []
    for i in range(1, T // 2 + 1):
        at_i = E == i
        mass = 0
        for f in flips:
            mass += int(np.sum(at_i & (E[f] == i - 1)))
        conductances.append(mass / int(dims[i]))
    return CheegerReport(
        T=T, level_dims=tuple(int(d) for d in dims),
        conductances=tuple(conductances), C=float(min(conductances)),
    )


def history_overlap(bundle: ClockBundle) -> tuple[float, float]:
    """(|⟨η'|η⟩|², dephased overlap ⟨η|D_clock(|η'⟩⟨η'|)|η⟩).

    The coherent overlap is ≥ 1/(T+1); the clock-dephased overlap equals
    1/(T+1) exactly for every circuit, since the snapshots coincide and
    Σ_t binom(T,t)/2^T = 1.
    """
    coherent = abs(np.vdot(bundle.eta_prime, bundle.eta)) ** 2
    n, T = bundle.circuit.n_qubits, bundle.circuit.T
    d_data = 2**n
    # Dephase η' in the clock computational basis, then overlap with η.
    ep = bundle.eta_prime.reshape(d_data, 2**T)
    e = bundle.eta.reshape(d_data, 2**T)
    dephased = float(sum(abs(np.vdot(ep[:, c], e[:, c])) ** 2 for c in range(2**T)))
    return float(coherent), dephased


def kernel_projectors(bundle: ClockBundle) -> list[np.ndarray]:
    """Kernel projector of every term of H_{CFF,λ} (clock, input, propagation)."""
    if bundle.variant != "frustration_free":
        raise ValueError("measurement protocol requires the frustration-free variant")
    circuit = bundle.circuit
    n, T = circuit.n_qubits, circuit.T
    n_total = n + T
    dim = 2**n_total
    ident = np.eye(dim, dtype=complex)

    projectors = []
    for t in range(1, T):
        projectors.append(
            ident - embed(_pattern("01", "01"), (n + t - 1, n + t), n_total)
        )
    one = _pattern("1", "1")
    for j in range(n):
        t_j = circuit.first_touch(j)
        if t_j is None:
            continue
        if t_j == 1:
            pen = embed(np.kron(one, _pattern("0", "0")), (j, n), n_total)
        else:
            pen = embed(
                np.kron(one, _pattern("10", "10")), (j, n + t_j - 2, n + t_j - 1), n_total
            )
        projectors.append(ident - pen)
    for term in bundle.ff_terms:
        projectors.append(ident - term / 2.0)   # each FF term has spectrum {0, 2}
    return projectors


def measure_ff_terms(
    rho: np.ndarray, bundle: ClockBundle,
    max_sweeps: int = 100_000, converge_tol: float = 1e-13,
) -> tuple[float, np.ndarray | None]:
    """Repeatedly measure the kernel projector of every frustration-free term,
    conditioning on the all-pass outcome record.

    A single sweep already succeeds with probability ≥ ⟨η|ρ|η⟩; repeating the
    sweep until the conditional pass probability converges to 1 drives the
    product of projectors to |η⟩⟨η| (the unique joint kernel), so the total
    acceptance probability equals ⟨η|ρ|η⟩ and the accepted state is |η⟩.
    Probabilities are exact (no sampling).
    """
    projectors = kernel_projectors(bundle)
    state = np.asarray(rho, dtype=complex)
    prob = 1.0
    for _ in range(max_sweeps):
        sweep_prob = 1.0
        for P in projectors:
            cond = P @ state @ P
            p = float(np.trace(cond).real) / max(float(np.trace(state).real), 1e-300)
            sweep_prob *= min(max(p, 0.0), 1.0)
            if sweep_prob <= 0.0:
                return 0.0, None
            state = cond
        state = state / np.trace(state).real
        prob *= sweep_prob
        if 1.0 - sweep_prob < converge_tol:
            return prob, state
    raise RuntimeError("measurement sweeps did not converge")


def measure_ff_terms_sampled(
    rho: np.ndarray, bundle: ClockBundle, shots: int, seed: int
) -> tuple[int, int]:
    """Seeded Monte Carlo version of the measurement protocol.

    Returns (accept_count, shots): each shot draws the full outcome sequence,
    accepting only on the all-kernel record.
    """
    rng = np.random.default_rng(seed)
    accept_prob, _ = measure_ff_terms(rho, bundle)
    # The sequential measurement record accepts with exactly this probability,
    # so the protocol is sampled by independent Bernoulli draws.
    accepts = int(np.sum(rng.random(shots) < accept_prob))
    return accepts, shots
