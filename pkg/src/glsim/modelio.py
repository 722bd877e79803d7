"""Line-oriented text formats for Hamiltonian models and quantum circuits.

Model files describe a chain Hamiltonian:

    # comment
    sites 5
    pauli 1.0 Z0 Z1
    pauli 0.5 X2
    matrix 0 1  1 0 0 0  0 -1 0 0  0 0 -1 0  0 0 0 1

`pauli <coefficient> <pauli-string>` adds a Pauli-string term (real
coefficient); `matrix <site...> <row-major entries>` adds an explicit
Hermitian matrix on the listed sites (entries are Python complex literals,
e.g. 0.5+0.5j).

Circuit files describe a gate sequence:

    qubits 2
    1 H 0
    2 CNOT 0 1
    3 RZ(0.25) 1
    4 U 0  0.6 0.8j  0.8j 0.6

One gate per line: time index (1-based, consecutive), gate name
(X, Y, Z, H, S, T, CNOT, CZ, RZ(angle), or U with explicit row-major
entries), then the target qubit(s).

All parse errors carry the offending line number.
"""

from __future__ import annotations

import numpy as np

from .clock import Gate, QuantumCircuit
from .operators import (
    PAULI_X, PAULI_Y, PAULI_Z, InteractionList, Term, kron_all,
)


class ParseError(ValueError):
    def __init__(self, path, line_no: int, message: str):
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = path
        self.line_no = line_no


def _content_lines(text: str):
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield i, line


def _parse_complex(token: str, path, line_no: int) -> complex:
    try:
        return complex(token)
    except ValueError:
        raise ParseError(path, line_no, f"invalid complex number {token!r}") from None


def parse_model(text: str, path: str = "<model>") -> InteractionList:
    """Parse a Hamiltonian model description into an interaction list."""
    n_sites = None
    terms: list[Term] = []
    for line_no, line in _content_lines(text):
        fields = line.split()
        kind = fields[0].lower()
        if kind == "sites":
            if n_sites is not None:
                raise ParseError(path, line_no, "duplicate 'sites' line")
            try:
                n_sites = int(fields[1])
            except (IndexError, ValueError):
                raise ParseError(path, line_no, "expected 'sites <count>'") from None
            if n_sites < 1:
                raise ParseError(path, line_no, "site count must be positive")
            continue
        if n_sites is None:
            raise ParseError(path, line_no, "'sites <count>' must come first")
        if kind == "pauli":
            if len(fields) < 3:
                raise ParseError(path, line_no, "expected 'pauli <coeff> <string>'")
            try:
                coeff = float(fields[1])
            except ValueError:
                raise ParseError(path, line_no, f"invalid coefficient {fields[1]!r}") from None
            support = []
            mats = []
            for token in fields[2:]:
                name = token[0].upper()
                table = {"X": PAULI_X, "Y": PAULI_Y, "Z": PAULI_Z}
                if name not in table:
                    raise ParseError(path, line_no, f"unknown Pauli letter in {token!r}")
                try:
                    site = int(token[1:])
                except ValueError:
                    raise ParseError(path, line_no, f"bad site index in {token!r}") from None
                if site in support:
                    raise ParseError(path, line_no, f"repeated site {site}")
                if not 0 <= site < n_sites:
                    raise ParseError(path, line_no, f"site {site} out of range")
                support.append(site)
                mats.append(table[name])
            try:
                terms.append(Term(tuple(support), coeff * kron_all(mats)))
            except ValueError as exc:
                raise ParseError(path, line_no, str(exc)) from None
        elif kind == "matrix":
            rest = fields[1:]
            # k sites followed by 4^k entries: the token count determines k.
            for k in (1, 2, 3):
                if len(rest) == k + 4**k:
                    break
            else:
                raise ParseError(
                    path, line_no,
                    "expected '<site...> <row-major entries>' with 4^k entries "
                    f"for k sites (1 ≤ k ≤ 3); got {len(rest)} tokens",
                )
            try:
                sites = [int(tok) for tok in rest[:k]]
            except ValueError:
                raise ParseError(path, line_no, f"bad site indices {rest[:k]!r}") from None
            for site in sites:
                if not 0 <= site < n_sites:
                    raise ParseError(path, line_no, f"site {site} out of range")
            rest = rest[k:]
            dim = 2**k
            entries = [_parse_complex(tok, path, line_no) for tok in rest]
            m = np.array(entries, dtype=complex).reshape(dim, dim)
            try:
                terms.append(Term(tuple(sites), m))
            except ValueError as exc:
                raise ParseError(path, line_no, str(exc)) from None
        else:
            raise ParseError(path, line_no, f"unknown directive {fields[0]!r}")
    if n_sites is None:
        raise ParseError(path, 1, "missing 'sites <count>' line")
    try:
        return InteractionList(n_sites, tuple(terms))
    except ValueError as exc:
        raise ParseError(path, 1, str(exc)) from None


def load_model(path) -> InteractionList:
    with open(path) as fh:
        return parse_model(fh.read(), str(path))


_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_S = np.diag([1, 1j]).astype(complex)
_T = np.diag([1, np.exp(1j * np.pi / 4)])
_CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)
_CZ = np.diag([1, 1, 1, -1]).astype(complex)

_FIXED_GATES = {
    "X": PAULI_X, "Y": PAULI_Y, "Z": PAULI_Z, "H": _H, "S": _S, "T": _T,
    "CNOT": _CNOT, "CZ": _CZ,
}


def parse_circuit(text: str, path: str = "<circuit>") -> QuantumCircuit:
    """Parse a gate-per-line circuit description."""
    n_qubits = None
    gates: list[Gate] = []
    for line_no, line in _content_lines(text):
        fields = line.split()
        if fields[0].lower() == "qubits":
            if n_qubits is not None:
                raise ParseError(path, line_no, "duplicate 'qubits' line")
            try:
                n_qubits = int(fields[1])
            except (IndexError, ValueError):
                raise ParseError(path, line_no, "expected 'qubits <count>'") from None
            continue
        if n_qubits is None:
            raise ParseError(path, line_no, "'qubits <count>' must come first")
        try:
            t = int(fields[0])
        except ValueError:
            raise ParseError(path, line_no, f"expected time index, got {fields[0]!r}") from None
        if t != len(gates) + 1:
            raise ParseError(path, line_no, f"time index {t} out of order (expected {len(gates) + 1})")
        if len(fields) < 3:
            raise ParseError(path, line_no, "expected '<t> <gate> <target...>'")
        name = fields[1].upper()
        if name in _FIXED_GATES:
            matrix = _FIXED_GATES[name]
            targets = fields[2:]
        elif name.startswith("RZ(") and name.endswith(")"):
            try:
                angle = float(name[3:-1])
            except ValueError:
                raise ParseError(path, line_no, f"bad angle in {fields[1]!r}") from None
            matrix = np.diag([1.0, np.exp(1j * angle)])
            targets = fields[2:]
        elif name == "U":
            rest = fields[2:]
            # k targets followed by 4^k entries: the token count determines k.
            for k in (1, 2):
                if len(rest) == k + 4**k:
                    break
            else:
                raise ParseError(
                    path, line_no,
                    "expected '<target...> <row-major entries>' with 4^k entries "
                    f"for k targets (k ∈ {{1,2}}); got {len(rest)} tokens",
                )
            targets = rest[:k]
            dim = 2**k
            matrix = np.array(
                [_parse_complex(tok, path, line_no) for tok in rest[k:]], dtype=complex
            ).reshape(dim, dim)
        else:
            raise ParseError(path, line_no, f"unknown gate {fields[1]!r}")
        try:
            target_ints = tuple(int(q) for q in targets)
        except ValueError:
            raise ParseError(path, line_no, f"bad target qubit in {targets!r}") from None
        for q in target_ints:
            if not 0 <= q < n_qubits:
                raise ParseError(path, line_no, f"target qubit {q} out of range")
        if len(target_ints) != (2 if matrix.shape[0] == 4 else 1):
            raise ParseError(
                path, line_no,
                f"gate {name} needs {2 if matrix.shape[0] == 4 else 1} target(s)",
            )
        try:
            gates.append(Gate(target_ints, matrix))
        except ValueError as exc:
            raise ParseError(path, line_no, str(exc)) from None
    if n_qubits is None:
        raise ParseError(path, 1, "missing 'qubits <count>' line")
    try:
        return QuantumCircuit(n_qubits, tuple(gates))
    except ValueError as exc:
        raise ParseError(path, 1, str(exc)) from None


def load_circuit(path) -> QuantumCircuit:
    with open(path) as fh:
        return parse_circuit(fh.read(), str(path))
