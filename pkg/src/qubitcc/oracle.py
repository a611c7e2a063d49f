"""Dense and matrix-free reference evaluation of Pauli operators.

Everything here works on explicit statevectors, independently of the
symbolic word algebra, so it can serve as ground truth in tests.  Basis
index convention: qubit j is bit j of the computational index, so the
reference with the first k qubits down is the index with the low k bits
set.
"""

from __future__ import annotations

import numpy as np
from scipy.sparse.linalg import LinearOperator, eigsh

from .pauli import PauliSum, PauliWord, ReferenceState

__all__ = [
    "DENSE_QUBIT_CAP",
    "APPLY_QUBIT_CAP",
    "to_dense",
    "apply_sum",
    "apply_to_basis_state",
    "reference_vector",
    "expectation",
    "ground_state",
    "ground_energy",
]

DENSE_QUBIT_CAP = 14
APPLY_QUBIT_CAP = 20

_SINGLE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def _word_matrix(word: PauliWord) -> np.ndarray:
    mat = np.ones((1, 1), dtype=complex)
    for j in range(word.n):
        mat = np.kron(_SINGLE[word.letter(j)], mat)
    return mat


def to_dense(op: PauliWord | PauliSum) -> np.ndarray:
    """Full 2^n x 2^n complex matrix; refuses above DENSE_QUBIT_CAP."""
    if op.n > DENSE_QUBIT_CAP:
        raise ValueError(f"dense construction capped at {DENSE_QUBIT_CAP} qubits")
    if isinstance(op, PauliWord):
        return _word_matrix(op)
    dim = 1 << op.n
    mat = np.zeros((dim, dim), dtype=complex)
    for word, coeff in op.items():
        mat += coeff * _word_matrix(word)
    return mat


def _parity(values: np.ndarray) -> np.ndarray:
    return (np.bitwise_count(values) & np.uint64(1)).astype(np.int64)


def apply_sum(h: PauliSum, vec: np.ndarray) -> np.ndarray:
    """h @ vec without building the matrix; capped at APPLY_QUBIT_CAP."""
    if h.n > APPLY_QUBIT_CAP:
        raise ValueError(f"matrix-free application capped at {APPLY_QUBIT_CAP} qubits")
    dim = 1 << h.n
    if vec.shape != (dim,):
        raise ValueError("statevector length does not match the qubit count")
    idx = np.arange(dim, dtype=np.uint64)
    out = np.zeros(dim, dtype=complex)
    i_powers = (1.0 + 0j, 1j, -1.0 + 0j, -1j)
    for word, coeff in h.items():
        signs = 1.0 - 2.0 * _parity(idx & np.uint64(word.z))
        amp = coeff * i_powers[word.y_count() % 4]
        out[idx ^ np.uint64(word.x)] += amp * signs * vec
    return out


def apply_to_basis_state(op: PauliWord | PauliSum, bits: int) -> np.ndarray:
    """op |bits> as a dense statevector."""
    n = op.n
    if n > APPLY_QUBIT_CAP:
        raise ValueError(f"matrix-free application capped at {APPLY_QUBIT_CAP} qubits")
    if not 0 <= bits < (1 << n):
        raise ValueError("basis index outside the register")
    vec = np.zeros(1 << n, dtype=complex)
    vec[bits] = 1.0
    if isinstance(op, PauliWord):
        op = PauliSum(n, [(op, 1.0)])
    return apply_sum(op, vec)


def reference_vector(ref: ReferenceState) -> np.ndarray:
    vec = np.zeros(1 << ref.n, dtype=complex)
    vec[ref.occupied_mask] = 1.0
    return vec


def expectation(h: PauliSum, vec: np.ndarray) -> float:
    """<vec|h|vec>, asserting the value is real."""
    val = np.vdot(vec, apply_sum(h, vec))
    if abs(val.imag) > 1e-10 * max(1.0, abs(val.real)):
        raise ValueError(f"expectation has a non-negligible imaginary part: {val}")
    return float(val.real)


def ground_state(h: PauliSum, *, seed: int = 0) -> tuple[float, np.ndarray]:
    """Lowest eigenpair of h.

    Dense diagonalization up to DENSE_QUBIT_CAP qubits, iterative
    (Lanczos on the matrix-free apply) up to APPLY_QUBIT_CAP, with a
    deterministic seeded start vector.
    """
    if h.n <= DENSE_QUBIT_CAP:
        mat = to_dense(h)
        energies, vectors = np.linalg.eigh(mat)
        return float(energies[0]), vectors[:, 0]
    if h.n > APPLY_QUBIT_CAP:
        raise ValueError(f"ground state capped at {APPLY_QUBIT_CAP} qubits")
    dim = 1 << h.n
    op = LinearOperator((dim, dim), matvec=lambda v: apply_sum(h, v), dtype=complex)
    v0 = np.random.default_rng(seed).standard_normal(dim)
    energies, vectors = eigsh(op, k=1, which="SA", v0=v0, maxiter=5000)
    return float(energies[0]), vectors[:, 0]


def ground_energy(h: PauliSum, *, seed: int = 0) -> float:
    return ground_state(h, seed=seed)[0]
