"""Dense complex matrix helpers for small qubit registers.

Qubit 0 is the leftmost (most significant) tensor factor everywhere in
this package, so ``kron(a, b)`` puts ``a`` on qubit 0.
"""
from __future__ import annotations

import itertools
from functools import reduce
from typing import Iterable

import numpy as np

HERMITIAN_TOL = 1e-12

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class NotHermitianError(ValueError):
    """Raised when a matrix expected to be Hermitian is not, within tolerance."""

    def __init__(self, i: int, j: int, deviation: float, tol: float):
        self.pair = (i, j)
        self.deviation = deviation
        super().__init__(
            f"matrix is not Hermitian: |m[{i},{j}] - conj(m[{j},{i}])| = "
            f"{deviation:.3e} exceeds tol {tol:.1e}"
        )


def as_square(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def n_qubits_of(m: np.ndarray) -> int:
    dim = m.shape[0]
    n = dim.bit_length() - 1
    if dim < 2 or 1 << n != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n


def check_hermitian(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Return ``m`` as a complex array, raising NotHermitianError if it is not Hermitian."""
    m = as_square(m)
    dev = np.abs(m - m.conj().T)
    k = int(np.argmax(dev))
    i, j = divmod(k, m.shape[0])
    if dev[i, j] > tol:
        raise NotHermitianError(i, j, float(dev[i, j]), tol)
    return m


def kron(a, b) -> np.ndarray:
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def kron_all(factors: Iterable) -> np.ndarray:
    return reduce(kron, factors, np.eye(1, dtype=complex))


def jacobi_eigenvalues(m: np.ndarray, off_tol: float = 1e-14, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.

    Each rotation removes the phase of the pivot entry and then applies the
    real symmetric rotation that annihilates it. Iteration stops once the
    off-diagonal Frobenius mass drops below ``off_tol`` times the matrix scale.
    """
    a = np.array(m, dtype=complex)
    n = a.shape[0]
    scale = max(1.0, float(np.linalg.norm(a)))
    offdiag = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.abs(a[offdiag]) ** 2))
        if off < off_tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                tau = (a[p, p].real - a[q, q].real) / (2.0 * mag)
                sign = 1.0 if tau >= 0 else -1.0
                t = -sign / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                rot = np.array([[c, s * phase], [-s * np.conj(phase), c]])
                a[:, [p, q]] = a[:, [p, q]] @ rot
                a[[p, q], :] = rot.conj().T @ a[[p, q], :]
                a[p, q] = a[q, p] = 0.0
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    return np.sort(np.diag(a).real)


def hermitian_eigenvalues(m, tol: float = HERMITIAN_TOL, method: str = "lapack") -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix.

    ``method="lapack"`` uses ``numpy.linalg.eigvalsh``; ``method="jacobi"`` uses
    the in-package Jacobi solver. Both reject non-Hermitian input.
    """
    m = check_hermitian(m, tol)
    if method == "lapack":
        return np.linalg.eigvalsh(m)
    if method == "jacobi":
        return jacobi_eigenvalues(m)
    raise ValueError(f"unknown eigenvalue method {method!r}")


def min_eigenvalue(m, tol: float = HERMITIAN_TOL) -> float:
    return float(hermitian_eigenvalues(m, tol)[0])


def partial_transpose(m, qubit: int, n_qubits: int) -> np.ndarray:
    """Transpose the row/column indices of a single qubit slot."""
    m = as_square(m)
    if m.shape[0] != 2**n_qubits:
        raise ValueError(f"matrix dimension {m.shape[0]} does not match {n_qubits} qubits")
    if not 0 <= qubit < n_qubits:
        raise IndexError(f"qubit {qubit} out of range for {n_qubits} qubits")
    t = m.reshape([2] * (2 * n_qubits))
    t = np.swapaxes(t, qubit, n_qubits + qubit)
    return t.reshape(m.shape)


def validate_label(label: str) -> str:
    if len(label) < 1 or any(ch not in PAULI for ch in label):
        raise ValueError(f"invalid Pauli label {label!r}")
    return label


def pauli_operator(label: str) -> np.ndarray:
    return kron_all(PAULI[ch] for ch in validate_label(label))


def pauli_labels(n_qubits: int) -> list[str]:
    return ["".join(t) for t in itertools.product("IXYZ", repeat=n_qubits)]


def pauli_expand(m, n_qubits: int, cutoff: float = 1e-12) -> dict[str, float]:
    """Real Pauli-basis coefficients ``c_s = Tr(m P_s) / 2**n`` of a Hermitian matrix."""
    m = check_hermitian(m)
    if m.shape[0] != 2**n_qubits:
        raise ValueError(f"matrix dimension {m.shape[0]} does not match {n_qubits} qubits")
    dim = 2**n_qubits
    coeffs = {}
    for label in pauli_labels(n_qubits):
        # Tr(m P) = sum_ij m_ij P_ji
        c = np.sum(m * pauli_operator(label).T).real / dim
        if abs(c) >= cutoff:
            coeffs[label] = float(c)
    return coeffs


def pauli_sum(coeffs: dict[str, float]) -> np.ndarray:
    if not coeffs:
        raise ValueError("empty Pauli expansion")
    return sum(c * pauli_operator(label) for label, c in coeffs.items())
