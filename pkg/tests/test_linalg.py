import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra import numpy as hnp

from conftest import random_hermitian
from pmap_gme.linalg import (
    PAULI,
    NotHermitianError,
    hermitian_eigenvalues,
    jacobi_eigenvalues,
    kron,
    partial_transpose,
    pauli_expand,
    pauli_operator,
    pauli_sum,
)
from pmap_gme.states import bell_state, qubit_from_bloch

finite = st.floats(-3, 3, allow_nan=False, allow_infinity=False)


def complex_matrices(dim):
    return hnp.arrays(np.float64, (2, dim, dim), elements=finite).map(lambda a: a[0] + 1j * a[1])


def hermitian_matrices(dim):
    return complex_matrices(dim).map(lambda g: (g + g.conj().T) / 2)


def kron_oracle(a, b):
    p, q = b.shape
    out = np.zeros((a.shape[0] * p, a.shape[1] * q), dtype=complex)
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            for k in range(p):
                for l in range(q):
                    out[i * p + k, j * q + l] = a[i, j] * b[k, l]
    return out


def test_kron_identity():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_zz():
    assert np.array_equal(kron(PAULI["Z"], PAULI["Z"]), np.diag([1, -1, -1, 1]))


def test_kron_matches_index_formula(rng):
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    b = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    assert np.allclose(kron(a, b), kron_oracle(a, b), atol=1e-15, rtol=0)


@given(complex_matrices(2), complex_matrices(2), complex_matrices(2))
def test_kron_associative(a, b, c):
    assert np.allclose(kron(kron(a, b), c), kron(a, kron(b, c)), atol=1e-12, rtol=0)


def test_eigenvalues_of_diagonal():
    assert np.allclose(hermitian_eigenvalues(np.diag([3.0, 1.0, 2.0])), [1, 2, 3])


@pytest.mark.parametrize("method", ["lapack", "jacobi"])
def test_choi_of_projection_spectrum(method):
    choi = np.array([[1, 0, 0, 2], [0, 1, 0, 0], [0, 0, 1, 0], [2, 0, 0, 1]]) / 4
    assert np.allclose(hermitian_eigenvalues(choi, method=method), [-0.25, 0.25, 0.25, 0.75],
                       atol=1e-12)


@pytest.mark.parametrize("method", ["lapack", "jacobi"])
def test_two_by_two_against_quadratic_formula(rng, method):
    for _ in range(20):
        m = random_hermitian(rng, 2)
        a, d, b = m[0, 0].real, m[1, 1].real, m[0, 1]
        disc = np.sqrt((a - d) ** 2 + 4 * abs(b) ** 2)
        expected = [(a + d - disc) / 2, (a + d + disc) / 2]
        assert np.allclose(hermitian_eigenvalues(m, method=method), expected, atol=1e-12)


def test_non_hermitian_rejected_with_pair():
    m = np.zeros((3, 3), dtype=complex)
    m[0, 2] = 1e-6
    with pytest.raises(NotHermitianError) as info:
        hermitian_eigenvalues(m)
    assert set(info.value.pair) == {0, 2}
    assert "m[" in str(info.value)


def test_hermitian_tolerance_is_tight():
    m = np.eye(2, dtype=complex)
    m[0, 1] = 5e-13
    hermitian_eigenvalues(m)
    m[0, 1] = 2e-12
    with pytest.raises(NotHermitianError):
        hermitian_eigenvalues(m)


def test_eigenvalues_deterministic(rng):
    m = random_hermitian(rng, 8)
    assert np.array_equal(hermitian_eigenvalues(m), hermitian_eigenvalues(m.copy()))


@pytest.mark.parametrize("dim", [2, 3, 5, 8, 16])
def test_jacobi_agrees_with_lapack(rng, dim):
    m = random_hermitian(rng, dim)
    scale = np.linalg.norm(m)
    assert np.allclose(jacobi_eigenvalues(m), np.linalg.eigvalsh(m), atol=1e-10 * scale, rtol=0)


@given(st.sampled_from([2, 4, 8, 16]).flatmap(hermitian_matrices))
def test_eigenvalue_trace_identities(m):
    lam = hermitian_eigenvalues(m)
    assert abs(lam.sum() - np.trace(m).real) <= 1e-9
    assert abs((lam**2).sum() - np.trace(m @ m).real) <= 1e-9


@given(hermitian_matrices(8), st.integers(0, 2))
def test_partial_transpose_involution_trace_hermiticity(m, q):
    pt = partial_transpose(m, q, 3)
    assert np.array_equal(partial_transpose(pt, q, 3), m)
    assert abs(np.trace(pt) - np.trace(m)) < 1e-12
    assert np.allclose(pt, pt.conj().T, atol=1e-12)


def test_partial_transpose_of_product():
    r1 = qubit_from_bloch([0.3, -0.2, 0.5]).matrix
    r2 = qubit_from_bloch([0.1, 0.6, -0.4]).matrix
    pt = partial_transpose(kron(r1, r2), 1, 2)
    assert np.allclose(pt, kron(r1, r2.T))
    assert np.linalg.eigvalsh(pt)[0] >= -1e-12


def test_partial_transpose_of_bell_pair():
    pt = partial_transpose(bell_state().matrix, 1, 2)
    # brute force: rebuild the transposed matrix entry by entry
    b = bell_state().matrix
    manual = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    manual[2 * i + k, 2 * j + l] = b[2 * i + l, 2 * j + k]
    assert np.array_equal(pt, manual)
    assert np.isclose(np.linalg.eigvalsh(manual)[0], -0.5)


def test_partial_transpose_index_errors():
    with pytest.raises(IndexError):
        partial_transpose(np.eye(4), 2, 2)
    with pytest.raises(ValueError):
        partial_transpose(np.eye(4), 0, 3)


def test_pauli_operator_examples():
    assert np.array_equal(pauli_operator("I"), np.eye(2))
    assert np.array_equal(pauli_operator("ZZ"), np.diag([1, -1, -1, 1]))
    expected = kron(kron(PAULI["X"], PAULI["Y"]), PAULI["Z"])
    assert np.array_equal(pauli_operator("XYZ"), expected)


@pytest.mark.parametrize("label", ["X", "YZ", "XYZ", "IZXY"])
def test_pauli_operator_hermitian_unitary(label):
    p = pauli_operator(label)
    assert np.allclose(p, p.conj().T)
    assert np.allclose(p @ p.conj().T, np.eye(p.shape[0]))


@pytest.mark.parametrize("label", ["", "XA", "xyz"])
def test_pauli_operator_rejects_bad_labels(label):
    with pytest.raises(ValueError):
        pauli_operator(label)


def test_pauli_expand_identity():
    assert pauli_expand(np.eye(8), 3) == {"III": 1.0}


def test_pauli_expand_rejects_non_hermitian():
    with pytest.raises(ValueError):
        pauli_expand(np.array([[0, 1], [0, 0]]), 1)


@given(st.integers(1, 4).flatmap(lambda n: hermitian_matrices(2**n)))
def test_pauli_round_trip(m):
    n = m.shape[0].bit_length() - 1
    coeffs = pauli_expand(m, n, cutoff=0.0)
    assert np.allclose(pauli_sum(coeffs), m, atol=1e-10, rtol=0)
