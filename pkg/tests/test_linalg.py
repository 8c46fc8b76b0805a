import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_hermitian, random_qubit_unitary
from ghz_noise import linalg
from ghz_noise.dynamics import GHZ_PROJECTOR, initial_state
from ghz_noise.linalg import (
    IDENTITY_2,
    PAULI_X,
    frobenius_dist,
    hermitian_eigenvalues,
    kron,
    mat_dagger,
    mat_mul,
    mat_trace,
    partial_transpose,
)


def kron_by_index(a, b):
    ra, ca = a.shape
    rb, cb = b.shape
    out = np.zeros((ra * rb, ca * cb), dtype=complex)
    for i in range(ra):
        for j in range(ca):
            for k in range(rb):
                for l in range(cb):
                    out[i * rb + k, j * cb + l] = a[i, j] * b[k, l]
    return out


def exact_eigenvalues(m):
    """Roots of the exact characteristic polynomial (sympy, rational entries)."""
    mat = sympy.Matrix(m.shape[0], m.shape[1], lambda i, j: sympy.nsimplify(m[i, j].real, rational=True))
    roots = sympy.roots(mat.charpoly().as_expr())
    values = []
    for root, mult in roots.items():
        values += [float(root)] * mult
    return sorted(values, reverse=True)


def test_kron_identity():
    assert np.array_equal(kron(IDENTITY_2, IDENTITY_2), np.eye(4))


def test_kron_bit_flip_on_first_qubit():
    ket00 = np.array([1, 0, 0, 0])
    assert np.array_equal(kron(PAULI_X, IDENTITY_2) @ ket00, [0, 0, 1, 0])


def test_kron_matches_index_formula_and_is_associative(rng):
    a, b, c = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(3))
    assert np.allclose(kron(a, b), kron_by_index(a, b), atol=0)
    assert np.allclose(kron(kron(a, b), c), kron(a, kron(b, c)), atol=1e-14)
    rect = rng.normal(size=(2, 3))
    assert np.allclose(kron(rect, b), kron_by_index(rect, b.astype(complex)))


def test_kron_bilinear(rng):
    a, b, c = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(3))
    assert np.allclose(kron(a + b, c), kron(a, c) + kron(b, c), atol=1e-14)


@pytest.mark.parametrize(
    "m, expected",
    [
        (np.diag([3.0, 1.0, 2.0]), [3.0, 2.0, 1.0]),
        (PAULI_X, [1.0, -1.0]),
        (np.array([[0, -1j], [1j, 0]]), [1.0, -1.0]),
        (np.diag([1.0, -1.0]), [1.0, -1.0]),
    ],
)
def test_eigenvalues_known_spectra(m, expected):
    assert np.allclose(hermitian_eigenvalues(m), expected, atol=1e-12, rtol=0)


def test_ghz_projector_spectrum():
    assert np.allclose(hermitian_eigenvalues(GHZ_PROJECTOR), [1] + [0] * 7, atol=1e-12)


def test_ghz_partial_transpose_has_single_negative_eigenvalue():
    pt = partial_transpose(GHZ_PROJECTOR, 0)
    eig = hermitian_eigenvalues(pt)
    assert np.allclose(eig, exact_eigenvalues(pt), atol=1e-12)
    negative = eig[eig < -1e-12]
    assert len(negative) == 1
    assert negative[0] == pytest.approx(-0.5, abs=1e-12)


@pytest.mark.parametrize("p", [0.0, 0.1, 0.2, 0.35, 0.5, 0.8, 1.0])
def test_min_pt_eigenvalue_of_werner_state(p):
    pt = partial_transpose(initial_state(p), 0)
    exact = exact_eigenvalues(pt)
    assert exact[-1] == pytest.approx((1 - 5 * p) / 8, abs=1e-12)
    assert hermitian_eigenvalues(pt)[-1] == pytest.approx((1 - 5 * p) / 8, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_eigenvalues_agree_with_lapack(n, seed):
    m = random_hermitian(np.random.default_rng(seed), n)
    eig = hermitian_eigenvalues(m)
    assert np.all(np.diff(eig) <= 0)
    assert np.allclose(eig, np.linalg.eigvalsh(m)[::-1], atol=1e-11)
    assert abs(eig.sum() - np.trace(m).real) < 1e-10


def test_eigenvalues_batch_matches_single(rng):
    stack = np.stack([random_hermitian(rng) for _ in range(5)] + [np.diag(np.arange(8.0))])
    batch = hermitian_eigenvalues(stack)
    for i, m in enumerate(stack):
        assert np.array_equal(batch[i], hermitian_eigenvalues(m))


def test_eigenvalues_reject_bad_input():
    with pytest.raises(ValueError, match="square"):
        hermitian_eigenvalues(np.zeros((2, 3)))
    with pytest.raises(ValueError, match="Hermitian"):
        hermitian_eigenvalues(np.array([[0, 1], [0, 0]]))


def test_eigenvalues_handle_subnormal_offdiagonal():
    m = np.diag([0.5, 0.25]).astype(complex)
    m[0, 1] = m[1, 0] = 1e-310
    assert np.allclose(hermitian_eigenvalues(m), [0.5, 0.25])


def test_partial_transpose_of_identity():
    for k in range(3):
        assert np.array_equal(partial_transpose(np.eye(8) / 8, k), np.eye(8) / 8)


def test_partial_transpose_is_explicit_index_swap(rng):
    m = random_hermitian(rng)
    for k in range(3):
        shift = 2 - k
        expected = np.empty_like(m)
        for i in range(8):
            for j in range(8):
                bi, bj = (i >> shift) & 1, (j >> shift) & 1
                i2 = i ^ ((bi ^ bj) << shift)
                j2 = j ^ ((bi ^ bj) << shift)
                expected[i2, j2] = m[i, j]
        assert np.array_equal(partial_transpose(m, k), expected)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([0, 1, 2, (0, 1), (1, 2)]))
def test_partial_transpose_properties(seed, sub):
    m = random_hermitian(np.random.default_rng(seed))
    pt = partial_transpose(m, sub)
    assert np.array_equal(partial_transpose(pt, sub), m)
    assert mat_trace(pt) == mat_trace(m)
    assert linalg.hermiticity_error(pt) < 1e-12


def test_partial_transpose_rejects_bad_qubit():
    with pytest.raises(ValueError):
        partial_transpose(np.eye(8), 3)
    with pytest.raises(ValueError):
        partial_transpose(np.eye(4), 0)


def test_plumbing(rng):
    assert mat_trace(np.eye(8)) == 8
    u = kron(kron(random_qubit_unitary(rng), random_qubit_unitary(rng)), random_qubit_unitary(rng))
    assert np.allclose(mat_mul(u, mat_dagger(u)), np.eye(8), atol=1e-12)
    m = random_hermitian(rng)
    assert frobenius_dist(m, m) == 0
    assert frobenius_dist(m, m + 1e-3) > 0
    with pytest.raises(ValueError):
        mat_mul(np.eye(2), np.eye(3))
    with pytest.raises(ValueError):
        frobenius_dist(np.eye(2), np.eye(3))
    with pytest.raises(ValueError):
        mat_trace(np.zeros((2, 3)))


def test_permute_qubits_is_relabeling():
    a, b = np.diag([1.0, 2.0]), PAULI_X
    m = kron(kron(a, b), IDENTITY_2)
    assert np.array_equal(linalg.permute_qubits(m, (1, 0, 2)), kron(kron(b, a), IDENTITY_2))
    assert np.array_equal(linalg.permute_qubits(m, (0, 2, 1)), kron(kron(a, IDENTITY_2), b))
