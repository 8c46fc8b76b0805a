"""Dense complex matrix helpers for the 2x2 .. 8x8 matrices of a three-qubit register.

Matrices are plain complex ``numpy`` arrays. Functions that make sense on a
stack of matrices accept arrays of shape ``(..., n, n)``.

Qubit ordering is ``|q1 q2 q3>`` with qubit 1 as the most significant bit.
"""

from __future__ import annotations

import numpy as np

N_QUBITS = 3
DIM = 2**N_QUBITS

JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100
HERMITIAN_TOL = 1e-10

IDENTITY_2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)


def as_cmatrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim < 2:
        raise ValueError(f"expected a matrix, got array of shape {a.shape}")
    return a


def _require_square(a: np.ndarray) -> None:
    if a.shape[-1] != a.shape[-2]:
        raise ValueError(f"matrix must be square, got shape {a.shape[-2:]}")


def kron(a, b) -> np.ndarray:
    """Kronecker product; entry ``a[i, j] * b[k, l]`` lands at ``(i*rb + k, j*cb + l)``."""
    a = as_cmatrix(a)
    b = as_cmatrix(b)
    ra, ca = a.shape
    rb, cb = b.shape
    return np.einsum("ij,kl->ikjl", a, b).reshape(ra * rb, ca * cb)


def mat_mul(a, b) -> np.ndarray:
    a = as_cmatrix(a)
    b = as_cmatrix(b)
    if a.shape[-1] != b.shape[-2]:
        raise ValueError(f"shape mismatch: {a.shape} @ {b.shape}")
    return a @ b


def mat_dagger(a) -> np.ndarray:
    return np.conj(np.swapaxes(as_cmatrix(a), -1, -2))


def mat_trace(a) -> complex:
    a = as_cmatrix(a)
    _require_square(a)
    return np.trace(a, axis1=-2, axis2=-1)


def frobenius_dist(a, b) -> float:
    a = as_cmatrix(a)
    b = as_cmatrix(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return np.sqrt(np.sum(np.abs(a - b) ** 2, axis=(-2, -1)))


def hermiticity_error(a) -> float:
    """Largest entry of ``|A - A^dagger|`` (per matrix for stacks)."""
    a = as_cmatrix(a)
    return np.max(np.abs(a - mat_dagger(a)), axis=(-2, -1))


def hermitian_eigenvalues(m, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix (or stack) by cyclic complex Jacobi rotations.

    Pivots are visited row-major over the upper triangle. A matrix in a stack
    stops rotating once its off-diagonal Frobenius norm is below ``tol`` at
    the start of a sweep, so its result does not depend on what it is stacked
    with. Returns real eigenvalues sorted in descending order.
    """
    a = as_cmatrix(m)
    _require_square(a)
    err = np.max(hermiticity_error(a)) if a.size else 0.0
    if err > HERMITIAN_TOL:
        raise ValueError(f"matrix is not Hermitian (max |A - A^H| = {err:.3e})")

    batch_shape = a.shape[:-2]
    n = a.shape[-1]
    a = a.reshape((-1, n, n)).copy()
    a = 0.5 * (a + np.conj(np.swapaxes(a, -1, -2)))
    iu = np.triu_indices(n, 1)

    for _ in range(max_sweeps):
        off = np.sqrt(2.0 * np.sum(np.abs(a[:, iu[0], iu[1]]) ** 2, axis=-1))
        running = off >= tol
        if not np.any(running):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[:, p, q]
                r = np.abs(apq)
                # pivots this far below tol cannot affect convergence; dividing by them can overflow
                active = running & (r > tol * 1e-16)
                if not np.any(active):
                    continue
                safe_r = np.where(active, r, 1.0)
                phase = np.where(active, apq / safe_r, 1.0)
                theta = (a[:, q, q].real - a[:, p, p].real) / (2.0 * safe_r)
                sign = np.where(theta >= 0.0, 1.0, -1.0)
                t = np.where(active, sign / (np.abs(theta) + np.hypot(theta, 1.0)), 0.0)
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                cph = np.conj(phase)

                col_p = a[:, :, p].copy()
                col_q = a[:, :, q]
                a[:, :, p] = c[:, None] * col_p - (s * cph)[:, None] * col_q
                a[:, :, q] = s[:, None] * col_p + (c * cph)[:, None] * col_q

                row_p = a[:, p, :].copy()
                row_q = a[:, q, :]
                a[:, p, :] = c[:, None] * row_p - (s * phase)[:, None] * row_q
                a[:, q, :] = s[:, None] * row_p + (c * phase)[:, None] * row_q

                a[active, p, q] = 0.0
                a[active, q, p] = 0.0

    eig = np.real(np.diagonal(a, axis1=-2, axis2=-1))
    eig = -np.sort(-eig, axis=-1)
    return eig.reshape(batch_shape + (n,))


def _qubit_axes(subsystem) -> list[int]:
    qubits = [subsystem] if np.isscalar(subsystem) else list(subsystem)
    for k in qubits:
        if not isinstance(k, (int, np.integer)) or not 0 <= k < N_QUBITS:
            raise ValueError(f"invalid qubit index {k!r}; expected 0, 1 or 2")
    return qubits


def partial_transpose(rho, subsystem) -> np.ndarray:
    """Transpose the indices of the selected qubit(s) of an 8x8 matrix (or stack).

    ``subsystem`` is a 0-based qubit index or an iterable of indices.
    """
    rho = as_cmatrix(rho)
    if rho.shape[-2:] != (DIM, DIM):
        raise ValueError(f"partial transpose needs {DIM}x{DIM} input, got {rho.shape[-2:]}")
    qubits = _qubit_axes(subsystem)
    lead = rho.shape[:-2]
    nb = len(lead)
    t = rho.reshape(lead + (2,) * (2 * N_QUBITS))
    axes = list(range(t.ndim))
    for k in qubits:
        row, col = nb + k, nb + N_QUBITS + k
        axes[row], axes[col] = axes[col], axes[row]
    return t.transpose(axes).reshape(rho.shape)


def permute_qubits(rho, order) -> np.ndarray:
    """Relabel qubits: output qubit ``j`` is input qubit ``order[j]``."""
    rho = as_cmatrix(rho)
    order = list(order)
    if sorted(order) != list(range(N_QUBITS)):
        raise ValueError(f"not a permutation of the three qubits: {order}")
    lead = rho.shape[:-2]
    nb = len(lead)
    t = rho.reshape(lead + (2,) * (2 * N_QUBITS))
    axes = list(range(nb)) + [nb + k for k in order] + [nb + N_QUBITS + k for k in order]
    return t.transpose(axes).reshape(rho.shape)
