"""Entanglement and coherence measures for three-qubit density matrices.

All functions accept a single 8x8 matrix or a stack of shape ``(..., 8, 8)``
and return a float or an array over the leading axes.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .dynamics import GHZ_PROJECTOR
from .linalg import DIM, N_QUBITS

ZERO_EIG_TOL = 1e-10
NEGATIVITY_FLOOR = 1e-12
STATE_TRACE_TOL = 1e-8


class WitnessChoice(enum.Enum):
    """Witness operators ``threshold * I - |GHZ><GHZ|``."""

    E1 = 1 / 2
    E2 = 2 / 3
    E3 = 3 / 4

    @property
    def threshold(self) -> float:
        return self.value

    def operator(self) -> np.ndarray:
        return self.threshold * np.eye(DIM, dtype=complex) - GHZ_PROJECTOR


def _as_state(rho) -> np.ndarray:
    rho = linalg.as_cmatrix(rho)
    if rho.shape[-2:] != (DIM, DIM):
        raise ValueError(f"expected {DIM}x{DIM} density matrix, got shape {rho.shape[-2:]}")
    tr = linalg.mat_trace(rho)
    if np.any(np.abs(tr - 1.0) > STATE_TRACE_TOL):
        raise ValueError("input is not a density matrix: trace differs from 1")
    return rho


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def _clamped_spectrum(rho) -> np.ndarray:
    eig = linalg.hermitian_eigenvalues(rho)
    return np.where(np.abs(eig) < ZERO_EIG_TOL, 0.0, eig)


def bipartite_negativity(rho, part: int):
    """``sum_i |lambda_i(rho^{T_part})| - 1`` for the cut ``part | rest``."""
    rho = _as_state(rho)
    if not isinstance(part, (int, np.integer)) or not 0 <= part < N_QUBITS:
        raise ValueError(f"invalid qubit index {part!r}")
    eig = _clamped_spectrum(linalg.partial_transpose(rho, part))
    value = np.sum(np.abs(eig), axis=-1) - 1.0
    return _scalar(np.where(value < NEGATIVITY_FLOOR, 0.0, value))


def negativity(rho):
    """Geometric mean of the three single-qubit-cut negativities."""
    rho = _as_state(rho)
    factors = np.stack([np.asarray(bipartite_negativity(rho, k)) for k in range(N_QUBITS)])
    return _scalar(np.cbrt(np.prod(factors, axis=0)))


def entanglement_witness(rho, choice: WitnessChoice = WitnessChoice.E1):
    """``-Tr[W rho]``; positive values certify entanglement."""
    rho = _as_state(rho)
    w = choice.operator()
    return _scalar(-np.real(np.einsum("ij,...ji->...", w, rho)))


def purity(rho):
    """``Tr[rho^2]``, between 1/8 and 1."""
    rho = _as_state(rho)
    return _scalar(np.real(np.einsum("...ij,...ji->...", rho, rho)))


def entropy(rho):
    """Von Neumann entropy in nats, ``0 log 0 = 0``."""
    rho = _as_state(rho)
    eig = np.clip(_clamped_spectrum(rho), 0.0, None)
    safe = np.where(eig > 0.0, eig, 1.0)
    # a rank-1 state can carry an eigenvalue a rounding step above 1
    return _scalar(np.maximum(-np.sum(eig * np.log(safe), axis=-1), 0.0))


@dataclass(frozen=True)
class MeasurePanel:
    negativity: float
    witness_value: float
    purity: float
    entropy: float


def panel(rho, choice: WitnessChoice = WitnessChoice.E1) -> MeasurePanel:
    return MeasurePanel(
        negativity=negativity(rho),
        witness_value=entanglement_witness(rho, choice),
        purity=purity(rho),
        entropy=entropy(rho),
    )


MEASURES = {
    "negativity": negativity,
    "ew1": lambda rho: entanglement_witness(rho, WitnessChoice.E1),
    "ew2": lambda rho: entanglement_witness(rho, WitnessChoice.E2),
    "ew3": lambda rho: entanglement_witness(rho, WitnessChoice.E3),
    "purity": purity,
    "entropy": entropy,
}

MAX_ENTROPY = math.log(DIM)
