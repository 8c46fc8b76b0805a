"""Three-qubit GHZ-Werner state under local classical fields, with and without noise.

Each qubit evolves under ``delta I + lambda Delta_k sigma_x``, so the single-qubit
propagator is ``exp(-i delta t) [cos(phi) I - i sin(phi) sigma_x]``. In the noisy
topologies the rotation angle ``phi`` of each environment is a zero-mean Gaussian
phase with variance ``beta(tau)`` and the state is averaged over it.

Three engines compute the average:

* :func:`averaged_state` expands U rho U^dagger in ``exp(i n phi)`` harmonics and
  replaces each harmonic by the Gaussian characteristic function (exact).
* :func:`averaged_state_gh` uses Gauss-Hermite quadrature per environment.
* :func:`averaged_state_mc` averages over sampled phases.
"""

from __future__ import annotations

import enum
import functools
import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import linalg
from .linalg import DIM, IDENTITY_2, N_QUBITS, PAULI_X
from .noise import PowerLawParams, beta_closed, char_fn, sample_phases

MC_CHUNK = 4096

GHZ_VECTOR = np.zeros(DIM, dtype=complex)
GHZ_VECTOR[0] = GHZ_VECTOR[-1] = 1.0 / math.sqrt(2.0)
GHZ_PROJECTOR = np.outer(GHZ_VECTOR, GHZ_VECTOR.conj())


class Topology(enum.Enum):
    """How the three qubits share noise sources.

    ``groups[k]`` is the index of the environment phase seen by qubit ``k``.
    """

    COM = "com"
    BIP = "bip"
    TRI = "tri"
    LOCAL = "local"

    @property
    def groups(self) -> tuple[int, ...]:
        return _GROUPS[self]

    @property
    def n_phases(self) -> int:
        return len(set(self.groups))

    @classmethod
    def parse(cls, value) -> "Topology":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ValueError(f"unknown topology {value!r}; expected one of com, bip, tri, local") from None


_GROUPS = {
    Topology.COM: (0, 0, 0),
    Topology.BIP: (0, 0, 1),  # qubits 1 and 2 share a phase
    Topology.TRI: (0, 1, 2),
    Topology.LOCAL: (),
}

NOISY_TOPOLOGIES = (Topology.COM, Topology.BIP, Topology.TRI)


@dataclass(frozen=True)
class LocalField:
    """Deterministic field amplitudes for the noiseless evolution."""

    delta_a: float = 1.0
    delta_b: float = 1.0
    delta_c: float = 1.0
    lam: float = 1.0
    energy_split: float = 0.0

    def __post_init__(self):
        if self.lam < 0:
            raise ValueError(f"coupling lambda must be >= 0, got {self.lam}")

    @property
    def deltas(self) -> tuple[float, float, float]:
        return (self.delta_a, self.delta_b, self.delta_c)


def _check_p(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"purity factor p must lie in [0, 1], got {p}")


def initial_state(p: float) -> np.ndarray:
    """``p |GHZ><GHZ| + (1 - p) I/8``."""
    _check_p(p)
    return p * GHZ_PROJECTOR + (1.0 - p) / DIM * np.eye(DIM, dtype=complex)


def single_qubit_unitary(phase: float, split_phase: float = 0.0) -> np.ndarray:
    """``exp(-i split_phase) [cos(phase) I - i sin(phase) sigma_x]``."""
    return np.exp(-1j * split_phase) * (math.cos(phase) * IDENTITY_2 - 1j * math.sin(phase) * PAULI_X)


def _batched_single_unitaries(phases: np.ndarray) -> np.ndarray:
    """Shape ``(N, 2, 2)`` stack of ``cos(phi) I - i sin(phi) sigma_x``."""
    c = np.cos(phases)[:, None, None]
    s = np.sin(phases)[:, None, None]
    return c * IDENTITY_2 - 1j * s * PAULI_X


def _batched_register_unitaries(per_qubit: list[np.ndarray]) -> np.ndarray:
    u1, u2, u3 = per_qubit
    n = u1.shape[0]
    return np.einsum("nab,ncd,nef->nacebdf", u1, u2, u3).reshape(n, DIM, DIM)


def evolve_local(p: float, fields: LocalField, t: float) -> np.ndarray:
    """Noiseless evolution ``U rho0 U^dagger`` with per-qubit rotation angle ``lambda Delta_k t``."""
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    split = fields.energy_split * t
    u = np.eye(1, dtype=complex)
    for d in fields.deltas:
        u = linalg.kron(u, single_qubit_unitary(fields.lam * d * t, split))
    rho0 = initial_state(p)
    return u @ rho0 @ u.conj().T


def evolve_local_grid(p: float, fields: LocalField, times) -> np.ndarray:
    """Vectorized :func:`evolve_local` over a grid of times; shape ``(len(times), 8, 8)``."""
    times = np.asarray(times, dtype=float)
    if np.any(times < 0):
        raise ValueError("times must be >= 0")
    units = [_batched_single_unitaries(fields.lam * d * times) for d in fields.deltas]
    u = _batched_register_unitaries(units)
    rho0 = initial_state(p)
    # energy splitting only contributes a global phase, which cancels here
    return u @ rho0 @ np.conj(np.swapaxes(u, -1, -2))


class PhasePolynomial:
    """Matrix-valued trigonometric polynomial ``sum_n C_n exp(i (n1 phi1 + n2 phi2 + n3 phi3))``.

    Each coefficient ``C_n`` is an 8x8 matrix, i.e. one complex Laurent
    coefficient per matrix element.
    """

    def __init__(self, terms: dict[tuple[int, int, int], np.ndarray]):
        self.terms = {k: np.asarray(v, dtype=complex) for k, v in terms.items()}

    @classmethod
    def conjugation(cls, rho) -> "PhasePolynomial":
        """Expansion of ``U(phi) rho U(phi)^dagger`` for ``U = U(phi1) x U(phi2) x U(phi3)``.

        Uses ``cos(phi) I - i sin(phi) X = e^{i phi} (I - X)/2 + e^{-i phi} (I + X)/2``.
        """
        rho = linalg.as_cmatrix(rho)
        proj = {+1: 0.5 * (IDENTITY_2 - PAULI_X), -1: 0.5 * (IDENTITY_2 + PAULI_X)}
        signs = list(itertools.product((1, -1), repeat=N_QUBITS))
        ops = {s: linalg.kron(linalg.kron(proj[s[0]], proj[s[1]]), proj[s[2]]) for s in signs}
        terms: dict[tuple[int, int, int], np.ndarray] = {}
        for s in signs:
            left = ops[s] @ rho
            for t in signs:
                key = tuple(si - ti for si, ti in zip(s, t))
                contribution = left @ ops[t]  # projectors are Hermitian
                if key in terms:
                    terms[key] = terms[key] + contribution
                else:
                    terms[key] = contribution
        return cls(terms)

    def evaluate(self, phases) -> np.ndarray:
        phases = np.asarray(phases, dtype=float)
        out = np.zeros((DIM, DIM), dtype=complex)
        for n, coeff in self.terms.items():
            out += np.exp(1j * float(np.dot(n, phases))) * coeff
        return out

    def gaussian_average(self, beta: float, groups) -> np.ndarray:
        """Average over independent zero-mean Gaussian phases of variance ``beta``.

        Qubits with the same entry in ``groups`` share one phase; their exponents add.
        """
        n_groups = max(groups) + 1
        out = np.zeros((DIM, DIM), dtype=complex)
        for n, coeff in self.terms.items():
            summed = [0] * n_groups
            for k, gk in enumerate(groups):
                summed[gk] += n[k]
            factor = 1.0
            for m in summed:
                factor *= char_fn(m, beta)
            out += factor * coeff
        return out


@functools.lru_cache(maxsize=64)
def _conjugation_polynomial(p: float) -> PhasePolynomial:
    return PhasePolynomial.conjugation(initial_state(p))


def _noisy(topology) -> Topology:
    topology = Topology.parse(topology)
    if topology is Topology.LOCAL:
        raise ValueError("LOCAL topology is deterministic; use evolve_local")
    return topology


def averaged_state(p: float, tau: float, noise: PowerLawParams, topology) -> np.ndarray:
    """Exact noise-averaged state for COM, BIP or TRI at time ``tau``."""
    _check_p(p)
    topology = _noisy(topology)
    beta = beta_closed(tau, noise)
    return _conjugation_polynomial(float(p)).gaussian_average(beta, topology.groups)


def averaged_state_from_beta(p: float, beta: float, topology) -> np.ndarray:
    _check_p(p)
    if beta < 0:
        raise ValueError(f"beta must be >= 0, got {beta}")
    return _conjugation_polynomial(float(p)).gaussian_average(beta, _noisy(topology).groups)


def _apply_group_channel(rho: np.ndarray, qubits: list[int], phases: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """``sum_j w_j V_j rho V_j^dagger`` where ``V_j`` rotates ``qubits`` by ``phases[j]``."""
    single = _batched_single_unitaries(phases)
    eye = np.broadcast_to(IDENTITY_2, single.shape)
    per_qubit = [single if k in qubits else eye for k in range(N_QUBITS)]
    v = _batched_register_unitaries(per_qubit)
    terms = v @ rho @ np.conj(np.swapaxes(v, -1, -2))
    return np.tensordot(weights, terms, axes=1)


def averaged_state_gh(p: float, tau: float, noise: PowerLawParams, topology, nodes: int = 64) -> np.ndarray:
    """Noise average by Gauss-Hermite quadrature with ``nodes`` points per environment.

    The integrand factorizes over environments, so the tensor-product grid is
    applied one environment at a time. With 64 nodes the rule is exact to
    rounding up to beta of a few units and degrades beyond ``beta ~ 10``,
    where the highest harmonic oscillates faster than the nodes resolve.
    """
    if nodes < 2:
        raise ValueError(f"need at least 2 quadrature nodes, got {nodes}")
    _check_p(p)
    topology = _noisy(topology)
    beta = beta_closed(tau, noise)
    rho = initial_state(p)
    if beta == 0.0:
        return rho
    x, w = np.polynomial.hermite.hermgauss(nodes)
    phases = math.sqrt(2.0 * beta) * x
    weights = w / math.sqrt(math.pi)
    groups = topology.groups
    for gid in sorted(set(groups)):
        qubits = [k for k, gk in enumerate(groups) if gk == gid]
        rho = _apply_group_channel(rho, qubits, phases, weights)
    return rho


def _mc_chunk(rho0: np.ndarray, beta: float, groups, size: int, seed_seq: np.random.SeedSequence) -> np.ndarray:
    rng = np.random.default_rng(seed_seq)
    n_groups = max(groups) + 1
    draws = [sample_phases(beta, rng, size) for _ in range(n_groups)]
    per_qubit = [_batched_single_unitaries(draws[gk]) for gk in groups]
    u = _batched_register_unitaries(per_qubit)
    return np.sum(u @ rho0 @ np.conj(np.swapaxes(u, -1, -2)), axis=0)


def averaged_state_mc(
    p: float,
    tau: float,
    noise: PowerLawParams,
    topology,
    samples: int = 100_000,
    seed: int = 42,
    workers: int = 1,
) -> np.ndarray:
    """Monte Carlo noise average.

    The sample budget is cut into fixed chunks of ``MC_CHUNK`` draws, each with
    its own child seed of ``seed``. Chunk sums are reduced in chunk order, so
    the result does not depend on ``workers``.
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    _check_p(p)
    topology = _noisy(topology)
    beta = beta_closed(tau, noise)
    rho0 = initial_state(p)
    if beta == 0.0:
        return rho0

    n_chunks = -(-samples // MC_CHUNK)
    sizes = [MC_CHUNK] * (n_chunks - 1) + [samples - MC_CHUNK * (n_chunks - 1)]
    children = np.random.SeedSequence(seed).spawn(n_chunks)
    args = [(rho0, beta, topology.groups, size, child) for size, child in zip(sizes, children)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(lambda a: _mc_chunk(*a), args))
    else:
        partials = [_mc_chunk(*a) for a in args]
    total = np.zeros((DIM, DIM), dtype=complex)
    for part in partials:
        total += part
    return total / samples


def state_violations(rho, herm_tol: float = 1e-12, trace_tol: float = 1e-12, psd_tol: float = 1e-10) -> list[str]:
    """Human-readable list of density-matrix property violations (empty if valid)."""
    rho = linalg.as_cmatrix(rho)
    problems = []
    if rho.shape != (DIM, DIM):
        return [f"shape {rho.shape} is not ({DIM}, {DIM})"]
    herm = float(linalg.hermiticity_error(rho))
    if herm > herm_tol:
        problems.append(f"not Hermitian: max |rho - rho^H| = {herm:.3e}")
    tr = complex(linalg.mat_trace(rho))
    if abs(tr - 1.0) > trace_tol:
        problems.append(f"trace {tr} differs from 1")
    if herm <= linalg.HERMITIAN_TOL:
        lo = float(linalg.hermitian_eigenvalues(rho)[-1])
        if lo < -psd_tol:
            problems.append(f"not PSD: min eigenvalue {lo:.3e}")
    return problems
