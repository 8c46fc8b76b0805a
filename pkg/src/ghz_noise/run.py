"""Evaluate measures over a tau grid for a single configuration or a parameter sweep."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import dynamics
from .config import RunConfig
from .dynamics import LocalField, Topology
from .measures import MEASURES

# Fixed task size: the work split never depends on the worker count.
TAU_CHUNK = 50
SWEEP_AXES = ("p", "g", "alpha", "lambda")


@dataclass(frozen=True)
class SweepRecord:
    tau: float
    topology: str
    p: float
    g: float
    alpha: float
    values: dict[str, float]
    lam: float | None = None  # only reported for lambda sweeps

    def as_dict(self) -> dict:
        row = {"tau": self.tau, "topology": self.topology, "p": self.p, "g": self.g, "alpha": self.alpha}
        if self.lam is not None:
            row["lambda"] = self.lam
        row.update(self.values)
        return row


def tau_grid(cfg: RunConfig) -> np.ndarray:
    return np.linspace(0.0, cfg.tau_max, cfg.tau_steps)


def states_on_grid(cfg: RunConfig, taus, seed_prefix: tuple[int, ...] = (), offset: int = 0) -> np.ndarray:
    """Density matrices at each ``tau``; shape ``(len(taus), 8, 8)``.

    For the ``mc`` engine the point with global grid index ``i`` uses the seed
    ``(cfg.seed, *seed_prefix, i)``.
    """
    taus = np.asarray(taus, dtype=float)
    if cfg.topology is Topology.LOCAL:
        fields = LocalField(cfg.delta_a, cfg.delta_b, cfg.delta_c, lam=cfg.lam)
        return dynamics.evolve_local_grid(cfg.p, fields, taus)
    noise = cfg.noise
    if cfg.engine == "fourier":
        states = [dynamics.averaged_state(cfg.p, t, noise, cfg.topology) for t in taus]
    elif cfg.engine == "gh":
        states = [dynamics.averaged_state_gh(cfg.p, t, noise, cfg.topology) for t in taus]
    else:
        states = [
            dynamics.averaged_state_mc(
                cfg.p, t, noise, cfg.topology, samples=cfg.mc_samples, seed=(cfg.seed, *seed_prefix, offset + i)
            )
            for i, t in enumerate(taus)
        ]
    return np.stack(states)


def _evaluate(task) -> list[SweepRecord]:
    cfg, start, stop, seed_prefix, tag_lambda = task
    taus = tau_grid(cfg)[start:stop]
    states = states_on_grid(cfg, taus, seed_prefix, offset=start)
    columns = {name: np.atleast_1d(MEASURES[name](states)) for name in cfg.measures}
    return [
        SweepRecord(
            tau=float(t),
            topology=cfg.topology.value,
            p=cfg.p,
            g=cfg.g,
            alpha=cfg.alpha,
            values={name: float(col[i]) for name, col in columns.items()},
            lam=cfg.lam if tag_lambda else None,
        )
        for i, t in enumerate(taus)
    ]


def _tasks(cfg: RunConfig, seed_prefix=(), tag_lambda=False):
    return [
        (cfg, start, min(start + TAU_CHUNK, cfg.tau_steps), seed_prefix, tag_lambda)
        for start in range(0, cfg.tau_steps, TAU_CHUNK)
    ]


def _execute(tasks, workers: int) -> list[SweepRecord]:
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_evaluate, tasks))
    else:
        chunks = [_evaluate(t) for t in tasks]
    return [rec for chunk in chunks for rec in chunk]


def run_evolve(cfg: RunConfig, workers: int = 1) -> list[SweepRecord]:
    return _execute(_tasks(cfg), workers)


def parse_values(text: str) -> list[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ValueError(f"cannot parse sweep values {text!r}") from None
    if not values:
        raise ValueError("no sweep values given")
    return values


def run_sweep(cfg: RunConfig, axis: str, values, workers: int = 1) -> list[SweepRecord]:
    """Cross product of the tau grid with ``values`` of ``axis``; ordered by (value, tau)."""
    if axis not in SWEEP_AXES:
        raise ValueError(f"invalid sweep axis {axis!r}; expected one of {', '.join(SWEEP_AXES)}")
    tasks = []
    for index, value in enumerate(values):
        point = cfg.with_value(axis, value)
        tasks.extend(_tasks(point, seed_prefix=(index,), tag_lambda=axis == "lambda"))
    return _execute(tasks, workers)
