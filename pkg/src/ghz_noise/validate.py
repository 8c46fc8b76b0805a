"""Self-check suite behind ``sim validate``."""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass

from . import dynamics, measures, reference
from .dynamics import NOISY_TOPOLOGIES
from .linalg import frobenius_dist
from .noise import PowerLawParams, beta_closed, beta_quadrature

BETA_GRID = {"g": (1e-4, 1e-2, 1e-1), "alpha": (3.0, 5.0, 10.0, 20.0), "tau": (0.1, 1.0, 10.0, 50.0)}
ENGINE_TAUS = (0.5, 2.0, 5.0, 10.0)
APPENDIX_TAUS = (0.5, 2.0, 10.0)
SATURATION_TAU = 200.0
FAULTS = ("beta_closed",)


@dataclass(frozen=True)
class CheckResult:
    name: str
    deviation: float
    tolerance: float
    passed: bool
    fatal: bool = True
    detail: str = ""

    @property
    def status(self) -> str:
        if self.passed:
            return "ok"
        return "FAIL" if self.fatal else "flagged"


def _check(name, deviation, tolerance, detail="", fatal=True) -> CheckResult:
    return CheckResult(name, float(deviation), tolerance, bool(deviation <= tolerance), fatal, detail)


def check_beta(fault: str | None = None) -> CheckResult:
    closed = beta_closed
    if fault == "beta_closed":
        def closed(tau, params):
            return beta_closed(tau, params) * (1.0 + 1e-6)

    worst = 0.0
    for g, alpha, tau in itertools.product(*BETA_GRID.values()):
        params = PowerLawParams(g, alpha)
        q = beta_quadrature(tau, params)
        worst = max(worst, abs(closed(tau, params) - q) / q)
    return _check("beta_closed", worst, 1e-8, "max relative deviation from quadrature")


def check_engines(mc_samples: int = 100_000, seed: int = 42) -> list[CheckResult]:
    noise = PowerLawParams(1e-2, 3.0)
    gh_worst = mc_worst = 0.0
    for topo, tau in itertools.product(NOISY_TOPOLOGIES, ENGINE_TAUS):
        exact = dynamics.averaged_state(1.0, tau, noise, topo)
        gh = dynamics.averaged_state_gh(1.0, tau, noise, topo)
        mc = dynamics.averaged_state_mc(1.0, tau, noise, topo, samples=mc_samples, seed=seed)
        gh_worst = max(gh_worst, frobenius_dist(exact, gh))
        mc_worst = max(mc_worst, frobenius_dist(exact, mc))
    return [
        _check("engine_gauss_hermite", gh_worst, 1e-10, "Frobenius distance to Fourier engine"),
        _check("engine_monte_carlo", mc_worst, 5e-3, f"Frobenius distance to Fourier engine, {mc_samples} samples"),
    ]


def check_appendix() -> list[CheckResult]:
    noise = PowerLawParams(1e-2, 3.0)
    results = []
    for block in reference.BLOCKS:
        topo = reference.BLOCK_TOPOLOGY[block]
        worst = max(
            frobenius_dist(
                reference.appendix_state(block, tau, noise, simulator_order=True),
                dynamics.averaged_state(1.0, tau, noise, topo),
            )
            for tau in APPENDIX_TAUS
        )
        results.append(_check(f"appendix_{block}", worst, 1e-10, "Frobenius distance to Fourier engine"))
    return results


_SATURATION_TOL = {
    ("purity", "com"): 0.002,
    ("entropy", "com"): 0.005,
    ("entropy", "bip"): 0.01,
    ("entropy", "tri"): 0.01,
    ("ew1", "com"): 0.002,
    ("ew1", "bip"): 0.005,
    ("ew1", "tri"): 0.005,
}


def check_saturation() -> list[CheckResult]:
    noise = PowerLawParams(1e-2, 3.0)
    states = {t.value: dynamics.averaged_state(1.0, SATURATION_TAU, noise, t) for t in NOISY_TOPOLOGIES}
    results = []
    for (measure, topo), tol in _SATURATION_TOL.items():
        value = measures.MEASURES[measure](states[topo])
        target = reference.SATURATION[measure][topo]
        results.append(_check(f"saturation_{measure}_{topo}", abs(value - target), tol, f"value {value:.6g}, target {target:.6g}"))
    return results


def check_tables() -> list[CheckResult]:
    return [
        CheckResult(
            f"table_{t.measure}_{t.topology}",
            t.deviation,
            t.tolerance,
            t.verdict == "confirmed",
            fatal=False,
            detail=f"reported {t.reported:g} vs derived {t.derived:.4f} ({t.provenance})",
        )
        for t in reference.table_targets()
    ]


def run_validate(fault: str | None = None, mc_samples: int = 100_000) -> tuple[list[CheckResult], int]:
    """Run every check; exit code 0 iff all fatal checks pass, else 2."""
    if fault is not None and fault not in FAULTS:
        raise ValueError(f"unknown fault {fault!r}; expected one of {FAULTS}")
    results = [check_beta(fault)]
    results += check_engines(mc_samples)
    results += check_appendix()
    results += check_saturation()
    results += check_tables()
    failed = any(r.fatal and not r.passed for r in results)
    return results, 2 if failed else 0


def format_report(results) -> str:
    width = max(len(r.name) for r in results)
    lines = [f"{r.status:7s} {r.name:{width}s}  dev={r.deviation:.3e}  tol={r.tolerance:.1e}  {r.detail}" for r in results]
    failing = [r.name for r in results if r.fatal and not r.passed]
    flagged = [r.name for r in results if not r.fatal and not r.passed]
    lines.append(f"failed: {', '.join(failing) if failing else 'none'}")
    lines.append(f"flagged (non-fatal): {', '.join(flagged) if flagged else 'none'}")
    return "\n".join(lines)


def report_dicts(results) -> list[dict]:
    return [{**asdict(r), "status": r.status} for r in results]
