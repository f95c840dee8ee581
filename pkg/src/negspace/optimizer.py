"""
The two searches used by the simulations:

* ``minimize_angles`` - minimum conditional entropy over projective
  measurements on qubit B (coarse grid, then Nelder-Mead from the best node);
* ``optimize_pq`` - exhaustive WM/QMR strength grid at t = 0 for one state,
  channel and figure of merit.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from . import correlations
from .errors import NegspaceError, OptimizerError

log = logging.getLogger(__name__)

THETA_NODES = 37
PHI_NODES = 72
NM_XATOL = 1e-7
NM_FATOL = 1e-10
NM_MAXITER = 500

STRENGTH_GRID = np.round(np.arange(1, 100) / 100, 2)
TIE_TOL = 1e-12
MAX_FAILURE_FRACTION = 0.10


@dataclass(frozen=True)
class AngleOptimum:
    theta: float
    phi: float
    value: float
    grid_best: float
    iterations: int
    converged: bool


def angle_grid(n_theta: int = THETA_NODES, n_phi: int = PHI_NODES):
    theta = np.linspace(0.0, np.pi, n_theta)
    phi = np.arange(n_phi) * (2 * np.pi / n_phi)
    return np.meshgrid(theta, phi, indexing="ij")


def _fold(theta: float, phi: float) -> tuple[float, float]:
    # (theta, phi) and (-theta, phi + pi) describe the same measurement basis
    theta = float(np.mod(theta, 2 * np.pi))
    if theta > np.pi:
        theta, phi = 2 * np.pi - theta, phi + np.pi
    return theta, float(np.mod(phi, 2 * np.pi))


def minimize_angles(rho, base="e") -> AngleOptimum:
    """Minimise the B-measured conditional entropy of ``rho`` over (theta, phi)."""
    th, ph = angle_grid()
    values = correlations.conditional_entropies(rho, th, ph, base)
    k = int(np.argmin(values))  # first minimum in (theta, phi) order
    i, j = np.unravel_index(k, values.shape)
    t0, p0, grid_best = float(th[i, j]), float(ph[i, j]), float(values[i, j])

    def f(x):
        return float(correlations.conditional_entropies(rho, x[0], x[1], base))

    step_t, step_p = np.pi / (THETA_NODES - 1), 2 * np.pi / PHI_NODES
    simplex = np.array([[t0, p0], [t0 + step_t, p0], [t0, p0 + step_p]])
    res = minimize(
        f, np.array([t0, p0]), method="Nelder-Mead",
        options={"xatol": NM_XATOL, "fatol": NM_FATOL, "maxiter": NM_MAXITER,
                 "initial_simplex": simplex},
    )
    if res.fun < grid_best:
        theta, phi = _fold(*res.x)
        value = float(res.fun)
    else:
        theta, phi, value = t0, p0, grid_best
    return AngleOptimum(theta, phi, value, grid_best, int(res.nit), bool(res.success))


# --- WM / QMR strength search ---------------------------------------------

MINIMIZED = frozenset({"fidelity-deviation"})


def direction(measure: str) -> str:
    return "minimize" if measure in MINIMIZED else "maximize"


@dataclass(frozen=True)
class ObjectiveSpec:
    measure: str
    state: str | np.ndarray
    channel: str = "ad"
    params: dict = field(default_factory=dict)
    log_base: str = "e"
    t: float = 0.0

    def __post_init__(self):
        if self.measure not in correlations.MEASURES:
            raise ValueError(f"unknown measure {self.measure!r}")

    @property
    def direction(self) -> str:
        return direction(self.measure)


@dataclass(frozen=True)
class OptimumRecord:
    p: float
    q: float
    value: float
    full_grid: bool
    failures: int = 0
    grid: np.ndarray | None = None  # values[p_index, q_index], NaN where skipped


def optimize_pq(spec: ObjectiveSpec, keep_grid: bool = False) -> OptimumRecord:
    """Exhaustive search of p, q in {0.01, ..., 0.99} at the objective's time.

    Ties (within 1e-12) go to the smallest p, then the smallest q.
    """
    from .scenario import evaluate_measure, resolve_state
    from .channels import kraus, make_params
    from .wmqmr import StrengthPair, pipeline

    rho0 = resolve_state(spec.state)
    family = kraus(make_params(spec.channel, **spec.params), spec.t)
    sign = -1.0 if spec.direction == "minimize" else 1.0
    n = len(STRENGTH_GRID)
    grid = np.full((n, n), np.nan)
    best = None
    failures = 0
    for a, p in enumerate(STRENGTH_GRID):
        for b, q in enumerate(STRENGTH_GRID):
            try:
                rho = pipeline(rho0, family, StrengthPair(float(p), float(q))).state
                val = evaluate_measure(spec.measure, rho, spec.log_base)
            except NegspaceError as exc:
                log.debug("objective failed at p=%s q=%s: %s", p, q, exc)
                val = None
            if val is None:
                failures += 1
                continue
            grid[a, b] = val
            if best is None or sign * val > sign * best[2] + TIE_TOL:
                best = (float(p), float(q), float(val))
    if failures > MAX_FAILURE_FRACTION * n * n or best is None:
        raise OptimizerError(f"{failures} of {n * n} grid points failed for {spec.measure}")
    if failures:
        log.warning("%d grid points skipped for %s", failures, spec.measure)
    return OptimumRecord(best[0], best[1], best[2], failures == 0, failures,
                         grid if keep_grid else None)
