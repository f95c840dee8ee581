"""
Weak measurement (WM) before the channel and measurement reversal (QMR)
after it, with equal strengths on both qubits.

The raw output of QMR . channel . WM is not trace preserving; ``pipeline``
renormalises it and reports the discarded trace as the success probability of
the post-selected protocol.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import apply_two_qubit
from .errors import ParameterError, SelectionError
from .matcore import TOL, dag, tensor


@dataclass(frozen=True)
class StrengthPair:
    p: float = 0.0  # WM strength
    q: float = 0.0  # QMR strength

    def __post_init__(self):
        _check_strength(self.p, "p")
        _check_strength(self.q, "q")


def _check_strength(x: float, name: str) -> float:
    if not 0.0 <= x < 1.0:
        raise ParameterError(f"strength {name}={x} outside [0, 1)")
    return x


NO_PROTECTION = StrengthPair(0.0, 0.0)


def wm_operator(p: float) -> np.ndarray:
    _check_strength(p, "p")
    m = np.diag([1.0, np.sqrt(1 - p)]).astype(complex)
    return tensor(m, m)


def qmr_operator(q: float) -> np.ndarray:
    _check_strength(q, "q")
    m = np.diag([np.sqrt(1 - q), 1.0]).astype(complex)
    return tensor(m, m)


@dataclass(frozen=True)
class PipelineResult:
    state: np.ndarray
    success_probability: float


def pipeline(rho0, family, strengths: StrengthPair = NO_PROTECTION) -> PipelineResult:
    """Apply WM, the two-qubit channel, then QMR and renormalise."""
    wm = wm_operator(strengths.p)
    qmr = qmr_operator(strengths.q)
    rho = wm @ np.asarray(rho0, dtype=complex) @ dag(wm)
    rho = apply_two_qubit(family, rho)
    rho = qmr @ rho @ dag(qmr)
    prob = float(np.real(np.trace(rho)))
    if prob <= TOL["selection"]:
        raise SelectionError(f"post-selection probability {prob:.3e} vanished")
    rho = rho / prob
    return PipelineResult(0.5 * (rho + dag(rho)), prob)
