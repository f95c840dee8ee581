"""
Teleportation figures of merit of a shared two-qubit state: maximal average
fidelity F, fidelity deviation Delta, and the QT / UQT usefulness flags.

Both closed forms hold only on the det(T) < 0 branch; outside it the values
are reported as absent instead of being computed some other way.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .correlations import correlation_spectrum
from .errors import PreconditionError
from .matcore import TOL
from .qstate import correlation_matrix

CLASSICAL_FIDELITY = 2 / 3


def _det_t(rho) -> float:
    return float(np.linalg.det(correlation_matrix(rho)))


def _require_negative_det(rho) -> float:
    det = _det_t(rho)
    if not det < -TOL["det"]:
        raise PreconditionError(f"closed form needs det(T) < 0, got det(T) = {det:.6g}")
    return det


def fidelity_from_spectrum(abs_e) -> float:
    return 0.5 * (1 + np.sum(np.abs(abs_e)) / 3)


def deviation_from_spectrum(abs_e) -> float:
    e = np.abs(np.asarray(abs_e, dtype=float))
    ssq = (e[0] - e[1]) ** 2 + (e[0] - e[2]) ** 2 + (e[1] - e[2]) ** 2
    return float(np.sqrt(ssq) / (3 * np.sqrt(10)))


def maximal_fidelity(rho) -> float:
    _require_negative_det(rho)
    return float(fidelity_from_spectrum(correlation_spectrum(rho)))


def fidelity_deviation(rho) -> float:
    _require_negative_det(rho)
    return deviation_from_spectrum(correlation_spectrum(rho))


@dataclass(frozen=True)
class TeleportReport:
    F: float | None
    delta: float | None
    det_T: float
    e: np.ndarray  # eigenvalues of T (real part; T is symmetric for the states in scope)
    abs_e: np.ndarray  # |e_i|, taken as singular values of T
    useful_qt: bool
    universal_uqt: bool

    def lines(self) -> list[str]:
        def f(x):
            return "absent" if x is None else f"{x:.12g}"

        return [
            f"det(T) = {self.det_T:.12g}",
            "e = " + ", ".join(f"{x:.12g}" for x in self.e),
            "|e| = " + ", ".join(f"{x:.12g}" for x in self.abs_e),
            f"F = {f(self.F)}",
            f"Delta = {f(self.delta)}",
            f"useful_qt = {str(self.useful_qt).lower()}",
            f"universal_uqt = {str(self.universal_uqt).lower()}",
        ]


def uqt_check(rho, uqt_tolerance: float = TOL["uqt"]) -> TeleportReport:
    T = correlation_matrix(rho)
    det = float(np.linalg.det(T))
    e = np.sort(np.linalg.eigvals(T).real)[::-1]
    abs_e = correlation_spectrum(rho)
    F = delta = None
    useful = universal = False
    if det < -TOL["det"]:
        F = float(fidelity_from_spectrum(abs_e))
        delta = deviation_from_spectrum(abs_e)
        useful = F > CLASSICAL_FIDELITY
        universal = useful and delta <= uqt_tolerance
    return TeleportReport(F, delta, det, e, abs_e, useful, universal)
