"""
Two-qubit correlation measures: concurrence, von Neumann entropies, quantum
discord (measurement on subsystem B) and two/three-setting EPR steering.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import optimizer
from .errors import NumericalError, OptimizerError
from .matcore import TOL, dag, eigvalsh, eigvalsh2, partial_trace, psd_sqrt
from .qstate import SIGMA_Y, correlation_matrix

SIGMA_YY = np.kron(SIGMA_Y, SIGMA_Y)
MEASURES = ("concurrence", "discord", "steering2", "steering3", "fidelity", "fidelity-deviation")


def _log(x: np.ndarray, base) -> np.ndarray:
    out = np.log(x)
    return out if base in ("e", None) else out / np.log(float(base))


def entropy_from_eigenvalues(vals, base="e") -> np.ndarray:
    """-sum lambda log lambda along the last axis, with 0 log 0 = 0."""
    vals = np.clip(np.asarray(vals, dtype=float), 0.0, None)
    safe = np.where(vals > 0, vals, 1.0)
    return -np.sum(vals * _log(safe, base), axis=-1)


def von_neumann_entropy(rho, base="e") -> float:
    rho = np.asarray(rho, dtype=complex)
    vals = eigvalsh2(rho) if rho.shape == (2, 2) else eigvalsh(rho)
    return float(entropy_from_eigenvalues(vals, base))


# --- concurrence -----------------------------------------------------------

def spin_flip(rho) -> np.ndarray:
    return SIGMA_YY @ np.conj(rho) @ SIGMA_YY


def concurrence(rho) -> float:
    """Wootters concurrence from the eigenvalues of rho * rho~ (their square
    roots are the lambda_i of the sqrt(sqrt(rho) rho~ sqrt(rho)) definition)."""
    rho = np.asarray(rho, dtype=complex)
    ev = np.linalg.eigvals(rho @ spin_flip(rho)).real
    if ev.min() < TOL["radicand"]:
        raise NumericalError(f"negative eigenvalue {ev.min():.3e} of rho*rho~")
    lam = np.sort(np.sqrt(np.clip(ev, 0.0, None)))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def concurrence_literal(rho) -> float:
    """Concurrence through the matrix square roots, exactly as defined."""
    rho = np.asarray(rho, dtype=complex)
    root = psd_sqrt(rho)
    inner = root @ spin_flip(rho) @ root
    vals = eigvalsh(0.5 * (inner + dag(inner)))
    if vals.min() < TOL["radicand"]:
        raise NumericalError(f"negative radicand {vals.min():.3e}")
    lam = np.sort(np.sqrt(np.clip(vals, 0.0, None)))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


# --- discord ---------------------------------------------------------------

@dataclass(frozen=True)
class MeasurementAngles:
    theta: float
    phi: float


def measurement_vectors(theta, phi) -> tuple[np.ndarray, np.ndarray]:
    """|l> and |m> for arrays of angles; each returned with shape (..., 2)."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    ph = np.exp(1j * phi)
    l = np.stack([c + 0j, ph * s], axis=-1)
    m = np.stack([s + 0j, -ph * c], axis=-1)
    return l, m


def conditional_entropies(rho, theta, phi, base="e") -> np.ndarray:
    """sum_i p_i S(rho_A|i) for projective measurements on B at each angle pair."""
    r = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    total = 0.0
    for v in measurement_vectors(theta, phi):
        # <v|_B rho |v>_B, an unnormalised 2x2 operator on A
        sigma = np.einsum("...b,abcd,...d->...ac", np.conj(v), r, v)
        p = np.real(sigma[..., 0, 0] + sigma[..., 1, 1])
        ok = p > TOL["branch_prob"]
        safe_p = np.where(ok, p, 1.0)
        vals = eigvalsh2(sigma / safe_p[..., None, None])
        total = total + np.where(ok, p * entropy_from_eigenvalues(vals, base), 0.0)
    return np.asarray(total)


def conditional_entropy(rho, angles: MeasurementAngles, base="e") -> float:
    return float(conditional_entropies(rho, angles.theta, angles.phi, base))


@dataclass(frozen=True)
class DiscordResult:
    value: float
    angles: MeasurementAngles
    conditional_entropy: float
    grid_best: float
    refined_best: float
    iterations: int
    converged: bool

    def __float__(self) -> float:
        return self.value


def discord(rho, base="e") -> DiscordResult:
    """d(A:B) = S(B) - S(A,B) + min over B-measurements of S(A|B)."""
    rho = np.asarray(rho, dtype=complex)
    opt = optimizer.minimize_angles(rho, base=base)
    s_b = von_neumann_entropy(partial_trace(rho, "B"), base)
    s_ab = von_neumann_entropy(rho, base)
    value = s_b - s_ab + opt.value
    if not opt.converged:
        raise OptimizerError(
            f"discord angle refinement did not converge (best {value:.12g})", value
        )
    return DiscordResult(value, MeasurementAngles(opt.theta, opt.phi), opt.value,
                         opt.grid_best, opt.value, opt.iterations, opt.converged)


def discord_value(rho, base="e") -> float:
    return discord(rho, base).value


# --- steering --------------------------------------------------------------

def correlation_spectrum(rho) -> np.ndarray:
    """|c_i| of the correlation matrix, descending.

    Singular values of T; for symmetric T these are the moduli of its
    eigenvalues, and unlike eigenvalues they are invariant under local
    unitaries for every state.
    """
    return np.linalg.svd(correlation_matrix(rho), compute_uv=False)


def steering(rho, n: int) -> float:
    """S_n = max{0, (Omega_n - 1)/(sqrt(n) - 1)} for n = 2 or 3 settings."""
    if n not in (2, 3):
        raise ValueError("steering is defined for n = 2 or 3 measurements")
    c = correlation_spectrum(rho)
    norm = float(np.sqrt(np.sum(c**2)))
    if n == 3:
        omega = norm
    else:
        omega = float(np.sqrt(max(0.0, norm**2 - c.min() ** 2)))
    return max(0.0, (omega - 1) / (np.sqrt(n) - 1))
