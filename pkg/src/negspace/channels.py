"""
Non-Markovian amplitude damping (AD) and random telegraph noise (RTN) as
time-dependent single-qubit Kraus families, plus their local two-qubit lift.

Both kernels are evaluated in complex arithmetic, so the switch between the
oscillatory and the monotone regime (imaginary ``l`` or ``zeta``) needs no
branch; any leftover imaginary part must be round-off.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import ChannelError, FormulaDomainError, ParameterError
from .matcore import TOL, dag, tensor
from .qstate import I2, SIGMA_Z

# caption parameters used throughout the figures
AD_CAPTION = {"g": 0.01, "gamma": 5.0}
RTN_CAPTION = {"b": 0.05, "gamma": 0.001}


@dataclass(frozen=True)
class ADParams:
    g: float = AD_CAPTION["g"]  # reservoir line width
    gamma: float = AD_CAPTION["gamma"]  # coupling strength

    def __post_init__(self):
        if not (self.g > 0 and self.gamma > 0):
            raise ParameterError(f"AD parameters must be positive, got g={self.g}, gamma={self.gamma}")

    @property
    def l(self) -> complex:
        return cmath.sqrt(self.g * (self.g - 2 * self.gamma))

    @property
    def non_markovian(self) -> bool:
        return 2 * self.gamma > self.g


@dataclass(frozen=True)
class RTNParams:
    b: float = RTN_CAPTION["b"]  # system-environment coupling
    gamma: float = RTN_CAPTION["gamma"]  # fluctuation rate

    def __post_init__(self):
        if not (self.b > 0 and self.gamma > 0):
            raise ParameterError(f"RTN parameters must be positive, got b={self.b}, gamma={self.gamma}")

    @property
    def zeta(self) -> complex:
        return cmath.sqrt((2 * self.b / self.gamma) ** 2 - 1)

    @property
    def non_markovian(self) -> bool:
        tau = 1 / (2 * self.gamma)
        return (4 * self.b * tau) ** 2 > 1


def _check_time(t: float) -> float:
    t = float(t)
    if not t >= 0:
        raise ParameterError(f"time must be non-negative, got {t}")
    return t


def _real(z: complex, what: str) -> float:
    if abs(z.imag) > TOL["imag_residue"] * max(1.0, abs(z.real)):
        raise FormulaDomainError(f"{what} has imaginary residue {z.imag:.3e}")
    return z.real


def ad_lambda(params: ADParams, t: float) -> float:
    """Damping probability lambda(t) = 1 - e^{-gt} (g/l sinh(lt/2) + cosh(lt/2))^2."""
    t = _check_time(t)
    g, l = params.g, params.l
    if abs(l) < 1e-300:
        bracket = 1 + g * t / 2  # limit l -> 0 of g/l sinh(lt/2)
    else:
        bracket = (g / l) * cmath.sinh(l * t / 2) + cmath.cosh(l * t / 2)
    lam = _real(1 - cmath.exp(-g * t) * bracket**2, "lambda(t)")
    slack = TOL["kernel_slack"]
    if lam < -slack or lam > 1 + slack:
        raise FormulaDomainError(f"lambda({t}) = {lam} outside [0, 1]")
    return min(1.0, max(0.0, lam))


def rtn_kernel(params: RTNParams, t: float) -> float:
    """Memory kernel Lambda(t) = e^{-gamma t} [cos(zeta gamma t) + sin(zeta gamma t)/zeta]."""
    t = _check_time(t)
    gam, zeta = params.gamma, params.zeta
    x = gam * t
    if abs(zeta) < 1e-300:
        osc = 1 + x  # critical damping limit
    else:
        osc = cmath.cos(zeta * x) + cmath.sin(zeta * x) / zeta
    val = _real(cmath.exp(-x) * osc, "Lambda(t)")
    if abs(val) > 1 + TOL["kernel_slack"]:
        raise FormulaDomainError(f"|Lambda({t})| = {abs(val)} exceeds 1")
    return min(1.0, max(-1.0, val))


def ad_kraus(params: ADParams, t: float) -> list[np.ndarray]:
    lam = ad_lambda(params, t)
    k0 = np.array([[1, 0], [0, np.sqrt(1 - lam)]], dtype=complex)
    k1 = np.array([[0, np.sqrt(lam)], [0, 0]], dtype=complex)
    return [k0, k1]


def rtn_kraus(params: RTNParams, t: float) -> list[np.ndarray]:
    lam = rtn_kernel(params, t)
    return [np.sqrt((1 + lam) / 2) * I2, np.sqrt((1 - lam) / 2) * SIGMA_Z]


def kraus(params: ADParams | RTNParams, t: float) -> list[np.ndarray]:
    if isinstance(params, ADParams):
        return ad_kraus(params, t)
    if isinstance(params, RTNParams):
        return rtn_kraus(params, t)
    raise TypeError(f"unknown channel parameters {params!r}")


def make_params(channel: str, **kw) -> ADParams | RTNParams:
    """``make_params("ad", g=.., gamma=..)`` / ``make_params("rtn", b=.., gamma=..)``;
    missing values fall back to the caption parameters."""
    kw = {k: v for k, v in kw.items() if v is not None}
    channel = channel.lower()
    if channel == "ad":
        return ADParams(**{k: kw[k] for k in ("g", "gamma") if k in kw})
    if channel == "rtn":
        return RTNParams(**{k: kw[k] for k in ("b", "gamma") if k in kw})
    raise ParameterError(f"unknown channel {channel!r}; expected 'ad' or 'rtn'")


def completeness_residual(family) -> float:
    total = sum(dag(k) @ k for k in family)
    return float(np.max(np.abs(total - np.eye(total.shape[0]))))


def local_operators(family) -> list[np.ndarray]:
    """K_i (x) K_j for all pairs, i major."""
    return [tensor(ki, kj) for ki in family for kj in family]


def apply_two_qubit(family, rho) -> np.ndarray:
    """rho -> sum_ij (K_i x K_j) rho (K_i x K_j)^dagger."""
    res = completeness_residual(family)
    if res > TOL["kraus_complete"]:
        raise ChannelError(f"Kraus family is not complete (residual {res:.3e})")
    rho = np.asarray(rho, dtype=complex)
    out = np.zeros((4, 4), dtype=complex)
    for k in local_operators(family):
        out += k @ rho @ dag(k)
    return out


def apply_single(family, rho) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    return sum(k @ rho @ dag(k) for k in family)
