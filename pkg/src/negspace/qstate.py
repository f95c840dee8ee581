"""
Two-qubit density matrices: validity diagnostics, the Bell state, the
Hilbert-Schmidt (Bloch) decomposition and a plain-text file format.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ContractError, DimensionError
from .matcore import TOL, as_matrix, dag, eigvalsh, hermiticity_residual, tensor

I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
# index 0, 1, 2 <-> x, y, z
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)
PAULI_BY_NAME = {"I": I2, "X": SIGMA_X, "Y": SIGMA_Y, "Z": SIGMA_Z}

_LOCAL_A = np.array([tensor(s, I2) for s in PAULIS])
_LOCAL_B = np.array([tensor(I2, s) for s in PAULIS])
_CORR = np.array([[tensor(si, sj) for sj in PAULIS] for si in PAULIS])


def pauli_string(label: str) -> np.ndarray:
    """``pauli_string("XZ")`` is X (x) Z."""
    return tensor(*(PAULI_BY_NAME[c] for c in label))


def ket(*amplitudes) -> np.ndarray:
    v = np.asarray(amplitudes, dtype=complex).ravel()
    return v / np.linalg.norm(v)


def pure(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).ravel()
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def bell_state() -> np.ndarray:
    """|Phi+><Phi+| with |Phi+> = (|00> + |11>)/sqrt(2)."""
    return pure([1, 0, 0, 1])


def maximally_mixed() -> np.ndarray:
    return I4 / 4


def werner(w: float) -> np.ndarray:
    return (1 - w) * I4 / 4 + w * bell_state()


@dataclass(frozen=True)
class Diagnostics:
    hermitian_residual: float
    trace_deviation: float
    min_eigenvalue: float

    @property
    def hermitian(self) -> bool:
        return self.hermitian_residual <= TOL["state_hermitian"]

    @property
    def unit_trace(self) -> bool:
        return self.trace_deviation <= TOL["state_trace"]

    @property
    def positive(self) -> bool:
        return self.min_eigenvalue >= TOL["state_positive"]

    @property
    def ok(self) -> bool:
        return self.hermitian and self.unit_trace and self.positive

    def violations(self) -> list[str]:
        out = []
        if not self.hermitian:
            out.append(f"hermiticity residual {self.hermitian_residual:.3e}")
        if not self.unit_trace:
            out.append(f"trace deviation {self.trace_deviation:.3e}")
        if not self.positive:
            out.append(f"minimum eigenvalue {self.min_eigenvalue:.3e}")
        return out


def validate(rho) -> Diagnostics:
    """Report how far ``rho`` is from a valid 4x4 density matrix.  Never raises
    on physical violations; only a wrong shape is an error."""
    rho = as_matrix(rho)
    if rho.shape != (4, 4):
        raise DimensionError(f"two-qubit state must be 4x4, got {rho.shape}")
    herm = hermiticity_residual(rho)
    tr = abs(np.trace(rho) - 1.0)
    # eigenvalues of the Hermitian part, so the diagnostic works on bad input too
    min_eig = float(eigvalsh(0.5 * (rho + dag(rho)))[0])
    return Diagnostics(herm, float(tr), min_eig)


def check_state(rho) -> np.ndarray:
    """Return ``rho`` as an array, raising ContractError if it is not valid."""
    rho = as_matrix(rho)
    diag = validate(rho)
    if not diag.ok:
        raise ContractError("invalid density matrix: " + "; ".join(diag.violations()))
    return rho


@dataclass(frozen=True)
class BlochDecomposition:
    a: np.ndarray  # local Bloch vector of A
    s: np.ndarray  # local Bloch vector of B
    T: np.ndarray  # correlation matrix t_ij = Tr[rho (sigma_i x sigma_j)]

    def reconstruct(self) -> np.ndarray:
        return reconstruct(self.a, self.s, self.T)


def _real_traces(rho: np.ndarray, ops: np.ndarray) -> np.ndarray:
    vals = np.einsum("ij,...ji->...", rho, ops)
    if np.max(np.abs(vals.imag)) > TOL["imag_residue"]:
        raise ContractError(
            f"Pauli expectation has imaginary part {np.max(np.abs(vals.imag)):.3e}; "
            "input is not Hermitian"
        )
    return vals.real


def decompose(rho) -> BlochDecomposition:
    rho = as_matrix(rho)
    if rho.shape != (4, 4):
        raise DimensionError(f"two-qubit state must be 4x4, got {rho.shape}")
    return BlochDecomposition(
        _real_traces(rho, _LOCAL_A), _real_traces(rho, _LOCAL_B), _real_traces(rho, _CORR)
    )


def correlation_matrix(rho) -> np.ndarray:
    return decompose(rho).T


def reconstruct(a, s, T) -> np.ndarray:
    a, s, T = np.asarray(a), np.asarray(s), np.asarray(T)
    return 0.25 * (
        I4
        + np.einsum("i,ijk->jk", a, _LOCAL_A)
        + np.einsum("i,ijk->jk", s, _LOCAL_B)
        + np.einsum("ij,ijkl->kl", T, _CORR)
    )


# --- plain-text serialisation: 4 lines of 4 "re+imj" tokens ----------------

def format_state(rho) -> str:
    rho = as_matrix(rho)
    lines = []
    for row in rho:
        lines.append(" ".join(f"{z.real:.17g}{z.imag:+.17g}j" for z in row))
    return "\n".join(lines) + "\n"


def parse_state(text: str) -> np.ndarray:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if len(rows) != 4 or any(len(r) != 4 for r in rows):
        raise DimensionError("state file must hold 4 lines of 4 complex entries")
    try:
        return np.array([[complex(tok) for tok in r] for r in rows], dtype=complex)
    except ValueError as exc:
        raise ContractError(f"cannot parse state entry: {exc}") from None


def save_state(rho, path) -> None:
    Path(path).write_text(format_state(rho))


def load_state(path) -> np.ndarray:
    return check_state(parse_state(Path(path).read_text()))
