"""
Small dense complex linear algebra: Kronecker products, partial traces and a
cyclic Jacobi eigensolver for Hermitian matrices up to 16x16.

All numerical tolerances used across the package live in ``TOL`` so that the
operations and the test-suite agree on what "equal" means.
"""
from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType

import numpy as np

from .errors import ContractError, DimensionError

MAX_DIM = 16

TOL = MappingProxyType(
    {
        "hermitian_input": 1e-12,  # max |a - a^H| accepted by hermitian_eig
        "jacobi_offdiag": 1e-14,  # off-diagonal Frobenius mass at convergence
        "eig_residual": 1e-10,
        "degenerate": 1e-9,  # eigenvalue cluster width
        "state_hermitian": 1e-10,
        "state_trace": 1e-10,
        "state_positive": -1e-9,  # smallest admissible eigenvalue
        "imag_residue": 1e-10,
        "kraus_complete": 1e-10,
        "kernel_slack": 1e-10,
        "selection": 1e-12,  # minimum post-selection probability
        "branch_prob": 1e-12,  # discord branches below this contribute 0
        "radicand": -1e-10,
        "uqt": 1e-6,
        "det": 1e-12,  # det(T) must be below -det for the teleportation branch
    }
)

JACOBI_MAX_SWEEPS = 64


@dataclass(frozen=True)
class EigenSystem:
    """Ascending eigenvalues with unit-norm eigenvectors as columns."""

    values: np.ndarray
    vectors: np.ndarray

    def __iter__(self):
        yield self.values
        yield self.vectors


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise DimensionError(f"expected a 2-d matrix, got shape {m.shape}")
    if m.shape[0] > MAX_DIM or m.shape[1] > MAX_DIM:
        raise DimensionError(f"matrix {m.shape} exceeds {MAX_DIM}x{MAX_DIM}")
    if not np.all(np.isfinite(m)):
        raise ContractError("matrix has non-finite entries")
    return m


def dag(a) -> np.ndarray:
    return np.conj(np.asarray(a)).T


def tensor(*factors) -> np.ndarray:
    """Kronecker product, left factor major (``tensor(a, b)[i*nb + k, ...]``)."""
    if not factors:
        raise ValueError("tensor() needs at least one factor")
    out = as_matrix(factors[0])
    for f in factors[1:]:
        f = as_matrix(f)
        rows, cols = out.shape[0] * f.shape[0], out.shape[1] * f.shape[1]
        if rows > MAX_DIM or cols > MAX_DIM:
            raise DimensionError(f"tensor product would be {rows}x{cols}")
        out = np.kron(out, f)
    return out


def hermiticity_residual(a) -> float:
    a = np.asarray(a)
    return float(np.max(np.abs(a - dag(a)))) if a.size else 0.0


def partial_trace(a, keep: str | int) -> np.ndarray:
    """Reduce a 4x4 two-qubit operator to the 2x2 operator on ``keep``.

    ``keep`` is ``"A"``/``0`` for the left factor or ``"B"``/``1`` for the right.
    """
    a = as_matrix(a)
    if a.shape != (4, 4):
        raise DimensionError(f"partial_trace expects 4x4, got {a.shape}")
    r = a.reshape(2, 2, 2, 2)
    if keep in ("A", "a", 0):
        return np.einsum("ijkj->ik", r)
    if keep in ("B", "b", 1):
        return np.einsum("ijil->jl", r)
    raise ValueError(f"unknown subsystem {keep!r}")


def _phase_fix(v: np.ndarray) -> np.ndarray:
    mags = np.abs(v)
    j = int(np.flatnonzero(mags >= mags.max() - 1e-12)[0])
    return v * np.exp(-1j * np.angle(v[j]))


def _canonical_cluster(vecs: np.ndarray) -> np.ndarray:
    """Deterministic orthonormal basis of the span of ``vecs`` (columns).

    Projects the computational basis vectors onto the span in index order and
    Gram-Schmidts the non-vanishing ones, so the result depends only on the
    subspace, not on how the solver happened to rotate inside it.
    """
    k = vecs.shape[1]
    proj = vecs @ dag(vecs)
    basis: list[np.ndarray] = []
    for j in range(proj.shape[0]):
        u = proj[:, j].copy()
        for b in basis:
            u -= (np.conj(b) @ u) * b
        norm = np.linalg.norm(u)
        if norm > 1e-6:
            basis.append(_phase_fix(u / norm))
        if len(basis) == k:
            break
    return np.column_stack(basis)


def _jacobi_rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    apq = a[p, q]
    mag = abs(apq)
    phase = apq / mag
    alpha, gamma = a[p, p].real, a[q, q].real
    theta = 0.5 * np.arctan2(2.0 * mag, gamma - alpha)
    c, s = np.cos(theta), np.sin(theta)
    # U = diag(1, conj(phase)) @ R(theta), column q rephased to keep U[q, q] real
    n = a.shape[0]
    u = np.eye(n, dtype=complex)
    u[p, p], u[q, p] = c, -s * np.conj(phase)
    u[p, q], u[q, q] = s * phase, c
    a[:] = dag(u) @ a @ u
    a[p, q] = a[q, p] = 0.0
    v[:] = v @ u


def hermitian_eig(a) -> EigenSystem:
    """Full eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.

    Eigenvalues come back ascending.  Eigenvectors are unit-norm with the first
    largest-modulus component real and non-negative; inside a degenerate
    cluster the basis is canonicalised (see ``_canonical_cluster``).
    """
    a = as_matrix(a)
    n, m = a.shape
    if n != m:
        raise DimensionError(f"hermitian_eig expects a square matrix, got {a.shape}")
    res = hermiticity_residual(a)
    if res > TOL["hermitian_input"]:
        raise ContractError(f"matrix is not Hermitian (residual {res:.3e})")
    work = 0.5 * (a + dag(a))
    vecs = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(work)))
    offdiag = ~np.eye(n, dtype=bool)
    for _ in range(JACOBI_MAX_SWEEPS):
        # summed directly: ||A||^2 - sum(diag^2) cancels catastrophically
        off = float(np.sqrt(np.sum(np.abs(work[offdiag]) ** 2)))
        if off < TOL["jacobi_offdiag"] * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(work[p, q]) > 1e-300:
                    _jacobi_rotate(work, vecs, p, q)
    vals = np.real(np.diag(work)).copy()
    order = np.argsort(vals, kind="stable")
    vals, vecs = vals[order], vecs[:, order]

    start = 0
    while start < n:
        stop = start + 1
        while stop < n and vals[stop] - vals[stop - 1] < TOL["degenerate"]:
            stop += 1
        if stop - start > 1:
            vecs[:, start:stop] = _canonical_cluster(vecs[:, start:stop])
        else:
            vecs[:, start] = _phase_fix(vecs[:, start] / np.linalg.norm(vecs[:, start]))
        start = stop
    return EigenSystem(vals, vecs)


def eigvalsh(a) -> np.ndarray:
    return hermitian_eig(a).values


def eigvalsh2(m: np.ndarray) -> np.ndarray:
    """Closed-form eigenvalues of a stack of 2x2 Hermitian matrices.

    ``m`` has shape ``(..., 2, 2)``; returns ``(..., 2)`` ascending.
    """
    a = m[..., 0, 0].real
    d = m[..., 1, 1].real
    b = m[..., 0, 1]
    mean = 0.5 * (a + d)
    rad = np.sqrt((0.5 * (a - d)) ** 2 + np.abs(b) ** 2)
    return np.stack([mean - rad, mean + rad], axis=-1)


def psd_sqrt(a) -> np.ndarray:
    """Principal square root of a positive semidefinite Hermitian matrix."""
    vals, vecs = hermitian_eig(a)
    vals = np.sqrt(np.clip(vals, 0.0, None))
    return (vecs * vals) @ dag(vecs)
