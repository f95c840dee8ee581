"""
Discrete Wigner functions on the 4x4 GF(4) phase space.

The five mutually unbiased bases are the joint eigenbases of the five maximal
commuting classes of two-qubit Pauli operators.  A quantum net assigns each
basis vector to a line, striation i <-> basis i, and every phase-point operator
is the sum of the projectors on the five lines through the point, minus I.

Any such assignment already gives Tr[A_a A_b] = 4 delta_ab, so the net search
additionally demands that all 16 operators share one spectrum; the first
assignment in lexicographic order that passes both checks is the net.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import EmptyResultError, NetError
from .galois import ORIGIN, POINTS, PhasePoint, StriationSet, build_striations
from .matcore import TOL, EigenSystem, dag, hermitian_eig
from .qstate import I4, pauli_string, pure

PAULI_CLASSES = (
    ("ZI", "IZ", "ZZ"),
    ("XI", "IX", "XX"),
    ("YI", "IY", "YY"),
    ("XY", "YZ", "ZX"),
    ("YX", "ZY", "XZ"),
)
# joint eigenvalues of the first two generators, in basis-vector order
SIGN_PATTERNS = ((1, 1), (1, -1), (-1, 1), (-1, -1))
UNBIASED_TOL = 1e-10
NET_TOL = 1e-10
SPECTRUM_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class MUBSet:
    bases: tuple  # 5 arrays of shape (4, 4); column j is beta_{i,j}
    labels: tuple = PAULI_CLASSES

    def vector(self, i: int, j: int) -> np.ndarray:
        return self.bases[i][:, j]

    def projector(self, i: int, j: int) -> np.ndarray:
        v = self.vector(i, j)
        return np.outer(v, v.conj())


def _joint_eigenvector(g1: np.ndarray, g2: np.ndarray, s1: int, s2: int) -> np.ndarray:
    proj = (I4 + s1 * g1) @ (I4 + s2 * g2) / 4
    col = proj[:, int(np.argmax(np.linalg.norm(proj, axis=0)))]
    v = col / np.linalg.norm(col)
    mags = np.abs(v)
    k = int(np.flatnonzero(mags >= mags.max() - 1e-12)[0])
    return v * np.exp(-1j * np.angle(v[k]))


def check_unbiased(bases) -> float:
    """Largest deviation from orthonormality / unbiasedness over all pairs."""
    worst = 0.0
    for i, bi in enumerate(bases):
        worst = max(worst, float(np.max(np.abs(dag(bi) @ bi - np.eye(4)))))
        for bk in bases[i + 1:]:
            worst = max(worst, float(np.max(np.abs(np.abs(dag(bi) @ bk) ** 2 - 0.25))))
    return worst


@lru_cache(maxsize=None)
def build_mubs() -> MUBSet:
    bases = []
    for labels in PAULI_CLASSES:
        g1, g2 = pauli_string(labels[0]), pauli_string(labels[1])
        bases.append(np.column_stack([_joint_eigenvector(g1, g2, s1, s2) for s1, s2 in SIGN_PATTERNS]))
    dev = check_unbiased(bases)
    if dev > UNBIASED_TOL:
        raise NetError(f"Pauli-class bases fail the MUB check (deviation {dev:.3e})")
    return MUBSet(tuple(bases))


@dataclass(frozen=True, eq=False)
class QuantumNet:
    """Line -> basis-vector assignment.

    ``assignment[i][j]`` is the index of the vector of basis i placed on line
    j of striation i.
    """

    mubs: MUBSet
    striations: StriationSet
    assignment: tuple

    def projector(self, i: int, j: int) -> np.ndarray:
        return self.mubs.projector(i, self.assignment[i][j])

    def line_projector(self, line) -> np.ndarray:
        return self.projector(line.striation, line.index)

    def table(self) -> list[tuple]:
        """(line, basis index, vector index) for all 20 lines."""
        return [(line, line.striation, self.assignment[line.striation][line.index])
                for line in self.striations.lines]


def _line_index_table(striations: StriationSet) -> np.ndarray:
    out = np.empty((len(POINTS), 5), dtype=int)
    for k, pt in enumerate(POINTS):
        for i in range(5):
            out[k, i] = striations.line_through(pt, i).index
    return out


def _operators_for(projs: np.ndarray, lines: np.ndarray, assignment) -> np.ndarray:
    # projs[i, v] is the projector on vector v of basis i
    idx = np.array([[assignment[i][lines[k, i]] for i in range(5)] for k in range(16)])
    return projs[np.arange(5)[None, :], idx].sum(axis=1) - I4


def orthogonality_residual(ops: np.ndarray) -> float:
    gram = np.einsum("aij,bji->ab", ops, ops).real
    return float(np.max(np.abs(gram - 4 * np.eye(len(ops)))))


def _spectrum_invariant(ops: np.ndarray) -> bool:
    p3 = np.einsum("aij,ajk,aki->a", ops, ops, ops).real
    p4 = np.einsum("aij,ajk,akl,ali->a", ops, ops, ops, ops).real
    return np.ptp(p3) < SPECTRUM_TOL and np.ptp(p4) < SPECTRUM_TOL


@lru_cache(maxsize=None)
def build_net(mubs: MUBSet | None = None, striations: StriationSet | None = None) -> QuantumNet:
    """First assignment (lexicographic in striation, line, vector index) whose
    phase-point operators are orthogonal and share a common spectrum."""
    mubs = mubs or build_mubs()
    striations = striations or build_striations()
    projs = np.array([[mubs.projector(i, j) for j in range(4)] for i in range(5)])
    lines = _line_index_table(striations)
    perms = list(itertools.permutations(range(4)))
    for assignment in itertools.product(perms, repeat=5):
        ops = _operators_for(projs, lines, assignment)
        if orthogonality_residual(ops) > NET_TOL:
            continue
        if not _spectrum_invariant(ops):
            continue
        spectra = np.array([hermitian_eig(a).values for a in ops])
        if np.max(np.ptp(spectra, axis=0)) > SPECTRUM_TOL:
            continue
        return QuantumNet(mubs, striations, assignment)
    raise NetError("no line assignment yields translation-invariant phase-point spectra")


def default_net() -> QuantumNet:
    return build_net()


def _point(alpha) -> PhasePoint:
    pt = PhasePoint(*alpha)
    if pt not in POINTS:
        raise ValueError(f"{alpha!r} is not a phase-space point")
    return pt


def phase_point_operator(net: QuantumNet, alpha) -> np.ndarray:
    """A_alpha = sum of the projectors on the five lines through alpha, minus I."""
    pt = _point(alpha)
    out = -I4.copy()
    for line in net.striations.lines_through(pt):
        out = out + net.line_projector(line)
    return out


def all_operators(net: QuantumNet) -> dict:
    return {pt: phase_point_operator(net, pt) for pt in POINTS}


def wigner(net: QuantumNet, rho) -> dict:
    """W_alpha = Tr[A_alpha rho] / 4 for every phase-space point."""
    rho = np.asarray(rho, dtype=complex)
    return {pt: float(np.real(np.trace(a @ rho))) / 4 for pt, a in all_operators(net).items()}


def wigner_grid(net: QuantumNet, rho) -> np.ndarray:
    """The 16 Wigner values as a 4x4 array indexed ``[q, p]``."""
    grid = np.zeros((4, 4))
    for pt, w in wigner(net, rho).items():
        grid[pt.q, pt.p] = w
    return grid


@dataclass(frozen=True)
class NegativeState:
    rank: int
    eigenvalue: float
    vector: np.ndarray

    @property
    def state(self) -> np.ndarray:
        return pure(self.vector)


def point_spectrum(net: QuantumNet, alpha=ORIGIN) -> EigenSystem:
    return hermitian_eig(phase_point_operator(net, alpha))


def negative_states(net: QuantumNet, alpha=ORIGIN) -> list[NegativeState]:
    """Eigenvectors of the negative eigenvalues of A_alpha, most negative first."""
    vals, vecs = point_spectrum(net, alpha)
    out = [NegativeState(k + 1, float(vals[k]), vecs[:, k].copy())
           for k in range(4) if vals[k] < -TOL["degenerate"]]
    if not out:
        raise EmptyResultError(f"A_{tuple(alpha)} has no negative eigenvalue")
    return out


def eigen_states(net: QuantumNet, alpha=ORIGIN) -> list[NegativeState]:
    """All four eigenvectors of A_alpha in ascending eigenvalue order."""
    vals, vecs = point_spectrum(net, alpha)
    return [NegativeState(k + 1, float(vals[k]), vecs[:, k].copy()) for k in range(4)]


STATE_LABELS = ("bell", "ns1", "ns2", "ns3")


@lru_cache(maxsize=None)
def _ns_vectors() -> tuple:
    states = eigen_states(default_net(), ORIGIN)
    return tuple((s.eigenvalue, s.vector) for s in states[:3])


def ns_state(k: int) -> np.ndarray:
    """Density matrix of NS_k: eigenvector of the k-th smallest eigenvalue of A_(0,0)."""
    if k not in (1, 2, 3):
        raise ValueError("NS states are numbered 1..3")
    return pure(_ns_vectors()[k - 1][1])


def ns_eigenvalue(k: int) -> float:
    return _ns_vectors()[k - 1][0]


def named_state(label: str) -> np.ndarray:
    from .qstate import bell_state

    label = label.lower()
    if label in ("bell", "bs"):
        return bell_state()
    if label in ("ns1", "ns2", "ns3"):
        return ns_state(int(label[-1]))
    raise ValueError(f"unknown state label {label!r}; expected one of {STATE_LABELS}")


def dump_net(net: QuantumNet | None = None) -> str:
    """Human-readable audit table: MUB vectors, line assignment, A_alpha spectra."""
    net = net or default_net()

    def fmt(v):
        return " ".join(f"{z.real:+.6f}{z.imag:+.6f}j" for z in v)

    out = ["# mutually unbiased bases (joint eigenbases of Pauli classes)"]
    for i, labels in enumerate(net.mubs.labels):
        out.append(f"basis {i} {{{', '.join(labels)}}}")
        for j in range(4):
            out.append(f"  beta[{i},{j}] = {fmt(net.mubs.vector(i, j))}")
    out.append("")
    out.append("# line assignment (striation, line -> basis vector)")
    for line, basis, vec in net.table():
        pts = " ".join(str(pt) for pt in sorted(line.points))
        out.append(f"line {line.label()} -> beta[{basis},{vec}]  points {pts}")
    out.append("")
    out.append("# phase-point operator spectra")
    for pt in POINTS:
        vals = hermitian_eig(phase_point_operator(net, pt)).values
        neg = int(np.sum(vals < -TOL["degenerate"]))
        out.append(f"A{pt} " + " ".join(f"{x:+.10f}" for x in vals) + f"  negative={neg}")
    return "\n".join(out) + "\n"
