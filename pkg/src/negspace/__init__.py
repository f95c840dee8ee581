"""
negspace: two-qubit states taken from the negative eigenvalues of discrete
Wigner phase-point operators, pushed through non-Markovian noise with
weak-measurement protection, and scored by entanglement, discord, steering and
teleportation fidelity.
"""
from .channels import ADParams, RTNParams, apply_two_qubit, kraus, make_params
from .correlations import concurrence, discord, steering, von_neumann_entropy
from .dwf import (build_mubs, build_net, default_net, dump_net, named_state,
                  negative_states, ns_state, phase_point_operator, wigner)
from .errors import NegspaceError
from .galois import build_striations
from .optimizer import ObjectiveSpec, optimize_pq
from .qstate import bell_state, check_state, decompose, validate
from .scenario import Scenario, reproduce, run_sweep
from .teleport import fidelity_deviation, maximal_fidelity, uqt_check
from .wmqmr import StrengthPair, pipeline

__version__ = "0.1.0"

__all__ = [
    "ADParams", "RTNParams", "apply_two_qubit", "kraus", "make_params",
    "concurrence", "discord", "steering", "von_neumann_entropy",
    "build_mubs", "build_net", "default_net", "dump_net", "named_state",
    "negative_states", "ns_state", "phase_point_operator", "wigner",
    "NegspaceError", "build_striations", "ObjectiveSpec", "optimize_pq",
    "bell_state", "check_state", "decompose", "validate",
    "Scenario", "reproduce", "run_sweep",
    "fidelity_deviation", "maximal_fidelity", "uqt_check",
    "StrengthPair", "pipeline",
]
