"""
Scenario configuration, time sweeps, CSV emission and the figure / table
reproduction drivers behind the command line.
"""
from __future__ import annotations

import csv
import io
import logging
import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import correlations, teleport
from .channels import apply_two_qubit, kraus, make_params
from .dwf import named_state
from .errors import NegspaceError, ParameterError, PreconditionError
from .optimizer import ObjectiveSpec, optimize_pq
from .qstate import check_state, load_state
from .wmqmr import StrengthPair, pipeline

log = logging.getLogger(__name__)

CHANNELS = ("ad", "rtn")
STATES = ("ns1", "ns2", "ns3", "bell")
CSV_HEADER = ("state", "channel", "measure", "p", "q", "t", "value", "success_probability")
DEFAULT_T_END = {"ad": 6.0, "rtn": 60.0}
DEFAULT_STEPS = 600
PROBE_FRACTIONS = (0.25, 0.50, 0.75)
STRICT_ENV = "NEGSPACE_SEED_DETERMINISM"


def strict_mode() -> bool:
    return os.environ.get(STRICT_ENV, "").lower() == "strict"


def resolve_state(state) -> np.ndarray:
    """A label (bell, ns1..ns3), a path to a state file, or a matrix."""
    if isinstance(state, np.ndarray):
        return check_state(state)
    text = str(state)
    if text.lower() in ("bell", "bs", "ns1", "ns2", "ns3"):
        return named_state(text)
    if Path(text).exists():
        return load_state(text)
    raise ParameterError(f"unknown state {state!r}")


def evaluate_measure(measure: str, rho, log_base="e") -> float | None:
    """Value of ``measure`` on ``rho``; ``None`` where a teleportation closed
    form is undefined (det T >= 0)."""
    if measure == "concurrence":
        return correlations.concurrence(rho)
    if measure == "discord":
        return correlations.discord(rho, log_base).value
    if measure == "steering2":
        return correlations.steering(rho, 2)
    if measure == "steering3":
        return correlations.steering(rho, 3)
    try:
        if measure == "fidelity":
            return teleport.maximal_fidelity(rho)
        if measure == "fidelity-deviation":
            return teleport.fidelity_deviation(rho)
    except PreconditionError:
        return None
    raise ParameterError(f"unknown measure {measure!r}; expected one of {correlations.MEASURES}")


@dataclass(frozen=True)
class Scenario:
    state: str = "bell"
    channel: str = "ad"
    measure: str = "concurrence"
    # StrengthPair, "optimize" or "none"
    strengths: object = "none"
    g: float | None = None
    gamma: float | None = None
    b: float | None = None
    t_end: float | None = None
    steps: int = DEFAULT_STEPS
    log_base: str = "e"
    out: str | None = None

    def __post_init__(self):
        if self.channel not in CHANNELS:
            raise ParameterError(f"unknown channel {self.channel!r}")
        if self.measure not in correlations.MEASURES:
            raise ParameterError(f"unknown measure {self.measure!r}")
        if self.log_base not in ("e", "2"):
            raise ParameterError("log base must be 'e' or '2'")
        if not (isinstance(self.strengths, StrengthPair) or self.strengths in ("optimize", "none")):
            raise ParameterError(f"bad strengths {self.strengths!r}")
        if self.t_end is not None and not self.t_end > 0:
            raise ParameterError("t_end must be positive")
        if self.steps < 2:
            raise ParameterError("steps must be at least 2")

    @property
    def params(self):
        return make_params(self.channel, g=self.g, gamma=self.gamma, b=self.b)

    @property
    def param_kwargs(self) -> dict:
        return {k: v for k, v in (("g", self.g), ("gamma", self.gamma), ("b", self.b)) if v is not None}

    @property
    def end_time(self) -> float:
        return self.t_end if self.t_end is not None else DEFAULT_T_END[self.channel]

    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.end_time, self.steps)

    @property
    def state_name(self) -> str:
        s = str(self.state)
        return s.lower() if s.lower() in ("bell", "ns1", "ns2", "ns3") else Path(s).name


@dataclass(frozen=True)
class SweepRecord:
    state: str
    channel: str
    measure: str
    p: float | None
    q: float | None
    t: float
    value: float | None
    success_probability: float

    def row(self) -> list[str]:
        return [self.state, self.channel, self.measure, _fmt(self.p), _fmt(self.q),
                _fmt(self.t), _fmt(self.value), _fmt(self.success_probability)]


def _fmt(x) -> str:
    return "" if x is None else f"{x:.12g}"


def evaluate_point(scenario: Scenario, rho0, strengths, t: float) -> SweepRecord:
    family = kraus(scenario.params, t)
    try:
        if strengths is None:
            rho, prob = apply_two_qubit(family, rho0), 1.0
            p = q = None
        else:
            res = pipeline(rho0, family, strengths)
            rho, prob = res.state, res.success_probability
            p, q = strengths.p, strengths.q
        value = evaluate_measure(scenario.measure, rho, scenario.log_base)
    except NegspaceError as exc:
        raise NegspaceError(f"sweep failed at t={t:.12g}: {exc}") from exc
    return SweepRecord(scenario.state_name, scenario.channel, scenario.measure, p, q,
                       float(t), value, prob)


def resolve_strengths(scenario: Scenario):
    if scenario.strengths == "none":
        return None
    if scenario.strengths == "optimize":
        opt = optimize_pq(ObjectiveSpec(scenario.measure, scenario.state, scenario.channel,
                                        scenario.param_kwargs, scenario.log_base))
        return StrengthPair(opt.p, opt.q)
    return scenario.strengths


def run_sweep(scenario: Scenario) -> list[SweepRecord]:
    rho0 = resolve_state(scenario.state)
    strengths = resolve_strengths(scenario)
    return [evaluate_point(scenario, rho0, strengths, t) for t in scenario.times()]


def records_to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(r.row())
    return buf.getvalue()


def write_csv(records, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(records_to_csv(records))
    return path


def parallel_map(fn, items, workers: int | None = None) -> list:
    """Ordered map; serial in strict mode or when one worker is requested."""
    items = list(items)
    if workers is None:
        workers = 1 if strict_mode() else min(len(items), os.cpu_count() or 1)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# --- scenario files: flat "key = value" lines ------------------------------

_FILE_KEYS = {
    "state": str, "state_file": str, "channel": str, "measure": str, "g": float,
    "gamma": float, "b": float, "wm": float, "qmr": float, "optimize_strengths": str,
    "t_end": float, "steps": int, "log_base": str, "out": str,
}


def parse_scenario_file(text: str) -> dict:
    out = {}
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParameterError(f"scenario line {n}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _FILE_KEYS:
            raise ParameterError(f"scenario line {n}: unknown key {key!r}")
        out[key] = _FILE_KEYS[key](value)
    return out


def build_scenario(settings: dict) -> Scenario:
    """Scenario from a flat dict of CLI / file settings (None = unset)."""
    s = {k: v for k, v in settings.items() if v is not None}
    state = s.get("state_file") or s.get("state", "bell")
    wm, qmr = s.get("wm"), s.get("qmr")
    opt = s.get("optimize_strengths")
    if opt in (True, "true", "yes", "1"):
        strengths = "optimize"
    elif wm is not None or qmr is not None:
        strengths = StrengthPair(wm or 0.0, qmr or 0.0)
    else:
        strengths = "none"
    return Scenario(
        state=state, channel=s.get("channel", "ad"), measure=s.get("measure", "concurrence"),
        strengths=strengths, g=s.get("g"), gamma=s.get("gamma"), b=s.get("b"),
        t_end=s.get("t_end"), steps=s.get("steps", DEFAULT_STEPS),
        log_base=str(s.get("log_base", "e")), out=s.get("out"),
    )


# --- figures ---------------------------------------------------------------

CONCURRENCE_PQ = {"ns1": (0.17, 0.54), "ns2": (0.05, 0.74), "ns3": (0.05, 0.05), "bell": (0.01, 0.01)}
DISCORD_PQ = {"ns1": (0.50, 0.75), "ns2": (0.01, 0.75), "ns3": (0.25, 0.25), "bell": (0.25, 0.25)}
STEERING_PQ = {"ns1": (0.17, 0.17), "ns2": (0.05, 0.05), "ns3": (0.54, 0.54), "bell": (0.01, 0.01)}
FIDELITY_PQ = {"ns1": (0.17, 0.17), "ns2": (0.05, 0.05), "ns3": (0.54, 0.54), "bell": (0.05, 0.05)}
DEVIATION_PQ = {"ns1": (0.21, 0.74), "ns2": (0.05, 0.74), "ns3": (0.25, 0.37), "bell": (0.01, 0.01)}

CAPTION_PQ = {
    "concurrence": CONCURRENCE_PQ,
    "discord": DISCORD_PQ,
    "steering2": STEERING_PQ,
    "steering3": STEERING_PQ,
    "fidelity": FIDELITY_PQ,
    "fidelity-deviation": DEVIATION_PQ,
}


@dataclass(frozen=True)
class Subplot:
    name: str  # "a", "b", ...
    measure: str
    protected: bool


@dataclass(frozen=True)
class Figure:
    id: str
    channel: str
    subplots: tuple


def _pair(measure):
    return (Subplot("a", measure, False), Subplot("b", measure, True))


_STEER = (Subplot("a", "steering2", False), Subplot("b", "steering3", False),
          Subplot("c", "steering2", True), Subplot("d", "steering3", True))

FIGURES = {
    f.id: f
    for f in (
        Figure("fig1", "ad", _pair("concurrence")),
        Figure("fig2", "rtn", _pair("concurrence")),
        Figure("fig3", "ad", _pair("discord")),
        Figure("fig4", "rtn", _pair("discord")),
        Figure("fig5", "ad", _STEER),
        Figure("fig6", "rtn", _STEER),
        Figure("fig7", "ad", _pair("fidelity")),
        Figure("fig8", "rtn", _pair("fidelity")),
        Figure("fig9", "ad", _pair("fidelity-deviation")),
        Figure("fig10", "rtn", _pair("fidelity-deviation")),
    )
}


def caption_strengths(measure: str, state: str) -> StrengthPair:
    p, q = CAPTION_PQ[measure][state]
    return StrengthPair(p, q)


def figure_scenarios(fig: Figure, t_end=None, steps=DEFAULT_STEPS, log_base="e") -> list:
    """[(subplot, [Scenario per state])] with the caption parameters baked in."""
    out = []
    for sp in fig.subplots:
        scen = []
        for state in STATES:
            strengths = caption_strengths(sp.measure, state) if sp.protected else "none"
            scen.append(Scenario(state=state, channel=fig.channel, measure=sp.measure,
                                 strengths=strengths, t_end=t_end, steps=steps,
                                 log_base=log_base))
        out.append((sp, scen))
    return out


def reproduce_figure(fig_id: str, out_dir, t_end=None, steps=DEFAULT_STEPS,
                     log_base="e", workers=None) -> list[Path]:
    if fig_id not in FIGURES:
        raise ParameterError(f"unknown figure {fig_id!r}; expected one of {sorted(FIGURES)}")
    plan = figure_scenarios(FIGURES[fig_id], t_end, steps, log_base)
    flat = [s for _, scen in plan for s in scen]
    results = parallel_map(run_sweep, flat, workers)
    paths = []
    k = 0
    for sp, scen in plan:
        records = [r for res in results[k:k + len(scen)] for r in res]
        k += len(scen)
        paths.append(write_csv(records, Path(out_dir) / f"{fig_id}_{sp.name}.csv"))
    return paths


# --- tables ----------------------------------------------------------------

TABLE_CHANNEL = {"table1": "ad", "table2": "rtn"}
TABLE_ROWS = {
    "table1": {
        "concurrence": ("NS3>BS>NS1>NS2", "NS2>NS1>NS3>BS"),
        "discord": ("NS3=BS>NS1>NS2", "NS2>NS1>NS3=BS"),
        "steering2": ("BS>NS3>NS1>NS2", "NS3>BS>NS1>NS2"),
        "steering3": ("BS>NS3>NS1>NS2", "NS3>BS>NS1>NS2"),
        "fidelity": ("BS>NS3>NS1>NS2", "NS3>BS>NS1>NS2"),
        "fidelity-deviation": ("NS3<BS<NS1<NS2", "NS2=NS1<NS3<BS"),
    },
    "table2": {
        "concurrence": ("NS3=BS>NS1>NS2", "NS2=NS3=BS>NS1"),
        "discord": ("NS3>BS>NS1>NS2", "NS2>NS3>BS>NS1"),
        "steering2": ("BS>NS3>NS1>NS2", "BS>NS3>NS1>NS2"),
        "steering3": ("BS>NS3>NS1>NS2", "BS>NS3>NS1>NS2"),
        "fidelity": ("BS>NS3>NS1>NS2", "BS>NS3>NS1>NS2"),
        "fidelity-deviation": ("NS3<NS1<NS2<BS", "NS2<NS3<NS1<BS"),
    },
}
ORDER_TOL = 1e-3
_LABEL_TO_STATE = {"NS1": "ns1", "NS2": "ns2", "NS3": "ns3", "BS": "bell"}
_STATE_TO_LABEL = {v: k for k, v in _LABEL_TO_STATE.items()}


def parse_ordering(text: str) -> tuple[list[str], list[str]]:
    """``"NS3=BS>NS1"`` -> (["ns3", "bell", "ns1"], ["=", ">"]).  The
    approximate sign is read as "="."""
    text = text.replace(" ", "").replace("_", "").replace("≈", "=")
    parts = re.split(r"([<>=])", text)
    names = [_LABEL_TO_STATE[p.upper()] for p in parts[0::2]]
    return names, parts[1::2]


def ordering_holds(claim: str, values: dict, tol: float = ORDER_TOL) -> bool:
    names, ops = parse_ordering(claim)
    if any(values.get(n) is None for n in names):
        return False
    for (a, b), op in zip(zip(names, names[1:]), ops):
        diff = values[a] - values[b]
        if op == "=" and abs(diff) > tol:
            return False
        if op == ">" and not diff > tol:
            return False
        if op == "<" and not -diff > tol:
            return False
    return True


def ordering_string(values: dict, descending: bool = True, tol: float = ORDER_TOL) -> str:
    """Render measured values in the table ordering notation."""
    present = [s for s in STATES if values.get(s) is not None]
    missing = [s for s in STATES if values.get(s) is None]
    ranked = sorted(present, key=lambda s: (-values[s] if descending else values[s], STATES.index(s)))
    out = _STATE_TO_LABEL[ranked[0]] if ranked else ""
    rel = ">" if descending else "<"
    for a, b in zip(ranked, ranked[1:]):
        out += ("=" if abs(values[a] - values[b]) <= tol else rel) + _STATE_TO_LABEL[b]
    if missing:
        out += " (absent: " + ",".join(_STATE_TO_LABEL[s] for s in missing) + ")"
    return out


@dataclass(frozen=True)
class TableCheck:
    table: str
    measure: str
    protected: bool
    claim: str
    probes: tuple  # (t, {state: value}, ordering string, holds)

    @property
    def holds(self) -> bool:
        return all(p[3] for p in self.probes)


def _probe_values(args):
    channel, measure, protected, t, log_base = args
    vals = {}
    for state in STATES:
        strengths = caption_strengths(measure, state) if protected else None
        scen = Scenario(state=state, channel=channel, measure=measure,
                        strengths=strengths or "none", log_base=log_base)
        vals[state] = evaluate_point(scen, resolve_state(state), strengths, t).value
    return vals


def check_table(table: str, t_end=None, fractions=PROBE_FRACTIONS, tol=ORDER_TOL,
                log_base="e", workers=None) -> list[TableCheck]:
    if table not in TABLE_ROWS:
        raise ParameterError(f"unknown table {table!r}")
    channel = TABLE_CHANNEL[table]
    span = t_end if t_end is not None else DEFAULT_T_END[channel]
    times = [f * span for f in fractions]
    jobs, keys = [], []
    for measure, claims in TABLE_ROWS[table].items():
        for protected, claim in zip((False, True), claims):
            for t in times:
                jobs.append((channel, measure, protected, t, log_base))
            keys.append((measure, protected, claim))
    values = parallel_map(_probe_values, jobs, workers)
    out = []
    for n, (measure, protected, claim) in enumerate(keys):
        probes = []
        for k, t in enumerate(times):
            vals = values[n * len(times) + k]
            descending = "<" not in claim
            probes.append((t, vals, ordering_string(vals, descending, tol),
                           ordering_holds(claim, vals, tol)))
        out.append(TableCheck(table, measure, protected, claim, tuple(probes)))
    return out


def table_report(checks) -> list[list[str]]:
    rows = [["table", "measure", "wm_qmr", "claimed", "t", "computed", "holds"]]
    for c in checks:
        for t, _, computed, ok in c.probes:
            rows.append([c.table, c.measure, "with" if c.protected else "without",
                         c.claim, _fmt(t), computed, str(ok).lower()])
    return rows


def reproduce_table(table: str, out_dir, t_end=None, log_base="e", workers=None) -> Path:
    checks = check_table(table, t_end=t_end, log_base=log_base, workers=workers)
    path = Path(out_dir) / f"{table}.csv"
    path.parent.mkdir(parents=True, exist_ok=True)
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(table_report(checks))
    path.write_text(buf.getvalue())
    return path


def reproduce(target: str, out_dir, **kw) -> list[Path]:
    if target in FIGURES:
        return reproduce_figure(target, out_dir, **kw)
    if target in TABLE_ROWS:
        kw.pop("steps", None)
        return [reproduce_table(target, out_dir, **kw)]
    raise ParameterError(f"unknown figure id {target!r}")
