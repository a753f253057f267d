"""Parameter sweeps that regenerate the reference figures as data tables.

Each sweep walks one parameter (register size, state angle, acceleration,
or coupling) with everything else fixed, evaluates the requested state
families at every grid point, and emits rows suitable for CSV or JSON
output. Evaluation order is deterministic (grid index, then family), and
numbers are formatted with 12 significant digits so reruns are
byte-identical.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from .protocol import (
    Family,
    TwoQubitState,
    concurrence_x_state,
    optimal_k,
    prob_pos_bipartite,
    prob_pos_w,
    prob_pos_z,
)
from .states import TWO_PI, BasisLabel, build_bipartite_theta
from .unruh import apply_unruh_map

# The q-grid endpoint sits strictly below the q=1 pole of the formulas.
Q_ENDPOINT_GAP = 1e-6

CSV_HEADER = "x,family,p_pos,amplitude,k_used,concurrence"

SWEEPABLE = ("n", "k", "q", "nu", "theta", "omega_delta")


class Figure(Enum):
    FIG1 = "fig1"
    FIG2 = "fig2"
    FIG3 = "fig3"
    FIG4 = "fig4"
    CUSTOM = "custom"


@dataclass(frozen=True)
class SweepSpec:
    """One sweep: a grid over ``sweep_var`` with everything else pinned."""

    figure: Figure
    sweep_var: str
    start: float
    stop: float
    steps: int
    fixed: Mapping[str, float]
    families: tuple[Family, ...]
    output_format: str = "csv"

    def __post_init__(self):
        if self.sweep_var not in SWEEPABLE:
            raise ValueError(f"unknown sweep variable {self.sweep_var!r}")
        if self.steps < 2:
            raise ValueError(f"a sweep needs at least 2 steps, got {self.steps}")
        if not self.start < self.stop:
            raise ValueError(f"need start < stop, got [{self.start}, {self.stop}]")
        if self.sweep_var in self.fixed:
            raise ValueError(f"sweep variable {self.sweep_var!r} also appears in fixed")
        if not self.families:
            raise ValueError("at least one family is required")
        if self.output_format not in ("csv", "json"):
            raise ValueError(f"unknown output format {self.output_format!r}")

    def grid(self) -> Sequence[Union[int, float]]:
        if self.sweep_var == "n":
            lo, hi = int(self.start), int(self.stop)
            if hi - lo + 1 != self.steps:
                raise ValueError("integer sweep needs steps == stop - start + 1")
            return list(range(lo, hi + 1))
        return [float(v) for v in np.linspace(self.start, self.stop, self.steps)]


@dataclass(frozen=True)
class SweepRow:
    x: Union[int, float]
    family: str
    p_pos: float
    amplitude: float
    k_used: Optional[int] = None
    concurrence: Optional[float] = None


def _channel_concurrence(theta: float, q: float, nu: float) -> float:
    out = apply_unruh_map(build_bipartite_theta(theta), 1, q, nu)
    return concurrence_x_state(TwoQubitState(out.rho_atoms, BasisLabel.COMPUTATIONAL))


def _evaluate(family: Family, x, params: Mapping[str, float]) -> SweepRow:
    q = float(params["q"])
    nu = float(params["nu"])
    od = float(params.get("omega_delta", TWO_PI))
    if family is Family.W:
        r = prob_pos_w(int(params["n"]), q, nu, od)
        return SweepRow(x, family.value, r.p_pos, r.amplitude, k_used=1)
    if family is Family.Z:
        n = int(params["n"])
        k = int(params["k"]) if "k" in params else optimal_k(n, q, nu).k_opt
        r = prob_pos_z(n, k, q, nu, od)
        return SweepRow(x, family.value, r.p_pos, r.amplitude, k_used=k)
    theta = float(params.get("theta", math.pi / 4))
    r = prob_pos_bipartite(theta, q, nu, od)
    conc = _channel_concurrence(theta, q, nu)
    return SweepRow(x, family.value, r.p_pos, r.amplitude, concurrence=conc)


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Evaluate a sweep; rows ordered by grid index, then family."""
    rows = []
    for x in spec.grid():
        params = dict(spec.fixed)
        params[spec.sweep_var] = x
        for family in spec.families:
            rows.append(_evaluate(family, x, params))
    return rows


def run_fig1(
    n_max: int = 20,
    *,
    q: float = 0.9,
    nu: float = 0.1,
    omega_delta: float = TWO_PI,
) -> list[SweepRow]:
    """|pos> probability vs register size for the W and optimal-Z families."""
    if n_max < 2:
        raise ValueError(f"n_max must be at least 2, got {n_max}")
    spec = SweepSpec(
        figure=Figure.FIG1,
        sweep_var="n",
        start=2,
        stop=n_max,
        steps=n_max - 1,
        fixed={"q": q, "nu": nu, "omega_delta": omega_delta},
        families=(Family.W, Family.Z),
    )
    return run_sweep(spec)


def run_fig2(
    theta_steps: int = 1000,
    *,
    q: float = 0.9,
    nu: float = 0.1,
    omega_delta: float = TWO_PI,
) -> list[SweepRow]:
    """|pos> probability and concurrence vs the two-qubit state angle."""
    spec = SweepSpec(
        figure=Figure.FIG2,
        sweep_var="theta",
        start=0.0,
        stop=math.pi / 2,
        steps=theta_steps,
        fixed={"q": q, "nu": nu, "omega_delta": omega_delta},
        families=(Family.BIPARTITE,),
    )
    return run_sweep(spec)


def run_fig3(
    q_steps: int = 100,
    n_multi: int = 20,
    *,
    nu: float = 0.1,
    omega_delta: float = TWO_PI,
    q_max: float = 1.0 - Q_ENDPOINT_GAP,
) -> list[SweepRow]:
    """|pos> probability vs acceleration for all three families."""
    if not 0.0 < q_max < 1.0:
        raise ValueError(f"q_max must lie in (0, 1), got {q_max}")
    spec = SweepSpec(
        figure=Figure.FIG3,
        sweep_var="q",
        start=0.0,
        stop=q_max,
        steps=q_steps,
        fixed={"n": n_multi, "nu": nu, "omega_delta": omega_delta, "theta": math.pi / 4},
        families=(Family.BIPARTITE, Family.W, Family.Z),
    )
    return run_sweep(spec)


def run_fig4(
    nu_steps: int = 101,
    n_multi: int = 20,
    *,
    q: float = 0.8,
    omega_delta: float = TWO_PI,
    nu_max: float = 1.0,
) -> list[SweepRow]:
    """|pos> probability vs coupling strength for all three families."""
    if nu_max <= 0.0:
        raise ValueError(f"nu_max must be positive, got {nu_max}")
    spec = SweepSpec(
        figure=Figure.FIG4,
        sweep_var="nu",
        start=0.0,
        stop=nu_max,
        steps=nu_steps,
        fixed={"n": n_multi, "q": q, "omega_delta": omega_delta, "theta": math.pi / 4},
        families=(Family.BIPARTITE, Family.W, Family.Z),
    )
    return run_sweep(spec)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{value:.12g}"


def rows_to_csv(rows: Sequence[SweepRow]) -> str:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                [_fmt(r.x), r.family, _fmt(r.p_pos), _fmt(r.amplitude), _fmt(r.k_used), _fmt(r.concurrence)]
            )
        )
    return "\n".join(lines) + "\n"


def _json_number(value):
    if value is None:
        return None
    if isinstance(value, (int, np.integer)):
        return int(value)
    return float(f"{value:.12g}")


def rows_to_json(rows: Sequence[SweepRow]) -> str:
    records = [
        {
            "x": _json_number(r.x),
            "family": r.family,
            "p_pos": _json_number(r.p_pos),
            "amplitude": _json_number(r.amplitude),
            "k_used": _json_number(r.k_used),
            "concurrence": _json_number(r.concurrence),
        }
        for r in rows
    ]
    return json.dumps(records, indent=2) + "\n"


def render_rows(rows: Sequence[SweepRow], output_format: str) -> str:
    if output_format == "csv":
        return rows_to_csv(rows)
    if output_format == "json":
        return rows_to_json(rows)
    raise ValueError(f"unknown output format {output_format!r}")
