"""Nonlinear lattice dynamics, blow-up detection, and scaling normalization.

The update at interior sites is

    f_next = g / (1 - alpha*delta*g^alpha)^(1/alpha),

where g is the neighbor average. The denominator vanishes when g reaches the
threshold (alpha*delta)^(-1/alpha); that event is finite-time blow-up.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .domain import Field, MultiIndex, neighbor_mean_interior


@dataclass(frozen=True)
class Params:
    """Nonlinearity exponent alpha and coupling delta, both > 0."""

    alpha: float
    delta: float

    def __post_init__(self) -> None:
        if not (self.alpha > 0):
            raise ValueError(f"alpha must be > 0, got {self.alpha}")
        if not (self.delta > 0):
            raise ValueError(f"delta must be > 0, got {self.delta}")

    @property
    def threshold(self) -> float:
        """Neighbor-average level at which the update denominator vanishes."""
        return (self.alpha * self.delta) ** (-1.0 / self.alpha)


@dataclass(frozen=True)
class BlowupSignal:
    """First offending site (lexicographic) and its neighbor-average value."""

    site: MultiIndex
    g_value: float


@dataclass(frozen=True)
class BlewUpAt:
    step: int
    site: MultiIndex
    g_value: float


@dataclass(frozen=True)
class Survived:
    steps: int


@dataclass(frozen=True)
class StepRecord:
    max_f: float
    max_g: float


@dataclass
class BlowupReport:
    outcome: BlewUpAt | Survived
    trace: list[StepRecord] = field(default_factory=list)

    @property
    def blew_up(self) -> bool:
        return isinstance(self.outcome, BlewUpAt)


def _pow(x: np.ndarray, alpha: float) -> np.ndarray:
    # x >= 0 here; numpy gives 0**alpha = 0 for alpha > 0.
    return np.power(x, alpha)


def _check_solution_field(f: Field) -> None:
    if not f.boundary_is_zero():
        raise ValueError("field has nonzero boundary values")
    if not np.all(np.isfinite(f.values)):
        raise ValueError("field has non-finite values")
    if np.any(f.values < 0):
        raise ValueError("field has negative values")


def _first_offender(bad: np.ndarray, g: np.ndarray) -> BlowupSignal:
    idx = np.argwhere(bad)[0]  # argwhere is lexicographic in C order
    site = tuple(int(i) + 1 for i in idx)
    return BlowupSignal(site=site, g_value=float(g[tuple(idx)]))


def step_nonlinear(
    f: Field, p: Params, eps_blow: float = 0.0
) -> Field | BlowupSignal:
    """One nonlinear step, or a BlowupSignal if a denominator (nearly) vanishes.

    Blow-up is declared where 1 - alpha*delta*g^alpha <= eps_blow; the default
    eps_blow = 0 is the exact sign test (equality counts as blow-up since the
    update is undefined there).
    """
    _check_solution_field(f)
    g = neighbor_mean_interior(f.values)
    denom = 1.0 - p.alpha * p.delta * _pow(g, p.alpha)
    bad = denom <= eps_blow
    if np.any(bad):
        return _first_offender(bad, g)
    nxt = Field.zeros(f.domain)
    nxt.interior()[...] = g / np.power(denom, 1.0 / p.alpha)
    return nxt


def simulate(
    a: Field, p: Params, max_steps: int, eps_blow: float = 0.0
) -> BlowupReport:
    """Iterate the nonlinear update up to max_steps, watching for blow-up.

    The neighbor average is checked at every step s = 0..max_steps, so the
    trace has s0+1 records on blow-up at s0 and max_steps+1 records on
    survival.
    """
    if max_steps < 0:
        raise ValueError("max_steps must be >= 0")
    f = a
    trace: list[StepRecord] = []
    for s in range(max_steps + 1):
        _check_solution_field(f)
        g = neighbor_mean_interior(f.values)
        trace.append(StepRecord(max_f=f.max(), max_g=float(g.max())))
        denom = 1.0 - p.alpha * p.delta * _pow(g, p.alpha)
        bad = denom <= eps_blow
        if np.any(bad):
            sig = _first_offender(bad, g)
            return BlowupReport(
                outcome=BlewUpAt(step=s, site=sig.site, g_value=sig.g_value),
                trace=trace,
            )
        if s == max_steps:
            break
        nxt = Field.zeros(f.domain)
        nxt.interior()[...] = g / np.power(denom, 1.0 / p.alpha)
        f = nxt
    return BlowupReport(outcome=Survived(steps=max_steps), trace=trace)


def normalize_scaling(a: Field, p: Params) -> tuple[Field, Params]:
    """Rescale so the blow-up threshold becomes 1.

    Multiplies the data by (alpha*delta)^(1/alpha) and returns parameters with
    alpha*delta = 1. The rescaled trajectory is the pointwise rescaling of the
    original one, step for step, until either blows up.
    """
    factor = (p.alpha * p.delta) ** (1.0 / p.alpha)
    scaled = Field(a.domain, a.values * factor)
    return scaled, Params(alpha=p.alpha, delta=1.0 / p.alpha)
