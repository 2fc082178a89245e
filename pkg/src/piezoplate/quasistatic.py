"""Quasi-static sweeps over slowly varying boundary data.

Each instant is an independent equilibrium solve; there is no inertia and
no memory. A :class:`Schedule` holds boundary data at increasing parameter
values ``tau`` and interpolates linearly in between.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .bcp import BoundaryData, PanelSolution, PlateSetup, solve_panel
from .errors import OutOfSchedule, SchemaError


@dataclass(frozen=True)
class Schedule:
    taus: tuple[float, ...]
    data: tuple[BoundaryData, ...]

    def __post_init__(self):
        taus = tuple(float(t) for t in self.taus)
        if not taus or len(taus) != len(self.data):
            raise SchemaError("schedule needs one BoundaryData per tau and at least one sample")
        if not np.all(np.isfinite(taus)) or np.any(np.diff(taus) <= 0):
            raise SchemaError("schedule taus must be finite and strictly increasing")
        variants = {d.variant for d in self.data}
        if len(variants) != 1:
            raise SchemaError("all schedule samples must populate the same variant")
        object.__setattr__(self, "taus", taus)
        object.__setattr__(self, "data", tuple(self.data))

    @property
    def variant(self):
        return self.data[0].variant

    @property
    def span(self) -> tuple[float, float]:
        return self.taus[0], self.taus[-1]

    def values(self) -> np.ndarray:
        """Data as an array of shape (samples, 10)."""
        return np.array([d.values() for d in self.data])

    def at(self, tau: float) -> BoundaryData:
        """Piecewise-linear interpolation of the data at ``tau``."""
        lo, hi = self.span
        tau = float(tau)
        if not lo <= tau <= hi:
            raise OutOfSchedule(f"tau={tau!r} outside schedule span [{lo!r}, {hi!r}]")
        i = int(np.searchsorted(self.taus, tau, side="right")) - 1
        if i >= len(self.taus) - 1:
            return self.data[-1]
        t0, t1 = self.taus[i], self.taus[i + 1]
        s = (tau - t0) / (t1 - t0)
        v0, v1 = self.data[i].values(), self.data[i + 1].values()
        return self.data[i].with_values(v0 + s * (v1 - v0))

    def to_json(self) -> list:
        return [{"tau": t, "data": d.to_dict()} for t, d in zip(self.taus, self.data)]

    @classmethod
    def from_json(cls, raw) -> Schedule:
        if not isinstance(raw, list):
            raise SchemaError("schedule must be a JSON array of {tau, data} objects")
        taus, data = [], []
        for item in raw:
            if not isinstance(item, dict) or set(item) != {"tau", "data"}:
                raise SchemaError("each schedule entry needs exactly the keys 'tau' and 'data'")
            tau = item["tau"]
            if isinstance(tau, bool) or not isinstance(tau, (int, float)):
                raise SchemaError("tau must be a number")
            taus.append(tau)
            data.append(BoundaryData.from_dict(item["data"]))
        return cls(tuple(taus), tuple(data))


def load_schedule(path: str | Path) -> Schedule:
    try:
        raw = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from exc
    return Schedule.from_json(raw)


def sweep(setup: PlateSetup, sched: Schedule, times: Sequence[float],
          tau_of_t: Callable[[float], float] | None = None) -> list[tuple[float, PanelSolution]]:
    """Solve at each time; ``tau_of_t`` maps time to the schedule parameter (identity by default).

    Any :class:`~piezoplate.bcp.ProblemSpec` works as ``setup``; its own data are ignored.
    """
    if sched.variant is not setup.variant:
        raise SchemaError(f"schedule is for variant {sched.variant.value}, problem is {setup.variant.value}")
    setup = PlateSetup(setup.material, setup.orientation, setup.variant, setup.h)
    taus = [float(tau_of_t(t)) if tau_of_t else float(t) for t in times]
    lo, hi = sched.span
    for tau in taus:
        if not lo <= tau <= hi:
            raise OutOfSchedule(f"tau={tau!r} outside schedule span [{lo!r}, {hi!r}]")
    return [(tau, solve_panel(setup.with_data(sched.at(tau)))) for tau in taus]


@dataclass(frozen=True)
class RateFlag:
    interval: tuple[float, float]
    field: str
    rate: float


@dataclass(frozen=True)
class SlownessReport:
    """Advisory only: intervals where some datum changes faster than allowed."""

    flags: tuple[RateFlag, ...]
    max_rates: dict

    @property
    def ok(self) -> bool:
        return not self.flags


def slowness_check(sched: Schedule, threshold) -> SlownessReport:
    """Flag schedule intervals whose finite-difference rate ``|d datum / d tau|`` exceeds ``threshold``.

    ``threshold`` is one number for every datum or a mapping from datum name to limit;
    data missing from the mapping are not checked.
    """
    names = sched.data[0].names
    if isinstance(threshold, dict):
        unknown = set(threshold) - set(names)
        if unknown:
            raise SchemaError(f"thresholds for unknown data: {sorted(unknown)}")
        limits = {k: float(threshold.get(k, np.inf)) for k in names}
    else:
        limits = dict.fromkeys(names, float(threshold))
    flags = []
    max_rates = dict.fromkeys(names, 0.0)
    vals = sched.values()
    for i in range(len(sched.taus) - 1):
        dt = sched.taus[i + 1] - sched.taus[i]
        rates = np.abs(vals[i + 1] - vals[i]) / dt
        for name, rate in zip(names, rates):
            max_rates[name] = max(max_rates[name], float(rate))
            if rate > limits[name]:
                flags.append(RateFlag((sched.taus[i], sched.taus[i + 1]), name, float(rate)))
    return SlownessReport(tuple(flags), max_rates)
