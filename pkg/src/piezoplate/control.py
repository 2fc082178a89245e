"""Single-datum boundary control.

Every field value of a solved panel is affine in each boundary datum. To hit
a target temperature (or potential) on a plane ``x = x_target`` we leave one
datum free, evaluate the solver twice (the problem with the free datum zeroed,
and the unit response to that datum alone) and solve the scalar equation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .bcp import BoundaryData, PanelSolution, ProblemSpec, Variant, field_jets, solve_panel
from .errors import InvalidFreeDatum, OutOfDomain, Uncontrollable
from .material import Orientation


class TargetField(enum.Enum):
    TEMPERATURE = "T"
    POTENTIAL = "phi"


# Data that may be left free, per problem.
FREE_DATA = {
    (Variant.I, Orientation.THICKNESS1): ("Dbar", "tbar3", "qbar", "Tbar"),
    (Variant.I, Orientation.THICKNESS3): ("tbar1", "Dbar", "qbar", "Tbar"),
    (Variant.II, Orientation.THICKNESS1): ("Tbar", "qbar", "phibar", "phibar2"),
    (Variant.II, Orientation.THICKNESS3): ("Tbar", "qbar", "phibar", "phibar2"),
}

# |slope| below this multiple of the rounding floor counts as zero.
_ZERO_SLOPE = 64 * np.finfo(float).eps


def _target_field(field) -> TargetField:
    try:
        return TargetField(field.value if isinstance(field, TargetField) else field)
    except ValueError:
        raise InvalidFreeDatum(f"unknown target field {field!r}") from None


def admissible(spec: ProblemSpec, free: str, field=TargetField.TEMPERATURE) -> TargetField:
    """Check that ``free`` may steer ``field`` for this problem; return the field."""
    field = _target_field(field)
    allowed = FREE_DATA[(spec.variant, spec.orientation)]
    if free not in allowed:
        raise InvalidFreeDatum(f"{free!r} is not a control datum of {spec.name}; choose from {allowed}")
    if field is TargetField.POTENTIAL and spec.variant is Variant.II:
        raise InvalidFreeDatum(f"{spec.name} controls temperature only")
    return field


def _value_and_floor(sol: PanelSolution, field: TargetField, x: float):
    jets = field_jets(sol, x)
    mags = field_jets(sol, x, absolute=True)
    return float(jets[field.value][0]), float(mags[field.value][0])


def sensitivity(spec: ProblemSpec, free: str, field=TargetField.TEMPERATURE, x: float = None) -> float:
    """Slope of the target field at ``x`` with respect to the free datum."""
    field = admissible(spec, free, field)
    x = -spec.h if x is None else float(x)
    unit = BoundaryData.zeros(spec.variant).replace(**{free: 1.0})
    return _value_and_floor(solve_panel(spec.with_data(unit)), field, x)[0]


@dataclass(frozen=True)
class ControlQuery:
    """Target ``field(x_target) = target_value`` by adjusting datum ``free`` of ``spec``.

    The current value of ``free`` in ``spec.data`` is ignored.
    """

    spec: ProblemSpec
    free: str
    field: TargetField
    x_target: float
    target_value: float

    def __post_init__(self):
        object.__setattr__(self, "field", admissible(self.spec, self.free, self.field))
        x, h = float(self.x_target), self.spec.h
        if not (np.isfinite(x) and np.isfinite(self.target_value)):
            raise OutOfDomain("target coordinate and value must be finite")
        if x < -h or x > h:
            raise OutOfDomain(f"x_target {x!r} outside [-{h!r}, {h!r}]")
        if x == h:
            raise Uncontrollable("the upper-face value is fixed by the upper-face data")
        object.__setattr__(self, "x_target", x)


def invert(query: ControlQuery) -> tuple[float, PanelSolution]:
    """Value of the free datum that meets the target, and the resulting solution."""
    spec, free, field, x = query.spec, query.free, query.field, query.x_target
    base_spec = spec.with_data(spec.data.replace(**{free: 0.0}))
    base, _ = _value_and_floor(solve_panel(base_spec), field, x)
    unit = BoundaryData.zeros(spec.variant).replace(**{free: 1.0})
    slope, floor = _value_and_floor(solve_panel(spec.with_data(unit)), field, x)
    if not abs(slope) > _ZERO_SLOPE * floor:
        raise Uncontrollable(f"{field.value}({x!r}) does not depend on {free}")
    value = (query.target_value - base) / slope
    if not np.isfinite(value):
        raise Uncontrollable(f"required {free} is not finite")
    return value, solve_panel(spec.with_data(spec.data.replace(**{free: value})))


def achieved(sol: PanelSolution, field, x: float) -> float:
    """The controlled field of ``sol`` at ``x``."""
    return _value_and_floor(sol, _target_field(field), float(x))[0]
