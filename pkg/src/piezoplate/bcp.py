"""Closed-form solutions of the four plate boundary-control problems.

The plate occupies ``-h <= x <= h`` in the thickness coordinate ``x`` (x1 or
x3 depending on orientation). Temperature, potential and the upper-face
tractions are prescribed at ``x = h``; displacements, the normal heat flux
and either the surface charge (variant I) or the potential (variant II) at
``x = -h``.

Problems are labelled ``<variant>.<thickness axis>.3``: I.1.3, II.1.3,
I.3.3 and II.3.3.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from pathlib import Path
from typing import Any, Mapping

import numpy as np

from .errors import DegenerateCoupling, NonFiniteData, OutOfDomain, SchemaError, SingularDenominator
from .general import SolutionCoefficients, general_jet
from .material import (
    MaterialHexagonal,
    Orientation,
    ReducedParams,
    constitutive_matrix,
    electric_displacement,
    heat_flux,
    reduce,
    state_from_vector,
    stress,
    validate_material,
    voigt_index,
)


class Variant(enum.Enum):
    I = "I"  # lower-face charge prescribed
    II = "II"  # lower-face potential prescribed


# Voigt components (0-based) receiving the upper-face data tbar1, tbar2, tbar3.
TRACTION_VOIGT = {
    Orientation.THICKNESS1: (0, 5, 4),  # t1, t6, t5
    Orientation.THICKNESS3: (2, 3, 4),  # t3, t4, t5
}

COMMON_FIELDS = ("Tbar", "phibar", "tbar1", "tbar2", "tbar3", "ubar1", "ubar2", "ubar3", "qbar")
VARIANT_FIELD = {Variant.I: "Dbar", Variant.II: "phibar2"}


@dataclass(frozen=True)
class BoundaryData:
    """The ten prescribed boundary values.

    Exactly one of ``Dbar`` (variant I) and ``phibar2`` (variant II) is set.
    Tractions ``tbar1..3`` are mapped onto Voigt components per orientation,
    see :data:`TRACTION_VOIGT`.
    """

    Tbar: float = 0.0
    phibar: float = 0.0
    tbar1: float = 0.0
    tbar2: float = 0.0
    tbar3: float = 0.0
    ubar1: float = 0.0
    ubar2: float = 0.0
    ubar3: float = 0.0
    qbar: float = 0.0
    Dbar: float | None = None
    phibar2: float | None = None

    def __post_init__(self):
        if (self.Dbar is None) == (self.phibar2 is None):
            raise SchemaError("exactly one of Dbar and phibar2 must be given")

    @property
    def variant(self) -> Variant:
        return Variant.I if self.Dbar is not None else Variant.II

    @property
    def names(self) -> tuple[str, ...]:
        return COMMON_FIELDS + (VARIANT_FIELD[self.variant],)

    def values(self) -> np.ndarray:
        return np.array([getattr(self, n) for n in self.names], dtype=float)

    def with_values(self, values) -> BoundaryData:
        return replace(self, **{n: float(v) for n, v in zip(self.names, values, strict=True)})

    def replace(self, **changes) -> BoundaryData:
        return replace(self, **changes)

    def to_dict(self) -> dict[str, float]:
        return {n: getattr(self, n) for n in self.names}

    @classmethod
    def zeros(cls, variant: Variant) -> BoundaryData:
        return cls(**{VARIANT_FIELD[variant]: 0.0})

    @classmethod
    def from_dict(cls, raw: Mapping[str, Any]) -> BoundaryData:
        if not isinstance(raw, Mapping):
            raise SchemaError("boundary data must be a JSON object")
        allowed = set(COMMON_FIELDS) | set(VARIANT_FIELD.values())
        unknown = set(raw) - allowed
        if unknown:
            raise SchemaError(f"unknown boundary data fields: {sorted(unknown)}")
        missing = [n for n in COMMON_FIELDS if n not in raw]
        if missing:
            raise SchemaError(f"missing boundary data fields: {missing}")
        for key, value in raw.items():
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise SchemaError(f"boundary datum {key!r} must be a number")
        return cls(**{k: float(v) for k, v in raw.items()})


def _check_finite_data(data: BoundaryData):
    if not np.all(np.isfinite(data.values())):
        raise NonFiniteData("boundary data contain NaN or infinity")


@dataclass(frozen=True)
class PlateSetup:
    """Everything that defines a problem except its boundary data."""

    material: MaterialHexagonal
    orientation: Orientation
    variant: Variant
    h: float

    def __post_init__(self):
        validate_material(self.material)
        if not math.isfinite(self.h):
            raise NonFiniteData("h is not finite")
        if not self.h > 0:
            raise SchemaError(f"half-thickness h must be positive, got {self.h!r}")

    def with_data(self, data: BoundaryData) -> ProblemSpec:
        return ProblemSpec(self.material, self.orientation, self.variant, self.h, data)

    @property
    def name(self) -> str:
        return f"{self.variant.value}.{self.orientation.label}.3"


@dataclass(frozen=True)
class ProblemSpec(PlateSetup):
    """A fully specified plate problem (one of I.1.3, II.1.3, I.3.3, II.3.3)."""

    data: BoundaryData = field(default=None)

    def __post_init__(self):
        super().__post_init__()
        if not isinstance(self.data, BoundaryData):
            raise SchemaError("ProblemSpec requires BoundaryData")
        if self.data.variant is not self.variant:
            raise SchemaError(f"data populate the {self.data.variant.value} variant, "
                              f"problem is variant {self.variant.value}")

    @property
    def setup(self) -> PlateSetup:
        return PlateSetup(self.material, self.orientation, self.variant, self.h)

    @cached_property
    def params(self) -> ReducedParams:
        return reduce(self.material, self.orientation)

    def with_data(self, data: BoundaryData) -> ProblemSpec:
        return replace(self, data=data)


def problem_from_dict(raw: Mapping[str, Any], material: MaterialHexagonal) -> ProblemSpec:
    """Build a problem from its JSON layout (``orientation``, ``variant``, ``h``, ``data``)."""
    if not isinstance(raw, Mapping):
        raise SchemaError("problem must be a JSON object")
    unknown = set(raw) - {"orientation", "variant", "h", "data", "control", "name"}
    if unknown:
        raise SchemaError(f"unknown problem fields: {sorted(unknown)}")
    try:
        orientation = Orientation(raw["orientation"])
        variant = Variant(raw["variant"])
        h = raw["h"]
        data = raw["data"]
    except KeyError as exc:
        raise SchemaError(f"missing problem field {exc}") from exc
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    if isinstance(h, bool) or not isinstance(h, (int, float)):
        raise SchemaError("h must be a number")
    return ProblemSpec(material, orientation, variant, float(h), BoundaryData.from_dict(data))


def problem_to_dict(spec: ProblemSpec) -> dict[str, Any]:
    return {
        "orientation": spec.orientation.value,
        "variant": spec.variant.value,
        "h": spec.h,
        "data": spec.data.to_dict(),
    }


def load_problem(path: str | Path, material: MaterialHexagonal) -> ProblemSpec:
    try:
        raw = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from exc
    return problem_from_dict(raw, material)


# ---------------------------------------------------------------------------
# Coefficients


def _require_coupling(p: ReducedParams):
    if p.a == 0:
        raise DegenerateCoupling("a = 0 (no pyroelectric/thermal-stress coupling); "
                                 "closed forms do not apply")


def _lower_exp(p: ReducedParams, h: float) -> float:
    # exp(a (x - h)) at x = -h
    return math.exp(-2.0 * p.a * h)


def _solve_I_1_3(p: ReducedParams, d: BoundaryData, h: float):
    c, e, omega, eps, k, K = p.c, p.e, p.omega, p.eps, p.k, p.K
    if c * omega == 0:
        raise SingularDenominator("c*omega vanishes")
    T2 = -(c * d.Dbar + e * d.tbar3) / (c * omega) - K * (c * eps + e * e) / (c * omega * k) * d.qbar
    T1h = d.Tbar - T2
    F1 = -K / k * d.qbar
    F2 = d.phibar - h * F1 - K * T1h
    U31 = (d.tbar3 - e * F1) / c
    U32 = d.ubar3 + h * U31 + K * e / c * T1h * _lower_exp(p, h)
    return T1h, T2, F1, F2, U31, U32


def _solve_I_3_3(p: ReducedParams, d: BoundaryData, h: float):
    c, e, beta, omega, eps, k, kp, K = p.c, p.e, p.beta, p.omega, p.eps, p.k, p.kprime, p.K
    A = beta * e + c * omega
    if A == 0:
        raise SingularDenominator("beta*e + c*omega vanishes")
    T2 = -(e * d.tbar1 + c * d.Dbar + K / k * (e * e + c * eps) * d.qbar) / A
    T1h = d.Tbar - T2
    F1 = -d.qbar / kp
    F2 = d.phibar - h * F1 - K * T1h
    U31 = (omega * d.tbar1 - beta * d.Dbar + (e * omega - beta * eps) * d.qbar / kp) / A
    U32 = d.ubar3 + h * U31 - p.V / (p.a * c) * T1h * _lower_exp(p, h)
    return T1h, T2, F1, F2, U31, U32


def _potential_drop_amplitude(p: ReducedParams, d: BoundaryData, h: float) -> float:
    """Amplitude of exp(a (x - h)) in T for the two-electrode variants."""
    bracket = 2.0 * h / p.k * (d.qbar + p.kprime / (2.0 * h) * (d.phibar - d.phibar2))
    # T1 = bracket / (e^{ah} - e^{-ah}); scaled by e^{ah}: bracket / (1 - e^{-2ah})
    return bracket / -math.expm1(-2.0 * p.a * h)


def _solve_II_1_3(p: ReducedParams, d: BoundaryData, h: float):
    c, e, k, kp, K = p.c, p.e, p.k, p.kprime, p.K
    T1h = _potential_drop_amplitude(p, d, h)
    T2 = d.Tbar - T1h
    F1 = -d.qbar / kp
    F2 = d.phibar + h * K / k * d.qbar - K * T1h
    U31 = (d.tbar3 - e * F1) / c
    U32 = d.ubar3 + h * U31 + K * e / c * T1h * _lower_exp(p, h)
    return T1h, T2, F1, F2, U31, U32


def _solve_II_3_3(p: ReducedParams, d: BoundaryData, h: float):
    c, e, beta, k, kp, K = p.c, p.e, p.beta, p.k, p.kprime, p.K
    T1h = _potential_drop_amplitude(p, d, h)
    T2 = d.Tbar - T1h
    F1 = -d.qbar / kp
    F2 = d.phibar + h * K / k * d.qbar - K * T1h
    U31 = (d.tbar1 + beta * T2 - e * F1) / c
    U32 = d.ubar3 + h * U31 - p.V / (p.a * c) * T1h * _lower_exp(p, h)
    return T1h, T2, F1, F2, U31, U32


def _in_plane_thickness1(m: MaterialHexagonal, p: ReducedParams, d: BoundaryData, h, T1h):
    U11 = (m.beta1 * d.Tbar + d.tbar1 - m.beta1 * T1h) / m.c11
    U21 = d.tbar2 / m.c66
    U12 = d.ubar1 + h * U11 - m.beta1 / (p.a * m.c11) * T1h * _lower_exp(p, h)
    U22 = d.ubar2 + h * U21
    return U11, U12, U21, U22


def _in_plane_thickness3(m: MaterialHexagonal, d: BoundaryData, h):
    U11 = d.tbar3 / m.c44
    U21 = d.tbar2 / m.c44
    return U11, d.ubar1 + h * U11, U21, d.ubar2 + h * U21


_PART1 = {
    (Variant.I, Orientation.THICKNESS1): _solve_I_1_3,
    (Variant.II, Orientation.THICKNESS1): _solve_II_1_3,
    (Variant.I, Orientation.THICKNESS3): _solve_I_3_3,
    (Variant.II, Orientation.THICKNESS3): _solve_II_3_3,
}


def assemble_coefficients(spec: ProblemSpec) -> SolutionCoefficients:
    """Integration constants satisfying the ten boundary conditions of ``spec``.

    The returned ``T1`` is referenced to the upper face (``x_ref = h``).
    """
    _check_finite_data(spec.data)
    p = spec.params
    _require_coupling(p)
    d, h = spec.data, spec.h
    try:
        T1h, T2, F1, F2, U31, U32 = _PART1[spec.variant, spec.orientation](p, d, h)
        if spec.orientation is Orientation.THICKNESS1:
            U11, U12, U21, U22 = _in_plane_thickness1(spec.material, p, d, h, T1h)
        else:
            U11, U12, U21, U22 = _in_plane_thickness3(spec.material, d, h)
    except OverflowError as exc:
        raise NonFiniteData(f"|a h| = {abs(p.a * h):.4g} overflows the exponentials") from exc
    coeffs = SolutionCoefficients(T1h, T2, F1, F2, U11, U12, U21, U22, U31, U32, x_ref=h)
    if not coeffs.is_finite():
        raise NonFiniteData("coefficients overflowed; |a h| too large for this data")
    return coeffs


@dataclass(frozen=True)
class PanelSolution:
    spec: ProblemSpec
    params: ReducedParams
    coeffs: SolutionCoefficients


def solve_panel(spec: ProblemSpec) -> PanelSolution:
    """Solve the boundary value problem ``spec`` in closed form."""
    return PanelSolution(spec, spec.params, assemble_coefficients(spec))


# ---------------------------------------------------------------------------
# Field evaluation


@dataclass(frozen=True)
class StateSample:
    """Complete field state at one thickness coordinate."""

    x: float
    T: float
    phi: float
    u: np.ndarray
    t: np.ndarray
    D: np.ndarray
    q: np.ndarray

    COLUMNS = ("x", "T", "phi", "u1", "u2", "u3", "t1", "t2", "t3", "t4", "t5", "t6",
               "D1", "D2", "D3", "q1", "q2", "q3")

    def row(self) -> list[float]:
        return [float(v) for v in (self.x, self.T, self.phi, *self.u, *self.t, *self.D, *self.q)]


def field_jets(sol: PanelSolution, x, absolute: bool = False) -> dict[str, tuple]:
    """``(f, f', f'')`` for each of T, phi, u1, u2, u3 at ``x`` (scalar or array).

    With ``absolute=True`` every entry is the sum of absolute values of the
    terms that make it up; these sums bound the rounding error of the
    corresponding value.
    """
    x = np.asarray(x, dtype=float)
    p, cf, m = sol.params, sol.coeffs, sol.spec.material
    zero = np.zeros_like(x)
    g = cf.T1 * np.exp(p.a * (x - cf.x_ref))
    ag = p.a * g
    aag = p.a * ag
    thickness1 = sol.spec.orientation is Orientation.THICKNESS1
    r = m.beta1 / m.c11 if thickness1 else 0.0
    if not absolute:
        jets = general_jet(p, cf, x)
        jets["u3"] = jets.pop("u")
        jets["u1"] = (r / p.a * g + cf.U11 * x + cf.U12, r * g + cf.U11 + zero, r * ag)
        jets["u2"] = (cf.U21 * x + cf.U22, cf.U21 + zero, zero)
        return jets
    A = np.abs
    g, ag, aag = A(g), A(ag), A(aag)
    amp_u = abs(p.V / (p.a * p.c))
    r = abs(r)
    return {
        "T": (g + abs(cf.T2), ag, aag),
        "phi": (abs(p.K) * g + A(cf.F1 * x) + abs(cf.F2), abs(p.K) * ag + abs(cf.F1), abs(p.K) * aag),
        "u1": (r / abs(p.a) * g + A(cf.U11 * x) + abs(cf.U12), r * g + abs(cf.U11), r * ag),
        "u2": (A(cf.U21 * x) + abs(cf.U22), abs(cf.U21) + zero, zero),
        "u3": (amp_u * g + A(cf.U31 * x) + abs(cf.U32), amp_u * ag + abs(cf.U31), amp_u * aag),
    }


def _state_vectors(jets, n: int, order: int) -> np.ndarray:
    """Stack kinematic states as columns of :func:`state_vector` layout.

    ``order=1`` gives the x-derivative of the state, whose constitutive image
    is the x-derivative of the fluxes.
    """
    T = np.asarray(jets["T"][order], dtype=float)
    S = np.zeros((16,) + T.shape)
    for i, key in enumerate(("u1", "u2", "u3")):
        S[3 * i + n] = jets[key][1 + order]
    S[9 + n] = jets["phi"][1 + order]
    S[12 + n] = jets["T"][1 + order]
    S[15] = T
    return S


def _fluxes(sol: PanelSolution, x, order: int = 0):
    """(fluxes, magnitudes): rows t1..t6, D1..D3, q1..q3 of the constitutive map."""
    J = constitutive_matrix(sol.spec.material)
    n = sol.spec.orientation.normal_axis
    S = _state_vectors(field_jets(sol, x), n, order)
    S_abs = _state_vectors(field_jets(sol, x, absolute=True), n, order)
    return J @ S, np.abs(J) @ np.abs(S_abs)


def _check_domain(sol: PanelSolution, x):
    h = sol.spec.h
    x = np.asarray(x)
    if np.any(x < -h * (1 + 1e-14)) or np.any(x > h * (1 + 1e-14)):
        raise OutOfDomain(f"x outside [-{h!r}, {h!r}]")


def evaluate_state(sol: PanelSolution, x: float) -> StateSample:
    """Fields and derived fluxes of the solved panel at thickness coordinate ``x``."""
    x = float(x)
    _check_domain(sol, x)
    m = sol.spec.material
    jets = {k: tuple(float(v) for v in jet) for k, jet in field_jets(sol, x).items()}
    ks = state_from_vector(_state_vectors(jets, sol.spec.orientation.normal_axis, 0))
    u = np.array([jets["u1"][0], jets["u2"][0], jets["u3"][0]])
    return StateSample(x, jets["T"][0], jets["phi"][0], u,
                       stress(m, ks), electric_displacement(m, ks), heat_flux(m, ks))


def sample_profile(sol: PanelSolution, n: int = 201) -> list[StateSample]:
    """States at ``n`` uniformly spaced points from ``-h`` to ``h`` inclusive."""
    if n < 2:
        raise ValueError("need at least two samples")
    h = sol.spec.h
    xs = np.linspace(-h, h, n)
    xs[0], xs[-1] = -h, h
    return [evaluate_state(sol, x) for x in xs]


@dataclass(frozen=True)
class ConditionCheck:
    """One boundary condition or field equation evaluated on a solution.

    ``scale`` is the sum of absolute values of the terms that produce
    ``computed``; the relative error is taken against it (or against the
    prescribed value when that is larger).
    """

    name: str
    computed: float
    prescribed: float
    scale: float

    @property
    def error(self) -> float:
        return abs(self.computed - self.prescribed)

    @property
    def relative_error(self) -> float:
        denom = max(self.scale, abs(self.prescribed))
        return self.error / denom if denom > 0 else self.error


def boundary_checks(sol: PanelSolution) -> list[ConditionCheck]:
    """All ten boundary conditions, evaluated through the constitutive layer."""
    spec = sol.spec
    n, h, d = spec.orientation.normal_axis, spec.h, spec.data
    x = np.array([h, -h])
    jets = field_jets(sol, x)
    mags = field_jets(sol, x, absolute=True)
    F, F_abs = _fluxes(sol, x)
    top, bot = 0, 1
    checks = [
        ConditionCheck("T(h)", jets["T"][0][top], d.Tbar, mags["T"][0][top]),
        ConditionCheck("phi(h)", jets["phi"][0][top], d.phibar, mags["phi"][0][top]),
    ]
    for k, p in enumerate(TRACTION_VOIGT[spec.orientation]):
        checks.append(ConditionCheck(f"t{p + 1}(h)", F[p, top], getattr(d, f"tbar{k + 1}"), F_abs[p, top]))
    for i in range(3):
        key = f"u{i + 1}"
        checks.append(ConditionCheck(f"{key}(-h)", jets[key][0][bot], getattr(d, f"ubar{i + 1}"),
                                     mags[key][0][bot]))
    checks.append(ConditionCheck(f"-q{n + 1}(-h)", -F[9 + n, bot], d.qbar, F_abs[9 + n, bot]))
    if spec.variant is Variant.I:
        checks.append(ConditionCheck(f"-D{n + 1}(-h)", -F[6 + n, bot], d.Dbar, F_abs[6 + n, bot]))
    else:
        checks.append(ConditionCheck("phi(-h)", jets["phi"][0][bot], d.phibar2, mags["phi"][0][bot]))
    return checks


FIELD_EQUATIONS = ("div t_1", "div t_2", "div t_3", "div D", "div q")


def field_residuals(sol: PanelSolution, x) -> tuple[np.ndarray, np.ndarray]:
    """Divergences of stress, electric displacement and heat flux at ``x``.

    Returns ``(residual, scale)``, each of shape ``(5,) + shape(x)`` in the
    order of :data:`FIELD_EQUATIONS`. Each residual is the x-derivative of a
    normal flux component and vanishes for an equilibrium solution.
    """
    n = sol.spec.orientation.normal_axis
    dF, dF_abs = _fluxes(sol, x, order=1)
    rows = [voigt_index(n, l) for l in range(3)] + [6 + n, 9 + n]
    return dF[rows], dF_abs[rows]


def lower_face_summary(sol: PanelSolution) -> tuple[float, float]:
    """``(phi(-h), T(-h))`` from the explicit endpoint formulas.

    Independent of the coefficient path used by :func:`evaluate_state`.
    """
    spec = sol.spec
    p, d, h = sol.params, spec.data, spec.h
    c, e, omega, eps, k, kp, K = p.c, p.e, p.omega, p.eps, p.k, p.kprime, p.K
    em1 = math.expm1(-2.0 * p.a * h)  # e^{-2ah} - 1
    if spec.variant is Variant.II:
        T_low = d.Tbar - 2.0 * h / k * d.qbar - kp / k * (d.phibar - d.phibar2)
        return d.phibar2, T_low
    if spec.orientation is Orientation.THICKNESS1:
        drive = (c * d.Dbar + e * d.tbar3) / (c * omega) + K * (c * eps + e * e) / (c * omega * k) * d.qbar
    else:
        drive = (e * d.tbar1 + c * d.Dbar + (e * e + c * eps) * d.qbar / kp) / (p.beta * e + c * omega)
    phi_low = K * em1 * (d.Tbar + drive) + d.phibar + 2.0 * h / kp * d.qbar
    T_low = em1 * drive + (em1 + 1.0) * d.Tbar
    return phi_low, T_low
