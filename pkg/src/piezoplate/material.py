"""Hexagonal 6mm piezothermoelastic material data and constitutive evaluation.

Coordinates are chosen with x3 along the poling direction. All quantities are
SI; the temperature entering the constitutive law is the increment
T = theta - theta0.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import asdict, dataclass, fields
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

import numpy as np

from .errors import DegenerateCrossFlux, NonPhysical, SchemaError, SymmetryViolation

# Voigt (compressed) index map, 0-based: 11, 22, 33, 23, 31, 12.
VOIGT_PAIRS = ((0, 0), (1, 1), (2, 2), (1, 2), (2, 0), (0, 1))

_VOIGT_LOOKUP = {}
for _p, (_i, _j) in enumerate(VOIGT_PAIRS):
    _VOIGT_LOOKUP[(_i, _j)] = _p
    _VOIGT_LOOKUP[(_j, _i)] = _p


def voigt_index(i: int, j: int) -> int:
    """Return the 0-based Voigt index of the symmetric pair (i, j)."""
    return _VOIGT_LOOKUP[(i, j)]


def voigt_pair(p: int) -> tuple[int, int]:
    """Return the canonical tensor index pair of Voigt index ``p`` (0-based)."""
    return VOIGT_PAIRS[p]


C66_RTOL = 1e-12


@dataclass(frozen=True)
class MaterialHexagonal:
    """Constitutive coefficients of a 6mm (C6v) piezothermoelastic material.

    Attributes
    ----------
    c11, c12, c13, c33, c44, c66 : float
        Elastic moduli (Pa). ``c66`` must equal ``(c11 - c12)/2``.
    e15, e31, e33 : float
        Piezoelectric moduli (C/m^2).
    eps11, eps33 : float
        Permittivities (F/m).
    omega1, omega2, omega3 : float
        Pyroelectric coefficients (C/(m^2 K)).
    beta1, beta2, beta3 : float
        Thermal stress moduli (Pa/K).
    kappa11, kappa33 : float
        Fourier heat conduction coefficients (W/(m K)).
    kappaE11, kappaE33 : float
        Electro-thermal cross coefficients: heat flux per unit electric
        field (A/m).
    theta0 : float
        Reference absolute temperature (K).
    rho0 : float
        Reference mass density (kg/m^3).
    name : str
        Free-form label.
    """

    c11: float
    c12: float
    c13: float
    c33: float
    c44: float
    c66: float
    e15: float
    e31: float
    e33: float
    eps11: float
    eps33: float
    omega1: float
    omega2: float
    omega3: float
    beta1: float
    beta2: float
    beta3: float
    kappa11: float
    kappa33: float
    kappaE11: float
    kappaE33: float
    theta0: float
    rho0: float
    name: str = ""

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


COEFFICIENT_FIELDS = tuple(f.name for f in fields(MaterialHexagonal) if f.name != "name")
_POSITIVE_FIELDS = ("eps11", "eps33", "kappa11", "kappa33", "c11", "c33", "c44", "theta0", "rho0")


def material_from_dict(raw: Mapping[str, Any]) -> MaterialHexagonal:
    """Build an (unvalidated) material from a mapping with the exact field names."""
    if not isinstance(raw, Mapping):
        raise SchemaError("material must be a JSON object")
    unknown = set(raw) - set(COEFFICIENT_FIELDS) - {"name"}
    if unknown:
        raise SchemaError(f"unknown material fields: {sorted(unknown)}")
    missing = [k for k in (*COEFFICIENT_FIELDS, "name") if k not in raw]
    if missing:
        raise SchemaError(f"missing material fields: {missing}")
    values = {}
    for key in COEFFICIENT_FIELDS:
        v = raw[key]
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise SchemaError(f"material field {key!r} must be a number")
        values[key] = float(v)
    if not isinstance(raw["name"], str):
        raise SchemaError("material field 'name' must be a string")
    return MaterialHexagonal(name=raw["name"], **values)


def validate_material(raw: MaterialHexagonal | Mapping[str, Any]) -> MaterialHexagonal:
    """Check the 6mm invariants and return the material.

    Raises
    ------
    NonPhysical
        A coefficient is not finite, or a coefficient that must be positive
        is not.
    SymmetryViolation
        ``c66 != (c11 - c12)/2`` beyond a relative tolerance of 1e-12.
    DegenerateCrossFlux
        ``kappaE11`` or ``kappaE33`` is zero.
    """
    m = raw if isinstance(raw, MaterialHexagonal) else material_from_dict(raw)
    for key in COEFFICIENT_FIELDS:
        if not math.isfinite(getattr(m, key)):
            raise NonPhysical(f"{key} is not finite")
    for key in _POSITIVE_FIELDS:
        if not getattr(m, key) > 0:
            raise NonPhysical(f"{key} must be positive, got {getattr(m, key)!r}")
    expected = 0.5 * (m.c11 - m.c12)
    if abs(m.c66 - expected) > C66_RTOL * max(abs(expected), abs(m.c66), abs(m.c11), abs(m.c12)):
        raise SymmetryViolation(f"c66={m.c66!r} but (c11 - c12)/2 = {expected!r}")
    for key in ("kappaE11", "kappaE33"):
        if getattr(m, key) == 0:
            raise DegenerateCrossFlux(f"{key} must be nonzero")
    return m


def load_material(path: str | Path) -> MaterialHexagonal:
    """Read and validate a material JSON file."""
    try:
        raw = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from exc
    return validate_material(material_from_dict(raw))


def save_material(m: MaterialHexagonal, path: str | Path) -> None:
    Path(path).write_text(json.dumps(m.to_dict(), indent=2) + "\n")


def sample_material() -> MaterialHexagonal:
    """The bundled illustrative PZT-class material (not measured data)."""
    text = resources.files("piezoplate").joinpath("data/pzt_illustrative.json").read_text()
    return validate_material(material_from_dict(json.loads(text)))


class Orientation(enum.Enum):
    """Plate orientation relative to the poling axis x3."""

    THICKNESS1 = "thickness1"  # plate normal x1, poling in-plane
    THICKNESS3 = "thickness3"  # plate normal x3, along the poling axis

    @property
    def normal_axis(self) -> int:
        return 0 if self is Orientation.THICKNESS1 else 2

    @property
    def label(self) -> str:
        return "1" if self is Orientation.THICKNESS1 else "3"


@dataclass(frozen=True)
class ReducedParams:
    """Scalar coefficients of the thickness-direction system.

    ``c, e, eprime, beta, omega, eps, k, kprime`` are the material entries
    picked by the orientation; ``K, A, B, a, V`` are derived from them, and
    ``stable`` flags ``a > 0`` (no exponential growth as h grows).
    """

    c: float
    e: float
    eprime: float
    beta: float
    omega: float
    eps: float
    k: float
    kprime: float
    K: float
    A: float
    B: float
    a: float
    V: float
    stable: bool

    @classmethod
    def from_scalars(cls, c, e, eprime, beta, omega, eps, k, kprime) -> ReducedParams:
        K = k / kprime
        A = beta * e + c * omega
        B = e * eprime + c * eps
        a = A / (K * B)
        # beta - K a e' with the beta*e*e' terms cancelled analytically
        V = c * (beta * eps - omega * eprime) / B
        return cls(c, e, eprime, beta, omega, eps, k, kprime, K, A, B, a, V, a > 0)


def reduce(m: MaterialHexagonal, o: Orientation) -> ReducedParams:
    """Pick the scalar coefficients governing the plate with orientation ``o``."""
    if o is Orientation.THICKNESS1:
        return ReducedParams.from_scalars(
            c=m.c44, e=m.e15, eprime=m.e15, beta=0.0, omega=m.omega1,
            eps=m.eps11, k=m.kappa11, kprime=m.kappaE11,
        )
    return ReducedParams.from_scalars(
        c=m.c33, e=m.e33, eprime=m.e33, beta=m.beta3, omega=m.omega3,
        eps=m.eps33, k=m.kappa33, kprime=m.kappaE33,
    )


@dataclass(frozen=True)
class KinematicState:
    """Local kinematic quantities: ``grad_u[i, j] = du_i/dx_j``."""

    grad_u: np.ndarray
    grad_phi: np.ndarray
    grad_T: np.ndarray
    T: float

    def __post_init__(self):
        object.__setattr__(self, "grad_u", np.asarray(self.grad_u, dtype=float).reshape(3, 3))
        object.__setattr__(self, "grad_phi", np.asarray(self.grad_phi, dtype=float).reshape(3))
        object.__setattr__(self, "grad_T", np.asarray(self.grad_T, dtype=float).reshape(3))
        object.__setattr__(self, "T", float(self.T))

    @classmethod
    def zero(cls) -> KinematicState:
        return cls(np.zeros((3, 3)), np.zeros(3), np.zeros(3), 0.0)

    def __add__(self, other: KinematicState) -> KinematicState:
        return KinematicState(self.grad_u + other.grad_u, self.grad_phi + other.grad_phi,
                              self.grad_T + other.grad_T, self.T + other.T)

    def __rmul__(self, alpha: float) -> KinematicState:
        return KinematicState(alpha * self.grad_u, alpha * self.grad_phi,
                              alpha * self.grad_T, alpha * self.T)


def stress(m: MaterialHexagonal, ks: KinematicState) -> np.ndarray:
    """Voigt stress (t1..t6) in Pa."""
    g = ks.grad_u
    p = ks.grad_phi
    T = ks.T
    return np.array([
        m.c11 * g[0, 0] + m.c12 * g[1, 1] + m.c13 * g[2, 2] + m.e31 * p[2] - m.beta1 * T,
        m.c12 * g[0, 0] + m.c11 * g[1, 1] + m.c13 * g[2, 2] + m.e31 * p[2] - m.beta2 * T,
        m.c13 * (g[0, 0] + g[1, 1]) + m.c33 * g[2, 2] + m.e33 * p[2] - m.beta3 * T,
        m.c44 * (g[2, 1] + g[1, 2]) + m.e15 * p[1],
        m.c44 * (g[2, 0] + g[0, 2]) + m.e15 * p[0],
        m.c66 * (g[0, 1] + g[1, 0]),
    ])


def electric_displacement(m: MaterialHexagonal, ks: KinematicState) -> np.ndarray:
    """Electric displacement D in C/m^2."""
    g = ks.grad_u
    p = ks.grad_phi
    T = ks.T
    return np.array([
        m.e15 * (g[2, 0] + g[0, 2]) - m.eps11 * p[0] + m.omega1 * T,
        m.e15 * (g[2, 1] + g[1, 2]) - m.eps11 * p[1] + m.omega2 * T,
        m.e31 * (g[0, 0] + g[1, 1]) + m.e33 * g[2, 2] - m.eps33 * p[2] + m.omega3 * T,
    ])


def heat_flux(m: MaterialHexagonal, ks: KinematicState) -> np.ndarray:
    """Heat flux q = -kappa grad T - kappaE E with E = -grad phi (W/m^2)."""
    kappa = np.array([m.kappa11, m.kappa11, m.kappa33])
    kappaE = np.array([m.kappaE11, m.kappaE11, m.kappaE33])
    return -kappa * ks.grad_T + kappaE * ks.grad_phi


def state_vector(ks: KinematicState) -> np.ndarray:
    """Flatten a kinematic state to 16 entries: grad_u (row-major), grad_phi, grad_T, T."""
    return np.concatenate([ks.grad_u.ravel(), ks.grad_phi, ks.grad_T, [ks.T]])


def state_from_vector(v) -> KinematicState:
    v = np.asarray(v, dtype=float)
    return KinematicState(v[:9].reshape(3, 3), v[9:12], v[12:15], v[15])


@lru_cache(maxsize=256)
def constitutive_matrix(m: MaterialHexagonal) -> np.ndarray:
    """12x16 matrix mapping :func:`state_vector` to (t1..t6, D1..D3, q1..q3)."""
    cols = []
    for j in range(16):
        ks = state_from_vector(np.eye(16)[j])
        cols.append(np.concatenate([stress(m, ks), electric_displacement(m, ks), heat_flux(m, ks)]))
    J = np.column_stack(cols)
    J.flags.writeable = False
    return J
