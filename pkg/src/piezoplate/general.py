"""Exact general solution of the coupled thickness-direction system.

The system, for scalar unknowns T(x), phi(x), u(x),

    c u'' - beta T' + e' phi'' = 0
    e u'' + omega T' - eps phi'' = 0
    -k T'' + k' phi'' = 0

has the solution

    T   = T1 exp(a (x - x_ref)) + T2
    phi = K T1 exp(a (x - x_ref)) + F1 x + F2
    u   = V / (a c) T1 exp(a (x - x_ref)) + U1 x + U2

with K, a, V taken from :class:`~piezoplate.material.ReducedParams`. The
amplitude T1 is referenced to ``x_ref`` so that the exponential can be
evaluated near a face without overflow; ``x_ref = 0`` gives the textbook
form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace

import numpy as np

from .errors import DegenerateCoupling
from .material import ReducedParams


def first_order_solution(a, b, gamma, x):
    """General solution ``gamma * exp(a x) + b`` of ``f' = a (f - b)``."""
    return gamma * np.exp(a * x) + b


@dataclass(frozen=True)
class SolutionCoefficients:
    """Integration constants of the thickness-direction solution.

    ``U11..U22`` are the affine in-plane displacement constants (slope,
    offset); ``U31, U32`` belong to the coupled normal component. ``T1`` is
    the amplitude of ``exp(a (x - x_ref))``.
    """

    T1: float = 0.0
    T2: float = 0.0
    F1: float = 0.0
    F2: float = 0.0
    U11: float = 0.0
    U12: float = 0.0
    U21: float = 0.0
    U22: float = 0.0
    U31: float = 0.0
    U32: float = 0.0
    x_ref: float = 0.0

    NAMES = ("T1", "T2", "F1", "F2", "U11", "U12", "U21", "U22", "U31", "U32")

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, n) for n in self.NAMES])

    @classmethod
    def from_array(cls, values, x_ref: float = 0.0) -> SolutionCoefficients:
        return cls(*(float(v) for v in values), x_ref=x_ref)

    def rebased(self, a: float, x_ref: float = 0.0) -> SolutionCoefficients:
        """Same solution with the exponential amplitude referenced to ``x_ref``."""
        return replace(self, T1=self.T1 * math.exp(a * (x_ref - self.x_ref)), x_ref=x_ref)

    def is_finite(self) -> bool:
        return all(math.isfinite(getattr(self, f.name)) for f in fields(self))


def _exp_term(p: ReducedParams, coeffs: SolutionCoefficients, x):
    return np.exp(p.a * (np.asarray(x, dtype=float) - coeffs.x_ref))


def general_jet(p: ReducedParams, coeffs: SolutionCoefficients, x, limit: bool = False):
    """Values and first two derivatives of (T, phi, u) at ``x``.

    Returns a dict mapping ``"T", "phi", "u"`` to ``(f, f', f'')`` tuples.
    With ``limit=True`` and ``a == 0`` the degenerate branch is used: T is
    affine, ``T = T1 (x - x_ref) + T2``, and u picks up a quadratic term
    ``beta T1 (x - x_ref)^2 / (2c)``.
    """
    x = np.asarray(x, dtype=float)
    T1, T2, F1, F2 = coeffs.T1, coeffs.T2, coeffs.F1, coeffs.F2
    U1, U2 = coeffs.U31, coeffs.U32
    if p.a == 0:
        if not limit:
            raise DegenerateCoupling("a = 0: exponential solution degenerates")
        s = x - coeffs.x_ref
        T = (T1 * s + T2, T1 + 0 * s, 0 * s)
        phi = (p.K * T1 * s + F1 * x + F2, p.K * T1 + F1 + 0 * s, 0 * s)
        w = p.beta * T1 / p.c
        u = (0.5 * w * s**2 + U1 * x + U2, w * s + U1, w + 0 * s)
        return {"T": T, "phi": phi, "u": u}
    E = _exp_term(p, coeffs, x)
    a = p.a
    g = T1 * E
    amp_u = p.V / (a * p.c)
    T = (g + T2, a * g, a * a * g)
    phi = (p.K * g + F1 * x + F2, p.K * a * g + F1, p.K * a * a * g)
    u = (amp_u * g + U1 * x + U2, amp_u * a * g + U1, amp_u * a * a * g)
    return {"T": T, "phi": phi, "u": u}


def evaluate_general(p: ReducedParams, coeffs: SolutionCoefficients, x, limit: bool = False):
    """Return ``(T, phi, u)`` of the general solution at ``x``."""
    jet = general_jet(p, coeffs, x, limit=limit)
    return jet["T"][0], jet["phi"][0], jet["u"][0]


def residual_system(p: ReducedParams, coeffs: SolutionCoefficients, x,
                    limit: bool = False, return_scale: bool = False):
    """Left-hand sides ``(r_mech, r_elec, r_heat)`` of the three equations.

    With ``return_scale=True`` also return the sums of absolute values of
    the individual terms, which set the rounding floor of each residual.
    """
    jet = general_jet(p, coeffs, x, limit=limit)
    _, T_x, T_xx = jet["T"]
    _, _, phi_xx = jet["phi"]
    _, _, u_xx = jet["u"]
    mech = (p.c * u_xx, -p.beta * T_x, p.eprime * phi_xx)
    elec = (p.e * u_xx, p.omega * T_x, -p.eps * phi_xx)
    heat = (-p.k * T_xx, p.kprime * phi_xx)
    res = tuple(sum(terms) for terms in (mech, elec, heat))
    if not return_scale:
        return res
    scale = tuple(sum(np.abs(t) for t in terms) for terms in (mech, elec, heat))
    return res, scale
