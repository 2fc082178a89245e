"""Random materials and problems for property tests and demos.

Coefficients are drawn log-uniformly over six decades around the bundled
illustrative material; pyro/piezo couplings and the cross coefficient kappaE
get random signs. The half-thickness is chosen from a target value of |a h|,
which keeps the exponentials in a range where both the closed form and the
finite-difference oracle are well conditioned.
"""

from __future__ import annotations

from dataclasses import replace

import numpy as np

from .bcp import COMMON_FIELDS, VARIANT_FIELD, BoundaryData, ProblemSpec, Variant
from .material import MaterialHexagonal, Orientation, reduce, sample_material

DECADES = 6.0

# Characteristic magnitudes of each datum, in SI.
DATA_SCALES = {
    "Tbar": 10.0, "phibar": 100.0, "tbar1": 1e6, "tbar2": 1e6, "tbar3": 1e6,
    "ubar1": 1e-6, "ubar2": 1e-6, "ubar3": 1e-6, "qbar": 1e3, "Dbar": 1e-3, "phibar2": 100.0,
}

_SIGNED = ("e15", "e31", "e33", "omega1", "omega2", "omega3", "beta1", "beta2", "beta3",
           "kappaE11", "kappaE33")
_POSITIVE = ("c11", "c13", "c33", "c44", "eps11", "eps33", "kappa11", "kappa33")


def _log_uniform(rng: np.random.Generator, center: float, decades: float = DECADES) -> float:
    return abs(center) * 10.0 ** rng.uniform(-decades / 2, decades / 2)


def random_material(rng: np.random.Generator, base: MaterialHexagonal | None = None) -> MaterialHexagonal:
    base = base or sample_material()
    vals = {k: _log_uniform(rng, getattr(base, k)) for k in _POSITIVE}
    for k in _SIGNED:
        vals[k] = rng.choice((-1.0, 1.0)) * _log_uniform(rng, getattr(base, k))
    vals["c12"] = vals["c11"] * rng.uniform(0.05, 0.9)
    vals["c66"] = 0.5 * (vals["c11"] - vals["c12"])
    return replace(base, name="random", **vals)


def random_data(rng: np.random.Generator, variant: Variant, scales=None) -> BoundaryData:
    scales = scales or DATA_SCALES
    names = COMMON_FIELDS + (VARIANT_FIELD[variant],)
    return BoundaryData(**{n: rng.choice((-1.0, 1.0)) * _log_uniform(rng, scales[n]) for n in names})


def random_spec(rng: np.random.Generator, variant: Variant, orientation: Orientation,
                ah_range=(1e-2, 10.0), material: MaterialHexagonal | None = None,
                stable: bool = False) -> ProblemSpec:
    """A solvable problem with ``|a h|`` log-uniform in ``ah_range``.

    ``stable=True`` redraws the material until ``a > 0``.
    """
    m = material or random_material(rng)
    while stable and reduce(m, orientation).a <= 0:
        if material is not None:
            raise ValueError("the given material is not stable in this orientation")
        m = random_material(rng)
    a = reduce(m, orientation).a
    ah = 10.0 ** rng.uniform(*np.log10(ah_range))
    return ProblemSpec(m, orientation, variant, ah / abs(a), random_data(rng, variant))


def all_problems():
    """The four (variant, orientation) pairs in the order I.1.3, II.1.3, I.3.3, II.3.3."""
    return [(Variant.I, Orientation.THICKNESS1), (Variant.II, Orientation.THICKNESS1),
            (Variant.I, Orientation.THICKNESS3), (Variant.II, Orientation.THICKNESS3)]
