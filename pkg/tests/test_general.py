import numpy as np
import pytest

from piezoplate.errors import DegenerateCoupling
from piezoplate.general import (SolutionCoefficients, evaluate_general, first_order_solution,
                                general_jet, residual_system)
from piezoplate.material import Orientation, ReducedParams, reduce, sample_material
from piezoplate.sampling import random_material


def test_first_order_solution_satisfies_ode():
    a, b, gamma = 3.0, -0.7, 2.5
    x = np.linspace(-1, 1, 41)
    errs = []
    for dx in (1e-2, 5e-3):
        f = first_order_solution
        deriv = (f(a, b, gamma, x + dx) - f(a, b, gamma, x - dx)) / (2 * dx)
        errs.append(np.max(np.abs(deriv - a * (f(a, b, gamma, x) - b))))
    assert errs[1] < 1e-2
    assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.01)  # O(dx^2)


def _random_coeffs(rng, x_ref=0.0):
    return SolutionCoefficients(*rng.normal(size=10), x_ref=x_ref)


def test_jet_derivatives_by_central_differences(rng):
    p = reduce(sample_material(), Orientation.THICKNESS3)
    cf = _random_coeffs(rng)
    x = np.linspace(-0.02, 0.02, 9)
    dx = 1e-5
    lo, mid, hi = (general_jet(p, cf, x + s) for s in (-dx, 0.0, dx))
    for key in ("T", "phi", "u"):
        f, f1, f2 = mid[key]
        for k, exact in ((0, f1), (1, f2)):
            approx = (hi[key][k] - lo[key][k]) / (2 * dx)
            assert np.max(np.abs(approx - exact)) <= 1e-5 * np.max(np.abs(exact))


def test_general_solution_has_zero_residual(rng):
    for _ in range(100):
        m = random_material(rng)
        for o in Orientation:
            p = reduce(m, o)
            cf = _random_coeffs(rng)
            x = rng.uniform(-1, 1, size=20) / abs(p.a)
            res, scale = residual_system(p, cf, x, return_scale=True)
            for r, s in zip(res, scale):
                assert np.all(np.abs(r) <= 1e-13 * np.maximum(s, 1e-300))


def test_heat_structure_phi_xx_equals_K_T_xx(rng):
    p = reduce(sample_material(), Orientation.THICKNESS1)
    cf = _random_coeffs(rng)
    x = np.linspace(-0.05, 0.05, 11)
    jet = general_jet(p, cf, x)
    np.testing.assert_allclose(jet["phi"][2], p.K * jet["T"][2], rtol=1e-14)


def test_rebased_represents_same_solution(rng):
    p = reduce(sample_material(), Orientation.THICKNESS3)
    cf = _random_coeffs(rng, x_ref=0.0)
    moved = cf.rebased(p.a, 0.013)
    x = np.linspace(-0.02, 0.02, 5)
    for a, b in zip(evaluate_general(p, cf, x), evaluate_general(p, moved, x)):
        np.testing.assert_allclose(a, b, rtol=1e-13)
    assert moved.rebased(p.a, 0.0).T1 == pytest.approx(cf.T1, rel=1e-15)


def test_degenerate_rate_needs_limit_branch():
    p = ReducedParams.from_scalars(c=2.0, e=1.0, eprime=1.0, beta=0.0, omega=0.0, eps=1.0, k=1.0, kprime=0.5)
    assert p.a == 0
    cf = SolutionCoefficients(1.0, 2.0, 3.0, 4.0, U31=0.5, U32=-1.0)
    with pytest.raises(DegenerateCoupling):
        general_jet(p, cf, 0.3)
    res = residual_system(p, cf, np.linspace(-1, 1, 7), limit=True)
    for r in res:
        assert np.all(r == 0)
    T, phi, u = evaluate_general(p, cf, 0.5, limit=True)
    assert T == pytest.approx(2.5) and phi == pytest.approx(p.K * 0.5 + 3 * 0.5 + 4)


def test_coefficient_array_round_trip(rng):
    cf = _random_coeffs(rng, x_ref=0.4)
    back = SolutionCoefficients.from_array(cf.as_array(), x_ref=0.4)
    assert back == cf and back.is_finite()
    assert not SolutionCoefficients(T1=np.inf).is_finite()
