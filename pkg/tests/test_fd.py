from dataclasses import replace

import numpy as np
import pytest

from piezoplate.bcp import BoundaryData, ProblemSpec, Variant, field_jets, solve_panel
from piezoplate.errors import GridTooCoarse, SpecMismatch
from piezoplate.fd import FIELDS, DiscreteSolution, Grid, compare, solve_fd
from piezoplate.material import Orientation, constitutive_matrix, sample_material
from piezoplate.sampling import random_data, random_spec

M = sample_material()


def test_grid():
    g = Grid(8, 0.5)
    assert g.spacing == 0.125 and len(g.nodes) == 9
    assert g.nodes[0] == -0.5 and g.nodes[-1] == 0.5
    with pytest.raises(GridTooCoarse):
        Grid(7, 0.5)


def test_zero_data_gives_zero(problem):
    v, o = problem
    s = ProblemSpec(M, o, v, 0.02, BoundaryData.zeros(v))
    assert np.all(solve_fd(s, 16).values == 0)


def test_second_order_on_sample_problem():
    rng = np.random.default_rng(1)
    s = ProblemSpec(M, Orientation.THICKNESS1, Variant.I, 0.05, random_data(rng, Variant.I))
    sol = solve_panel(s)
    e256, e512 = (compare(sol, solve_fd(s, n)).max_rel for n in (256, 512))
    assert e256 / e512 == pytest.approx(4.0, rel=0.05)


def test_report_order_for_grid_pair(problem, rng):
    v, o = problem
    s = random_spec(rng, v, o, ah_range=(0.5, 2.0), stable=True)
    sol = solve_panel(s)
    report = compare(sol, solve_fd(s, 256), solve_fd(s, 128))
    assert 1.8 <= report.observed_order <= 2.2
    assert report.coarse.n == 128 and set(report.to_dict()["order"]) == set(FIELDS)


def test_random_spec_agreement_scales_with_spacing(rng):
    s = random_spec(rng, Variant.II, Orientation.THICKNESS1, ah_range=(0.1, 2.0), stable=True)
    sol = solve_panel(s)
    disc = solve_fd(s, 1024)
    C = compare(sol, disc).max_rel / disc.grid.spacing**2
    assert np.isfinite(C) and compare(sol, disc).max_rel < 1e-5


def test_discrete_solution_meets_boundary_conditions(problem, rng):
    v, o = problem
    s = random_spec(rng, v, o, ah_range=(0.1, 1.0), stable=True)
    disc = solve_fd(s, 64)
    d = s.data
    assert disc["T"][-1] == pytest.approx(d.Tbar, rel=1e-12)
    assert disc["phi"][-1] == pytest.approx(d.phibar, rel=1e-12)
    np.testing.assert_allclose(disc.values[0, :3], [d.ubar1, d.ubar2, d.ubar3], rtol=1e-12)
    if v is Variant.II:
        assert disc["phi"][0] == pytest.approx(d.phibar2, rel=1e-12)
    assert disc.residual < 1e-10


def test_self_comparison_is_exact(rng):
    s = random_spec(rng, Variant.I, Orientation.THICKNESS3)
    sol = solve_panel(s)
    grid = Grid(32, s.h)
    jets = field_jets(sol, grid.nodes)
    exact = DiscreteSolution(s, grid, np.stack([jets[k][0] for k in FIELDS], axis=1))
    assert compare(sol, exact).max_rel == 0.0


def test_corrupted_closed_form_is_detected(rng):
    s = random_spec(rng, Variant.II, Orientation.THICKNESS3, ah_range=(0.1, 1.0), stable=True)
    sol = solve_panel(s)
    bad = replace(sol, coeffs=replace(sol.coeffs, T1=sol.coeffs.T1 * (1 + 1e-3)))
    disc = solve_fd(s, 1024)
    assert compare(sol, disc).max_rel < 1e-6
    assert compare(bad, disc).max_rel > 1e-5


def test_spec_mismatch(rng):
    s = random_spec(rng, Variant.I, Orientation.THICKNESS1)
    other = s.with_data(random_data(rng, Variant.I))
    with pytest.raises(SpecMismatch):
        compare(solve_panel(s), solve_fd(other, 16))


@pytest.mark.parametrize("o", list(Orientation))
def test_degenerate_coupling_still_solves(o):
    flat = replace(M, omega1=0.0) if o is Orientation.THICKNESS1 else replace(M, omega3=0.0, beta3=0.0)
    rng = np.random.default_rng(3)
    s = ProblemSpec(flat, o, Variant.I, 0.02, random_data(rng, Variant.I))
    assert s.params.a == 0
    coarse, fine = solve_fd(s, 32), solve_fd(s, 64)
    # polynomial exact solution: the scheme reproduces it on any grid
    scale = np.abs(fine.values).max(axis=0)
    assert np.all(np.abs(coarse.values - fine.values[::2]) <= 1e-9 * scale)
    # T is affine when a = 0
    T = fine["T"]
    assert np.max(np.abs(np.diff(T, 2))) <= 1e-9 * np.abs(T).max()


def test_oracle_does_not_touch_closed_form_solver():
    import inspect

    import piezoplate.fd as fd
    src = inspect.getsource(fd.solve_fd)
    assert "assemble_coefficients" not in src and "solve_panel" not in src
    assert constitutive_matrix(M).shape == (12, 16)
