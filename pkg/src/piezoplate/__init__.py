"""Closed-form thickness-direction solutions for 6mm piezothermoelastic plates.

Four boundary-control problems are solved exactly (``I.1.3``, ``II.1.3``,
``I.3.3``, ``II.3.3``), with a finite-difference oracle, single-datum
control inversion and quasi-static sweeps on top.
"""

__version__ = "0.1.0"

from .bcp import (BoundaryData, PanelSolution, PlateSetup, ProblemSpec, StateSample, Variant,
                  assemble_coefficients, boundary_checks, evaluate_state, field_jets, field_residuals,
                  load_problem, lower_face_summary, problem_from_dict, sample_profile, solve_panel)
from .control import ControlQuery, TargetField, achieved, invert, sensitivity
from .errors import *  # noqa: F401,F403
from .fd import FIELDS, Grid, compare, solve_fd
from .general import SolutionCoefficients, evaluate_general, first_order_solution, residual_system
from .material import (KinematicState, MaterialHexagonal, Orientation, ReducedParams,
                       electric_displacement, heat_flux, load_material, reduce, sample_material,
                       stress, validate_material)
from .quasistatic import Schedule, load_schedule, slowness_check, sweep
from .sampling import random_data, random_spec

__all__ = [
    "FIELDS", "BoundaryData", "ControlQuery", "Grid", "KinematicState", "MaterialHexagonal", "Orientation",
    "PanelSolution", "PlateSetup", "ProblemSpec", "ReducedParams", "Schedule", "SolutionCoefficients",
    "StateSample", "TargetField", "Variant", "achieved", "assemble_coefficients", "boundary_checks", "compare",
    "electric_displacement", "evaluate_general", "evaluate_state", "field_jets", "field_residuals",
    "first_order_solution", "heat_flux", "invert", "load_material", "load_problem", "load_schedule",
    "lower_face_summary", "problem_from_dict", "random_data", "random_spec", "reduce", "residual_system", "sample_material",
    "sample_profile", "sensitivity", "slowness_check", "solve_fd", "solve_panel", "stress", "sweep",
    "validate_material",
]
