"""Exception hierarchy for piezoplate."""


class PiezoPlateError(Exception):
    """Base class for all errors raised by this package."""


class MaterialError(PiezoPlateError, ValueError):
    """A material coefficient set fails validation."""


class SymmetryViolation(MaterialError):
    """c66 does not equal (c11 - c12)/2."""


class NonPhysical(MaterialError):
    """A coefficient that must be positive (or finite) is not."""


class DegenerateCrossFlux(MaterialError):
    """An electro-thermal cross coefficient kappaE is zero."""


class SchemaError(PiezoPlateError, ValueError):
    """An input document does not match the expected layout."""


class SolverError(PiezoPlateError):
    """The closed-form or discrete solver cannot produce a solution."""


class DegenerateCoupling(SolverError):
    """The exponential rate a vanishes, so the closed forms do not apply."""


class SingularDenominator(DegenerateCoupling):
    """beta*e + c*omega vanishes in a formula that divides by it."""


class NonFiniteData(SolverError, ValueError):
    """Boundary data or geometry contains NaN or infinity."""


class SingularSystem(SolverError):
    """The finite-difference system could not be factorized."""


class OutOfDomain(PiezoPlateError, ValueError):
    """A coordinate lies outside the plate [-h, h]."""


class GridTooCoarse(PiezoPlateError, ValueError):
    """Fewer than 8 grid intervals were requested."""


class SpecMismatch(PiezoPlateError, ValueError):
    """Two solutions being compared belong to different problems."""


class OutOfSchedule(PiezoPlateError, ValueError):
    """A requested time falls outside the schedule span."""


class ControlError(PiezoPlateError):
    """Base class for boundary-control inversion failures."""


class Uncontrollable(ControlError):
    """The target does not depend on the chosen free datum."""


class InvalidFreeDatum(ControlError, ValueError):
    """The free datum (or target field) is not admissible for this problem."""
