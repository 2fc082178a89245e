"""Finite-difference reference solver for the thickness-direction problems.

The oracle only knows the constitutive map and the list of boundary
conditions; it shares no solution formulas with :mod:`piezoplate.bcp`.
Unknowns are interleaved per node as ``(u1, u2, u3, T, phi)``. Interior
rows discretize ``d/dx F(w', T) = 0`` for the normal flux vector
``F = (t_n1, t_n2, t_n3, q_n, D_n)`` with central differences; flux
conditions use three-point one-sided derivatives, so the scheme is second
order throughout. The banded system is solved by LU with partial pivoting.

The unknowns are deviations from the constant lift ``(ubar1, ubar2, ubar3,
Tbar, phibar)``. Large offsets would otherwise swamp the node-to-node
differences that carry the fluxes on fine grids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import lapack

from .bcp import TRACTION_VOIGT, PanelSolution, ProblemSpec, Variant, field_jets
from .errors import GridTooCoarse, SingularSystem, SpecMismatch
from .material import constitutive_matrix, voigt_index

FIELDS = ("u1", "u2", "u3", "T", "phi")
NF = len(FIELDS)
_BAND = 3 * NF - 1  # rows couple at most three consecutive nodes
MIN_INTERVALS = 8


@dataclass(frozen=True)
class Grid:
    """Uniform grid of ``n`` intervals on ``[-h, h]``."""

    n: int
    h: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < MIN_INTERVALS:
            raise GridTooCoarse(f"need at least {MIN_INTERVALS} intervals, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def spacing(self) -> float:
        return 2.0 * self.h / self.n

    @property
    def nodes(self) -> np.ndarray:
        x = -self.h + self.spacing * np.arange(self.n + 1)
        x[-1] = self.h
        return x


@dataclass(frozen=True)
class DiscreteSolution:
    spec: ProblemSpec
    grid: Grid
    values: np.ndarray = field(repr=False)  # shape (n + 1, 5), columns FIELDS
    residual: float = 0.0  # max |A w - b| of the row-equilibrated system

    def __getitem__(self, name: str) -> np.ndarray:
        return self.values[:, FIELDS.index(name)]


def _flux_rows(spec: ProblemSpec, rows):
    """Coefficients of selected flux components on ``w'`` (5 columns) and on ``T``."""
    J = constitutive_matrix(spec.material)
    n = spec.orientation.normal_axis
    cols = [n, 3 + n, 6 + n, 12 + n, 9 + n]  # u1', u2', u3', T', phi'
    return J[np.ix_(rows, cols)], J[rows, 15]


def _normal_rows(spec: ProblemSpec):
    n = spec.orientation.normal_axis
    return [voigt_index(n, l) for l in range(3)] + [9 + n, 6 + n]


def solve_fd(spec: ProblemSpec, grid: Grid | int, refine: int = 2) -> DiscreteSolution:
    """Solve ``spec`` on ``grid`` (a :class:`Grid` or an interval count)."""
    if not isinstance(grid, Grid):
        grid = Grid(grid, spec.h)
    if grid.h != spec.h:
        raise SpecMismatch("grid and problem have different thickness")
    n, dx = grid.n, grid.spacing
    size = NF * (n + 1)
    iT, iphi = FIELDS.index("T"), FIELDS.index("phi")
    d = spec.data
    lift = np.array([d.ubar1, d.ubar2, d.ubar3, d.Tbar, d.phibar])

    # Dense band storage: ab[u + i - j, j] = A[i, j]
    ab = np.zeros((2 * _BAND + 1, size))
    rhs = np.zeros(size)

    def put(row, col, value):
        ab[_BAND + row - col, col] += value

    # Interior: d/dx (G w' + g T) = 0. The node block is premultiplied by
    # G^-1 so that each row is a plain second difference of one field plus a
    # T' term; the raw rows mix entries up to ~20 decades apart.
    G, g = _flux_rows(spec, _normal_rows(spec))
    try:
        coupling = np.linalg.solve(G, g)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem("normal-flux matrix is singular") from exc
    half = 0.5 * dx
    for j in range(1, n):
        for r in range(NF):
            row = NF * j + r
            put(row, NF * (j - 1) + r, 1.0)
            put(row, NF * j + r, -2.0)
            put(row, NF * (j + 1) + r, 1.0)
            if coupling[r]:
                put(row, NF * (j + 1) + iT, half * coupling[r])
                put(row, NF * (j - 1) + iT, -half * coupling[r])

    def flux_row(row, node, Gr, gr, sign, value):
        # sign * (Gr . w'(node) + gr T(node)) = value, one-sided w' stencil
        inward = 1 if node == 0 else -1
        weights = (-1.5 * inward, 2.0 * inward, -0.5 * inward)
        for k, wk in enumerate(weights):
            for f in range(NF):
                if Gr[f]:
                    put(row, NF * (node + inward * k) + f, sign * wk * Gr[f] / dx)
        if gr:
            put(row, NF * node + iT, sign * gr)
        rhs[row] = value - sign * gr * d.Tbar

    def value_row(row, node, f, value):
        put(row, NF * node + f, 1.0)
        rhs[row] = value - lift[f]

    # Lower face x = -h
    for i in range(3):
        value_row(i, 0, i, getattr(d, f"ubar{i + 1}"))
    nrm = spec.orientation.normal_axis
    Gq, gq = _flux_rows(spec, [9 + nrm])
    flux_row(3, 0, Gq[0], gq[0], -1.0, d.qbar)
    if spec.variant is Variant.I:
        GD, gD = _flux_rows(spec, [6 + nrm])
        flux_row(4, 0, GD[0], gD[0], -1.0, d.Dbar)
    else:
        value_row(4, 0, iphi, d.phibar2)

    # Upper face x = +h
    top = NF * n
    Gt, gt = _flux_rows(spec, list(TRACTION_VOIGT[spec.orientation]))
    for k in range(3):
        flux_row(top + k, n, Gt[k], gt[k], 1.0, getattr(d, f"tbar{k + 1}"))
    value_row(top + 3, n, iT, d.Tbar)
    value_row(top + 4, n, iphi, d.phibar)

    # Row equilibration
    row_max = np.zeros(size)
    for k, cols in _diagonals(size):
        np.maximum.at(row_max, cols - k, np.abs(ab[_BAND - k, cols]))
    if np.any(row_max == 0):
        raise SingularSystem("a row of the discrete system is empty")
    for k, cols in _diagonals(size):
        ab[_BAND - k, cols] /= row_max[cols - k]
    rhs /= row_max
    if not np.all(np.isfinite(rhs)):
        raise SingularSystem("non-finite boundary data")

    w, residual = _solve_refined(ab, rhs, refine)
    return DiscreteSolution(spec, grid, w.reshape(n + 1, NF) + lift, residual)


def _diagonals(size):
    for k in range(-_BAND, _BAND + 1):
        yield k, np.arange(max(0, k), min(size, size + k))


def _band_matvec(ab, x, dtype=float):
    y = np.zeros(len(x), dtype=dtype)
    for k, cols in _diagonals(len(x)):
        y[cols - k] += ab[_BAND - k, cols].astype(dtype) * x[cols].astype(dtype)
    return y


def _solve_refined(ab, rhs, refine: int):
    """Banded LU with partial pivoting, then ``refine`` steps of iterative
    refinement with residuals accumulated in extended precision."""
    size = len(rhs)
    work = np.zeros((3 * _BAND + 1, size))
    work[_BAND:] = ab
    lu, piv, info = lapack.dgbtrf(work, _BAND, _BAND)
    if info != 0:
        raise SingularSystem(f"banded LU failed (info={info})")
    w, info = lapack.dgbtrs(lu, _BAND, _BAND, rhs, piv)
    if info != 0 or not np.all(np.isfinite(w)):
        raise SingularSystem("discrete system is numerically singular")
    wide = np.longdouble
    for _ in range(refine):
        r = (rhs.astype(wide) - _band_matvec(ab, w, wide)).astype(float)
        dw, _ = lapack.dgbtrs(lu, _BAND, _BAND, r, piv)
        w = w + dw
    residual = float(np.max(np.abs(rhs - _band_matvec(ab, w))))
    return w, residual


@dataclass(frozen=True)
class FieldError:
    max_rel: float
    l2_rel: float
    scale: float


@dataclass(frozen=True)
class ErrorReport:
    """Per-field discrepancies between the closed form and a discrete solution.

    Errors are normalized by the largest magnitude of the closed-form field
    on the grid (by 1 for a field that vanishes identically). ``order`` is
    filled when a coarse/fine pair was compared.
    """

    n: int
    fields: dict
    order: dict | None = None
    coarse: ErrorReport | None = None

    @property
    def max_rel(self) -> float:
        return max(e.max_rel for e in self.fields.values())

    @property
    def observed_order(self) -> float | None:
        """Order estimated from the field with the largest coarse-grid error."""
        if self.coarse is None:
            return None
        worst = max(self.coarse.fields, key=lambda k: self.coarse.fields[k].max_rel)
        return self.order[worst]

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "max_rel": self.max_rel,
            "fields": {k: {"max_rel": e.max_rel, "l2_rel": e.l2_rel, "scale": e.scale}
                       for k, e in self.fields.items()},
        }
        if self.coarse is not None:
            out["coarse"] = self.coarse.to_dict()
            out["order"] = dict(self.order)
            out["observed_order"] = self.observed_order
        return out


def _closed_form_on(sol: PanelSolution, x: np.ndarray) -> np.ndarray:
    jets = field_jets(sol, x)
    return np.stack([np.asarray(jets[k][0], dtype=float) for k in FIELDS], axis=1)


def compare(sol: PanelSolution, disc: DiscreteSolution, coarse: DiscreteSolution | None = None) -> ErrorReport:
    """Error report of ``disc`` against ``sol``; with ``coarse``, add convergence orders."""
    for other in (disc, coarse):
        if other is not None and other.spec != sol.spec:
            raise SpecMismatch("discrete and closed-form solutions solve different problems")
    exact = _closed_form_on(sol, disc.grid.nodes)
    report = {}
    for k, name in enumerate(FIELDS):
        ref = exact[:, k]
        scale = float(np.max(np.abs(ref))) or 1.0
        err = np.abs(disc.values[:, k] - ref)
        report[name] = FieldError(float(err.max() / scale), float(np.sqrt(np.mean(err**2)) / scale), scale)
    if coarse is None:
        return ErrorReport(disc.grid.n, report)
    low = compare(sol, coarse)
    ratio = disc.grid.n / coarse.grid.n
    order = {}
    for name in FIELDS:
        e0, e1 = low.fields[name].max_rel, report[name].max_rel
        order[name] = math.log(e0 / e1) / math.log(ratio) if e0 > 0 and e1 > 0 else float("nan")
    return ErrorReport(disc.grid.n, report, order, low)
