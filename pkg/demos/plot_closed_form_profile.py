"""
Through-thickness profile of a heated, charged plate
=====================================================

Solve one of the bundled problems in closed form and look at how
temperature and electric potential vary across the thickness.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import piezoplate as pp

data = Path(pp.__file__).parent / "data"
spec = pp.load_problem(data / "problem_I_1_3.json", pp.sample_material())
sol = pp.solve_panel(spec)

###############################################################################
# The reduced parameters set the exponential scale of the solution.
p = spec.params
print(f"a = {p.a:.4g} 1/m, K = {p.K:.4g} V/K, a*h = {p.a * spec.h:.3g}")

###############################################################################
# Every boundary condition is checked against the prescribed datum.
for c in pp.boundary_checks(sol):
    print(f"{c.name:>8s}  {c.computed: .6e}  rel. err {c.relative_error:.1e}")

x = np.linspace(-spec.h, spec.h, 201)
jets = pp.field_jets(sol, x)

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(8, 3.5), sharey=True)
ax1.plot(jets["T"][0], 1e3 * x)
ax1.set_xlabel("T [K]")
ax1.set_ylabel("x [mm]")
ax2.plot(jets["phi"][0], 1e3 * x, color="C1")
ax2.set_xlabel("phi [V]")
fig.tight_layout()
fig.savefig("closed_form_profile.png", dpi=120)
