"""
Steering the temperature with the lower-face potential
=======================================================

With both faces electroded, the lower potential shifts the whole
temperature profile. Ask for a temperature at one plane and let
:func:`piezoplate.invert` find the potential that delivers it.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import piezoplate as pp

data = Path(pp.__file__).parent / "data"
spec = pp.load_problem(data / "problem_II_1_3.json", pp.sample_material())
T = pp.TargetField.TEMPERATURE
x_target = -0.5 * spec.h

slope = pp.sensitivity(spec, "phibar2", T, x_target)
print(f"dT/dphibar2 at x = {x_target} m: {slope:.4g} K/V")

x = np.linspace(-spec.h, spec.h, 201)
fig, ax = plt.subplots(figsize=(5, 4))
for target in (20.0, 25.0, 30.0):
    value, sol = pp.invert(pp.ControlQuery(spec, "phibar2", T, x_target, target))
    print(f"target {target:5.1f} K -> phibar2 = {value:9.2f} V, achieved {pp.achieved(sol, T, x_target):.10f}")
    ax.plot(pp.field_jets(sol, x)["T"][0], 1e3 * x, label=f"T = {target:g} K")

ax.axhline(1e3 * x_target, color="k", lw=0.5)
ax.set_xlabel("T [K]")
ax.set_ylabel("x [mm]")
ax.legend()
fig.tight_layout()
fig.savefig("boundary_control.png", dpi=120)
