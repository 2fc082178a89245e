"""
A slow heating ramp
===================

Quasi-static loading is a family of equilibria indexed by a load
parameter. Here the upper-face temperature ramps up and the heat flux
follows, and each instant is solved independently.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import piezoplate as pp

data = Path(pp.__file__).parent / "data"
setup = pp.load_problem(data / "problem_I_1_3.json", pp.sample_material()).setup
schedule = pp.load_schedule(data / "schedule_ramp.json")

# the advisory flags data that change too fast for inertia to be ignored
print(pp.slowness_check(schedule, {"Tbar": 1.0, "qbar": 10.0}))

taus = np.linspace(*schedule.span, 25)
states = pp.sweep(setup, schedule, taus)
low = [pp.evaluate_state(sol, -setup.h) for _, sol in states]

fig, ax = plt.subplots(figsize=(5, 3.5))
ax.plot(taus, [schedule.at(t).Tbar for t in taus], label="upper face (data)")
ax.plot(taus, [s.T for s in low], label="lower face")
ax.set_xlabel("tau [s]")
ax.set_ylabel("T [K]")
ax.legend()
fig.tight_layout()
fig.savefig("quasistatic_ramp.png", dpi=120)
