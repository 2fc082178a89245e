"""
Checking the closed form against finite differences
====================================================

The finite-difference solver knows only the constitutive law and the
boundary conditions. Halving the spacing should cut the error by four.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import piezoplate as pp

rng = np.random.default_rng(7)
spec = pp.random_spec(rng, pp.Variant.II, pp.Orientation.THICKNESS3, ah_range=(1.0, 2.0), stable=True)
exact = pp.solve_panel(spec)

grids = [64, 128, 256, 512, 1024, 2048]
errors = {f: [] for f in pp.FIELDS}
for n in grids:
    report = pp.compare(exact, pp.solve_fd(spec, n))
    for f, e in report.fields.items():
        errors[f].append(e.max_rel)

for f in pp.FIELDS:
    rates = np.log2(np.array(errors[f][:-1]) / errors[f][1:])
    print(f"{f:>4s}  finest error {errors[f][-1]:.2e}  rates {np.round(rates, 2)}")

###############################################################################
# T, phi and u3 follow the dashed second-order line. The in-plane
# displacements are affine here, so the scheme reproduces them to roundoff.
fig, ax = plt.subplots(figsize=(5, 4))
h = 2 * spec.h / np.array(grids)
for f in pp.FIELDS:
    ax.loglog(h, errors[f], "o-", label=f)
ax.loglog(h, errors["T"][0] * (h / h[0]) ** 2, "k--", label="slope 2")
ax.set_xlabel("grid spacing [m]")
ax.set_ylabel("max relative error")
ax.legend()
fig.tight_layout()
fig.savefig("fd_convergence.png", dpi=120)
