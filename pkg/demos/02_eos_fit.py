# %% [markdown]
# # Birch-Murnaghan fit of an energy-volume curve
#
# Synthetic data drawn from V0 = 3271 bohr^3, B0 = 54.1 GPa, B0' = 3.3 with a
# little noise, fitted back by damped Gauss-Newton.

# %%
import sys
from pathlib import Path

import numpy as np

from dimerstate.eos import EosParams, bm3_pressure, fit_bm3, invert_pressure, synthetic_series
from dimerstate.ingest import validate_series
from dimerstate import svg

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_output")
true = EosParams(E0=-617.28, V0=3271.0, B0=54.1, B0p=3.3)
series = synthetic_series(true, n=9, noise=1e-5, seed=1)

# %%
diag = validate_series(series)
print("fit-ready:", diag.fit_ready, diag.messages)
report = fit_bm3(series)
p = report.params
print(f"E0 = {p.E0:.6f} Ha, V0 = {p.V0:.2f} bohr^3, B0 = {p.B0:.2f} GPa, B0' = {p.B0p:.3f}")
print(f"rms residual {report.rms_residual:.2e} Ha after {report.iterations} iterations")

# %% [markdown]
# Pressure and its inverse.

# %%
for P in (0.0, 1.0, 5.0, 20.0):
    V = invert_pressure(p, P)
    print(f"P = {P:5.1f} GPa -> V = {V:8.2f} bohr^3 ({V / p.V0:.4f} V0), back: {bm3_pressure(p, V):.3e} GPa")

# %%
out.mkdir(exist_ok=True)
vv = np.linspace(series.volumes.min(), series.volumes.max(), 200)
from dimerstate.eos import bm3_energy
(out / "eos_fit.svg").write_text(svg.line_plot(
    vv, [bm3_energy(p, vv)], ["BM3"], markers=(series.volumes, series.energies, "data"),
    title="Total energy vs volume", xlabel="V (bohr^3)", ylabel="E (Ha)"))
print("wrote", out / "eos_fit.svg")
