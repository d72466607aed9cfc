# %% [markdown]
# # Pressure-driven loss of entanglement
#
# Two spin channels whose energy curves cross under compression: at ambient
# pressure the singlet is lower (J < 0), a few GPa later the triplet wins.
# Without DFT data at hand we build such a pair synthetically.

# %%
import sys
from pathlib import Path

import numpy as np

from dimerstate import svg
from dimerstate.coupling import (
    correlation_map, coupling_vs_pressure, crossover_volume, default_temperature_grid, synthetic_crossover_pair,
)
from dimerstate.eos import bm3_pressure

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_output")
pair = synthetic_crossover_pair(J_ambient=-10.0, dV0=0.7)
v_star = crossover_volume(pair)
print(f"J changes sign at V* = {v_star:.2f} bohr^3 (P ~ {bm3_pressure(pair.eos_singlet, v_star):.2f} GPa)")

# %%
table = coupling_vs_pressure(pair, np.linspace(0.0, 4.0, 81))
for P, V, J, Te in list(table.rows())[::10]:
    print(f"P = {P:4.1f} GPa  V = {V:8.2f}  J = {J:+7.3f} K  T_e = {Te:6.3f} K")

# %% [markdown]
# Discord and entanglement of formation over (T, P).

# %%
T = default_temperature_grid(table, 120)
cmap = correlation_map(table, T)
past = table.J >= 0
print("EoF beyond crossover all zero:", bool(np.all(cmap.eof[:, past] == 0)))
print("discord beyond crossover all positive:", bool(np.all(cmap.discord[:, past] > 0)))

# %%
out.mkdir(exist_ok=True)
(out / "J_vs_P.svg").write_text(svg.line_plot(table.P, [table.J], ["J"], xlabel="P (GPa)", ylabel="J (K)",
                                              title="Exchange coupling vs pressure"))
(out / "discord_map.svg").write_text(svg.heatmap(cmap.P, cmap.T, cmap.discord, xlabel="P (GPa)",
                                                 ylabel="T (K)", title="Entropic discord", zlabel="bits"))
(out / "eof_map.svg").write_text(svg.heatmap(cmap.P, cmap.T, cmap.eof, xlabel="P (GPa)", ylabel="T (K)",
                                             title="Entanglement of formation", zlabel="bits"))
print("wrote SVGs to", out)
