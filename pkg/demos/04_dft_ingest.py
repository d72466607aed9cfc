# %% [markdown]
# # From plane-wave output files to a fitted EoS
#
# We fake a handful of pw.x-style outputs (only the two lines the parser
# reads matter), turn them into a canonical CSV series and fit it.

# %%
import sys
import tempfile
from pathlib import Path

from dimerstate.eos import EosParams, bm3_energy, fit_bm3
from dimerstate.ingest import load_series_csv, parse_pw_file, runs_to_series, write_series_csv

true = EosParams(E0=-1234.56789012 / 2, V0=3271.0, B0=54.1, B0p=3.3)
work = Path(sys.argv[1] if len(sys.argv) > 1 else tempfile.mkdtemp())
work.mkdir(exist_ok=True)

# %%
paths = []
for i, f in enumerate((0.88, 0.92, 0.96, 1.0, 1.04, 1.08, 1.12)):
    V = f * true.V0
    E_ry = 2 * bm3_energy(true, V)
    text = (f"     unit-cell volume          = {V:15.4f} (a.u.)^3\n"
            f"     total energy              = {E_ry + 0.01:.8f} Ry\n"
            f"!    total energy              = {E_ry:.8f} Ry\n")
    path = work / f"scf_{i}.out"
    path.write_text(text)
    paths.append(path)

runs = [parse_pw_file(p) for p in paths]
series = runs_to_series(runs, channel="singlet", source="demo")
csv_path = work / "series.csv"
write_series_csv(series, csv_path)
print(csv_path.read_text())

# %%
report = fit_bm3(load_series_csv(csv_path))
p = report.params
print(f"V0 = {p.V0:.3f} bohr^3, B0 = {p.B0:.3f} GPa, B0' = {p.B0p:.3f} (rms {report.rms_residual:.1e} Ha)")
