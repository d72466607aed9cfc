"""``dimerstate`` command line: EoS fits, J(P) tables, (T, P) maps and correlation sweeps.

Exit codes: 0 success, 2 input error (nothing written), 3 fit did not converge
(report still written).  Options come from flags and an optional TOML file;
flags win.
"""
from __future__ import annotations

import argparse
import io
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import coupling, correlations, eos, ingest, svg
from .dimer import DimerModel, susceptibility
from .errors import DomainError, ParseError, RejectedInputError

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

__all__ = ["RunConfig", "main", "build_parser", "load_config"]

log = logging.getLogger("dimerstate")

EXIT_OK, EXIT_INPUT, EXIT_NONCONVERGED = 0, 2, 3
SUBCOMMANDS = ("fit-eos", "jmap", "map", "correlations", "parse-qe")


class InputError(Exception):
    pass


def fmt(v) -> str:
    """Fixed CSV number format: 12 significant digits, no negative zero."""
    s = f"{float(v):.12g}"
    return "0" if s == "-0" else s


@dataclass
class RunConfig:
    subcommand: str
    inputs: list[str] = field(default_factory=list)
    g: float = 2.0
    tmin: float | None = None
    tmax: float | None = None
    tsteps: int = 200
    pmin: float = 0.0
    pmax: float = 5.0
    psteps: int = 51
    pressures: list[float] | None = None
    out: str = "."
    plots: bool = False
    J: float | None = None
    channel: str = "unpolarized"
    singlet: str | None = None
    triplet: str | None = None
    eos_params: dict = field(default_factory=dict)

    def validate(self):
        if self.subcommand not in SUBCOMMANDS:
            raise InputError(f"unknown subcommand {self.subcommand!r}")
        if not self.g > 0:
            raise InputError("--g must be positive")
        if self.tsteps < 2:
            raise InputError("--tsteps must be >= 2")
        if self.tmin is not None and not self.tmin > 0:
            raise InputError("--tmin must be > 0")
        if self.tmin is not None and self.tmax is not None and not self.tmin < self.tmax:
            raise InputError("--tmin must be < --tmax")
        if self.pressures is None:
            if self.psteps < 2:
                raise InputError("--psteps must be >= 2 (use --pressures for a single point)")
            if not self.pmin < self.pmax:
                raise InputError("--pmin must be < --pmax")

    def temperature_grid(self, default_scale: float | None = None) -> np.ndarray:
        tmin, tmax = self.tmin, self.tmax
        if tmin is None or tmax is None:
            if default_scale is None:
                raise InputError("temperature grid needs --tmin and --tmax")
            scale = default_scale or 1.0
            tmin = 0.01 * scale if tmin is None else tmin
            tmax = 3.0 * scale if tmax is None else tmax
            if not 0 < tmin < tmax:
                raise InputError(f"invalid temperature grid [{tmin}, {tmax}]")
        return np.linspace(tmin, tmax, self.tsteps)

    def pressure_grid(self) -> np.ndarray:
        if self.pressures is not None:
            P = np.asarray(self.pressures, dtype=float)
            if P.size == 0 or np.any(np.diff(P) <= 0):
                raise InputError("--pressures must be a non-empty ascending list")
            return P
        return np.linspace(self.pmin, self.pmax, self.psteps)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML file with default options (flags win)")
    common.add_argument("--g", type=float, help="Lande factor (default 2.0)")
    common.add_argument("--tmin", type=float, help="lowest temperature, K")
    common.add_argument("--tmax", type=float, help="highest temperature, K")
    common.add_argument("--tsteps", type=int, help="temperature grid points (default 200)")
    common.add_argument("--pmin", type=float, help="lowest pressure, GPa (default 0)")
    common.add_argument("--pmax", type=float, help="highest pressure, GPa (default 5)")
    common.add_argument("--psteps", type=int, help="pressure grid points (default 51)")
    common.add_argument("--pressures", help="explicit comma-separated pressure list, GPa")
    common.add_argument("--out", help="output directory (default .)")
    common.add_argument("--plots", action="store_true", default=None, help="also write SVG figures")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="dimerstate", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="subcommand", required=True)

    s = sub.add_parser("fit-eos", parents=[common], help="fit BM3 to energy-volume CSV series")
    s.add_argument("inputs", nargs="*", help="CSV series files")

    for name, helptext in (("jmap", "exchange coupling and T_e versus pressure"),
                           ("map", "discord and EoF maps over temperature and pressure")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("inputs", nargs="*", help="CSV file(s) holding singlet and triplet series")
        s.add_argument("--singlet", help="CSV series for the singlet channel")
        s.add_argument("--triplet", help="CSV series for the triplet channel")

    s = sub.add_parser("correlations", parents=[common], help="correlation measures versus T for one J")
    s.add_argument("--J", type=float, help="exchange coupling in kelvin (H = -J S1.S2)")

    s = sub.add_parser("parse-qe", parents=[common], help="convert plane-wave outputs to a CSV series")
    s.add_argument("inputs", nargs="*", help="DFT output files")
    s.add_argument("--channel", help="channel tag for the series (singlet/triplet/unpolarized)")
    return p


_KEYS = ("g", "tmin", "tmax", "tsteps", "pmin", "pmax", "psteps", "pressures", "out", "plots",
         "J", "channel", "singlet", "triplet", "inputs")


def load_config(args: argparse.Namespace) -> RunConfig:
    file_opts = {}
    if getattr(args, "config", None):
        try:
            with open(args.config, "rb") as fh:
                file_opts = tomllib.load(fh)
        except (OSError, tomllib.TOMLDecodeError) as exc:
            raise InputError(f"config {args.config}: {exc}") from None
    cfg = RunConfig(args.subcommand)
    for key in _KEYS:
        if key in file_opts:
            setattr(cfg, key, file_opts[key])
        val = getattr(args, key, None)
        if key == "inputs" and val == []:
            val = None
        if val is not None:
            if key == "pressures" and isinstance(val, str):
                try:
                    val = [float(t) for t in val.split(",") if t.strip()]
                except ValueError:
                    raise InputError(f"--pressures: cannot parse {val!r}") from None
            setattr(cfg, key, val)
    cfg.eos_params = file_opts.get("eos", {})
    for key in ("tsteps", "psteps"):
        setattr(cfg, key, int(getattr(cfg, key)))
    if isinstance(cfg.inputs, str):
        cfg.inputs = [cfg.inputs]
    cfg.validate()
    return cfg


# --- outputs -----------------------------------------------------------------

class Outputs:
    """Collects files in memory; nothing touches disk until :meth:`flush`."""

    def __init__(self, directory):
        self.directory = Path(directory)
        self.files: dict[str, str] = {}

    def add(self, name: str, text: str):
        self.files[name] = text

    def flush(self):
        self.directory.mkdir(parents=True, exist_ok=True)
        for name, text in self.files.items():
            with open(self.directory / name, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(r if isinstance(r, str) else fmt(r) for r in row) + "\n")
    return buf.getvalue()


def _matrix_csv(T, P, Z) -> str:
    header = ["T[K]\\P[GPa]"] + [fmt(p) for p in P]
    return _csv(header, ([t, *row] for t, row in zip(T, Z)))


# --- channel loading ---------------------------------------------------------

def _load_channel_series(cfg: RunConfig) -> dict[str, eos.EnergyVolumeSeries]:
    found = {}
    for path in cfg.inputs:
        for ch, s in ingest.load_channels_csv(path).items():
            if ch in found:
                raise InputError(f"channel {ch!r} given twice ({found[ch].source}, {path})")
            found[ch] = s
    for ch in ("singlet", "triplet"):
        path = getattr(cfg, ch)
        if path:
            chans = ingest.load_channels_csv(path)
            if len(chans) != 1:
                raise InputError(f"--{ch} file {path} holds several channels {sorted(chans)}")
            s = next(iter(chans.values()))
            s.channel = ch
            found[ch] = s
    return found


def _channel_pair(cfg: RunConfig, out: Outputs) -> tuple[coupling.ChannelPair, bool]:
    params = {}
    for ch in ("singlet", "triplet"):
        if ch in cfg.eos_params:
            try:
                params[ch] = eos.EosParams(**{k: float(v) for k, v in cfg.eos_params[ch].items()})
            except (TypeError, ValueError) as exc:
                raise InputError(f"[eos.{ch}] in config: {exc}") from None
    converged = True
    series = _load_channel_series(cfg) if (cfg.inputs or cfg.singlet or cfg.triplet) else {}
    reports = {}
    for ch in ("singlet", "triplet"):
        if ch in params:
            continue
        if ch not in series:
            raise InputError(f"no {ch} channel: give a CSV with that channel or [eos.{ch}] in the config")
        rep = eos.fit_bm3(series[ch])
        reports[ch] = rep
        params[ch] = rep.params
        converged &= rep.converged
    if reports:
        out.add("eos_fit.csv", _fit_table(reports))
    return coupling.ChannelPair(params["singlet"], params["triplet"]), converged


def _fit_table(reports) -> str:
    rows = []
    for ch, r in reports.items():
        p = r.params
        rows.append([ch, p.E0, p.V0, p.B0, p.B0p, r.rms_residual, r.iterations, "true" if r.converged else "false"])
    return _csv(["channel", "E0[Ha]", "V0[bohr3]", "B0[GPa]", "B0p", "rms[Ha]", "iterations", "converged"], rows)


# --- subcommands -------------------------------------------------------------

def cmd_fit_eos(cfg: RunConfig, out: Outputs) -> int:
    if not cfg.inputs:
        raise InputError("fit-eos needs at least one CSV series")
    series = {}
    for path in cfg.inputs:
        for ch, s in ingest.load_channels_csv(path).items():
            key = ch if ch not in series else f"{ch}:{path}"
            series[key] = s
    reports, diags = {}, {}
    for key, s in series.items():
        diags[key] = ingest.validate_series(s)
        if not diags[key].fit_ready:
            raise InputError(f"{s.source} ({key}): not fit-ready: {'; '.join(diags[key].messages)}")
        reports[key] = eos.fit_bm3(s)
    out.add("eos_fit.csv", _fit_table(reports))
    res_rows = []
    for key, r in reports.items():
        s = series[key]
        fitted = eos.bm3_energy(r.params, s.volumes)
        res_rows += [[key, v, e, f, d] for v, e, f, d in zip(s.volumes, s.energies, fitted, r.residuals)]
    out.add("eos_residuals.csv",
            _csv(["channel", "volume[bohr3]", "energy[Ha]", "fitted[Ha]", "residual[Ha]"], res_rows))
    lines = []
    for key, r in reports.items():
        p = r.params
        lines.append(f"[{key}] {series[key].source}")
        lines.append(f"  E0  = {fmt(p.E0)} Ha")
        lines.append(f"  V0  = {fmt(p.V0)} bohr^3")
        lines.append(f"  B0  = {fmt(p.B0)} GPa")
        lines.append(f"  B0' = {fmt(p.B0p)}")
        lines.append(f"  rms residual = {fmt(r.rms_residual)} Ha, {r.iterations} iterations, "
                     f"{'converged' if r.converged else 'NOT converged'} ({r.message})")
        for m in diags[key].messages:
            lines.append(f"  {m}")
    summary = "\n".join(lines) + "\n"
    out.add("eos_summary.txt", summary)
    sys.stdout.write(summary)
    if cfg.plots:
        for key, r in reports.items():
            s = series[key]
            vv = np.linspace(s.volumes.min(), s.volumes.max(), 200)
            out.add(f"eos_{key.split(':')[0]}.svg", svg.line_plot(
                vv, [eos.bm3_energy(r.params, vv)], ["BM3 fit"], markers=(s.volumes, s.energies, "data"),
                title=f"Total energy vs volume ({key})", xlabel="V (bohr^3)", ylabel="E (Ha)"))
    return EXIT_OK if all(r.converged for r in reports.values()) else EXIT_NONCONVERGED


def _coupling_table(cfg: RunConfig, out: Outputs):
    pair, converged = _channel_pair(cfg, out)
    table = coupling.coupling_vs_pressure(pair, cfg.pressure_grid())
    return table, converged


def _table_csv(table) -> str:
    rows = [[p, v, j, te, ch] for (p, v, j, te), ch in zip(table.rows(), table.ground)]
    return _csv(["P[GPa]", "V[bohr3]", "J[K]", "T_e[K]", "ground"], rows)


def cmd_jmap(cfg: RunConfig, out: Outputs) -> int:
    table, converged = _coupling_table(cfg, out)
    out.add("coupling.csv", _table_csv(table))
    if cfg.plots:
        out.add("J_vs_P.svg", svg.line_plot(table.P, [table.J], ["J"], title="Exchange coupling vs pressure",
                                            xlabel="P (GPa)", ylabel="J (K)"))
        out.add("Te_vs_P.svg", svg.line_plot(table.P, [table.T_e], ["T_e"],
                                             title="Entanglement temperature vs pressure",
                                             xlabel="P (GPa)", ylabel="T_e (K)"))
    return EXIT_OK if converged else EXIT_NONCONVERGED


def cmd_map(cfg: RunConfig, out: Outputs) -> int:
    table, converged = _coupling_table(cfg, out)
    scale = float(np.max(np.abs(table.J)))
    cmap = coupling.correlation_map(table, cfg.temperature_grid(default_scale=scale))
    out.add("discord_map.csv", _matrix_csv(cmap.T, cmap.P, cmap.discord))
    out.add("eof_map.csv", _matrix_csv(cmap.T, cmap.P, cmap.eof))
    if cfg.plots:
        out.add("discord_map.svg", svg.heatmap(cmap.P, cmap.T, cmap.discord, title="Entropic quantum discord",
                                               xlabel="P (GPa)", ylabel="T (K)", zlabel="Q (bits)"))
        out.add("eof_map.svg", svg.heatmap(cmap.P, cmap.T, cmap.eof, title="Entanglement of formation",
                                           xlabel="P (GPa)", ylabel="T (K)", zlabel="E (bits)"))
    return EXIT_OK if converged else EXIT_NONCONVERGED


def cmd_correlations(cfg: RunConfig, out: Outputs) -> int:
    if cfg.J is None:
        raise InputError("correlations needs --J")
    model = DimerModel(float(cfg.J), g=cfg.g)
    T = cfg.temperature_grid(default_scale=abs(model.J) or None)
    chi = susceptibility(model, T)
    rows = []
    for t, ch in zip(T, np.atleast_1d(chi)):
        pt = correlations.correlation_point(model.J, t)
        rows.append([pt.T, pt.x, pt.c, pt.mutual_info, pt.classical, pt.discord, pt.concurrence, pt.eof, ch])
    out.add("correlations.csv", _csv(
        ["T[K]", "x", "c", "I[bits]", "C_cl[bits]", "Q[bits]", "concurrence", "EoF[bits]", "chi[J/T2]"], rows))
    if cfg.plots:
        cols = np.array([r[3:8] for r in rows]).T
        out.add("correlations.svg", svg.line_plot(T, list(cols), ["I", "C_cl", "Q", "concurrence", "EoF"],
                                                  title=f"Thermal correlations, J = {fmt(model.J)} K",
                                                  xlabel="T (K)", ylabel="bits"))
    return EXIT_OK


def cmd_parse_qe(cfg: RunConfig, out: Outputs) -> int:
    if not cfg.inputs:
        raise InputError("parse-qe needs at least one DFT output file")
    runs, failures = [], []
    for path in cfg.inputs:
        try:
            runs.append(ingest.parse_pw_file(path))
        except (OSError, ParseError) as exc:
            failures.append(f"{path}: {exc}")
    if failures:
        raise InputError("\n".join(failures))
    series = ingest.runs_to_series(runs, channel=cfg.channel, source=",".join(cfg.inputs))
    out.add("series.csv", ingest.write_series_csv(series))
    return EXIT_OK


COMMANDS = {
    "fit-eos": cmd_fit_eos,
    "jmap": cmd_jmap,
    "map": cmd_map,
    "correlations": cmd_correlations,
    "parse-qe": cmd_parse_qe,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        cfg = load_config(args)
        out = Outputs(cfg.out)
        code = COMMANDS[cfg.subcommand](cfg, out)
    except (InputError, RejectedInputError, ParseError, DomainError, OSError) as exc:
        print(f"dimerstate {args.subcommand}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
