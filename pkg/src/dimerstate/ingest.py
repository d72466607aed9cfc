"""Reading energy-volume data: plane-wave DFT output files and unit-tagged CSV series.

Only two markers of a plane-wave (pw.x style) output are recognised::

    unit-cell volume          =    3271.0000 (a.u.)^3
!    total energy              =   -1234.56789012 Ry

Every other line is ignored.  The last occurrence of each marker wins, so a
relaxation trajectory yields its final geometry.

CSV series carry units in the header, e.g. ``volume[bohr3],energy[Ry],channel``.
Lines starting with ``#`` are comments.
"""
from __future__ import annotations

import csv
import io
import logging
import os
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .eos import CHANNELS, MIN_POINTS, EnergyVolumeSeries
from .errors import ParseError, RejectedInputError
from .units import UnitError, convert_energy, convert_volume, normalize_unit, ENERGY_UNITS, VOLUME_UNITS

__all__ = [
    "ParsedRun",
    "SeriesDiagnostics",
    "parse_pw_output",
    "parse_pw_file",
    "runs_to_series",
    "load_series_csv",
    "load_channels_csv",
    "write_series_csv",
    "validate_series",
]

log = logging.getLogger(__name__)

_NUM = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eEdD][-+]?\d+)?"
_VOLUME_RE = re.compile(r"unit-cell volume\s*=\s*(\S+)\s*\(a\.u\.\)\^3")
_ENERGY_RE = re.compile(r"total energy\s*=\s*(\S+)\s*Ry")
_HEADER_RE = re.compile(r"^\s*([A-Za-z_]+)\s*(?:\[([^\]]*)\])?\s*$")


@dataclass
class ParsedRun:
    volume: float | None = None           # bohr^3
    energy_history: list[float] = field(default_factory=list)   # rydberg
    source: str = ""

    @property
    def total_energy(self) -> float | None:
        """Final total energy in rydberg."""
        return self.energy_history[-1] if self.energy_history else None

    @property
    def energy_hartree(self) -> float | None:
        e = self.total_energy
        return None if e is None else float(convert_energy(e, "rydberg", "hartree"))

    @property
    def complete(self) -> bool:
        return self.volume is not None and self.volume > 0 and bool(self.energy_history)


def _to_float(token: str, lineno: int) -> float:
    if not re.fullmatch(_NUM, token):
        raise ParseError(f"malformed number {token!r}", lineno)
    return float(token.replace("d", "e").replace("D", "E"))


def parse_pw_output(text, source: str = "") -> ParsedRun:
    """Scan plane-wave output text (a string or an iterable of lines)."""
    lines = text.splitlines() if isinstance(text, str) else text
    run = ParsedRun(source=source)
    n = 0
    for n, line in enumerate(lines, 1):
        if "unit-cell volume" in line:
            m = _VOLUME_RE.search(line)
            if m is None:
                raise ParseError("unit-cell volume line without '= <value> (a.u.)^3'", n)
            run.volume = _to_float(m.group(1), n)
        elif line.lstrip().startswith("!") and "total energy" in line:
            m = _ENERGY_RE.search(line)
            if m is None:
                raise ParseError("total energy line without '= <value> Ry'", n)
            run.energy_history.append(_to_float(m.group(1), n))
    if not run.energy_history:
        raise ParseError(f"no '!  total energy' marker found in {n} lines" + (f" of {source}" if source else ""))
    if run.volume is not None and not run.volume > 0:
        raise ParseError(f"non-positive unit-cell volume {run.volume}")
    return run


def parse_pw_file(path) -> ParsedRun:
    path = Path(path)
    with open(path, encoding="utf-8", errors="replace") as fh:
        try:
            return parse_pw_output(fh, source=str(path))
        except ParseError as exc:
            raise ParseError(f"{path}: {exc}") from exc


def runs_to_series(runs, channel: str = "unpolarized", source: str = "") -> EnergyVolumeSeries:
    """Canonical series from complete parsed runs (volume must be present in each)."""
    missing = [r.source or f"run {i}" for i, r in enumerate(runs) if r.volume is None]
    if missing:
        raise RejectedInputError(f"no unit-cell volume in: {', '.join(missing)}")
    return EnergyVolumeSeries([r.volume for r in runs], [r.energy_hartree for r in runs],
                              channel=channel, source=source)


def _parse_header(header: list[str]) -> dict[str, tuple[int, str | None]]:
    cols = {}
    for i, raw in enumerate(header):
        m = _HEADER_RE.match(raw)
        if m is None:
            raise RejectedInputError(f"column {i + 1}: cannot parse header {raw!r}")
        name, unit = m.group(1).lower(), m.group(2)
        cols[name] = (i, unit.strip() if unit else None)
    for need in ("volume", "energy"):
        if need not in cols:
            raise RejectedInputError(f"missing column {need!r} in header {header}")
    return cols


def _column_unit(cols, name, table, default):
    unit = cols[name][1]
    if unit is None:
        log.warning("no unit for column %r; assuming %s", name, default)
        return default
    try:
        key = normalize_unit(unit)
    except UnitError:
        key = None
    if key not in table:
        raise RejectedInputError(f"unknown unit tag {unit!r} for column {name!r}")
    return key


def _read_rows(fh, name: str):
    rows = csv.reader(line for line in fh if line.strip() and not line.lstrip().startswith("#"))
    try:
        header = next(rows)
    except StopIteration:
        raise RejectedInputError(f"{name}: empty CSV") from None
    cols = _parse_header(header)
    v_unit = _column_unit(cols, "volume", VOLUME_UNITS, "bohr3")
    e_unit = _column_unit(cols, "energy", ENERGY_UNITS, "hartree")
    out = []
    for rowno, row in enumerate(rows, 2):
        try:
            v = float(row[cols["volume"][0]])
            e = float(row[cols["energy"][0]])
        except (IndexError, ValueError) as exc:
            raise RejectedInputError(f"{name}: data row {rowno}: {exc}") from None
        ch = row[cols["channel"][0]].strip().lower() if "channel" in cols else "unpolarized"
        if ch not in CHANNELS:
            raise RejectedInputError(f"{name}: data row {rowno}: unknown channel {ch!r}")
        out.append((rowno, v, e, ch))
    return out, v_unit, e_unit


def _series_from_rows(rows, v_unit, e_unit, channel, name) -> EnergyVolumeSeries:
    if len(rows) < MIN_POINTS:
        raise RejectedInputError(f"{name}: {len(rows)} rows for channel {channel!r}; need at least {MIN_POINTS}")
    seen = {}
    for rowno, v, _, _ in rows:
        if v in seen:
            raise RejectedInputError(f"{name}: duplicate volume {v!r} in data rows {seen[v]} and {rowno}")
        seen[v] = rowno
    V = convert_volume(np.array([r[1] for r in rows]), v_unit, "bohr3")
    E = convert_energy(np.array([r[2] for r in rows]), e_unit, "hartree")
    return EnergyVolumeSeries(V, E, channel=channel, source=name)


def _open(path_or_buffer):
    if isinstance(path_or_buffer, (str, os.PathLike)):
        return open(path_or_buffer, encoding="utf-8", newline=""), str(path_or_buffer)
    return path_or_buffer, getattr(path_or_buffer, "name", "<stream>")


def load_channels_csv(path) -> dict[str, EnergyVolumeSeries]:
    """All channels present in a CSV file, each as a canonical series sorted by volume."""
    fh, name = _open(path)
    try:
        rows, v_unit, e_unit = _read_rows(fh, name)
    finally:
        if fh is not path:
            fh.close()
    if not rows:
        raise RejectedInputError(f"{name}: no data rows")
    channels = {}
    for r in rows:
        channels.setdefault(r[3], []).append(r)
    return {ch: _series_from_rows(rs, v_unit, e_unit, ch, name) for ch, rs in channels.items()}


def load_series_csv(path, channel: str | None = None) -> EnergyVolumeSeries:
    """Load one energy-volume series.

    With ``channel`` given, rows of other channels are skipped; otherwise the
    file must hold a single channel.
    """
    series = load_channels_csv(path)
    if channel is not None:
        if channel not in series:
            raise RejectedInputError(f"no rows for channel {channel!r}; found {sorted(series)}")
        return series[channel]
    if len(series) > 1:
        raise RejectedInputError(f"file holds several channels {sorted(series)}; pick one")
    return next(iter(series.values()))


def write_series_csv(series, dest=None, energy_unit: str = "hartree") -> str:
    """Serialise one or more series in canonical CSV form; returns the text.

    Values are written with 17 significant digits so that a reload is exact.
    """
    if isinstance(series, EnergyVolumeSeries):
        series = [series]
    unit_tag = {"hartree": "Ha", "rydberg": "Ry", "electronvolt": "eV", "kelvin": "K"}[normalize_unit(energy_unit)]
    buf = io.StringIO()
    buf.write(f"volume[bohr3],energy[{unit_tag}],channel\n")
    for s in series:
        if s.source:
            buf.write(f"# source: {s.source}\n")
        E = convert_energy(s.energies, "hartree", energy_unit)
        for v, e in zip(s.volumes, np.atleast_1d(E)):
            buf.write(f"{v:.17g},{e:.17g},{s.channel}\n")
    text = buf.getvalue()
    if dest is not None:
        Path(dest).write_text(text, encoding="utf-8", newline="\n")
    return text


@dataclass
class SeriesDiagnostics:
    n_points: int
    min_index: int
    volume_span: tuple[float, float]   # (V_first, V_last) / V_at_min - 1
    violations: list[int]
    interior_minimum: bool
    fit_ready: bool
    messages: list[str] = field(default_factory=list)


def validate_series(series: EnergyVolumeSeries) -> SeriesDiagnostics:
    """Check that a series is U-shaped around its minimum and worth fitting.

    A violation is a sample whose energy is not higher than its neighbour on
    the side of the minimum.  Isolated violations (noise) are reported as
    warnings; a series whose minimum sits at either end is not fit-ready.
    """
    V, E = series.volumes, series.energies
    n = V.size
    k = int(np.argmin(E))
    span = (float(V[0] / V[k] - 1.0), float(V[-1] / V[k] - 1.0))
    violations = [i for i in range(k) if E[i] <= E[i + 1]]
    violations += [i for i in range(k + 1, n) if E[i] <= E[i - 1]]
    interior = 0 < k < n - 1
    msgs = []
    if not interior:
        msgs.append("energy minimum at the edge of the volume range; no interior minimum")
    if violations:
        msgs.append(f"warning: {len(violations)} sample(s) break the U shape: indices {violations}")
    if n < MIN_POINTS:
        msgs.append(f"only {n} samples")
    # more than a quarter of the points off-trend is not noise any more
    ready = interior and n >= MIN_POINTS and len(violations) <= max(1, n // 4)
    return SeriesDiagnostics(n, k, span, violations, interior, ready, msgs)
