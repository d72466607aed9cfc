"""Physical constants and unit conversions.

Canonical internal units: exchange couplings in kelvin (J/k_B), EoS energies
in hartree, volumes in bohr^3, pressures in GPa.  Constants are read once from
the shipped ``data/codata2018.txt`` key=value file.
"""
from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

import numpy as np

__all__ = [
    "CONSTANTS",
    "ENERGY_UNITS",
    "VOLUME_UNITS",
    "PRESSURE_UNITS",
    "UnitError",
    "UnitSystem",
    "load_constants",
    "convert_energy",
    "convert_volume",
    "convert_pressure",
    "normalize_unit",
]


class UnitError(ValueError):
    """Unsupported or unknown unit tag."""


def load_constants(text: str | None = None) -> dict[str, float]:
    """Parse a ``key = value`` constants file (``#`` starts a comment)."""
    if text is None:
        text = resources.files("dimerstate").joinpath("data/codata2018.txt").read_text("utf-8")
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"line {lineno}: expected key = value, got {raw!r}")
        out[key.strip()] = float(value)
    return out


CONSTANTS = load_constants()

K_B = CONSTANTS["boltzmann_constant_J_per_K"]
HARTREE = CONSTANTS["hartree_energy_J"]
BOHR = CONSTANTS["bohr_radius_m"]
MU_B = CONSTANTS["bohr_magneton_J_per_T"]
E_CHARGE = CONSTANTS["elementary_charge_C"]
ANGSTROM = CONSTANTS["angstrom_m"]

# factor to joule / m^3 / pascal
ENERGY_UNITS = {
    "hartree": HARTREE,
    "rydberg": HARTREE / 2.0,
    "electronvolt": E_CHARGE,
    "kelvin": K_B,
}
VOLUME_UNITS = {
    "bohr3": BOHR**3,
    "angstrom3": ANGSTROM**3,
}
PRESSURE_UNITS = {
    "GPa": 1e9,
    "hartree/bohr3": HARTREE / BOHR**3,
}

_ALIASES = {
    "ha": "hartree", "hartree": "hartree", "hartrees": "hartree", "au": "hartree",
    "ry": "rydberg", "rydberg": "rydberg", "rydbergs": "rydberg",
    "ev": "electronvolt", "electronvolt": "electronvolt",
    "k": "kelvin", "kelvin": "kelvin",
    "bohr3": "bohr3", "bohr^3": "bohr3", "bohr³": "bohr3", "a.u.^3": "bohr3", "(a.u.)^3": "bohr3",
    "a3": "angstrom3", "å3": "angstrom3", "å^3": "angstrom3", "å³": "angstrom3",
    "ang3": "angstrom3", "angstrom3": "angstrom3", "angstrom^3": "angstrom3",
    "gpa": "GPa",
    "ha/bohr3": "hartree/bohr3", "hartree/bohr3": "hartree/bohr3", "ha/bohr^3": "hartree/bohr3",
    "hartree/bohr^3": "hartree/bohr3", "ha/bohr³": "hartree/bohr3",
}


def normalize_unit(tag: str) -> str:
    """Map a user-facing unit spelling onto its canonical table key."""
    key = _ALIASES.get(str(tag).strip().lower().replace(" ", ""))
    if key is None:
        raise UnitError(f"unsupported unit {tag!r}")
    return key


def _factor(table: dict[str, float], kind: str, frm: str, to: str) -> float:
    a, b = normalize_unit(frm), normalize_unit(to)
    if a not in table or b not in table:
        raise UnitError(f"cannot convert {kind} from {frm!r} to {to!r}")
    if a == b:
        return 1.0
    return table[a] / table[b]


def convert_energy(value, frm: str, to: str):
    """Convert an energy (scalar or array); ``kelvin`` means E/k_B."""
    return np.multiply(value, _factor(ENERGY_UNITS, "energy", frm, to))


def convert_volume(value, frm: str, to: str):
    return np.multiply(value, _factor(VOLUME_UNITS, "volume", frm, to))


def convert_pressure(value, frm: str, to: str):
    return np.multiply(value, _factor(PRESSURE_UNITS, "pressure", frm, to))


@dataclass(frozen=True)
class UnitSystem:
    """A choice of (energy, volume, pressure) units, validated on construction."""

    energy_unit: str = "hartree"
    volume_unit: str = "bohr3"
    pressure_unit: str = "GPa"

    def __post_init__(self):
        for name, table in (("energy_unit", ENERGY_UNITS), ("volume_unit", VOLUME_UNITS),
                            ("pressure_unit", PRESSURE_UNITS)):
            key = normalize_unit(getattr(self, name))
            if key not in table:
                raise UnitError(f"{name}={getattr(self, name)!r} is not a {name.split('_')[0]} unit")
            object.__setattr__(self, name, key)

    def energy_to(self, value, other: "UnitSystem"):
        return convert_energy(value, self.energy_unit, other.energy_unit)

    def volume_to(self, value, other: "UnitSystem"):
        return convert_volume(value, self.volume_unit, other.volume_unit)

    def pressure_to(self, value, other: "UnitSystem"):
        return convert_pressure(value, self.pressure_unit, other.pressure_unit)


CANONICAL = UnitSystem()

HARTREE_IN_KELVIN = HARTREE / K_B
HA_PER_BOHR3_IN_GPA = PRESSURE_UNITS["hartree/bohr3"] / 1e9
