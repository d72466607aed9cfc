import itertools

import numpy as np
import pytest

from dimerstate import units
from dimerstate.units import (
    ENERGY_UNITS, PRESSURE_UNITS, VOLUME_UNITS, UnitError, UnitSystem,
    convert_energy, convert_pressure, convert_volume,
)

# Evaluated with mpmath at 30 digits from the CODATA 2018 values in the fixture.
HARTREE_IN_KELVIN = 315775.024804
HA_PER_BOHR3_IN_GPA = 29421.0156965


def test_fixture_is_the_source_of_truth(constants):
    assert units.K_B == constants["boltzmann_constant_J_per_K"] == 1.380649e-23
    assert units.HARTREE == constants["hartree_energy_J"]
    assert units.BOHR == constants["bohr_radius_m"]
    assert units.MU_B == constants["bohr_magneton_J_per_T"]


def test_hartree_is_two_rydberg():
    assert convert_energy(1.0, "hartree", "rydberg") == 2.0
    assert convert_energy(1.0, "Ry", "Ha") == 0.5


@pytest.mark.parametrize("a,b", list(itertools.product(ENERGY_UNITS, repeat=2)))
def test_zero_maps_to_zero(a, b):
    assert convert_energy(0.0, a, b) == 0.0


def test_hartree_in_kelvin(constants):
    value = convert_energy(1.0, "hartree", "kelvin")
    expected = constants["hartree_energy_J"] / constants["boltzmann_constant_J_per_K"]
    assert value == pytest.approx(expected, rel=1e-15)
    assert value == pytest.approx(HARTREE_IN_KELVIN, rel=1e-10)


def test_hartree_per_bohr3_in_gpa():
    assert convert_pressure(0.0, "hartree/bohr3", "GPa") == 0.0
    assert convert_pressure(1.0, "hartree/bohr3", "GPa") == pytest.approx(HA_PER_BOHR3_IN_GPA, rel=1e-10)


def test_electronvolt():
    assert convert_energy(1.0, "eV", "hartree") == pytest.approx(1 / 27.211386245988, rel=1e-12)


@pytest.mark.parametrize("table,conv", [(ENERGY_UNITS, convert_energy), (VOLUME_UNITS, convert_volume),
                                        (PRESSURE_UNITS, convert_pressure)])
def test_group_properties(table, conv):
    for a, b in itertools.product(table, repeat=2):
        assert conv(1.0, a, b) * conv(1.0, b, a) == pytest.approx(1.0, rel=1e-14)
        assert conv(conv(3.7, a, b), b, a) == pytest.approx(3.7, rel=1e-14)
    for a, b, c in itertools.product(table, repeat=3):
        assert conv(1.0, a, c) == pytest.approx(conv(1.0, a, b) * conv(1.0, b, c), rel=1e-14)


def test_pressure_round_trip():
    p = np.array([0.0, 1.0, 54.1, -3.2])
    back = convert_pressure(convert_pressure(p, "GPa", "hartree/bohr3"), "hartree/bohr3", "GPa")
    np.testing.assert_allclose(back, p, rtol=1e-14)


def test_angstrom_cubed():
    assert convert_volume(1.0, "angstrom3", "bohr3") == pytest.approx(6.748334495, rel=1e-9)


@pytest.mark.parametrize("a,b", [("furlong", "hartree"), ("hartree", "GPa"), ("bohr3", "kelvin")])
def test_rejects_unknown_or_mismatched_units(a, b):
    with pytest.raises(UnitError):
        convert_energy(1.0, a, b)


def test_unit_system_validation():
    us = UnitSystem("Ry", "A3", "hartree/bohr3")
    assert us.energy_unit == "rydberg" and us.volume_unit == "angstrom3"
    assert us.energy_to(1.0, UnitSystem()) == 0.5
    with pytest.raises(UnitError):
        UnitSystem(energy_unit="GPa")


def test_load_constants_rejects_garbage():
    with pytest.raises(ValueError, match="line 2"):
        units.load_constants("a = 1\nnot a pair\n")
