"""Thermal quantum correlations of spin-1/2 Heisenberg dimers under pressure.

Submodules:

- :mod:`dimerstate.units` -- CODATA constants and unit conversions
- :mod:`dimerstate.dimer` -- thermal dimer, Bleaney-Bowers susceptibility
- :mod:`dimerstate.correlations` -- discord, concurrence, entanglement of formation
- :mod:`dimerstate.eos` -- third-order Birch-Murnaghan EoS and fitting
- :mod:`dimerstate.coupling` -- J(P), T_e(P) and (T, P) correlation maps
- :mod:`dimerstate.ingest` -- DFT output and CSV series readers
- :mod:`dimerstate.cli` -- the ``dimerstate`` command
"""
from .correlations import (
    BellDiagonalState,
    CorrelationPoint,
    classical_correlation,
    concurrence,
    concurrence_at,
    concurrence_wootters_oracle,
    correlation_point,
    discord_oracle,
    entanglement_of_formation,
    entanglement_temperature,
    mutual_information,
    quantum_discord,
)
from .coupling import (
    ChannelPair,
    CorrelationMap,
    CouplingTable,
    correlation_map,
    coupling_at_volume,
    coupling_vs_pressure,
    synthetic_crossover_pair,
)
from .dimer import (
    DimerModel,
    ThermalDimerState,
    correlation_from_susceptibility,
    correlation_function,
    energy_levels,
    reduced_susceptibility,
    susceptibility,
    thermal_state,
)
from .eos import (
    EnergyVolumeSeries,
    EosParams,
    FitReport,
    bm3_energy,
    bm3_pressure,
    fit_bm3,
    invert_pressure,
    synthetic_series,
)
from .errors import DomainError, InconsistentDataError, ParseError, RejectedInputError
from .ingest import load_series_csv, parse_pw_output, validate_series, write_series_csv
from .units import UnitSystem, convert_energy, convert_pressure, convert_volume

__version__ = "0.1.0"
