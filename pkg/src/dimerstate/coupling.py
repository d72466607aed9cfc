"""Pressure dependence of the exchange coupling and of the thermal correlations.

The exchange coupling at volume ``V`` is the singlet/triplet energy gap
``J(V) = E_S(V) - E_T(V)`` of two fitted BM3 channels.  Pressure is mapped to
volume with the EoS of whichever channel is the magnetic ground state at that
pressure (lower enthalpy ``E + PV``); both channels are then evaluated at that
common volume.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import correlations as corr
from .dimer import reduced_susceptibility
from .eos import BRACKET, EosParams, bm3_energy, invert_pressure, pressure_bracket
from .errors import DomainError
from .units import HA_PER_BOHR3_IN_GPA, HARTREE_IN_KELVIN

__all__ = [
    "ChannelPair",
    "CouplingTable",
    "CorrelationMap",
    "coupling_at_volume",
    "coupling_vs_pressure",
    "correlation_map",
    "default_temperature_grid",
    "crossover_volume",
    "synthetic_crossover_pair",
]


@dataclass(frozen=True)
class ChannelPair:
    eos_singlet: EosParams
    eos_triplet: EosParams

    def __post_init__(self):
        lo, hi = self.volume_range
        if not lo < hi:
            raise DomainError("singlet and triplet EoS have no common volume range")

    @property
    def volume_range(self) -> tuple[float, float]:
        """Volumes inside both channels' [0.5, 1.2]*V0 windows."""
        s, t = self.eos_singlet, self.eos_triplet
        return max(BRACKET[0] * s.V0, BRACKET[0] * t.V0), min(BRACKET[1] * s.V0, BRACKET[1] * t.V0)

    def ground_channel(self, V: float) -> str:
        """Channel with the lower energy at volume ``V``."""
        return "singlet" if bm3_energy(self.eos_singlet, V) <= bm3_energy(self.eos_triplet, V) else "triplet"

    def eos(self, channel: str) -> EosParams:
        return self.eos_singlet if channel == "singlet" else self.eos_triplet


@dataclass
class CouplingTable:
    P: np.ndarray   # GPa, strictly increasing
    V: np.ndarray   # bohr^3
    J: np.ndarray   # kelvin
    T_e: np.ndarray  # kelvin
    ground: tuple[str, ...] = ()

    def __post_init__(self):
        self.P, self.V, self.J, self.T_e = (np.asarray(a, dtype=float) for a in (self.P, self.V, self.J, self.T_e))
        if np.any(np.diff(self.P) <= 0):
            raise DomainError("pressure grid must be strictly increasing")

    def __len__(self):
        return self.P.size

    def rows(self):
        return zip(self.P, self.V, self.J, self.T_e)


@dataclass
class CorrelationMap:
    T: np.ndarray
    P: np.ndarray
    discord: np.ndarray   # shape (len(T), len(P))
    eof: np.ndarray
    table: CouplingTable


def coupling_at_volume(pair: ChannelPair, V):
    """``J(V) = E_S(V) - E_T(V)`` in kelvin."""
    lo, hi = pair.volume_range
    Va = np.asarray(V, dtype=float)
    if np.any(~((Va >= lo) & (Va <= hi))):
        raise DomainError(f"volume {V} outside common channel range [{lo:.6g}, {hi:.6g}] bohr^3")
    gap = np.asarray(bm3_energy(pair.eos_singlet, Va)) - np.asarray(bm3_energy(pair.eos_triplet, Va))
    J = gap * HARTREE_IN_KELVIN
    return float(J) if np.ndim(J) == 0 else J


def crossover_volume(pair: ChannelPair, lo: float | None = None, hi: float | None = None,
                     rtol: float = 1e-12) -> float:
    """Volume where ``J`` changes sign, by bisection on a sign-changing bracket."""
    vmin, vmax = pair.volume_range
    lo = vmin if lo is None else lo
    hi = vmax if hi is None else hi
    j_lo = coupling_at_volume(pair, lo)
    if j_lo * coupling_at_volume(pair, hi) > 0:
        raise DomainError("J does not change sign on the given volume bracket")
    while hi - lo > rtol * hi:
        mid = 0.5 * (lo + hi)
        j_mid = coupling_at_volume(pair, mid)
        if (j_mid > 0) == (j_lo > 0):
            lo, j_lo = mid, j_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _volume_at_pressure(pair: ChannelPair, P: float) -> tuple[float, str]:
    best = None
    for channel in ("singlet", "triplet"):
        p = pair.eos(channel)
        lo, hi = pressure_bracket(p)
        if not lo <= P <= hi:
            continue
        V = invert_pressure(p, P)
        H = bm3_energy(p, V) + P / HA_PER_BOHR3_IN_GPA * V
        if best is None or H < best[0]:
            best = (H, V, channel)
    if best is None:
        raise DomainError(f"pressure {P} GPa outside the invertible range of both channels")
    return best[1], best[2]


def coupling_vs_pressure(pair: ChannelPair, P_grid) -> CouplingTable:
    """Rows ``(P, V, J, T_e)`` over an ascending pressure grid (GPa)."""
    P_grid = np.atleast_1d(np.asarray(P_grid, dtype=float))
    if np.any(np.diff(P_grid) <= 0):
        raise DomainError("pressure grid must be strictly increasing")
    V = np.empty_like(P_grid)
    ground = []
    for i, P in enumerate(P_grid):
        try:
            V[i], ch = _volume_at_pressure(pair, P)
            coupling_at_volume(pair, V[i])
        except DomainError as exc:
            raise DomainError(f"pressure grid point {i} (P = {P} GPa): {exc}") from exc
        ground.append(ch)
    J = np.asarray(coupling_at_volume(pair, V), dtype=float).reshape(P_grid.shape)
    return CouplingTable(P_grid, V, J, np.asarray(corr.entanglement_temperature(J)).reshape(P_grid.shape),
                         tuple(ground))


def default_temperature_grid(table: CouplingTable, n: int = 200) -> np.ndarray:
    """``n`` points on [0.01, 3] * max|J|."""
    scale = float(np.max(np.abs(table.J)))
    if scale == 0:
        scale = 1.0
    return np.linspace(0.01 * scale, 3.0 * scale, n)


def correlation_map(table: CouplingTable, T_grid) -> CorrelationMap:
    """Discord and entanglement of formation on the (T, P) grid; rows are temperatures."""
    T = np.atleast_1d(np.asarray(T_grid, dtype=float))
    if np.any(~(T > 0)):
        bad = int(np.argmax(~(T > 0)))
        raise DomainError(f"temperature grid point {bad} (T = {T[bad]}) must be > 0")
    if np.any(np.diff(T) <= 0):
        raise DomainError("temperature grid must be strictly increasing")
    TT, JJ = np.meshgrid(T, table.J, indexing="ij")
    c = np.asarray(reduced_susceptibility(JJ, TT)) - 1.0
    Q = np.asarray(corr.quantum_discord(c))
    E = np.asarray(corr.entanglement_of_formation(corr.concurrence_at(JJ, TT)))
    return CorrelationMap(T, table.P.copy(), Q, E, table)


def synthetic_crossover_pair(J_ambient: float = -10.0, V0: float = 3271.0, B0: float = 54.1,
                             B0p: float = 3.3, dV0: float = 0.7, E0: float = 0.0) -> ChannelPair:
    """Singlet/triplet channels whose gap is ``J_ambient`` (kelvin) at the singlet V0.

    The triplet minimum sits ``dV0`` bohr^3 below the singlet one, so
    compression raises ``J`` and eventually makes it positive.
    """
    singlet = EosParams(E0, V0, B0, B0p)
    shape = EosParams(0.0, V0 - dV0, B0, B0p)
    E0_t = E0 - J_ambient / HARTREE_IN_KELVIN - bm3_energy(shape, V0)
    return ChannelPair(singlet, EosParams(E0_t, V0 - dV0, B0, B0p))
