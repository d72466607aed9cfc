"""Thermal Heisenberg spin-1/2 dimer.

Sign convention: ``H = -J S1.S2``.  ``J < 0`` is antiferromagnetic (singlet
ground state, entangled); ``J > 0`` is ferromagnetic (triplet ground state).
Energies, including ``J``, are in kelvin (E/k_B) so ``J/T`` is a pure number.

The reduced susceptibility ``x = alpha*T*chi`` with
``alpha = 2 k_B / (N (g mu_B)^2)`` is the quantity every correlation measure
depends on; it equals ``c + 1`` where ``c = <sz1 sz2>`` in Pauli units.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InconsistentDataError
from .units import K_B, MU_B

__all__ = [
    "DimerModel",
    "ThermalDimerState",
    "DomainError",
    "InconsistentDataError",
    "OutOfModelWarning",
    "boltzmann_ratio",
    "energy_levels",
    "thermal_state",
    "susceptibility",
    "reduced_susceptibility",
    "correlation_function",
    "susceptibility_normalizer",
    "correlation_from_susceptibility",
]

C_MIN, C_MAX = -1.0, 1.0 / 3.0


class OutOfModelWarning(UserWarning):
    pass


@dataclass(frozen=True)
class DimerModel:
    """Exchange coupling ``J`` (kelvin), Landé factor ``g`` and dimer count ``N``."""

    J: float
    g: float = 2.0
    N: float = 1.0

    def __post_init__(self):
        if not np.isfinite(self.J):
            raise DomainError(f"J must be finite, got {self.J}")
        if not (self.g > 0 and np.isfinite(self.g)):
            raise DomainError(f"g must be positive, got {self.g}")
        if not self.N >= 1:
            raise DomainError(f"N must be >= 1, got {self.N}")


@dataclass(frozen=True)
class ThermalDimerState:
    temperature: float
    # order: singlet, triplet m=-1, m=0, m=+1
    level_populations: tuple[float, float, float, float]
    c: float

    @property
    def singlet_population(self) -> float:
        return self.level_populations[0]


def _check_temperature(T):
    T = np.asarray(T, dtype=float)
    if np.any(~(T > 0)):
        raise DomainError("temperature must be > 0")
    return T


def _as_output(a):
    return float(a) if np.ndim(a) == 0 else a


def boltzmann_ratio(J, T):
    """Return ``(r, flipped)`` with ``r = exp(-|J|/T) <= 1``.

    ``flipped`` is True where ``J > 0``, i.e. where the singlet/triplet weight
    ratio ``exp(-J/T)`` equals ``r`` itself rather than ``1/r``.  Keeping the
    exponent non-positive avoids overflow as ``T -> 0``.
    """
    J = np.asarray(J, dtype=float)
    T = _check_temperature(T)
    r = np.exp(-np.abs(J) / T)
    return r, np.broadcast_to(J > 0, r.shape)


def energy_levels(model: DimerModel) -> tuple[float, float]:
    """Singlet and triplet energies ``(E_S, E_T) = (3J/4, -J/4)``."""
    return 0.75 * model.J, -0.25 * model.J


def correlation_function(J, T):
    """``c(T) = (1 - e)/(3 + e)`` with ``e = exp(-J/T)``, vectorised."""
    r, ferro = boltzmann_ratio(J, T)
    # J > 0: e = r.  J <= 0: e = 1/r, multiply through by r.
    c = np.where(ferro, (1.0 - r) / (3.0 + r), (r - 1.0) / (3.0 * r + 1.0))
    return _as_output(c)


def reduced_susceptibility(J, T):
    """``x = alpha*T*chi = 4/(3 + exp(-J/T))``; lies in (0, 4/3)."""
    r, ferro = boltzmann_ratio(J, T)
    x = np.where(ferro, 4.0 / (3.0 + r), 4.0 * r / (3.0 * r + 1.0))
    return _as_output(x)


def thermal_state(model: DimerModel, T: float) -> ThermalDimerState:
    """Exact Boltzmann populations of the four dimer levels at temperature ``T``."""
    T = float(_check_temperature(T))
    E_S, E_T = energy_levels(model)
    energies = np.array([E_S, E_T, E_T, E_T])
    w = np.exp(-(energies - energies.min()) / T)
    p = w / w.sum()
    c = p[1] + p[3] - p[2] - p[0]
    return ThermalDimerState(T, tuple(float(v) for v in p), float(c))


def susceptibility_normalizer(g: float = 2.0, N: float = 1.0) -> float:
    """``alpha = 2 k_B / (N (g mu_B)^2)`` in SI units (so ``chi`` is in J/T^2)."""
    return 2.0 * K_B / (N * (g * MU_B) ** 2)


def susceptibility(model: DimerModel, T):
    """Bleaney-Bowers susceptibility per ``N`` dimers.

    ``chi = 2N(g mu_B)^2/(k_B T) / (3 + exp(-J/T))``.  ``T`` and ``J`` are in
    kelvin, so the prefactor's ``k_B T`` is taken in joule; the result is in
    J/T^2 for the chosen ``N``.
    """
    T = _check_temperature(T)
    x = reduced_susceptibility(model.J, T)
    return _as_output(np.asarray(x) / (susceptibility_normalizer(model.g, model.N) * T))


def correlation_from_susceptibility(chi, T, g: float = 2.0, N: float = 1.0, *, eps: float = 1e-6):
    """Correlation ``c = alpha*T*chi - 1`` from a measured susceptibility.

    Values within ``eps`` of the physical range [-1, 1/3] are accepted; values
    that leave it by more than 1e-9 trigger an :class:`OutOfModelWarning`.
    Anything further out raises :class:`InconsistentDataError`.
    """
    T = _check_temperature(T)
    chi = np.asarray(chi, dtype=float)
    if np.any(chi < 0):
        raise DomainError("susceptibility must be >= 0")
    c = susceptibility_normalizer(g, N) * T * chi - 1.0
    lo, hi = np.min(c), np.max(c)
    if lo < C_MIN - eps or hi > C_MAX + eps:
        raise InconsistentDataError(
            f"c range [{lo:.6g}, {hi:.6g}] leaves [-1, 1/3]; data is not from a spin-1/2 dimer")
    if lo < C_MIN - 1e-9 or hi > C_MAX + 1e-9:
        warnings.warn(f"c range [{lo:.12g}, {hi:.12g}] marginally outside [-1, 1/3]", OutOfModelWarning,
                      stacklevel=2)
    return _as_output(c)
