"""Third-order Birch-Murnaghan equation of state.

``EosParams`` carries ``E0`` in hartree, ``V0`` in bohr^3 and ``B0`` in GPa;
``B0`` is converted to hartree/bohr^3 wherever it meets an energy.  Fitting is
a damped Gauss-Newton (Levenberg) iteration with an analytic Jacobian, run in
scaled variables so that the four parameters are all of order one.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, RejectedInputError
from .units import HA_PER_BOHR3_IN_GPA

__all__ = [
    "EosParams",
    "EnergyVolumeSeries",
    "FitReport",
    "CHANNELS",
    "bm3_energy",
    "bm3_pressure",
    "bulk_modulus",
    "initial_guess",
    "fit_bm3",
    "invert_pressure",
    "pressure_bracket",
    "synthetic_series",
]

log = logging.getLogger(__name__)

CHANNELS = ("singlet", "triplet", "unpolarized")
BRACKET = (0.5, 1.2)
MIN_POINTS = 5


@dataclass(frozen=True)
class EosParams:
    E0: float
    V0: float
    B0: float
    B0p: float

    def __post_init__(self):
        for name in ("E0", "V0", "B0", "B0p"):
            object.__setattr__(self, name, float(getattr(self, name)))
        vals = (self.E0, self.V0, self.B0, self.B0p)
        if not all(np.isfinite(v) for v in vals):
            raise DomainError(f"non-finite EoS parameter in {vals}")
        if self.V0 <= 0 or self.B0 <= 0:
            raise DomainError(f"V0 and B0 must be positive, got V0={self.V0}, B0={self.B0}")

    @property
    def B0_atomic(self) -> float:
        """Bulk modulus in hartree/bohr^3."""
        return self.B0 / HA_PER_BOHR3_IN_GPA

    def as_dict(self) -> dict[str, float]:
        return {"E0": self.E0, "V0": self.V0, "B0": self.B0, "B0p": self.B0p}


@dataclass
class EnergyVolumeSeries:
    """Energy-volume samples of one spin channel, canonical units (bohr^3, hartree), sorted by volume."""

    volumes: np.ndarray
    energies: np.ndarray
    channel: str = "unpolarized"
    source: str = ""

    def __post_init__(self):
        v = np.asarray(self.volumes, dtype=float).ravel()
        e = np.asarray(self.energies, dtype=float).ravel()
        if v.shape != e.shape:
            raise RejectedInputError(f"{v.size} volumes but {e.size} energies")
        if v.size < MIN_POINTS:
            raise RejectedInputError(f"need at least {MIN_POINTS} samples for a 4-parameter fit, got {v.size}")
        if not (np.all(np.isfinite(v)) and np.all(np.isfinite(e))):
            raise RejectedInputError("non-finite volume or energy")
        if np.any(v <= 0):
            raise RejectedInputError("volumes must be positive")
        order = np.argsort(v, kind="stable")
        v, e = v[order], e[order]
        dup = np.nonzero(np.diff(v) == 0)[0]
        if dup.size:
            raise RejectedInputError(f"duplicate volume {v[dup[0]]!r}")
        if self.channel not in CHANNELS:
            raise RejectedInputError(f"unknown channel {self.channel!r}; expected one of {CHANNELS}")
        self.volumes, self.energies = v, e

    def __len__(self):
        return self.volumes.size


@dataclass
class FitReport:
    params: EosParams
    rms_residual: float
    iterations: int
    converged: bool
    residuals: np.ndarray = field(repr=False)
    message: str = ""


def _check_volume(V):
    V = np.asarray(V, dtype=float)
    if np.any(~(V > 0)):
        raise DomainError("volume must be > 0")
    return V


def _out(a):
    return float(a) if np.ndim(a) == 0 else a


def _bracket_term(s, bp):
    # s = (V0/V)^(2/3);  {(s-1)^3 B0' + (s-1)^2 (6 - 4s)}
    y = s - 1.0
    return y**3 * bp + y**2 * (6.0 - 4.0 * s)


def bm3_energy(p: EosParams, V):
    """Energy in hartree at volume(s) ``V`` (bohr^3)."""
    V = _check_volume(V)
    s = (p.V0 / V) ** (2.0 / 3.0)
    return _out(p.E0 + 9.0 * p.V0 * p.B0_atomic / 16.0 * _bracket_term(s, p.B0p))


def bm3_pressure(p: EosParams, V):
    """Pressure ``-dE/dV`` in GPa at volume(s) ``V``."""
    V = _check_volume(V)
    r = p.V0 / V
    s = r ** (2.0 / 3.0)
    P = 1.5 * p.B0 * (r ** (7.0 / 3.0) - r ** (5.0 / 3.0)) * (1.0 + 0.75 * (p.B0p - 4.0) * (s - 1.0))
    return _out(P)


def bulk_modulus(p: EosParams, V):
    """Isothermal bulk modulus ``-V dP/dV`` in GPa."""
    V = _check_volume(V)
    r = p.V0 / V
    s = r ** (2.0 / 3.0)
    k = 0.75 * (p.B0p - 4.0)
    f = r ** (7.0 / 3.0) - r ** (5.0 / 3.0)
    # -V d/dV of r^n is n r^n, and of s is (2/3) s
    dfn = (7.0 / 3.0) * r ** (7.0 / 3.0) - (5.0 / 3.0) * r ** (5.0 / 3.0)
    return _out(1.5 * p.B0 * (dfn * (1.0 + k * (s - 1.0)) + f * k * (2.0 / 3.0) * s))


def synthetic_series(p: EosParams, n: int = 9, span=(0.85, 1.15), noise: float = 0.0,
                     seed: int | None = None, channel: str = "unpolarized") -> EnergyVolumeSeries:
    """``n`` equally spaced BM3 samples over ``span * V0``, optionally with uniform noise of half-width ``noise`` Ha."""
    V = np.linspace(span[0] * p.V0, span[1] * p.V0, n)
    E = np.asarray(bm3_energy(p, V))
    if noise:
        E = E + np.random.default_rng(seed).uniform(-noise, noise, n)
    return EnergyVolumeSeries(V, E, channel=channel, source=f"synthetic BM3 {p.as_dict()}")


def initial_guess(series: EnergyVolumeSeries) -> EosParams:
    """Parabola through the three lowest-energy samples: vertex -> V0, V0*E'' -> B0; B0' = 4."""
    V, E = series.volumes, series.energies
    if np.ptp(E) == 0:
        raise RejectedInputError("all energies equal; nothing to fit")
    idx = np.sort(np.argsort(E, kind="stable")[:3])
    a, b, _ = np.polyfit(V[idx], E[idx], 2)
    if not a > 0:
        # three lowest points not convex (noise, edge minimum): fall back to all points
        a, b, _ = np.polyfit(V, E, 2)
    if not a > 0:
        raise RejectedInputError("energies are not convex in volume (collinear or concave series)")
    V0 = -b / (2.0 * a)
    if not V0 > 0:
        raise RejectedInputError("parabolic vertex at non-positive volume")
    B0 = V0 * 2.0 * a * HA_PER_BOHR3_IN_GPA
    return EosParams(float(E.min()), float(V0), float(B0), 4.0)


def _model_and_jacobian(theta, u):
    e, v, b, bp = theta
    s = (v / u) ** (2.0 / 3.0)
    y = s - 1.0
    g = _bracket_term(s, bp)
    dg = 3.0 * y**2 * bp + 4.0 * y - 12.0 * y**2
    c = 9.0 / 16.0
    f = e + c * v * b * g
    jac = np.empty((u.size, 4))
    jac[:, 0] = 1.0
    jac[:, 1] = c * b * (g + (2.0 / 3.0) * s * dg)
    jac[:, 2] = c * v * g
    jac[:, 3] = c * v * b * y**3
    return f, jac


def fit_bm3(series: EnergyVolumeSeries, init: EosParams | None = None, *, max_iter: int = 500,
            rtol: float = 1e-12, xtol: float = 1e-12) -> FitReport:
    """Least-squares BM3 fit by damped Gauss-Newton.

    Stops when the relative change of the residual sum of squares or the norm
    of the (scaled) step drops below its tolerance.  A fit that runs out of
    iterations comes back with ``converged=False`` rather than raising.
    """
    if not isinstance(series, EnergyVolumeSeries):
        raise RejectedInputError("fit_bm3 expects an EnergyVolumeSeries")
    if init is None:
        init = initial_guess(series)
    V, E = series.volumes, series.energies

    v_scale = init.V0
    e_ref = float(E.min())
    e_scale = float(np.ptp(E))
    if e_scale == 0:
        raise RejectedInputError("all energies equal; nothing to fit")
    u = V / v_scale
    t = (E - e_ref) / e_scale
    theta = np.array([(init.E0 - e_ref) / e_scale, 1.0, init.B0_atomic * v_scale / e_scale, init.B0p])

    f, jac = _model_and_jacobian(theta, u)
    r = f - t
    ssr = float(r @ r)
    lam = 1e-3
    converged = False
    message = "maximum iterations reached"
    it = 0
    for it in range(1, max_iter + 1):
        jtj = jac.T @ jac
        grad = jac.T @ r
        step = None
        while lam < 1e16:
            a = jtj + lam * np.diag(np.diag(jtj))
            try:
                step = np.linalg.solve(a, -grad)
            except np.linalg.LinAlgError:
                lam *= 10.0
                continue
            trial = theta + step
            if trial[1] > 0 and trial[2] > 0:
                f_new, jac_new = _model_and_jacobian(trial, u)
                r_new = f_new - t
                ssr_new = float(r_new @ r_new)
                if np.isfinite(ssr_new) and ssr_new <= ssr:
                    break
            lam *= 10.0
        else:
            converged = True
            message = "no downhill step at maximal damping"
            break
        rel = (ssr - ssr_new) / ssr if ssr > 0 else 0.0
        theta, f, jac, r, ssr = trial, f_new, jac_new, r_new, ssr_new
        lam = max(lam / 10.0, 1e-12)
        if ssr == 0.0 or rel < rtol:
            converged, message = True, "relative SSR change below tolerance"
            break
        if np.linalg.norm(step) < xtol * (1.0 + np.linalg.norm(theta)):
            converged, message = True, "step norm below tolerance"
            break

    e, v, b, bp = theta
    params = EosParams(
        E0=e_ref + e_scale * e,
        V0=v_scale * v,
        B0=b * e_scale / v_scale * HA_PER_BOHR3_IN_GPA,
        B0p=bp,
    )
    residuals = E - np.asarray(bm3_energy(params, V))
    rms = float(np.sqrt(np.mean(residuals**2)))
    if converged and not np.isfinite(rms):
        converged = False
    log.debug("BM3 fit: %s after %d iterations (rms %.3g Ha)", message, it, rms)
    return FitReport(params, rms, it, converged, residuals, message)


def pressure_bracket(p: EosParams) -> tuple[float, float]:
    """Achievable pressure range ``(P(1.2 V0), P(0.5 V0))`` in GPa."""
    return bm3_pressure(p, BRACKET[1] * p.V0), bm3_pressure(p, BRACKET[0] * p.V0)


def invert_pressure(p: EosParams, P: float, rtol: float = 1e-12) -> float:
    """Volume at which the EoS reaches pressure ``P`` (GPa), by bisection on [0.5, 1.2]*V0."""
    lo_v, hi_v = BRACKET[0] * p.V0, BRACKET[1] * p.V0
    p_lo, p_hi = pressure_bracket(p)
    if not (p_lo <= P <= p_hi):
        raise DomainError(f"pressure {P} GPa outside achievable range [{p_lo:.6g}, {p_hi:.6g}] GPa")
    if P == 0:
        return float(p.V0)
    # P decreases with V: P(lo_v) >= P >= P(hi_v)
    while hi_v - lo_v > rtol * hi_v:
        mid = 0.5 * (lo_v + hi_v)
        if bm3_pressure(p, mid) > P:
            lo_v = mid
        else:
            hi_v = mid
    return 0.5 * (lo_v + hi_v)
