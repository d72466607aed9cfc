"""Quantum and classical correlations of the dimer's Bell-diagonal thermal state.

The thermal state of an isotropic dimer is ``rho = (I + c sum_i s_i(x)s_i)/4``:
a Werner-like Bell-diagonal state with singlet weight ``(1 - 3c)/4`` and
triplet weight ``(1 + c)/4``.  Every measure here is a function of ``c`` alone
(or, equivalently, of the reduced susceptibility ``x = c + 1``).

Closed forms are paired with independent numerical routes:
:func:`discord_oracle` maximises the classical correlation over projective
measurements, and :func:`concurrence_wootters_oracle` runs the Wootters
eigenvalue procedure on the explicit 4x4 density matrix.

Note on the printed susceptibility formulas: written in ``x``, the mutual
information is ``[(4 - 3x) log2(4 - 3x) + 3x log2 x]/4`` and the concurrence
is ``max(0, (2 - 3x)/2)``.  Forms with ``2 - 3x`` inside the logarithm, or
``-(2 + 3x)/2`` for the concurrence, are negative over the physical range and
disagree with both oracles.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dimer import C_MAX, C_MIN, correlation_function, reduced_susceptibility
from .errors import DomainError

__all__ = [
    "BellDiagonalState",
    "CorrelationPoint",
    "xlog2x",
    "binary_entropy",
    "mutual_information",
    "classical_correlation",
    "quantum_discord",
    "discord_oracle",
    "concurrence",
    "concurrence_wootters_oracle",
    "entanglement_of_formation",
    "entanglement_temperature",
    "concurrence_at",
    "correlation_point",
]

LN3 = math.log(3.0)
_TINY = 1e-300

_PAULI = np.array([
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=complex)


def _as_output(a):
    return float(a) if np.ndim(a) == 0 else a


def _check_c(c, tol: float = 1e-12):
    c = np.asarray(c, dtype=float)
    if np.any(~((c >= C_MIN - tol) & (c <= C_MAX + tol))):
        raise DomainError("correlation c must lie in [-1, 1/3]")
    return np.clip(c, C_MIN, C_MAX)


def xlog2x(p):
    """``p*log2(p)`` with the convention ``0 log 0 = 0`` (below 1e-300)."""
    p = np.asarray(p, dtype=float)
    safe = np.where(p < _TINY, 1.0, p)
    return _as_output(np.where(p < _TINY, 0.0, p * np.log2(safe)))


def binary_entropy(p):
    return _as_output(-np.asarray(xlog2x(p)) - np.asarray(xlog2x(1.0 - np.asarray(p, dtype=float))))


def _entropy(eigs, axis=-1):
    return -np.sum(np.asarray(xlog2x(eigs)), axis=axis)


@dataclass(frozen=True)
class BellDiagonalState:
    """Isotropic Bell-diagonal two-qubit state with ``c1 = c2 = c3 = c``."""

    c: float

    def __post_init__(self):
        object.__setattr__(self, "c", float(_check_c(self.c)))

    @property
    def singlet_weight(self) -> float:
        return (1.0 - 3.0 * self.c) / 4.0

    @property
    def triplet_weight(self) -> float:
        return (1.0 + self.c) / 4.0

    @property
    def eigenvalues(self) -> np.ndarray:
        t = self.triplet_weight
        return np.array([self.singlet_weight, t, t, t])

    def density_matrix(self) -> np.ndarray:
        rho = np.eye(4, dtype=complex)
        for s in _PAULI:
            rho += self.c * np.kron(s, s)
        return rho / 4.0

    @classmethod
    def from_susceptibility(cls, x: float) -> "BellDiagonalState":
        return cls(x - 1.0)


@dataclass(frozen=True)
class CorrelationPoint:
    T: float
    x: float
    c: float
    mutual_info: float
    classical: float
    discord: float
    concurrence: float
    eof: float


def mutual_information(c):
    """``I = 2 + sum_k lambda_k log2 lambda_k`` in bits (both marginals are maximally mixed)."""
    c = _check_c(c)
    s = (1.0 - 3.0 * c) / 4.0
    t = (1.0 + c) / 4.0
    return _as_output(2.0 + np.asarray(xlog2x(s)) + 3.0 * np.asarray(xlog2x(t)))


def classical_correlation(c):
    """Maximal classical correlation ``[(1+|c|)log2(1+|c|) + (1-|c|)log2(1-|c|)]/2``."""
    a = np.abs(_check_c(c))
    return _as_output(0.5 * (np.asarray(xlog2x(1.0 + a)) + np.asarray(xlog2x(1.0 - a))))


def quantum_discord(c):
    """Entropic discord ``I - C_cl`` in bits."""
    q = np.asarray(mutual_information(c)) - np.asarray(classical_correlation(c))
    # cancellation can leave -1e-17 at c = 0
    return _as_output(np.maximum(q, 0.0))


# --- measurement-minimisation oracle -------------------------------------

def _bloch(theta, phi):
    return np.stack([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)], axis=-1)


def _conditional_entropy(rho4, theta, phi):
    """Average entropy of A after a projective measurement on B along (theta, phi)."""
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    n = _bloch(theta, phi)
    ns = np.einsum("ki,ijl->kjl", n, _PAULI)
    eye = np.eye(2)
    total = np.zeros(theta.shape)
    for sign in (1.0, -1.0):
        proj = 0.5 * (eye + sign * ns)
        # M[k, a, a'] = sum_{b, b'} rho[a, b, a', b'] proj[k, b', b]
        m = np.einsum("abcd,kdb->kac", rho4, proj)
        m = 0.5 * (m + np.conj(np.swapaxes(m, -1, -2)))
        p = np.real(np.trace(m, axis1=-2, axis2=-1))
        w = np.clip(np.linalg.eigvalsh(m), 0.0, None)
        with np.errstate(invalid="ignore", divide="ignore"):
            w = np.where(p[:, None] > _TINY, w / p[:, None], 0.0)
        total += p * _entropy(w)
    return total


def _golden(f, a, b, tol=1e-9, maxiter=200):
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(maxiter):
        if abs(b - a) < tol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def discord_oracle(state, n_theta: int = 64, n_phi: int = 128, tol: float = 1e-10) -> float:
    """Discord by explicit optimisation over projective measurements on qubit B.

    ``state`` is a :class:`BellDiagonalState` or any 4x4 density matrix.  The
    conditional entropy is minimised on a ``n_theta x n_phi`` Bloch-sphere
    grid, then refined by alternating golden-section searches in theta and
    phi until the objective moves by less than ``tol``.
    """
    rho = state.density_matrix() if isinstance(state, BellDiagonalState) else np.asarray(state, complex)
    rho4 = rho.reshape(2, 2, 2, 2)
    rb = np.einsum("abad->bd", rho4)
    s_ab = _entropy(np.clip(np.linalg.eigvalsh(rho), 0.0, None))
    s_b = _entropy(np.clip(np.linalg.eigvalsh(rb), 0.0, None))

    th = (np.arange(n_theta) + 0.5) * np.pi / n_theta
    ph = np.arange(n_phi) * 2.0 * np.pi / n_phi
    tt, pp = np.meshgrid(th, ph, indexing="ij")
    vals = _conditional_entropy(rho4, tt.ravel(), pp.ravel())
    k = int(np.argmin(vals))
    theta, phi, best = float(tt.ravel()[k]), float(pp.ravel()[k]), float(vals[k])
    dth, dph = np.pi / n_theta, 2.0 * np.pi / n_phi

    for _ in range(50):
        prev = best
        theta, _ = _golden(lambda t: float(_conditional_entropy(rho4, t, phi)[0]), theta - dth, theta + dth)
        phi, best = _golden(lambda p: float(_conditional_entropy(rho4, theta, p)[0]), phi - dph, phi + dph)
        best = min(best, prev)
        if prev - best < tol:
            break
    # Q = I - C = [S_A + S_B - S_AB] - [S_A - min S(A|B)]
    return max(float(s_b - s_ab + best), 0.0)


# --- entanglement ---------------------------------------------------------

def concurrence(c):
    """Concurrence ``max(0, -(1 + 3c)/2)``; nonzero only for ``c < -1/3``."""
    c = _check_c(c)
    return _as_output(np.maximum(0.0, -(1.0 + 3.0 * c) / 2.0))


def concurrence_wootters_oracle(state, rank_tol: float = 64 * np.finfo(float).eps) -> float:
    """Wootters concurrence from the eigenvalues of ``rho (sy x sy) rho* (sy x sy)``.

    The eigenvalues are obtained from the Hermitian, similar matrix
    ``sqrt(rho) rho~ sqrt(rho)``; values below ``rank_tol`` are numerically
    zero and dropped before the square root.
    """
    rho = state.density_matrix() if isinstance(state, BellDiagonalState) else np.asarray(state, complex)
    yy = np.kron(_PAULI[1], _PAULI[1])
    rho_tilde = yy @ rho.conj() @ yy
    w, v = np.linalg.eigh(rho)
    w = np.where(w < rank_tol, 0.0, w)
    sq = (v * np.sqrt(w)) @ v.conj().T
    mu = np.linalg.eigvalsh(sq @ rho_tilde @ sq)
    mu = np.where(mu < rank_tol, 0.0, mu)
    r = np.sort(np.sqrt(mu))[::-1]
    return float(max(0.0, r[0] - r[1] - r[2] - r[3]))


def entanglement_of_formation(C):
    """Entanglement of formation ``h((1 + sqrt(1 - C^2))/2)`` in bits."""
    C = np.asarray(C, dtype=float)
    if np.any(~((C >= -1e-12) & (C <= 1.0 + 1e-12))):
        raise DomainError("concurrence must lie in [0, 1]")
    C = np.clip(C, 0.0, 1.0)
    lam_plus = 0.5 * (1.0 + np.sqrt(1.0 - C * C))
    return _as_output(np.asarray(binary_entropy(lam_plus)))


def entanglement_temperature(J):
    """Highest temperature with nonzero concurrence: ``|J|/ln 3`` for ``J < 0``, else 0."""
    J = np.asarray(J, dtype=float)
    if np.any(~np.isfinite(J)):
        raise DomainError("J must be finite")
    return _as_output(np.where(J < 0, -J / LN3, 0.0))


def concurrence_at(J, T):
    """Concurrence of the thermal dimer; exactly zero for ``T >= T_e(J)``."""
    J, T = np.broadcast_arrays(np.asarray(J, float), np.asarray(T, float))
    c = np.asarray(correlation_function(J, T))
    C = np.asarray(concurrence(c))
    return _as_output(np.where(T < np.asarray(entanglement_temperature(J)), C, 0.0))


def correlation_point(J: float, T: float) -> CorrelationPoint:
    """Every correlation measure of the dimer with coupling ``J`` at temperature ``T`` (kelvin)."""
    x = reduced_susceptibility(J, T)
    c = correlation_function(J, T)
    C = concurrence_at(J, T)
    return CorrelationPoint(
        T=float(T),
        x=x,
        c=c,
        mutual_info=mutual_information(c),
        classical=classical_correlation(c),
        discord=quantum_discord(c),
        concurrence=C,
        eof=entanglement_of_formation(C),
    )
