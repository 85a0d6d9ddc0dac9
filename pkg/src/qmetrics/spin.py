"""Spin-j operators, NOON probes and precision landscapes under rotational drift.

Dynamics are generated by J_y and the probe is the NOON state
(|j,+j>_y + e^{i chi}|j,-j>_y)/sqrt(2). The measurement basis drifts as
|k> -> exp(i J_z w_z) exp(i J_y w_y) |k>.

For the J_x eigenbasis J depends only on the rotated measurement axis
n = (cos w_y cos w_z, -cos w_y sin w_z, sin w_y). Axes perpendicular to y
form the optimal great circle ("equator"); latitude is measured from it
towards +y.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from . import linalg
from .errors import InvalidSpin, NoCrossing
from .model import Hamiltonian, MeasurementBasis, PureState, polar_velocity
from .optimal import build_optimal_basis

SUPRA_TOL = 1e-9


class BasisKind(str, Enum):
    JX_BASIS = "jx"
    EQ11_BASIS = "eq11"


@dataclass(frozen=True)
class SpinSystem:
    j: float
    jx: np.ndarray
    jy: np.ndarray
    jz: np.ndarray

    @property
    def dim(self) -> int:
        return self.jz.shape[0]

    @property
    def classical_bound(self) -> float:
        return 2 * self.j

    @property
    def heisenberg(self) -> float:
        return 4 * self.j**2

    def hamiltonian(self) -> Hamiltonian:
        return Hamiltonian(self.jy)


def make_spin(j) -> SpinSystem:
    """Angular momentum matrices in the J_z eigenbasis ordered m = j, j-1, ..., -j."""
    two_j = Fraction(j).limit_denominator(1000) * 2
    if two_j.denominator != 1 or two_j <= 0 or abs(float(two_j) - 2 * float(j)) > 1e-12:
        raise InvalidSpin(f"j must be a positive half-integer, got {j!r}")
    j = float(two_j) / 2
    m = np.arange(j, -j - 1, -1)
    jp = np.diag(np.sqrt(j * (j + 1) - m[1:] * (m[1:] + 1)), k=1).astype(complex)
    jm = jp.T.copy()
    return SpinSystem(
        j=j,
        jx=0.5 * (jp + jm),
        jy=-0.5j * (jp - jm),
        jz=np.diag(m).astype(complex),
    )


def noon_state(s: SpinSystem, chi: float = 0.0) -> PureState:
    v = linalg.hermitian_eig(s.jy).eigenvectors
    return PureState((v[:, -1] + np.exp(1j * chi) * v[:, 0]) / np.sqrt(2))


def reference_basis(s: SpinSystem, kind: BasisKind | str) -> MeasurementBasis:
    kind = BasisKind(kind)
    if kind is BasisKind.JX_BASIS:
        return MeasurementBasis(linalg.hermitian_eig(s.jx).eigenvectors)
    return build_optimal_basis(s.hamiltonian())


def drift_rotation(s: SpinSystem, omega_y: float, omega_z: float) -> np.ndarray:
    """exp(i J_z w_z) exp(i J_y w_y)."""
    ry = linalg.hermitian_eig(s.jy).propagator(-omega_y)
    rz = np.diag(np.exp(1j * np.diag(s.jz).real * omega_z))
    return rz @ ry


def _axes_to_drift(n: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = n / np.linalg.norm(n, axis=-1, keepdims=True)
    n = np.where(n[..., 2:3] < 0, -n, n)
    wy = np.arcsin(np.clip(n[..., 2], -1.0, 1.0))
    wz = np.mod(np.arctan2(-n[..., 1], n[..., 0]), 2 * np.pi)
    return wy, wz


def axis_to_drift(n) -> tuple[float, float]:
    """Drift angles (w_y in [0, pi/2], w_z in [0, 2 pi)) taking x to +/-n."""
    wy, wz = _axes_to_drift(np.asarray(n, dtype=float))
    return float(wy), float(wz)


def latitude_axis(latitude, azimuth) -> np.ndarray:
    """Axis at angle ``latitude`` from the x-z great circle towards +y.

    Array arguments broadcast; the components run along the last axis.
    """
    lat, az = np.broadcast_arrays(np.asarray(latitude, float), np.asarray(azimuth, float))
    return np.stack([np.cos(lat) * np.cos(az), np.sin(lat), np.cos(lat) * np.sin(az)], axis=-1)


class _Evaluator:
    """J for drifted bases at fixed (j, chi, theta, basis kind)."""

    def __init__(self, s: SpinSystem, chi: float, kind, theta: float = 0.0):
        self.s = s
        self.kind = BasisKind(kind)
        h = s.hamiltonian()
        psi = h.propagator(theta) @ noon_state(s, chi).vec
        self.psi = psi
        self.dpsi = -1j * (h.matrix @ psi)
        self.basis = reference_basis(s, self.kind).matrix
        self._jy = linalg.hermitian_eig(s.jy)
        self._mz = np.diag(s.jz).real

    def row(self, omega_y: float, omega_z) -> np.ndarray:
        """J along a row of fixed w_y for an array of w_z (vectorised)."""
        omega_z = np.atleast_1d(np.asarray(omega_z, dtype=float))
        # <k'| = <k| exp(-i Jy wy) exp(-i Jz wz)
        left = self.basis.conj().T @ self._jy.propagator(omega_y)
        phase = np.exp(-1j * np.outer(omega_z, self._mz))
        a = (phase * self.psi) @ left.T
        adot = (phase * self.dpsi) @ left.T
        r_dot = polar_velocity(a, adot)[2]
        return 4.0 * np.sum(r_dot**2, axis=-1)

    def points(self, omega_y, omega_z) -> np.ndarray:
        """J at paired arrays of (w_y, w_z) (vectorised)."""
        wy = np.atleast_1d(np.asarray(omega_y, dtype=float))
        wz = np.atleast_1d(np.asarray(omega_z, dtype=float))
        v, lam = self._jy.eigenvectors, self._jy.eigenvalues
        bv = self.basis.conj().T @ v
        # <k| exp(-i Jy wy) x = bv diag(exp(-i lam wy)) v^dagger x, row by row
        ey = np.exp(-1j * np.outer(wy, lam))
        phase = np.exp(-1j * np.outer(wz, self._mz))
        a = ((phase * self.psi) @ v.conj() * ey) @ bv.T
        adot = ((phase * self.dpsi) @ v.conj() * ey) @ bv.T
        r_dot = polar_velocity(a, adot)[2]
        return 4.0 * np.sum(r_dot**2, axis=-1)

    def at(self, omega_y: float, omega_z: float) -> float:
        return float(self.row(omega_y, [omega_z])[0])

    def along_axis(self, n) -> float:
        return self.at(*axis_to_drift(n))

    def along_axes(self, ns) -> np.ndarray:
        return self.points(*_axes_to_drift(np.asarray(ns, dtype=float)))


@dataclass(frozen=True)
class LandscapeGrid:
    omega_y_values: np.ndarray
    omega_z_values: np.ndarray
    J_values: np.ndarray
    j: float
    chi: float
    theta: float
    basis_kind: BasisKind

    @property
    def classical_bound(self) -> float:
        return 2 * self.j

    @property
    def heisenberg(self) -> float:
        return 4 * self.j**2


def _threads() -> int:
    raw = os.environ.get("QMETRICS_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    return n if n > 0 else (os.cpu_count() or 1)


def landscape_scan(s: SpinSystem, chi: float = 0.0, basis_kind=BasisKind.JX_BASIS,
                   grid=(37, 73), theta: float = 0.0, threads: int | None = None) -> LandscapeGrid:
    """J on the uniform grid w_y in [0, pi] (inclusive) x w_z in [0, 2 pi)."""
    ny, nz = grid
    if ny < 2 or nz < 2:
        raise ValueError("landscape grid needs at least 2 points per axis")
    wy = np.linspace(0.0, np.pi, ny)
    wz = np.linspace(0.0, 2 * np.pi, nz, endpoint=False)
    ev = _Evaluator(s, chi, basis_kind, theta)
    workers = threads or _threads()
    if workers > 1 and ny > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda y: ev.row(y, wz), wy))
    else:
        rows = [ev.row(y, wz) for y in wy]
    return LandscapeGrid(wy, wz, np.array(rows), s.j, float(chi), float(theta),
                         BasisKind(basis_kind))


def equatorial_family(s: SpinSystem, chi: float, xis, theta: float = 0.0) -> np.ndarray:
    """J for measurements cos(xi) J_x + sin(xi) J_z (pure w_y drift of the J_x basis)."""
    ev = _Evaluator(s, chi, BasisKind.JX_BASIS, theta)
    return np.array([ev.at(x, 0.0) for x in np.asarray(xis, float)])


def latitude_profile(s: SpinSystem, chi: float = 0.0, latitude: float = 0.05,
                     n_points: int = 720, basis_kind=BasisKind.JX_BASIS,
                     theta: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
    """(azimuths, J) around the circle at ``latitude`` from the optimal great circle."""
    ev = _Evaluator(s, chi, basis_kind, theta)
    az = np.linspace(0.0, 2 * np.pi, n_points, endpoint=False)
    vals = ev.along_axes(latitude_axis(latitude, az))
    return az, vals


def count_arcs(values, threshold: float) -> int:
    """Maximal circular runs with value > threshold; a full circle counts once."""
    above = np.asarray(values) > threshold
    if above.all():
        return 1
    return int(np.sum(above & ~np.roll(above, 1)))


def count_peaks(values, threshold: float) -> int:
    """Strict circular local maxima above ``threshold``."""
    v = np.asarray(values)
    peaks = (v > np.roll(v, 1)) & (v >= np.roll(v, -1)) & (v > threshold)
    return int(np.sum(peaks))


def classify(grid: LandscapeGrid, latitude: float = 0.05, n_points: int = 720) -> dict:
    """Classical / supra-classical labels and hotspot summary.

    The area fraction weights cells by solid angle (|cos w_y|). Arc and peak
    counts come from a direct evaluation on the latitude circle rather than
    from grid cells.
    """
    supra = grid.J_values > grid.classical_bound + SUPRA_TOL
    weights = np.abs(np.cos(grid.omega_y_values))[:, None] * np.ones_like(grid.J_values)
    fraction = float(np.sum(weights * supra) / np.sum(weights))
    s = make_spin(grid.j)
    _, profile = latitude_profile(s, grid.chi, latitude, n_points, grid.basis_kind, grid.theta)
    exists = grid.heisenberg > grid.classical_bound + SUPRA_TOL
    arcs = count_arcs(profile, grid.classical_bound + SUPRA_TOL) if exists else 0
    peaks = count_peaks(profile, grid.classical_bound + SUPRA_TOL) if exists else 0
    return {
        "labels": np.where(supra, "supra-classical", "classical"),
        "supra_fraction": fraction,
        "hotspot_count": peaks,
        "arc_count": arcs,
        "hotspot_fraction": fraction / peaks if peaks else 0.0,
        "latitude": float(latitude),
        "supra_classical_exists": bool(exists),
    }


def _first_crossing(f, lo: float, hi: float, samples: int, f_many=None) -> float | None:
    ws = np.linspace(lo, hi, samples)
    vals = f_many(ws) if f_many is not None else np.array([f(w) for w in ws])
    down = np.flatnonzero((vals[1:] <= 0) & (vals[:-1] > 0))
    if down.size == 0:
        return None
    i = int(down[0])
    return float(brentq(f, ws[i], ws[i + 1], xtol=1e-12))


def transverse_tolerance(s: SpinSystem, chi: float = 0.0, azimuth: float | None = None,
                         samples: int = 1441, theta: float = 0.0) -> tuple[float, bool]:
    """Transverse drift from the optimal great circle tolerated before J drops to 2j.

    Walks the longitude at ``azimuth`` (0 is the J_x axis) towards +y and returns
    ``(angle, crossed)``; ``crossed`` is False, with angle pi/2, when J stays above 2j.
    With ``azimuth=None`` the longitude through the centre of the most tolerant
    hotspot is used; that value is independent of chi and theta.
    """
    if s.j < 1:
        raise InvalidSpin("transverse tolerance needs j >= 1 (no supra-classical region)")
    ev = _Evaluator(s, chi, BasisKind.JX_BASIS, theta)
    bound = s.classical_bound

    def along(az):
        def f(w):
            return ev.along_axis(latitude_axis(w, az)) - bound
        return f

    def along_many(az):
        def f(ws):
            return ev.along_axes(latitude_axis(ws, az)) - bound
        return f

    def tol_at(az):
        hit = _first_crossing(along(az), 0.0, np.pi / 2, samples, along_many(az))
        return (np.pi / 2, False) if hit is None else (hit, True)

    if azimuth is not None:
        return tol_at(azimuth)
    # hotspot centres repeat every pi/(2j) in azimuth
    period = np.pi / (2 * s.j)
    coarse = np.linspace(0.0, period, 33)
    vals = [tol_at(az)[0] for az in coarse]
    k = int(np.argmax(vals))
    lo, hi = coarse[max(k - 1, 0)], coarse[min(k + 1, len(coarse) - 1)]
    res = minimize_scalar(lambda az: -tol_at(az)[0], bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-8})
    best = max((tol_at(res.x), tol_at(coarse[k])), key=lambda t: t[0])
    return best


def transverse_tolerance_strict(s: SpinSystem, chi: float = 0.0, azimuth: float | None = None):
    angle, crossed = transverse_tolerance(s, chi, azimuth)
    if not crossed:
        raise NoCrossing(f"J stays above 2j along the longitude for j={s.j}")
    return angle
