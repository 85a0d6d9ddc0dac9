"""Probe states, Hamiltonians, measurement bases and amplitude tracks.

The amplitude of outcome ``k`` at parameter ``theta`` is written
``<k|psi_theta> = r_k exp(i phi_k)``. All velocities are obtained
analytically from ``<k|psi_dot> = -i <k|H|psi_theta>``; phases are never
unwrapped or differenced.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import linalg
from .errors import DimensionMismatch, NotNormalized, NotOrthonormal

EPS_AMP = 1e-12
NORM_TOL = 1e-10
ORTHO_TOL = 1e-9


@dataclass(frozen=True)
class PureState:
    vec: np.ndarray

    def __post_init__(self):
        v = linalg.as_vector(self.vec)
        norm = np.linalg.norm(v)
        if abs(norm - 1.0) > NORM_TOL:
            raise NotNormalized(f"state norm is {norm!r}, expected 1")
        object.__setattr__(self, "vec", v)

    @classmethod
    def normalized(cls, amplitudes) -> PureState:
        v = linalg.as_vector(amplitudes)
        norm = np.linalg.norm(v)
        if norm == 0:
            raise NotNormalized("zero vector cannot be normalized")
        return cls(v / norm)

    @property
    def dim(self) -> int:
        return self.vec.shape[0]

    def overlap(self, other: PureState) -> complex:
        return complex(np.vdot(self.vec, other.vec))


@dataclass(frozen=True)
class Hamiltonian:
    """Hermitian generator with its spectrum cached at construction."""

    matrix: np.ndarray
    spectrum: linalg.SpectralDecomposition = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        m = linalg.as_matrix(self.matrix)
        spec = linalg.hermitian_eig(m)
        object.__setattr__(self, "matrix", 0.5 * (m + m.conj().T))
        object.__setattr__(self, "spectrum", spec)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.spectrum.eigenvalues

    def propagator(self, theta: float) -> np.ndarray:
        return self.spectrum.propagator(theta)

    def expectation(self, psi: PureState) -> float:
        _check_dims(self, psi)
        return float(np.vdot(psi.vec, self.matrix @ psi.vec).real)

    def second_moment(self, psi: PureState) -> float:
        hv = self.matrix @ psi.vec
        return float(np.vdot(hv, hv).real)

    def variance(self, psi: PureState) -> float:
        return max(self.second_moment(psi) - self.expectation(psi) ** 2, 0.0)

    def seminorm(self) -> float:
        w = self.eigenvalues
        return float(w[-1] - w[0])

    def shifted(self, c: float) -> Hamiltonian:
        return Hamiltonian(self.matrix + c * np.eye(self.dim))


@dataclass(frozen=True)
class MeasurementBasis:
    """Complete orthonormal measurement; the kets are the columns of ``matrix``.

    Outcome values m_k do not affect precision and are not stored.
    """

    matrix: np.ndarray
    labels: tuple = ()

    def __post_init__(self):
        m = linalg.as_matrix(self.matrix)
        dev = float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))))
        if dev > ORTHO_TOL:
            raise NotOrthonormal(f"basis Gram matrix deviates from identity by {dev:.3e}")
        labels = tuple(self.labels) if self.labels else tuple(range(m.shape[0]))
        if len(labels) != m.shape[0]:
            raise DimensionMismatch(f"{len(labels)} labels for {m.shape[0]} outcomes")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_kets(cls, kets: Sequence, labels: Sequence = ()) -> MeasurementBasis:
        return cls(np.column_stack([linalg.as_vector(k) for k in kets]), tuple(labels))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def kets(self) -> list[np.ndarray]:
        return [self.matrix[:, i] for i in range(self.dim)]

    def transformed(self, u: np.ndarray) -> MeasurementBasis:
        """Basis with every ket mapped |k> -> u|k>."""
        return MeasurementBasis(u @ self.matrix, self.labels)

    def observable(self, values=None) -> np.ndarray:
        """M = sum_k m_k |k><k|; by default m_k = k (0-based)."""
        vals = np.arange(self.dim, dtype=float) if values is None else np.asarray(values, float)
        return (self.matrix * vals) @ self.matrix.conj().T


@dataclass(frozen=True)
class AmplitudeTrack:
    """Per-outcome polar decomposition of <k|psi_theta> and its theta-velocity."""

    theta: float
    a: np.ndarray
    r: np.ndarray
    phi: np.ndarray
    p: np.ndarray
    r_dot: np.ndarray
    rphi_dot: np.ndarray
    tau: np.ndarray
    phase_defined: np.ndarray

    @property
    def phi_dot(self) -> np.ndarray:
        """phi_dot_k where the phase is defined, NaN elsewhere."""
        out = np.full(self.r.shape, np.nan)
        ok = self.phase_defined
        out[ok] = self.rphi_dot[ok] / self.r[ok]
        return out

    @property
    def p_dot(self) -> np.ndarray:
        return 2.0 * self.r * self.r_dot


def polar_velocity(a: np.ndarray, adot: np.ndarray, eps: float = EPS_AMP):
    """Split amplitude velocities into radial and transverse parts.

    Works elementwise on arrays of any shape. Returns
    ``(r, phi, r_dot, rphi_dot, tau, defined)``. Where ``r < eps`` the phase
    is undefined; there phi = tau = 0 and the whole speed |adot| is radial,
    which keeps p_dot^2 / p at its finite limit 4 |adot|^2.
    """
    r = np.abs(a)
    defined = r >= eps
    safe = np.where(defined, a, 1.0)
    rot = np.conj(safe) / np.abs(safe) * adot
    r_dot = np.where(defined, rot.real, np.abs(adot))
    rphi_dot = np.where(defined, rot.imag, 0.0)
    phi = np.where(defined, np.mod(np.angle(safe), 2 * np.pi), 0.0)
    tau = np.where(defined, np.arctan2(rphi_dot, r_dot), 0.0)
    return r, phi, r_dot, rphi_dot, tau, defined


def _check_dims(*objs):
    dims = {o.dim for o in objs}
    if len(dims) != 1:
        raise DimensionMismatch(f"dimension mismatch among inputs: {sorted(dims)}")


def evolve(h: Hamiltonian, psi0: PureState, theta: float) -> PureState:
    _check_dims(h, psi0)
    v = h.propagator(theta) @ psi0.vec
    return PureState(v / np.linalg.norm(v))


def amplitude_track(
    h: Hamiltonian, psi0: PureState, basis: MeasurementBasis, theta: float
) -> AmplitudeTrack:
    _check_dims(h, psi0, basis)
    psi = h.propagator(theta) @ psi0.vec
    bdag = basis.matrix.conj().T
    a = bdag @ psi
    adot = bdag @ (-1j * (h.matrix @ psi))
    r, phi, r_dot, rphi_dot, tau, defined = polar_velocity(a, adot)
    return AmplitudeTrack(
        theta=float(theta), a=a, r=r, phi=phi, p=r**2, r_dot=r_dot,
        rphi_dot=rphi_dot, tau=tau, phase_defined=defined,
    )


def rezero(h: Hamiltonian, psi: PureState) -> Hamiltonian:
    """H - <H> 1, the Hamiltonian with zero mean energy in ``psi``."""
    return h.shifted(-h.expectation(psi))
