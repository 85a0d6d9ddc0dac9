"""Classical Fisher information of a complete measurement and the information complement.

Three routes to the same J are provided and cross-checked in :func:`report`:

* ``fisher_direct``: sum_k p_dot_k^2 / p_k from the outcome distribution,
* ``fisher_velocity``: 4 sum_k r_dot_k^2 (the canonical value),
* ``fisher_operator_form``: <psi|H F H|psi> with F = 4 sum_k cos^2(tau_k) |k><k|.

The information complement K = sum_k (r_k phi_dot_k)^2 satisfies
J/4 = <H^2> - K.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .errors import ConsistencyFailure, NonRealResult
from .model import (
    AmplitudeTrack,
    Hamiltonian,
    MeasurementBasis,
    PureState,
    amplitude_track,
    evolve,
    polar_velocity,
)

EPS_P = 1e-12
CONSISTENCY_TOL = 1e-8


@dataclass(frozen=True)
class FisherReport:
    J: float
    K: float
    h_mean: float
    h2_mean: float
    variance: float
    seminorm_sq: float
    theta: float

    def as_dict(self) -> dict:
        return asdict(self)

    @property
    def saturates_variance_bound(self) -> bool:
        return abs(self.J - 4 * self.variance) <= 1e-8


def fisher_direct(track: AmplitudeTrack) -> float:
    p = track.p
    p_dot = 2.0 * track.r * track.r_dot
    big = p > EPS_P
    terms = np.where(big, p_dot**2 / np.where(big, p, 1.0), 4.0 * track.r_dot**2)
    return float(np.sum(terms))


def fisher_velocity(track: AmplitudeTrack) -> float:
    return float(4.0 * np.sum(track.r_dot**2))


def f_operator(track: AmplitudeTrack, basis: MeasurementBasis) -> np.ndarray:
    """F = 4 sum_k cos^2(tau_k) |k><k|, diagonal in the measurement basis."""
    b = basis.matrix
    return (b * (4.0 * np.cos(track.tau) ** 2)) @ b.conj().T


def fisher_operator_form(h: Hamiltonian, psi_theta: PureState, fop: np.ndarray) -> float:
    hv = h.matrix @ psi_theta.vec
    val = np.vdot(hv, fop @ hv)
    if abs(val.imag) > 1e-8:
        raise NonRealResult(f"<psi|H F H|psi> has imaginary part {val.imag:.3e}")
    return float(val.real)


def phi_operator(h: Hamiltonian, fop: np.ndarray, theta: float) -> np.ndarray:
    """Heisenberg-picture operator exp(iH theta) F exp(-iH theta)."""
    u = h.propagator(theta)
    return u.conj().T @ fop @ u


def complement(track: AmplitudeTrack) -> float:
    return float(np.sum(track.rphi_dot**2))


def report(
    h: Hamiltonian, psi0: PureState, basis: MeasurementBasis, theta: float
) -> FisherReport:
    track = amplitude_track(h, psi0, basis, theta)
    J = fisher_velocity(track)
    j_direct = fisher_direct(track)
    j_op = fisher_operator_form(h, evolve(h, psi0, theta), f_operator(track, basis))
    scale = max(1.0, abs(J))
    if abs(J - j_direct) > CONSISTENCY_TOL * scale or abs(J - j_op) > CONSISTENCY_TOL * scale:
        raise ConsistencyFailure(
            f"Fisher routes disagree: velocity={J!r} direct={j_direct!r} operator={j_op!r}"
        )
    h_mean = h.expectation(psi0)
    h2_mean = h.second_moment(psi0)
    return FisherReport(
        J=J,
        K=complement(track),
        h_mean=h_mean,
        h2_mean=h2_mean,
        variance=h.variance(psi0),
        seminorm_sq=h.seminorm() ** 2,
        theta=float(theta),
    )


def fisher_scan(
    h: Hamiltonian, psi0: PureState, basis: MeasurementBasis, thetas
) -> np.ndarray:
    """Canonical J at many theta values at once (vectorised ``fisher_velocity``)."""
    thetas = np.asarray(thetas, dtype=float)
    spec = h.spectrum
    v = spec.eigenvectors
    coeffs = v.conj().T @ psi0.vec
    # psi_theta for every theta, shape (n_theta, dim)
    psi = (np.exp(-1j * np.outer(thetas, spec.eigenvalues)) * coeffs) @ v.T
    bconj = basis.matrix.conj()
    a = psi @ bconj
    adot = (-1j * psi @ h.matrix.T) @ bconj
    _, _, r_dot, _, _, _ = polar_velocity(a, adot)
    return 4.0 * np.sum(r_dot**2, axis=-1)
