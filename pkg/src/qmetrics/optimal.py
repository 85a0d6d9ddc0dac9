"""Optimal probes and measurements, and criteria for recognising them.

The universally optimal configuration puts the probe in the equal
superposition of the extremal eigenvectors of H and measures in the
basis (|low> +/- |high>)/sqrt(2); it reaches J = (lambda_max - lambda_min)^2
at every theta.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DegenerateConfiguration, DimensionMismatch
from .model import (
    EPS_AMP,
    AmplitudeTrack,
    Hamiltonian,
    MeasurementBasis,
    PureState,
    amplitude_track,
    rezero,
)

OPTIMALITY_TOL = 1e-9
INDEPENDENCE_TOL = 1e-8
BLOCK_TOL = 1e-9


@dataclass(frozen=True)
class CriterionVerdict:
    satisfied: bool
    residual: float
    detail: str = ""
    tol: float = 0.0

    def __bool__(self) -> bool:
        return self.satisfied


def _verdict(residual: float, tol: float, detail: str) -> CriterionVerdict:
    residual = float(abs(residual))
    return CriterionVerdict(residual <= tol, residual, detail, tol)


@dataclass(frozen=True)
class QubitEmbedding:
    """Two eigenvectors of H and the probe/measurement angles inside their span.

    Probe: cos(gamma)|1> + exp(i chi) sin(gamma)|2>; measurement:
    cos(alpha)|1> + sin(alpha)|2> and -sin(alpha)|1> + cos(alpha)|2>;
    beta = chi - (lambda2 - lambda1) theta.
    """

    lambda1: float
    lambda2: float
    ket1: np.ndarray
    ket2: np.ndarray
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        k1 = linalg.as_vector(self.ket1)
        k2 = linalg.as_vector(self.ket2)
        if k1.shape != k2.shape:
            raise DimensionMismatch("embedding kets differ in dimension")
        if linalg.gram_check([k1, k2]) > 1e-10:
            raise DegenerateConfiguration("embedding kets are not orthonormal")
        if self.lambda1 == self.lambda2:
            raise DegenerateConfiguration("equal eigenvalues carry no information")
        object.__setattr__(self, "ket1", k1)
        object.__setattr__(self, "ket2", k2)

    @classmethod
    def standard(cls, alpha, beta, gamma, lambda1=1.0, lambda2=-1.0) -> QubitEmbedding:
        return cls(lambda1, lambda2, np.array([1, 0], complex), np.array([0, 1], complex),
                   alpha, beta, gamma)

    def instance(self, chi: float | None = None):
        """(H, probe, basis) realising the embedding; theta = 0 when chi = beta.

        H acts as lambda1, lambda2 on the two kets and as zero on their
        orthogonal complement.
        """
        chi = self.beta if chi is None else chi
        k1, k2 = self.ket1, self.ket2
        h = self.lambda1 * np.outer(k1, k1.conj()) + self.lambda2 * np.outer(k2, k2.conj())
        psi = np.cos(self.gamma) * k1 + np.exp(1j * chi) * np.sin(self.gamma) * k2
        c, s = np.cos(self.alpha), np.sin(self.alpha)
        basis = linalg.complete_basis([c * k1 + s * k2, -s * k1 + c * k2], k1.shape[0])
        return Hamiltonian(h), PureState(psi), MeasurementBasis(basis)


def closed_form_grid(alpha, beta, gamma, gap_sq: float = 4.0) -> np.ndarray:
    """Closed-form qubit J on broadcast arrays of angles; NaN where it is 0/0."""
    a, b, g = (np.asarray(v, dtype=float) for v in (alpha, beta, gamma))
    s, c = np.sin, np.cos
    x = c(2 * (a - g)) + c(2 * (a + g)) + 2 * c(b) * s(2 * a) * s(2 * g)
    denom = (x - 2) * (x + 2)
    bad = np.abs(denom) < 1e-12
    num = -4 * gap_sq * s(2 * a) ** 2 * s(2 * g) ** 2 * s(b) ** 2
    return np.where(bad, np.nan, num / np.where(bad, 1.0, denom))


def qubit_closed_form(emb: QubitEmbedding) -> float:
    value = closed_form_grid(emb.alpha, emb.beta, emb.gamma, (emb.lambda1 - emb.lambda2) ** 2)
    if np.isnan(value):
        raise DegenerateConfiguration(
            "closed form is 0/0 here (probe or measurement aligned with the eigenbasis)"
        )
    return float(value)


def extremal_eigenvectors(h: Hamiltonian) -> tuple[int, int]:
    """Column indices (low, high) of the chosen extremal eigenvectors.

    In a degenerate extremal eigenspace the first canonical vector is used.
    """
    blocks = h.spectrum.blocks()
    low = int(blocks[0][0])
    if len(blocks) == 1:
        if h.dim < 2:
            raise DegenerateConfiguration("one-dimensional Hilbert space")
        return low, int(blocks[0][1])
    return low, int(blocks[-1][0])


def build_optimal_basis(h: Hamiltonian) -> MeasurementBasis:
    low, high = extremal_eigenvectors(h)
    v = h.spectrum.eigenvectors
    kets = [(v[:, low] + v[:, high]) / np.sqrt(2), (v[:, low] - v[:, high]) / np.sqrt(2)]
    kets += [v[:, i] for i in range(h.dim) if i not in (low, high)]
    return MeasurementBasis.from_kets(kets)


def max_variance_probe(h: Hamiltonian, chi: float = 0.0) -> PureState:
    if h.seminorm() <= linalg.DEGENERACY_TOL * max(1.0, float(np.max(np.abs(h.eigenvalues)))):
        raise DegenerateConfiguration("extremal eigenvalues coincide; no probe carries information")
    low, high = extremal_eigenvectors(h)
    v = h.spectrum.eigenvectors
    return PureState((v[:, low] + np.exp(1j * chi) * v[:, high]) / np.sqrt(2))


def seminorm_bound(h: Hamiltonian) -> float:
    return h.seminorm() ** 2


def check_optimality(track: AmplitudeTrack, h_mean: float) -> CriterionVerdict:
    """Classical variance of the phase velocities, sum_k p_k (phi_dot_k + <H>)^2."""
    terms = np.where(track.phase_defined, track.rphi_dot + h_mean * track.r, 0.0)
    residual = float(np.sum(terms**2))
    return _verdict(residual, OPTIMALITY_TOL, "classical variance of phase velocities")


def braun_caves_residual(
    h: Hamiltonian, psi0: PureState, basis: MeasurementBasis, theta: float
) -> CriterionVerdict:
    """max_k |Im <psi|k><k|psi_perp>| with psi_perp the part of psi_dot orthogonal to psi."""
    psi = h.propagator(theta) @ psi0.vec
    dpsi = -1j * (h.matrix @ psi)
    perp = dpsi - np.vdot(psi, dpsi) * psi
    bdag = basis.matrix.conj().T
    vals = np.conj(bdag @ psi) * (bdag @ perp)
    return _verdict(float(np.max(np.abs(vals.imag))), OPTIMALITY_TOL,
                    "max_k |Im <psi|k><k|psi_perp>|")


def default_thetas(h: Hamiltonian, n: int = 8) -> np.ndarray:
    spread = h.seminorm()
    period = 2 * np.pi / spread if spread > 0 else 2 * np.pi
    return np.linspace(0.0, period, n, endpoint=False)


def check_parameter_independence(
    h: Hamiltonian, psi0: PureState, basis: MeasurementBasis, thetas=None
) -> CriterionVerdict:
    thetas = default_thetas(h) if thetas is None else np.asarray(thetas, dtype=float)
    if thetas.size < 3:
        raise ValueError("parameter independence needs at least 3 theta samples")
    h_mean = h.expectation(psi0)
    residuals = [
        check_optimality(amplitude_track(h, psi0, basis, t), h_mean).residual for t in thetas
    ]
    worst = int(np.argmax(residuals))
    return _verdict(residuals[worst], INDEPENDENCE_TOL,
                    f"worst optimality residual at theta={thetas[worst]:.6g}")


def sld_basis(h: Hamiltonian, psi0: PureState, theta0: float) -> MeasurementBasis:
    """Basis spanned by psi_theta0 and its orthogonal velocity, optimal only at theta0."""
    psi = h.propagator(theta0) @ psi0.vec
    dpsi = -1j * (h.matrix @ psi)
    perp = dpsi - np.vdot(psi, dpsi) * psi
    norm = np.linalg.norm(perp)
    if norm < EPS_AMP:
        raise DegenerateConfiguration("probe is stationary; no velocity direction")
    n = perp / norm
    kets = [(psi + n) / np.sqrt(2), (psi - n) / np.sqrt(2)]
    return MeasurementBasis(linalg.complete_basis(kets, h.dim))


def rephased_basis(
    h: Hamiltonian, psi0: PureState, basis: MeasurementBasis, thetas=None
) -> MeasurementBasis:
    """Absorb the phase offsets zeta_k into the kets.

    zeta_k = arg(<k|psi_theta>) + <H> theta, read at the sampled theta where
    |<k|psi_theta>| is largest. Kets with no support at any sample keep their phase.
    """
    thetas = default_thetas(h) if thetas is None else np.asarray(thetas, dtype=float)
    h_mean = h.expectation(psi0)
    bdag = basis.matrix.conj().T
    amps = np.array([np.exp(1j * h_mean * t) * (bdag @ (h.propagator(t) @ psi0.vec))
                     for t in thetas])
    best = amps[np.argmax(np.abs(amps), axis=0), np.arange(h.dim)]
    phases = np.where(np.abs(best) >= EPS_AMP, best / np.where(np.abs(best) > 0, np.abs(best), 1), 1)
    return MeasurementBasis(basis.matrix * phases, basis.labels)


def split_real_imaginary(h_k: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Entrywise split H = H_R + H_I with H_R real symmetric and H_I imaginary antisymmetric."""
    return h_k.real.astype(complex), 1j * h_k.imag


def check_block_diagonal(
    h: Hamiltonian, psi0: PureState, basis: MeasurementBasis, thetas=None, rephase: bool = True
) -> CriterionVerdict:
    """Null-space and commutation conditions on the re-zeroed Hamiltonian in the basis.

    With ``rephase`` the kets first absorb the constant phase offsets, so the
    verdict depends only on the measurement projectors.
    """
    thetas = default_thetas(h) if thetas is None else np.asarray(thetas, dtype=float)
    if rephase:
        basis = rephased_basis(h, psi0, basis, thetas)
    b = basis.matrix
    h_tilde = rezero(h, psi0)
    h_k = b.conj().T @ h_tilde.matrix @ b
    h_r, h_i = split_real_imaginary(h_k)
    null = max(
        float(np.linalg.norm(h_r @ (b.conj().T @ (h.propagator(t) @ psi0.vec)))) for t in thetas
    )
    comm = float(np.linalg.norm(h_r @ h_i - h_i @ h_r))
    return _verdict(max(null, comm), BLOCK_TOL,
                    f"max ||H_R psi||={null:.3e}, ||[H_R, H_I]||={comm:.3e}")
