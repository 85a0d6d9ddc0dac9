"""Information complement under measurement drift and its curvature.

The measurement kets drift as |k> -> exp(-i h omega)|k>, so the outcome
amplitudes become a_k(theta, omega) = <k| exp(i h omega) exp(-i H theta) |psi_0>.
Mixed partial derivatives of a_k are exact:

    d^m/dtheta^m d^n/domega^n a_k = <k_omega| (i h)^n (-i H)^m |psi_theta>.

K(theta, omega) = sum_k q_k^2 / p_k with p_k = |a_k|^2 and
q_k = Im(conj(a_k) da_k/dtheta) = p_k phi_dot_k, so every derivative of K
follows from the product rule on these bilinears.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import comb

import numpy as np

from . import linalg
from .errors import DimensionMismatch, NotHermitian, StepUnderflow
from .fisher import complement
from .model import EPS_AMP, MeasurementBasis, amplitude_track, polar_velocity
from .optimal import CriterionVerdict, check_optimality, check_parameter_independence

FD_STEP = 1e-4
GM_TOL = 1e-6
ORTHOGONALITY_TOL = 1e-9


@dataclass(frozen=True)
class DriftModel:
    generator: np.ndarray
    description: str = ""

    def __post_init__(self):
        g = linalg.as_matrix(self.generator)
        defect = linalg.hermiticity_defect(g)
        if defect > linalg.HERMITIAN_TOL:
            raise NotHermitian(f"drift generator is not Hermitian ({defect:.3e})")
        object.__setattr__(self, "generator", 0.5 * (g + g.conj().T))
        object.__setattr__(self, "_spectrum", linalg.hermitian_eig(g))

    @property
    def dim(self) -> int:
        return self.generator.shape[0]

    def propagator(self, omega: float) -> np.ndarray:
        return self._spectrum.propagator(omega)


@dataclass(frozen=True)
class HessianReport:
    at_theta: float
    at_omega: float
    grad_theta: float
    grad_omega: float
    d2_theta: float
    d2_omega: float
    d2_mixed: float
    analytic_mixed: float
    analytic_omega: float
    exact_d2_theta: float
    exact_d2_omega: float
    exact_mixed: float
    spectator_omega: float
    certified: bool
    h_mean: float

    def as_dict(self) -> dict:
        return asdict(self)

    @property
    def gm_conditions_hold(self) -> bool:
        return abs(self.grad_theta) <= GM_TOL and abs(self.d2_theta) <= GM_TOL


def _check(*objs):
    dims = {o.dim for o in objs}
    if len(dims) != 1:
        raise DimensionMismatch(f"dimension mismatch among inputs: {sorted(dims)}")


def drifted_basis(basis: MeasurementBasis, drift: DriftModel, omega: float) -> MeasurementBasis:
    _check(basis, drift)
    return basis.transformed(drift.propagator(omega))


def complement_surface(h, psi0, basis, drift, theta, omega) -> float:
    return complement(amplitude_track(h, psi0, drifted_basis(basis, drift, omega), theta))


def _amp_derivatives(h, psi0, basis, drift, theta, omega) -> dict:
    """Arrays of d^m_theta d^n_omega a_k keyed by (m, n), for m <= 3, n <= 2."""
    b = drift.propagator(omega) @ basis.matrix
    bdag = b.conj().T
    psi = h.propagator(theta) @ psi0.vec
    gen_t = -1j * h.matrix
    gen_w = 1j * drift.generator
    out = {}
    theta_vecs = [psi]
    for _ in range(3):
        theta_vecs.append(gen_t @ theta_vecs[-1])
    for m, v in enumerate(theta_vecs):
        w = v
        for n in range(3):
            if m + n <= 3:
                out[(m, n)] = bdag @ w
            w = gen_w @ w
    return out


def _leibniz(c: dict, a: dict, order, shift=(0, 0)):
    """Derivative ``order`` of conj(a) * (a differentiated by ``shift``), by Leibniz."""
    mt, mw = order
    total = 0
    for i in range(mt + 1):
        for j in range(mw + 1):
            total = total + comb(mt, i) * comb(mw, j) * c[(i, j)] * a[
                (mt - i + shift[0], mw - j + shift[1])
            ]
    return total


_ORDERS = [(0, 0), (1, 0), (0, 1), (2, 0), (0, 2), (1, 1)]


def _bilinears(d: dict):
    """p = |a|^2 and q = Im(conj(a) a_theta) with derivatives up to second order."""
    c = {k: np.conj(v) for k, v in d.items()}
    p = {k: _leibniz(c, d, k).real for k in _ORDERS}
    q = {k: _leibniz(c, d, k, shift=(1, 0)).imag for k in _ORDERS}
    return p, q


def _ratio_hessian(p, q, x, y):
    """d_x d_y of q^2 / p, elementwise."""
    P, Q = p[(0, 0)], q[(0, 0)]
    px, py, pxy = p[x], p[y], p[_add(x, y)]
    qx, qy, qxy = q[x], q[y], q[_add(x, y)]
    return (
        2 * (qx * qy + Q * qxy) / P
        - 2 * Q * (qx * py + qy * px) / P**2
        - Q**2 * pxy / P**2
        + 2 * Q**2 * px * py / P**3
    )


def _ratio_grad(p, q, x):
    P, Q = p[(0, 0)], q[(0, 0)]
    return 2 * Q * q[x] / P - Q**2 * p[x] / P**2


def _add(x, y):
    return (x[0] + y[0], x[1] + y[1])


def _dead_line_curvature(d: dict, dead: np.ndarray) -> float:
    """d^2 K / d omega^2 from outcomes whose amplitude vanishes along omega = const.

    If a_k and its theta-derivative both vanish, a_k = omega c + O(omega^2) and
    the outcome adds omega^2 Im(conj(c) c_theta)^2 / |c|^2 to K. Such outcomes
    carry no probability at the point, so the curvature formulas built from
    probability-weighted averages cannot see this term.
    """
    c, ct = d[(0, 1)], d[(1, 1)]
    line = dead & (np.abs(d[(1, 0)]) < EPS_AMP) & (np.abs(c) >= EPS_AMP)
    safe = np.where(line, np.abs(c) ** 2, 1.0)
    return float(np.sum(np.where(line, 2 * np.imag(np.conj(c) * ct) ** 2 / safe, 0.0)))


def analytic_terms(h, psi0, basis, drift, theta, omega) -> dict:
    """Exact derivatives of K and the ingredients of the optimum curvature formulas.

    Outcomes with |a_k| < EPS_AMP are left out of every probability-weighted
    sum. Their exact contribution to d^2 K / d omega^2 is added separately when
    the amplitude vanishes along the whole line through the point; an isolated
    zero makes K non-smooth there and contributes nothing.
    """
    d = _amp_derivatives(h, psi0, basis, drift, theta, omega)
    p, q = _bilinears(d)
    live = np.abs(d[(0, 0)]) >= EPS_AMP
    P = np.where(live, p[(0, 0)], 1.0)
    p = {k: np.where(live, v, 0.0) for k, v in p.items()}
    q = {k: np.where(live, v, 0.0) for k, v in q.items()}
    p[(0, 0)] = P
    T, W = (1, 0), (0, 1)

    def total(arr):
        return float(np.sum(np.where(live, arr, 0.0)))

    # phase-velocity derivatives: phi_dot = q/p
    phidot_w = q[W] / P - q[(0, 0)] * p[W] / P**2
    phidot_ww = (
        q[(0, 2)] / P - 2 * q[W] * p[W] / P**2 - q[(0, 0)] * p[(0, 2)] / P**2
        + 2 * q[(0, 0)] * p[W] ** 2 / P**3
    )
    h_mean = h.expectation(psi0)
    return {
        "h_mean": h_mean,
        "grad_theta": total(_ratio_grad(p, q, T)),
        "grad_omega": total(_ratio_grad(p, q, W)),
        "d2_theta": total(_ratio_hessian(p, q, T, T)),
        "d2_omega": total(_ratio_hessian(p, q, W, W)) + _dead_line_curvature(d, ~live),
        "spectator_omega": _dead_line_curvature(d, ~live),
        "d2_mixed": total(_ratio_hessian(p, q, T, W)),
        "sum_pdot_phidot_w": total(p[T] * phidot_w),
        "mean_phidot_w_sq": total(P * phidot_w**2),
        "mean_phidot_ww": total(P * phidot_ww),
        "sum_pw_phidot_w": total(p[W] * phidot_w),
    }


def formula_mixed(terms: dict) -> float:
    """-2 <H> sum_k p_dot_k phi_dot'_k."""
    return -2.0 * terms["h_mean"] * terms["sum_pdot_phidot_w"]


def formula_omega(terms: dict) -> float:
    """2 <(phi_dot')^2>_c - 2 <H> [<phi_dot''>_c + 2 sum_k p'_k phi_dot'_k]."""
    return 2.0 * terms["mean_phidot_w_sq"] - 2.0 * terms["h_mean"] * (
        terms["mean_phidot_ww"] + 2.0 * terms["sum_pw_phidot_w"]
    )


_C1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_C2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0
_OFFSETS = np.arange(-2, 3)


def _fd_all(f, x0, y0, step):
    """Five-point gradient and Hessian of f at (x0, y0) with step ``step``."""
    fx = np.array([f(x0 + k * step, y0) for k in _OFFSETS])
    fy = np.array([f(x0, y0 + k * step) for k in _OFFSETS])
    grid = np.array([[f(x0 + i * step, y0 + j * step) for j in _OFFSETS] for i in _OFFSETS])
    return (
        _C1 @ fx / step,
        _C1 @ fy / step,
        _C2 @ fx / step**2,
        _C2 @ fy / step**2,
        _C1 @ grid @ _C1 / step**2,
    )


def finite_difference(f, x0, y0, step=FD_STEP):
    """Gradient and Hessian (gx, gy, dxx, dyy, dxy), five-point stencils, one Richardson level."""
    if step < 1e-9:
        raise StepUnderflow(f"finite-difference step {step!r} is below 1e-9")
    fine = np.array(_fd_all(f, x0, y0, step))
    coarse = np.array(_fd_all(f, x0, y0, 2 * step))
    return tuple(float(v) for v in (16 * fine - coarse) / 15)


def hessian_at(h, psi0, basis, drift, theta, omega, step: float = FD_STEP,
               thetas=None) -> HessianReport:
    _check(h, psi0, basis, drift)
    if step < 1e-9:
        raise StepUnderflow(f"finite-difference step {step!r} is below 1e-9")
    # scalar K evaluation reusing cached spectra
    bmat = basis.matrix
    hm = h.matrix

    def K(t, w):
        b = drift.propagator(w) @ bmat
        psi = h.propagator(t) @ psi0.vec
        bdag = b.conj().T
        a = bdag @ psi
        adot = bdag @ (-1j * (hm @ psi))
        return float(np.sum(polar_velocity(a, adot)[3] ** 2))

    gt, gw, dtt, dww, dtw = finite_difference(K, theta, omega, step)
    terms = analytic_terms(h, psi0, basis, drift, theta, omega)
    moved = drifted_basis(basis, drift, omega)
    certified = bool(
        check_parameter_independence(h, psi0, moved, thetas).satisfied
        and check_optimality(amplitude_track(h, psi0, moved, theta), h.expectation(psi0)).satisfied
    )
    return HessianReport(
        at_theta=float(theta), at_omega=float(omega),
        grad_theta=gt, grad_omega=gw, d2_theta=dtt, d2_omega=dww, d2_mixed=dtw,
        analytic_mixed=formula_mixed(terms), analytic_omega=formula_omega(terms),
        exact_d2_theta=terms["d2_theta"], exact_d2_omega=terms["d2_omega"],
        exact_mixed=terms["d2_mixed"], spectator_omega=terms["spectator_omega"],
        certified=certified, h_mean=terms["h_mean"],
    )


def orthogonality_condition(h_tilde_im, m_op, drift: DriftModel) -> CriterionVerdict:
    """|Tr(H_I [M, h])| for the imaginary part H_I of the re-zeroed Hamiltonian."""
    hi = linalg.as_matrix(h_tilde_im)
    m = linalg.as_matrix(m_op)
    g = drift.generator
    if not (hi.shape == m.shape == g.shape):
        raise DimensionMismatch("operator dimensions differ")
    residual = abs(np.trace(hi @ (m @ g - g @ m)))
    return CriterionVerdict(bool(residual <= ORTHOGONALITY_TOL), float(residual),
                            "|Tr(H_I [M, h])|", ORTHOGONALITY_TOL)
