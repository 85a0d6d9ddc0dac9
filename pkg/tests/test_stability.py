import numpy as np
import pytest

from qmetrics import linalg
from qmetrics.errors import DimensionMismatch, NotHermitian, StepUnderflow
from qmetrics.fisher import complement, report
from qmetrics.model import Hamiltonian, MeasurementBasis, PureState, amplitude_track, rezero
from qmetrics.optimal import build_optimal_basis, max_variance_probe, split_real_imaginary
from qmetrics.spin import make_spin, noon_state
from qmetrics.stability import (
    DriftModel,
    analytic_terms,
    complement_surface,
    drifted_basis,
    finite_difference,
    hessian_at,
    orthogonality_condition,
    formula_mixed,
    formula_omega,
)

from corpus import PLUS, SX, SY, SZ, X_BASIS, Z_BASIS

H_Z = Hamiltonian(SZ)
PSI = max_variance_probe(H_Z)
OPT = build_optimal_basis(H_Z)


def certified_optimum(rng, dim, shift=0.0):
    h = Hamiltonian(linalg.random_hermitian(dim, rng))
    psi = max_variance_probe(h, float(rng.uniform(0, 2 * np.pi)))
    h = rezero(h, psi).shifted(shift)
    drift = DriftModel(linalg.random_hermitian(dim, rng))
    return h, psi, build_optimal_basis(h), drift, float(rng.uniform(0, 3))


def test_drift_model_validates():
    with pytest.raises(NotHermitian):
        DriftModel(np.array([[0, 1], [0, 0]]))


def test_drifted_basis_zero_angle():
    np.testing.assert_allclose(drifted_basis(X_BASIS, DriftModel(SZ / 2), 0.0).matrix,
                               X_BASIS.matrix, atol=1e-15)


def test_half_turn_about_z_swaps_x_basis():
    moved = drifted_basis(X_BASIS, DriftModel(SZ / 2), np.pi)
    for k, other in zip(moved.kets, X_BASIS.kets[::-1]):
        assert abs(abs(np.vdot(other, k)) - 1) < 1e-12


def test_commuting_drift_keeps_probabilities():
    rng = np.random.default_rng(0)
    psi = PureState(linalg.random_state(3, rng))
    h = Hamiltonian(linalg.random_hermitian(3, rng))
    drift = DriftModel(np.diag([0.3, -1.0, 2.0]))
    base = amplitude_track(h, psi, MeasurementBasis(np.eye(3)), 0.5).p
    for w in (0.4, 2.0):
        moved = drifted_basis(MeasurementBasis(np.eye(3)), drift, w)
        np.testing.assert_allclose(amplitude_track(h, psi, moved, 0.5).p, base, atol=1e-14)


def test_drifted_basis_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        drifted_basis(X_BASIS, DriftModel(np.eye(3)), 0.1)


def test_surface_at_zero_drift_is_complement():
    rng = np.random.default_rng(2)
    h = Hamiltonian(linalg.random_hermitian(4, rng))
    psi = PureState(linalg.random_state(4, rng))
    basis = MeasurementBasis(linalg.random_unitary(4, rng))
    drift = DriftModel(linalg.random_hermitian(4, rng))
    assert complement_surface(h, psi, basis, drift, 0.7, 0.0) == pytest.approx(
        complement(amplitude_track(h, psi, basis, 0.7)), abs=1e-12)


@pytest.mark.parametrize("theta", [0.0, 0.9, 2.5])
def test_surface_minimum_at_optimum(theta):
    h = H_Z.shifted(0.4)
    assert complement_surface(h, PSI, OPT, DriftModel(SY / 2), theta, 0.0) == \
        pytest.approx(h.expectation(PSI) ** 2, abs=1e-12)


def test_drift_to_eigenbasis_kills_information():
    # sigma_y / 2 turns the x basis into the z basis at omega = pi / 2
    drift = DriftModel(SY / 2)
    moved = drifted_basis(OPT, drift, np.pi / 2)
    assert complement_surface(H_Z, PSI, OPT, drift, 0.3, np.pi / 2) == pytest.approx(1.0)
    assert report(H_Z, PSI, moved, 0.3).J == pytest.approx(0, abs=1e-12)


def test_drift_commuting_with_h_stays_optimal():
    # sigma_z / 2 only rotates the x basis within the equator
    moved = drifted_basis(OPT, DriftModel(SZ / 2), np.pi / 2)
    assert report(H_Z, PSI, moved, 0.3).J == pytest.approx(4)


def test_drifted_identity_eq8():
    rng = np.random.default_rng(3)
    h, psi, basis, drift, theta = certified_optimum(rng, 4)
    for w in (0.1, 0.7):
        moved = drifted_basis(basis, drift, w)
        k = complement_surface(h, psi, basis, drift, theta, w)
        assert report(h, psi, moved, theta).J == pytest.approx(4 * (h.second_moment(psi) - k),
                                                              abs=1e-9)


def test_finite_difference_on_polynomial():
    f = lambda x, y: x**3 + 2 * x * y**2 - y  # noqa: E731
    gx, gy, dxx, dyy, dxy = finite_difference(f, 0.5, -0.3)
    assert (gx, gy) == pytest.approx((3 * 0.25 + 2 * 0.09, 2 * 2 * 0.5 * -0.3 - 1), abs=1e-9)
    assert (dxx, dyy, dxy) == pytest.approx((3.0, 2.0, -1.2), abs=1e-6)


def test_step_underflow():
    with pytest.raises(StepUnderflow):
        hessian_at(H_Z, PSI, OPT, DriftModel(SZ / 2), 0.1, 0.0, step=1e-10)


def test_rezeroed_qubit_example():
    rep = hessian_at(H_Z, PSI, OPT, DriftModel(SY / 2), 0.4, 0.0)
    assert rep.certified and rep.gm_conditions_hold
    assert rep.analytic_mixed == pytest.approx(0, abs=1e-12)
    assert rep.d2_omega > 0
    assert rep.analytic_omega == pytest.approx(rep.d2_omega, abs=1e-4)
    terms = analytic_terms(H_Z, PSI, OPT, DriftModel(SY / 2), 0.4, 0.0)
    assert rep.analytic_omega == pytest.approx(2 * terms["mean_phidot_w_sq"], abs=1e-12)


def test_zero_drift_generator():
    rep = hessian_at(H_Z, PSI, OPT, DriftModel(np.zeros((2, 2))), 0.4, 0.0)
    for v in (rep.grad_omega, rep.d2_omega, rep.d2_mixed, rep.analytic_mixed, rep.analytic_omega):
        assert v == 0


def test_uncertified_point():
    rep = hessian_at(H_Z, PureState(PLUS), Z_BASIS, DriftModel(SX / 2), 0.4, 0.0)
    assert not rep.certified


@pytest.mark.parametrize("seed", range(12))
def test_exact_hessian_matches_finite_differences(seed):
    rng = np.random.default_rng(seed)
    h, psi, basis, drift, theta = certified_optimum(rng, int(rng.integers(2, 6)),
                                                    shift=float(rng.uniform(-1, 1)))
    omega = float(rng.uniform(0.05, 0.3))
    rep = hessian_at(h, psi, basis, drift, theta, omega)
    assert rep.exact_d2_theta == pytest.approx(rep.d2_theta, abs=1e-4)
    assert rep.exact_d2_omega == pytest.approx(rep.d2_omega, abs=1e-4)
    assert rep.exact_mixed == pytest.approx(rep.d2_mixed, abs=1e-4)


@pytest.mark.parametrize("seed", range(12))
def test_gm_gradient_and_theta_curvature_vanish(seed):
    rng = np.random.default_rng(100 + seed)
    h, psi, basis, drift, theta = certified_optimum(rng, int(rng.integers(2, 6)))
    rep = hessian_at(h, psi, basis, drift, theta, 0.0)
    assert rep.certified and rep.gm_conditions_hold
    assert abs(rep.d2_mixed) < 1e-6 and abs(rep.analytic_mixed) < 1e-9


@pytest.mark.parametrize("seed", range(8))
def test_spectator_term_closes_omega_formula(seed):
    rng = np.random.default_rng(200 + seed)
    h, psi, basis, drift, theta = certified_optimum(rng, int(rng.integers(3, 7)))
    rep = hessian_at(h, psi, basis, drift, theta, 0.0)
    assert rep.spectator_omega > 0
    assert rep.analytic_omega + rep.spectator_omega == pytest.approx(rep.d2_omega, abs=1e-4)


@pytest.mark.parametrize("seed", range(8))
def test_mixed_curvature_vanishes_on_shifted_optimum(seed):
    rng = np.random.default_rng(300 + seed)
    h, psi, basis, drift, theta = certified_optimum(rng, int(rng.integers(2, 6)), shift=0.7)
    rep = hessian_at(h, psi, basis, drift, theta, 0.0)
    assert rep.certified and rep.h_mean == pytest.approx(0.7)
    assert abs(rep.d2_mixed) < 1e-4 and abs(rep.exact_mixed) < 1e-8


def test_formula_helpers():
    terms = {"h_mean": 2.0, "sum_pdot_phidot_w": 0.5, "mean_phidot_w_sq": 3.0,
             "mean_phidot_ww": 1.0, "sum_pw_phidot_w": 0.25}
    assert formula_mixed(terms) == -2.0
    assert formula_omega(terms) == 6.0 - 4.0 * 1.5


def test_spin_equatorial_and_longitude_curvature():
    for j in (1, 1.5, 2):
        s = make_spin(j)
        h, psi = s.hamiltonian(), noon_state(s)
        basis = MeasurementBasis(linalg.hermitian_eig(s.jx).eigenvectors)
        along_equator = [complement_surface(h, psi, basis, DriftModel(-s.jy), 0.3, w)
                         for w in np.linspace(0, np.pi, 9)]
        assert np.ptp(along_equator) < 1e-8
        along_longitude = [complement_surface(h, psi, basis, DriftModel(-s.jz), 0.3, w)
                           for w in np.linspace(0, np.pi / 2, 9)]
        assert np.ptp(along_longitude) > 1e-3


def test_orthogonality_examples():
    m = X_BASIS.observable()
    assert orthogonality_condition(SY, np.eye(2), DriftModel(SZ / 2))
    assert orthogonality_condition(np.zeros((2, 2)), m, DriftModel(SZ / 2))
    # m_k = k gives M = (1 - sigma_x) / 2, so [M, sigma_z / 2] = i sigma_y / 2 and the trace is -1
    v = orthogonality_condition(1j * SY, m, DriftModel(SZ / 2))
    hand = abs(np.trace(1j * SY @ (-(SX @ SZ - SZ @ SX) / 4)))
    assert v.residual == pytest.approx(hand) and v.residual == pytest.approx(1.0)
    assert not v


def test_orthogonality_on_rephased_optimum():
    from qmetrics.optimal import rephased_basis

    basis = rephased_basis(H_Z, max_variance_probe(H_Z, np.pi / 2), OPT)
    _, h_i = split_real_imaginary(basis.matrix.conj().T @ SZ @ basis.matrix)
    m = np.diag([0.0, 1.0])
    assert orthogonality_condition(h_i, m, DriftModel(np.diag([0.5, -0.5])))
    assert not orthogonality_condition(h_i, m, DriftModel(SX / 2))


def test_orthogonality_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        orthogonality_condition(np.zeros((2, 2)), np.eye(3), DriftModel(SZ))
