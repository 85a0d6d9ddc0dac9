"""Monte-Carlo check of the Cramer-Rao bound by maximum-likelihood estimation.

Randomness comes from the Philox-4x64-10 counter-based generator with its
counter starting at zero. Trial ``i`` of an experiment with seed ``s`` uses
the 128-bit key ``(s << 64) ^ i``: the seed fills the high word and the trial
index the low word, so trials are independent of execution order and thread
count and distinct seeds never share a trial stream.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .errors import DegenerateLikelihood, DimensionMismatch, ZeroInformation
from .fisher import report
from .model import Hamiltonian, MeasurementBasis, PureState

GRID_POINTS = 1000
_INVPHI = (np.sqrt(5) - 1) / 2


def rng_for(seed: int, trial: int = 0) -> np.random.Generator:
    seed, trial = int(seed), int(trial)
    if not (0 <= seed < 2**64 and 0 <= trial < 2**64):
        raise ValueError("seed and trial index must fit in an unsigned 64-bit word")
    return np.random.Generator(np.random.Philox(key=(seed << 64) ^ trial))


@dataclass(frozen=True)
class EstimationRun:
    theta_true: float
    samples_per_trial: int
    trials: int
    estimates: np.ndarray
    empirical_variance: float
    crb: float
    seed: int
    J: float
    interval: tuple[float, float]

    @property
    def ratio(self) -> float:
        """empirical_variance / crb, i.e. N J Var(theta_hat)."""
        return self.empirical_variance / self.crb

    @property
    def bias(self) -> float:
        return float(np.mean(self.estimates) - self.theta_true)

    @property
    def standard_error(self) -> float:
        return float(np.sqrt(self.empirical_variance / self.trials))

    @property
    def mse(self) -> float:
        return float(np.mean((self.estimates - self.theta_true) ** 2))

    def edge_margin(self) -> float:
        """Distance from theta_true to the nearer interval edge, in CRB standard deviations."""
        lo, hi = self.interval
        return min(self.theta_true - lo, hi - self.theta_true) / np.sqrt(self.crb)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["estimates"] = list(map(float, self.estimates))
        d["interval"] = list(self.interval)
        return d


class _Likelihood:
    """Outcome probabilities p_k(theta) evaluated for many theta at once."""

    def __init__(self, h: Hamiltonian, psi0: PureState, basis: MeasurementBasis):
        if not (h.dim == psi0.dim == basis.dim):
            raise DimensionMismatch("dimension mismatch among inputs")
        v = h.spectrum.eigenvectors
        self.lam = h.eigenvalues
        self.coeffs = v.conj().T @ psi0.vec
        self.overlaps = basis.matrix.conj().T @ v

    def probabilities(self, thetas) -> np.ndarray:
        thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
        amps = (np.exp(-1j * np.outer(thetas, self.lam)) * self.coeffs) @ self.overlaps.T
        return np.abs(amps) ** 2

    def loglik(self, counts: np.ndarray, thetas) -> np.ndarray:
        p = self.probabilities(thetas)
        seen = counts > 0
        with np.errstate(divide="ignore"):
            logs = np.log(p[:, seen])
        return logs @ counts[seen]


def sample_outcomes(h, psi0, basis, theta: float, n: int, seed: int, trial: int = 0) -> np.ndarray:
    if n < 1:
        raise ValueError("need at least one sample")
    p = _Likelihood(h, psi0, basis).probabilities(theta)[0]
    p = np.clip(p, 0.0, None)
    p = p / p.sum()
    return rng_for(seed, trial).multinomial(n, p)


def identifiable_window(h: Hamiltonian, theta_true: float) -> tuple[float, float]:
    """Window of width a quarter of the shortest period 2 pi / ||H|| around theta_true."""
    spread = h.seminorm()
    if spread <= 0:
        raise ZeroInformation("Hamiltonian has a degenerate spectrum")
    half = np.pi / (4 * spread)
    return (theta_true - half, theta_true + half)


def _golden(f, lo: float, hi: float, tol: float = 1e-13) -> float:
    """Maximise a unimodal ``f`` on [lo, hi] by golden-section search."""
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol * max(1.0, abs(a) + abs(b)):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def mle(counts, h, psi0, basis, search_interval, _lik: _Likelihood | None = None) -> float:
    counts = np.asarray(counts)
    if counts.shape != (basis.dim,):
        raise DimensionMismatch(f"{counts.shape[0]} counts for {basis.dim} outcomes")
    lik = _lik or _Likelihood(h, psi0, basis)
    lo, hi = map(float, search_interval)
    grid = np.linspace(lo, hi, GRID_POINTS)
    ll = lik.loglik(counts, grid)
    finite = ll[np.isfinite(ll)]
    if finite.size == 0 or finite.max() - finite.min() <= 1e-12 * max(1.0, abs(finite.max())):
        raise DegenerateLikelihood("likelihood is flat over the search interval")
    i = int(np.argmax(ll))
    a, b = grid[max(i - 1, 0)], grid[min(i + 1, GRID_POINTS - 1)]
    return _golden(lambda t: float(lik.loglik(counts, [t])[0]), a, b)


def _threads() -> int:
    try:
        n = int(os.environ.get("QMETRICS_THREADS", "0"))
    except ValueError:
        n = 0
    return n if n > 0 else (os.cpu_count() or 1)


def crb_experiment(h, psi0, basis, theta_true: float, N: int, T: int, seed: int,
                   interval=None, threads: int | None = None) -> EstimationRun:
    J = report(h, psi0, basis, theta_true).J
    if J <= 1e-9:
        raise ZeroInformation(f"Fisher information {J:.3e} at theta={theta_true}")
    interval = identifiable_window(h, theta_true) if interval is None else tuple(interval)
    lik = _Likelihood(h, psi0, basis)
    p_true = lik.probabilities(theta_true)[0]
    p_true = np.clip(p_true, 0.0, None)
    p_true = p_true / p_true.sum()

    def trial(i: int) -> float:
        counts = rng_for(seed, i).multinomial(N, p_true)
        return mle(counts, h, psi0, basis, interval, _lik=lik)

    workers = threads or _threads()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            estimates = np.array(list(pool.map(trial, range(T))))
    else:
        estimates = np.array([trial(i) for i in range(T)])
    return EstimationRun(
        theta_true=float(theta_true), samples_per_trial=int(N), trials=int(T),
        estimates=estimates, empirical_variance=float(np.var(estimates, ddof=1)),
        crb=1.0 / (N * J), seed=int(seed), J=float(J),
        interval=(float(interval[0]), float(interval[1])),
    )
