"""Dense complex linear algebra for small Hilbert spaces.

Vectors and matrices are plain ``numpy`` arrays of dtype ``complex128``;
this module adds the Hermitian eigendecomposition with deterministic
phase and degeneracy conventions that the rest of the package relies on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NoConvergence, NotHermitian

HERMITIAN_TOL = 1e-10
# relative gap below which eigenvalues are treated as one degenerate block
DEGENERACY_TOL = 1e-9
# residual norm a projected unit vector needs to seed a new block vector
_SEED_TOL = 1e-6


def as_vector(v) -> np.ndarray:
    arr = np.asarray(v, dtype=complex)
    if arr.ndim != 1 or arr.size == 0:
        raise DimensionMismatch(f"expected a non-empty 1-d vector, got shape {arr.shape}")
    return arr


def as_matrix(m) -> np.ndarray:
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {arr.shape}")
    return arr


def hermiticity_defect(m) -> float:
    m = as_matrix(m)
    return float(np.max(np.abs(m - m.conj().T)))


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(m, -1, -2))


def fix_phase(v: np.ndarray) -> np.ndarray:
    """Rotate ``v`` so its largest-magnitude component is real and positive.

    Ties (within 1e-10) go to the lowest index.
    """
    mags = np.abs(v)
    idx = int(np.flatnonzero(mags >= mags.max() - 1e-10)[0])
    return v * (np.abs(v[idx]) / v[idx])


def _canonical_block(vecs: np.ndarray) -> np.ndarray:
    # Deterministic orthonormal basis of span(vecs): project e_0, e_1, ...
    # in order and keep each residual that is still significant.
    n, m = vecs.shape
    proj = vecs @ vecs.conj().T
    chosen: list[np.ndarray] = []
    for i in range(n):
        if len(chosen) == m:
            break
        w = proj[:, i].copy()
        for _ in range(2):
            for c in chosen:
                w -= c * np.vdot(c, w)
        norm = np.linalg.norm(w)
        if norm > _SEED_TOL:
            chosen.append(w / norm)
    if len(chosen) != m:
        raise NoConvergence("could not build an orthonormal basis for a degenerate eigenspace")
    return np.column_stack(chosen)


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues ascending, eigenvectors as the columns of ``eigenvectors``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    @property
    def vectors(self) -> list[np.ndarray]:
        return [self.eigenvectors[:, i] for i in range(self.dim)]

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T

    def propagator(self, t: float) -> np.ndarray:
        """exp(-i M t) for the decomposed matrix M."""
        v = self.eigenvectors
        return (v * np.exp(-1j * self.eigenvalues * t)) @ v.conj().T

    def blocks(self) -> list[np.ndarray]:
        """Index arrays of (numerically) degenerate eigenvalue groups."""
        return _degenerate_blocks(self.eigenvalues)


def _degenerate_blocks(w: np.ndarray) -> list[np.ndarray]:
    scale = max(1.0, float(np.max(np.abs(w))))
    groups = [[0]]
    for i in range(1, len(w)):
        if w[i] - w[groups[-1][-1]] <= DEGENERACY_TOL * scale:
            groups[-1].append(i)
        else:
            groups.append([i])
    return [np.array(g) for g in groups]


def hermitian_eig(m) -> SpectralDecomposition:
    m = as_matrix(m)
    defect = hermiticity_defect(m)
    if defect > HERMITIAN_TOL:
        raise NotHermitian(f"matrix is not Hermitian (max |m - m^dagger| = {defect:.3e})")
    sym = 0.5 * (m + m.conj().T)
    try:
        w, v = np.linalg.eigh(sym)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    vecs = v.astype(complex)
    for block in _degenerate_blocks(w):
        if len(block) > 1:
            vecs[:, block] = _canonical_block(vecs[:, block])
            # a degenerate block has a single eigenvalue; use the block mean
            w[block] = np.mean(w[block])
        for i in block:
            vecs[:, i] = fix_phase(vecs[:, i])
    return SpectralDecomposition(eigenvalues=w, eigenvectors=vecs)


def unitary_exp(m, t: float) -> np.ndarray:
    """exp(-i m t) for Hermitian ``m``, via its eigendecomposition."""
    if isinstance(m, SpectralDecomposition):
        return m.propagator(t)
    return hermitian_eig(m).propagator(t)


def gram_check(vectors) -> float:
    """Max entrywise deviation of the Gram matrix of ``vectors`` from identity."""
    vecs = [as_vector(v) for v in vectors]
    if not vecs:
        raise DimensionMismatch("no vectors given")
    dims = {v.shape[0] for v in vecs}
    if len(dims) != 1:
        raise DimensionMismatch(f"vectors have differing dimensions {sorted(dims)}")
    a = np.column_stack(vecs)
    gram = a.conj().T @ a
    return float(np.max(np.abs(gram - np.eye(len(vecs)))))


def complete_basis(vectors, dim: int) -> np.ndarray:
    """Extend orthonormal ``vectors`` to a full orthonormal basis of C^dim.

    Returns a ``dim x dim`` matrix whose leading columns are ``vectors``;
    the additional columns are found deterministically from the standard basis.
    """
    cols = [as_vector(v) for v in vectors]
    for v in cols:
        if v.shape[0] != dim:
            raise DimensionMismatch(f"vector of length {v.shape[0]} in C^{dim}")
    for i in range(dim):
        if len(cols) == dim:
            break
        w = np.zeros(dim, dtype=complex)
        w[i] = 1.0
        for _ in range(2):
            for c in cols:
                w -= c * np.vdot(c, w)
        norm = np.linalg.norm(w)
        if norm > _SEED_TOL:
            cols.append(w / norm)
    return np.column_stack(cols)


def random_hermitian(dim: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    x = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return scale * 0.5 * (x + x.conj().T)


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary from the QR decomposition of a Ginibre matrix."""
    x = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(x)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    x = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return x / np.linalg.norm(x)
