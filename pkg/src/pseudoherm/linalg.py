"""Sampling and spectra of pseudo-hermitian random matrices.

The model is phi = A B with A drawn from the GUE (density proportional to
exp(-(n m^2 / 2) tr A^2), so entry variance 1/(n m^2)) and the metric
B = diag(1, ..., 1, t, ..., t) holding k ones followed by n - k copies of t.
phi satisfies the intertwining relation phi^H B = B phi, which closes its
spectrum under complex conjugation: eigenvalues are either real or come in
conjugate pairs, and for indefinite B at least |n - 2k| of them are real
(Carlson bound).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray


class EigensolverError(RuntimeError):
    """Raised when the dense eigensolver cannot produce a spectrum."""


class ClassificationError(RuntimeError):
    """Raised when a spectrum cannot be split into reals and conjugate pairs."""


@dataclass(frozen=True)
class MetricSpec:
    """Diagonal metric B = diag(1 x k, t x (n - k)).

    Parameters
    ----------
    n : int
        Matrix dimension, n >= 1.
    k : int
        Number of leading +1 entries, 0 <= k <= n.
    t : float
        Value of the trailing n - k entries, t != 0.
    """

    n: int
    k: int
    t: float

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.k <= self.n:
            raise ValueError(f"k must lie in [0, {self.n}], got {self.k}")
        if self.t == 0:
            raise ValueError("t must be nonzero (singular metric not supported)")

    @property
    def lam(self) -> float:
        """Fraction k/n of +1 entries; always derived, never stored."""
        return self.k / self.n

    @property
    def indefinite(self) -> bool:
        """True when B carries both signs (t < 0 and 0 < k < n)."""
        return self.t < 0 and 0 < self.k < self.n


def sample_gue(n: int, m: float, rng: np.random.Generator) -> NDArray[np.complex128]:
    """Draw an n x n GUE matrix with density exp(-(n m^2 / 2) tr A^2).

    Equivalently: real diagonal entries of variance 1/(n m^2) and complex
    off-diagonal entries with E|a_ij|^2 = 1/(n m^2), mirrored by conjugation.
    The eigenvalue distribution converges to a semicircle of radius 2/m.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if m <= 0:
        raise ValueError(f"m must be positive, got {m}")
    # component std 1/(m sqrt(2 n)) gives E|x_ij|^2 = 1/(n m^2); the
    # symmetrization below preserves that variance for every entry
    sig = 1.0 / (m * np.sqrt(2.0 * n))
    x = rng.normal(scale=sig, size=(n, n)) + 1j * rng.normal(scale=sig, size=(n, n))
    return (x + x.conj().T) / np.sqrt(2.0)


def metric_diagonal(spec: MetricSpec) -> NDArray[np.float64]:
    """Diagonal of B as a length-n real vector."""
    d = np.ones(spec.n)
    d[spec.k:] = spec.t
    return d


def build_metric(spec: MetricSpec) -> NDArray[np.complex128]:
    """Dense diagonal metric matrix B."""
    return np.diag(metric_diagonal(spec)).astype(np.complex128)


def build_phi(a: NDArray[np.complex128], spec: MetricSpec) -> NDArray[np.complex128]:
    """Form phi = A B by scaling the columns of hermitian A.

    Raises ValueError on a shape mismatch or when A deviates from hermitian
    symmetry by more than 1e-12 * max|A|.
    """
    a = np.asarray(a, dtype=np.complex128)
    if a.shape != (spec.n, spec.n):
        raise ValueError(f"matrix shape {a.shape} does not match n={spec.n}")
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    if not np.allclose(a, a.conj().T, rtol=0.0, atol=1e-12 * max(scale, 1.0)):
        raise ValueError("A must be hermitian")
    return a * metric_diagonal(spec)


def eigenvalues(mat: NDArray[np.complex128]) -> NDArray[np.complex128]:
    """Full complex spectrum of a dense square matrix.

    Wraps the LAPACK general complex eigensolver behind a validated
    contract: NaN/Inf inputs are rejected and convergence failures surface
    as EigensolverError carrying the dimension and matrix norm.  Backward
    stable: each value is exact for a matrix within O(n eps ||mat||) of the
    input.
    """
    mat = np.asarray(mat, dtype=np.complex128)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {mat.shape}")
    if not np.all(np.isfinite(mat)):
        raise EigensolverError("matrix contains NaN or Inf entries")
    try:
        return np.linalg.eigvals(mat)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(
            f"eigensolver did not converge on a {mat.shape[0]} x {mat.shape[1]} "
            f"matrix with frobenius norm {float(np.linalg.norm(mat)):.6g}: {exc}"
        ) from exc


@dataclass(frozen=True)
class Spectrum:
    """One sample's eigenvalues split into reals and conjugate pairs.

    values holds all n eigenvalues.  real_mask flags the ones classified
    real; pairs is a (p, 2) index array of (upper, lower) half-plane
    partners.  Every index appears in exactly one class.  tol is the
    relative tolerance the split was made with.
    """

    values: NDArray[np.complex128]
    real_mask: NDArray[np.bool_]
    pairs: NDArray[np.intp]
    tol: float

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def n_real(self) -> int:
        return int(np.count_nonzero(self.real_mask))

    @property
    def fraction_real(self) -> float:
        return self.n_real / self.n

    @property
    def real_values(self) -> NDArray[np.float64]:
        return self.values[self.real_mask].real

    @property
    def complex_values(self) -> NDArray[np.complex128]:
        return self.values[~self.real_mask]


def classify_spectrum(values, tol: float = 1e-8) -> Spectrum:
    """Split eigenvalues into real ones and conjugate pairs.

    A value is real when |Im| <= tol * scale with scale = max(1, max|values|).
    The rest must pair up under conjugation within the same cut: both
    half-planes are sorted by (Re, |Im|) and matched elementwise, with a
    greedy nearest-conjugate repair pass for sort-order ties.  Values left
    unpaired raise ClassificationError rather than being coerced.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    values = np.asarray(values, dtype=np.complex128)
    scale = max(1.0, float(np.max(np.abs(values)))) if values.size else 1.0
    cut = tol * scale
    real_mask = np.abs(values.imag) <= cut
    up = np.flatnonzero(~real_mask & (values.imag > 0))
    lo = np.flatnonzero(~real_mask & (values.imag < 0))
    if up.size != lo.size:
        raise ClassificationError(
            f"conjugation symmetry broken: {up.size} eigenvalues in the upper "
            f"half-plane vs {lo.size} below, at tolerance {cut:.3e}"
        )
    up = up[np.lexsort((values.imag[up], values.real[up]))]
    lo = lo[np.lexsort((-values.imag[lo], values.real[lo]))]
    mismatch = np.flatnonzero(np.abs(values[up] - np.conj(values[lo])) > cut)
    if mismatch.size:
        free = list(lo[mismatch])
        for pos in mismatch:
            want = np.conj(values[up[pos]])
            dists = np.abs(values[free] - want)
            best = int(np.argmin(dists))
            if dists[best] > cut:
                raise ClassificationError(
                    f"eigenvalue {values[up[pos]]} has no conjugate partner "
                    f"within {cut:.3e}"
                )
            lo[pos] = free.pop(best)
    pairs = np.column_stack([up, lo]).astype(np.intp)
    return Spectrum(values=values, real_mask=real_mask, pairs=pairs, tol=tol)


def carlson_bound(spec: MetricSpec) -> int:
    """Minimum number of real eigenvalues of phi = A B.

    |n - 2k| for indefinite-sign t < 0; n for t > 0, where phi is similar
    to a hermitian matrix and the whole spectrum is real.
    """
    if spec.t > 0:
        return spec.n
    return abs(spec.n - 2 * spec.k)
