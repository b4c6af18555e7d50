"""Strictly quasi-hermitian control model phi = M^-1 K.

M = C^H C + m0 I and K = C~^H C~ are Wishart-type with a positive shift,
so the metric M is positive definite and the intertwining relation
phi^H M = M phi forces every eigenvalue (a squared frequency omega^2) to
be real and nonnegative.  The module exists to make that contrast with
the indefinite-metric ensembles executable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .ensemble import substream_rng
from .linalg import Spectrum, classify_spectrum, eigenvalues


class IllConditionedError(RuntimeError):
    """Raised when the metric M is too ill-conditioned to invert reliably."""


@dataclass(frozen=True)
class MechParams:
    """Dimension, factor variance scales, mass shift, and master seed.

    sigma scales the K-factor C~ and sigma_prime the M-factor C; both
    follow the exponent -(n/scale^2) tr C^H C, i.e. entry variance
    scale^2/n.  m0 > 0 keeps M strictly positive definite.
    """

    n: int
    sigma: float
    sigma_prime: float
    m0: float
    seed: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.sigma <= 0 or self.sigma_prime <= 0 or self.m0 <= 0:
            raise ValueError("sigma, sigma_prime, m0 must all be positive")


def _complex_gaussian(n: int, scale: float, rng: np.random.Generator) -> NDArray[np.complex128]:
    # entry variance scale^2/n split evenly between components
    sig = scale / np.sqrt(2.0 * n)
    return rng.normal(scale=sig, size=(n, n)) + 1j * rng.normal(scale=sig, size=(n, n))


def sample_mech_pair(
    params: MechParams, sample_index: int = 0
) -> tuple[NDArray[np.complex128], NDArray[np.complex128]]:
    """Draw (M, K) = (C^H C + m0 I, C~^H C~) for one sample."""
    rng = substream_rng(params.seed, sample_index)
    c_m = _complex_gaussian(params.n, params.sigma_prime, rng)
    c_k = _complex_gaussian(params.n, params.sigma, rng)
    m_mat = c_m.conj().T @ c_m + params.m0 * np.eye(params.n)
    k_mat = c_k.conj().T @ c_k
    return m_mat, k_mat


def generalized_spectrum(
    m_mat: NDArray[np.complex128],
    k_mat: NDArray[np.complex128],
    tol: float = 1e-8,
) -> Spectrum:
    """Spectrum of M^-1 K via a linear solve (M is never inverted explicitly).

    M with condition number above 1e12 raises IllConditionedError.
    """
    ev = np.linalg.eigvalsh(m_mat)
    if ev[0] <= 0 or ev[-1] / ev[0] > 1e12:
        raise IllConditionedError(
            f"metric condition number {ev[-1] / max(ev[0], 1e-300):.3e} exceeds 1e12"
        )
    phi = np.linalg.solve(m_mat, k_mat)
    return classify_spectrum(eigenvalues(phi), tol=tol)


def mech_spectrum(params: MechParams, sample_index: int = 0) -> Spectrum:
    """Sample one (M, K) pair and return the spectrum of M^-1 K.

    All eigenvalues are real nonnegative up to solver noise; the values
    are the squared normal-mode frequencies of the mechanical analogy.
    """
    m_mat, k_mat = sample_mech_pair(params, sample_index)
    return generalized_spectrum(m_mat, k_mat)
