"""Causal 2D autoregressive random fields and their sample autocorrelation.

The field is synthesized as X = U S U^T where U is the banded Toeplitz
filter matrix of a truncated AR(1) recursion (equal row/column correlation
rho) and S holds i.i.d. Gaussian innovations. Renormalized sample
autocorrelation matrices (1/N) B B^T of N x K submatrices are the objects
whose eigenvalue spectra the rest of the package analyzes.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidShape, InvalidSpec, InvalidView, ZeroVariance
from .matcore import ar_u_matrix, gaussian_matrix


@dataclass(frozen=True)
class ArParams:
    """Parameters of the causal 2D-AR(1) field model.

    rho is the one-step correlation coefficient shared by rows and columns,
    sigma_s2 the innovation variance, q the truncation length of the AR
    filter (None means q = n, long enough for the closed-form Gram
    expressions to apply), and n the side length of the generated field.
    Eigenvalues of any derived autocorrelation matrix scale linearly in
    sigma_s2.
    """

    rho: float
    n: int
    sigma_s2: float = 1.0
    q: int = None

    def __post_init__(self):
        if not 0.0 <= self.rho < 1.0:
            raise InvalidSpec(f"rho must lie in [0, 1), got {self.rho}")
        if self.sigma_s2 <= 0:
            raise InvalidSpec(f"sigma_s2 must be positive, got {self.sigma_s2}")
        if self.n < 2:
            raise InvalidSpec(f"field side length must be >= 2, got {self.n}")
        if self.q is not None and self.q < 1:
            raise InvalidSpec(f"AR truncation length must be >= 1, got {self.q}")

    @property
    def q_eff(self):
        return self.n if self.q is None else self.q


def generate_field(params, seed):
    """Sample an n x n field X = U S U^T.

    U is n x (n+q-1) with taps rho^(q-1-k); S is (n+q-1) x (n+q-1) i.i.d.
    N(0, sigma_s2). The sample is exactly linear in sqrt(sigma_s2), so a
    field generated with sigma_s2 = c is sqrt(c) times the sigma_s2 = 1
    field for the same seed.
    """
    q = params.q_eff
    u = ar_u_matrix(params.rho, params.n, q)
    s = gaussian_matrix(params.n + q - 1, params.n + q - 1,
                        np.sqrt(params.sigma_s2), seed)
    return u @ s @ u.T


@dataclass(frozen=True)
class SampleAutocorr:
    """Renormalized sample autocorrelation (1/N) B B^T of an N x K block."""

    matrix: np.ndarray
    beta: float
    normalizer: int

    def eigenvalues(self):
        """Eigenvalues sorted descending (PSD up to roundoff)."""
        return np.linalg.eigvalsh(self.matrix)[::-1].copy()


def sample_autocorr(block, standardize=False):
    """(1/N) B B^T for an N x K block, with beta = K/N.

    With standardize=True the block is first reduced to zero mean and unit
    standard deviation over all entries (the preprocessing applied to real
    image blocks before spectral analysis); synthetic zero-mean fields are
    analyzed raw by default. A constant block cannot be standardized.
    """
    b = np.asarray(block, dtype=float)
    n, k = b.shape
    if k > n:
        raise InvalidShape(f"block must have K <= N, got {n}x{k}")
    if standardize:
        sd = b.std()
        if sd == 0:
            raise ZeroVariance("cannot standardize a constant block")
        b = (b - b.mean()) / sd
    return SampleAutocorr(matrix=(b @ b.T) / n, beta=k / n, normalizer=n)


def view_count(n, k):
    """Number of sliding views V = 2 (N - K + 1) over an N x N matrix."""
    return 2 * (n - k + 1)


def crop_view(z, v, k):
    """v-th sliding N x K view of an N x N matrix.

    Even v takes columns v/2 .. v/2+K-1 of Z; odd v takes the same columns
    of Z^T (i.e. rows of Z). Indices are 0-based; v ranges over
    0 .. 2(N-K+1)-1.
    """
    z = np.asarray(z, dtype=float)
    n = z.shape[0]
    if z.shape[0] != z.shape[1]:
        raise InvalidShape(f"expected a square matrix, got {z.shape}")
    if not 0 <= v < view_count(n, k):
        raise InvalidView(f"view index {v} out of range for V={view_count(n, k)}")
    if v % 2 == 0:
        c = v // 2
        return z[:, c:c + k]
    c = (v - 1) // 2
    return z.T[:, c:c + k]
