"""Resampling-factor interval estimation from eigenvalue-ratio profiles.

Upscaling by xi leaves each sliding view's sample autocorrelation with a
signal subspace of dimension roughly (K-1)/xi + k_w, so the profile of
consecutive eigenvalue ratios Psi[i] = lambda_i / lambda_{i+1} spikes at the
signal/noise boundary. The per-view boundary votes are aggregated by
histogram mode and mapped back to an interval of compatible resampling
factors; when the peak-to-median ratio statistic mu signals a smeared gap,
the index closest to the MP upper edge is used instead and only the upper
interval endpoint is trusted.
"""

from dataclasses import dataclass

import numpy as np

from .detect import lower_median, view_eigenvalues
from .errors import InsufficientViews, InvalidConfig
from .spectra import mp_edges

RATIO_ZERO_CUTOFF = 1e-14


@dataclass(frozen=True)
class EstimatorConfig:
    """Estimator settings.

    ``k_w`` is the interpolation kernel width (2 x half-support) assumed
    when mapping the subspace boundary back to a factor; ``xi_max`` bounds
    the considered factors and fixes the searched index window; ``t_mu``
    separates sharp rank gaps (argmax vote) from smeared ones (MP-edge
    vote).
    """

    k: int = 16
    delta: float = 1.0
    k_w: int = 2
    xi_max: float = 2.0
    t_mu: float = 2.0

    def __post_init__(self):
        if self.k < 3:
            raise InvalidConfig(f"K must be at least 3, got {self.k}")
        if self.delta <= 0:
            raise InvalidConfig(f"delta must be positive, got {self.delta}")
        if self.k_w < 1:
            raise InvalidConfig(f"k_w must be >= 1, got {self.k_w}")
        if self.xi_max <= 1:
            raise InvalidConfig(f"xi_max must exceed 1, got {self.xi_max}")
        if int(self.k / self.xi_max) < 1:
            raise InvalidConfig("floor(K / xi_max) must be >= 1")

    @property
    def sigma_w2(self):
        return self.delta ** 2 / 12.0


@dataclass(frozen=True)
class EstimationResult:
    """Outcome of one estimator run.

    ``interval`` is [xi_lower, xi_upper); ``p_hat`` the estimated signal
    subspace boundary (0 when no view produced a vote); ``psi`` the (V, K-1)
    ratio profiles with Psi[v, i-1] = lambda_i / lambda_{i+1};
    ``clamped`` flags intervals that fell back to [1, xi_max) because the
    analytic endpoint degenerated.
    """

    p_hat: int
    interval: tuple
    mu: float
    per_view_p: np.ndarray
    psi: np.ndarray
    below_set: np.ndarray
    mu_branch: str
    clamped: bool

    def to_dict(self):
        return {
            "p_hat": int(self.p_hat),
            "xi_lower": float(self.interval[0]),
            "xi_upper": float(self.interval[1]),
            "mu": float(self.mu),
            "per_view_p": [int(v) for v in self.per_view_p],
            "below_set": [int(v) for v in self.below_set],
            "mu_branch": self.mu_branch,
            "clamped": bool(self.clamped),
        }


def ratio_profile(eigenvalues):
    """Psi[i-1] = lambda_i / lambda_{i+1} for descending eigenvalues.

    Eigenvalues at or below RATIO_ZERO_CUTOFF times the largest are treated
    as exact zeros: a positive/zero ratio is +inf (a maximal gap), a
    zero/zero ratio is 1 (no gap information).
    """
    lam = np.asarray(eigenvalues, dtype=float)
    cut = RATIO_ZERO_CUTOFF * lam[0] if lam[0] > 0 else 0.0
    psi = np.empty(len(lam) - 1)
    for i in range(len(lam) - 1):
        if lam[i + 1] > cut:
            psi[i] = lam[i] / lam[i + 1]
        elif lam[i] > cut:
            psi[i] = np.inf
        else:
            psi[i] = 1.0
    return psi


def estimate(z, cfg):
    """Estimate the resampling-factor interval of an N x N block.

    Implements the sliding-view vote: per view v outside the noise set S,
    the vote p_v is the argmax of Psi over the index window
    I = {floor(K/xi_max) .. K-1} when the gap statistic mu >= t_mu, or the
    index whose eigenvalue is closest to the MP upper edge when mu < t_mu;
    views in S vote 0. p_hat is the histogram mode over {0..K} (smallest
    index wins ties) and maps to
        [ (K-1)/((p_hat-k_w)+1), (K-1)/((p_hat-k_w)-1) )
    with the one-sided variant [1, (K-1)/((p_hat-k_w)-1)) when mu < t_mu
    and [1, xi_max) when p_hat = 0 or the endpoint degenerates.
    """
    z = np.asarray(z, dtype=float)
    n = z.shape[0]
    if z.ndim != 2 or z.shape[0] != z.shape[1]:
        raise InvalidConfig(f"estimator expects a square block, got {z.shape}")
    k = cfg.k
    if k > n:
        raise InvalidConfig(f"K={k} exceeds block size N={n}")
    beta = k / n
    edges = mp_edges(cfg.sigma_w2, beta)
    i_start = int(k / cfg.xi_max)          # 1-based window start
    window = slice(i_start - 1, k - 1)     # Psi indices for i in I

    eig = view_eigenvalues(z, k)
    v_total = len(eig)
    psi = np.empty((v_total, k - 1))
    i_v = np.empty(v_total, dtype=int)
    below = np.empty(v_total, dtype=bool)
    for v in range(v_total):
        psi[v] = ratio_profile(eig[v])
        below[v] = eig[v, -1] < edges.lower
        i_v[v] = int(np.argmin(np.abs(eig[v] - edges.upper))) + 1  # 1-based

    below_set = np.nonzero(below)[0]
    if below.all():
        raise InsufficientViews(
            "every view sits below the noise floor; mu is undefined")

    terms = []
    for v in range(v_total):
        if below[v]:
            continue
        seg = psi[v, window]
        med = lower_median(seg)
        peak = seg.max()
        if np.isinf(peak) and np.isinf(med):
            terms.append(1.0)  # profile is all maximal gaps: no contrast
        elif med == 0:
            terms.append(np.inf)
        else:
            terms.append(peak / med)
    mu = float(np.mean(terms))

    p_v = np.zeros(v_total, dtype=int)
    for v in range(v_total):
        if below[v]:
            continue
        if mu >= cfg.t_mu:
            p_v[v] = i_start + int(np.argmax(psi[v, window]))
        else:
            p_v[v] = i_v[v]

    counts = np.bincount(p_v, minlength=k + 1)
    p_hat = int(np.argmax(counts))         # smallest index wins ties

    clamped = False
    if p_hat == 0:
        interval = (1.0, cfg.xi_max)
    else:
        d = p_hat - cfg.k_w
        if d - 1 <= 0:
            interval = (1.0, cfg.xi_max)
            clamped = True
        elif mu < cfg.t_mu:
            interval = (1.0, (k - 1) / (d - 1))
        else:
            interval = (max(1.0, (k - 1) / (d + 1)), (k - 1) / (d - 1))
    return EstimationResult(
        p_hat=p_hat,
        interval=interval,
        mu=mu,
        per_view_p=p_v,
        psi=psi,
        below_set=below_set,
        mu_branch="argmax" if mu >= cfg.t_mu else "mp-edge",
        clamped=clamped,
    )
