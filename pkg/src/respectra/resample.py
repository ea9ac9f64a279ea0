"""Interpolation kernels, polyphase upscaling operators and quantization.

Rational upscaling by xi = L/M (coprime, xi >= 1) evaluates a symmetric
kernel h on the output grid: H[i, j] = h(i*M/L + phi - j). Row i carries
polyphase component (i*M mod L). The kernel autocorrelation sequence
r_hh[n] averages the polyphase components of H^T H into the Toeplitz
matrix that drives the asymptotic spectrum of upscaled fields.
"""

from dataclasses import dataclass
from math import gcd

import numpy as np

from .errors import InvalidShape, InvalidSpec
from .matcore import rng_from_seed


def _h_linear(t):
    t = np.abs(t)
    return np.where(t < 1.0, 1.0 - t, 0.0)


def _h_catmull_rom(t):
    # Keys cubic with a = -1/2
    t = np.abs(t)
    inner = 1.5 * t ** 3 - 2.5 * t ** 2 + 1.0
    outer = -0.5 * t ** 3 + 2.5 * t ** 2 - 4.0 * t + 2.0
    return np.where(t <= 1.0, inner, np.where(t < 2.0, outer, 0.0))


def _h_bspline(t):
    t = np.abs(t)
    inner = 2.0 / 3.0 - t ** 2 + 0.5 * t ** 3
    outer = (2.0 - t) ** 3 / 6.0
    return np.where(t <= 1.0, inner, np.where(t < 2.0, outer, 0.0))


def _h_lanczos3(t):
    t = np.asarray(t, dtype=float)
    return np.where(np.abs(t) < 3.0, np.sinc(t) * np.sinc(t / 3.0), 0.0)


@dataclass(frozen=True)
class KernelSpec:
    """Symmetric interpolation kernel with finite half-support.

    ``evaluator`` maps t -> h(t), vanishing for |t| >= half_support. The
    linear and both cubic kernels form a partition of unity
    (sum_n h(t+n) = 1 for every t); lanczos3 only approximately so.
    """

    name: str
    half_support: float
    evaluator: callable

    def __call__(self, t):
        return self.evaluator(t)

    @property
    def width(self):
        """Kernel width k_w = 2a; r_hh has integer lags |n| <= k_w - 1."""
        return int(round(2 * self.half_support))


KERNELS = {
    "linear": KernelSpec("linear", 1.0, _h_linear),
    "catmull-rom": KernelSpec("catmull-rom", 2.0, _h_catmull_rom),
    "b-spline": KernelSpec("b-spline", 2.0, _h_bspline),
    "lanczos3": KernelSpec("lanczos3", 3.0, _h_lanczos3),
}

_KERNEL_ALIASES = {
    "bspline": "b-spline", "b_spline": "b-spline",
    "catmullrom": "catmull-rom", "catmull_rom": "catmull-rom",
    "lanczos": "lanczos3",
}


def get_kernel(name):
    key = name.lower()
    key = _KERNEL_ALIASES.get(key, key)
    if key not in KERNELS:
        raise InvalidSpec(f"unknown kernel {name!r}; choose from {sorted(KERNELS)}")
    return KERNELS[key]


@dataclass(frozen=True)
class ResampleSpec:
    """Rational upscaling description: factor xi = L/M, phase and kernel.

    ``delta`` is the optional quantization step applied after interpolation
    (None leaves the output unquantized). L and M must be coprime with
    xi >= 1 (xi = 1 is the identity resampler, accepted so the operators
    degenerate gracefully; the upscaled spectral law itself requires
    xi > 1).
    """

    L: int
    M: int
    phi: float = 0.0
    kernel: KernelSpec = KERNELS["linear"]
    delta: float = None

    def __post_init__(self):
        if self.L < 1 or self.M < 1:
            raise InvalidSpec(f"L and M must be positive, got L={self.L} M={self.M}")
        if gcd(self.L, self.M) != 1:
            raise InvalidSpec(f"L={self.L} and M={self.M} must be coprime")
        if self.L < self.M:
            raise InvalidSpec(f"xi = L/M must be >= 1, got {self.L}/{self.M}")
        if not 0.0 <= self.phi < 1.0:
            raise InvalidSpec(f"phase must lie in [0, 1), got {self.phi}")
        if self.delta is not None and self.delta <= 0:
            raise InvalidSpec(f"quantization step must be positive, got {self.delta}")
        if isinstance(self.kernel, str):
            object.__setattr__(self, "kernel", get_kernel(self.kernel))

    @property
    def xi(self):
        return self.L / self.M

    @property
    def sigma_w2(self):
        """Quantization-noise variance delta^2 / 12 (None when unquantized)."""
        return None if self.delta is None else self.delta ** 2 / 12.0


def build_polyphase(spec, out_rows, in_rows):
    """Polyphase interpolation matrix H with H[i, j] = h(i*M/L + phi - j).

    Rows near the input boundary are zero padded (no reflection); they are a
    vanishing fraction of the matrix as sizes grow. out_rows may not exceed
    ceil(in_rows * xi), past which rows have no support at all.
    """
    if out_rows <= 0 or in_rows <= 0:
        raise InvalidShape(f"need positive sizes, got {out_rows}x{in_rows}")
    if out_rows > int(np.ceil(in_rows * spec.xi)):
        raise InvalidShape(
            f"{out_rows} output rows exceed ceil({in_rows} * {spec.xi})")
    i = np.arange(out_rows)[:, None]
    j = np.arange(in_rows)[None, :]
    return spec.kernel(i * spec.M / spec.L + spec.phi - j)


def kernel_autocorr(spec):
    """Kernel autocorrelation r_hh[n] for n = 0 .. k_w - 1.

    r_hh[n] = (1/M) sum_k h(k/L + phi') h(k/L + phi' + n) over the full
    kernel support, where phi' is the phase reduced modulo the 1/L grid
    step (integer row shifts do not change the sample grid). The sequence
    is symmetric, r_hh[-n] = r_hh[n], and r_hh[0] dominates.
    """
    kern, L, M = spec.kernel, spec.L, spec.M
    a = kern.half_support
    kw = kern.width
    off = spec.phi % (1.0 / L)
    lo = int(np.floor((-a - kw) * L)) - 1
    hi = int(np.ceil(a * L)) + 1
    x = np.arange(lo, hi + 1) / L + off
    base = kern(x)
    return np.array([(base * kern(x + n)).sum() / M for n in range(kw)])


def exact_autocorr_matrix(spec, in_rows):
    """Exact (non-Toeplitz) input-domain Gram matrix H^T H.

    H is built for the full output extent floor(in_rows * xi). Averaging M
    consecutive interior diagonal entries reproduces r_hh[0]; the Toeplitz
    approximation replaces every polyphase row of this matrix by that
    average.
    """
    out_rows = int(np.floor(in_rows * spec.xi))
    h = build_polyphase(spec, out_rows, in_rows)
    return h.T @ h


def quantize(y, delta):
    """Uniform mid-tread quantization delta * round(y / delta)."""
    if delta <= 0:
        raise InvalidSpec(f"quantization step must be positive, got {delta}")
    return delta * np.round(np.asarray(y, dtype=float) / delta)


def additive_quantization_noise(y, delta, seed):
    """Theory-matched alternative to rounding: add U(-delta/2, delta/2) noise.

    The additive model has exactly the variance delta^2/12 assumed by the
    asymptotic analysis; real pipelines round. Offering both separates
    model error from algorithm error in tests.
    """
    if delta <= 0:
        raise InvalidSpec(f"quantization step must be positive, got {delta}")
    y = np.asarray(y, dtype=float)
    return y + rng_from_seed(seed).uniform(-delta / 2, delta / 2, size=y.shape)


def upscale(field, spec):
    """Separable upscale Y = H X H^T, quantized when the spec carries delta.

    The output is floor(R * xi) x floor(R * xi) for an R x R input.
    """
    x = np.asarray(field, dtype=float)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise InvalidShape(f"expected a square field, got {x.shape}")
    r = x.shape[0]
    n = int(np.floor(r * spec.xi))
    if n < 2:
        raise InvalidShape(f"upscaled output {n}x{n} is smaller than 2x2")
    h = build_polyphase(spec, n, r)
    y = h @ x @ h.T
    if spec.delta is not None:
        y = quantize(y, spec.delta)
    return y
