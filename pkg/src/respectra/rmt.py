"""Numerical eta-transform, Stieltjes transform and eigenvalue densities.

The eta-transform of the renormalized sample autocorrelation of B = C S A
solves a two-variable fixed point in the expectations

    E1 = E[ D / (1 + gamma beta D E2) ],   E2 = E[ T / (1 + gamma T E1) ],

where D and T are drawn from the limiting spectral laws of C C^T and
A A^T. After convergence eta(gamma) = E[ 1 / (1 + gamma beta D E2*) ].
Expectations reduce to angular quadrature against the laws' transforms
plus the explicit point-mass branch. The Stieltjes transform follows from
S(-1/gamma) = gamma eta(gamma), and evaluating it just above the real axis
recovers the eigenvalue density.

Solver notes: the fixed point is iterated with damping and then polished
with a secant step on the E2 residual, which also rescues the slow
convergence near support edges. Iterating E2 with a relative residual
criterion keeps the stop rule meaningful at large |gamma| where E2 decays
like 1/gamma. For density sweeps the grid is processed in descending
lambda order, warm starting each point from its neighbor; a converged
point whose density comes out negative is re-solved with plain damped
iteration from a cold start before clamping (the secant step can
occasionally lock onto the nonphysical conjugate root).
"""

from dataclasses import dataclass, replace

import numpy as np

from .errors import ConvergenceFailure, InvalidSpec
from .spectra import afze


@dataclass(frozen=True)
class EtaSolverConfig:
    """Fixed-point solver and quadrature settings.

    ``tolerance`` bounds the relative change of E2 between iterations.
    Quadrature is composite Gauss-Legendre on (0, pi) with panel edges
    graded toward 0 as (k/panels)^grading, where the AR spectrum peaks;
    the law's symmetry around pi supplies the other half interval.
    """

    tolerance: float = 1e-6
    max_iters: int = 10000
    quad_panels: int = 64
    quad_order: int = 16
    quad_grading: float = 3.0
    damping: float = 0.5
    picard_warmup: int = 60
    divergence_window: int = 50


DEFAULT_CONFIG = EtaSolverConfig()

_QUAD_CACHE = {}


def quadrature_nodes(config=DEFAULT_CONFIG):
    """Graded composite Gauss-Legendre nodes and weights on (0, pi)."""
    key = (config.quad_panels, config.quad_order, config.quad_grading)
    if key not in _QUAD_CACHE:
        x, w = np.polynomial.legendre.leggauss(config.quad_order)
        edges = np.pi * (np.arange(config.quad_panels + 1)
                         / config.quad_panels) ** config.quad_grading
        a, b = edges[:-1, None], edges[1:, None]
        nodes = (0.5 * (b - a) * x + 0.5 * (a + b)).ravel()
        weights = (0.5 * (b - a) * w).ravel()
        _QUAD_CACHE[key] = (nodes, weights)
    return _QUAD_CACHE[key]


class _LawAtoms:
    """A law reduced to quadrature atoms: values, weights and zero mass.

    Weights fold in the angular density and the symmetric doubling, so
    sum(weights) + mass = 1 and E[g] = mass * g(0) + sum(weights * g(values)).
    """

    __slots__ = ("values", "weights", "mass", "mean")

    def __init__(self, law, config):
        nodes, panel_w = quadrature_nodes(config)
        self.values = np.asarray(law.transform(nodes), dtype=float)
        self.weights = 2.0 * law.angular_density * panel_w
        self.mass = law.zero_mass
        self.mean = float((self.weights * self.values).sum())


def _cold_start(atoms_t, gamma):
    # paper-style initialization E1 = 1
    return ((atoms_t.weights * atoms_t.values
             / (1.0 + gamma * atoms_t.values)).sum())


def _solve_e2(atoms_d, atoms_t, beta, gamma, config, warm=None):
    """Solve the E1/E2 fixed point; returns (e2, iterations)."""
    dv, dw = atoms_d.values, atoms_d.weights
    tv, tw = atoms_t.values, atoms_t.weights

    def g(e2):
        e1 = (dw * dv / (1.0 + gamma * beta * dv * e2)).sum()
        return (tw * tv / (1.0 + gamma * tv * e1)).sum()

    tol = config.tolerance
    damping = config.damping
    e2 = warm if warm is not None else _cold_start(atoms_t, gamma)
    it = 0
    x0 = f0 = None
    for _ in range(min(config.picard_warmup, config.max_iters)):
        e2_raw = g(e2)
        it += 1
        if abs(e2_raw - e2) <= tol * max(abs(e2_raw), abs(e2), 1e-300):
            return e2_raw, it
        x0, f0 = e2, e2_raw - e2
        e2 = (1.0 - damping) * e2 + damping * e2_raw

    # secant acceleration on F(x) = g(x) - x, with damped fallback steps
    x1 = e2
    g1 = g(x1)
    it += 1
    f1 = g1 - x1
    best = abs(f1)
    stale = 0
    while it < config.max_iters:
        if abs(f1) <= tol * max(abs(x1), abs(g1), 1e-300):
            return g1, it
        denom = f1 - f0
        x2 = g1 if denom == 0 else x1 - f1 * (x1 - x0) / denom
        if not np.isfinite(abs(x2)):
            x2 = g1
        g2 = g(x2)
        it += 1
        f2 = g2 - x2
        if abs(f2) > 10.0 * abs(f1):
            # bad secant step: take a plain damped step instead
            x2 = (1.0 - damping) * x1 + damping * g1
            g2 = g(x2)
            it += 1
            f2 = g2 - x2
        if abs(f2) < best:
            best = abs(f2)
            stale = 0
        else:
            stale += 1
            if stale >= config.divergence_window:
                raise ConvergenceFailure(
                    f"fixed point diverging at gamma={gamma}",
                    residual=abs(f2))
        x0, f0 = x1, f1
        x1, f1, g1 = x2, f2, g2
    raise ConvergenceFailure(
        f"fixed point not converged after {config.max_iters} iterations "
        f"at gamma={gamma}", residual=abs(f1))


def _eta_given_e2(atoms_d, beta, gamma, e2):
    return atoms_d.mass + (atoms_d.weights
                           / (1.0 + gamma * beta * atoms_d.values * e2)).sum()


def eta_transform(law_d, law_t, beta, gamma, config=DEFAULT_CONFIG, warm=None):
    """eta(gamma) = E[1/(1 + gamma beta D E2*)] for the laws of D and T.

    Accepts real or complex gamma; real nonnegative gamma keeps the whole
    computation in real arithmetic. eta(0) = 1 identically.
    """
    if not 0.0 < beta <= 1.0:
        raise InvalidSpec(f"beta must lie in (0, 1], got {beta}")
    if gamma == 0:
        return 1.0
    atoms_d = _LawAtoms(law_d, config)
    atoms_t = _LawAtoms(law_t, config)
    e2, _ = _solve_e2(atoms_d, atoms_t, beta, gamma, config, warm=warm)
    return _eta_given_e2(atoms_d, beta, gamma, e2)


def stieltjes(z, law_d, law_t, beta, config=DEFAULT_CONFIG, warm=None):
    """Stieltjes transform S(z) = -eta(-1/z)/z of the limiting eigenvalue law."""
    z = complex(z)
    if z == 0:
        raise InvalidSpec("Stieltjes transform is undefined at z = 0")
    gamma = -1.0 / z
    return gamma * eta_transform(law_d, law_t, beta, gamma, config=config,
                                 warm=warm)


@dataclass(frozen=True)
class EigenPdf:
    """Asymptotic eigenvalue density: point mass at zero plus a sampled
    continuous part on a positive lambda grid.

    ``density`` is the continuous density of the full empirical spectral
    distribution (its integral tends to beta/xi; zero_mass accounts for the
    rest). On the self-selected adaptive grid, zero_mass + integral = 1
    within 1e-2. ``nu`` is the imaginary offset used for the inversion; the
    known point mass smeared by nu is subtracted exactly before clamping.
    """

    zero_mass: float
    lambda_grid: np.ndarray
    density: np.ndarray
    beta: float
    xi: float
    nu: float
    law: str = ""
    clamped_points: int = 0
    solver_iterations: int = 0

    def continuous_mass(self):
        return float(np.trapezoid(self.density, self.lambda_grid))

    def total_mass(self):
        return self.zero_mass + self.continuous_mass()

    def first_moment(self):
        return float(np.trapezoid(self.density * self.lambda_grid,
                                  self.lambda_grid))

    def cdf_nonzero(self):
        """Grid CDF of the nonzero-eigenvalue (continuous) part, normalized."""
        seg = 0.5 * (self.density[1:] + self.density[:-1]) * np.diff(self.lambda_grid)
        cum = np.concatenate([[0.0], np.cumsum(seg)])
        total = cum[-1]
        if total <= 0:
            raise InvalidSpec("density integrates to zero; no continuous part")
        return cum / total

    def lambda_minus(self, rel_threshold=1e-6):
        """Smallest grid lambda where the density exceeds rel_threshold times
        its maximum: the lower edge of the nonzero-eigenvalue support."""
        peak = self.density.max()
        if peak <= 0:
            raise InvalidSpec("density is identically zero on the grid")
        idx = np.argmax(self.density > rel_threshold * peak)
        return float(self.lambda_grid[idx])

    def lambda_plus(self, rel_threshold=1e-6):
        """Largest grid lambda where the density exceeds rel_threshold times
        its maximum."""
        peak = self.density.max()
        if peak <= 0:
            raise InvalidSpec("density is identically zero on the grid")
        above = np.nonzero(self.density > rel_threshold * peak)[0]
        return float(self.lambda_grid[above[-1]])

    def scaled(self, sigma_s2):
        """Density for innovation variance sigma_s2: eigenvalues scale
        linearly, so the grid is multiplied and the density divided."""
        return replace(self, lambda_grid=self.lambda_grid * sigma_s2,
                       density=self.density / sigma_s2,
                       nu=self.nu * sigma_s2)


def _default_grid(atoms_d, atoms_t, beta, xi, zero_mass, points, config):
    """Adaptive log-spaced grid plus a nu override.

    A coarse descending sweep locates the upper support edge, keeping
    enough of the thin right tail that both the truncated mass and the
    truncated first moment are negligible. A fine-nu probe at the lower
    end then measures the coefficient of a possible A/sqrt(lambda)
    divergence (beta = 1 style laws); if present, the lower limit is pushed
    down until the untabulated mass 2 A sqrt(lo) is negligible and nu is
    capped so the Cauchy smoothing does not displace the divergence's mass
    out of the grid. Returns (grid, nu_override-or-None).
    """
    scale = beta * atoms_d.mean * atoms_t.mean
    lo = 1e-8 * scale
    hi0 = 16.0 * atoms_d.values.max() * atoms_t.values.max()
    coarse = np.geomspace(lo, max(hi0, lo * 1e6), 144)
    nu_c = 1e-4 * np.median(coarse)
    dens = np.empty(len(coarse))
    warm = None
    for k in range(len(coarse) - 1, -1, -1):
        lam = coarse[k]
        gamma = -1.0 / (lam + 1j * nu_c)
        e2, _ = _solve_e2(atoms_d, atoms_t, beta, gamma, config, warm=warm)
        warm = e2
        s = gamma * _eta_given_e2(atoms_d, beta, gamma, e2)
        f = s.imag / np.pi - zero_mass * nu_c / (np.pi * (lam * lam + nu_c * nu_c))
        dens[k] = max(f, 0.0)
    seg_mass = 0.5 * (dens[1:] + dens[:-1]) * np.diff(coarse)
    seg_mom = 0.5 * (dens[1:] * coarse[1:] + dens[:-1] * coarse[:-1]) * np.diff(coarse)
    tail_mass = np.concatenate([np.cumsum(seg_mass[::-1])[::-1], [0.0]])
    tail_mom = np.concatenate([np.cumsum(seg_mom[::-1])[::-1], [0.0]])
    keep = (tail_mass <= 1e-4 * beta) & (tail_mom <= 1e-3 * scale)
    hi = 1.3 * coarse[int(np.argmax(keep))]

    f_probe, _ = _density_point(atoms_d, atoms_t, beta, zero_mass, coarse[0],
                                1e-3 * coarse[0], config, warm=warm)
    sqrt_coeff = max(f_probe, 0.0) * np.sqrt(coarse[0])
    nu_override = None
    if 2.0 * sqrt_coeff * np.sqrt(lo) > 1e-3 * beta:
        lo = max((5e-4 * beta / sqrt_coeff) ** 2, 1e-13 * scale)
        nu_override = min(1e-4 * np.sqrt(lo * hi),
                          (1e-3 * beta / sqrt_coeff) ** 2)
    return np.geomspace(lo, hi, points), nu_override


def _density_point(atoms_d, atoms_t, beta, zero_mass, lam, nu, config,
                   warm=None):
    gamma = -1.0 / (lam + 1j * nu)
    e2, _ = _solve_e2(atoms_d, atoms_t, beta, gamma, config, warm=warm)
    s = gamma * _eta_given_e2(atoms_d, beta, gamma, e2)
    f = s.imag / np.pi - zero_mass * nu / (np.pi * (lam * lam + nu * nu))
    return f, e2


def support_lower_edge(law_d, law_t, beta, xi=1.0, config=DEFAULT_CONFIG,
                       rel_precision=1e-3):
    """Lower edge of the nonzero-eigenvalue support of the limiting law.

    The grid-based EigenPdf.lambda_minus rule is resolution limited: the
    Cauchy kernel of the Stieltjes smoothing leaks O(nu) density below the
    true edge, which can exceed a tiny relative threshold. Here each probe
    point is classified by how the smoothed density responds to shrinking
    nu (constant inside the support, proportional to nu outside), and the
    edge is located by bisection in log-lambda. Returns the grid floor when
    the support extends to zero (beta = 1 style laws).
    """
    atoms_d = _LawAtoms(law_d, config)
    atoms_t = _LawAtoms(law_t, config)
    zero_mass = afze(beta, xi)
    coarse, _ = _default_grid(atoms_d, atoms_t, beta, xi, zero_mass, 160,
                              config)
    nu_c = 1e-4 * float(np.median(coarse))
    dens = np.empty(len(coarse))
    warm = None
    for k in range(len(coarse) - 1, -1, -1):
        f, warm = _density_point(atoms_d, atoms_t, beta, zero_mass,
                                 coarse[k], nu_c, config, warm=warm)
        dens[k] = max(f, 0.0)

    # eta errors are amplified by |S| ~ mass/max(lambda, nu) near zero, so
    # the edge probes solve far below the tolerance they must resolve
    tight = replace(config, tolerance=min(config.tolerance, 1e-12))

    def inside(lam):
        # shrinking nu leaves the density unchanged inside the support but
        # scales it down linearly outside (pure Cauchy-tail leakage)
        f1, w1 = _density_point(atoms_d, atoms_t, beta, zero_mass, lam, nu_c,
                                tight)
        f2, _ = _density_point(atoms_d, atoms_t, beta, zero_mass, lam,
                               nu_c / 4.0, tight, warm=w1)
        return f2 > 0.5 * f1 and f2 > 0.0

    peak = int(np.argmax(dens))
    if peak == 0 or inside(float(coarse[0])):
        return float(coarse[0])
    lo_i, hi_i = 0, peak          # classification flips once in between
    while hi_i - lo_i > 1:
        mid = (lo_i + hi_i) // 2
        if inside(float(coarse[mid])):
            hi_i = mid
        else:
            lo_i = mid
    lo, hi = float(coarse[lo_i]), float(coarse[hi_i])
    while hi / lo - 1.0 > rel_precision and hi - lo > nu_c:
        mid = float(np.sqrt(lo * hi))
        if inside(mid):
            hi = mid
        else:
            lo = mid
    return float(np.sqrt(lo * hi))


def eigen_pdf(law_d, law_t, beta, xi=1.0, grid=None, nu=None, points=512,
              config=DEFAULT_CONFIG):
    """Asymptotic eigenvalue pdf of the renormalized sample autocorrelation.

    Parameters
    ----------
    law_d, law_t : SpectralLaw
        Limiting spectral laws of the two dependence-inducing Gram matrices
        (identical for the models used here).
    beta : float
        Aspect ratio K/N of the analyzed submatrix, in (0, 1].
    xi : float
        Resampling factor carried by the laws (1 for genuine fields); sets
        the point mass at zero through the zero-eigenvalue fraction.
    grid : array, optional
        Increasing positive lambda grid. When omitted an adaptive log-spaced
        grid of ``points`` entries is selected to cover the full support.
    nu : float, optional
        Imaginary offset for the Stieltjes inversion; defaults to
        1e-4 times the median grid lambda.

    The sweep runs from the largest lambda down, warm starting each fixed
    point from its neighbor. Raises ConvergenceFailure (annotated with the
    offending lambda) if some grid point cannot be solved.
    """
    if not 0.0 < beta <= 1.0:
        raise InvalidSpec(f"beta must lie in (0, 1], got {beta}")
    atoms_d = _LawAtoms(law_d, config)
    atoms_t = _LawAtoms(law_t, config)
    zero_mass = afze(beta, xi)
    nu_override = None
    if grid is None:
        grid, nu_override = _default_grid(atoms_d, atoms_t, beta, xi,
                                          zero_mass, points, config)
    else:
        grid = np.asarray(grid, dtype=float)
        if grid.ndim != 1 or len(grid) < 2 or grid[0] <= 0 \
                or np.any(np.diff(grid) <= 0):
            raise InvalidSpec("grid must be increasing and strictly positive")
    if nu is None:
        nu = nu_override if nu_override is not None \
            else 1e-4 * float(np.median(grid))
    if nu <= 0:
        raise InvalidSpec(f"nu must be positive, got {nu}")

    density = np.empty(len(grid))
    warm = None
    clamped = 0
    iters_total = 0
    for k in range(len(grid) - 1, -1, -1):
        lam = grid[k]
        gamma = -1.0 / (lam + 1j * nu)
        try:
            e2, its = _solve_e2(atoms_d, atoms_t, beta, gamma, config,
                                warm=warm)
        except ConvergenceFailure as exc:
            raise ConvergenceFailure(
                f"inversion failed at lambda={lam:g}",
                residual=exc.residual) from exc
        iters_total += its
        s = gamma * _eta_given_e2(atoms_d, beta, gamma, e2)
        f = s.imag / np.pi - zero_mass * nu / (np.pi * (lam * lam + nu * nu))
        if f < -1e-12:
            # possible nonphysical root: re-solve by plain damped iteration
            retry = replace(config, picard_warmup=config.max_iters)
            e2_b, its_b = _solve_e2(atoms_d, atoms_t, beta, gamma, retry)
            iters_total += its_b
            s_b = gamma * _eta_given_e2(atoms_d, beta, gamma, e2_b)
            f_b = s_b.imag / np.pi \
                - zero_mass * nu / (np.pi * (lam * lam + nu * nu))
            if f_b > f:
                f, e2 = f_b, e2_b
        warm = e2
        if f < 0.0:
            if f < -1e-12:
                clamped += 1
            f = 0.0
        density[k] = f
    return EigenPdf(zero_mass=zero_mass, lambda_grid=grid, density=density,
                    beta=beta, xi=xi, nu=nu,
                    law=f"D~{law_d.descriptor} T~{law_t.descriptor} beta={beta}",
                    clamped_points=clamped, solver_iterations=iters_total)
