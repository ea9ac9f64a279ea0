"""Sanity-check the eta-transform pipeline against the Marchenko-Pastur law.

With rho = 0 the field is white and the limiting spectral laws collapse to
the constant 1, so the numerically inverted density must reproduce the
classical MP density. This is the one configuration with a complete closed
form, which makes it the canonical end-to-end oracle for the solver.
"""

import numpy as np

from respectra import eigen_pdf, eta_transform, law_genuine

BETA = 0.5

law = law_genuine(0.0)


def mp_density(lam, beta):
    lo, hi = (1 - np.sqrt(beta)) ** 2, (1 + np.sqrt(beta)) ** 2
    lam = np.asarray(lam, dtype=float)
    out = np.zeros_like(lam)
    m = (lam > lo) & (lam < hi)
    out[m] = np.sqrt((hi - lam[m]) * (lam[m] - lo)) / (2 * np.pi * lam[m])
    return out


pdf = eigen_pdf(law, law, BETA)
lo, hi = (1 - np.sqrt(BETA)) ** 2, (1 + np.sqrt(BETA)) ** 2

print(f"beta = {BETA}: MP support [{lo:.4f}, {hi:.4f}]")
print(f"zero mass: {pdf.zero_mass} (exact: {1 - BETA})")
print(f"continuous mass: {pdf.continuous_mass():.5f} (exact: {BETA})")

print(f"\n{'lambda':>8} {'computed':>10} {'closed form':>12}")
for lam in np.linspace(lo + 0.05 * (hi - lo), hi - 0.05 * (hi - lo), 9):
    got = np.interp(lam, pdf.lambda_grid, pdf.density)
    print(f"{lam:8.3f} {got:10.5f} {mp_density(lam, BETA)[()]:12.5f}")

print("\neta-transform on the real axis (eta(0) = 1, decreasing):")
for gamma in (0.0, 0.1, 1.0, 10.0, 1e8):
    print(f"  eta({gamma:g}) = {eta_transform(law, law, BETA, gamma):.6f}")
print(f"eta(inf) approaches the zero-eigenvalue fraction {1 - BETA}")
