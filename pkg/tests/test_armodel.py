import numpy as np
import pytest

from respectra import (ArParams, InvalidShape, InvalidView, ZeroVariance,
                       crop_view, generate_field, sample_autocorr, view_count)


def lag1_row_correlation(x):
    a, b = x[:, :-1].ravel(), x[:, 1:].ravel()
    return np.corrcoef(a, b)[0, 1]


class TestGenerateField:
    def test_white_noise_when_rho_zero(self):
        x = generate_field(ArParams(rho=0.0, n=512), seed=1)
        assert abs(lag1_row_correlation(x)) < 0.05

    def test_lag1_correlation_tracks_rho(self):
        # Monte Carlo oracle over 20 seeds
        rho = 0.97
        corrs = [lag1_row_correlation(generate_field(ArParams(rho=rho, n=512),
                                                     seed=s))
                 for s in range(20)]
        assert abs(np.mean(corrs) - rho) < 0.02

    def test_separable_variance_oracle(self):
        # product of two 1-D AR(1) variances: 1/(1-rho^2)^2
        x = generate_field(ArParams(rho=0.5, n=512, q=512), seed=2)
        want = 1.0 / (1.0 - 0.25) ** 2
        assert abs(x.var() / want - 1.0) < 0.10

    def test_eigenvalue_scaling_in_sigma(self):
        p1 = ArParams(rho=0.9, n=64, sigma_s2=1.0)
        p4 = ArParams(rho=0.9, n=64, sigma_s2=4.0)
        e1 = sample_autocorr(generate_field(p1, seed=5)[:, :32]).eigenvalues()
        e4 = sample_autocorr(generate_field(p4, seed=5)[:, :32]).eigenvalues()
        assert np.allclose(e4, 4.0 * e1, rtol=1e-9, atol=1e-12)

    def test_rank_bound(self):
        x = generate_field(ArParams(rho=0.9, n=64), seed=3)
        ev = sample_autocorr(x[:, :16]).eigenvalues()
        assert (ev < 1e-9 * ev[0]).sum() == 64 - 16

    def test_scree_dominance_over_gaussian(self):
        # AR leading eigenvalue beats the white-noise one (majority of seeds)
        wins = 0
        for s in range(20):
            ar = generate_field(ArParams(rho=0.945, n=128), seed=s)
            g = generate_field(ArParams(rho=0.0, n=128, q=1), seed=1000 + s)
            lam_ar = sample_autocorr((ar - ar.mean()) / ar.std()).eigenvalues()
            lam_g = sample_autocorr((g - g.mean()) / g.std()).eigenvalues()
            wins += lam_ar[0] > lam_g[0]
        assert wins > 10


class TestSampleAutocorr:
    def test_zero_block(self):
        out = sample_autocorr(np.zeros((8, 4)))
        assert np.all(out.matrix == 0)
        assert out.beta == 0.5

    def test_orthogonal_rows_give_identity(self):
        n = 6
        q, _ = np.linalg.qr(np.random.default_rng(0).standard_normal((n, n)))
        block = q * np.sqrt(n)
        assert np.allclose(sample_autocorr(block).matrix, np.eye(n))

    def test_trace_identity(self):
        # E[tr Sigma] / N = beta for unit-variance entries
        rng = np.random.default_rng(8)
        vals = []
        for _ in range(30):
            b = rng.standard_normal((32, 9))
            vals.append(np.trace(sample_autocorr(b).matrix) / 32)
        assert abs(np.mean(vals) / (9 / 32) - 1.0) < 0.15

    def test_rejects_wide_block(self):
        with pytest.raises(InvalidShape):
            sample_autocorr(np.ones((4, 8)))

    def test_standardize_flag(self):
        rng = np.random.default_rng(4)
        b = 3.0 + 2.0 * rng.standard_normal((16, 8))
        out = sample_autocorr(b, standardize=True)
        assert out.matrix.shape == (16, 16)
        with pytest.raises(ZeroVariance):
            sample_autocorr(np.full((4, 2), 7.0), standardize=True)


class TestCropView:
    def test_view_count_paper_configuration(self):
        assert view_count(32, 9) == 48

    def test_even_views_take_columns(self):
        z = np.arange(25.0).reshape(5, 5)
        assert np.array_equal(crop_view(z, 0, 3), z[:, 0:3])
        assert np.array_equal(crop_view(z, 2, 3), z[:, 1:4])

    def test_odd_views_take_transposed_columns(self):
        z = np.arange(25.0).reshape(5, 5)
        assert np.array_equal(crop_view(z, 1, 3), z.T[:, 0:3])
        assert np.array_equal(crop_view(z, 5, 3), z.T[:, 2:5])

    def test_out_of_range(self):
        z = np.zeros((5, 5))
        with pytest.raises(InvalidView):
            crop_view(z, view_count(5, 3), 3)
        with pytest.raises(InvalidView):
            crop_view(z, -1, 3)
