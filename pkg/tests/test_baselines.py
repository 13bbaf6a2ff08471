import numpy as np
import pytest

from spcreg import (Dataset, center, make_case, pca, pcr_fit,
                    pcr_select_components)

from conftest import random_instance


class TestPca:
    def test_symmetric_design_equal_singular_values(self):
        x = np.array([[1.0, 1.0], [-1.0, 1.0], [1.0, -1.0], [-1.0, -1.0]])
        d = Dataset(x, np.zeros(4), centered=True)
        dec = pca(d)
        assert dec.d_singular[0] == pytest.approx(dec.d_singular[1])

    def test_repeated_column_reduces_rank(self):
        gen = np.random.default_rng(0)
        base = gen.standard_normal((12, 3))
        x = np.hstack([base, base[:, :1]])
        d = center(x, np.zeros(12))
        assert pca(d).q == 3

    def test_scores_identity(self):
        d = random_instance(1, n=8, p=4)
        dec = pca(d)
        assert np.max(np.abs(d.x @ dec.v - dec.scores)) < 1e-10

    def test_reconstruction(self):
        d = random_instance(2, n=10, p=5)
        dec = pca(d)
        approx = dec.u @ np.diag(dec.d_singular) @ dec.v.T
        assert np.max(np.abs(d.x - approx)) < 1e-8 * np.max(np.abs(d.x))

    def test_sign_convention(self):
        d = random_instance(3, n=15, p=4)
        dec = pca(d)
        for j in range(dec.q):
            col = dec.v[:, j]
            assert col[np.argmax(np.abs(col))] > 0.0

    def test_rejects_uncentered(self):
        d = Dataset(np.array([[1.0], [3.0]]), np.zeros(2), centered=False)
        with pytest.raises(ValueError, match="centered"):
            pca(d)


class TestPcrFit:
    def test_full_rank_matches_ols(self):
        d = random_instance(4, n=20, p=5, n_signal=3, noise=0.5)
        q = pca(d).q
        m = pcr_fit(d, q)
        design = np.column_stack([np.ones(d.n), d.x])
        ols = np.linalg.lstsq(design, d.y, rcond=None)[0]
        ols_pred = design @ ols
        assert np.max(np.abs(m.predict(d.x) - ols_pred)) < 1e-8

    def test_single_component_slope(self):
        gen = np.random.default_rng(5)
        x = gen.standard_normal((60, 4))
        x[:, 0] *= 4.0  # dominant direction
        xc = x - x.mean(axis=0)
        dec_probe = np.linalg.svd(xc, full_matrices=False)
        z1 = dec_probe[0][:, 0] * dec_probe[1][0]
        y = 3.0 * z1 + 0.01 * gen.standard_normal(60)
        d = Dataset(xc, y, centered=True)
        m = pcr_fit(d, 1)
        assert abs(m.coefs[0]) == pytest.approx(3.0, abs=0.01)

    def test_training_error_nonincreasing_in_k(self):
        d = random_instance(6, n=25, p=6, n_signal=3, noise=0.4)
        q = pca(d).q
        errs = []
        for k in range(1, q + 1):
            m = pcr_fit(d, k)
            resid = d.y - m.predict(d.x)
            errs.append(float(resid @ resid))
        assert all(errs[i + 1] <= errs[i] + 1e-10 for i in range(len(errs) - 1))

    def test_scores_uncorrelated(self):
        d = random_instance(7, n=30, p=5)
        dec = pca(d)
        z = dec.scores
        gram = z.T @ z
        off = gram - np.diag(np.diag(gram))
        assert np.max(np.abs(off)) < 1e-8

    def test_k_bounds(self):
        d = random_instance(8, n=10, p=3)
        with pytest.raises(ValueError):
            pcr_fit(d, 0)
        with pytest.raises(ValueError):
            pcr_fit(d, 4)


class TestPcrSelection:
    def test_recovers_single_component_signal(self):
        # dominant-direction signal with noise loud enough that extra
        # components only overfit
        gen = np.random.default_rng(9)
        x = gen.standard_normal((80, 5))
        x[:, 0] *= 5.0
        xc = x - x.mean(axis=0)
        u, s, _vt = np.linalg.svd(xc, full_matrices=False)
        y = 2.0 * u[:, 0] * s[0] + 2.0 * gen.standard_normal(80)
        d = Dataset(xc, y, centered=True)
        assert pcr_select_components(d, k_max=5, seed=0) == 1

    def test_budget_respected(self):
        d = random_instance(10, n=40, p=6, n_signal=4, noise=0.1)
        k = pcr_select_components(d, k_max=3, seed=1)
        assert 1 <= k <= 3

    def test_small_eigenvalue_signal_defeats_truncated_pcr(self):
        # response rides on a low-variance direction: a one-component fit
        # stays near the marginal response variance on fresh draws
        train, test = make_case("2", n=200, sigma=0.1, seed=11)
        means = train.x.mean(axis=0)
        d = Dataset(train.x - means, train.y, centered=True)
        m = pcr_fit(d, 1)
        pred = m.predict(test.x - means)
        resid = test.y - pred
        mse = float(resid @ resid) / test.n
        var_y = float(np.var(test.y))
        assert mse > 0.5 * var_y
