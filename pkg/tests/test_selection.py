import numpy as np
import pytest

from spcreg import (Dataset, FoldPlan, SolverState, SpcrConfig, center,
                    cross_validate, initial_parameters, lambda_grid,
                    make_folds, update_gamma)

from conftest import default_config, random_instance


class TestFoldPlan:
    def test_sizes_differ_by_at_most_one(self):
        for n, k in ((23, 5), (10, 3), (40, 7)):
            plan = make_folds(n, k, seed=0)
            sizes = np.bincount(plan.assignment)[1:]
            assert sizes.max() - sizes.min() <= 1
            assert sizes.sum() == n

    def test_ids_cover_one_to_k(self):
        plan = make_folds(12, 4, seed=3)
        assert set(plan.assignment.tolist()) == {1, 2, 3, 4}

    def test_deterministic_in_seed(self):
        a = make_folds(30, 5, seed=7)
        b = make_folds(30, 5, seed=7)
        c = make_folds(30, 5, seed=8)
        assert np.array_equal(a.assignment, b.assignment)
        assert not np.array_equal(a.assignment, c.assignment)

    def test_validation(self):
        with pytest.raises(ValueError):
            make_folds(5, 1, seed=0)
        with pytest.raises(ValueError):
            make_folds(3, 4, seed=0)
        with pytest.raises(ValueError, match="1..n_folds"):
            FoldPlan(n_folds=2, assignment=np.array([0, 1, 2, 1]), seed=0)
        with pytest.raises(ValueError, match="differ"):
            FoldPlan(n_folds=2, assignment=np.array([1, 1, 1, 2]), seed=0)


class TestLambdaGrid:
    def test_shape_and_endpoints(self):
        d = random_instance(100, n=30, p=5)
        bg, gg = lambda_grid(d, default_config(k=2))
        for grid in (bg, gg):
            assert grid.shape == (10,)
            assert np.all(np.diff(grid) > 0)
            assert grid[0] == pytest.approx(0.001 * grid[-1])

    def test_gamma_max_zeroes_first_sweep(self):
        # with loadings frozen at initialization, one coefficient sweep at the
        # returned maximum must produce an all-zero coefficient vector
        d = random_instance(101, n=40, p=6, n_signal=2, noise=0.2)
        c = default_config(k=3)
        _bg, gg = lambda_grid(d, c)
        cmax = SpcrConfig(k=3, lambda_beta=1.0, lambda_gamma=float(gg[-1]))
        state = SolverState(d, cmax)  # initialization point, gamma = 0
        for j in range(3):
            assert update_gamma(state, j) == 0.0
        # strictly below the maximum, some coefficient activates
        cless = SpcrConfig(k=3, lambda_beta=1.0,
                           lambda_gamma=float(gg[-1]) * 0.999)
        state = SolverState(d, cless)
        vals = [update_gamma(state, j) for j in range(3)]
        assert any(v != 0.0 for v in vals)

    def test_response_scaling_scales_gamma_grid(self):
        d = random_instance(102, n=25, p=4)
        d10 = Dataset(d.x, 10.0 * d.y, centered=True)
        c = default_config(k=2)
        bg1, gg1 = lambda_grid(d, c)
        bg10, gg10 = lambda_grid(d10, c)
        assert np.allclose(gg10, 10.0 * gg1, rtol=1e-12)
        assert np.allclose(bg10, bg1, rtol=1e-12)  # loadings grid ignores y

    def test_log_spacing(self):
        d = random_instance(103, n=25, p=4)
        bg, _gg = lambda_grid(d, default_config(k=2), spacing="log")
        ratios = bg[1:] / bg[:-1]
        assert np.allclose(ratios, ratios[0])
        assert bg[0] == pytest.approx(0.001 * bg[-1])

    def test_zero_threshold_falls_back_with_warning(self):
        gen = np.random.default_rng(104)
        x = gen.standard_normal((20, 3))
        d = center(x, np.zeros(20))  # response orthogonal to everything
        with pytest.warns(UserWarning, match="unit grid"):
            _bg, gg = lambda_grid(d, default_config(k=2))
        assert gg[-1] == pytest.approx(1.0)

    def test_pinned_coordinates_excluded_from_threshold(self):
        d = random_instance(105, n=25, p=4)
        full = lambda_grid(d, default_config(k=1))[0]
        wts = np.ones((4, 1))
        wts[:3, 0] = np.inf
        pinned = lambda_grid(d, SpcrConfig(k=1, lambda_beta=1.0,
                                           lambda_gamma=1.0, weights=wts))[0]
        assert pinned[-1] <= full[-1] + 1e-12


class TestCrossValidate:
    def test_intercept_only_cell_matches_direct_computation(self):
        d = random_instance(110, n=30, p=4, n_signal=2, noise=0.3)
        c = default_config(k=2)
        plan = make_folds(d.n, 5, seed=0)
        res = cross_validate(d, c, plan)
        # at (lambda_beta_max, lambda_gamma_max) every fold fit keeps gamma=0,
        # so held-out predictions collapse to the training mean
        want = 0.0
        for f in range(1, 6):
            tr = plan.assignment != f
            te = ~tr
            resid = d.y[te] - d.y[tr].mean()
            want += float(resid @ resid)
        want /= 5
        assert res.cv_error[-1, -1] == pytest.approx(want, rel=1e-12)

    def test_fold_relabeling_invariance(self):
        d = random_instance(111, n=24, p=3, n_signal=1, noise=0.3)
        c = default_config(k=1)
        plan = make_folds(d.n, 4, seed=5)
        relabel = np.array([0, 3, 1, 4, 2])[plan.assignment]  # permute ids
        plan2 = FoldPlan(n_folds=4, assignment=relabel, seed=5)
        r1 = cross_validate(d, c, plan)
        r2 = cross_validate(d, c, plan2)
        # identical folds, different processing order: equal up to summation
        # round-off
        assert np.allclose(r1.cv_error, r2.cv_error, rtol=1e-12, atol=1e-12)
        assert (r1.best_beta_index, r1.best_gamma_index) == \
               (r2.best_beta_index, r2.best_gamma_index)

    def test_row_duplication_keeps_per_sample_error(self):
        # tight solver tolerance: the symmetry holds up to convergence slack
        d = random_instance(112, n=16, p=3, n_signal=1, noise=0.4)
        c = SpcrConfig(k=1, lambda_beta=0.5, lambda_gamma=0.5, tol=1e-12,
                       max_sweeps=5000)
        plan = make_folds(d.n, 4, seed=2)
        doubled = Dataset(np.vstack([d.x, d.x]), np.concatenate([d.y, d.y]),
                          centered=True)
        plan2 = FoldPlan(n_folds=4,
                         assignment=np.concatenate([plan.assignment,
                                                    plan.assignment]),
                         seed=2)
        r1 = cross_validate(d, c, plan)
        r2 = cross_validate(doubled, c, plan2)
        # grids double with the data, fits coincide, fold SSE doubles
        assert np.allclose(r2.cv_error, 2.0 * r1.cv_error, rtol=1e-6)

    def test_all_cells_tie_selects_sparsest(self):
        # zero response: every cell fits the null model with zero error, so
        # the tie must break to the largest penalties
        gen = np.random.default_rng(113)
        d = center(gen.standard_normal((20, 3)), np.zeros(20))
        c = default_config(k=1)
        plan = make_folds(20, 4, seed=0)
        with pytest.warns(UserWarning):  # degenerate gamma grid
            res = cross_validate(d, c, plan)
        assert res.best_beta_index == 9
        assert res.best_gamma_index == 9

    def test_deterministic(self):
        d = random_instance(114, n=25, p=4, n_signal=2)
        c = default_config(k=2)
        plan = make_folds(d.n, 5, seed=9)
        r1 = cross_validate(d, c, plan)
        r2 = cross_validate(d, c, plan)
        assert r1.cv_error.tobytes() == r2.cv_error.tobytes()
        assert r1.best_model.b.tobytes() == r2.best_model.b.tobytes()

    def test_best_cell_is_grid_minimum(self):
        d = random_instance(115, n=30, p=4, n_signal=2, noise=0.2)
        res = cross_validate(d, default_config(k=2), make_folds(30, 5, seed=1))
        best = res.cv_error[res.best_beta_index, res.best_gamma_index]
        assert best <= res.cv_error[~res.flagged].min() + 1e-15

    def test_plan_must_cover_data(self):
        d = random_instance(116, n=20, p=3)
        plan = make_folds(10, 5, seed=0)
        with pytest.raises(ValueError, match="covers"):
            cross_validate(d, default_config(k=1), plan)

    def test_partial_flags_are_excluded_from_argmin(self):
        # a tight sweep cap leaves slow (small-penalty) cells unconverged;
        # they stay on the surface but cannot be selected
        d = random_instance(150, n=30, p=5, n_signal=2, noise=0.2)
        c = SpcrConfig(k=2, lambda_beta=1.0, lambda_gamma=1.0, max_sweeps=20)
        res = cross_validate(d, c, make_folds(d.n, 5, seed=0))
        assert res.flagged.any() and not res.flagged.all()
        assert not res.flagged[res.best_beta_index, res.best_gamma_index]
        unflagged_min = res.cv_error[~res.flagged].min()
        assert res.cv_error[res.best_beta_index, res.best_gamma_index] == \
               pytest.approx(unflagged_min)

    def test_nonconvergent_cells_flagged_and_all_flagged_raises(self):
        d = random_instance(117, n=20, p=4, n_signal=2)
        c = SpcrConfig(k=2, lambda_beta=1.0, lambda_gamma=1.0,
                       max_sweeps=1, tol=1e-300)  # nothing can converge
        plan = make_folds(d.n, 4, seed=0)
        with pytest.raises(RuntimeError, match="converge"):
            cross_validate(d, c, plan)

    def test_standardize_reuses_training_statistics(self):
        gen = np.random.default_rng(118)
        x = gen.standard_normal((30, 3)) * np.array([1.0, 5.0, 0.2])
        y = x[:, 0] + 0.1 * gen.standard_normal(30)
        d = center(x, y, scale=True)
        c = default_config(k=1)
        plan = make_folds(30, 5, seed=4)
        res = cross_validate(d, c, plan, standardize=True)
        assert np.all(np.isfinite(res.cv_error))
