import numpy as np
import pytest

from abckit.core import derive_stream
from abckit.oracles import BinomialModel, GaussianMeanModel

from .oracles import beta_binomial_posterior_quadrature, gaussian_posterior_quadrature


class TestGaussianSimulate:
    def test_degenerate_noise_recovers_theta(self):
        model = GaussianMeanModel(sigma=1e-9, n_obs=5)
        s = model.simulate(np.array([2.5]), derive_stream(0, [0]))
        assert abs(s[0] - 2.5) < 1e-6

    def test_clt_bound(self):
        model = GaussianMeanModel(sigma=1.0, n_obs=10_000)
        s = model.simulate(np.array([0.0]), derive_stream(1, [0]))
        assert abs(s[0]) < 4 * 1.0 / np.sqrt(10_000)

    def test_reproducible(self):
        model = GaussianMeanModel()
        a = model.simulate(np.array([1.0]), derive_stream(7, [1]))
        b = model.simulate(np.array([1.0]), derive_stream(7, [1]))
        assert np.array_equal(a, b)


class TestGaussianPosterior:
    def test_conjugate_formula(self):
        model = GaussianMeanModel(sigma=1.0, n_obs=10, mu0=0.0, tau0=1.0)
        mean, sd = model.exact_posterior(1.0)
        assert mean == pytest.approx(10.0 / 11.0)
        assert sd**2 == pytest.approx(1.0 / 11.0)

    def test_matches_quadrature(self):
        model = GaussianMeanModel(sigma=0.7, n_obs=6, mu0=-1.0, tau0=2.0)
        mean, sd = model.exact_posterior(0.4)
        qm, qs = gaussian_posterior_quadrature(-1.0, 2.0, 0.7, 6, 0.4)
        assert mean == pytest.approx(qm, abs=1e-8)
        assert sd == pytest.approx(qs, abs=1e-8)

    def test_no_data_returns_prior(self):
        model = GaussianMeanModel(sigma=1.0, n_obs=0, mu0=0.3, tau0=1.7)
        assert model.exact_posterior(99.0) == (0.3, 1.7)

    def test_flat_prior_limit(self):
        model = GaussianMeanModel(sigma=1.0, n_obs=10, mu0=0.0, tau0=1e6)
        mean, sd = model.exact_posterior(1.0)
        assert mean == pytest.approx(1.0, abs=1e-6)
        assert sd**2 == pytest.approx(0.1, rel=1e-6)

    def test_prior_spec(self):
        model = GaussianMeanModel(mu0=2.0, tau0=3.0)
        prior = model.prior()
        theta = prior.sample(derive_stream(0, [0]))
        assert theta.names == ("mu",)
        assert prior.logpdf(theta) > float("-inf")


class TestBinomial:
    def test_symmetric_posterior(self):
        model = BinomialModel(n_trials=10, a=1.0, b=1.0)
        assert model.exact_posterior(5) == (6.0, 6.0)
        mean, _ = model.exact_posterior_moments(5)
        assert mean == pytest.approx(0.5)

    def test_boundary_conjugacy(self):
        model = BinomialModel(n_trials=10, a=2.0, b=3.0)
        assert model.exact_posterior(0) == (2.0, 13.0)

    def test_matches_quadrature(self):
        rng = np.random.default_rng(3)
        for _ in range(5):
            a = float(rng.uniform(0.5, 4.0))
            b = float(rng.uniform(0.5, 4.0))
            n = int(rng.integers(5, 40))
            y = int(rng.integers(0, n + 1))
            model = BinomialModel(n_trials=n, a=a, b=b)
            mean, sd = model.exact_posterior_moments(y)
            qm, qs = beta_binomial_posterior_quadrature(a, b, n, y)
            assert mean == pytest.approx(qm, abs=1e-6)
            assert sd == pytest.approx(qs, abs=1e-6)

    def test_simulate_range_and_determinism(self):
        model = BinomialModel(n_trials=50)
        s1 = model.simulate(np.array([0.4]), derive_stream(0, [0]))
        s2 = model.simulate(np.array([0.4]), derive_stream(0, [0]))
        assert np.array_equal(s1, s2)
        assert 0.0 <= s1[0] <= 1.0
        assert s1[0] * 50 == int(s1[0] * 50)

    def test_invalid_y(self):
        model = BinomialModel(n_trials=10)
        with pytest.raises(ValueError):
            model.exact_posterior(11)
