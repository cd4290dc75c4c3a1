"""End-to-end sampler behaviour on oracle models."""
from dataclasses import dataclass

import numpy as np
import pytest

from abckit.core import Normal, PriorSpec, StreamTree
from abckit.oracles import GaussianMeanModel
from abckit.smc import SmcConfig, run


@dataclass(frozen=True)
class ConstantModel:
    value: float = 1.0
    param_names: tuple = ("x",)

    def simulate(self, theta, rng):
        return np.array([self.value])


def _gaussian_setup():
    model = GaussianMeanModel(sigma=1.0, n_obs=10, mu0=0.0, tau0=1.0)
    return model, model.prior(), np.array([1.0])


def test_target_at_initial_epsilon_returns_zero_iterations():
    model, prior, y = _gaussian_setup()
    config = SmcConfig(n_particles=50, target_epsilon=1e18, max_simulations=10_000)
    pop, trace = run(model, prior, y, config, seed=1)
    assert trace.stop_reason == "target_epsilon"
    assert len(trace) == 1  # only the initialization record
    assert pop.iteration == 0


def test_budget_equal_to_n_stops_after_initialization():
    model, prior, y = _gaussian_setup()
    config = SmcConfig(n_particles=50, max_simulations=50)
    pop, trace = run(model, prior, y, config, seed=1)
    assert trace.stop_reason == "max_simulations"
    assert trace.total_simulations == 50
    assert len(trace) == 1


def test_degenerate_model_stops_immediately():
    # every simulation matches the data exactly: epsilon 0 at initialization
    model = ConstantModel(value=1.0)
    prior = PriorSpec(("x",), (Normal(0.0, 1.0),))
    config = SmcConfig(n_particles=20, max_simulations=10_000)
    pop, trace = run(model, prior, np.array([1.0]), config, seed=3)
    assert pop.epsilon == 0.0
    assert trace.stop_reason == "degenerate_population"
    assert len(trace) == 1


def test_trace_monotonicity_and_population_size():
    model, prior, y = _gaussian_setup()
    config = SmcConfig(n_particles=100, target_epsilon=0.15, max_simulations=50_000)
    pop, trace = run(model, prior, y, config, seed=5)
    records = list(trace)
    assert len(records) >= 3
    eps = [r.epsilon for r in records]
    assert all(a > b for a, b in zip(eps, eps[1:]))
    sims = [r.cumulative_simulations for r in records]
    assert all(a <= b for a, b in zip(sims, sims[1:]))
    assert len(pop) == 100
    assert all(p.distance <= pop.epsilon for p in pop.particles)
    assert trace.stop_reason == "target_epsilon"
    # each particle's stored distance is the distance of its stored summary
    for p in pop.particles:
        assert p.distance == float(np.abs(p.summary[0] - 1.0))


def test_posterior_matches_conjugate_closed_form():
    model, prior, y = _gaussian_setup()
    config = SmcConfig(n_particles=500, target_epsilon=0.1, max_simulations=200_000)
    pop, trace = run(model, prior, y, config, seed=11)
    exact_mean, exact_sd = model.exact_posterior(1.0)
    thetas = pop.theta_matrix()[:, 0]
    assert abs(thetas.mean() - exact_mean) < 0.08
    assert abs(thetas.std() - exact_sd) < 0.25 * exact_sd


def test_bit_identical_reruns():
    model, prior, y = _gaussian_setup()
    config = SmcConfig(n_particles=60, target_epsilon=0.3, max_simulations=30_000)
    pop1, trace1 = run(model, prior, y, config, seed=9)
    pop2, trace2 = run(model, prior, y, config, seed=9)
    assert np.array_equal(pop1.theta_matrix(), pop2.theta_matrix())
    assert np.array_equal(pop1.distances(), pop2.distances())
    assert [r.epsilon for r in trace1] == [r.epsilon for r in trace2]


def test_worker_count_does_not_change_results():
    model, prior, y = _gaussian_setup()
    config = SmcConfig(n_particles=60, target_epsilon=0.3, max_simulations=30_000)
    pop1, trace1 = run(model, prior, y, config, seed=9, workers=1)
    pop2, trace2 = run(model, prior, y, config, seed=9, workers=4)
    assert np.array_equal(pop1.theta_matrix(), pop2.theta_matrix())
    assert np.array_equal(pop1.distances(), pop2.distances())
    assert [r.cumulative_simulations for r in trace1] == [
        r.cumulative_simulations for r in trace2
    ]


def test_stream_tree_seed_equivalence():
    model, prior, y = _gaussian_setup()
    config = SmcConfig(n_particles=50, target_epsilon=0.5, max_simulations=20_000)
    pop1, _ = run(model, prior, y, config, seed=4)
    pop2, _ = run(model, prior, y, config, seed=StreamTree(4))
    assert np.array_equal(pop1.theta_matrix(), pop2.theta_matrix())


def test_non_finite_observed_summary_rejected():
    model, prior, _ = _gaussian_setup()
    config = SmcConfig(n_particles=50)
    with pytest.raises(ValueError, match="finite"):
        run(model, prior, np.array([np.nan]), config, seed=1)


def test_config_validation():
    with pytest.raises(ValueError, match="n_particles"):
        SmcConfig(n_particles=5)
    with pytest.raises(ValueError, match="alpha"):
        SmcConfig(alpha=1.5)
    with pytest.raises(ValueError, match="max_simulations"):
        SmcConfig(n_particles=100, max_simulations=50)
