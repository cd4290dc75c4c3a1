"""Posterior-predictive sampling and pointwise quantile bands."""
from __future__ import annotations

import numpy as np

from ..core.model import SimulationError
from ..core.particles import Population
from ..core.rng import StreamTree
from ..parallel import parallel_map
from .sampler import LABEL_PREDICT

BAND_QUANTILES = (0.025, 0.5, 0.975)
_PREDICT_RETRIES = 100


def _predict_task(args):
    model, theta, seed, path, j = args
    last_error = None
    for attempt in range(_PREDICT_RETRIES):
        rng = StreamTree(seed, path).child(1 + j, attempt).generator()
        try:
            return np.asarray(model.simulate(theta, rng), dtype=float)
        except SimulationError as exc:
            last_error = exc
    raise SimulationError(f"predictive draw {j} failed {_PREDICT_RETRIES} times: {last_error}")


def posterior_predictive(pop: Population, model, m_draws: int,
                         stream: StreamTree, workers: int = 1
                         ) -> tuple[np.ndarray, dict[str, np.ndarray]]:
    """Simulate m_draws parameter draws from the population.

    Particles are drawn uniformly with replacement; each simulation gets a
    fresh derived stream. Returns the (m_draws, k) matrix of simulated
    summaries and the pointwise 2.5/50/97.5 percent bands.
    """
    if m_draws < 1:
        raise ValueError(f"m_draws must be >= 1, got {m_draws}")
    base = stream.child(LABEL_PREDICT)
    chooser = base.child(0).generator()
    picks = chooser.integers(0, len(pop), size=m_draws)
    tasks = [
        (model, pop.particles[int(i)].theta.values, base.seed, base.path, j)
        for j, i in enumerate(picks)
    ]
    draws = np.array(parallel_map(_predict_task, tasks, workers))
    lo, med, hi = (np.quantile(draws, q, axis=0) for q in BAND_QUANTILES)
    bands = {"q025": lo, "q50": med, "q975": hi}
    return draws, bands
