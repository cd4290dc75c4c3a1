"""Adaptive SMC-ABC with replenishment.

The loop: initialize N particles from the prior, then repeatedly (i) shrink
the tolerance to the alpha-quantile of particle distances, retaining the
best floor(alpha N), (ii) resample the discarded slots uniformly from the
retained set, and (iii) diversify the duplicates with an adaptive
random-walk MCMC kernel holding the tolerance fixed. Stops on reaching a
target tolerance, exhausting the simulation budget, the MCMC acceptance
rate falling below a floor, or a population that can no longer improve.
"""
from __future__ import annotations

import logging
import math

import numpy as np

from ..core.distance import distance
from ..core.model import SimulationError
from ..core.params import ParamVector
from ..core.particles import Particle, Population
from ..core.rng import StreamTree
from ..parallel import parallel_map
from .config import RunTrace, SmcConfig, TraceRecord
from .kernel import choose_mcmc_steps, proposal_factor, run_chain

logger = logging.getLogger(__name__)

# Stream-label namespaces, fixed for reproducibility of outputs.
LABEL_INIT = 0
LABEL_MOVE = 1
LABEL_RESAMPLE = 2
LABEL_PREDICT = 3

RW_SCALE = 2.38  # optimal-scaling constant for random-walk proposals


class DegeneratePopulation(Exception):
    """All particle distances coincide; the tolerance cannot decrease."""


def _init_task(args):
    model, prior, s_obs, seed, path, index, retry_limit = args
    last_error = None
    for attempt in range(retry_limit):
        rng = StreamTree(seed, path).child(index, attempt).generator()
        theta = prior.sample(rng)
        try:
            summary = model.simulate(theta.values, rng)
        except SimulationError as exc:
            last_error = exc
            continue
        d = distance(summary, s_obs)
        return index, theta, np.asarray(summary, dtype=float), d, attempt + 1
    raise SimulationError(
        f"model failed at {retry_limit} consecutive prior draws "
        f"for particle {index}: {last_error}"
    )


def initialize(model, prior, s_obs: np.ndarray, config: SmcConfig,
               stream: StreamTree, workers: int = 1) -> tuple[Population, int]:
    """Draw N prior particles, simulate each, set epsilon to the largest distance.

    Returns the initial population and the number of simulations consumed
    (exactly N unless the model failed and fresh draws were retried).
    """
    base = stream.child(LABEL_INIT)
    tasks = [
        (model, prior, s_obs, base.seed, base.path, i, config.init_retry_limit)
        for i in range(config.n_particles)
    ]
    results = parallel_map(_init_task, tasks, workers)
    particles = []
    n_sims = 0
    for index, theta, summary, d, attempts in results:
        particles.append(Particle(theta, summary, d))
        n_sims += attempts
    epsilon = max(p.distance for p in particles)
    pop = Population(tuple(particles), epsilon=epsilon, iteration=0)
    pop.check_invariants()
    return pop, n_sims


def adapt_tolerance(pop: Population, alpha: float) -> tuple[float, list[Particle]]:
    """Next tolerance and the retained particles.

    The new tolerance is the distance at sorted rank floor(alpha N) (ties
    broken by particle index), so exactly that many particles are retained
    and the tolerance is an attained distance. Raises DegeneratePopulation
    when no strict decrease is possible.
    """
    n = len(pop)
    n_alpha = math.floor(alpha * n)
    if not 1 <= n_alpha < n:
        raise ValueError(f"alpha={alpha} leaves no particles to retain or replenish")
    distances = pop.distances()
    order = np.argsort(distances, kind="stable")
    epsilon_next = float(distances[order[n_alpha - 1]])
    if epsilon_next >= pop.epsilon:
        raise DegeneratePopulation(
            f"tolerance cannot decrease below {pop.epsilon} "
            f"(alpha-quantile is {epsilon_next})"
        )
    retained = [pop.particles[i] for i in order[:n_alpha]]
    return epsilon_next, retained


def resample(retained: list[Particle], n: int, epsilon: float, iteration: int,
             rng: np.random.Generator) -> tuple[Population, list[int]]:
    """Replenish to n particles: retained first, then uniform resamples.

    Returns the population and the indices of the resampled duplicates (the
    slots the move kernel must diversify).
    """
    if not retained:
        raise ValueError("retained set is empty")
    n_alpha = len(retained)
    picks = rng.integers(0, n_alpha, size=n - n_alpha)
    particles = list(retained) + [retained[int(j)] for j in picks]
    pop = Population(tuple(particles), epsilon=epsilon, iteration=iteration)
    pop.check_invariants()
    return pop, list(range(n_alpha, n))


def _move_task(args):
    (model, prior, s_obs, seed, path, index, theta, summary, dist,
     epsilon, r_steps, chol) = args
    rng = StreamTree(seed, path).child(index).generator()
    result = run_chain(model, prior, s_obs, theta, summary, dist,
                       epsilon, r_steps, chol, rng)
    return index, result


def mcmc_move(pop: Population, moved_indices: list[int], epsilon: float,
              prior, model, r_steps: int, stream: StreamTree,
              chol: np.ndarray, s_obs: np.ndarray,
              workers: int = 1) -> tuple[Population, float, int, int]:
    """Diversify the given particles with r_steps MH steps each.

    Returns (population, acceptance rate, simulations used, model failures).
    """
    if r_steps < 1:
        raise ValueError(f"r_steps must be >= 1, got {r_steps}")
    tasks = [
        (model, prior, s_obs, stream.seed, stream.path, i,
         pop.particles[i].theta.values, pop.particles[i].summary,
         pop.particles[i].distance, epsilon, r_steps, chol)
        for i in moved_indices
    ]
    results = parallel_map(_move_task, tasks, workers)
    particles = list(pop.particles)
    names = pop.param_names()
    accepted = 0
    n_sims = 0
    n_failures = 0
    for index, res in results:
        particles[index] = Particle(ParamVector(names, res.theta), res.summary, res.dist)
        accepted += res.accepted
        n_sims += res.n_sims
        n_failures += res.n_failures
    total_steps = r_steps * len(moved_indices)
    acceptance_rate = accepted / total_steps if total_steps else 1.0
    new_pop = Population(tuple(particles), epsilon=epsilon, iteration=pop.iteration)
    new_pop.check_invariants()
    return new_pop, acceptance_rate, n_sims, n_failures


def _proposal_cholesky(pop: Population, prior) -> np.ndarray:
    """Scaled factor of the population covariance in unconstrained space."""
    thetas = pop.theta_matrix()
    z = np.array([prior.to_unconstrained(row) for row in thetas])
    dim = z.shape[1]
    cov = np.atleast_2d(np.cov(z, rowvar=False))
    cov = cov * (RW_SCALE**2 / dim)
    return proposal_factor(cov)


def run(model, prior, y_obs, config: SmcConfig, seed,
        workers: int = 1) -> tuple[Population, RunTrace]:
    """Full adaptive SMC-ABC run; returns final population and trace.

    ``y_obs`` is the observed summary vector; ``seed`` is a master seed or a
    StreamTree. Identical (model, prior, y_obs, config, seed) give
    bit-identical results for any worker count.
    """
    stream = seed if isinstance(seed, StreamTree) else StreamTree(int(seed))
    s_obs = np.asarray(y_obs, dtype=float).reshape(-1)
    if not np.all(np.isfinite(s_obs)):
        raise ValueError("observed summary contains non-finite values")

    pop, n_sims = initialize(model, prior, s_obs, config, stream, workers)
    trace = RunTrace()
    trace.append(TraceRecord(0, pop.epsilon, pop.n_unique(), 1.0, 0, n_sims))
    logger.info("initialized: epsilon=%.6g simulations=%d", pop.epsilon, n_sims)

    p_acc = config.initial_acceptance
    iteration = 0
    while True:
        if config.target_epsilon is not None and pop.epsilon <= config.target_epsilon:
            trace.stop_reason = "target_epsilon"
            break
        if n_sims >= config.max_simulations:
            trace.stop_reason = "max_simulations"
            break
        try:
            epsilon_next, retained = adapt_tolerance(pop, config.alpha)
        except DegeneratePopulation as exc:
            logger.info("stopping: %s", exc)
            trace.stop_reason = "degenerate_population"
            break

        iteration += 1
        pop, duplicates = resample(
            retained, config.n_particles, epsilon_next, iteration,
            stream.child(LABEL_RESAMPLE, iteration).generator(),
        )
        moved = list(range(config.n_particles)) if config.move_retained else duplicates

        r_steps = choose_mcmc_steps(p_acc, config.mcmc_tuning_c, config.r_max)
        remaining = config.max_simulations - n_sims
        if r_steps * len(moved) > remaining:
            r_steps = max(1, remaining // len(moved))

        chol = _proposal_cholesky(pop, prior)
        pop, p_acc, used, failures = mcmc_move(
            pop, moved, epsilon_next, prior, model, r_steps,
            stream.child(LABEL_MOVE, iteration), chol, s_obs, workers,
        )
        n_sims += used
        trace.append(
            TraceRecord(iteration, pop.epsilon, pop.n_unique(), p_acc, r_steps, n_sims)
        )
        logger.info(
            "iteration %d: epsilon=%.6g acc=%.4f R=%d simulations=%d",
            iteration, pop.epsilon, p_acc, r_steps, n_sims,
        )
        if failures:
            logger.warning("iteration %d: %d proposal simulations failed", iteration, failures)
        if p_acc < config.acceptance_floor:
            trace.stop_reason = "acceptance_floor"
            break
    return pop, trace
