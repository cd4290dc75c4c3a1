"""MCMC move kernel targeting the tolerance-truncated posterior.

Proposals are Gaussian random walks in unconstrained space (logit for
bounded supports, log for positive ones), so the Metropolis-Hastings ratio
is the prior ratio with the transform Jacobian correction; the indicator
kernel then requires the proposed simulation to land within the current
tolerance.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from ..core.distance import distance
from ..core.model import SimulationError

logger = logging.getLogger(__name__)

_NEG_INF = float("-inf")


def choose_mcmc_steps(p_acc_previous: float, c: float, r_max: int = 500) -> int:
    """Steps so a stuck duplicate moves at least once with probability 1 - c.

    R = ceil(log c / log(1 - p)); clamped to [1, r_max], with p = 0 mapping
    to r_max and p = 1 to a single step.
    """
    if not 0.0 <= p_acc_previous <= 1.0:
        raise ValueError(f"acceptance rate must be in [0,1], got {p_acc_previous}")
    if not 0.0 < c < 1.0:
        raise ValueError(f"tuning constant must be in (0,1), got {c}")
    if p_acc_previous == 0.0:
        return r_max
    if p_acc_previous == 1.0:
        return 1
    r = math.ceil(math.log(c) / math.log1p(-p_acc_previous))
    return int(min(max(r, 1), r_max))


def proposal_factor(cov: np.ndarray) -> np.ndarray:
    """Lower-triangular factor L with L L^T = cov, tolerant of rank deficiency.

    A population collapsed in some directions gives a singular covariance;
    eigenvalue clipping keeps the factor defined (zero variance directions
    propose no movement, which the caller's identity-proposal semantics rely
    on).
    """
    cov = np.atleast_2d(np.asarray(cov, dtype=float))
    if not np.all(np.isfinite(cov)):
        raise ValueError("proposal covariance has non-finite entries")
    if not np.any(cov):
        return np.zeros_like(cov)
    try:
        return np.linalg.cholesky(cov)
    except np.linalg.LinAlgError:
        vals, vecs = np.linalg.eigh(cov)
        vals = np.clip(vals, 0.0, None)
        return vecs @ np.diag(np.sqrt(vals))


@dataclass
class ChainResult:
    theta: np.ndarray
    summary: np.ndarray
    dist: float
    accepted: int
    steps: int
    n_sims: int
    n_failures: int


def run_chain(model, prior, s_obs, theta, summary, dist, epsilon,
              r_steps, chol, rng) -> ChainResult:
    """R Metropolis-Hastings steps on one particle at fixed tolerance.

    Proposals with zero prior density are rejected without simulating
    (counted as steps, not simulations); a model failure on a proposal is
    a rejection.
    """
    theta = np.array(theta, dtype=float)
    summary = np.array(summary, dtype=float)
    dim = theta.size
    z = prior.to_unconstrained(theta)
    log_post = prior.logpdf(theta) + prior.log_jacobian(z)
    accepted = 0
    n_sims = 0
    n_failures = 0
    for _ in range(r_steps):
        z_prop = z + chol @ rng.standard_normal(dim)
        theta_prop = prior.from_unconstrained(z_prop)
        lp_prop = prior.logpdf(theta_prop)
        if lp_prop == _NEG_INF:
            continue
        try:
            s_prop = model.simulate(theta_prop, rng)
        except SimulationError as exc:
            n_sims += 1
            n_failures += 1
            logger.debug("proposal simulation failed, rejecting: %s", exc)
            continue
        n_sims += 1
        d_prop = distance(s_prop, s_obs)
        if d_prop > epsilon:
            continue
        log_ratio = (lp_prop + prior.log_jacobian(z_prop)) - log_post
        if log_ratio >= 0.0 or math.log(rng.random()) <= log_ratio:
            theta, summary, dist = theta_prop, np.asarray(s_prop, dtype=float), d_prop
            z = z_prop
            log_post = lp_prop + prior.log_jacobian(z_prop)
            accepted += 1
    return ChainResult(theta, summary, dist, accepted, r_steps, n_sims, n_failures)
