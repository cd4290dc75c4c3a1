"""Closed-form implicit models used to verify the sampler against exact answers.

Both models have conjugate posteriors, so the quality of an approximate
posterior produced by the sampler can be checked analytically: a Gaussian
with unknown mean and known observation noise, and a Binomial proportion
with a Beta prior. The summaries (sample mean, sample proportion) are
sufficient, so the ABC posterior converges to the conjugate one as the
tolerance shrinks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Beta, Normal, PriorSpec


@dataclass(frozen=True)
class GaussianMeanModel:
    """y_i ~ Normal(theta, sigma^2), theta ~ Normal(mu0, tau0^2); summary = mean."""

    sigma: float = 1.0
    n_obs: int = 10
    mu0: float = 0.0
    tau0: float = 1.0

    param_names: tuple[str, ...] = ("mu",)

    def __post_init__(self):
        if self.sigma <= 0 or self.tau0 <= 0:
            raise ValueError("sigma and tau0 must be positive")
        if self.n_obs < 0:
            raise ValueError("n_obs must be >= 0")

    def prior(self) -> PriorSpec:
        return PriorSpec(("mu",), (Normal(self.mu0, self.tau0),))

    def simulate(self, theta: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        if self.n_obs < 1:
            raise ValueError("simulation requires n_obs >= 1")
        draws = rng.normal(float(theta[0]), self.sigma, size=self.n_obs)
        return np.array([draws.mean()])

    def exact_posterior(self, y_bar: float) -> tuple[float, float]:
        """Conjugate posterior (mean, sd) after observing the sample mean."""
        if self.n_obs == 0:
            return self.mu0, self.tau0
        prec = 1.0 / self.tau0**2 + self.n_obs / self.sigma**2
        var = 1.0 / prec
        mean = var * (self.mu0 / self.tau0**2 + self.n_obs * y_bar / self.sigma**2)
        return mean, math.sqrt(var)


@dataclass(frozen=True)
class BinomialModel:
    """y ~ Binomial(n, theta), theta ~ Beta(a, b); summary = y / n."""

    n_trials: int = 50
    a: float = 1.0
    b: float = 1.0

    param_names: tuple[str, ...] = ("theta",)

    def __post_init__(self):
        if self.n_trials < 1:
            raise ValueError("n_trials must be >= 1")
        if self.a <= 0 or self.b <= 0:
            raise ValueError("a and b must be positive")

    def prior(self) -> PriorSpec:
        return PriorSpec(("theta",), (Beta(self.a, self.b),))

    def simulate(self, theta: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        p = min(max(float(theta[0]), 0.0), 1.0)
        y = rng.binomial(self.n_trials, p)
        return np.array([y / self.n_trials])

    def exact_posterior(self, y: int) -> tuple[float, float]:
        """Posterior Beta(a + y, b + n - y) as (a_post, b_post)."""
        if not 0 <= y <= self.n_trials:
            raise ValueError(f"y must be in [0, {self.n_trials}]")
        return self.a + y, self.b + self.n_trials - y

    def exact_posterior_moments(self, y: int) -> tuple[float, float]:
        a, b = self.exact_posterior(y)
        mean = a / (a + b)
        var = a * b / ((a + b) ** 2 * (a + b + 1.0))
        return mean, math.sqrt(var)
