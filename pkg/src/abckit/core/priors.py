"""Independent-marginal priors with unconstrained-space transforms.

Each marginal knows how to sample itself, evaluate its log density, and map
between its support and an unconstrained proposal space (bounded supports go
through a logit, positive supports through a log). The joint prior is the
product of marginals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import ParamVector

_NEG_INF = float("-inf")


def _sigmoid(z: float) -> float:
    if z >= 0:
        return 1.0 / (1.0 + math.exp(-z))
    ez = math.exp(z)
    return ez / (1.0 + ez)


class Marginal:
    """One-dimensional prior component."""

    def sample(self, rng: np.random.Generator) -> float:
        raise NotImplementedError

    def logpdf(self, x: float) -> float:
        raise NotImplementedError

    def to_unconstrained(self, x: float) -> float:
        raise NotImplementedError

    def from_unconstrained(self, z: float) -> float:
        raise NotImplementedError

    def log_jacobian(self, z: float) -> float:
        """log |d theta / d z| of the inverse transform, at z."""
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class Uniform(Marginal):
    low: float
    high: float

    def __post_init__(self):
        if not self.low < self.high:
            raise ValueError(f"Uniform requires low < high, got ({self.low}, {self.high})")

    def sample(self, rng):
        return float(rng.uniform(self.low, self.high))

    def logpdf(self, x):
        if self.low <= x <= self.high:
            return -math.log(self.high - self.low)
        return _NEG_INF

    def to_unconstrained(self, x):
        u = (x - self.low) / (self.high - self.low)
        u = min(max(u, 1e-300), 1.0 - 1e-16)
        return math.log(u / (1.0 - u))

    def from_unconstrained(self, z):
        return self.low + (self.high - self.low) * _sigmoid(z)

    def log_jacobian(self, z):
        s = _sigmoid(z)
        if s <= 0.0 or s >= 1.0:
            return _NEG_INF
        return math.log(self.high - self.low) + math.log(s) + math.log1p(-s)

    def describe(self):
        return f"uniform({self.low}, {self.high})"


@dataclass(frozen=True)
class Beta(Marginal):
    a: float
    b: float

    def __post_init__(self):
        if self.a <= 0 or self.b <= 0:
            raise ValueError(f"Beta requires a > 0 and b > 0, got ({self.a}, {self.b})")

    def sample(self, rng):
        return float(rng.beta(self.a, self.b))

    def logpdf(self, x):
        if x < 0.0 or x > 1.0:
            return _NEG_INF
        a, b = self.a, self.b
        log_norm = math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        # x**(a-1) terms at the boundary: finite only when the exponent is 0
        if x == 0.0:
            if a < 1.0:
                return math.inf
            term_a = 0.0 if a == 1.0 else _NEG_INF
        else:
            term_a = (a - 1.0) * math.log(x)
        if x == 1.0:
            if b < 1.0:
                return math.inf
            term_b = 0.0 if b == 1.0 else _NEG_INF
        else:
            term_b = (b - 1.0) * math.log1p(-x)
        return log_norm + term_a + term_b

    def to_unconstrained(self, x):
        x = min(max(x, 1e-300), 1.0 - 1e-16)
        return math.log(x / (1.0 - x))

    def from_unconstrained(self, z):
        return _sigmoid(z)

    def log_jacobian(self, z):
        s = _sigmoid(z)
        if s <= 0.0 or s >= 1.0:
            return _NEG_INF
        return math.log(s) + math.log1p(-s)

    def describe(self):
        return f"beta({self.a}, {self.b})"


@dataclass(frozen=True)
class LogNormal(Marginal):
    mu: float
    sigma: float

    def __post_init__(self):
        if self.sigma <= 0:
            raise ValueError(f"LogNormal requires sigma > 0, got {self.sigma}")

    def sample(self, rng):
        return float(rng.lognormal(self.mu, self.sigma))

    def logpdf(self, x):
        if x <= 0.0:
            return _NEG_INF
        lx = math.log(x)
        return (
            -lx
            - math.log(self.sigma)
            - 0.5 * math.log(2.0 * math.pi)
            - 0.5 * ((lx - self.mu) / self.sigma) ** 2
        )

    def to_unconstrained(self, x):
        return math.log(x)

    def from_unconstrained(self, z):
        # saturates to inf instead of raising, so extreme proposals are
        # rejected by the density rather than crashing the chain
        return float(np.exp(z))

    def log_jacobian(self, z):
        return z

    def describe(self):
        return f"lognormal({self.mu}, {self.sigma})"


@dataclass(frozen=True)
class Normal(Marginal):
    mu: float
    sigma: float

    def __post_init__(self):
        if self.sigma <= 0:
            raise ValueError(f"Normal requires sigma > 0, got {self.sigma}")

    def sample(self, rng):
        return float(rng.normal(self.mu, self.sigma))

    def logpdf(self, x):
        return (
            -math.log(self.sigma)
            - 0.5 * math.log(2.0 * math.pi)
            - 0.5 * ((x - self.mu) / self.sigma) ** 2
        )

    def to_unconstrained(self, x):
        return x

    def from_unconstrained(self, z):
        return z

    def log_jacobian(self, z):
        return 0.0

    def describe(self):
        return f"normal({self.mu}, {self.sigma})"


@dataclass(frozen=True)
class PriorSpec:
    """Joint prior: independent named marginals."""

    names: tuple[str, ...]
    marginals: tuple[Marginal, ...]

    def __post_init__(self):
        names = tuple(self.names)
        marginals = tuple(self.marginals)
        if len(names) != len(marginals):
            raise ValueError("names and marginals must have equal length")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate parameter names in {names}")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "marginals", marginals)

    @property
    def dim(self) -> int:
        return len(self.marginals)

    def sample(self, rng: np.random.Generator) -> ParamVector:
        values = np.array([m.sample(rng) for m in self.marginals])
        return ParamVector(self.names, values)

    def logpdf(self, theta) -> float:
        values = theta.values if isinstance(theta, ParamVector) else np.asarray(theta, dtype=float)
        if values.size != self.dim:
            raise ValueError(f"theta has {values.size} components, prior has {self.dim}")
        total = 0.0
        for m, x in zip(self.marginals, values):
            lp = m.logpdf(float(x))
            if lp == _NEG_INF:
                return _NEG_INF
            total += lp
        return total

    def to_unconstrained(self, values: np.ndarray) -> np.ndarray:
        return np.array(
            [m.to_unconstrained(float(x)) for m, x in zip(self.marginals, values)]
        )

    def from_unconstrained(self, z: np.ndarray) -> np.ndarray:
        return np.array(
            [m.from_unconstrained(float(v)) for m, v in zip(self.marginals, z)]
        )

    def log_jacobian(self, z: np.ndarray) -> float:
        return float(sum(m.log_jacobian(float(v)) for m, v in zip(self.marginals, z)))

    def describe(self) -> dict[str, str]:
        return {n: m.describe() for n, m in zip(self.names, self.marginals)}
