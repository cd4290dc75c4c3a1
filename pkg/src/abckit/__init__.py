"""Likelihood-free Bayesian calibration toolkit.

Adaptive SMC-ABC sampling for implicit models, a 2D off-lattice tumour
growth simulator as the flagship target, conjugate oracle models for
verification, and a reproducible CLI pipeline from observed data to
posterior-predictive bands.
"""

__version__ = "0.1.0"

from . import core, oracles, smc, vcbm  # noqa: F401
