from .config import RunTrace, SmcConfig, TraceRecord
from .kernel import choose_mcmc_steps, proposal_factor, run_chain
from .predictive import posterior_predictive
from .sampler import (
    DegeneratePopulation,
    adapt_tolerance,
    initialize,
    mcmc_move,
    resample,
    run,
)

__all__ = [
    "DegeneratePopulation",
    "RunTrace",
    "SmcConfig",
    "TraceRecord",
    "adapt_tolerance",
    "choose_mcmc_steps",
    "initialize",
    "mcmc_move",
    "posterior_predictive",
    "proposal_factor",
    "resample",
    "run",
    "run_chain",
]
