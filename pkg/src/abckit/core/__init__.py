from .dataset import Dataset, align_to_grid
from .distance import distance
from .model import ImplicitModel, SimulationError
from .params import ParamVector
from .particles import Particle, Population
from .priors import Beta, LogNormal, Marginal, Normal, PriorSpec, Uniform
from .rng import RNG_SCHEME, StreamTree, derive_stream

__all__ = [
    "Beta",
    "Dataset",
    "ImplicitModel",
    "LogNormal",
    "Marginal",
    "Normal",
    "ParamVector",
    "Particle",
    "Population",
    "PriorSpec",
    "RNG_SCHEME",
    "SimulationError",
    "StreamTree",
    "Uniform",
    "align_to_grid",
    "derive_stream",
    "distance",
]
