from .config import VcbmConfig, VcbmParams
from .geometry import GeometryError, Neighbourhood, triangulate
from .growth import boundary_distance, proliferation_probability, step
from .mechanics import spring_displacements
from .simulate import TumourTrajectory, VcbmModel, simulate
from .state import (
    CANCER,
    HEALTHY,
    TissueState,
    hex_lattice_points,
    initial_state,
    pad_healthy_annulus,
)
from .volume import tumour_volume

__all__ = [
    "CANCER",
    "HEALTHY",
    "GeometryError",
    "Neighbourhood",
    "TissueState",
    "TumourTrajectory",
    "VcbmConfig",
    "VcbmModel",
    "VcbmParams",
    "boundary_distance",
    "hex_lattice_points",
    "initial_state",
    "pad_healthy_annulus",
    "proliferation_probability",
    "simulate",
    "spring_displacements",
    "step",
    "triangulate",
    "tumour_volume",
]
