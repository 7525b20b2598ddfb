"""Discrete Frechet distance and Voronoi lower-bound constructions for curves."""

from .constructions import (
    ConstructionParams,
    CurveFamily,
    build_family,
    default_params,
    predicted_neighbors,
    synthesize_query,
    validate_params,
)
from .dfd import Curve, discrete_frechet, discrete_frechet_bruteforce, discrete_frechet_decision, embed
from .verifier import exact_verify_1d, nearest_neighbor_set, oracle_region_count, verify_all, verify_tuple

__version__ = "0.1.0"
