"""Decompression: surrogate evolution, field synthesis and error metrics."""

from orchid_wsindy.reconstruct.integrate import ATOL, RTOL, integrate_on_grid
from orchid_wsindy.reconstruct.metrics import ErrorSeries, component_sup_error, error_metrics
from orchid_wsindy.reconstruct.model import SurrogateModel, evolve, reconstruct_temporal
from orchid_wsindy.reconstruct.synthesis import SurrogateDecoder, project_stream, synthesize

__all__ = [
    "ATOL",
    "RTOL",
    "ErrorSeries",
    "SurrogateDecoder",
    "SurrogateModel",
    "component_sup_error",
    "error_metrics",
    "evolve",
    "integrate_on_grid",
    "project_stream",
    "reconstruct_temporal",
    "synthesize",
]
