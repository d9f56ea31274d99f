"""Weak-form sparse identification: quadrature, bases, accumulation and regression."""

from orchid_wsindy.sindy.accumulator import WeakSindyAccumulator, static_weak_system
from orchid_wsindy.sindy.bases import DegreePolicy, FourierTestBasis, MonomialBasis
from orchid_wsindy.sindy.quadrature import (
    PanelScheduler,
    QuadratureRule,
    StreamIntegrator,
    batch_integrate,
    composite_weights,
)
from orchid_wsindy.sindy.regression import (
    SparseCoefficients,
    fit_targets,
    render_equations,
    ridge_solve,
    stlsq,
)

__all__ = [
    "DegreePolicy",
    "FourierTestBasis",
    "MonomialBasis",
    "PanelScheduler",
    "QuadratureRule",
    "SparseCoefficients",
    "StreamIntegrator",
    "WeakSindyAccumulator",
    "batch_integrate",
    "composite_weights",
    "fit_targets",
    "render_equations",
    "ridge_solve",
    "static_weak_system",
    "stlsq",
]
