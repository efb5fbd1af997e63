"""Exact Grassmann-algebra engine for hidden-variable models of spin correlations."""

from .algebra import AlgebraContext, Multivector, algebra_new, mv_exp
from .berezin import (CONVENTION_ORDER, GrassmannMeasure, IntegrationError, NonNormalizableError,
                      berezin_multi, berezin_single, gaussian_pair_measure, measure_expect,
                      moment_matrix)
from .classical import (DiscreteHVModel, SearchConfig, max_anticorrelation_search, model_moments,
                        model_state, signed_eta_model, twirl)
from .multiparty import CouplingGraph, multiparty_gaussian_measure, multiparty_state, pairwise_correlations
from .parsing import ParseError, format_mv, parse_mv
from .quantum import (WernerClass, average_state, classify_werner, gmat_tensor, pauli,
                      spin_state_grassmann, spin_state_real, werner_laurent, werner_state)
from .scalars import ETA, Coefficient, GaussianRational

__all__ = [
    "AlgebraContext",
    "Multivector",
    "algebra_new",
    "mv_exp",
    "CONVENTION_ORDER",
    "GrassmannMeasure",
    "IntegrationError",
    "NonNormalizableError",
    "berezin_multi",
    "berezin_single",
    "gaussian_pair_measure",
    "measure_expect",
    "moment_matrix",
    "DiscreteHVModel",
    "SearchConfig",
    "max_anticorrelation_search",
    "model_moments",
    "model_state",
    "signed_eta_model",
    "twirl",
    "CouplingGraph",
    "multiparty_gaussian_measure",
    "multiparty_state",
    "pairwise_correlations",
    "ParseError",
    "format_mv",
    "parse_mv",
    "WernerClass",
    "average_state",
    "classify_werner",
    "gmat_tensor",
    "pauli",
    "spin_state_grassmann",
    "spin_state_real",
    "werner_laurent",
    "werner_state",
    "ETA",
    "Coefficient",
    "GaussianRational",
]

__version__ = "0.1.0"
