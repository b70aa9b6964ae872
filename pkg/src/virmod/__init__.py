"""Exact construction and verification of the weight Virasoro modules N(M, alpha)
and their beta-twisted, non-weight deformations."""

__version__ = "0.1.0"

from .kernel import LaurentPoly, Q, UniPoly, binomial, laurent_mul, poly_shift
from .coeff import (AVector, ArDescriptor, Gamma, OneDim, QLambda, a_act,
                    ar_bracket, q_lambda_straighten, validate_descriptor)
from .action import (ModuleInstance, OmegaSpec, TwistedInstance, WeightVector,
                     c_act, d_act, dr_squared_shift, omega_apply, t_act, twisted_d_act)

__all__ = [
    "LaurentPoly", "Q", "UniPoly", "binomial", "laurent_mul", "poly_shift",
    "AVector", "ArDescriptor", "Gamma", "OneDim", "QLambda", "a_act", "ar_bracket",
    "q_lambda_straighten", "validate_descriptor",
    "ModuleInstance", "OmegaSpec", "TwistedInstance", "WeightVector", "c_act", "d_act",
    "dr_squared_shift", "omega_apply", "t_act", "twisted_d_act",
]
