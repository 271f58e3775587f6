"""Combinatorics of Serre weights for GL2 over unramified places.

Characters of inertia are exponent residues, weights are digit vectors,
and every claim is checked by exhaustive integer sweeps.
"""

from .arithmetic import (CharExp, FieldContext, InputError, UnsupportedError, char,
                         digits_of, encode_char, inflate_to_niveau2)
from .galois import (Irreducible, Place, Reducible, compatible, compatible_irreducible,
                     compatible_reducible, global_weight_set, is_J_regular, is_ordinary,
                     local_weight_set)
from .kernels import BACKEND
from .types_jh import (Cuspidal, PrincipalSeries, jh_cuspidal, jh_principal,
                       type_irreducible, type_irreducible_simple, type_reducible,
                       verify_unique_jh)
from .weights import RegularityClass, SerreWeight, canonicalize_weight, classify, enumerate_weights

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "CharExp", "Cuspidal", "FieldContext", "InputError", "Irreducible", "Place",
    "PrincipalSeries", "Reducible", "RegularityClass", "SerreWeight", "UnsupportedError",
    "canonicalize_weight", "char", "classify", "compatible", "compatible_irreducible",
    "compatible_reducible", "digits_of", "encode_char", "enumerate_weights",
    "global_weight_set", "inflate_to_niveau2", "is_J_regular", "is_ordinary", "jh_cuspidal",
    "jh_principal", "local_weight_set", "type_irreducible", "type_irreducible_simple",
    "type_reducible", "verify_unique_jh",
]
