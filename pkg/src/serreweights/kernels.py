"""Backend selection for the exponent kernels.

The compiled module is used when it imports and the context is small
enough for 64-bit intermediates; otherwise calls go to ``_pykernels``.
Set ``SERREWEIGHTS_PURE=1`` to force the pure-Python path.
"""

import os

from . import _pykernels as py
from ._pykernels import KernelError, digits, encode, full_subsets

try:
    if os.environ.get("SERREWEIGHTS_PURE"):
        raise ImportError("pure backend requested")
    from . import _ckernels as c
except ImportError:
    c = None

BACKEND = "cython" if c is not None else "python"

_NAMES = (
    "reducible_witnesses",
    "irreducible_witnesses",
    "principal_factors",
    "cuspidal_factors",
    "reducible_type",
    "cuspidal_type",
    "cuspidal_simple",
    "sweep_tau_identity",
    "sweep_weak_regularity",
)


def fits_native(p: int, r: int) -> bool:
    return r <= 12 and p ** (3 * r) < 2 ** 62


def backend_for(p: int, r: int):
    if c is not None and fits_native(p, r):
        return c
    return py


def _dispatch(name):
    pyf = getattr(py, name)
    cf = getattr(c, name) if c is not None else None

    def call(p, r, *args):
        if cf is not None and fits_native(p, r):
            return cf(p, r, *args)
        return pyf(p, r, *args)

    call.__name__ = name
    call.__doc__ = pyf.__doc__
    return call


reducible_witnesses = _dispatch("reducible_witnesses")
irreducible_witnesses = _dispatch("irreducible_witnesses")
principal_factors = _dispatch("principal_factors")
cuspidal_factors = _dispatch("cuspidal_factors")
reducible_type = _dispatch("reducible_type")
cuspidal_type = _dispatch("cuspidal_type")
cuspidal_simple = _dispatch("cuspidal_simple")
sweep_tau_identity = _dispatch("sweep_tau_identity")
sweep_weak_regularity = _dispatch("sweep_weak_regularity")

__all__ = ["BACKEND", "KernelError", "backend_for", "digits", "encode",
           "fits_native", "full_subsets", *_NAMES]
