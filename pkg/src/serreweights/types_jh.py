"""Tame inertial types attached to weights, and the Jordan-Hoelder factors
of the reductions of the corresponding GL2 representations."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

from . import kernels
from .arithmetic import (CharExp, FieldContext, InputError, UnsupportedError,
                         inflate_to_niveau2)
from .galois import (Irreducible, LocalGaloisData, Reducible, compatible,
                     is_full_subset)
from .weights import RegularityClass, SerreWeight, classify, is_regular


class InternalError(RuntimeError):
    """A formula produced a value outside its proven range."""


@dataclass(frozen=True, eq=False)
class PrincipalSeries:
    chi1: CharExp
    chi2: CharExp

    def pair(self) -> tuple[int, int]:
        return tuple(sorted((self.chi1.exp, self.chi2.exp)))

    def __eq__(self, other):
        return isinstance(other, PrincipalSeries) and self.chi1.ctx == other.chi1.ctx \
            and self.pair() == other.pair()

    def __hash__(self):
        return hash(("ps", self.pair()))

    def to_json(self) -> dict:
        return {"kind": "ps", "chi1": self.chi1.exp, "chi2": self.chi2.exp}


@dataclass(frozen=True, eq=False)
class Cuspidal:
    theta: CharExp

    def pair(self) -> tuple[int, int]:
        return tuple(sorted((self.theta.exp, self.theta.frobenius().exp)))

    def __eq__(self, other):
        return isinstance(other, Cuspidal) and self.theta.ctx == other.theta.ctx \
            and self.pair() == other.pair()

    def __hash__(self):
        return hash(("cusp", self.pair()))

    def to_json(self) -> dict:
        return {"kind": "cusp", "theta": self.theta.exp,
                "theta_conj": self.theta.frobenius().exp}


InertialType = Union[PrincipalSeries, Cuspidal]


@dataclass(frozen=True)
class CuspidalData:
    """Intermediate data of the cuspidal type: K_J, c, psi and the type."""

    K: int
    c: tuple[int, ...]
    psi: CharExp
    type: Cuspidal


@dataclass(frozen=True)
class JHFactor:
    K: int
    weight: SerreWeight

    def to_json(self) -> dict:
        return {"K": self.K, **self.weight.to_json()}


def _need_regular(ctx: FieldContext, w: SerreWeight):
    if len(w.b) != ctx.r or not is_regular(ctx, w):
        raise InputError("weight must be regular")


def _kernel_call(fn, *args):
    try:
        return fn(*args)
    except kernels.KernelError as exc:
        if "scalar" in str(exc):
            raise UnsupportedError("scalar principal series types are not supported") from exc
        raise InternalError(str(exc)) from exc


def c_vector_reducible(ctx: FieldContext, w: SerreWeight, J: int) -> tuple[int, ...]:
    _need_regular(ctx, w)
    return kernels.reducible_type(ctx.p, ctx.r, w.a_exp(ctx), w.b, J)[0]


def type_reducible(ctx: FieldContext, w: SerreWeight, J: int) -> PrincipalSeries:
    """I(chi, chi * prod omega^c) with chi = prod omega^a prod_(J^c) omega^(b-p)."""
    _need_regular(ctx, w)
    if not 0 <= J <= ctx.full_mask():
        raise InputError("J is not a subset of the embeddings")
    _, chi1, chi2 = kernels.reducible_type(ctx.p, ctx.r, w.a_exp(ctx), w.b, J)
    return PrincipalSeries(CharExp(ctx, 1, chi1), CharExp(ctx, 1, chi2))


def _need_full(ctx: FieldContext, J: int):
    if not is_full_subset(ctx, J):
        raise InputError("J is not a full subset")


def cuspidal_data(ctx: FieldContext, w: SerreWeight, J: int) -> CuspidalData:
    _need_regular(ctx, w)
    _need_full(ctx, J)
    K, c, psi, theta = kernels.cuspidal_type(ctx.p, ctx.r, w.a_exp(ctx), w.b, J)
    return CuspidalData(K, c, CharExp(ctx, 1, psi), Cuspidal(CharExp(ctx, 2, theta)))


def type_irreducible(ctx: FieldContext, w: SerreWeight, J: int) -> Cuspidal:
    """Cuspidal type built from K_J, the c_i and psi."""
    return cuspidal_data(ctx, w, J).type


def type_irreducible_simple(ctx: FieldContext, w: SerreWeight, J: int) -> Cuspidal:
    """Cuspidal type computed directly as prod omega_sigma^a prod_J omega_sigma^(b-p)."""
    _need_regular(ctx, w)
    _need_full(ctx, J)
    s1, _ = kernels.cuspidal_simple(ctx.p, ctx.r, w.a_exp(ctx), w.b, J)
    return Cuspidal(CharExp(ctx, 2, s1))


def _factors(ctx: FieldContext, raw) -> list[JHFactor]:
    return [JHFactor(K, SerreWeight(a, b)) for K, a, b in raw]


def jh_principal(ctx: FieldContext, chi1: CharExp, chi2: CharExp) -> list[JHFactor]:
    """Factors of the reduction of I(chi1, chi2), indexed by K in mask order.

    Factors with some b_K,i = 0 have dimension zero and are omitted.
    """
    for x in (chi1, chi2):
        if x.ctx != ctx or x.niveau != 1:
            raise InputError("principal series needs niveau-1 characters of this context")
    return _factors(ctx, _kernel_call(kernels.principal_factors, ctx.p, ctx.r, chi1.exp, chi2.exp))


def jh_cuspidal(ctx: FieldContext, c: Sequence[int], psi: CharExp) -> list[JHFactor]:
    """Factors of the reduction of Theta(psi~ omega_(sigma_r) prod omega_(sigma_i)^(c_i))."""
    c = tuple(c)
    if len(c) != ctx.r:
        raise InputError("c has the wrong length")
    if psi.ctx != ctx or psi.niveau != 1:
        raise InputError("psi must be a niveau-1 character of this context")
    return _factors(ctx, _kernel_call(kernels.cuspidal_factors, ctx.p, ctx.r, c, psi.exp))


def jh_of_type(ctx: FieldContext, w: SerreWeight, J: int, cuspidal: bool) -> list[JHFactor]:
    if cuspidal:
        d = cuspidal_data(ctx, w, J)
        return jh_cuspidal(ctx, d.c, d.psi)
    t = type_reducible(ctx, w, J)
    return jh_principal(ctx, t.chi1, t.chi2)


def total_dimension(factors: Sequence[JHFactor]) -> int:
    return sum(f.weight.dimension() for f in factors)


@dataclass
class UniqueJHReport:
    ok: bool
    type: InertialType
    factors: list[JHFactor]
    compatible: list[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"ok": self.ok, "type": self.type.to_json(),
                "factors": [f.to_json() for f in self.factors],
                "compatible_K": list(self.compatible)}


def verify_unique_jh(ctx: FieldContext, data: LocalGaloisData, w: SerreWeight,
                     witness: int) -> UniqueJHReport:
    """Check that w is the only JH factor of its type compatible with the data."""
    _need_regular(ctx, w)
    if witness not in compatible(ctx, data, w):
        raise InputError("witness is not a compatibility witness for this weight")
    if isinstance(data, Reducible):
        t = type_reducible(ctx, w, witness)
        factors = jh_principal(ctx, t.chi1, t.chi2)
    else:
        d = cuspidal_data(ctx, w, witness)
        t = d.type
        factors = jh_cuspidal(ctx, d.c, d.psi)
    hits = [f.K for f in factors if compatible(ctx, data, f.weight)]
    ok = len(hits) == 1 and next(f.weight for f in factors if f.K == hits[0]) == w
    return UniqueJHReport(ok, t, factors, hits)


@dataclass
class WeakRegularityReport:
    cases: int
    violations: list[tuple]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_weak_regularity_of_factors(ctx: FieldContext, bs=None) -> WeakRegularityReport:
    """Every JH factor of every type of every regular weight is weakly regular;
    also checks the total dimensions p^r + 1 and p^r - 1 on the way."""
    from .weights import b_vectors
    if bs is None:
        bs = b_vectors(ctx, "regular")
    cases, bad = _kernel_call(kernels.sweep_weak_regularity, ctx.p, ctx.r, list(bs))
    return WeakRegularityReport(cases, bad)


def factor_classes(ctx: FieldContext, factors: Sequence[JHFactor]) -> list[RegularityClass]:
    return [classify(ctx, f.weight) for f in factors]
