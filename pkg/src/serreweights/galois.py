"""Local mod p Galois data restricted to inertia and weight compatibility."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from . import kernels
from .arithmetic import CharExp, FieldContext, InputError, mask_members
from .weights import SerreWeight, b_range, enumerate_weights, is_regular


@dataclass(frozen=True)
class Reducible:
    """rho restricted to inertia is psi1 (+) psi2, with psi1 the sub."""

    psi1: CharExp
    psi2: CharExp

    def __post_init__(self):
        for c in (self.psi1, self.psi2):
            if not isinstance(c, CharExp) or c.niveau != 1:
                raise InputError("reducible data needs two niveau-1 characters")
        if self.psi1.ctx != self.psi2.ctx:
            raise InputError("characters from different contexts")

    @property
    def ctx(self) -> FieldContext:
        return self.psi1.ctx

    def to_json(self) -> dict:
        return {"kind": "reducible", "p": self.ctx.p, "r": self.ctx.r,
                "psi1": self.psi1.exp, "psi2": self.psi2.exp}


@dataclass(frozen=True)
class Irreducible:
    """rho restricted to inertia is theta (+) theta^(p^r) for a niveau-2 theta."""

    theta: CharExp

    def __post_init__(self):
        if not isinstance(self.theta, CharExp) or self.theta.niveau != 2:
            raise InputError("irreducible data needs a niveau-2 character")
        if self.theta.frobenius() == self.theta:
            raise InputError("theta factors through niveau 1, so the data is not irreducible")

    @property
    def ctx(self) -> FieldContext:
        return self.theta.ctx

    def to_json(self) -> dict:
        return {"kind": "irreducible", "p": self.ctx.p, "r": self.ctx.r,
                "theta": self.theta.exp}


LocalGaloisData = Union[Reducible, Irreducible]


class NotInWeightSet(InputError):
    pass


def _check_ctx(ctx: FieldContext, data: LocalGaloisData):
    if data.ctx != ctx:
        raise InputError("data belongs to a different field context")


def _check_weight(ctx: FieldContext, w: SerreWeight):
    if len(w.a) != ctx.r or len(w.b) != ctx.r:
        raise InputError("weight has the wrong number of embeddings")


def compatible_reducible(ctx: FieldContext, data: Reducible, w: SerreWeight) -> list[int]:
    """Niveau-1 masks J with psi1 = prod omega^a prod_J omega^b and
    psi2 = prod omega^a prod_(J^c) omega^b, ascending."""
    _check_ctx(ctx, data)
    _check_weight(ctx, w)
    return kernels.reducible_witnesses(ctx.p, ctx.r, w.a_exp(ctx), w.b,
                                       data.psi1.exp, data.psi2.exp)


def compatible_irreducible(ctx: FieldContext, data: Irreducible, w: SerreWeight) -> list[int]:
    """Full niveau-2 masks J matching {theta, theta^(p^r)}, ascending."""
    _check_ctx(ctx, data)
    _check_weight(ctx, w)
    return kernels.irreducible_witnesses(ctx.p, ctx.r, w.a_exp(ctx), w.b, data.theta.exp)


def compatible(ctx: FieldContext, data: LocalGaloisData, w: SerreWeight) -> list[int]:
    if isinstance(data, Reducible):
        return compatible_reducible(ctx, data, w)
    if isinstance(data, Irreducible):
        return compatible_irreducible(ctx, data, w)
    raise InputError("unknown Galois data")


def local_weight_set(ctx: FieldContext, data: LocalGaloisData,
                     regular_only: bool = False) -> list[tuple[SerreWeight, list[int]]]:
    out = []
    for w in enumerate_weights(ctx, "regular" if regular_only else None):
        wit = compatible(ctx, data, w)
        if wit:
            out.append((w, wit))
    return out


def is_ordinary(ctx: FieldContext, data: LocalGaloisData, w: SerreWeight) -> bool:
    if isinstance(data, Irreducible):
        _check_ctx(ctx, data)
        return False
    wit = compatible_reducible(ctx, data, w)
    if not wit:
        raise NotInWeightSet("weight is not compatible with the data")
    return 0 in wit or ctx.full_mask() in wit


@dataclass(frozen=True)
class Place:
    name: str
    ctx: FieldContext
    data: LocalGaloisData


def global_weight_set(places: Sequence[Place], regular_only: bool = False
                      ) -> list[tuple[tuple[SerreWeight, ...], tuple[str, ...]]]:
    """Product of the local weight sets; each entry carries the places
    where its component is ordinary."""
    if not places:
        raise InputError("need at least one place")
    names = [pl.name for pl in places]
    if len(set(names)) != len(names):
        raise InputError("place names must be distinct")
    local = []
    for pl in places:
        rows = []
        for w, wit in local_weight_set(pl.ctx, pl.data, regular_only):
            ordinary = isinstance(pl.data, Reducible) and (0 in wit or pl.ctx.full_mask() in wit)
            rows.append((w, ordinary))
        local.append(rows)
    out = []
    for combo in itertools.product(*local):
        ws = tuple(w for w, _ in combo)
        tags = tuple(pl.name for pl, (_, o) in zip(places, combo) if o)
        out.append((ws, tags))
    return out


def j_regular_difference(ctx: FieldContext, J: int, b: Sequence[int]) -> int:
    """Exponent of prod_J omega^b prod_(J^c) omega^(-b)."""
    s = 0
    for i in range(1, ctx.r + 1):
        t = b[i - 1] * ctx.tau_exp(i)
        s += t if (J >> (i % ctx.r)) & 1 else -t
    return s % ctx.e1


def is_J_regular(ctx: FieldContext, data: Reducible, J: int
                 ) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Whether psi1/psi2 = prod_J omega^b prod_(J^c) omega^(-b) for some
    regular b; the first such b in lexicographic order is returned."""
    _check_ctx(ctx, data)
    if not 0 <= J <= ctx.full_mask():
        raise InputError("J is not a subset of the embeddings")
    target = (data.psi1.exp - data.psi2.exp) % ctx.e1
    for b in itertools.product(b_range(ctx.p, "regular"), repeat=ctx.r):
        if j_regular_difference(ctx, J, b) == target:
            return True, b
    return False, None


def j_regular_differences(ctx: FieldContext) -> frozenset[int]:
    """All exponents psi1/psi2 that are J-regular for some J."""
    out = set()
    for J in range(ctx.full_mask() + 1):
        for b in itertools.product(b_range(ctx.p, "regular"), repeat=ctx.r):
            out.add(j_regular_difference(ctx, J, b))
    return frozenset(out)


def witness_members(ctx: FieldContext, J: int, niveau: int = 1) -> list[int]:
    """Members of a witness mask as embedding indices (tau in 1..r, sigma in 0..2r-1)."""
    if niveau == 1:
        return mask_members(J, ctx.r, one_based=True)
    return mask_members(J, 2 * ctx.r, one_based=False)


def is_full_subset(ctx: FieldContext, J: int) -> bool:
    r = ctx.r
    if J < 0 or J >> (2 * r):
        return False
    return all(((J >> j) & 1) + ((J >> (j + r)) & 1) == 1 for j in range(r))
