"""Serre weights sigma_{a,b} = tensor_tau det^(a_tau) Sym^(b_tau - 1) k^2."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from . import kernels
from .arithmetic import FieldContext, InputError


class RegularityClass(enum.Enum):
    REGULAR = "regular"
    WEAKLY_REGULAR_ONLY = "weakly-regular-only"
    NOT_WEAKLY_REGULAR = "not-weakly-regular"


@dataclass(frozen=True, order=True)
class SerreWeight:
    a: tuple[int, ...]
    b: tuple[int, ...]

    def to_json(self) -> dict:
        return {"a": list(self.a), "b": list(self.b)}

    def a_exp(self, ctx: FieldContext) -> int:
        return kernels.encode(ctx.p, self.a) % ctx.e1

    def dimension(self) -> int:
        d = 1
        for x in self.b:
            d *= x
        return d


def _as_tuple(v: Sequence[int], r: int, name: str) -> tuple[int, ...]:
    try:
        t = tuple(int(x) for x in v)
    except (TypeError, ValueError):
        raise InputError(f"{name} must be a sequence of integers")
    if len(t) != r:
        raise InputError(f"{name} must have length {r}, got {len(t)}")
    return t


def canonicalize_weight(ctx: FieldContext, a: Sequence[int], b: Sequence[int]) -> SerreWeight:
    """Reduce a through its character prod omega^a; b must lie in [1, p]."""
    a = _as_tuple(a, ctx.r, "a")
    b = _as_tuple(b, ctx.r, "b")
    for x in b:
        if not 1 <= x <= ctx.p:
            raise InputError(f"b entries must lie in [1, {ctx.p}], got {x}")
    a_exp = kernels.encode(ctx.p, a) % ctx.e1
    return SerreWeight(kernels.digits(ctx.p, ctx.r, a_exp), b)


def weight_from_exp(ctx: FieldContext, a_exp: int, b: Sequence[int]) -> SerreWeight:
    return SerreWeight(kernels.digits(ctx.p, ctx.r, a_exp % ctx.e1), tuple(b))


def classify_b(p: int, b: Sequence[int]) -> RegularityClass:
    if all(2 <= x <= p - 2 for x in b):
        return RegularityClass.REGULAR
    if all(1 <= x <= p - 1 for x in b):
        return RegularityClass.WEAKLY_REGULAR_ONLY
    return RegularityClass.NOT_WEAKLY_REGULAR


def classify(ctx: FieldContext, w: SerreWeight) -> RegularityClass:
    return classify_b(ctx.p, w.b)


def is_regular(ctx: FieldContext, w: SerreWeight) -> bool:
    return classify(ctx, w) is RegularityClass.REGULAR


def is_weakly_regular(ctx: FieldContext, w: SerreWeight) -> bool:
    return classify(ctx, w) is not RegularityClass.NOT_WEAKLY_REGULAR


def b_range(p: int, class_filter: Optional[str]) -> range:
    if class_filter is None:
        return range(1, p + 1)
    if class_filter == "regular":
        return range(2, p - 1)
    if class_filter == "weakly_regular":
        return range(1, p)
    raise InputError(f"unknown class filter {class_filter!r}")


def b_vectors(ctx: FieldContext, class_filter: Optional[str] = None) -> list[tuple[int, ...]]:
    return list(itertools.product(b_range(ctx.p, class_filter), repeat=ctx.r))


def enumerate_weights(ctx: FieldContext, class_filter: Optional[str] = None) -> Iterator[SerreWeight]:
    """Canonical weights, lexicographic on (b, a).

    ``class_filter`` is None, ``"regular"`` or ``"weakly_regular"``.
    """
    bs = b_vectors(ctx, class_filter)
    a_list = [kernels.digits(ctx.p, ctx.r, x) for x in range(ctx.e1)]
    a_list.sort()
    for b in bs:
        for a in a_list:
            yield SerreWeight(a, b)


def weight_count(ctx: FieldContext, class_filter: Optional[str] = None) -> int:
    return ctx.e1 * len(b_range(ctx.p, class_filter)) ** ctx.r
