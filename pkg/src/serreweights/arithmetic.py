"""Finite field contexts and tame fundamental characters as exponents.

A niveau-n character of inertia is stored as its exponent against a fixed
generator of the cyclic group of order p^(nr) - 1. The niveau-1 fundamental
character of the embedding tau_i has exponent p^(r-i), so tau_0 = tau_r has
exponent 1; niveau-2 works the same way with sigma_i and p^(2r-i).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import kernels

_INT64_LIMIT = 2 ** 63


class InputError(ValueError):
    """Invalid user input (exit code 2 at the CLI)."""


class UnsupportedError(InputError):
    """A case with no formulas available, e.g. a scalar principal series."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldContext:
    p: int
    r: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not isinstance(self.r, int):
            raise InputError("p and r must be integers")
        if self.p < 3 or not is_prime(self.p):
            raise InputError(f"p must be an odd prime, got {self.p}")
        if self.r < 1:
            raise InputError(f"r must be at least 1, got {self.r}")
        if self.p ** (2 * self.r) - 1 >= _INT64_LIMIT:
            raise InputError("p^(2r) - 1 does not fit in a signed 64-bit integer")

    @property
    def e1(self) -> int:
        return self.p ** self.r - 1

    @property
    def e2(self) -> int:
        return self.p ** (2 * self.r) - 1

    @property
    def q(self) -> int:
        return self.p ** self.r

    def modulus(self, niveau: int) -> int:
        if niveau == 1:
            return self.e1
        if niveau == 2:
            return self.e2
        raise InputError(f"niveau must be 1 or 2, got {niveau}")

    def tau_exp(self, i: int) -> int:
        """Exponent of omega_{tau_i}; indices are read mod r."""
        return self.p ** ((self.r - i) % self.r)

    def sigma_exp(self, i: int) -> int:
        """Exponent of omega_{sigma_i}; indices are read mod 2r."""
        n = 2 * self.r
        return self.p ** ((n - i) % n)

    def full_mask(self) -> int:
        return (1 << self.r) - 1


@dataclass(frozen=True)
class CharExp:
    """A tame character of inertia with values in the niveau-n field."""

    ctx: FieldContext
    niveau: int
    exp: int

    def __post_init__(self):
        m = self.ctx.modulus(self.niveau)
        object.__setattr__(self, "exp", self.exp % m)

    @property
    def modulus(self) -> int:
        return self.ctx.modulus(self.niveau)

    def _check(self, other: "CharExp"):
        if not isinstance(other, CharExp):
            raise InputError("expected a character")
        if other.ctx != self.ctx or other.niveau != self.niveau:
            raise InputError("characters have different contexts or niveaux")

    def __mul__(self, other: "CharExp") -> "CharExp":
        self._check(other)
        return CharExp(self.ctx, self.niveau, self.exp + other.exp)

    def __truediv__(self, other: "CharExp") -> "CharExp":
        self._check(other)
        return CharExp(self.ctx, self.niveau, self.exp - other.exp)

    def __pow__(self, k: int) -> "CharExp":
        return CharExp(self.ctx, self.niveau, self.exp * k)

    def inverse(self) -> "CharExp":
        return CharExp(self.ctx, self.niveau, -self.exp)

    def is_trivial(self) -> bool:
        return self.exp == 0

    def digits(self) -> tuple[int, ...]:
        return digits_of(self)

    def frobenius(self) -> "CharExp":
        """The conjugate character theta^(p^r)."""
        return self ** self.ctx.q


def char(ctx: FieldContext, exp: int, niveau: int = 1) -> CharExp:
    return CharExp(ctx, niveau, exp)


def _check_digits(ctx: FieldContext, digits: Sequence[int], n: int):
    if len(digits) != n * ctx.r:
        raise InputError(f"expected {n * ctx.r} digits, got {len(digits)}")
    for d in digits:
        if not isinstance(d, int) or d < 0:
            raise InputError(f"digits must be non-negative integers, got {d!r}")


def encode_char(ctx: FieldContext, digits: Sequence[int], niveau: int = 1) -> CharExp:
    """prod_i omega_i^(d_i) for digits indexed 1..nr; any non-negative values."""
    _check_digits(ctx, digits, niveau)
    return CharExp(ctx, niveau, kernels.encode(ctx.p, digits))


def digits_of(c: CharExp) -> tuple[int, ...]:
    """Canonical base-p digits of the exponent, most significant first.

    The all-(p-1) representative of the trivial character is never produced.
    """
    n = c.niveau * c.ctx.r
    return kernels.digits(c.ctx.p, n, c.exp)


def char_mul(c1: CharExp, c2: CharExp) -> CharExp:
    return c1 * c2


def char_pow(c: CharExp, k: int) -> CharExp:
    return c ** k


def char_inv(c: CharExp) -> CharExp:
    return c.inverse()


def inflate_to_niveau2(c: CharExp) -> CharExp:
    """Compose with the norm from the degree-2r field to the degree-r field."""
    if c.niveau != 1:
        raise InputError("only niveau-1 characters can be inflated")
    return CharExp(c.ctx, 2, c.exp * (1 + c.ctx.q))


def tau_char(ctx: FieldContext, i: int) -> CharExp:
    return CharExp(ctx, 1, ctx.tau_exp(i))


def sigma_char(ctx: FieldContext, i: int) -> CharExp:
    return CharExp(ctx, 2, ctx.sigma_exp(i))


def project_index(ctx: FieldContext, i: int) -> int:
    """pi(sigma_i) = tau_(i mod r)."""
    return i % ctx.r


def mask_members(mask: int, n: int, one_based: bool = True) -> list[int]:
    """Indices set in a mask. Niveau-1 masks use bit i % r for tau_i, so with
    ``one_based`` the members are reported in 1..n."""
    out = []
    for i in range(n):
        if (mask >> i) & 1:
            out.append(n if (one_based and i == 0) else i)
    return sorted(out)


def members_to_mask(members: Sequence[int], n: int) -> int:
    m = 0
    for i in members:
        m |= 1 << (i % n)
    return m


def delta(mask: int, i: int, n: int) -> int:
    """Indicator of index i (read mod n) in a mask."""
    return (mask >> (i % n)) & 1
