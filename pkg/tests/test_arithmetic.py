import pytest
from hypothesis import given, strategies as st

from serreweights.arithmetic import (CharExp, FieldContext, InputError, char_inv, char_mul,
                                     char_pow, digits_of, encode_char, inflate_to_niveau2,
                                     sigma_char, tau_char)

CTXS = [(3, 1), (5, 1), (5, 2), (7, 2), (5, 3), (13, 3)]


def test_context_moduli():
    ctx = FieldContext(5, 2)
    assert (ctx.e1, ctx.e2) == (24, 624)
    assert ctx.e2 % ctx.e1 == 0 and ctx.e2 // ctx.e1 == ctx.q + 1


@pytest.mark.parametrize("p,r", [(2, 1), (4, 1), (9, 2), (1, 1), (5, 0), (0, 3)])
def test_context_rejects(p, r):
    with pytest.raises(InputError):
        FieldContext(p, r)


def test_context_rejects_overflow():
    FieldContext(3, 19)  # 3^38 - 1 < 2^63
    with pytest.raises(InputError):
        FieldContext(3, 20)


def test_encode_examples():
    assert encode_char(FieldContext(5, 2), (1, 0)).exp == 5
    assert encode_char(FieldContext(5, 2), (0, 0)).exp == 0
    # omega_(sigma_1)^3 is 3 p^(2r-1) = 15; its digit vector is (3, 0)
    ctx = FieldContext(5, 1)
    assert encode_char(ctx, (3, 0), niveau=2).exp == 15
    assert encode_char(ctx, (3, 0), niveau=2) == sigma_char(ctx, 1) ** 3
    assert encode_char(ctx, (0, 3), niveau=2).exp == 3


def test_encode_rejects_bad_digits():
    ctx = FieldContext(5, 2)
    with pytest.raises(InputError):
        encode_char(ctx, (1,))
    with pytest.raises(InputError):
        encode_char(ctx, (1, -1))


def test_digits_examples():
    assert digits_of(CharExp(FieldContext(5, 1), 1, 3)) == (3,)
    assert digits_of(CharExp(FieldContext(5, 1), 1, 0)) == (0,)
    assert digits_of(CharExp(FieldContext(5, 2), 1, 7)) == (1, 2)
    assert encode_char(FieldContext(5, 1), (4,)).exp == 0


def test_group_operations():
    ctx = FieldContext(5, 1)
    assert char_mul(CharExp(ctx, 1, 3), CharExp(ctx, 1, 2)).exp == 1
    assert char_inv(CharExp(ctx, 1, 0)).exp == 0
    th = CharExp(ctx, 2, 10)
    assert char_pow(th, ctx.q) == th.frobenius()
    assert th.frobenius().exp == 2
    with pytest.raises(InputError):
        CharExp(ctx, 1, 1) * CharExp(ctx, 2, 1)


def test_inflate_examples():
    assert inflate_to_niveau2(CharExp(FieldContext(5, 1), 1, 2)).exp == 12
    assert inflate_to_niveau2(CharExp(FieldContext(5, 1), 1, 0)).exp == 0
    assert inflate_to_niveau2(CharExp(FieldContext(5, 2), 1, 5)).exp == 130


def test_fundamental_characters_chain():
    # omega_(tau_i) = omega_(tau_(i+1))^p, and the norm of omega_(sigma_i) is omega_(tau_i)
    for p, r in CTXS:
        ctx = FieldContext(p, r)
        for i in range(1, r + 1):
            assert tau_char(ctx, i) == tau_char(ctx, i + 1) ** p
            assert inflate_to_niveau2(tau_char(ctx, i)) == sigma_char(ctx, i) * sigma_char(ctx, i + r)
        for i in range(2 * r):
            assert sigma_char(ctx, i) == sigma_char(ctx, i + 1) ** p
        assert tau_char(ctx, 0) == tau_char(ctx, r)
        assert sigma_char(ctx, 0).exp == 1


@given(st.sampled_from(CTXS), st.integers(1, 2), st.data())
def test_encoding_is_a_bijection(pr, niveau, data):
    ctx = FieldContext(*pr)
    m = ctx.modulus(niveau)
    x = data.draw(st.integers(0, m - 1))
    c = CharExp(ctx, niveau, x)
    d = digits_of(c)
    assert len(d) == niveau * ctx.r
    assert all(0 <= v < ctx.p for v in d)
    assert d != (ctx.p - 1,) * len(d)
    assert encode_char(ctx, d, niveau) == c


@given(st.sampled_from(CTXS), st.data())
def test_inflation_is_a_homomorphism(pr, data):
    ctx = FieldContext(*pr)
    x, y = data.draw(st.integers(0, ctx.e1 - 1)), data.draw(st.integers(0, ctx.e1 - 1))
    a, b = CharExp(ctx, 1, x), CharExp(ctx, 1, y)
    assert inflate_to_niveau2(a * b) == inflate_to_niveau2(a) * inflate_to_niveau2(b)
    # inflated characters are fixed by Frobenius
    assert inflate_to_niveau2(a).frobenius() == inflate_to_niveau2(a)
