import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from serreweights import breuil as B
from serreweights.arithmetic import CharExp, FieldContext, InputError, UnsupportedError
from serreweights.kernels import digits

CTX5 = FieldContext(5, 1)


def ch(ctx, x):
    return CharExp(ctx, 1, x)


def test_assignment_sets():
    ctx = FieldContext(5, 3)
    # Z = {tau_1, tau_2}: Y = {tau_2, tau_3}
    a = B.Rank1Assignment.from_high_set(ctx, 0b110, 0b010)
    assert a.y_set == 0b101 and a.x_set == 0b110
    with pytest.raises(InputError):
        B.Rank1Assignment(ctx, 0b110, ((1, 0), (2, 0)))
    with pytest.raises(InputError):
        B.Rank1Assignment(ctx, 0b110, ((1, 3),))


def test_iter_assignments_counts():
    # sum over Z of 2^|Y^c|
    assert len(list(B.iter_assignments(FieldContext(5, 1)))) == 4
    assert len(list(B.iter_assignments(FieldContext(5, 2)))) == 10
    assert len(list(B.iter_assignments(FieldContext(5, 3)))) == 28


def test_rank1_solve_examples():
    r_vec, a = B.rank1_solve(CTX5, ch(CTX5, 2), ch(CTX5, 0), 1, {1: 0})
    assert a.y_set == 0 and r_vec == (0,)
    assert B.rank1_solve(CTX5, ch(CTX5, 2), ch(CTX5, 0), 1, {1: 4})[0] == (4,)
    ctx = FieldContext(5, 2)
    r_vec, a = B.rank1_solve(ctx, ch(ctx, 5), ch(ctx, 0), 1 << 1, {})
    assert a.y_set == 0b11
    # frozen: omega_(tau_1)^23 = theta_2/theta_1 and omega_(tau_2)^5 = theta_1/theta_2
    assert r_vec == (23, 5)
    assert all(0 < x < 24 for x in r_vec)
    with pytest.raises(UnsupportedError):
        B.rank1_solve(ctx, ch(ctx, 5), ch(ctx, 5), 0, {1: 0, 2: 0})
    with pytest.raises(InputError):
        B.rank1_solve(ctx, ch(ctx, 5), ch(ctx, 0), 1 << 1, {1: 0})


@pytest.mark.parametrize("p,r", [(5, 2), (7, 2), (5, 3)])
def test_rank1_chain_telescopes(p, r):
    ctx = FieldContext(p, r)
    for t1 in range(1, ctx.e1, 7):
        for a in B.iter_assignments(ctx):
            r_vec, _ = B.rank1_solve(ctx, ch(ctx, t1), ch(ctx, 0), a.z_set, dict(a.r_choices))
            # prod_i omega_(tau_(i+1))^(p r_i) is trivial
            assert sum(p * x * ctx.tau_exp(i + 1) for i, x in enumerate(r_vec, 1)) % ctx.e1 == 0
            # and each step moves theta^i to theta^(i+1)
            chain = B.theta_chain(ctx, ch(ctx, t1), ch(ctx, 0), a.z_set)
            for i in range(1, r + 1):
                assert (chain[i % r].exp - chain[i - 1].exp - r_vec[i - 1] * ctx.tau_exp(i)) % ctx.e1 == 0


def assignment(ctx, z, high):
    return B.Rank1Assignment.from_high_set(ctx, z, high)


def test_generic_fibre_examples():
    z0 = ch(CTX5, 0)
    assert B.rank1_generic_fibre(CTX5, (2,), assignment(CTX5, 1, 0), z0).exp == 2
    assert B.rank1_generic_fibre(CTX5, (2,), assignment(CTX5, 1, 1), z0).exp == 3
    assert B.rank1_generic_fibre(CTX5, (2,), assignment(CTX5, 0, 1), z0).exp == 1


def test_oracle_example():
    t = B.rank1_oracle_terms(CTX5, (2,), assignment(CTX5, 1, 0), ch(CTX5, 0))
    assert (t.m1, t.n1, t.fibre.exp) == (2, 0, 2)


def test_oracle_matches_closed_form_p5_r2():
    ctx = FieldContext(5, 2)
    for t1 in range(1, ctx.e1):
        c = digits(5, 2, t1)
        for a in B.iter_assignments(ctx):
            for t2 in (0, 7):
                assert B.rank1_generic_fibre_oracle(ctx, c, a, ch(ctx, t2)) == \
                    B.rank1_generic_fibre(ctx, c, a, ch(ctx, t2))


def test_c1_coefficient_vanishes():
    for p, r in [(3, 3), (5, 3), (7, 2)]:
        ctx = FieldContext(p, r)
        for a in B.iter_assignments(ctx):
            coeffs = B.rank1_oracle_terms(ctx, (1,) * r, a, ch(ctx, 0)).n1_coefficients
            y, z = a.y_set, a.z_set
            assert bin(y & z).count("1") == bin(y & ~z).count("1")
            assert coeffs[0] == Fraction(0)


def rot(mask, r):
    return ((mask << 1) | (mask >> (r - 1))) & ((1 << r) - 1)


@settings(max_examples=80)
@given(st.sampled_from([(5, 2), (7, 2), (5, 3), (3, 3)]), st.data())
def test_cyclic_shift_equivariance(pr, data):
    ctx = FieldContext(*pr)
    r = ctx.r
    asgs = list(B.iter_assignments(ctx))
    a = data.draw(st.sampled_from(asgs))
    c = tuple(data.draw(st.lists(st.integers(0, ctx.p - 1), min_size=r, max_size=r)))
    shifted_c = (c[-1],) + c[:-1]   # c'_(i+1) = c_i
    a2 = assignment(ctx, rot(a.z_set, r), rot(a.high_set, r))
    assert a2.x_set == rot(a.x_set, r)
    d = B.rank1_generic_fibre(ctx, c, a, ch(ctx, 0)).digits()
    d2 = B.rank1_generic_fibre(ctx, shifted_c, a2, ch(ctx, 0)).digits()
    if d != (0,) * r:
        assert d2 == (d[-1],) + d[:-1]


def test_jhcompat_witness_examples():
    k, l = B.jhcompat_witness(CTX5, assignment(CTX5, 1, 0))
    assert (k, l) == (1, 0)
    k, l = B.jhcompat_witness(CTX5, assignment(CTX5, 0, 1))
    assert (k, l) == (1, 1)


@pytest.mark.parametrize("p,r", [(3, 2), (5, 2), (5, 3)])
def test_jhcompat_display_holds(p, r):
    ctx = FieldContext(p, r)
    for t1 in range(1, ctx.e1):
        c = digits(p, r, t1)
        for a in B.iter_assignments(ctx):
            k, l = B.jhcompat_witness(ctx, a)
            assert B.jhcompat_display(ctx, c, k, l) == B.rank1_generic_fibre(ctx, c, a, ch(ctx, 0))


def test_jhcompat_certified_factor_generic_c():
    # with all c_i in [1, p-2] the certified factor is a genuine factor
    ctx = FieldContext(7, 2)
    for c in itertools.product(range(1, 6), repeat=2):
        t1 = 7 * c[0] + c[1]
        for a in B.iter_assignments(ctx):
            k, l = B.jhcompat_witness(ctx, a)
            assert B.certified_factor(ctx, c, k) is not None
        n, cnt, bad = B.jhcompat_case(ctx, t1)
        assert not bad and cnt["degenerate"] == 0


def test_jhcompat_degenerate_case_exists():
    ctx = FieldContext(5, 2)
    n, cnt, bad = B.jhcompat_case(ctx, 5)  # c = (1, 0)
    assert not bad and cnt["degenerate"] > 0


def test_fl_examples():
    q = B.fl_quantities(CTX5, (2,), 1)
    assert (q.alpha, q.beta, q.i_vals, q.n_vals, q.nprime_vals) == ((0,), (1,), (3,), (12,), (8,))
    q = B.fl_quantities(CTX5, (2,), 0)
    assert (q.alpha, q.beta, q.i_vals, q.n_vals, q.nprime_vals) == ((1,), (0,), (1,), (8,), (12,))


def test_fl_frozen_p7_r2():
    # frozen from an independent evaluation; J = {tau_1} is bit 1
    ctx = FieldContext(7, 2)
    q = B.fl_quantities(ctx, (2, 3), 1 << 1)
    assert q.alpha == (-4, 20) and q.beta == (13, -5)
    assert q.i_vals == (25, 31)
    assert q.n_vals == (220, 236) and q.nprime_vals == (235, 227)
    assert all(r.passed for r in B.fl_check_properties(ctx, (2, 3), 2))


def test_fl_property_list_p5_r1():
    res = B.fl_check_properties(CTX5, (2,), 1)
    assert sorted({int(x.property) for x in res}) == list(range(2, 13))
    assert all(x.passed for x in res)
    res = B.fl_check_properties(CTX5, (2,), 0)
    assert {x.property for x in res} == {"1", "2", "3", "4", "5", "6", "7"}


def test_fl_sweep_p5_r2():
    ctx = FieldContext(5, 2)
    for b in itertools.product((2, 3), repeat=2):
        for J in range(4):
            assert all(x.passed for x in B.fl_check_properties(ctx, b, J))


def test_fl_rejects_non_regular():
    with pytest.raises(InputError):
        B.fl_quantities(CTX5, (4,), 1)


def test_rank2_params():
    ctx = FieldContext(7, 2)
    m = B.rank2_model_params(ctx, (2, 3), 1 << 1)
    # j_(tau_i) = e iff tau_(i+1) in J
    assert m.j_exponents == (0, 48) and m.lambda_flags == (False, True)
    assert m.i_exponents == B.fl_quantities(ctx, (2, 3), 2).i_vals
    with pytest.raises(InputError):
        B.rank2_model_params(ctx, (2, 3), 2, lambda_flags=(True, False))


def test_crystalline_spec():
    assert B.crystalline_spec(CTX5, (2,), 1).to_json() == {"ht1": [2], "ht2": [0]}
    assert B.crystalline_spec(CTX5, (2,), 0).to_json() == {"ht1": [0], "ht2": [2]}
    ctx = FieldContext(7, 3)
    for b in itertools.product(range(1, 8), repeat=3):
        for J in range(8):
            s = B.crystalline_spec(ctx, b, J)
            assert tuple(x + y for x, y in zip(s.ht1, s.ht2)) == b


@pytest.mark.parametrize("p,r", [(5, 1), (7, 2), (5, 3)])
def test_lift_implies_model(p, r):
    cases, bad = B.verify_lift_implies_model(FieldContext(p, r))
    assert cases > 0 and bad == []


@pytest.mark.parametrize("p,r", [(5, 2), (7, 2)])
def test_lemma_compat(p, r):
    cases, bad = B.verify_lemma_compat(FieldContext(p, r))
    assert cases > 0 and bad == []


def test_lemma_compat_r1_is_deferred():
    assert B.verify_lemma_compat(CTX5) == (0, [])
    # the r = 2 argument does not carry over: J and J^c give the same type
    cases, bad = B.verify_lemma_compat(CTX5, include_deferred=True)
    assert cases == 48 and len(bad) == 5
