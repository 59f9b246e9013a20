import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from algden.denominators import (
    GammaContext,
    GammaError,
    coefficient_criteria,
    compute_xy,
    cross_field_check,
    denominator_section,
    evaluate_representation,
    kernel_ideal,
    local_classify,
    membership,
    membership_oracle,
    negative_primes,
    newton_criteria,
    newton_identity_sides,
    ring_description,
    same_denominator,
    splitting_criteria,
    x_witness,
)
from algden.nf import FractionalIdeal
from algden.nf.subfield import adjoin, cached_field, primes_above_in
from algden.sampling import random_chain, random_membership_case, random_quadratic_pair

GAUSS = cached_field((1, 0, 1))
I = GAUSS.gen

seeds = st.integers(0, 2**32 - 1)


def strs(primes):
    return [str(P) for P in primes]


@pytest.fixture
def ctx_2i():
    return GammaContext(GAUSS, 1 / (2 + I))


@pytest.fixture
def ctx_60():
    return GammaContext(GAUSS, 1 / (60 + 15 * I))


def test_from_minpoly_builds_field_of_d_gamma():
    ctx = GammaContext.from_minpoly([1, -4, 5])
    assert ctx.invariants.as_tuple() == (5, 5, 1, 2)
    assert ctx.field.n == 2
    assert tuple(ctx.minpoly.coeffs) == (1, -4, 5)


def test_gamma_must_live_in_ambient():
    with pytest.raises(GammaError):
        GammaContext(GAUSS, cached_field((2, 0, 1)).gen)


def test_xy_for_inverse_of_gaussian_prime(ctx_2i):
    rq = compute_xy(ctx_2i)
    assert strs(rq.X) == [] and strs(rq.Y) == ["(5)"]
    ri = compute_xy(ctx_2i, I)
    assert strs(ri.X) == strs(ri.Y) == ["(5, x+2)"]
    assert ri.degree == 1


def test_xy_for_composite_denominator(ctx_60):
    assert strs(compute_xy(ctx_60).X) == ["(3)", "(5)"]
    assert strs(compute_xy(ctx_60, I).X) == ["(3)", "(5, x+2)", "(5, x-2)", "(17, x+4)"]


def test_integral_gamma_has_empty_sets():
    ctx = GammaContext(GAUSS, 3 + I)
    for K in (None, I):
        r = compute_xy(ctx, K)
        assert r.X == [] and r.Y == []
    assert kernel_ideal(ctx).is_one()


def test_rational_gamma():
    ctx = GammaContext(GAUSS, GAUSS.rational(Fraction(7, 12)))
    assert strs(compute_xy(ctx).X) == ["(2)", "(3)"]
    assert sorted(strs(compute_xy(ctx, I).X)) == ["(2, x+1)", "(3)"]


def test_membership_examples(ctx_2i):
    assert membership(ctx_2i, None, 7)
    assert not membership(ctx_2i, None, Fraction(1, 5))
    assert membership(ctx_2i, I, 2 - I)
    assert membership(ctx_2i, I, (2 - I) / 5)  # this is 1/(2+i)
    assert not membership(ctx_2i, I, GAUSS.rational(Fraction(1, 5)))


def test_oracle_certificate(ctx_2i):
    res = membership_oracle(ctx_2i, I, 3 / (2 + I) ** 2)
    assert res.status == "member"
    assert evaluate_representation(ctx_2i.subfield(I), ctx_2i.gamma, res.coefficients) == 3 / (2 + I) ** 2


def test_oracle_without_proof(ctx_2i):
    # γ is not integral, so the lattices keep growing and no proof is possible
    res = membership_oracle(ctx_2i, None, Fraction(1, 5))
    assert res.status == "no_witness_found" and res.bound == 64


def test_oracle_proves_non_membership_for_integral_gamma():
    ctx = GammaContext(GAUSS, I)
    res = membership_oracle(ctx, None, Fraction(1, 2))
    assert res.status == "non_member" and res.stable


def test_kernel_ideal(ctx_60):
    J = kernel_ideal(ctx_60)
    # f = x^2 - (8/255)x + 1/3825 over Q, so I = (3^2 5^2 17)
    assert J == FractionalIdeal.principal(ctx_60.subfield(None).field.rational(3825))
    # γ = 1/(2+i) over Q(i): f = x - γ and I = (2+i)
    ctx = GammaContext(GAUSS, 1 / (2 + I))
    assert kernel_ideal(ctx, I) == FractionalIdeal.principal(2 + I)


def test_ring_description_gauss(ctx_60):
    rd = ring_description(ctx_60, I)
    assert not rd.is_OK and rd.is_PID and rd.class_group == []


def test_ring_description_minus_five():
    K5 = cached_field((5, 0, 1))
    rd = ring_description(GammaContext(K5, K5.rational(Fraction(1, 2))), K5.gen)
    assert rd.class_group_OK == [2]
    assert rd.is_PID and not rd.is_OK
    rd = ring_description(GammaContext(K5, K5.rational(Fraction(1, 7))), K5.gen)
    assert rd.is_PID
    rd = ring_description(GammaContext(K5, K5.rational(Fraction(1, 29))), K5.gen)
    assert rd.class_group == [2] and not rd.is_PID


def test_denominator_section(ctx_60):
    sec = denominator_section(ctx_60, I)
    assert sec.matches
    assert sorted(str(P) for P, _ in sec.factorization) == sorted(strs(compute_xy(ctx_60, I).Y))
    sec = denominator_section(ctx_60)
    assert sec.matches
    assert sec.radical == FractionalIdeal.principal(ctx_60.subfield(None).field.rational(255))


def test_local_classify(ctx_2i):
    K = ctx_2i.subfield(None)
    L = adjoin(K, ctx_2i.gamma)
    [P5] = K.primes_above(5)
    kinds = sorted(local_classify(ctx_2i, None, P5, Q) for Q in primes_above_in(P5, K, L))
    assert kinds == ["integers", "whole_field"]
    [Q2] = primes_above_in(K.primes_above(2)[0], K, L)
    with pytest.raises(GammaError):
        local_classify(ctx_2i, None, P5, Q2)


def test_same_denominator_examples(ctx_2i):
    assert not same_denominator(ctx_2i, 1 / (2 - I), debug=True).value
    assert same_denominator(ctx_2i, 1 / (3 + 4 * I), debug=True).value
    assert same_denominator(ctx_2i, 5 / (2 + I) ** 3 + 1).value


def test_cross_field_counterexample(ctx_2i):
    rep = cross_field_check(ctx_2i, None, I)
    assert not rep.exact_case
    assert rep.ok
    assert strs(rep.X_lift) == [] and strs(rep.X_L) == ["(5, x+2)"]
    assert sorted(strs(rep.Y_lift)) == ["(5, x+2)", "(5, x-2)"] and strs(rep.Y_L) == ["(5, x+2)"]


def test_x_witness(ctx_60):
    [P17] = [P for P in compute_xy(ctx_60, I).X if P.p == 17]
    alpha, res = x_witness(ctx_60, I, P17)
    assert FractionalIdeal.principal(alpha) == FractionalIdeal.from_prime(P17)
    assert res.member


def test_negative_primes():
    K = GammaContext(GAUSS, I).subfield(I)
    poles = negative_primes(K, K.field.rational(Fraction(3, 10)))
    assert sorted(strs(poles)) == ["(2, x+1)", "(5, x+2)", "(5, x-2)"]


# ------------------------------------------------------------------ properties


@settings(max_examples=40)
@given(seeds)
def test_three_criteria_agree(seed):
    ctx, K = random_quadratic_pair(random.Random(seed))
    rep = compute_xy(ctx, K)
    primes = [c.prime for c in rep.candidates] + K.primes_above(2) + K.primes_above(3)
    for P in primes:
        _, x1, y1 = coefficient_criteria(rep.b, P)
        _, x2, y2 = splitting_criteria(ctx, K, P)
        _, x3, y3 = newton_criteria(rep.b, P)
        assert x1 == x2 == x3
        assert y1 == y2 == y3
        left, right = newton_identity_sides(ctx, K, P)
        assert left == right


@settings(max_examples=40)
@given(seeds)
def test_x_inside_y(seed):
    ctx, K = random_quadratic_pair(random.Random(seed))
    rep = compute_xy(ctx, K)
    assert set(rep.X) <= set(rep.Y)
    assert denominator_section(ctx, K).matches


@settings(max_examples=30)
@given(seeds)
def test_cross_field_properties(seed):
    cfg = random_chain(random.Random(seed))
    assert cross_field_check(cfg.ctx, cfg.K, cfg.L, seed=seed).ok


@settings(max_examples=40)
@given(seeds)
def test_membership_matches_oracle(seed):
    ctx, K, alpha = random_membership_case(random.Random(seed))
    res = membership_oracle(ctx, K, alpha)
    assert membership(ctx, K, alpha) == res.member
    if res.member:
        assert evaluate_representation(K, ctx.gamma, res.coefficients) == K.embed(alpha)


@settings(max_examples=30)
@given(seeds, st.integers(-4, 4))
def test_same_denominator_invariant_under_integral_shift(seed, t):
    ctx, _ = random_quadratic_pair(random.Random(seed))
    assert same_denominator(ctx, ctx.gamma + t, debug=True).value
