"""One test per acceptance criterion; the terminal summary prints a PASS/FAIL line for each."""

import random
import time
from fractions import Fraction

import pytest

from algden.classgroup import class_group, quotient_class_group
from algden.denominators import (
    GammaContext,
    compute_xy,
    cross_field_check,
    denominator_section,
    evaluate_representation,
    membership,
    membership_oracle,
    ring_description,
    same_denominator,
)
from algden.genset import associated, check_field, control_context, generating_set, l_gamma_K
from algden.nf import FractionalIdeal
from algden.nf.subfield import cached_field
from algden.sampling import random_chain, random_membership_case
from algden.verify import run_suite

GAUSS = cached_field((1, 0, 1))
I = GAUSS.gen


def strs(primes):
    return [str(P) for P in primes]


def suite_ok(name, **kw):
    results = run_suite(name, **kw)
    return all(r.ok for r in results), results


def test_criterion_1_inverse_of_2_plus_i(acceptance):
    t0 = time.perf_counter()
    ctx = GammaContext(GAUSS, 1 / (2 + I))
    inv = ctx.invariants.as_tuple()
    rq, ri = compute_xy(ctx), compute_xy(ctx, I)
    elapsed = time.perf_counter() - t0
    ok = (inv == (5, 5, 1, 2) and strs(rq.X) == [] and strs(rq.Y) == ["(5)"]
          and strs(ri.X) == strs(ri.Y) == ["(5, x+2)"] and elapsed < 1)
    assert acceptance(1, "γ=1/(2+i): invariants, X and Y", ok, f"{elapsed:.2f}s")


def test_criterion_2_inverse_of_60_plus_15i(acceptance):
    t0 = time.perf_counter()
    ctx = GammaContext(GAUSS, 1 / (60 + 15 * I))
    xq, xi = strs(compute_xy(ctx).X), strs(compute_xy(ctx, I).X)
    gs = generating_set(ctx)
    elapsed = time.perf_counter() - t0
    ok = (xq == ["(3)", "(5)"] and xi == ["(3)", "(5, x+2)", "(5, x-2)", "(17, x+4)"]
          and [K.label() for K in gs.fields_L] == ["Q", "Q(x)"]
          and strs(l_gamma_K(ctx, I)) == ["(17, x+4)"]
          and len(gs.S) == 2 and associated(gs.S[0], GAUSS.rational(15)) and associated(gs.S[1], 4 + I)
          and elapsed < 5)
    assert acceptance(2, "γ=1/(60+15i): X, 𝓛(γ) and S = {15, 4+i}", ok, f"{elapsed:.2f}s")


def test_criterion_3_d_formula(acceptance):
    t0 = time.perf_counter()
    ok, res = suite_ok("d-formula", count=500)
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 60
    assert acceptance(3, "ceiling formula for d on 500 random polynomials", ok, f"{elapsed:.1f}s")


def test_criterion_4_tuples(acceptance):
    t0 = time.perf_counter()
    ok, res = suite_ok("tuples", height=40, max_c=12)
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 120
    counts = ", ".join(f"{k}={r.detail.get(k)}" for r in res for k in ("realized", "realizable") if k in r.detail)
    assert acceptance(4, "tuple classifier sound and complete (n=2)", ok, f"{counts}; {elapsed:.1f}s")


def test_criterion_5_criteria(acceptance):
    ok, res = suite_ok("criteria", count=100)
    assert acceptance(5, "coefficient, splitting and Newton criteria agree", ok,
                      f"{res[0].detail['primes']} primes")


def _radical_battery():
    M8 = cached_field((1, 0, 0, 0, 1))
    z = M8.gen
    yield "1/(2+i)", GammaContext(GAUSS, 1 / (2 + I))
    yield "1/(60+15i)", GammaContext(GAUSS, 1 / (60 + 15 * I))
    yield "7/12", GammaContext(GAUSS, GAUSS.rational(Fraction(7, 12)))
    yield "1/(3+ζ+ζ^2)", GammaContext(M8, 1 / (3 + z + z * z))


def test_criterion_6_radicals(acceptance):
    bad, fields = [], 0
    for label, ctx in _radical_battery():
        gs = generating_set(ctx)
        ctx2, S2, extra = control_context(ctx, gs.S)
        for c, S, K in [(ctx, gs.S, K) for K in gs.lattice] + [(ctx2, S2, K) for K in extra]:
            fields += 1
            if not denominator_section(c, K).matches or not check_field(c, S, K).radical_matches:
                bad.append(f"{label} over {K.label()}")
    assert acceptance(6, "radical identities on the test-field battery", not bad,
                      f"{fields} fields" + (f"; failures {bad}" if bad else ""))


def test_criterion_7_class_group(acceptance):
    K = cached_field((5, 0, 1))
    G = class_group(K)
    P2 = FractionalIdeal.from_generators(K, [K.rational(2), 1 + K.gen])
    rd = ring_description(GammaContext(K, K.rational(Fraction(1, 2))), K.gen)
    ok = (G.elementary_divisors == [2] and quotient_class_group(G, [P2]) == []
          and rd.is_PID and not rd.is_OK)
    assert acceptance(7, "Q(√-5): Z/2, quotient by (2, 1+√-5) trivial, O_K[1/2] a PID", ok)


def test_criterion_8_cross_field(acceptance):
    rng = random.Random(2024)
    bad, exact = [], 0
    for k in range(50):
        cfg = random_chain(rng)
        rep = cross_field_check(cfg.ctx, cfg.K, cfg.L, seed=k)
        exact += rep.exact_case
        if not rep.ok:
            bad.append(cfg.describe())
    ctx = GammaContext(GAUSS, 1 / (2 + I))
    rep = cross_field_check(ctx, None, I)
    counter = (not rep.exact_case and strs(rep.X_lift) == [] and strs(rep.X_L) == ["(5, x+2)"]
               and sorted(strs(rep.Y_lift)) == ["(5, x+2)", "(5, x-2)"] and strs(rep.Y_L) == ["(5, x+2)"])
    ok = not bad and exact > 0 and counter
    assert acceptance(8, "containments under K ⊆ L, exactness, strict counterexample", ok,
                      f"{exact} exact cases of 50")


def test_criterion_9_same_denominator(acceptance):
    ok, res = suite_ok("same-denom", count=50)
    ctx = GammaContext(GAUSS, 1 / (2 + I))
    a = same_denominator(ctx, 1 / (2 - I), debug=True).value
    b = same_denominator(ctx, 1 / (3 + 4 * I), debug=True).value
    ok = ok and (a, b) == (False, True)
    assert acceptance(9, "same-denominator conditions agree; worked pairs", ok,
                      f"{res[0].detail['true_pairs']} true pairs of 50")


def _membership_consistency():
    rng = random.Random(7)
    bad, members = [], 0
    for _ in range(200):
        ctx, K, alpha = random_membership_case(rng)
        m = membership(ctx, K, alpha)
        res = membership_oracle(ctx, K, alpha)
        members += m
        if m != res.member:
            bad.append((str(alpha), K.label(), str(ctx.gamma)))
        elif m and evaluate_representation(K, ctx.gamma, res.coefficients) != K.embed(alpha):
            bad.append((str(alpha), K.label(), str(ctx.gamma), "bad certificate"))
    return bad, members


def test_criterion_10_membership(acceptance):
    bad, members = _membership_consistency()
    ctx = GammaContext(GAUSS, 1 / (2 + I))
    fifth = GAUSS.rational(Fraction(1, 5))
    outside_Z = not membership(ctx, None, fifth) and not membership_oracle(ctx, None, fifth).member
    inside_Zi = membership(ctx, I, fifth)
    # the criterion also asks for 1/5 ∈ Z[i][1/(2+i)], which is false:
    # 1/5 has a pole at (2-i), a prime outside X(Q(i), γ) = {(2+i)}
    ok = not bad and outside_Z and inside_Zi
    detail = f"{members} members of 200; 1/5 in Z[i][1/(2+i)]: {inside_Zi} (stated true; see decision ledger)"
    acceptance(10, "membership verdict matches the oracle; 1/5 cases", ok, detail)
    assert not bad and outside_Z


@pytest.mark.xfail(strict=True, reason="1/5 has a pole at (2-i), which 1/(2+i) does not invert")
def test_criterion_10_stated_fifth_in_gaussian_ring():
    ctx = GammaContext(GAUSS, 1 / (2 + I))
    assert membership(ctx, I, GAUSS.rational(Fraction(1, 5)))
