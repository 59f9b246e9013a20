"""Verification suites: worked examples and randomized property checks.

Each check yields a :class:`CheckResult` naming the mathematical statement it
tests, so a failing line says what broke.  Suites are deterministic for a
given seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .classgroup import class_group, quotient_class_group
from .denominators import (
    GammaContext,
    coefficient_criteria,
    compute_xy,
    cross_field_check,
    denominator_section,
    membership,
    membership_oracle,
    newton_criteria,
    newton_identity_sides,
    ring_description,
    same_denominator,
    splitting_criteria,
)
from .genset import associated, check_field, generating_set, verify_generating_set
from .nf.ideals import FractionalIdeal
from .nf.subfield import cached_field
from .poly import invariants, random_minimal_polynomial, smallest_denominator_bruteforce
from .sampling import random_chain, random_membership_case, random_quadratic_field, random_quadratic_pair, random_element
from .tuples import atlas, bruteforce_realized_tuples, construct_witness, is_eisenstein, is_realizable

# statement labels used in reports
ST_INVARIANTS = "c, d, e from the minimal polynomial"
ST_D_FORMULA = "ceiling formula for d equals the smallest denominator"
ST_DIVISIBILITY = "d | c | d^n and c | d^(n-1) e"
ST_TUPLE_SOUND = "realized tuples satisfy the realizability conditions"
ST_TUPLE_COMPLETE = "realizable tuples have verified witnesses"
ST_X_CRITERIA = "coefficient, splitting and Newton criteria agree on X"
ST_Y_CRITERIA = "coefficient, splitting and Newton criteria agree on Y"
ST_NEWTON_IDENTITY = "Newton root valuations match valuations above the prime"
ST_CROSS_FIELD = "X and Y behave as stated under K ⊆ L"
ST_SAME_DENOM = "equal X over Q(γ1, γ2) iff equal Y"
ST_MEMBERSHIP = "membership verdict agrees with an explicit representation"
ST_RADICAL_Y = "radical of the denominator ideal section is the product over Y"
ST_RADICAL_X = "radical of the product of S ∩ K is the product over X"
ST_GENSET = "S recovers X(L, γ) and O_L[γ] ∩ L on the battery"
ST_EXAMPLE = "worked example"
ST_RING = "O_K[γ] ∩ K has class group Cl(O_K) modulo the classes of X"


@dataclass
class CheckResult:
    suite: str
    name: str
    statement: str
    ok: bool
    detail: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "check": self.name,
            "statement": self.statement,
            "ok": self.ok,
            "detail": self.detail,
        }


def _strs(primes) -> list[str]:
    return [str(P) for P in primes]


# ------------------------------------------------------------------ worked examples


def suite_examples(seed: int = 0, **_) -> Iterator[CheckResult]:
    S = "examples"
    M = cached_field((1, 0, 1))
    i = M.gen

    ctx = GammaContext(M, 1 / (2 + i))
    inv = ctx.invariants.as_tuple()
    yield CheckResult(S, "1/(2+i) invariants", ST_INVARIANTS, inv == (5, 5, 1, 2), {"c,d,e,n": list(inv)})
    rq, rm = compute_xy(ctx, None), compute_xy(ctx, M.gen)
    ok = _strs(rq.X) == [] and _strs(rq.Y) == ["(5)"] and _strs(rm.X) == _strs(rm.Y) == ["(5, x+2)"]
    yield CheckResult(S, "1/(2+i) X and Y", ST_EXAMPLE, ok,
                      {"X(Q)": _strs(rq.X), "Y(Q)": _strs(rq.Y), "X(Q(i))": _strs(rm.X), "Y(Q(i))": _strs(rm.Y)})
    r7 = membership(ctx, None, 7) and not membership(ctx, None, M.rational(1) / 5)
    yield CheckResult(S, "Z[1/(2+i)] ∩ Q = Z", ST_EXAMPLE, r7, {})
    fifth = membership(ctx, M.gen, M.rational(1) / 5)
    yield CheckResult(S, "1/5 outside Z[i][1/(2+i)]", ST_EXAMPLE, not fifth,
                      {"member": fifth, "reason": "(2-i) is not in X(Q(i), γ)"})

    ctx = GammaContext(M, 1 / (60 + 15 * i))
    rq, rm = compute_xy(ctx, None), compute_xy(ctx, M.gen)
    ok = _strs(rq.X) == ["(3)", "(5)"] and _strs(rm.X) == ["(3)", "(5, x+2)", "(5, x-2)", "(17, x+4)"]
    yield CheckResult(S, "1/(60+15i) X", ST_EXAMPLE, ok, {"X(Q)": _strs(rq.X), "X(Q(i))": _strs(rm.X)})
    gs = generating_set(ctx)
    want = [M.rational(15), 4 + i]
    ok = len(gs.S) == 2 and all(associated(a, b) for a, b in zip(gs.S, want))
    ok = ok and [K.degree for K in gs.fields_L] == [1, 2] and _strs(gs.per_field[1].primes) == ["(17, x+4)"]
    yield CheckResult(S, "1/(60+15i) generating set", ST_GENSET, ok, gs.as_dict())
    rep = verify_generating_set(ctx, gs.S)
    yield CheckResult(S, "1/(60+15i) battery", ST_GENSET, rep.ok, {"fields": [c.L.label() for c in rep.checks]})

    K5 = cached_field((5, 0, 1))
    G = class_group(K5)
    P2 = FractionalIdeal.from_generators(K5, [K5.rational(2), 1 + K5.gen])
    quot = quotient_class_group(G, [P2])
    ctx5 = GammaContext(K5, K5.rational(1) / 2)
    rd = ring_description(ctx5, K5.gen)
    ok = G.elementary_divisors == [2] and quot == [] and rd.is_PID and not rd.is_OK
    yield CheckResult(S, "Q(√-5) and γ=1/2", ST_RING, ok,
                      {"Cl": G.elementary_divisors, "quotient": quot, "ring": rd.as_dict()})

    ctx = GammaContext(M, 1 / (2 + i))
    a = same_denominator(ctx, 1 / (2 - i), debug=True).value
    b = same_denominator(ctx, 1 / (3 + 4 * i), debug=True).value
    yield CheckResult(S, "same denominator pairs", ST_SAME_DENOM, (a, b) == (False, True),
                      {"1/(2-i)": a, "1/(3+4i)": b})
    rep = cross_field_check(ctx, None, M.gen)
    ok = (_strs(rep.X_K) == [] and _strs(rep.X_L) == ["(5, x+2)"] and not rep.exact_case
          and rep.x_lift_contained and set(rep.X_lift) != set(rep.X_L))
    yield CheckResult(S, "K=Q, L=Q(i) strict containment", ST_CROSS_FIELD, ok,
                      {"X_lift": _strs(rep.X_lift), "X_L": _strs(rep.X_L), "Y_L": _strs(rep.Y_L),
                       "Y_lift": _strs(rep.Y_lift)})

    for q, want in (((5, 5, 1, 2), True), ((4, 2, 1, 2), False), ((4, 2, 2, 2), True)):
        cert = is_realizable(q)
        yield CheckResult(S, f"tuple {q}", ST_TUPLE_SOUND, cert.realizable == want,
                          {"realizable": cert.realizable, "reason": cert.reason})


# ------------------------------------------------------------------ invariants and tuples


def suite_d_formula(seed: int = 0, count: int = 500, **_) -> Iterator[CheckResult]:
    rng = random.Random(seed)
    bad = []
    for _ in range(count):
        F = random_minimal_polynomial(rng, 4, 50)
        inv = invariants(F)
        c, d, e, n = inv.as_tuple()
        brute = smallest_denominator_bruteforce(F)
        if brute != d or c % d or d**n % c or (d ** (n - 1) * e) % c:
            bad.append(str(F))
    yield CheckResult("d-formula", f"{count} random polynomials", ST_D_FORMULA, not bad, {"failures": bad[:5]})


def suite_tuples(height: int = 40, max_c: int = 12, **_) -> Iterator[CheckResult]:
    realized = bruteforce_realized_tuples(2, height)
    unsound = sorted(q for q in realized if not is_realizable(q).realizable)
    yield CheckResult("tuples", f"brute force height {height}", ST_TUPLE_SOUND, not unsound,
                      {"realized": len(realized), "failures": [list(q) for q in unsound[:5]]})
    bad, count = [], 0
    for cert in atlas([2], max_c):
        if not cert.realizable:
            continue
        count += 1
        W = construct_witness(cert.query)
        if invariants(W).as_tuple() != cert.query.as_tuple() or not is_eisenstein(W.coeffs, cert.eisenstein_prime):
            bad.append(list(cert.query.as_tuple()))
    yield CheckResult("tuples", f"witnesses c <= {max_c}", ST_TUPLE_COMPLETE, not bad,
                      {"realizable": count, "failures": bad[:5]})


# ------------------------------------------------------------------ X and Y


def suite_criteria(seed: int = 0, count: int = 100, **_) -> Iterator[CheckResult]:
    rng = random.Random(seed)
    x_bad, y_bad, id_bad, primes = [], [], [], 0
    for _ in range(count):
        ctx, K = random_quadratic_pair(rng)
        rep = compute_xy(ctx, K)
        tested = [c.prime for c in rep.candidates]
        # a few primes outside the candidate set, where every criterion must say no
        for p in (2, 3):
            tested.extend(P for P in K.field.primes_above(p) if P not in tested)
        for P in tested:
            primes += 1
            _, x1, y1 = coefficient_criteria(rep.b, P)
            _, x2, y2 = splitting_criteria(ctx, K, P)
            _, x3, y3 = newton_criteria(rep.b, P)
            where = f"γ={ctx.gamma} in {ctx.field}, K={K.label()}, P={P}"
            if not x1 == x2 == x3:
                x_bad.append(where)
            if not y1 == y2 == y3:
                y_bad.append(where)
            left, right = newton_identity_sides(ctx, K, P)
            if left != right:
                id_bad.append(where)
    info = {"pairs": count, "primes": primes}
    yield CheckResult("criteria", "X membership", ST_X_CRITERIA, not x_bad, {**info, "failures": x_bad[:5]})
    yield CheckResult("criteria", "Y membership", ST_Y_CRITERIA, not y_bad, {**info, "failures": y_bad[:5]})
    yield CheckResult("criteria", "root valuations", ST_NEWTON_IDENTITY, not id_bad, {**info, "failures": id_bad[:5]})


def suite_cross_field(seed: int = 0, count: int = 50, **_) -> Iterator[CheckResult]:
    rng = random.Random(seed)
    bad, exact = [], 0
    for k in range(count):
        cfg = random_chain(rng)
        rep = cross_field_check(cfg.ctx, cfg.K, cfg.L, seed=seed + k)
        exact += rep.exact_case
        if not rep.ok:
            bad.append(cfg.describe())
    yield CheckResult("cross-field", f"{count} random K ⊆ L", ST_CROSS_FIELD, not bad,
                      {"exact_cases": exact, "failures": bad[:5]})


def suite_same_denom(seed: int = 0, count: int = 50, **_) -> Iterator[CheckResult]:
    rng = random.Random(seed)
    bad, trues = [], 0
    for _ in range(count):
        M = random_quadratic_field(rng, 15)
        g1 = random_element(rng, M, 6, (2, 3, 5, 6, 10, 15))
        # half the time share the denominator primes to hit the positive case
        g2 = random_element(rng, M, 6, (2, 3, 5, 6, 10, 15)) if rng.random() < 0.5 else g1 * 7 + 1
        ctx = GammaContext(M, g1)
        try:
            r = same_denominator(ctx, g2, debug=True)
        except AssertionError:
            bad.append(f"{g1}, {g2} in {M}")
            continue
        trues += r.value
    yield CheckResult("same-denom", f"{count} random pairs", ST_SAME_DENOM, not bad,
                      {"true_pairs": trues, "failures": bad[:5]})


def suite_membership(seed: int = 0, count: int = 200, cap: int = 64, **_) -> Iterator[CheckResult]:
    rng = random.Random(seed)
    bad, members = [], 0
    for _ in range(count):
        ctx, K, alpha = random_membership_case(rng)
        m = membership(ctx, K, alpha)
        res = membership_oracle(ctx, K, alpha, cap=cap)
        members += m
        if m != res.member:
            bad.append(f"α={alpha}, K={K.label()}, γ={ctx.gamma} in {ctx.field}: {res.status}")
    yield CheckResult("membership", f"{count} random cases", ST_MEMBERSHIP, not bad,
                      {"members": members, "cap": cap, "failures": bad[:5]})


# ------------------------------------------------------------------ ideals and generating sets


def _radical_checks(ctx: GammaContext, label: str) -> Iterator[CheckResult]:
    gs = generating_set(ctx)
    for K in gs.lattice:
        sec = denominator_section(ctx, K)
        yield CheckResult("radical", f"{label} over {K.label()} (Y)", ST_RADICAL_Y, sec.matches,
                          {"section": str(sec.ideal), "radical": str(sec.radical)})
        chk = check_field(ctx, gs.S, K)
        yield CheckResult("radical", f"{label} over {K.label()} (X)", ST_RADICAL_X, chk.radical_matches,
                          {"X": _strs(chk.X)})


def _standard_gammas():
    M = cached_field((1, 0, 1))
    i = M.gen
    yield "1/(2+i)", GammaContext(M, 1 / (2 + i))
    yield "1/(60+15i)", GammaContext(M, 1 / (60 + 15 * i))
    yield "1/2 in Q(i)", GammaContext(M, M.rational(1) / 2)
    Q4 = cached_field((1, 0, 0, 0, 1))
    z = Q4.gen
    yield "1/(3+ζ+ζ^2) in Q(ζ8)", GammaContext(Q4, 1 / (3 + z + z * z))
    yield "(1+ζ)/6 in Q(ζ8)", GammaContext(Q4, (1 + z) / 6)
    C = cached_field((-3, -1, 0, 1))
    yield "1/(2+θ), θ^3=θ+3", GammaContext(C, 1 / (2 + C.gen))


def suite_radical(seed: int = 0, count: int = 6, **_) -> Iterator[CheckResult]:
    for label, ctx in _standard_gammas():
        yield from _radical_checks(ctx, label)
    rng = random.Random(seed)
    for k in range(count):
        ctx, _ = random_quadratic_pair(rng)
        yield from _radical_checks(ctx, f"random #{k}")


def suite_genset(seed: int = 0, count: int = 4, **_) -> Iterator[CheckResult]:
    rng = random.Random(seed)
    cases = list(_standard_gammas())
    for k in range(count):
        M = random_quadratic_field(rng, 15)
        cases.append((f"random #{k}", GammaContext(M, random_element(rng, M, 6))))
    for label, ctx in cases:
        gs = generating_set(ctx)
        rep = verify_generating_set(ctx, gs.S)
        failed = [c.L.label() for c in rep.checks if not c.ok]
        yield CheckResult("genset", label, ST_GENSET, rep.ok,
                          {"S": [str(a) for a in gs.S], "fields": len(rep.checks), "failures": failed})


SUITES: dict[str, Callable[..., Iterator[CheckResult]]] = {
    "examples": suite_examples,
    "d-formula": suite_d_formula,
    "tuples": suite_tuples,
    "criteria": suite_criteria,
    "cross-field": suite_cross_field,
    "same-denom": suite_same_denom,
    "membership": suite_membership,
    "radical": suite_radical,
    "genset": suite_genset,
}


def run_suite(name: str, **kwargs) -> list[CheckResult]:
    if name == "all":
        return [r for n in SUITES for r in SUITES[n](**kwargs)]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(['all', *SUITES])}")
    return list(SUITES[name](**kwargs))


__all__ = ["CheckResult", "SUITES", "run_suite"]
