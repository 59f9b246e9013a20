import pytest
from hypothesis import given, settings, strategies as st

from algden.classgroup import (
    ClassGroupError,
    class_group,
    effort_limit,
    fundamental_unit,
    is_principal,
    minkowski_bound,
    power_generator,
    quotient_class_group,
    resolve_effort,
)
from algden.nf import FractionalIdeal
from algden.nf.subfield import cached_field

# class groups from standard tables
KNOWN = {
    (5, 0, 1): [2],  # Q(√-5)
    (14, 0, 1): [4],
    (26, 0, 1): [6],
    (6, -1, 1): [3],  # Q(√-23)
    (30, 0, 1): [2, 2],
    (21, 0, 1): [2, 2],
    (1, 0, 1): [],
    (-2, 0, 1): [],
    (-10, 0, 1): [2],
    (-79, 0, 1): [3],
    (-57, -1, 1): [3],  # Q(√229)
    (-94, 0, 1): [],
    (-3, -1, 0, 1): [],
    (-2, 0, 0, 1): [],
    (1, 0, 0, 0, 1): [],
}


@pytest.mark.parametrize("g, divs", KNOWN.items())
def test_known_class_groups(g, divs):
    assert class_group(cached_field(g)).elementary_divisors == divs


def test_quartic_with_nontrivial_class_group_is_refused():
    # h(Q(⁴√-5)) > 1 and only h = 1 is certified beyond degree 2
    with pytest.raises(ClassGroupError):
        class_group(cached_field((5, 0, 0, 0, 1)))


def test_minkowski_bound_gauss():
    assert minkowski_bound(cached_field((1, 0, 1))) == 1


def test_pell_unit():
    K = cached_field((-94, 0, 1))
    u = fundamental_unit(K)
    assert abs(u.norm()) == 1
    assert {abs(c) for c in u.coords} == {2143295, 221064}


def test_rabinowitsch_primes():
    K = cached_field((5, 0, 1))
    P2 = K.primes_above(2)[0]
    for P3 in K.primes_above(3):
        assert not is_principal(P3).principal
        # classes of order 2 multiply to the trivial class
        res = is_principal(FractionalIdeal.from_prime(P2) * FractionalIdeal.from_prime(P3))
        assert res.principal
        assert FractionalIdeal.principal(res.generator) == FractionalIdeal.from_prime(P2) * FractionalIdeal.from_prime(P3)


def test_power_generator_of_ramified_two():
    K = cached_field((5, 0, 1))
    gen = power_generator(K.primes_above(2)[0], 2)
    assert FractionalIdeal.principal(gen) == FractionalIdeal.principal(K.rational(2))


def test_quotient_class_group():
    K = cached_field((5, 0, 1))
    G = class_group(K)
    assert quotient_class_group(G, [K.primes_above(2)[0]]) == []
    # a^2 + 5b^2 = 7 has no solution, so the primes above 7 are not principal
    assert quotient_class_group(G, K.primes_above(7)) == []
    assert quotient_class_group(G, K.primes_above(29)) == [2]
    K = cached_field((14, 0, 1))
    G = class_group(K)
    # (3, x+1) generates Z/4, and its square only cuts it to Z/2
    P3 = K.primes_above(3)[0]
    assert G.order_of(P3) == 4
    sq = FractionalIdeal.from_prime(P3) ** 2
    assert quotient_class_group(G, [P3]) == []
    assert G.order_of(sq) == 2


def test_effort_context():
    assert resolve_effort(None) == 200000
    with effort_limit(7):
        assert resolve_effort(None) == 7
        assert resolve_effort(11) == 11
    assert resolve_effort(None) == 200000


@settings(max_examples=25)
@given(st.integers(-40, 40), st.integers(-40, 40))
def test_principal_ideals_are_recognized(a, b):
    K = cached_field((26, 0, 1))
    x = K.element([a, b])
    if x.is_zero():
        return
    res = is_principal(FractionalIdeal.principal(x))
    assert res.principal
    q = res.generator / x
    assert q.is_integral() and (1 / q).is_integral()


@settings(max_examples=25)
@given(st.sampled_from([2, 3, 5, 7, 11, 13]), st.sampled_from([(5, 0, 1), (14, 0, 1), (-79, 0, 1), (6, -1, 1)]))
def test_order_kills_class(p, g):
    K = cached_field(g)
    G = class_group(K)
    for P in K.primes_above(p):
        k = G.order_of(P)
        assert G.h % k == 0
        gen = power_generator(P, k)
        assert FractionalIdeal.principal(gen) == FractionalIdeal.from_prime(P) ** k
