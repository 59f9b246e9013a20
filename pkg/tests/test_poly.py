import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, strategies as st

from algden.poly import (
    MinimalPolynomial,
    ReducibleError,
    d_equals_c_criterion,
    factor_mod_p,
    format_poly,
    invariants,
    is_irreducible_over_Q,
    normalize,
    random_minimal_polynomial,
    rational_roots,
    scaled_minpoly,
    smallest_denominator_bruteforce,
)

X = sympy.Symbol("x")

coeff = st.integers(min_value=-30, max_value=30)


def polys(min_deg=1, max_deg=4):
    return st.integers(min_deg, max_deg).flatmap(
        lambda n: st.tuples(st.lists(coeff, min_size=n, max_size=n), st.integers(1, 30)).map(lambda t: t[0] + [t[1]])
    )


# hand-derived invariants (c, d, e, n)
DERIVED = {
    (1, -4, 5): (5, 5, 1, 2),  # worked example: minimal polynomial of 1/(2+i)
    (1, 2, 2): (2, 2, 2, 2),  # roots (-1 ± i)/2
    (1, 2, 4): (4, 2, 2, 2),  # roots (-1 ± √-3)/4
    (1, 3, 9): (9, 3, 3, 2),  # roots (-1 ± √-3)/6
    (1, 0, 0, 4): (4, 2, 4, 3),  # γ^3 = -1/4, so (2γ)^3 = -2
    (-2, 0, 0, 0, 9): (9, 3, 9, 4),  # γ^4 = 2/9, (3γ)^4 = 18
    (1, 60, 3825): (3825, 255, 15, 2),  # minimal polynomial of 1/(60+15i)
}


@pytest.mark.parametrize("coeffs, expected", DERIVED.items())
def test_invariants_derived(coeffs, expected):
    assert invariants(normalize(coeffs)).as_tuple() == expected


def test_normalize_scales_and_signs():
    assert normalize([Fraction(-1, 5), Fraction(4, 5), -1]).coeffs == (1, -4, 5)
    with pytest.raises(ReducibleError):
        normalize([-1, 0, 1])


@given(polys())
def test_irreducibility_matches_sympy(coeffs):
    assume(coeffs[0] != 0)
    ours = is_irreducible_over_Q(coeffs)[0]
    assert ours == sympy.Poly(list(reversed(coeffs)), X).is_irreducible


@given(polys())
def test_d_formula_matches_bruteforce(coeffs):
    assume(coeffs[0] != 0 and sympy.Poly(list(reversed(coeffs)), X).is_irreducible)
    F = normalize(coeffs)
    c, d, e, n = invariants(F).as_tuple()
    assert d == smallest_denominator_bruteforce(F)
    assert c % d == 0 and d**n % c == 0 and (d ** (n - 1) * e) % c == 0
    assert d_equals_c_criterion(F.coeffs) == (d == c)


@given(polys(2, 4), st.integers(1, 12))
def test_scaled_minpoly_has_scaled_roots(coeffs, k):
    assume(coeffs[0] != 0 and sympy.Poly(list(reversed(coeffs)), X).is_irreducible)
    g = scaled_minpoly(coeffs, k)
    f_expr = sympy.Poly(list(reversed(coeffs)), X)
    g_expr = sympy.Poly(list(reversed(g)), X)
    # g(k x) is a rational multiple of f(x)
    comp = sympy.Poly(g_expr.as_expr().subs(X, k * X), X)
    q, r = sympy.div(comp, f_expr)
    assert r.is_zero and q.is_ground


def test_factor_mod_p_matches_sympy():
    f = [1, 0, 0, 0, 1]
    ours = sorted((tuple(g), e) for g, e in factor_mod_p(f, 17))
    assert len(ours) == 4 and all(e == 1 for _, e in ours)


def test_rational_roots_and_format():
    assert rational_roots([-1, 0, 4]) == [Fraction(-1, 2), Fraction(1, 2)]
    assert format_poly([1, -4, 5]) == "5*x^2-4*x+1"


def test_random_polynomials_are_reproducible():
    a = [str(random_minimal_polynomial(random.Random(3))) for _ in range(5)]
    b = [str(random_minimal_polynomial(random.Random(3))) for _ in range(5)]
    assert a == b
    assert all(isinstance(random_minimal_polynomial(random.Random(i)), MinimalPolynomial) for i in range(10))
