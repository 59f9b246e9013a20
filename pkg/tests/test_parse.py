from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from algden.nf.subfield import cached_field
from algden.parse import ParseError, parse_element, parse_field, parse_poly, parse_rational_poly, tokenize

GAUSS = cached_field((1, 0, 1))


@pytest.mark.parametrize("text, coeffs", [
    ("5*x^2-4*x+1", [1, -4, 5]),
    ("5x**2 - 4x + 1", [1, -4, 5]),
    ("(x+1)^2", [1, 2, 1]),
    ("2(x-1)(x+1)", [-2, 0, 2]),
    ("[1, -4, 5]", [1, -4, 5]),
    ("-x", [0, -1]),
    ("7", [7]),
])
def test_parse_poly(text, coeffs):
    assert parse_poly(text) == coeffs


def test_rational_poly():
    assert parse_rational_poly("x/2 + 1/3") == [Fraction(1, 3), Fraction(1, 2)]


@pytest.mark.parametrize("text, pos, token", [
    ("5*x^2-4*y+1", 8, "y"),
    ("x^2 + $", 6, "$"),
    ("(x+1", 4, "<end>"),
    ("x^x", 2, "x"),
    ("x + ", 4, "<end>"),
    ("x/(x+1)", 1, "/"),
    ("x/0", 1, "/"),
])
def test_errors_name_token_and_position(text, pos, token):
    with pytest.raises(ParseError) as info:
        parse_poly(text)
    assert info.value.pos == pos
    assert info.value.token == token
    assert f"position {pos}" in str(info.value)


def test_integer_and_nonzero_required():
    with pytest.raises(ParseError, match="integer coefficients"):
        parse_poly("x/2")
    with pytest.raises(ParseError, match="zero polynomial"):
        parse_poly("x - x")
    with pytest.raises(ParseError, match="integers"):
        parse_poly("[1.5, 2]")


def test_parse_field():
    K, var = parse_field("Q[t]/(t^2+1)")
    assert K is GAUSS and var == "t"
    K, var = parse_field("x^2+1")
    assert K is GAUSS and var == "x"


def test_field_error_positions_are_absolute():
    with pytest.raises(ParseError) as info:
        parse_field("Q[t]/(t^2+x)")
    assert info.value.pos == 10 and info.value.token == "x"


@pytest.mark.parametrize("text, msg", [
    ("2x^2+1", "monic"),
    ("x^2-1", "reducible"),
    ("Q(x)/(x^2+1)", "Q\\[x\\]"),
])
def test_field_rejections(text, msg):
    with pytest.raises(ParseError, match=msg):
        parse_field(text)


def test_degree_cap():
    with pytest.raises(ParseError, match="exceeds the cap"):
        parse_field("x^5-2", max_degree=4)


def test_parse_element():
    i = GAUSS.gen
    assert parse_element("1/(60+15x)", GAUSS) == 1 / (60 + 15 * i)
    assert parse_element("x^-1", GAUSS) == -i
    assert parse_element("(1+t)/2", GAUSS, "t") == (1 + i) / 2
    with pytest.raises(ParseError, match="division by zero"):
        parse_element("1/(x^2+1)", GAUSS)


def test_tokenize_positions():
    toks = tokenize(" 12 ** x")
    assert [(t.kind, t.value, t.pos) for t in toks] == [
        ("num", "12", 1), ("op", "^", 4), ("name", "x", 7), ("end", "", 8)]


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=6).filter(lambda c: any(c)))
def test_roundtrip_through_text(coeffs):
    while coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    text = " + ".join(f"({c})*x^{i}" for i, c in enumerate(coeffs))
    assert parse_poly(text) == coeffs
    assert parse_poly(str(coeffs)) == coeffs


def test_positions_count_leading_whitespace():
    with pytest.raises(ParseError) as info:
        parse_poly("  x + $")
    assert info.value.pos == 6
