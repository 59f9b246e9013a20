import pytest
from hypothesis import given, strategies as st

from algden.poly import invariants
from algden.tuples import (
    NotRealizableError,
    TupleQuery,
    Violation,
    atlas,
    bruteforce_realized_tuples,
    construct_witness,
    eisenstein_prime_for,
    is_eisenstein,
    is_realizable,
)

# heights at which brute force realizes every realizable tuple (found empirically)
FULL_COVER_HEIGHT_N2_C12 = 12
FULL_COVER_HEIGHT_N3_C8 = 9


def test_worked_tuple_examples():
    assert is_realizable((5, 5, 1, 2)).realizable
    bad = is_realizable((4, 2, 1, 2))
    assert not bad.realizable and bad.violated_condition is Violation.C_NOT_DIV_DN1E
    assert bad.reason == "c∤d^{n−1}e"
    assert str(construct_witness((4, 2, 2, 2))) == "4*x^2+6*x+3"


def test_corrected_per_prime_condition():
    # 2x^2+2x+1 has invariants (2,2,2,2); the stricter "v_p(c) = n v_p(d)" would reject it
    cert = is_realizable((2, 2, 2, 2))
    assert cert.realizable and not cert.literal_realizable
    assert invariants([1, 2, 2]).as_tuple() == (2, 2, 2, 2)


def test_unrealizable_raises():
    with pytest.raises(NotRealizableError):
        construct_witness((4, 2, 1, 2))
    with pytest.raises(ValueError):
        TupleQuery(0, 1, 1, 2)


def test_degree_one():
    assert is_realizable((3, 3, 3, 1)).realizable
    assert not is_realizable((3, 1, 3, 1)).realizable
    assert str(construct_witness((6, 6, 6, 1))) == "6*x-1"


def test_atlas_small_sweep():
    certs = list(atlas([2], 4))
    assert [c.query.as_tuple() for c in certs] == sorted(c.query.as_tuple() for c in certs)
    by_q = {c.query.as_tuple(): c for c in certs}
    assert by_q[(4, 2, 2, 2)].realizable
    assert not by_q[(4, 2, 1, 2)].realizable
    for c in certs:
        if c.realizable:
            assert invariants(c.witness).as_tuple() == c.query.as_tuple()


def test_bruteforce_examples():
    found = bruteforce_realized_tuples(2, 5)
    assert (5, 5, 1, 2) in found
    assert (4, 2, 1, 2) not in bruteforce_realized_tuples(2, 40)


@pytest.mark.parametrize("n, height, max_c", [(2, FULL_COVER_HEIGHT_N2_C12, 12), (3, FULL_COVER_HEIGHT_N3_C8, 8)])
def test_classifier_matches_bruteforce(n, height, max_c):
    realized = bruteforce_realized_tuples(n, height)
    assert all(is_realizable(q).realizable for q in realized)
    predicted = {c.query.as_tuple() for c in atlas([n], max_c) if c.realizable}
    assert predicted <= realized


@given(st.integers(1, 60), st.integers(1, 60), st.integers(1, 60), st.integers(2, 5))
def test_witness_soundness(c, d, e, n):
    cert = is_realizable((c, d, e, n))
    if cert.realizable:
        W = cert.witness
        assert invariants(W).as_tuple() == (c, d, e, n)
        assert is_eisenstein(W.coeffs, cert.eisenstein_prime)
        assert cert.eisenstein_prime == eisenstein_prime_for(c)
    else:
        assert cert.reason


@given(st.integers(1, 40), st.integers(1, 40), st.integers(1, 40), st.integers(2, 4))
def test_fine_condition_equivalent(c, d, e, n):
    cert = is_realizable((c, d, e, n))
    assert all(dg.ok == dg.fine_ok for dg in cert.diagnostics)
