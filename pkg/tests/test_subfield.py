from hypothesis import given, strategies as st

from algden.nf.subfield import (
    SubfieldView,
    adjoin,
    adjoin_square_root,
    cached_field,
    prime_below,
    primes_above_in,
    rational_subfield,
    subfield_lattice,
    subfields,
    whole_field,
)

ZETA8 = cached_field((1, 0, 0, 0, 1))
GAUSS = cached_field((1, 0, 1))


def test_quadratic_generator_is_canonical():
    z = ZETA8.gen
    K = SubfieldView(ZETA8, 5 * z**2 + 3)  # Q(i) under an ugly name
    assert K.kappa == z**2
    assert tuple(K.field.g) == (1, 0, 1)
    assert K.label() == "Q(x^2)"


def test_golden_ratio_generator():
    M = cached_field((-5, 0, 1))
    K = SubfieldView(M, M.gen * 3 - 1)
    assert K.kappa == M.gen  # degree 2 in a quadratic ambient: the ambient generator
    assert K.label() == "Q(x)"


def test_subfields_of_zeta8():
    subs = subfields(whole_field(ZETA8))
    assert [K.degree for K in subs] == [1, 2, 2, 2, 4]
    discs = sorted(K.field.discriminant for K in subs if K.degree == 2)
    assert discs == [-8, -4, 8]


def test_biquadratic_from_other_presentation():
    M = cached_field((9, 0, -2, 0, 1))
    assert sorted(K.field.discriminant for K in subfields(whole_field(M)) if K.degree == 2) == [-8, -4, 8]


def test_cyclic_quartic_has_one_quadratic_subfield():
    # x^4 + 4x^2 + 2 generates the degree-4 cyclic field inside Q(ζ16)
    M = cached_field((2, 0, 4, 0, 1))
    quads = [K for K in subfields(whole_field(M)) if K.degree == 2]
    assert len(quads) == 1 and quads[0].field.discriminant == 8


def test_primitive_quartic_has_none():
    M = cached_field((-3, -1, 0, 0, 1))  # Galois group S4
    assert [K.degree for K in subfields(whole_field(M))] == [1, 4]


def test_lattice_inclusions():
    lat = subfield_lattice(whole_field(ZETA8))
    assert lat[0][1] == []
    assert lat[-1][1] == [0, 1, 2, 3]


def test_embed_restrict_roundtrip():
    K = SubfieldView(ZETA8, ZETA8.gen**2)
    y = K.field.element([3, -7])
    assert K.restrict(K.embed(y)) == y
    assert K.restrict(ZETA8.gen) is None


def test_adjoin():
    Q = rational_subfield(ZETA8)
    z = ZETA8.gen
    assert adjoin(Q, z**2 + 1).degree == 2
    assert adjoin(Q, z + z**3).same_as(SubfieldView(ZETA8, z + z**3))
    assert adjoin(SubfieldView(ZETA8, z**2), z**3).degree == 4


@given(st.sampled_from([2, 3, 5, 6, 7, 10, -3, -5]))
def test_adjoin_square_root(D):
    ext = adjoin_square_root(GAUSS, D)
    assert ext is not None
    N, phi, root = ext
    assert N.n == 4
    assert root * root == N.rational(D)
    i = phi(GAUSS.gen)
    assert i * i == -N.one


def test_adjoin_square_root_already_present():
    assert adjoin_square_root(GAUSS, -1) is None
    assert adjoin_square_root(GAUSS, -4) is None


def test_primes_between_subfields():
    L = whole_field(GAUSS)
    Q = rational_subfield(GAUSS)
    [P5] = Q.primes_above(5)
    above = primes_above_in(P5, Q, L)
    assert len(above) == 2
    assert all(prime_below(Qp, L, Q) == P5 for Qp in above)
