"""Subfields of an ambient number field, each given by a generator κ.

A :class:`SubfieldView` pairs a subfield K = Q(κ) ⊆ M with an abstract copy
``K.field`` (built from the minimal polynomial of an integral multiple of κ,
so that it carries its own maximal order and primes) and the two maps
between them.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import count
from typing import Sequence

from ..arith import is_square, squarefree_part
from ..linalg import solve_left
from ..poly import (
    format_poly,
    invariants,
    is_irreducible_over_Q,
    is_squarefree,
    padd,
    pmul,
    primitive_int,
    pscale,
    psub,
    rational_roots,
)
from .field import FieldElement, FieldError, NumberField, generated_dimension
from .primes import PrimeIdeal, factor_prime


class SubfieldError(FieldError):
    pass


@lru_cache(maxsize=256)
def cached_field(g: tuple[int, ...]) -> NumberField:
    """One shared NumberField per defining polynomial."""
    return NumberField(list(g), check=False)


def canonical_generator(ambient: NumberField, kappa: FieldElement, m: int) -> FieldElement:
    """A tidier generator of Q(κ), such as √D or (1+√D)/2 for a quadratic subfield."""
    if m == 1:
        return ambient.one
    if m == ambient.n:
        return ambient.gen
    if m == 2:
        q, p, _ = kappa.minpoly()
        disc = p * p - 4 * q
        D = squarefree_part(disc.numerator * disc.denominator)
        ratio = Fraction(D) / disc
        # ratio = r^2 for a rational r, so (2κ + p) r squares to D
        r = Fraction(_isqrt_exact(ratio.numerator), _isqrt_exact(ratio.denominator))
        root = (kappa * 2 + p) * r
        return (root + 1) / 2 if D % 4 == 1 else root
    return kappa


def _isqrt_exact(n: int) -> int:
    from math import isqrt

    if not is_square(n):
        raise AssertionError(f"{n} is not a perfect square")
    return isqrt(n)


def integral_scale(x: FieldElement) -> int:
    """Smallest positive integer k with k*x an algebraic integer."""
    mp = primitive_int(x.minpoly())
    return invariants(mp).d


class SubfieldView:
    """The subfield Q(κ) of ``ambient``.

    >>> M = NumberField([1, 0, 1])
    >>> Q = SubfieldView(M, M.one)
    >>> Q.degree, M.degree
    (1, 2)
    """

    def __init__(self, ambient: NumberField, kappa: FieldElement, degree: int | None = None):
        if kappa.field != ambient:
            raise SubfieldError("generator does not belong to the ambient field")
        mp = kappa.minpoly()
        m = len(mp) - 1
        if degree is not None and m != degree:
            raise SubfieldError(f"generator has degree {m}, expected {degree}")
        if ambient.n % m:
            raise SubfieldError("subfield degree does not divide the ambient degree")
        kappa = canonical_generator(ambient, kappa, m)
        k = integral_scale(kappa)
        self.ambient = ambient
        self.kappa = kappa
        self.scale = k
        self.kappa_int = kappa * k
        g = [int(c) for c in self.kappa_int.minpoly()]
        self.field = cached_field(tuple(g))
        self.degree = m
        pw = [ambient.one]
        for _ in range(1, m):
            pw.append(pw[-1] * self.kappa_int)
        self._powers = pw
        self._power_rows = [p.coords for p in pw]

    def __repr__(self) -> str:
        return f"SubfieldView(Q({self.kappa}), degree {self.degree})"

    @property
    def relative_degree(self) -> int:
        return self.ambient.n // self.degree

    def embed(self, y: FieldElement) -> FieldElement:
        """Image in the ambient field of an element of ``self.field``."""
        acc = self.ambient.zero
        for c, p in zip(y.coords, self._powers):
            if c:
                acc = acc + p * c
        return acc

    def restrict(self, x: FieldElement) -> FieldElement | None:
        """Preimage in ``self.field`` of an ambient element, or None when x ∉ K."""
        sol = solve_left(self._power_rows, x.coords)
        if sol is None:
            return None
        return self.field.element(sol)

    def to_sub(self, x: FieldElement) -> FieldElement:
        y = self.restrict(x)
        if y is None:
            raise SubfieldError(f"{x} does not lie in the subfield {self}")
        return y

    def contains(self, x: FieldElement) -> bool:
        return self.restrict(x) is not None

    def is_subfield_of(self, other: "SubfieldView") -> bool:
        return other.degree % self.degree == 0 and other.contains(self.kappa)

    def same_as(self, other: "SubfieldView") -> bool:
        return self.degree == other.degree and other.contains(self.kappa)

    def primes_above(self, p: int) -> list[PrimeIdeal]:
        return factor_prime(self.field, p)

    def sort_key(self) -> tuple:
        d = self.field.discriminant
        return (self.degree, abs(d), d, self.field.g)

    def label(self) -> str:
        if self.degree == 1:
            return "Q"
        if self.degree == self.ambient.n:
            return "Q(x)"
        return f"Q({self.kappa})"


def rational_subfield(M: NumberField) -> SubfieldView:
    return SubfieldView(M, M.one)


def whole_field(M: NumberField) -> SubfieldView:
    return SubfieldView(M, M.gen)


# ------------------------------------------------------------------ relative minimal polynomials


def min_poly_over_subfield(M: NumberField, gamma: FieldElement, K: SubfieldView) -> list[FieldElement]:
    """Coefficients b_0..b_m (in ``K.field``, b_m = 1) of the monic minimal polynomial of γ over K.

    >>> M = NumberField([1, 0, 1])
    >>> gam = 1 / M.element([2, 1])
    >>> [str(b) for b in min_poly_over_subfield(M, gam, rational_subfield(M))]
    ['1/5', '-4/5', '1']
    """
    if gamma.field != M or K.ambient != M:
        raise SubfieldError("γ and the subfield must share the ambient field")
    rows: list = []
    gpow = M.one
    for m in count(0):
        target = gpow
        # is γ^m in the K-span of 1, γ, …, γ^(m-1)?
        if rows:
            sol = solve_left(rows, target.coords)
            if sol is not None:
                coeffs = []
                for b in range(m):
                    c = sol[b * K.degree:(b + 1) * K.degree]
                    coeffs.append(-K.field.element(c))
                coeffs.append(K.field.one)
                return coeffs
        if m >= M.n + 1:
            raise AssertionError("relative minimal polynomial search overran the degree")
        rows.extend((p * gpow).coords for p in K._powers)
        gpow = gpow * gamma


def relative_minpoly_embedded(M: NumberField, gamma: FieldElement, K: SubfieldView) -> list[FieldElement]:
    return [K.embed(b) for b in min_poly_over_subfield(M, gamma, K)]


# ------------------------------------------------------------------ primitive elements


def primitive_element(elems: Sequence[FieldElement], bound: int = 50) -> FieldElement:
    """An element generating the same subfield as ``elems``, certified by dimension."""
    if not elems:
        raise SubfieldError("need at least one element")
    target = generated_dimension(*elems)
    cur = elems[0]
    for e in elems[1:]:
        want = generated_dimension(cur, e)
        for t in _small_ints(bound):
            cand = cur + e * t
            if cand.degree() == want:
                cur = cand
                break
        else:
            raise SubfieldError("no primitive element found within the search bound")
    if cur.degree() != target:
        raise AssertionError("primitive element certification failed")
    return cur


def _small_ints(bound: int):
    yield 0
    for k in range(1, bound + 1):
        yield k
        yield -k


def compositum(*views: SubfieldView) -> SubfieldView:
    M = views[0].ambient
    return SubfieldView(M, primitive_element([v.kappa for v in views]))


def adjoin(K: SubfieldView, gamma: FieldElement) -> SubfieldView:
    """The subfield K(γ) of the ambient field.

    Canonical generators are preferred (K itself, the ambient generator, then
    γ) so that repeated calls present the same field the same way.
    """
    M = K.ambient
    target = generated_dimension(K.kappa, gamma)
    if target == K.degree:
        return K
    if target == M.n:
        return SubfieldView(M, M.gen)
    if gamma.degree() == target:
        return SubfieldView(M, gamma)
    return SubfieldView(M, primitive_element([K.kappa, gamma]))


# ------------------------------------------------------------------ subfield lattices


def quadratic_subfields_of_quartic(K: SubfieldView) -> list[SubfieldView]:
    """Quadratic subfields of a quartic K, one per rational root of the resolvent cubic."""
    if K.degree != 4:
        raise SubfieldError("resolvent method needs a quartic field")
    theta = K.kappa
    mp = theta.minpoly()
    d, c, b, a = mp[0], mp[1], mp[2], mp[3]
    resolvent = [-(a * a * d - 4 * b * d + c * c), a * c - 4 * d, -b, Fraction(1)]
    out = []
    for r in rational_roots(resolvent):
        det = a * a - 4 * (b - r)
        if det != 0:
            # t = u + v s for the pair sum s and pair product t through θ
            u = (-c * (-a) - 2 * (b - r) * r) / det
            v = (-a * r + 2 * c) / det
            gen = (theta * theta + u) / (theta - v)
            check_u = -a * u + 2 * (b - r) * v
            if check_u != -c:
                raise AssertionError("resolvent linear system inconsistent")
        else:
            s = -a / 2
            gen = theta * s - theta * theta
        if gen.degree() != 2:
            raise AssertionError(f"resolvent root {r} did not give a quadratic element")
        view = SubfieldView(K.ambient, gen)
        if not any(view.same_as(o) for o in out):
            out.append(view)
    return out


def subfields(K: SubfieldView) -> list[SubfieldView]:
    """All subfields of K (including Q and K) in canonical order, for [K:Q] <= 4."""
    M = K.ambient
    n = K.degree
    if n > 4:
        raise SubfieldError(f"subfield enumeration supports degree <= 4, got {n}")
    Q = rational_subfield(M)
    if n == 1:
        return [Q]
    mids = quadratic_subfields_of_quartic(K) if n == 4 else []
    out = [Q] + mids + [K]
    return sorted(out, key=SubfieldView.sort_key)


def subfield_lattice(K: SubfieldView) -> list[tuple[SubfieldView, list[int]]]:
    """Subfields with the indices of the proper subfields they contain."""
    subs = subfields(K)
    out = []
    for i, F in enumerate(subs):
        below = [j for j, E in enumerate(subs) if j != i and E.degree < F.degree and E.is_subfield_of(F)]
        out.append((F, below))
    return out


# ------------------------------------------------------------------ primes across subfields


def map_between(K: SubfieldView, L: SubfieldView):
    """Function sending ``K.field`` elements to ``L.field`` elements (requires K ⊆ L)."""
    def f(y: FieldElement) -> FieldElement:
        return L.to_sub(K.embed(y))

    return f


def prime_below(Q: PrimeIdeal, L: SubfieldView, K: SubfieldView) -> PrimeIdeal:
    """The prime of K under the prime Q of L (K ⊆ L inside one ambient field)."""
    f = map_between(K, L)
    for P in factor_prime(K.field, Q.p):
        if all(Q.contains(f(x)) for x in _prime_elements(P)):
            return P
    raise AssertionError("no prime of K below Q")


def primes_above_in(P: PrimeIdeal, K: SubfieldView, L: SubfieldView) -> list[PrimeIdeal]:
    """Primes of L lying over the prime P of K."""
    f = map_between(K, L)
    elems = [f(x) for x in _prime_elements(P)]
    return [Q for Q in factor_prime(L.field, P.p) if all(Q.contains(x) for x in elems)]


def _prime_elements(P: PrimeIdeal) -> list[FieldElement]:
    K = P.field
    out = [K.rational(P.p)]
    if P.generator is not None:
        out.append(P.generator)
    return out


def adjoin_square_root(M: NumberField, D: int, shifts: int = 20):
    """The field M(√D) with a map from M, or None when √D already lies in M.

    Uses the norm of g(x - t√D), namely A(x)^2 - D B(x)^2 where
    g(x - t√D) = A(x) + √D B(x); in the new field √D = -A(z)/B(z).
    Returns ``(N, phi, sqrt_D)``.
    """
    g = list(M.g)
    for t in range(1, shifts + 1):
        A, B = [0], [0]
        pa, pb = [1], [0]
        for k, gk in enumerate(g):
            if gk:
                A, B = padd(A, pscale(pa, gk)), padd(B, pscale(pb, gk))
            # (pa + y pb)(x - t y) with y^2 = D
            pa, pb = (psub(pmul(pa, [0, 1]), pscale(pb, t * D)), psub(pmul(pb, [0, 1]), pscale(pa, t)))
        h = [int(c) for c in psub(pmul(A, A), pscale(pmul(B, B), D))]
        if not is_squarefree(h):
            continue
        if not is_irreducible_over_Q(h)[0]:
            return None
        N = cached_field(tuple(h))
        z = N.gen
        Az = N.from_poly(A)
        Bz = N.from_poly(B)
        root = -Az / Bz
        theta = z - root * t
        powers = [N.one]
        for _ in range(1, M.n):
            powers.append(powers[-1] * theta)

        def phi(x: FieldElement) -> FieldElement:
            acc = N.zero
            for c, pw in zip(x.coords, powers):
                if c:
                    acc = acc + pw * c
            return acc

        return N, phi, root
    raise SubfieldError("no squarefree norm found for the square-root adjunction")


def describe_poly(coeffs: Sequence[FieldElement]) -> str:
    return " + ".join(f"({c})*x^{i}" for i, c in enumerate(coeffs) if not c.is_zero()) or "0"


__all__ = [
    "SubfieldView",
    "SubfieldError",
    "adjoin",
    "adjoin_square_root",
    "cached_field",
    "compositum",
    "format_poly",
    "min_poly_over_subfield",
    "prime_below",
    "primes_above_in",
    "primitive_element",
    "quadratic_subfields_of_quartic",
    "rational_subfield",
    "subfield_lattice",
    "subfields",
    "whole_field",
]
