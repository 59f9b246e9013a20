"""Prime sets X(K, γ) and Y(K, γ) and the ring O_K[γ] ∩ K.

For a subfield K of the ambient field M and γ ∈ M with monic minimal
polynomial f = b_0 + b_1 x + ... + x^m over K, a prime P of O_K lies in

* Y(K, γ) when some b_i (i < m) has negative P-valuation, and
* X(K, γ) when v_P(b_i) > v_P(b_0) for every i >= 1.

Each criterion has two equivalent readings that are computed independently
here: through the primes of K(γ) above P, and through the Newton polygon of
f at P.  Only primes dividing a denominator of some b_i can satisfy either,
so the candidate set is finite and comes from factoring those denominators.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .arith import factorize
from .classgroup import ClassGroup, class_group, power_generator, quotient_class_group
from .linalg import hnf, in_row_lattice, integer_left_kernel, rank_q, solve_integer
from .nf.field import FieldElement, NumberField
from .nf.ideals import FractionalIdeal, product_of_primes
from .nf.newton import NewtonPolygon, newton_polygon
from .nf.primes import PrimeIdeal, factor_prime
from .nf.subfield import (
    SubfieldView,
    adjoin,
    cached_field,
    min_poly_over_subfield,
    prime_below,
    primes_above_in,
    primitive_element,
)
from .poly import InvariantReport, MinimalPolynomial, invariants, normalize, scaled_minpoly

MEMBERSHIP_CAP = 64


class GammaError(ValueError):
    pass


# ------------------------------------------------------------------ context


class GammaContext:
    """An algebraic number γ inside a fixed ambient field M.

    >>> ctx = GammaContext.from_minpoly([1, -4, 5])
    >>> ctx.invariants.as_tuple()
    (5, 5, 1, 2)
    """

    def __init__(self, field: NumberField, gamma: FieldElement):
        if gamma.field != field:
            raise GammaError("γ must be an element of the ambient field")
        self.field = field
        self.gamma = gamma
        if gamma.is_zero():
            self.minpoly = MinimalPolynomial.from_coeffs([0, 1], check=False)
        else:
            self.minpoly = normalize(gamma.minpoly())
        self.invariants: InvariantReport = invariants(self.minpoly)
        self._views: dict = {}
        self._xy: dict = {}

    @classmethod
    def from_minpoly(cls, F: Sequence | MinimalPolynomial) -> "GammaContext":
        """Context for a root of F, with M = Q(dγ) built from the monic polynomial of dγ."""
        if not isinstance(F, MinimalPolynomial):
            F = normalize(F)
        coeffs = list(F.coeffs)
        d = invariants(F).d
        g = scaled_minpoly(coeffs, d)
        M = cached_field(tuple(g))
        return cls(M, M.gen / d)

    def element(self, x) -> FieldElement:
        if isinstance(x, FieldElement):
            return x
        return self.field.rational(x)

    def subfield(self, K=None) -> SubfieldView:
        """Normalise a subfield argument: None (Q), a generator κ, or a view."""
        if isinstance(K, SubfieldView):
            if K.ambient != self.field:
                raise GammaError("subfield lives in a different ambient field")
            return K
        kappa = self.field.one if K is None else self.element(K)
        key = kappa.coords
        view = self._views.get(key)
        if view is None:
            view = SubfieldView(self.field, kappa)
            self._views[key] = view
        return view

    @property
    def gamma_field(self) -> SubfieldView:
        return self.subfield(self.gamma if not self.gamma.is_rational() else None)

    def with_gamma(self, gamma: FieldElement) -> "GammaContext":
        """Context for another element of the same ambient field (shares subfield views)."""
        other = GammaContext(self.field, gamma)
        other._views = self._views
        return other

    def __repr__(self) -> str:
        return f"GammaContext(γ = {self.gamma} in {self.field})"


def _in_K(K: SubfieldView, a) -> FieldElement:
    if not isinstance(a, FieldElement):
        return K.field.rational(a)
    if a.field is K.field:
        return a
    if a.field == K.ambient:
        return K.to_sub(a)
    if a.field == K.field:
        return a
    raise GammaError("element is neither in the subfield nor in the ambient field")


# ------------------------------------------------------------------ X and Y


@dataclass
class PrimeCriteria:
    prime: PrimeIdeal
    valuations: list[int | None]  # v_P(b_i); None for b_i = 0
    in_x: bool
    in_y: bool


@dataclass
class XYReport:
    K: SubfieldView
    b: list[FieldElement]
    X: list[PrimeIdeal]
    Y: list[PrimeIdeal]
    candidates: list[PrimeCriteria] = dc_field(repr=False)

    @property
    def degree(self) -> int:
        return len(self.b) - 1

    def as_dict(self) -> dict:
        return {
            "field": self.K.label(),
            "b": [str(c) for c in self.b],
            "X": [str(P) for P in self.X],
            "Y": [str(P) for P in self.Y],
        }


def coefficient_criteria(b: Sequence[FieldElement], P: PrimeIdeal) -> tuple[list[int | None], bool, bool]:
    """(valuations, in X, in Y) from the coefficient criteria."""
    vals = [None if c.is_zero() else P.valuation(c) for c in b]
    m = len(b) - 1
    in_y = any(v is not None and v < 0 for v in vals[:m])
    if vals[0] is None:
        return vals, False, in_y
    in_x = all(v is None or v > vals[0] for v in vals[1:])
    return vals, in_x, in_y


def candidate_rational_primes(b: Sequence[FieldElement]) -> list[int]:
    """Rational primes below every prime where some b_i has negative valuation."""
    out: set[int] = set()
    for c in b:
        if c.is_zero():
            continue
        _, den = c.field.to_o(c)
        if den > 1:
            out.update(factorize(den).primes)
    return sorted(out)


def compute_xy(ctx: GammaContext, K=None) -> XYReport:
    """X(K, γ) and Y(K, γ) from the coefficients of f_{K,γ}.

    >>> ctx = GammaContext.from_minpoly([1, -4, 5])
    >>> [str(P) for P in compute_xy(ctx).Y]
    ['(5)']
    """
    K = ctx.subfield(K)
    key = K.kappa.coords
    cached = ctx._xy.get(key)
    if cached is not None:
        return cached
    b = min_poly_over_subfield(ctx.field, ctx.gamma, K)
    cands: list[PrimeCriteria] = []
    if not ctx.gamma.is_zero():
        for p in candidate_rational_primes(b):
            for P in factor_prime(K.field, p):
                vals, in_x, in_y = coefficient_criteria(b, P)
                if in_y:
                    cands.append(PrimeCriteria(P, vals, in_x, in_y))
    report = XYReport(
        K,
        b,
        [c.prime for c in cands if c.in_x],
        [c.prime for c in cands if c.in_y],
        cands,
    )
    ctx._xy[key] = report
    return report


def splitting_criteria(ctx: GammaContext, K, P: PrimeIdeal) -> tuple[list[tuple[PrimeIdeal, int]], bool, bool]:
    """(v_Q(γ) for Q above P in K(γ), in X, in Y) read from the primes of K(γ)."""
    K = ctx.subfield(K)
    L = adjoin(K, ctx.gamma)
    g = L.to_sub(ctx.gamma)
    above = primes_above_in(P, K, L)
    vals = [(Q, Q.valuation(g)) for Q in above]
    return vals, all(v < 0 for _, v in vals), any(v < 0 for _, v in vals)


def newton_criteria(b: Sequence[FieldElement], P: PrimeIdeal) -> tuple[NewtonPolygon, bool, bool]:
    """(polygon, in X, in Y): X iff every slope is positive, Y iff some slope is."""
    poly = newton_polygon(b, P.valuation)
    return poly, all(s > 0 for s in poly.slopes), poly.has_positive_slope()


def newton_identity_sides(ctx: GammaContext, K, P: PrimeIdeal) -> tuple[list[Fraction], list[Fraction]]:
    """Both sides of the root-valuation identity at P, normalised to v_P.

    Left: root valuations from the Newton polygon of f_{K,γ}.  Right: for each
    prime Q of K(γ) above P, the value v_Q(γ)/e(Q|P) repeated e(Q|P) f(Q|P) times.
    """
    K = ctx.subfield(K)
    b = min_poly_over_subfield(ctx.field, ctx.gamma, K)
    left = newton_polygon(b, P.valuation).root_valuations()
    L = adjoin(K, ctx.gamma)
    g = L.to_sub(ctx.gamma)
    right: list[Fraction] = []
    for Q in primes_above_in(P, K, L):
        e_rel = Q.e // P.e
        f_rel = Q.f // P.f
        right.extend([Fraction(Q.valuation(g), e_rel)] * (e_rel * f_rel))
    return left, sorted(right)


# ------------------------------------------------------------------ membership


def negative_primes(K: SubfieldView, a: FieldElement) -> list[PrimeIdeal]:
    """Primes of K at which a (an element of K.field) has negative valuation."""
    if a.is_zero():
        return []
    _, den = K.field.to_o(a)
    out = []
    if den > 1:
        for p in factorize(den).primes:
            out.extend(P for P in factor_prime(K.field, p) if P.valuation(a) < 0)
    return out


def membership(ctx: GammaContext, K, alpha) -> bool:
    """Whether α ∈ O_K[γ], decided by comparing its poles with X(K, γ)."""
    K = ctx.subfield(K)
    a = _in_K(K, alpha)
    X = set(compute_xy(ctx, K).X)
    return all(P in X for P in negative_primes(K, a))


@dataclass
class OracleResult:
    member: bool
    coefficients: list[list[int]] | None  # O_K-coordinates of g_0..g_m with g(γ) = α
    degree: int | None
    bound: int
    stable: bool  # the lattices O_K[γ]_{<=m} stopped growing: a proof of non-membership

    @property
    def status(self) -> str:
        if self.member:
            return "member"
        return "non_member" if self.stable else "no_witness_found"


class _RationalLattice:
    """Z-span of rational vectors, kept as an integer HNF with a common denominator."""

    def __init__(self, n: int):
        self.n = n
        self.den = 1
        self.basis: list[list[int]] = []

    def _scaled(self, vecs: Sequence[Sequence[Fraction]]):
        den = self.den
        for v in vecs:
            for x in v:
                den = den * Fraction(x).denominator // math.gcd(den, Fraction(x).denominator)
        return den

    def add(self, vecs: Sequence[Sequence[Fraction]]) -> None:
        den = self._scaled(vecs)
        s = den // self.den
        rows = [[x * s for x in r] for r in self.basis]
        rows += [[int(Fraction(x) * den) for x in v] for v in vecs]
        self.basis = hnf(rows)
        self.den = den

    def vectors(self) -> list[list[Fraction]]:
        return [[Fraction(x, self.den) for x in r] for r in self.basis]

    def contains(self, v: Sequence[Fraction]) -> bool:
        w = [Fraction(x) * self.den for x in v]
        if any(x.denominator != 1 for x in w):
            return False
        return in_row_lattice(self.basis, [int(x) for x in w]) is not None

    def key(self):
        return (self.den, tuple(map(tuple, self.basis)))


def membership_oracle(ctx: GammaContext, K, alpha, degree_bound: int | None = None,
                      cap: int = MEMBERSHIP_CAP) -> OracleResult:
    """Search g ∈ O_K[x] with g(γ) = α by growing the lattices O_K + γ·(previous).

    The degree bound starts at 2·deg f_{K,γ} and doubles up to ``cap``.  A
    returned representation is checked by evaluation.  If the lattice chain
    becomes stationary the answer "non_member" is a proof; otherwise the
    negative answer only means nothing was found up to the reported bound.
    """
    K = ctx.subfield(K)
    a = _in_K(K, alpha)
    target = K.embed(a)
    M = ctx.field
    gamma = ctx.gamma
    omegas = [K.embed(w) for w in K.field.integral_basis]
    if degree_bound is None:
        m_deg = len(min_poly_over_subfield(M, gamma, K)) - 1
        bound = min(cap, 2 * m_deg)
    else:
        bound = min(cap, degree_bound)
    lat = _RationalLattice(M.n)
    lat.add([w.coords for w in omegas])
    m = 0
    prev = None
    while True:
        if lat.contains(target.coords):
            coeffs = _representation(K, omegas, gamma, target, m)
            return OracleResult(True, coeffs, m, bound, False)
        if prev == lat.key():
            return OracleResult(False, None, None, bound, True)
        if m >= bound:
            if degree_bound is None and bound < cap:
                bound = min(cap, 2 * bound)
            else:
                return OracleResult(False, None, None, bound, False)
        prev = lat.key()
        shifted = [(M.element(v) * gamma).coords for v in lat.vectors()]
        lat = _RationalLattice(M.n)
        lat.add([w.coords for w in omegas] + shifted)
        m += 1


def _representation(K: SubfieldView, omegas, gamma, target, m) -> list[list[int]]:
    """Integer coefficients c[i][j] with sum_i sum_j c[i][j] ω_j γ^i = target."""
    M = gamma.field
    k = len(omegas)
    gens = []
    gp = M.one
    for _ in range(m + 1):
        gens.extend(w * gp for w in omegas)
        gp = gp * gamma
    den = 1
    for g in gens + [target]:
        for x in g.coords:
            den = den * x.denominator // math.gcd(den, x.denominator)
    rows = [[int(x * den) for x in g.coords] for g in gens]
    t = [int(x * den) for x in target.coords]
    z = solve_integer(rows, t)
    if z is not None:
        coeffs = [z[i * k:(i + 1) * k] for i in range(m + 1)]
        if evaluate_representation(K, gamma, coeffs) != target:
            raise AssertionError("membership certificate failed to verify")
        return coeffs
    raise AssertionError("target lies in the lattice but no integral representation was found")


def evaluate_representation(K: SubfieldView, gamma: FieldElement, coeffs: Sequence[Sequence[int]]) -> FieldElement:
    """Value of sum_i (sum_j c[i][j] ω_j) γ^i in the ambient field."""
    M = gamma.field
    omegas = [K.embed(w) for w in K.field.integral_basis]
    acc = M.zero
    gp = M.one
    for row in coeffs:
        for c, w in zip(row, omegas):
            if c:
                acc = acc + w * gp * c
        gp = gp * gamma
    return acc


# ------------------------------------------------------------------ ring structure


@dataclass
class RingDescription:
    X: list[PrimeIdeal]
    is_OK: bool
    class_group: list[int]  # elementary divisors of Cl(O_K[γ] ∩ K)
    class_group_OK: list[int]
    is_PID: bool

    def as_dict(self) -> dict:
        return {
            "X": [str(P) for P in self.X],
            "is_OK": self.is_OK,
            "class_group": self.class_group,
            "class_group_OK": self.class_group_OK,
            "is_PID": self.is_PID,
        }


def ring_description(ctx: GammaContext, K=None) -> RingDescription:
    K = ctx.subfield(K)
    X = compute_xy(ctx, K).X
    G = class_group(K.field)
    quot = quotient_class_group(G, X)
    return RingDescription(list(X), not X, quot, list(G.elementary_divisors), not quot)


def kernel_ideal(ctx: GammaContext, K=None) -> FractionalIdeal:
    """I_{K,γ} = ∏ P^{α_P} with α_P = -min_i v_P(b_i)."""
    K = ctx.subfield(K)
    rep = compute_xy(ctx, K)
    out = FractionalIdeal.unit(K.field)
    for c in rep.candidates:
        a = -min(v for v in c.valuations if v is not None)
        if a > 0:
            out = out * FractionalIdeal.from_prime(c.prime) ** a
    return out


# ------------------------------------------------------------------ denominator ideal


def contract(B: FractionalIdeal, L: SubfieldView, K: SubfieldView) -> FractionalIdeal:
    """B ∩ K for an ideal B of ``L.field`` and a subfield K ⊆ L."""
    E = L.field
    omegas = [L.to_sub(K.embed(w)) for w in K.field.integral_basis]
    W = []
    for w in omegas:
        v, den = E.to_o(w)
        if den != 1:
            raise AssertionError("integral basis element of K is not integral in L")
        W.append([x * B.den for x in v])
    Bb = [[-x for x in r] for r in B.basis]
    kern = integer_left_kernel(W + Bb)
    k = len(omegas)
    rows = [z[:k] for z in kern if any(z[:k])]
    return FractionalIdeal(K.field, rows, 1)


@dataclass
class DenominatorIdealSection:
    ideal: FractionalIdeal  # 𝔇_γ ∩ O_K
    radical: FractionalIdeal
    y_product: FractionalIdeal
    factorization: list[tuple[PrimeIdeal, int]]

    @property
    def matches(self) -> bool:
        return self.radical == self.y_product


def denominator_section(ctx: GammaContext, K=None) -> DenominatorIdealSection:
    """𝔇_γ ∩ O_K through O_E ∩ γ^{-1} O_E with E = K(γ), compared with ∏_{Y} P."""
    K = ctx.subfield(K)
    L = adjoin(K, ctx.gamma)
    E = L.field
    if ctx.gamma.is_zero():
        B = FractionalIdeal.unit(E)
    else:
        g = L.to_sub(ctx.gamma)
        B = FractionalIdeal.unit(E) & FractionalIdeal.principal(g).inverse()
    section = contract(B, L, K)
    fac = section.factor()
    radical = product_of_primes([P for P, _ in fac], K.field)
    y_prod = product_of_primes(compute_xy(ctx, K).Y, K.field)
    return DenominatorIdealSection(section, radical, y_prod, fac)


# ------------------------------------------------------------------ comparisons and local data


@dataclass
class SameDenominatorReport:
    value: bool
    condition_1: bool
    condition_5: bool | None
    compositum: SubfieldView


def same_denominator(ctx: GammaContext, gamma2: FieldElement, debug: bool = False) -> SameDenominatorReport:
    """Whether γ and γ₂ have denominator ideals with equal radicals.

    Condition (1) compares X over Q(γ, γ₂); with ``debug`` the Y version is
    evaluated too and the two are required to agree.
    """
    g2 = ctx.element(gamma2)
    elems = [x for x in (ctx.gamma, g2) if not x.is_rational()]
    F = ctx.subfield(primitive_element(elems) if elems else None)
    ctx2 = ctx.with_gamma(g2)
    r1, r2 = compute_xy(ctx, F), compute_xy(ctx2, F)
    c1 = set(r1.X) == set(r2.X)
    c5 = None
    if debug:
        c5 = set(r1.Y) == set(r2.Y)
        if c5 != c1:
            raise AssertionError("X and Y versions of the same-denominator test disagree")
    return SameDenominatorReport(c1, c1, c5, F)


def local_classify(ctx: GammaContext, K, P: PrimeIdeal, Q: PrimeIdeal) -> str:
    """'whole_field' when v_Q(γ) < 0 for the prime Q of K(γ) above P, else 'integers'."""
    K = ctx.subfield(K)
    L = adjoin(K, ctx.gamma)
    if Q.field != L.field:
        raise GammaError("Q must be a prime of K(γ)")
    if Q not in primes_above_in(P, K, L):
        raise GammaError("Q does not lie above P")
    if ctx.gamma.is_zero():
        return "integers"
    return "whole_field" if Q.valuation(L.to_sub(ctx.gamma)) < 0 else "integers"


def intersection_degree(A: SubfieldView, B: SubfieldView) -> int:
    """[A ∩ B : Q] from dimensions of Q-spans inside the ambient field."""
    joint = rank_q(list(A._power_rows) + list(B._power_rows))
    return A.degree + B.degree - joint


@dataclass
class CrossFieldReport:
    x_lift_contained: bool  # {q : q ∩ K ∈ X(K)} ⊆ X(L)
    y_contained_in_lift: bool  # Y(L) ⊆ {q : q ∩ K ∈ Y(K)}
    exact_case: bool  # L ∩ K(γ) = K
    x_exact: bool | None
    y_exact: bool | None
    membership_agrees: bool
    x_down_matches: bool  # X(K) = {p : every q above p is in X(L)}
    y_down_matches: bool  # Y(K) = {p : some q above p is in Y(L)}
    X_K: list[PrimeIdeal] = dc_field(default_factory=list)
    X_L: list[PrimeIdeal] = dc_field(default_factory=list)
    X_lift: list[PrimeIdeal] = dc_field(default_factory=list)
    Y_L: list[PrimeIdeal] = dc_field(default_factory=list)
    Y_lift: list[PrimeIdeal] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        base = (self.x_lift_contained and self.y_contained_in_lift and self.membership_agrees
                and self.x_down_matches and self.y_down_matches)
        if self.exact_case:
            base = base and bool(self.x_exact) and bool(self.y_exact)
        return base


def cross_field_check(ctx: GammaContext, K, L, samples: int = 6, seed: int = 0) -> CrossFieldReport:
    """Going-up and going-down relations between X, Y over K ⊆ L."""
    K, L = ctx.subfield(K), ctx.subfield(L)
    if not K.is_subfield_of(L):
        raise GammaError("K must be contained in L")
    rK, rL = compute_xy(ctx, K), compute_xy(ctx, L)
    XK, YK = set(rK.X), set(rK.Y)
    XL, YL = set(rL.X), set(rL.Y)
    # every relevant prime of L lies over a prime in Y(K) ∪ X(K) or in Y(L)
    rational = sorted({P.p for P in YK | YL})
    primes_L = [Q for p in rational for Q in factor_prime(L.field, p)]
    below = {Q: prime_below(Q, L, K) for Q in primes_L}
    x_lift = {Q for Q in primes_L if below[Q] in XK}
    y_lift = {Q for Q in primes_L if below[Q] in YK}
    KG = adjoin(K, ctx.gamma)
    exact = intersection_degree(L, KG) == K.degree
    x_down = all(
        (P in XK) == all(Q in XL for Q in primes_L if below[Q] == P)
        for p in rational for P in factor_prime(K.field, p)
    )
    y_down = all(
        (P in YK) == any(Q in YL for Q in primes_L if below[Q] == P)
        for p in rational for P in factor_prime(K.field, p)
    )
    agree = all(
        membership(ctx, K, a) == membership(ctx, L, K.embed(a))
        for a in sample_elements(ctx, K, samples, seed)
    )
    return CrossFieldReport(
        x_lift_contained=x_lift <= XL,
        y_contained_in_lift=YL <= y_lift,
        exact_case=exact,
        x_exact=(XL == x_lift) if exact else None,
        y_exact=(YL == y_lift) if exact else None,
        membership_agrees=agree,
        x_down_matches=x_down,
        y_down_matches=y_down,
        X_K=sorted(XK),
        X_L=sorted(XL),
        X_lift=sorted(x_lift),
        Y_L=sorted(YL),
        Y_lift=sorted(y_lift),
    )


def sample_elements(ctx: GammaContext, K, count: int = 6, seed: int = 0) -> list[FieldElement]:
    """Elements of K.field with poles at primes of Y(K, γ) and elsewhere, for membership checks."""
    K = ctx.subfield(K)
    rng = random.Random(seed)
    rep = compute_xy(ctx, K)
    out = [K.field.one]
    for P in rep.Y:
        a, gen = P.two_generators
        out.append(K.field.rational(Fraction(1, a)))
        if gen is not None and not gen.is_zero():
            out.append(1 / gen)
    basis = K.field.integral_basis
    while len(out) < count + len(rep.Y) + 1:
        num = K.field.zero
        for w in basis:
            num = num + w * rng.randint(-5, 5)
        den = rng.choice([1, 2, 3, 5, 6, 7, 10, 15])
        if not num.is_zero():
            out.append(num / den)
    return out


def x_witness(ctx: GammaContext, K, P: PrimeIdeal, cap: int = MEMBERSHIP_CAP) -> tuple[FieldElement, OracleResult]:
    """The element α ∈ P generating P^h ([P] of order h) and the oracle's verdict on 1/α."""
    K = ctx.subfield(K)
    G: ClassGroup = class_group(K.field)
    h = G.order_of(FractionalIdeal.from_prime(P))
    alpha = power_generator(P, h)
    return alpha, membership_oracle(ctx, K, 1 / alpha, cap=cap)


__all__ = [
    "CrossFieldReport",
    "DenominatorIdealSection",
    "GammaContext",
    "GammaError",
    "OracleResult",
    "PrimeCriteria",
    "RingDescription",
    "SameDenominatorReport",
    "XYReport",
    "coefficient_criteria",
    "compute_xy",
    "contract",
    "cross_field_check",
    "denominator_section",
    "evaluate_representation",
    "intersection_degree",
    "kernel_ideal",
    "local_classify",
    "membership",
    "membership_oracle",
    "negative_primes",
    "newton_criteria",
    "newton_identity_sides",
    "ring_description",
    "same_denominator",
    "sample_elements",
    "splitting_criteria",
    "x_witness",
]
