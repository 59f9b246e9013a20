"""Finite generating sets of an algebraic number.

A set S of algebraic integers generates γ when, for every number field L,
X(L, γ) is exactly the set of primes of L containing an element of S ∩ L.
For each subfield K of Q(γ), 𝓛(γ, K) keeps the primes of X(K, γ) that no
proper subfield already accounts for; when it is nonempty, a generator α_K of
J^{h_K} (J the product of those primes, h_K the class number) joins S.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .classgroup import class_group, power_generator
from .denominators import GammaContext, compute_xy, membership, negative_primes
from .nf.field import FieldElement, generated_dimension
from .nf.ideals import FractionalIdeal, product_of_primes
from .nf.primes import PrimeIdeal
from .nf.subfield import SubfieldView, adjoin_square_root, prime_below, subfields

GENSET_MAX_DEGREE = 4


class GenSetError(ValueError):
    pass


@dataclass
class FieldGenerator:
    K: SubfieldView
    primes: list[PrimeIdeal]  # 𝓛(γ, K)
    J: FractionalIdeal
    h: int
    alpha: FieldElement  # in K.field
    alpha_ambient: FieldElement

    def as_dict(self) -> dict:
        return {
            "field": self.K.label(),
            "primes": [str(P) for P in self.primes],
            "h": self.h,
            "alpha": str(self.alpha_ambient),
        }


@dataclass
class GenSetResult:
    fields_L: list[SubfieldView]
    per_field: list[FieldGenerator]
    S: list[FieldElement]
    lattice: list[SubfieldView] = dc_field(repr=False, default_factory=list)

    def as_dict(self) -> dict:
        return {
            "L": [K.label() for K in self.fields_L],
            "fields": [g.as_dict() for g in self.per_field],
            "S": [str(a) for a in self.S],
        }


def _proper_subfields(K: SubfieldView, lattice: Sequence[SubfieldView]) -> list[SubfieldView]:
    return [E for E in lattice if E.degree < K.degree and E.is_subfield_of(K)]


def l_gamma_K(ctx: GammaContext, K=None, lattice: Sequence[SubfieldView] | None = None) -> list[PrimeIdeal]:
    """Primes Q of X(K, γ) with Q ∩ K₁ ∉ X(K₁, γ) for every proper subfield K₁ of K."""
    K = ctx.subfield(K)
    if lattice is None:
        lattice = subfields(K)
    X = compute_xy(ctx, K).X
    below = _proper_subfields(K, lattice)
    out = []
    for Q in X:
        if all(prime_below(Q, K, E) not in set(compute_xy(ctx, E).X) for E in below):
            out.append(Q)
    return out


def minimal_fields(ctx: GammaContext, K, Q: PrimeIdeal, lattice: Sequence[SubfieldView] | None = None) -> list[SubfieldView]:
    """All minimal subfields E ⊆ K with Q ∩ E ∈ X(E, γ); several may exist."""
    K = ctx.subfield(K)
    if lattice is None:
        lattice = subfields(K)
    hits = [E for E in lattice if E.is_subfield_of(K) and prime_below(Q, K, E) in set(compute_xy(ctx, E).X)]
    return [E for E in hits if not any(F is not E and F.degree < E.degree and F.is_subfield_of(E) for F in hits)]


def generating_set(ctx: GammaContext) -> GenSetResult:
    """The generating set S = {α_K : K ∈ 𝓛(γ)}, one element per field with new primes."""
    top = ctx.gamma_field
    if top.degree > GENSET_MAX_DEGREE:
        raise GenSetError(f"generating sets need [Q(γ):Q] <= {GENSET_MAX_DEGREE}, got {top.degree}")
    lattice = subfields(top)
    per_field = []
    for K in lattice:
        primes = l_gamma_K(ctx, K, lattice)
        if not primes:
            continue
        J = product_of_primes(primes, K.field)
        h = class_group(K.field).h
        alpha = power_generator(J, h)
        amb = K.embed(alpha)
        if not SubfieldView(ctx.field, amb).same_as(K):
            raise AssertionError(f"α_K = {amb} does not generate {K.label()}")
        per_field.append(FieldGenerator(K, primes, J, h, alpha, amb))
    return GenSetResult([g.K for g in per_field], per_field, [g.alpha_ambient for g in per_field], lattice)


# ------------------------------------------------------------------ verification


def primes_meeting(L: SubfieldView, S: Sequence[FieldElement]) -> list[PrimeIdeal]:
    """Primes of L containing some element of S ∩ L."""
    out: set[PrimeIdeal] = set()
    for a in S:
        y = L.restrict(a)
        if y is None:
            continue
        if y.is_zero():
            raise GenSetError("0 cannot belong to a generating set")
        for P, v in FractionalIdeal.principal(y).factor():
            if v > 0:
                out.add(P)
    return sorted(out)


@dataclass
class FieldCheck:
    L: SubfieldView
    X: list[PrimeIdeal]
    meeting: list[PrimeIdeal]
    x_matches: bool
    ring_matches: bool
    radical_matches: bool

    @property
    def ok(self) -> bool:
        return self.x_matches and self.ring_matches and self.radical_matches


@dataclass
class VerifyReport:
    checks: list[FieldCheck]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def _ring_agreement(ctx: GammaContext, L: SubfieldView, S_L: Sequence[FieldElement], meeting: set) -> bool:
    """O_L[γ] ∩ L versus O_L[1/α : α ∈ S ∩ L] on sample elements."""
    samples = [1 / a for a in S_L]
    for P in compute_xy(ctx, L).Y:
        p, gen = P.two_generators
        samples.append(L.field.rational(1) / p)
        if gen is not None:
            samples.append(1 / gen)
    for b in samples:
        in_ring = membership(ctx, L, b)
        # b ∈ O_L[1/α] iff every pole of b is a prime containing some α
        in_loc = all(P in meeting for P in negative_primes(L, b))
        if in_ring != in_loc:
            return False
    return True


def check_field(ctx: GammaContext, S: Sequence[FieldElement], L) -> FieldCheck:
    L = ctx.subfield(L)
    X = compute_xy(ctx, L).X
    meeting = primes_meeting(L, S)
    S_L = [L.to_sub(a) for a in S if L.contains(a)]
    prod = L.field.one
    for a in S_L:
        prod = prod * a
    rad = FractionalIdeal.principal(prod).radical() if S_L else FractionalIdeal.unit(L.field)
    return FieldCheck(
        L,
        list(X),
        meeting,
        set(X) == set(meeting),
        _ring_agreement(ctx, L, S_L, set(meeting)),
        rad == product_of_primes(X, L.field),
    )


def standard_battery(ctx: GammaContext) -> list[SubfieldView]:
    """Every subfield of Q(γ), from Q up to Q(γ) itself."""
    return subfields(ctx.gamma_field)


def control_context(ctx: GammaContext, S: Sequence[FieldElement], radicands=(2, 3, 5, 6, 7)):
    """γ and S moved into M(√D) for the first D with √D ∉ M.

    Returns ``(ctx', S', [Q(√D), Q(γ, √D)])``; Q(√D) is linearly disjoint
    from Q(γ) inside the new ambient field.
    """
    for D in radicands:
        ext = adjoin_square_root(ctx.field, D)
        if ext is None:
            continue
        N, phi, root = ext
        ctx2 = GammaContext(N, phi(ctx.gamma))
        S2 = [phi(a) for a in S]
        fields = [ctx2.subfield(root), ctx2.subfield(phi(ctx.gamma_field.kappa) + root)]
        return ctx2, S2, fields
    raise GenSetError("no control square root available")


def verify_generating_set(ctx: GammaContext, S: Sequence[FieldElement], test_fields=None,
                          control: bool = True) -> VerifyReport:
    """Check S against X(L, γ), the ring O_L[γ] ∩ L and the radical identity on a battery of fields."""
    fields = list(test_fields) if test_fields is not None else standard_battery(ctx)
    checks = [check_field(ctx, S, L) for L in fields]
    if control and test_fields is None:
        ctx2, S2, extra = control_context(ctx, S)
        checks.extend(check_field(ctx2, S2, L) for L in extra)
    return VerifyReport(checks)


@dataclass
class MinimalityReport:
    size_L: int
    size_S: int
    bound_holds: bool
    equality_case: bool
    compositum_matches: bool | None

    @property
    def ok(self) -> bool:
        return self.bound_holds and self.compositum_matches is not False


def minimality_check(ctx: GammaContext, S_prime: Sequence[FieldElement], result: GenSetResult | None = None) -> MinimalityReport:
    """#𝓛(γ) <= |S'|, and in the equality case the compositum of 𝓛(γ) equals Q(S')."""
    if result is None:
        result = generating_set(ctx)
    nL, nS = len(result.fields_L), len(S_prime)
    comp = None
    if nL == nS:
        kappas = [K.kappa for K in result.fields_L] or [ctx.field.one]
        elems = list(S_prime) or [ctx.field.one]
        d1 = generated_dimension(*kappas)
        d2 = generated_dimension(*elems)
        comp = d1 == d2 == generated_dimension(*(kappas + elems))
    return MinimalityReport(nL, nS, nL <= nS, nL == nS, comp)


def associated(a: FieldElement, b: FieldElement) -> bool:
    """Whether a and b differ by a unit of the maximal order."""
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    q = a / b
    return q.is_integral() and (1 / q).is_integral()


__all__ = [
    "FieldCheck",
    "FieldGenerator",
    "GenSetError",
    "GenSetResult",
    "MinimalityReport",
    "VerifyReport",
    "associated",
    "check_field",
    "control_context",
    "generating_set",
    "l_gamma_K",
    "minimal_fields",
    "minimality_check",
    "primes_meeting",
    "standard_battery",
    "verify_generating_set",
]
