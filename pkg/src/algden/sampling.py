"""Seeded random configurations for property checks."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .arith import squarefree_part
from .denominators import GammaContext
from .nf.field import FieldElement, NumberField
from .nf.subfield import SubfieldView, adjoin_square_root, cached_field, rational_subfield

# denominators built from a few small primes keep the interesting primes small
DENOMINATORS = (1, 2, 3, 4, 5, 6, 7, 9, 10, 12, 13, 15, 17, 25, 30)


def random_squarefree(rng: random.Random, bound: int = 30) -> int:
    while True:
        D = rng.randint(-bound, bound)
        if D not in (0, 1) and squarefree_part(D) == D:
            return D


def quadratic_field(D: int) -> NumberField:
    """Q(√D) presented by the minimal polynomial of its ring-of-integers generator."""
    if D % 4 == 1:
        return cached_field(((1 - D) // 4, -1, 1))
    return cached_field((-D, 0, 1))


def random_quadratic_field(rng: random.Random, bound: int = 30) -> NumberField:
    return quadratic_field(random_squarefree(rng, bound))


def random_element(rng: random.Random, M: NumberField, height: int = 9,
                   denominators=DENOMINATORS, nonrational: bool = False) -> FieldElement:
    while True:
        num = [rng.randint(-height, height) for _ in range(M.n)]
        x = M.element(num) / rng.choice(denominators)
        if x.is_zero() or (nonrational and x.is_rational()):
            continue
        return x


@dataclass
class Config:
    """γ in an ambient field with a chain of subfields K ⊆ L."""

    ctx: GammaContext
    K: SubfieldView
    L: SubfieldView

    def describe(self) -> str:
        return f"γ={self.ctx.gamma} in {self.ctx.field}, K={self.K.label()}, L={self.L.label()}"


def biquadratic(rng: random.Random, bound: int = 15) -> tuple[NumberField, FieldElement, FieldElement]:
    """Q(√D1, √D2) with the images of the two square roots."""
    while True:
        D1 = random_squarefree(rng, bound)
        D2 = random_squarefree(rng, bound)
        K = cached_field((-D1, 0, 1))
        ext = adjoin_square_root(K, D2)
        if ext is None:
            continue
        N, phi, root = ext
        return N, phi(K.gen), root


def random_quadratic_pair(rng: random.Random) -> tuple[GammaContext, SubfieldView]:
    """γ together with a quadratic subfield K of the ambient field, [K(γ):K] <= 2."""
    if rng.random() < 0.5:
        M = random_quadratic_field(rng)
        ctx = GammaContext(M, random_element(rng, M, nonrational=True))
        return ctx, ctx.subfield(M.gen)
    N, r1, _ = biquadratic(rng)
    ctx = GammaContext(N, random_element(rng, N, height=5, nonrational=True))
    return ctx, ctx.subfield(r1)


def random_chain(rng: random.Random) -> Config:
    """A random configuration K ⊆ L inside a quadratic or biquadratic ambient field.

    One kind in four puts γ in one quadratic subfield and L in another, so
    that L ∩ K(γ) = K.
    """
    kind = rng.randrange(4)
    if kind == 0:
        M = random_quadratic_field(rng)
        ctx = GammaContext(M, random_element(rng, M))
        return Config(ctx, rational_subfield(M), ctx.subfield(M.gen))
    N, r1, r2 = biquadratic(rng)
    if kind == 3:
        gamma = (r2 * rng.randint(-6, 6) + rng.randint(-6, 6)) / rng.choice(DENOMINATORS)
        ctx = GammaContext(N, gamma)
        return Config(ctx, ctx.subfield(None), ctx.subfield(r1))
    ctx = GammaContext(N, random_element(rng, N, height=5))
    if kind == 1:
        return Config(ctx, ctx.subfield(None), ctx.subfield(rng.choice([r1, r2])))
    return Config(ctx, ctx.subfield(r1), ctx.subfield(N.gen))


def random_membership_case(rng: random.Random) -> tuple[GammaContext, SubfieldView, FieldElement]:
    """(γ, K, α) with γ in a quadratic field and α ∈ K having poles near those of γ."""
    M = random_quadratic_field(rng, 15)
    ctx = GammaContext(M, random_element(rng, M, height=6, denominators=(2, 3, 5, 6, 10, 15)))
    K = ctx.subfield(rng.choice([None, M.gen]))
    alpha = random_element(rng, K.field, height=6, denominators=(1, 2, 3, 5, 6, 10, 15))
    return ctx, K, alpha


__all__ = [
    "Config",
    "DENOMINATORS",
    "biquadratic",
    "quadratic_field",
    "random_chain",
    "random_element",
    "random_membership_case",
    "random_quadratic_field",
    "random_quadratic_pair",
    "random_squarefree",
]
