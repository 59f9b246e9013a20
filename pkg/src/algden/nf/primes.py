"""Prime ideals of O_K and the decomposition of pO_K.

Decomposition works in the finite algebra O/pO.  Its radical is the kernel of
a high Frobenius power; the quotient by the radical is a product of finite
fields, one per prime above p.  The product is split recursively with
idempotent-like elements taken from the Frobenius-fixed subalgebra.  When p
does not divide the index [O : Z[θ]], Kummer–Dedekind gives the same primes
directly and is used as the fast path.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from ..arith import vp_int
from ..linalg import left_kernel_mod, rref_mod
from ..poly import factor_mod_p
from .field import FieldElement, NumberField, hnf_lower

_TWO_ELEMENT_TRIES = 4000


@dataclass(eq=False)
class PrimeIdeal:
    """A nonzero prime of O_K lying over the rational prime ``p``.

    ``basis`` is the lower HNF Z-basis in O-coordinates.  ``tau`` satisfies
    ``tau * P ⊆ pO`` and ``tau ∉ pO``; the element ``tau/p`` has valuation -1
    at this prime and is integral at the other primes above p.
    """

    field: NumberField
    p: int
    e: int
    f: int
    basis: tuple[tuple[int, ...], ...]
    tau: tuple[int, ...]
    generator: FieldElement | None = None
    _key: tuple = dc_field(default=(), repr=False)

    def __post_init__(self):
        self._key = (self.field.g, self.basis)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeIdeal) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    @property
    def norm(self) -> int:
        return self.p**self.f

    @property
    def residue_characteristic(self) -> int:
        return self.p

    @property
    def two_generators(self) -> tuple[int, FieldElement]:
        return self.p, self.generator

    @property
    def anti_uniformizer(self) -> FieldElement:
        return self.field.from_o(self.tau, self.p)

    def sort_key(self) -> tuple:
        return (self.p, self.f, self.e, self.basis)

    def __lt__(self, other: "PrimeIdeal") -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        return f"PrimeIdeal({self})"

    def __str__(self) -> str:
        if self.generator is None or self.generator.is_rational():
            return f"({self.p})"
        return f"({self.p}, {self.generator})"

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "e": self.e,
            "f": self.f,
            "gen": str(self.generator) if self.generator is not None else str(self.p),
        }

    # ---------------------------------------------------------------- valuation

    def _val_o(self, v: Sequence[int]) -> int:
        """Valuation of a nonzero integral element given in O-coordinates."""
        g = 0
        for x in v:
            g = math.gcd(g, x)
        if g == 0:
            raise ValueError("valuation of zero is undefined")
        k = vp_int(g, self.p) * self.e
        v = [x // g for x in v]
        return k + self._loop_val(v)

    def _loop_val(self, v: list[int]) -> int:
        K, p, tau = self.field, self.p, self.tau
        k = 0
        while True:
            w = K.mul_o(v, tau)
            if any(x % p for x in w):
                return k
            v = [x // p for x in w]
            k += 1

    def valuation(self, x) -> int:
        """Exact v_P of a nonzero field element (or rational)."""
        K = self.field
        if not isinstance(x, FieldElement):
            x = K.rational(x)
        if x.is_zero():
            raise ValueError("valuation of zero is undefined")
        num, den = K.to_o(x)
        v = self._val_o(num)
        if den != 1:
            v -= self.e * vp_int(den, self.p)
        return v

    def contains(self, x: FieldElement) -> bool:
        return x.is_zero() or (x.is_integral() and self.valuation(x) >= 1)

    def contains_o(self, v: Sequence[int]) -> bool:
        return not any(v) or self._val_o(v) >= 1


# -------------------------------------------------------------------- F_p algebra helpers


class _Quotient:
    """O / V for an F_p-subspace V ⊇ radical, with reduction to a normal form."""

    def __init__(self, K: NumberField, p: int, V: list[list[int]]):
        self.K, self.p, self.n = K, p, K.n
        rows, piv = rref_mod(V, p) if V else ([], [])
        self.rows = rows
        self.pivots = piv
        self.free = [j for j in range(K.n) if j not in piv]

    def reduce(self, v: Sequence[int]) -> list[int]:
        p = self.p
        v = [x % p for x in v]
        for row, j in zip(self.rows, self.pivots):
            c = v[j]
            if c:
                v = [(a - c * b) % p for a, b in zip(v, row)]
        return v

    def proj(self, v: Sequence[int]) -> list[int]:
        r = self.reduce(v)
        return [r[j] for j in self.free]

    def lift(self, w: Sequence[int]) -> list[int]:
        v = [0] * self.n
        for c, j in zip(w, self.free):
            v[j] = c % self.p
        return v


def _unit(n: int, i: int) -> list[int]:
    return [1 if t == i else 0 for t in range(n)]


def _frobenius_kernel_radical(K: NumberField, p: int) -> list[list[int]]:
    n = K.n
    j = 1
    while p**j < n:
        j += 1
    rows = [K.pow_o_mod(_unit(n, i), p**j, p) for i in range(n)]
    return [list(v) for v in left_kernel_mod(rows, p)]


def _split(K: NumberField, p: int, V: list[list[int]]) -> list[list[list[int]]]:
    """Maximal subspaces (ideals of O/pO) containing the ideal V."""
    Q = _Quotient(K, p, V)
    m = len(Q.free)
    if m == 0:
        return []
    # Frobenius-fixed subalgebra: kernel of x -> x^p - x on O/V
    rows = []
    for j in Q.free:
        ej = _unit(K.n, j)
        fp = K.pow_o_mod(ej, p, p)
        rows.append(Q.proj([a - b for a, b in zip(fp, ej)]))
    fixed = left_kernel_mod(rows, p)
    if len(fixed) <= 1:
        return [Q.rows]
    one = Q.proj(_unit(K.n, 0))
    b = None
    for w in fixed:
        wl = list(w)
        # non-scalar test: w not a multiple of one
        if _rank_mod([one, wl], p) == 2:
            b = Q.lift(wl)
            break
    if b is None:
        raise AssertionError("fixed subalgebra has dimension > 1 but only scalars found")
    # minimal polynomial of b over F_p in O/V; it splits into distinct linear factors
    powers = [one]
    cur = _unit(K.n, 0)
    while True:
        cur = K.mul_o_mod(cur, b, p)
        pc = Q.proj(cur)
        sol = _solve_mod(powers, pc, p)
        if sol is not None:
            mu = [(-c) % p for c in sol] + [1]
            break
        powers.append(pc)
    roots = [(-fac[0][0]) % p for fac in factor_mod_p(mu, p) if len(fac[0]) == 2]
    out = []
    for r in sorted(roots):
        br = list(b)
        br[0] = (br[0] - r) % p
        gens = [K.mul_o_mod(br, _unit(K.n, i), p) for i in range(K.n)]
        out.extend(_split(K, p, list(Q.rows) + gens))
    return out


def _rank_mod(rows, p) -> int:
    return len(rref_mod(rows, p)[0])


def _solve_mod(rows, target, p):
    from ..linalg import solve_left_mod

    if not rows:
        return [] if not any(x % p for x in target) else None
    return solve_left_mod(rows, target, p)


def _tau(K: NumberField, p: int, basis: Sequence[Sequence[int]]) -> list[int]:
    n = K.n
    rows = []
    for i in range(n):
        ei = _unit(n, i)
        row = []
        for b in basis:
            row.extend(x % p for x in K.mul_o(ei, b))
        rows.append(row)
    kern = left_kernel_mod(rows, p)
    if not kern:
        raise AssertionError("no element of pP^-1 outside pO")
    return list(kern[0])


def _make_prime(K: NumberField, p: int, V: list[list[int]]) -> PrimeIdeal:
    n = K.n
    gens = [list(v) for v in V] + [[p if i == j else 0 for j in range(n)] for i in range(n)]
    basis = tuple(tuple(r) for r in hnf_lower(gens))
    f = n - len(V)
    tau = tuple(_tau(K, p, basis))
    P = PrimeIdeal(K, p, 0, f, basis, tau)
    pv = [p] + [0] * (n - 1)
    P.e = P._loop_val(pv)
    return P


def _kummer_dedekind(K: NumberField, p: int) -> list[tuple[PrimeIdeal, list[int]]] | None:
    """Primes above p from g mod p, valid when p does not divide [O : Z[θ]].

    Each prime comes with the O-coordinates of h(θ) for its factor h.
    """
    if K.index % p == 0:
        return None
    n = K.n
    out = []
    for h, mult in factor_mod_p(list(K.g), p):
        v, den = K.to_o(K.from_poly(h))
        assert den == 1
        gens = [K.mul_o(v, _unit(n, i)) for i in range(n)]
        gens += [[p if i == j else 0 for j in range(n)] for i in range(n)]
        basis = tuple(tuple(r) for r in hnf_lower(gens))
        tau = tuple(_tau(K, p, basis))
        out.append((PrimeIdeal(K, p, mult, len(h) - 1, basis, tau), v))
    return out


def factor_prime_general(K: NumberField, p: int) -> list[PrimeIdeal]:
    """Decomposition of pO_K via the radical of O/pO (valid for every p)."""
    rad = _frobenius_kernel_radical(K, p)
    spaces = _split(K, p, rad)
    return [_make_prime(K, p, V) for V in spaces]


def factor_prime(K: NumberField, p: int) -> list[PrimeIdeal]:
    """All primes above p in canonical order, each with its ramification data.

    >>> K = NumberField([1, 0, 1])
    >>> [(P.e, P.f) for P in factor_prime(K, 5)]
    [(1, 1), (1, 1)]
    """
    cache = K._prime_cache
    if p in cache:
        return cache[p]
    hinted = _kummer_dedekind(K, p)
    if hinted is None:
        hinted = [(P, None) for P in factor_prime_general(K, p)]
    primes = sorted((P for P, _ in hinted), key=PrimeIdeal.sort_key)
    if sum(P.e * P.f for P in primes) != K.n:
        raise AssertionError(f"splitting of {p} is incomplete")
    hints = {P: v for P, v in hinted}
    for P in primes:
        P.generator = _two_element(K, P, primes, hints[P])
    cache[p] = primes
    return primes


def _two_element_ok(P: PrimeIdeal, others: list[PrimeIdeal], v: Sequence[int]) -> bool:
    if not any(v) or not P.contains_o(v):
        return False
    if min(P.e, P._val_o(v)) != 1:
        return False
    return all(not Q.contains_o(v) for Q in others)


def _centered(v: Sequence[int], p: int) -> list[int]:
    """Shift by pO into the symmetric residue range; (p, α) does not change."""
    half = p // 2
    return [((x + half) % p) - half for x in v]


def _two_element(K: NumberField, P: PrimeIdeal, primes: list[PrimeIdeal],
                 hint: list[int] | None = None) -> FieldElement:
    """α with P = pO + αO; small candidates are tried first for readable output."""
    n, p = K.n, P.p
    others = [Q for Q in primes if Q != P]
    if not others and P.e == 1:
        return K.rational(p)
    basis = [list(r) for r in P.basis]
    cands = [hint] if hint is not None else []
    cands += [r for r in basis if any(r[1:])]
    cands += [[a + s * b for a, b in zip(r, t)] for r in basis for t in basis if r is not t for s in (1, -1)]
    rng = random.Random(p * 1000003 + n)
    for _ in range(_TWO_ELEMENT_TRIES):
        coeffs = [rng.randint(-p, p) for _ in range(n)]
        cands.append([sum(c * basis[i][k] for i, c in enumerate(coeffs)) for k in range(n)])
    for v in cands:
        for w in (_centered(v, p), v):
            if _two_element_ok(P, others, w):
                alpha = K.from_o(w)
                lead = next(c for c in reversed(alpha.num) if c)
                return -alpha if lead < 0 else alpha
    raise AssertionError(f"no two-element generator found for a prime above {p}")


def prime_below(Q: PrimeIdeal, embed, K: NumberField) -> PrimeIdeal:
    """The prime of K under Q, given ``embed`` mapping K-elements into Q's field."""
    for P in factor_prime(K, Q.p):
        if all(Q.contains(embed(K.from_o(r))) for r in P.basis):
            return P
    raise AssertionError("no prime below")
