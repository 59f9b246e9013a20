"""Exact integer and rational primitives.

Everything downstream is exact: integers are Python ints, rationals are
:class:`fractions.Fraction`.  This module supplies the pieces the standard
library lacks -- certified primality, integer factorization with an explicit
effort bound, and p-adic valuations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Union

Rational = Fraction
RationalLike = Union[int, Fraction]

TRIAL_LIMIT = 10**6
DEFAULT_RHO_EFFORT = 200_000

# Deterministic Miller-Rabin: the first 13 primes are a proven witness set
# for every n < 3317044064679887385961981.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3317044064679887385961981


class FactorizationError(ArithmeticError):
    """Raised when factorization gives up; carries the unfactored cofactor."""

    def __init__(self, n: int, cofactor: int, found: dict[int, int]):
        self.n = n
        self.cofactor = cofactor
        self.found = dict(found)
        super().__init__(f"unfactored cofactor {cofactor} of {n} (effort bound exceeded)")


def _small_primes(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


_SMALL_PRIMES = _small_primes(1000)
_SMALL_PRIME_SET = frozenset(_SMALL_PRIMES)
_TRIAL_PRIMES: list[int] | None = None


def _trial_primes() -> list[int]:
    global _TRIAL_PRIMES
    if _TRIAL_PRIMES is None:
        _TRIAL_PRIMES = _small_primes(TRIAL_LIMIT)
    return _TRIAL_PRIMES


def is_prime(n: int) -> bool:
    """Deterministic primality for n below 3.3e24; strong probable-prime above."""
    if n < 2:
        return False
    if n in _SMALL_PRIME_SET:
        return True
    for p in _SMALL_PRIMES[:25]:
        if n % p == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    if n >= _MR_LIMIT:
        # beyond the proven witness range: defer to BPSW
        from sympy import isprime

        return bool(isprime(n))
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than n."""
    m = max(n + 1, 2)
    while not is_prime(m):
        m += 1
    return m


def primes_up_to(limit: int) -> list[int]:
    if limit <= 1000:
        return [p for p in _SMALL_PRIMES if p <= limit]
    return _small_primes(limit)


def _brent(n: int, c: int, effort: int) -> int | None:
    """Pollard rho with Brent's cycle detection; returns a nontrivial factor or None."""
    y, r, q, g = 2, 1, 1, 1
    m = 128
    x = ys = y
    steps = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        r *= 2
        steps += r
        if steps > effort:
            return None
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g if g != n else None


@dataclass(frozen=True)
class PrimeFactorization:
    """Ordered (prime, exponent) pairs; primes strictly increasing."""

    factors: tuple[tuple[int, int], ...]

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def __contains__(self, p: object) -> bool:
        return any(q == p for q, _ in self.factors)

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def value(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


def factorize(n: int, effort: int = DEFAULT_RHO_EFFORT) -> PrimeFactorization:
    """Factor a positive integer.

    Trial division up to ``TRIAL_LIMIT`` (stopping early once the cofactor is
    prime), then Pollard-Brent rho on what remains.  If rho exceeds ``effort``
    iterations on some composite cofactor, :class:`FactorizationError` is raised;
    a wrong factorization is never returned.

    >>> factorize(60).as_dict()
    {2: 2, 3: 1, 5: 1}
    """
    if n < 1:
        raise ValueError(f"factorize expects a positive integer, got {n}")
    return _factorize_cached(n, effort)


@lru_cache(maxsize=8192)
def _factorize_cached(n: int, effort: int) -> PrimeFactorization:
    found: dict[int, int] = {}
    m = n
    for p in _SMALL_PRIMES:
        if p * p > m:
            break
        while m % p == 0:
            found[p] = found.get(p, 0) + 1
            m //= p
    if 1 < m < 1000 * 1000:
        # no factor below 1000, so the cofactor is prime
        found[m] = found.get(m, 0) + 1
        m = 1
    if m > 1 and not is_prime(m):
        for p in _trial_primes():
            if p < 1000:
                continue
            if p * p > m:
                break
            if m % p == 0:
                while m % p == 0:
                    found[p] = found.get(p, 0) + 1
                    m //= p
                if m == 1 or is_prime(m):
                    break
    stack = [m] if m > 1 else []
    while stack:
        k = stack.pop()
        if is_prime(k):
            found[k] = found.get(k, 0) + 1
            continue
        r = math.isqrt(k)
        if r * r == k:
            stack.extend([r, r])
            continue
        g = None
        for c in range(1, 20):
            g = _brent(k, c, effort)
            if g is not None:
                break
        if g is None:
            raise FactorizationError(n, k, found)
        stack.extend([g, k // g])
    return PrimeFactorization(tuple(sorted(found.items())))


def prime_divisors(n: int) -> list[int]:
    return factorize(abs(n)).primes if n not in (0, 1, -1) else []


def divisors(n: int) -> list[int]:
    """Positive divisors of n in increasing order."""
    divs = [1]
    for p, e in factorize(abs(n)):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def vp_int(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero is undefined")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp(r: RationalLike, p: int) -> int:
    """Exact p-adic valuation of a nonzero rational.

    >>> vp(Fraction(5, 4), 2)
    -2
    """
    r = Fraction(r)
    if r == 0:
        raise ValueError("valuation of zero is undefined")
    return vp_int(r.numerator, p) - vp_int(r.denominator, p)


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v) if v else out
    return abs(out)


def ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def squarefree_part(n: int) -> int:
    """Signed squarefree kernel: n = s * k^2 with s squarefree."""
    if n == 0:
        raise ValueError("squarefree part of zero")
    s = -1 if n < 0 else 1
    for p, e in factorize(abs(n)):
        if e % 2:
            s *= p
    return s
