"""Univariate polynomials and the denominator invariants of a minimal polynomial.

Polynomials are coefficient lists in *ascending* order (``[a_0, a_1, ...]``).
Rational polynomials hold :class:`~fractions.Fraction` entries; the public
types :class:`IntPolynomial` and :class:`MinimalPolynomial` are immutable
wrappers used at module boundaries.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from .arith import ceil_div, divisors, factorize, is_square, next_prime, vp_int

QPoly = list  # list[Fraction], ascending


class ReducibleError(ValueError):
    """A polynomial expected to be irreducible over Q factors; ``factor`` is a witness."""

    def __init__(self, poly, factor):
        self.poly = poly
        self.factor = factor
        super().__init__(f"{format_poly(poly)} is reducible over Q: divisible by {format_poly(factor)}")


# ------------------------------------------------------------------ Q[x] helpers


def trim(f: Sequence) -> list:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def degree(f: Sequence) -> int:
    f = trim(f)
    return len(f) - 1 if f else -1


def padd(f: Sequence, g: Sequence) -> list:
    n = max(len(f), len(g))
    return trim([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)])


def psub(f: Sequence, g: Sequence) -> list:
    n = max(len(f), len(g))
    return trim([(f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0) for i in range(n)])


def pmul(f: Sequence, g: Sequence) -> list:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim(out)


def pscale(f: Sequence, c) -> list:
    return trim([c * a for a in f])


def pdivmod(f: Sequence, g: Sequence) -> tuple[list, list]:
    """Division with remainder over Q."""
    f = [Fraction(a) for a in trim(f)]
    g = [Fraction(a) for a in trim(g)]
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(f) - len(g) + 1, 0)
    lc = g[-1]
    while len(f) >= len(g) and f:
        c = f[-1] / lc
        shift = len(f) - len(g)
        q[shift] = c
        for i, b in enumerate(g):
            f[i + shift] -= c * b
        f = trim(f)
    return trim(q), f


def pmonic(f: Sequence) -> list:
    f = trim(f)
    lc = Fraction(f[-1])
    return [Fraction(a) / lc for a in f]


def pgcd(f: Sequence, g: Sequence) -> list:
    """Monic gcd over Q."""
    a, b = trim(f), trim(g)
    while b:
        a, b = b, pdivmod(a, b)[1]
    return pmonic(a) if a else []


def pderiv(f: Sequence) -> list:
    return trim([i * f[i] for i in range(1, len(f))])


def peval(f: Sequence, x):
    acc = 0
    for a in reversed(f):
        acc = acc * x + a
    return acc


def content(f: Iterable[int]) -> int:
    return reduce(math.gcd, (abs(int(a)) for a in f), 0)


def primitive_int(f: Sequence) -> list[int]:
    """Unique primitive integer multiple of a nonzero rational polynomial with positive lead."""
    f = trim(f)
    if not f:
        raise ValueError("zero polynomial")
    den = 1
    for a in f:
        den = den * Fraction(a).denominator // math.gcd(den, Fraction(a).denominator)
    ints = [int(Fraction(a) * den) for a in f]
    g = content(ints)
    ints = [a // g for a in ints]
    if ints[-1] < 0:
        ints = [-a for a in ints]
    return ints


def is_squarefree(f: Sequence) -> bool:
    return degree(pgcd(f, pderiv(f))) == 0


def format_poly(f: Sequence, var: str = "x") -> str:
    """Render ascending coefficients as ``5*x^2-4*x+1``."""
    f = trim(f)
    if not f:
        return "0"
    parts = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if c == 0:
            continue
        c = Fraction(c)
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            if mag == 1:
                body = mono
            elif mag.denominator == 1:
                body = f"{mag}*{mono}"
            else:
                body = f"({mag})*{mono}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += sign + body
    return out


# ------------------------------------------------------------------ F_p[x]


def factor_mod_p(f: Sequence[int], p: int) -> list[tuple[list[int], int]]:
    """Monic irreducible factors of f mod p with multiplicities (ascending coefficient lists)."""
    from sympy.polys.domains import ZZ
    from sympy.polys.galoistools import gf_factor

    desc = [int(a) % p for a in reversed(trim(f))]
    _, facs = gf_factor(desc, p, ZZ)
    out = [([int(c) for c in reversed(g)], m) for g, m in facs]
    out.sort(key=lambda t: (len(t[0]), t[0][::-1], t[1]))
    return out


def pmod_p(f: Sequence[int], p: int) -> list[int]:
    return trim([int(a) % p for a in f])


def pdivmod_p(f: Sequence[int], g: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    f = pmod_p(f, p)
    g = pmod_p(g, p)
    if not g:
        raise ZeroDivisionError("division by zero polynomial mod p")
    inv = pow(g[-1], -1, p)
    q = [0] * max(len(f) - len(g) + 1, 0)
    while len(f) >= len(g) and f:
        c = f[-1] * inv % p
        shift = len(f) - len(g)
        q[shift] = c
        for i, b in enumerate(g):
            f[i + shift] = (f[i + shift] - c * b) % p
        f = trim(f)
    return trim(q), f


def pmul_p(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    return pmod_p(pmul(f, g), p)


# ------------------------------------------------------------------ public types


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial a_0 + a_1 x + ... + a_n x^n (ascending coefficients)."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(a) for a in self.coeffs)
        while c and c[-1] == 0:
            c = c[:-1]
        if not c:
            raise ValueError("the zero polynomial has no degree")
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1]

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i]

    def __str__(self) -> str:
        return format_poly(self.coeffs)

    def as_list(self) -> list[int]:
        return list(self.coeffs)


@dataclass(frozen=True)
class MinimalPolynomial:
    """The primitive irreducible integer polynomial F with positive leading coefficient."""

    poly: IntPolynomial

    def __post_init__(self):
        f = self.poly.coeffs
        if self.poly.degree < 1:
            raise ValueError("a minimal polynomial has degree >= 1")
        if f[-1] <= 0 or content(f) != 1:
            raise ValueError(f"{self.poly} is not primitive with positive leading coefficient")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.poly.coeffs

    @property
    def degree(self) -> int:
        return self.poly.degree

    def __str__(self) -> str:
        return str(self.poly)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int], check: bool = True) -> "MinimalPolynomial":
        if check:
            return normalize(coeffs)
        return cls(IntPolynomial(tuple(coeffs)))


@dataclass(frozen=True)
class InvariantReport:
    c: int
    d: int
    e: int
    n: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.c, self.d, self.e, self.n)


# ------------------------------------------------------------------ irreducibility


def _rational_root(f: Sequence[int]) -> Fraction | None:
    """A rational root of an integer polynomial, or None."""
    if f[0] == 0:
        return Fraction(0)
    a0, an = abs(f[0]), abs(f[-1])
    if len(f) == 3:
        disc = f[1] * f[1] - 4 * f[0] * f[2]
        if not is_square(disc):
            return None
        r = math.isqrt(disc)
        return Fraction(-f[1] + r, 2 * f[2])
    for q in divisors(an):
        for p in divisors(a0):
            for s in (1, -1):
                r = Fraction(s * p, q)
                if peval(f, r) == 0:
                    return r
    return None


def is_irreducible_over_Q(f: Sequence[int] | IntPolynomial) -> tuple[bool, list[int] | None]:
    """Decide irreducibility over Q.

    Returns ``(True, None)`` or ``(False, factor)`` where ``factor`` is a verified
    nontrivial primitive integer divisor.
    """
    coeffs = list(f.coeffs) if isinstance(f, IntPolynomial) else [int(a) for a in trim(f)]
    n = len(coeffs) - 1
    if n < 1:
        raise ValueError("irreducibility needs degree >= 1")
    if n == 1:
        return True, None
    r = _rational_root(coeffs) if n <= 3 or coeffs[0] == 0 else None
    if r is not None:
        return False, [-r.numerator, r.denominator]
    if n <= 3:
        return True, None
    if _irreducible_mod_some_prime(coeffs):
        return True, None
    from sympy import Poly, Symbol

    x = Symbol("x")
    _, facs = Poly(list(reversed(coeffs)), x).factor_list()
    if len(facs) == 1 and facs[0][1] == 1:
        return True, None
    g = [int(c) for c in reversed(facs[0][0].all_coeffs())]
    g = primitive_int(g)
    if pdivmod(coeffs, g)[1]:
        raise AssertionError("factor witness failed to divide")
    return False, g


def _irreducible_mod_some_prime(coeffs: list[int], tries: int = 6) -> bool:
    disc_check = is_squarefree(coeffs)
    if not disc_check:
        return False
    p, used = 2, 0
    while used < tries:
        if coeffs[-1] % p:
            red = pmod_p(coeffs, p)
            if len(red) == len(coeffs) and is_squarefree_mod_p(red, p):
                used += 1
                facs = factor_mod_p(red, p)
                if len(facs) == 1 and facs[0][1] == 1:
                    return True
        p = next_prime(p)
    return False


def is_squarefree_mod_p(f: list[int], p: int) -> bool:
    return all(m == 1 for _, m in factor_mod_p(f, p))


def normalize(p: Sequence) -> MinimalPolynomial:
    """Primitive integer multiple with positive leading coefficient, checked irreducible.

    >>> str(normalize([Fraction(1, 5), Fraction(-4, 5), 1]))
    '5*x^2-4*x+1'
    """
    ints = primitive_int(p)
    ok, fac = is_irreducible_over_Q(ints)
    if not ok:
        raise ReducibleError(ints, fac)
    return MinimalPolynomial(IntPolynomial(tuple(ints)))


# ------------------------------------------------------------------ invariants


def d_exponent(coeffs: Sequence[int], p: int) -> int:
    """v_p(d) from the ceiling formula over the coefficients a_0..a_n."""
    n = len(coeffs) - 1
    vn = vp_int(coeffs[n], p)
    best = 0
    for j in range(n):
        if coeffs[j] == 0:
            continue
        best = max(best, ceil_div(vn - vp_int(coeffs[j], p), n - j))
    return best


def invariants(F: MinimalPolynomial | Sequence[int]) -> InvariantReport:
    """The invariants (c, d, e, n) of the algebraic numbers with minimal polynomial F.

    >>> invariants(MinimalPolynomial.from_coeffs([1, -4, 5])).as_tuple()
    (5, 5, 1, 2)
    """
    coeffs = list(F.coeffs) if isinstance(F, MinimalPolynomial) else [int(a) for a in F]
    n = len(coeffs) - 1
    c = coeffs[n]
    e = content(coeffs[1:])
    d = 1
    for p, _ in factorize(c):
        d *= p ** d_exponent(coeffs, p)
    return InvariantReport(c=c, d=d, e=e, n=n)


def scaled_minpoly(coeffs: Sequence[int], k: int) -> list[int]:
    """Primitive minimal polynomial of k*gamma given that of gamma."""
    n = len(coeffs) - 1
    scaled = [a * k ** (n - i) for i, a in enumerate(coeffs)]
    g = content(scaled)
    return [a // g for a in scaled]


def smallest_denominator_bruteforce(F: MinimalPolynomial | Sequence[int]) -> int:
    """Smallest k >= 1 with k*gamma integral, found by direct search over divisors of c."""
    coeffs = list(F.coeffs) if isinstance(F, MinimalPolynomial) else [int(a) for a in F]
    for k in divisors(coeffs[-1]):
        if scaled_minpoly(coeffs, k)[-1] == 1:
            return k
    raise AssertionError("c * gamma is always integral")


def d_equals_c_criterion(coeffs: Sequence[int]) -> bool:
    """True iff no prime p has p^2 | a_n and p | a_{n-1}."""
    an, an1 = coeffs[-1], coeffs[-2]
    for p, e in factorize(an):
        if e >= 2 and an1 % p == 0:
            return False
    return True


def random_minimal_polynomial(rng: random.Random, max_degree: int = 4, height: int = 50,
                              min_degree: int = 1) -> MinimalPolynomial:
    """Rejection-sample a uniformly drawn polynomial until it is irreducible and primitive."""
    while True:
        n = rng.randint(min_degree, max_degree)
        coeffs = [rng.randint(-height, height) for _ in range(n)] + [rng.randint(1, height)]
        if coeffs[0] == 0 or content(coeffs) != 1:
            continue
        if is_irreducible_over_Q(coeffs)[0]:
            return MinimalPolynomial(IntPolynomial(tuple(coeffs)))


def rational_roots(f: Sequence) -> list[Fraction]:
    """Distinct rational roots of a nonzero rational polynomial, ascending."""
    g = primitive_int(f)
    roots: set[Fraction] = set()
    while len(g) > 1:
        r = _rational_root(g) if len(g) > 2 else Fraction(-g[0], g[1])
        if r is None:
            break
        roots.add(r)
        q, rem = pdivmod(g, [-r, 1])
        assert not rem
        g = primitive_int(q)
    return sorted(roots)
