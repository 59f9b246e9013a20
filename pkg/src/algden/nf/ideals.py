"""Fractional ideals of O_K as Hermite-normal-form Z-lattices.

An ideal is ``(1/den) * L`` where ``L`` is an integer lattice in
O-coordinates given by its lower HNF basis.  The pair (basis, den) is reduced
so that equality of ideals is equality of representations.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from ..arith import factorize, vp_int
from ..linalg import integer_left_kernel, rational_inverse
from .field import FieldElement, NumberField, hnf_lower, hnf_lower_mod
from .primes import PrimeIdeal, factor_prime


class IdealError(ValueError):
    pass


class FractionalIdeal:
    """Nonzero fractional ideal of the maximal order of ``field``.

    >>> K = NumberField([1, 0, 1])
    >>> a, b = K.element([2, 1]), K.element([2, -1])
    >>> FractionalIdeal.principal(a) * FractionalIdeal.principal(b) == FractionalIdeal.principal(K.rational(5))
    True
    """

    __slots__ = ("field", "basis", "den")

    def __init__(self, field: NumberField, basis: Sequence[Sequence[int]], den: int = 1, *, reduced: bool = False):
        n = field.n
        if not reduced:
            basis = hnf_lower(basis)
        if len(basis) != n or any(basis[i][i] == 0 for i in range(n)):
            raise IdealError("the zero ideal (or a degenerate lattice) is not a fractional ideal")
        g = math.gcd(den, *[x for r in basis for x in r])
        if g > 1:
            basis = [[x // g for x in r] for r in basis]
            den //= g
        self.field = field
        self.basis = tuple(tuple(r) for r in basis)
        self.den = den

    # ---------------------------------------------------------------- construction

    @classmethod
    def from_generators(cls, field: NumberField, gens: Iterable[FieldElement]) -> "FractionalIdeal":
        """The O_K-module generated by the given elements."""
        n = field.n
        vecs, dens = [], []
        for g in gens:
            if g.is_zero():
                continue
            v, d = field.to_o(g)
            vecs.append(v)
            dens.append(d)
        if not vecs:
            raise IdealError("the zero ideal is not a fractional ideal")
        D = 1
        for d in dens:
            D = D * d // math.gcd(D, d)
        rows = []
        for v, d in zip(vecs, dens):
            w = [x * (D // d) for x in v]
            for i in range(n):
                rows.append(field.mul_o(w, [1 if t == i else 0 for t in range(n)]))
        # modulus: a nonzero integer in the lattice (the norm of a generator times D)
        modulus = _integer_multiple(field, rows[:n])
        return cls(field, hnf_lower_mod(rows, modulus, n), D, reduced=True)

    @classmethod
    def principal(cls, x) -> "FractionalIdeal":
        if not isinstance(x, FieldElement):
            raise TypeError("principal() needs a FieldElement")
        return cls.from_generators(x.field, [x])

    @classmethod
    def unit(cls, field: NumberField) -> "FractionalIdeal":
        n = field.n
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)], 1, reduced=True)

    @classmethod
    def from_prime(cls, P: PrimeIdeal) -> "FractionalIdeal":
        return cls(P.field, [list(r) for r in P.basis], 1, reduced=True)

    @classmethod
    def coerce(cls, x) -> "FractionalIdeal":
        if isinstance(x, FractionalIdeal):
            return x
        if isinstance(x, PrimeIdeal):
            return cls.from_prime(x)
        if isinstance(x, FieldElement):
            return cls.principal(x)
        raise TypeError(f"cannot make an ideal from {type(x).__name__}")

    # ---------------------------------------------------------------- basic data

    def __eq__(self, other) -> bool:
        if isinstance(other, PrimeIdeal):
            other = FractionalIdeal.from_prime(other)
        return (
            isinstance(other, FractionalIdeal)
            and self.field == other.field
            and self.den == other.den
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.field.g, self.basis, self.den))

    def __repr__(self) -> str:
        return f"FractionalIdeal({self})"

    def __str__(self) -> str:
        a, alpha = self.two_element()
        if alpha is None:
            return f"({a})"
        return f"({a}, {alpha})"

    @property
    def n(self) -> int:
        return self.field.n

    def is_integral(self) -> bool:
        return self.den == 1

    def is_one(self) -> bool:
        return self == FractionalIdeal.unit(self.field)

    def norm(self) -> Fraction:
        det = 1
        for i in range(self.n):
            det *= self.basis[i][i]
        return Fraction(det, self.den**self.n)

    def min_integer(self) -> Fraction:
        """Positive generator of the ideal's intersection with Q."""
        return Fraction(self.basis[0][0], self.den)

    def elements(self) -> list[FieldElement]:
        """Z-basis as field elements."""
        return [self.field.from_o(r, self.den) for r in self.basis]

    def contains(self, x: FieldElement) -> bool:
        if x.is_zero():
            return True
        v, d = self.field.to_o(x)
        # x in (1/den) L  iff  den*x in L
        num = [c * self.den for c in v]
        if any(c % d for c in num):
            return False
        return _in_lower(self.basis, [c // d for c in num])

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def contains_ideal(self, other: "FractionalIdeal") -> bool:
        return all(self.contains(x) for x in FractionalIdeal.coerce(other).elements())

    # ---------------------------------------------------------------- arithmetic

    def __mul__(self, other) -> "FractionalIdeal":
        if isinstance(other, FieldElement):
            other = FractionalIdeal.principal(other)
        other = FractionalIdeal.coerce(other)
        K = self.field
        rows = [K.mul_o(a, b) for a in self.basis for b in other.basis]
        modulus = self.basis[0][0] * other.basis[0][0]
        return FractionalIdeal(K, hnf_lower_mod(rows, modulus, K.n), self.den * other.den, reduced=True)

    __rmul__ = __mul__

    def __add__(self, other) -> "FractionalIdeal":
        other = FractionalIdeal.coerce(other)
        D = self.den * other.den // math.gcd(self.den, other.den)
        rows = [[x * (D // self.den) for x in r] for r in self.basis]
        rows += [[x * (D // other.den) for x in r] for r in other.basis]
        return FractionalIdeal(self.field, rows, D)

    def intersection(self, other) -> "FractionalIdeal":
        other = FractionalIdeal.coerce(other)
        n = self.n
        D = self.den * other.den // math.gcd(self.den, other.den)
        A = [[x * (D // self.den) for x in r] for r in self.basis]
        B = [[-x * (D // other.den) for x in r] for r in other.basis]
        kern = integer_left_kernel(A + B)
        rows = [[sum(k[i] * A[i][j] for i in range(n)) for j in range(n)] for k in kern]
        return FractionalIdeal(self.field, rows, D)

    __and__ = intersection

    def inverse(self) -> "FractionalIdeal":
        """{x : x I ⊆ O}, computed as a dual lattice."""
        K = self.field
        n = self.n
        cols = []
        for b in self.basis:
            M = K.o_matrix(b)
            for col in range(n):
                cols.append([M[k][col] for k in range(n)])
        H = hnf_lower(cols)
        inv = rational_inverse(H)
        dual = [[inv[j][i] for j in range(n)] for i in range(n)]
        D = 1
        for r in dual:
            for x in r:
                D = D * x.denominator // math.gcd(D, x.denominator)
        rows = [[int(x * D) * self.den for x in r] for r in dual]
        return FractionalIdeal(K, rows, D)

    def __truediv__(self, other) -> "FractionalIdeal":
        return self * FractionalIdeal.coerce(other).inverse()

    def __pow__(self, k: int) -> "FractionalIdeal":
        if k < 0:
            return self.inverse() ** (-k)
        result = FractionalIdeal.unit(self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # ---------------------------------------------------------------- factorization

    def valuation(self, P: PrimeIdeal) -> int:
        v = min(P._val_o(r) for r in self.basis if any(r))
        return v - P.e * vp_int(self.den, P.p) if self.den % P.p == 0 else v

    def support_primes(self) -> list[int]:
        num = 1
        for i in range(self.n):
            num *= self.basis[i][i]
        return sorted(set(factorize(num).primes) | set(factorize(self.den).primes))

    def factor(self) -> list[tuple[PrimeIdeal, int]]:
        """Prime factorization in canonical prime order (nonzero exponents only)."""
        out = []
        for p in self.support_primes():
            for P in factor_prime(self.field, p):
                v = self.valuation(P)
                if v:
                    out.append((P, v))
        return out

    def radical(self) -> "FractionalIdeal":
        """Product of the distinct primes dividing an integral ideal."""
        if not self.is_integral():
            raise IdealError("radical is defined here for integral ideals only")
        return product_of_primes([P for P, _ in self.factor()], self.field)

    def two_element(self) -> tuple[Fraction, FieldElement | None]:
        """(a, α) with I = aO + αO and a the positive generator of I ∩ Q."""
        K = self.field
        a = self.min_integer()
        if self == FractionalIdeal.principal(K.rational(a)):
            return a, None
        for alpha in self._two_element_candidates():
            if alpha.is_zero():
                continue
            J = FractionalIdeal.from_generators(K, [K.rational(a), alpha])
            if J == self:
                return a, alpha
        raise AssertionError("no two-element presentation found")

    def _two_element_candidates(self):
        import random

        elems = self.elements()
        yield from elems
        for x in elems:
            for y in elems:
                if x is not y:
                    yield x + y
                    yield x - y
        rng = random.Random(hash(self.basis) & 0xFFFF)
        for _ in range(2000):
            acc = self.field.zero
            for e in elems:
                acc = acc + rng.randint(-3, 3) * e
            yield acc


def _in_lower(basis: Sequence[Sequence[int]], vec: Sequence[int]) -> bool:
    v = list(vec)
    for i in range(len(basis) - 1, -1, -1):
        row = basis[i]
        q, r = divmod(v[i], row[i])
        if r:
            return False
        if q:
            for k in range(i + 1):
                v[k] -= q * row[k]
    return not any(v)


def _integer_multiple(field: NumberField, rows: list[list[int]]) -> int:
    """A nonzero integer lying in the lattice spanned by ``rows`` (full-rank square)."""
    from ..linalg import int_det

    d = abs(int_det(rows))
    if d == 0:
        raise IdealError("degenerate generator")
    return d


def product_of_primes(primes: Iterable[PrimeIdeal], field: NumberField) -> FractionalIdeal:
    out = FractionalIdeal.unit(field)
    for P in primes:
        out = out * FractionalIdeal.from_prime(P)
    return out


def ideal_from_factorization(field: NumberField, fac: Iterable[tuple[PrimeIdeal, int]]) -> FractionalIdeal:
    out = FractionalIdeal.unit(field)
    for P, k in fac:
        out = out * FractionalIdeal.from_prime(P) ** k
    return out


def factor_element(x: FieldElement) -> list[tuple[PrimeIdeal, int]]:
    return FractionalIdeal.principal(x).factor()
