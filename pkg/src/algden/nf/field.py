"""Number fields Q[x]/(g) with their maximal orders.

Elements are stored as an integer coordinate vector over the power basis
``1, θ, …, θ^(n-1)`` together with one positive common denominator.  The ring
of integers is computed with the round-2 algorithm: starting from Z[θ], the
order is enlarged at each prime whose square divides disc(g) until it is
p-maximal.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from ..arith import factorize
from ..linalg import (
    hnf,
    int_det,
    left_kernel_mod,
    rank_q,
    rational_inverse,
    solve_left,
)
from ..poly import format_poly, is_irreducible_over_Q, trim

DEFAULT_MAX_DEGREE = 8


class FieldError(ValueError):
    pass


def hnf_lower(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """HNF whose i-th row has its pivot in column i and zeros to the right.

    Row 0 of a full-rank result is ``(a, 0, …, 0)``, so for a lattice in
    O-coordinates with ``ω_0 = 1`` it reads off the lattice's intersection with Z.
    """
    rev = [list(reversed(r)) for r in rows]
    h = hnf(rev)
    return [list(reversed(r)) for r in reversed(h)]


def hnf_lower_mod(rows: Iterable[Sequence[int]], modulus: int, n: int) -> list[list[int]]:
    """Lower HNF of a lattice known to contain ``modulus * Z^n``."""
    basis = [[modulus if i == j else 0 for j in range(n)] for i in range(n)]
    for r in rows:
        v = [x % modulus for x in r]
        if any(v):
            basis = hnf_lower(basis + [v])
    return basis


def _power_sums(g: Sequence[int], count: int) -> list[Fraction]:
    """Power sums s_k of the roots of the monic polynomial g (Newton's identities)."""
    n = len(g) - 1
    # e_k with g = x^n - e_1 x^(n-1) + e_2 x^(n-2) - ...
    e = [Fraction(1)] + [Fraction((-1) ** k * g[n - k]) for k in range(1, n + 1)]
    s = [Fraction(n)]
    for k in range(1, count):
        acc = Fraction(0)
        for i in range(1, min(k, n) + 1):
            term = e[i] * (s[k - i] if i < k else 0)
            acc += (-1) ** (i - 1) * term
        if k <= n:
            acc += (-1) ** (k - 1) * k * e[k]
        s.append(acc)
    return s


class NumberField:
    """The field Q[x]/(g) for a monic irreducible integer polynomial g.

    >>> K = NumberField([1, 0, 1])
    >>> K.discriminant, K.index
    (-4, 1)
    """

    def __init__(self, g: Sequence[int], max_degree: int = DEFAULT_MAX_DEGREE, check: bool = True):
        g = [int(a) for a in trim(g)]
        if len(g) < 2:
            raise FieldError("defining polynomial must have degree >= 1")
        if g[-1] != 1:
            raise FieldError(f"defining polynomial {format_poly(g)} is not monic")
        n = len(g) - 1
        if n > max_degree:
            raise FieldError(f"degree {n} exceeds the configured cap {max_degree}")
        if check:
            ok, fac = is_irreducible_over_Q(g)
            if not ok:
                raise FieldError(f"{format_poly(g)} is reducible: divisible by {format_poly(fac)}")
        self.g: tuple[int, ...] = tuple(g)
        self.n = n
        self._xpow = self._reduction_table()
        self._prime_cache: dict[int, list] = {}
        self._build_maximal_order()

    # ---------------------------------------------------------------- basics

    def _reduction_table(self) -> list[list[int]]:
        """Coordinates of θ^k for 0 <= k <= 2n-2."""
        n = self.n
        table = []
        cur = [1] + [0] * (n - 1)
        for _ in range(2 * n - 1):
            table.append(cur)
            # multiply by θ
            top = cur[-1]
            nxt = [0] + cur[:-1]
            if top:
                nxt = [nxt[i] - top * self.g[i] for i in range(n)]
            cur = nxt
        return table

    def __repr__(self) -> str:
        return f"NumberField({format_poly(self.g)})"

    def __str__(self) -> str:
        return f"Q[x]/({format_poly(self.g)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, NumberField) and self.g == other.g

    def __hash__(self) -> int:
        return hash(("NumberField", self.g))

    @property
    def degree(self) -> int:
        return self.n

    @property
    def defining_poly(self) -> tuple[int, ...]:
        return self.g

    def _mul_power(self, a: Sequence[int], b: Sequence[int]) -> list[int]:
        n = self.n
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:n]
        for k in range(n, 2 * n - 1):
            c = prod[k]
            if c:
                row = self._xpow[k]
                for i in range(n):
                    out[i] += c * row[i]
        return out

    def element(self, coeffs: Sequence, den: int = 1) -> "FieldElement":
        """Element with power-basis coordinates ``coeffs / den`` (coefficients may be Fractions)."""
        coeffs = list(coeffs) + [0] * (self.n - len(coeffs))
        if len(coeffs) > self.n:
            raise FieldError(f"{len(coeffs)} coordinates given for a degree-{self.n} field")
        fr = [Fraction(c) for c in coeffs]
        d = 1
        for c in fr:
            d = d * c.denominator // math.gcd(d, c.denominator)
        return FieldElement(self, [int(c * d) for c in fr], d * den)

    def from_poly(self, poly: Sequence) -> "FieldElement":
        """Evaluate a rational polynomial (ascending coefficients) at θ."""
        acc = self.zero
        th = self.gen
        for c in reversed(list(poly)):
            acc = acc * th + self.rational(c)
        return acc

    def rational(self, r) -> "FieldElement":
        r = Fraction(r)
        return FieldElement(self, [r.numerator] + [0] * (self.n - 1), r.denominator)

    @cached_property
    def zero(self) -> "FieldElement":
        return self.rational(0)

    @cached_property
    def one(self) -> "FieldElement":
        return self.rational(1)

    @cached_property
    def gen(self) -> "FieldElement":
        if self.n == 1:
            return self.rational(-self.g[0])
        return FieldElement(self, [0, 1] + [0] * (self.n - 2), 1)

    # ---------------------------------------------------------------- maximal order

    @cached_property
    def poly_discriminant(self) -> int:
        return int_det(self._trace_matrix([[1 if i == j else 0 for j in range(self.n)] for i in range(self.n)], 1))

    def _trace_matrix(self, basis_num, basis_den) -> list[list[int]]:
        n = self.n
        s = _power_sums(self.g, 2 * n - 1)
        tr_pow = [s[k] for k in range(2 * n - 1)]

        def trace(v):
            return sum(Fraction(v[i]) * tr_pow[i] for i in range(n))

        out = []
        for i in range(n):
            row = []
            for j in range(n):
                prod = self._mul_power(basis_num[i], basis_num[j])
                t = trace(prod) / (basis_den * basis_den)
                if t.denominator != 1:
                    raise AssertionError("trace of an integral element is not an integer")
                row.append(int(t))
            out.append(row)
        return out

    def _set_basis(self, num: list[list[int]], den: int) -> None:
        g = math.gcd(den, *[x for r in num for x in r])
        num = [[x // g for x in r] for r in num]
        den //= g
        self.basis_num = num
        self.basis_den = den
        inv = rational_inverse(num)
        w_den = 1
        for r in inv:
            for x in r:
                w_den = w_den * x.denominator // math.gcd(w_den, x.denominator)
        # power coords c (over 1) -> O coords = c * inv * den
        self._to_o_num = [[int(x * w_den) * den for x in r] for r in inv]
        self._to_o_den = w_den
        self._mult_table = self._compute_mult_table()

    def _compute_mult_table(self) -> list[list[list[int]]]:
        n = self.n
        tbl = []
        for i in range(n):
            row = []
            for j in range(n):
                prod = self._mul_power(self.basis_num[i], self.basis_num[j])
                coords = self._power_to_o(prod, self.basis_den * self.basis_den)
                if coords is None:
                    raise AssertionError("basis is not closed under multiplication")
                row.append(coords)
            tbl.append(row)
        return tbl

    def _power_to_o(self, num: Sequence[int], den: int) -> list[int] | None:
        """O-coordinates of an integral element given in power coordinates, or None."""
        n = self.n
        w = self._to_o_num
        total_den = den * self._to_o_den
        out = []
        for k in range(n):
            s = 0
            for i in range(n):
                if num[i]:
                    s += num[i] * w[i][k]
            if s % total_den:
                return None
            out.append(s // total_den)
        return out

    def _build_maximal_order(self) -> None:
        n = self.n
        self._set_basis([[1 if i == j else 0 for j in range(n)] for i in range(n)], 1)
        disc = self.poly_discriminant
        self._round2_primes = []
        if disc == 0:
            raise FieldError("defining polynomial is not squarefree")
        for p, k in factorize(abs(disc)):
            if k >= 2:
                self._round2_primes.append(p)
                while self._enlarge_at(p):
                    pass
        self.index = int(Fraction(self.basis_den**n, abs(int_det(self.basis_num))))
        self.discriminant = int_det(self._trace_matrix(self.basis_num, self.basis_den))
        if self.discriminant * self.index**2 != disc:
            raise AssertionError("discriminant relation disc(g) = index^2 disc(O) fails")

    def _enlarge_at(self, p: int) -> bool:
        """One round-2 step at p; returns True if the order grew."""
        n = self.n
        rad = self.p_radical_basis(p)
        rad_inv = rational_inverse(rad)
        # for each ω_k: matrix of multiplication on I_p in I_p-coordinates, mod p
        big_rows = []
        for k in range(n):
            ek = [1 if i == k else 0 for i in range(n)]
            row = []
            for b in rad:
                prod = self.mul_o(b, ek)
                coords = [sum(Fraction(prod[i]) * rad_inv[i][j] for i in range(n)) for j in range(n)]
                for c in coords:
                    if c.denominator != 1:
                        raise AssertionError("p-radical is not an ideal")
                    row.append(int(c) % p)
            big_rows.append(row)
        kern = left_kernel_mod(big_rows, p)
        if not kern:
            return False
        gens = [list(v) for v in kern] + [[p if i == j else 0 for j in range(n)] for i in range(n)]
        U = hnf_lower(gens)
        if abs(int_det(U)) == p**n:
            return False
        # new basis (U/p) expressed in power coordinates
        new_num = [[sum(U[r][i] * self.basis_num[i][j] for i in range(n)) for j in range(n)] for r in range(n)]
        new_den = self.basis_den * p
        new_num = hnf_lower(new_num)
        self._set_basis(new_num, new_den)
        return True

    def p_radical_basis(self, p: int) -> list[list[int]]:
        """Z-basis (O-coordinates, lower HNF) of the p-radical of the current order."""
        n = self.n
        j = 1
        while p**j < n:
            j += 1
        frob_rows = []
        for i in range(n):
            ei = [1 if t == i else 0 for t in range(n)]
            frob_rows.append(self.pow_o_mod(ei, p**j, p))
        kern = left_kernel_mod(frob_rows, p)
        gens = [list(v) for v in kern] + [[p if a == b else 0 for b in range(n)] for a in range(n)]
        return hnf_lower(gens)

    # ---------------------------------------------------------------- O-coordinate arithmetic

    @property
    def mult_table(self) -> list[list[list[int]]]:
        return self._mult_table

    def mul_o(self, a: Sequence[int], b: Sequence[int]) -> list[int]:
        n = self.n
        out = [0] * n
        tbl = self._mult_table
        for i, x in enumerate(a):
            if not x:
                continue
            row = tbl[i]
            for j, y in enumerate(b):
                if not y:
                    continue
                xy = x * y
                for k, c in enumerate(row[j]):
                    if c:
                        out[k] += xy * c
        return out

    def mul_o_mod(self, a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
        return [x % p for x in self.mul_o(a, b)]

    def pow_o_mod(self, a: Sequence[int], e: int, p: int) -> list[int]:
        result = [1] + [0] * (self.n - 1)
        base = [x % p for x in a]
        while e:
            if e & 1:
                result = self.mul_o_mod(result, base, p)
            e >>= 1
            if e:
                base = self.mul_o_mod(base, base, p)
        return result

    def o_matrix(self, a: Sequence[int]) -> list[list[int]]:
        """Rows: O-coordinates of ω_i * a."""
        n = self.n
        return [self.mul_o([1 if t == i else 0 for t in range(n)], a) for i in range(n)]

    def to_o(self, x: "FieldElement") -> tuple[list[int], int]:
        """O-coordinates of x as (integer vector, denominator), reduced."""
        n = self.n
        w = self._to_o_num
        num = [sum(x.num[i] * w[i][k] for i in range(n)) for k in range(n)]
        den = x.den * self._to_o_den
        g = math.gcd(den, *num)
        return [v // g for v in num], den // g

    def from_o(self, coords: Sequence, den: int = 1) -> "FieldElement":
        n = self.n
        fr = [Fraction(c) for c in coords]
        d = 1
        for c in fr:
            d = d * c.denominator // math.gcd(d, c.denominator)
        ints = [int(c * d) for c in fr]
        num = [sum(ints[i] * self.basis_num[i][j] for i in range(n)) for j in range(n)]
        return FieldElement(self, num, d * den * self.basis_den)

    @cached_property
    def integral_basis(self) -> list["FieldElement"]:
        return [FieldElement(self, row, self.basis_den) for row in self.basis_num]

    def integral_basis_matrix(self) -> list[list[Fraction]]:
        return [[Fraction(x, self.basis_den) for x in row] for row in self.basis_num]

    def is_integral(self, x: "FieldElement") -> bool:
        return self.to_o(x)[1] == 1

    # ---------------------------------------------------------------- primes

    def factor_prime(self, p: int):
        from .primes import factor_prime

        return factor_prime(self, p)

    def primes_above(self, p: int):
        return self.factor_prime(p)

    @cached_property
    def signature(self) -> tuple[int, int]:
        """(r1, r2) from the number of real roots of g."""
        from sympy import Poly, Symbol

        x = Symbol("x")
        r1 = int(Poly(list(reversed(self.g)), x).count_roots())
        return r1, (self.n - r1) // 2

    def class_group(self):
        from ..classgroup import class_group

        return class_group(self)


class FieldElement:
    """Immutable element of a :class:`NumberField` (power-basis coordinates over a common denominator)."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field: NumberField, num: Sequence[int], den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        num = [int(v) for v in num]
        if den < 0:
            num = [-v for v in num]
            den = -den
        g = math.gcd(den, *num)
        if g > 1:
            num = [v // g for v in num]
            den //= g
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "num", tuple(num))
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, key, value):
        raise AttributeError("FieldElement is immutable")

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, [a * o.den + b * self.den for a, b in zip(self.num, o.num)], self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.num], self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field._mul_power(self.num, o.num), self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        K = self.field
        n = K.n
        # solve x * self = 1 with the multiplication matrix
        rows = [K._mul_power([1 if t == i else 0 for t in range(n)], self.num) for i in range(n)]
        sol = solve_left(rows, [self.den] + [0] * (n - 1))
        if sol is None:
            raise AssertionError("multiplication matrix of a nonzero element is singular")
        return K.element(sol)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.rational(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.num == other.num and self.den == other.den

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.field.g, self.num, self.den))
            object.__setattr__(self, "_hash", h)
        return h

    # queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, self.den) for a in self.num)

    def multiplication_matrix(self) -> list[list[Fraction]]:
        K = self.field
        n = K.n
        return [[Fraction(v, self.den) for v in K._mul_power([1 if t == i else 0 for t in range(n)], self.num)] for i in range(n)]

    def charpoly(self) -> list[Fraction]:
        from ..linalg import charpoly

        return charpoly(self.multiplication_matrix())

    def norm(self) -> Fraction:
        cp = self.charpoly()
        return (-1) ** self.field.n * cp[0]

    def trace(self) -> Fraction:
        return -self.charpoly()[-2]

    def minpoly(self) -> list[Fraction]:
        """Monic minimal polynomial over Q (ascending)."""
        K = self.field
        powers = [K.one.coords]
        cur = K.one
        while True:
            cur = cur * self
            sol = solve_left(powers, cur.coords)
            if sol is not None:
                return [-c for c in sol] + [Fraction(1)]
            powers.append(cur.coords)

    def degree(self) -> int:
        return len(self.minpoly()) - 1

    def is_integral(self) -> bool:
        return self.field.is_integral(self)

    def __repr__(self) -> str:
        return f"FieldElement({self})"

    def __str__(self) -> str:
        return format_poly(self.coords)

    def to_o(self) -> tuple[list[int], int]:
        return self.field.to_o(self)


def elements_rank(elems: Sequence[FieldElement]) -> int:
    return rank_q([e.coords for e in elems])


def generated_dimension(*gens: FieldElement) -> int:
    """Q-dimension of the subalgebra generated by the given elements."""
    if not gens:
        return 1
    K = gens[0].field
    basis = [K.one]
    rows = [K.one.coords]
    frontier = [K.one]
    while frontier:
        new = []
        for b in frontier:
            for g in gens:
                c = b * g
                if solve_left(rows, c.coords) is None:
                    rows.append(c.coords)
                    basis.append(c)
                    new.append(c)
        frontier = new
    return len(basis)
