"""Which tuples (c, d, e, n) occur as invariants of an algebraic number.

A tuple is realizable iff ``d | c``, ``c | d^n``, ``e | c``, ``c | d^(n-1) e``
and every prime ``p | c`` satisfies

    (1) v_p(d) + v_p(e) <= v_p(c)    or    (2) v_p(d) = ceil(v_p(c) / n).

Condition (2) is often quoted in the stronger form ``v_p(c) = n v_p(d)``.
That form is too strict: ``2x^2 + 2x + 1`` realizes (2, 2, 2, 2) although
``v_2(c) = 1 != 2 v_2(d)``.  The stronger form is kept as a diagnostic
(``PrimeDiagnostic.literal_condition_2``) so the two can be compared.

Realizable tuples come with an explicit Eisenstein witness polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Iterable, Iterator

from .arith import ceil_div, factorize, is_prime, vp_int
from .poly import (
    IntPolynomial,
    MinimalPolynomial,
    content,
    invariants,
    is_irreducible_over_Q,
)


class Violation(str, Enum):
    D_NOT_DIV_C = "d∤c"
    C_NOT_DIV_DN = "c∤d^n"
    E_NOT_DIV_C = "e∤c"
    C_NOT_DIV_DN1E = "c∤d^{n−1}e"
    PER_PRIME = "per-prime"


@dataclass(frozen=True)
class TupleQuery:
    c: int
    d: int
    e: int
    n: int

    def __post_init__(self):
        if min(self.c, self.d, self.e) < 1:
            raise ValueError(f"c, d, e must be positive, got {self.as_tuple()}")
        if self.n < 1:
            raise ValueError(f"degree must be positive, got {self.n}")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.c, self.d, self.e, self.n)


@dataclass(frozen=True)
class PrimeDiagnostic:
    """Per-prime view of the local conditions.

    ``condition_2`` is ``v_p(d) = ceil(v_p(c)/n)``.  ``fine_condition_2`` adds
    ``(n-1)/n v_p(c) < v_p(e)``, which is implied whenever condition 1 fails.
    ``literal_condition_2`` is the stronger ``v_p(c) = n v_p(d)``.
    """

    p: int
    vc: int
    vd: int
    ve: int
    condition_1: bool
    condition_2: bool
    fine_condition_2: bool
    literal_condition_2: bool

    @property
    def ok(self) -> bool:
        return self.condition_1 or self.condition_2

    @property
    def fine_ok(self) -> bool:
        return self.condition_1 or self.fine_condition_2

    @property
    def literal_ok(self) -> bool:
        return self.condition_1 or self.literal_condition_2


@dataclass(frozen=True)
class TupleCertificate:
    query: TupleQuery
    realizable: bool
    witness: MinimalPolynomial | None = None
    eisenstein_prime: int | None = None
    violated_condition: Violation | None = None
    offending_prime: int | None = None
    diagnostics: tuple[PrimeDiagnostic, ...] = field(default=())

    @property
    def literal_realizable(self) -> bool:
        """Verdict under the stronger per-prime form ``v_p(c) = n v_p(d)``."""
        if self.violated_condition not in (None, Violation.PER_PRIME):
            return False
        return all(dg.literal_ok for dg in self.diagnostics)

    @property
    def reason(self) -> str | None:
        if self.violated_condition is None:
            return None
        if self.violated_condition is Violation.PER_PRIME:
            return f"per-prime condition fails at p={self.offending_prime}"
        return self.violated_condition.value


class NotRealizableError(ValueError):
    def __init__(self, cert: TupleCertificate):
        self.certificate = cert
        super().__init__(f"tuple {cert.query.as_tuple()} is not realizable: {cert.reason}")


def _as_query(q) -> TupleQuery:
    return q if isinstance(q, TupleQuery) else TupleQuery(*q)


def prime_diagnostics(q: TupleQuery) -> tuple[PrimeDiagnostic, ...]:
    out = []
    n = q.n
    for p, vc in factorize(q.c):
        vd, ve = vp_int(q.d, p), vp_int(q.e, p)
        c1 = vd + ve <= vc
        c2 = vd == ceil_div(vc, n)
        fine = c2 and (n - 1) * vc < n * ve
        out.append(PrimeDiagnostic(p, vc, vd, ve, c1, c2, fine, vc == n * vd))
    return tuple(out)


def _violation(q: TupleQuery) -> tuple[Violation | None, int | None]:
    c, d, e, n = q.as_tuple()
    if c % d:
        return Violation.D_NOT_DIV_C, None
    if d**n % c:
        return Violation.C_NOT_DIV_DN, None
    if c % e:
        return Violation.E_NOT_DIV_C, None
    if (d ** (n - 1) * e) % c:
        return Violation.C_NOT_DIV_DN1E, None
    if n == 1:
        return None, None
    for diag in prime_diagnostics(q):
        if not diag.ok:
            return Violation.PER_PRIME, diag.p
    return None, None


def is_realizable(q) -> TupleCertificate:
    """Classify a tuple; realizable answers carry a verified witness.

    >>> is_realizable((4, 2, 1, 2)).reason
    'c∤d^{n−1}e'
    """
    q = _as_query(q)
    bad, p = _violation(q)
    diags = prime_diagnostics(q)
    if bad is not None:
        return TupleCertificate(q, False, violated_condition=bad, offending_prime=p, diagnostics=diags)
    witness, qprime = _build_witness(q)
    return TupleCertificate(q, True, witness=witness, eisenstein_prime=qprime, diagnostics=diags)


def eisenstein_prime_for(c: int) -> int:
    """Smallest prime not dividing c."""
    q = 2
    while c % q == 0:
        q += 1
        while not is_prime(q):
            q += 1
    return q


def _build_witness(q: TupleQuery) -> tuple[MinimalPolynomial, int | None]:
    c, d, e, n = q.as_tuple()
    if n == 1:
        # c x - 1 has a_1 = c = d = e
        return MinimalPolynomial(IntPolynomial((-1, c))), None
    qp = eisenstein_prime_for(c)
    coeffs = [qp] * n + [c]
    for p, vc in factorize(c):
        vd, ve = vp_int(d, p), vp_int(e, p)
        for i in range(1, n):
            coeffs[i] *= p ** max(vc - (n - i) * vd, ve)
    poly = MinimalPolynomial(IntPolynomial(tuple(coeffs)))
    if invariants(poly).as_tuple() != q.as_tuple() or not is_eisenstein(coeffs, qp):
        raise AssertionError(f"witness {poly} failed to reproduce {q.as_tuple()}")
    return poly, qp


def construct_witness(q) -> MinimalPolynomial:
    """Minimal-magnitude Eisenstein polynomial with invariants exactly ``q``.

    >>> str(construct_witness((4, 2, 2, 2)))
    '4*x^2+6*x+3'
    """
    cert = is_realizable(q)
    if not cert.realizable:
        raise NotRealizableError(cert)
    return cert.witness


def is_eisenstein(coeffs, q: int) -> bool:
    n = len(coeffs) - 1
    return (
        all(coeffs[i] % q == 0 for i in range(n))
        and coeffs[0] % (q * q) != 0
        and coeffs[n] % q != 0
    )


def _quadratic_irreducible(a0: int, a1: int, a2: int) -> bool:
    disc = a1 * a1 - 4 * a0 * a2
    return disc < 0 or math.isqrt(disc) ** 2 != disc


def bruteforce_realized_tuples(n: int, height: int) -> set[tuple[int, int, int, int]]:
    """Invariant tuples of every irreducible primitive degree-n polynomial of the given height."""
    if n not in (2, 3):
        raise ValueError("brute force supports n in {2, 3}")
    found: set[tuple[int, int, int, int]] = set()
    rng = range(-height, height + 1)
    for an in range(1, height + 1):
        for lower in product(rng, repeat=n):
            if lower[0] == 0:
                continue
            coeffs = list(lower) + [an]
            if content(coeffs) != 1:
                continue
            if n == 2:
                if not _quadratic_irreducible(*coeffs):
                    continue
            elif not is_irreducible_over_Q(coeffs)[0]:
                continue
            found.add(invariants(coeffs).as_tuple())
    return found


def atlas(n_range: Iterable[int], max_c: int, max_d: int | None = None,
          max_e: int | None = None) -> Iterator[TupleCertificate]:
    """All tuples with c <= max_c (and d, e bounded likewise), ordered by (n, c, d, e)."""
    max_d = max_c if max_d is None else max_d
    max_e = max_c if max_e is None else max_e
    for n in sorted(n_range):
        for c in range(1, max_c + 1):
            for d in range(1, max_d + 1):
                for e in range(1, max_e + 1):
                    yield is_realizable(TupleQuery(c, d, e, n))
