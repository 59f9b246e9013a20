"""Class groups of maximal orders and principality of ideals.

Relations among the primes of norm at most the Minkowski bound come from pO
and from small elements with smooth norm.  The Smith form of the relation
matrix presents a group G that surjects onto Cl(O_K); the surjection is
proved injective by showing every element of prime order in G is a
non-principal class.  Non-principality is decided exactly for quadratic
fields (norm-form search over a fundamental domain for the units).  In
higher degree only h = 1 can be certified; anything else raises
:class:`ClassGroupError` instead of returning an unverified group.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product
from typing import Sequence

from .arith import factorize, is_square, primes_up_to
from .linalg import hnf, int_det, smith_form, solve_integer, unimodular_inverse
from .nf.field import FieldElement, NumberField
from .nf.ideals import FractionalIdeal
from .nf.primes import PrimeIdeal, factor_prime

FOUR_OVER_PI_UPPER = Fraction(1274, 1000)
DEFAULT_EFFORT = 200_000
_effort_var: ContextVar[int] = ContextVar("algden_effort", default=DEFAULT_EFFORT)


def resolve_effort(effort: int | None) -> int:
    return _effort_var.get() if effort is None else effort


@contextmanager
def effort_limit(effort: int):
    """Set the default search effort for class groups and generators inside a block."""
    token = _effort_var.set(effort)
    try:
        yield
    finally:
        _effort_var.reset(token)


class ClassGroupError(RuntimeError):
    """The computation could not be certified within its effort bound."""


class PrincipalityError(RuntimeError):
    pass


@dataclass
class ClassGroup:
    field: NumberField
    elementary_divisors: list[int]
    generator_ideals: list[FractionalIdeal]
    factor_base: list[PrimeIdeal]
    # row j of ``to_snf`` maps factor-base exponents to SNF coordinates
    to_snf: list[list[int]] = dc_field(repr=False)
    relations: list[tuple[list[int], FieldElement]] = dc_field(repr=False, default_factory=list)
    # row i of ``from_snf`` gives factor-base exponents of the i-th generator
    from_snf: list[list[int]] = dc_field(repr=False, default_factory=list)

    @property
    def h(self) -> int:
        out = 1
        for d in self.elementary_divisors:
            out *= d
        return out

    def is_trivial(self) -> bool:
        return self.h == 1

    def reduce_vector(self, fb_exponents: Sequence[int]) -> list[int]:
        k = len(self.factor_base)
        out = []
        for i, d in enumerate(self.elementary_divisors):
            s = sum(fb_exponents[j] * self.to_snf[j][i] for j in range(k))
            out.append(s % d)
        return out

    def class_vector(self, ideal) -> list[int]:
        return self.reduce_vector(fb_exponents(self, FractionalIdeal.coerce(ideal)))

    def order_of(self, ideal) -> int:
        vec = self.class_vector(ideal)
        out = 1
        for v, d in zip(vec, self.elementary_divisors):
            o = d // math.gcd(v, d)
            out = out * o // math.gcd(out, o)
        return out

    def __str__(self) -> str:
        if not self.elementary_divisors:
            return "trivial"
        return " x ".join(f"Z/{d}" for d in self.elementary_divisors)


@dataclass
class PrincipalityResult:
    principal: bool
    generator: FieldElement | None
    class_vector: list[int]


# ------------------------------------------------------------------ bounds and factor base


def minkowski_bound(K: NumberField) -> int:
    """An integer >= the Minkowski bound, from exact rational upper estimates."""
    n = K.n
    r1, r2 = K.signature
    c = FOUR_OVER_PI_UPPER**r2 * Fraction(math.factorial(n), n**n)
    return math.floor(c * (math.isqrt(abs(K.discriminant)) + 1))


def factor_base(K: NumberField, bound: int | None = None) -> list[PrimeIdeal]:
    bound = minkowski_bound(K) if bound is None else bound
    out = []
    for p in primes_up_to(bound):
        out.extend(P for P in factor_prime(K, p) if P.norm <= bound)
    return out


# ------------------------------------------------------------------ relations


def _o_norm(K: NumberField, v: Sequence[int]) -> int:
    return int_det(K.o_matrix(v))


def _smooth_vector(K: NumberField, fb: list[PrimeIdeal], v: Sequence[int], bound: int) -> list[int] | None:
    """Factor-base valuation vector of the integral element v, if (v) factors over fb."""
    N = abs(_o_norm(K, v))
    if N == 0:
        return None
    m = N
    for p in primes_up_to(bound):
        while m % p == 0:
            m //= p
    if m != 1:
        return None
    vec = [P._val_o(v) for P in fb]
    prod_norm = 1
    for P, e in zip(fb, vec):
        prod_norm *= P.norm**e
    return vec if prod_norm == N else None


def _element_relations(K: NumberField, fb: list[PrimeIdeal], bound: int, box: int):
    """Smooth relations from elements with O-coordinates of sup-norm exactly ``box``."""
    yield from _lattice_relations(K, fb, bound, [[int(i == j) for j in range(K.n)] for i in range(K.n)], box)
    # elements of each factor-base prime make sure every prime shows up in some relation
    for P in fb:
        yield from _lattice_relations(K, fb, bound, [list(r) for r in P.basis], box)


def _lattice_relations(K, fb, bound, basis, box):
    n = K.n
    for c in product(range(-box, box + 1), repeat=n):
        if not any(c) or max(abs(x) for x in c) != box:
            continue
        lead = next(x for x in reversed(c) if x)
        if lead < 0:
            continue
        v = [sum(ci * row[j] for ci, row in zip(c, basis)) for j in range(n)]
        vec = _smooth_vector(K, fb, v, bound)
        if vec is not None and any(vec):
            yield vec, K.from_o(v)


# ------------------------------------------------------------------ quadratic norm-form search


def _quadratic_data(K: NumberField):
    """For Q[x]/(x^2 + b x + c): Δ and the map element -> (X, Y) with element = X + Y√Δ."""
    c, b = K.g[0], K.g[1]
    delta = b * b - 4 * c

    def xy(a: FieldElement) -> tuple[Fraction, Fraction]:
        a0, a1 = a.coords
        return a0 - a1 * Fraction(b, 2), a1 / 2

    return delta, xy


def fundamental_unit(K: NumberField, effort: int | None = None) -> FieldElement:
    """A unit > 1 generating the units of a real quadratic O_K modulo ±1.

    Found as the first convergent p/q of the continued fraction of ω (where
    O_K = Z[ω]) with p - qω a unit.
    """
    delta, xy = _quadratic_data(K)
    if K.n != 2 or delta <= 0:
        raise ValueError("fundamental_unit expects a real quadratic field")
    omega = K.integral_basis[1]
    X, Y = xy(omega)
    # ω = (P0 + sqrt(D)) / Q0 with integers; write X + Y sqrt(delta) over a common denominator
    den = math.lcm(X.denominator, Y.denominator)
    P0 = X * den
    # Y*den*sqrt(delta) = sqrt(Y^2 den^2 delta)
    D = (Y * den) ** 2 * delta
    Q0 = Fraction(den)
    if Y < 0:
        raise AssertionError("expected the second integral basis vector to have positive √Δ part")
    P, Q, D = int(P0), int(Q0), int(D)
    # normalise so that Q | D - P^2
    if (D - P * P) % Q:
        P, Q, D = P * abs(Q), Q * abs(Q), D * Q * Q
    s = math.isqrt(D)
    p_prev, p_cur = 0, 1
    q_prev, q_cur = 1, 0
    for _ in range(resolve_effort(effort)):
        a = (P + s) // Q if Q > 0 else (P + s + 1) // Q
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
        u = K.rational(p_cur) - omega * q_cur
        if abs(u.norm()) == 1 and q_cur > 0:
            eps = u
            if _real_value_sign(K, eps) < 0:
                eps = -eps
            if _abs_gt_one(K, eps):
                return eps
            return eps.inverse()
        P = a * Q - P
        Q = (D - P * P) // Q
    raise ClassGroupError("fundamental unit search exceeded its effort bound")


def _real_value_sign(K: NumberField, a: FieldElement) -> int:
    """Sign of X + Y√Δ (real quadratic) computed exactly."""
    delta, xy = _quadratic_data(K)
    X, Y = xy(a)
    # compare X with -Y√Δ
    if Y == 0:
        return (X > 0) - (X < 0)
    if X >= 0 and Y >= 0:
        return 1 if (X or Y) else 0
    if X <= 0 and Y <= 0:
        return -1
    # opposite signs: compare X^2 with Y^2 Δ
    lhs, rhs = X * X, Y * Y * delta
    if lhs == rhs:
        return 0
    return (1 if X > 0 else -1) if lhs > rhs else (1 if Y > 0 else -1)


def _abs_gt_one(K: NumberField, a: FieldElement) -> bool:
    s = _real_value_sign(K, a)
    b = a if s > 0 else -a
    return _real_value_sign(K, b - 1) > 0


def _ceil_sqrt_fraction(x: Fraction) -> Fraction:
    """A rational >= sqrt(x) for x >= 0."""
    if x <= 0:
        return Fraction(0)
    num, den = x.numerator, x.denominator
    return Fraction(math.isqrt(num * den) + 1, den)


def _floor_sqrt_fraction(x: Fraction) -> Fraction:
    if x <= 0:
        return Fraction(0)
    num, den = x.numerator, x.denominator
    return Fraction(math.isqrt(num * den), den)


def _sqrt_exact(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    a, b = x.numerator, x.denominator
    if is_square(a) and is_square(b):
        return Fraction(math.isqrt(a), math.isqrt(b))
    return None


def quadratic_generator(I: FractionalIdeal, effort: int | None = None) -> FieldElement | None:
    """Exact principality test in a quadratic field: a generator of I, or None if I is not principal."""
    K = I.field
    if K.n != 2:
        raise ValueError("quadratic_generator needs a quadratic field")
    delta, xy = _quadratic_data(K)
    N = abs(I.norm())
    b1, b2 = I.elements()  # lower HNF: b1 is rational
    X1, _ = xy(b1)
    X2, Y2 = xy(b2)
    if delta < 0:
        ybound = _ceil_sqrt_fraction(N / -delta)
    else:
        # a generator can be scaled by a unit so that eps^-1 <= |α/α'| < eps,
        # which bounds |α| and |α'| by sqrt(eps N) and so |Y| by sqrt(eps N)/√Δ
        eps = fundamental_unit(K, effort)
        ex, ey = xy(eps)
        eps_upper = abs(ex) + abs(ey) * (math.isqrt(delta) + 1)
        ybound = _ceil_sqrt_fraction(eps_upper * N) / math.isqrt(delta)
    vmax = math.floor(ybound / abs(Y2))
    if vmax > resolve_effort(effort):
        raise ClassGroupError(f"norm-form search needs {vmax} steps, beyond the effort bound")
    for v in sorted(range(-vmax, vmax + 1), key=lambda t: (abs(t), -t)):
        Y = v * Y2
        for sign in (1, -1):
            X = _sqrt_exact(sign * N + delta * Y * Y)
            if X is None:
                continue
            for Xs in ((X, -X) if X else (X,)):
                u = (Xs - v * X2) / X1
                if u.denominator == 1:
                    alpha = b1 * int(u) + b2 * v
                    if not alpha.is_zero() and FractionalIdeal.principal(alpha) == I:
                        return alpha
    return None


# ------------------------------------------------------------------ generic generator search


def _search_generator(I: FractionalIdeal, box: int = 3) -> FieldElement | None:
    """Small-coefficient search for α ∈ I with |N(α)| = N(I) (positive certificates only)."""
    K = I.field
    N = abs(I.norm())
    elems = I.elements()
    for r in range(1, box + 1):
        for c in product(range(-r, r + 1), repeat=K.n):
            if max(abs(x) for x in c) != r:
                continue
            alpha = K.zero
            for ci, e in zip(c, elems):
                if ci:
                    alpha = alpha + e * ci
            if alpha.is_zero() or abs(alpha.norm()) != N:
                continue
            if FractionalIdeal.principal(alpha) == I:
                return alpha
    return None


def find_generator(I: FractionalIdeal, effort: int | None = None) -> tuple[bool | None, FieldElement | None]:
    """(True, α) if principal with generator α; (False, None) if provably not; (None, None) if unknown."""
    K = I.field
    a = K.rational(I.min_integer())
    if K.n == 1 or FractionalIdeal.principal(a) == I:
        return True, a
    if K.n == 2:
        g = quadratic_generator(I, effort)
        return (g is not None), g
    g = _search_generator(I)
    return (True, g) if g is not None else (None, None)


# ------------------------------------------------------------------ class group


def class_group(K: NumberField, effort: int | None = None) -> ClassGroup:
    """Certified class group.

    >>> str(class_group(NumberField([5, 0, 1])))
    'Z/2'
    """
    cached = getattr(K, "_class_group", None)
    if cached is not None:
        return cached
    bound = minkowski_bound(K)
    fb = factor_base(K, bound)
    k = len(fb)
    if k == 0:
        G = ClassGroup(K, [], [], [], [], [])
        K._class_group = G
        return G
    rels: list[tuple[list[int], FieldElement]] = []
    for p in sorted({P.p for P in fb}):
        above = factor_prime(K, p)
        if all(P in fb for P in above):
            vec = [0] * k
            for P in above:
                vec[fb.index(P)] = P.e
            rels.append((vec, K.rational(p)))
    seen = {tuple(v) for v, _ in rels}
    max_box = {1: 1, 2: 12, 3: 5}.get(K.n, 3)
    box = 1
    stable = 0
    last_det = None
    while True:
        for vec, alpha in _element_relations(K, fb, bound, box):
            if tuple(vec) not in seen:
                seen.add(tuple(vec))
                rels.append((vec, alpha))
        rows = [v for v, _ in rels]
        det = _lattice_det(rows, k)
        if det and det == last_det:
            stable += 1
        else:
            stable = 0
        last_det = det
        box += 1
        if det == 1 or (det and stable >= 1) or box > max_box:
            break
    if not last_det:
        raise ClassGroupError("relation lattice is not of full rank within the search bound")
    G = _certify(K, fb, rels, effort)
    K._class_group = G
    return G


def _lattice_det(rows: list[list[int]], k: int) -> int:
    if not rows:
        return 0
    H = hnf(rows)
    if len(H) < k:
        return 0
    d = 1
    for i in range(k):
        d *= H[i][i]
    return abs(d)


def _build_group(K, fb, rels) -> ClassGroup:
    k = len(fb)
    H = hnf([v for v, _ in rels])
    diag, _, V = smith_form(H)
    diag = [abs(d) for d in diag[:k]]
    keep = [i for i, d in enumerate(diag) if d != 1]
    Vinv = unimodular_inverse(V)
    to_snf = [[V[j][i] for i in keep] for j in range(k)]
    from_snf = [Vinv[i] for i in keep]
    gens = [_fb_ideal(K, fb, row) for row in from_snf]
    return ClassGroup(K, [diag[i] for i in keep], gens, fb, to_snf, rels, from_snf)


def _fb_ideal(K, fb, exps) -> FractionalIdeal:
    I = FractionalIdeal.unit(K)
    for P, e in zip(fb, exps):
        if e:
            I = I * FractionalIdeal.from_prime(P) ** e
    return I


def _prime_order_elements(divs: list[int], q: int):
    """Nonzero q-torsion elements of ⊕ Z/d_i, one per cyclic subgroup."""
    idx = [i for i, d in enumerate(divs) if d % q == 0]
    for coeffs in product(range(q), repeat=len(idx)):
        if not any(coeffs):
            continue
        first = next(c for c in coeffs if c)
        if first != 1:
            continue
        vec = [0] * len(divs)
        for i, c in zip(idx, coeffs):
            vec[i] = c * (divs[i] // q)
        yield vec


def _certify(K, fb, rels, effort) -> ClassGroup:
    for _ in range(64):
        G = _build_group(K, fb, rels)
        if G.h == 1:
            return G
        new_rel = None
        undecided = False
        for q in sorted(factorize(G.h).primes):
            for vec in _prime_order_elements(G.elementary_divisors, q):
                I = _snf_ideal(G, vec)
                status, gen = find_generator(I, effort)
                if status is True:
                    new_rel = (_fb_vector_of_snf(G, vec), gen)
                    break
                if status is None:
                    undecided = True
            if new_rel:
                break
        if new_rel is None:
            if undecided:
                raise ClassGroupError(
                    f"class group of {K} not certified: candidate h={G.h} needs a non-principality proof"
                )
            return G
        rels.append(new_rel)
    raise ClassGroupError("class group certification did not converge")


def _fb_vector_of_snf(G: ClassGroup, snf_vec) -> list[int]:
    """Factor-base exponents of an ideal in the class with SNF coordinates ``snf_vec``."""
    out = [0] * len(G.factor_base)
    for c, row in zip(snf_vec, G.from_snf):
        for j, x in enumerate(row):
            out[j] += c * x
    return out


def _snf_ideal(G: ClassGroup, snf_vec) -> FractionalIdeal:
    return _fb_ideal(G.field, G.factor_base, _fb_vector_of_snf(G, snf_vec))


# ------------------------------------------------------------------ class vectors of arbitrary ideals


def fb_exponents(G: ClassGroup, I: FractionalIdeal) -> list[int]:
    """Factor-base exponents of an ideal equivalent to I."""
    fb = G.factor_base
    vec = [0] * len(fb)
    for P, e in I.factor():
        if P in fb:
            vec[fb.index(P)] += e
        else:
            sub, _ = _reduce_prime(G, P)
            for j, s in enumerate(sub):
                vec[j] += e * s
    return vec


def _reduce_prime(G: ClassGroup, P: PrimeIdeal) -> tuple[list[int], FieldElement]:
    """Factor-base exponents of an ideal in the class of a prime outside the factor base.

    Searches α ∈ P with (α) P^-1 supported on the factor base; then [P] = -[(α)P^-1].
    Returns the exponents together with α.
    """
    K = G.field
    fb = G.factor_base
    elems = FractionalIdeal.from_prime(P).elements()
    for r in range(1, 8):
        for c in product(range(-r, r + 1), repeat=K.n):
            if max(abs(x) for x in c) != r:
                continue
            alpha = K.zero
            for ci, e in zip(c, elems):
                if ci:
                    alpha = alpha + e * ci
            if alpha.is_zero():
                continue
            J = FractionalIdeal.principal(alpha) / FractionalIdeal.from_prime(P)
            fac = J.factor()
            if all(Q in fb for Q, _ in fac):
                vec = [0] * len(fb)
                for Q, e in fac:
                    vec[fb.index(Q)] -= e
                return vec, alpha
    raise ClassGroupError(f"could not express the class of a prime above {P.p} over the factor base")


# ------------------------------------------------------------------ public API


def is_principal(I, effort: int | None = None) -> PrincipalityResult:
    """Decide principality; a principal answer carries a verified generator.

    >>> K = NumberField([1, 0, 1])
    >>> is_principal(FractionalIdeal.principal(K.element([2, 1]))).principal
    True
    """
    I = FractionalIdeal.coerce(I)
    K = I.field
    G = class_group(K, effort)
    vec = G.class_vector(I)
    if any(vec):
        return PrincipalityResult(False, None, vec)
    status, gen = find_generator(I, effort)
    if status is not True:
        gen = _generator_from_relations(G, I)
    if gen is None or FractionalIdeal.principal(gen) != I:
        raise PrincipalityError("class vector is zero but no verified generator was produced")
    return PrincipalityResult(True, normalize_generator(gen), vec)


def _generator_from_relations(G: ClassGroup, I: FractionalIdeal) -> FieldElement | None:
    """Build a generator as a product of relation elements (exact, possibly large)."""
    K = G.field
    fb = G.factor_base
    x = [0] * len(fb)
    # primes outside the factor base: P = (α) * P', with P' smooth
    beta = K.one
    for P, e in I.factor():
        if P in fb:
            x[fb.index(P)] += e
            continue
        sub, alpha = _reduce_prime(G, P)
        beta = beta * alpha**e
        for j, s in enumerate(sub):
            x[j] += e * s
    c = solve_integer([v for v, _ in G.relations], x)
    if c is None:
        return None
    gen = beta
    for ci, (_, alpha) in zip(c, G.relations):
        if ci:
            gen = gen * alpha**ci
    return gen


def normalize_generator(alpha: FieldElement, sweep: int = 3) -> FieldElement:
    """Canonical representative among unit multiples found by a bounded unit sweep.

    Preference: all coordinates nonnegative, then smallest coordinate magnitudes,
    then lexicographic.  Generators are therefore canonical only up to units.
    """
    K = alpha.field
    units = _unit_sweep(K, sweep)
    cands = [alpha * u for u in units]

    def key(a: FieldElement):
        c = a.coords
        return (any(x < 0 for x in c), max(abs(x) for x in c), sum(abs(x) for x in c), tuple(-x for x in c))

    return min(cands, key=key)


def _unit_sweep(K: NumberField, sweep: int) -> list[FieldElement]:
    one = K.one
    if K.n == 1:
        return [one, -one]
    if K.n == 2:
        delta, _ = _quadratic_data(K)
        if delta < 0:
            # torsion units have O-coordinates bounded by 1 in absolute value
            units = []
            for c in product(range(-2, 3), repeat=2):
                u = K.from_o(list(c))
                if not u.is_zero() and u.norm() == 1:
                    units.append(u)
            return units
        eps = fundamental_unit(K)
        out = []
        for k in range(-sweep, sweep + 1):
            e = eps**k
            out.extend([e, -e])
        return out
    return [one, -one]


def power_generator(P, k: int = 1, effort: int | None = None) -> FieldElement:
    """Verified generator of P^k; raises when P^k is not principal."""
    I = FractionalIdeal.coerce(P) ** k
    res = is_principal(I, effort)
    if not res.principal:
        raise PrincipalityError(f"ideal power is not principal; class vector {res.class_vector}")
    return res.generator


def quotient_class_group(G: ClassGroup, X: Sequence) -> list[int]:
    """Elementary divisors (> 1) of Cl(O_K) / <[P] : P in X>."""
    divs = G.elementary_divisors
    if not divs:
        return []
    rows = []
    for i, d in enumerate(divs):
        rows.append([d if j == i else 0 for j in range(len(divs))])
    for P in X:
        rows.append(G.class_vector(P))
    diag, _, _ = smith_form(rows)
    return [abs(d) for d in diag[: len(divs)] if abs(d) != 1]
