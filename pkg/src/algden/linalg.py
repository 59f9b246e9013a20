"""Exact linear algebra over the integers and the rationals.

Matrices are plain lists of rows.  Integer routines never leave Z; rational
routines use :class:`fractions.Fraction`.  Hermite and Smith normal forms use
the row convention: a lattice is the Z-span of the rows.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

IntMatrix = list[list[int]]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def common_denominator(values) -> int:
    d = 1
    for v in values:
        den = v.denominator if isinstance(v, Fraction) else 1
        d = d * den // math.gcd(d, den)
    return d


def hnf(rows: Sequence[Sequence[int]], pivot_cols: int | None = None) -> IntMatrix:
    """Row Hermite normal form.

    Returns the nonzero rows of the echelon basis of the row lattice; pivots are
    positive and entries above a pivot lie in ``[0, pivot)``.  With
    ``pivot_cols`` set, only the leading ``pivot_cols`` columns are eliminated
    and any trailing columns ride along (a transformation record); rows whose
    leading part vanishes are kept at the end in that case.
    """
    work = [list(r) for r in rows]
    if not work:
        return []
    ncols = len(work[0])
    lead = ncols if pivot_cols is None else pivot_cols
    basis: IntMatrix = []
    r = 0
    for j in range(lead):
        # bring the gcd of column j (rows r..) into row r
        cand = [i for i in range(r, len(work)) if work[i][j] != 0]
        if not cand:
            continue
        # pick smallest |entry| as running pivot
        piv = min(cand, key=lambda i: abs(work[i][j]))
        work[r], work[piv] = work[piv], work[r]
        pr = work[r]
        for i in range(r + 1, len(work)):
            row = work[i]
            b = row[j]
            if b == 0:
                continue
            a = pr[j]
            if b % a == 0:
                q = b // a
                for k in range(j, ncols):
                    row[k] -= q * pr[k]
                continue
            g, x, y = xgcd(a, b)
            ag, bg = a // g, b // g
            new_p = [x * pr[k] + y * row[k] for k in range(ncols)]
            new_r = [-bg * pr[k] + ag * row[k] for k in range(ncols)]
            pr = new_p
            work[r] = pr
            work[i] = new_r
        if pr[j] < 0:
            pr = [-v for v in pr]
            work[r] = pr
        # reduce rows above
        pj = pr[j]
        for i in range(r):
            q = work[i][j] // pj
            if q:
                row = work[i]
                for k in range(j, ncols):
                    row[k] -= q * pr[k]
        r += 1
        if r == len(work):
            break
    basis = work[:r]
    if pivot_cols is not None:
        rest = [row for row in work[r:] if any(row)]
        return basis + rest
    return basis


def hnf_rank_rows(rows: Sequence[Sequence[int]]) -> IntMatrix:
    return hnf(rows)


def in_row_lattice(basis: IntMatrix, vec: Sequence[int]) -> list[int] | None:
    """Coefficients expressing ``vec`` in an HNF basis, or None if not in the lattice."""
    v = list(vec)
    coeffs = []
    for row in basis:
        j = next(k for k, x in enumerate(row) if x != 0)
        for k in range(j):
            if v[k] != 0:
                return None
        q, rem = divmod(v[j], row[j])
        if rem:
            return None
        coeffs.append(q)
        if q:
            for k in range(j, len(v)):
                v[k] -= q * row[k]
    if any(v):
        return None
    return coeffs


def solve_integer(rows: Sequence[Sequence[int]], target: Sequence[int]) -> list[int] | None:
    """Integer c with c * A = target, or None when target is outside the row lattice."""
    m = len(rows)
    if m == 0:
        return None if any(target) else []
    n = len(rows[0])
    aug = [list(rows[i]) + [1 if k == i else 0 for k in range(m)] for i in range(m)]
    red = [row for row in hnf(aug, pivot_cols=n) if any(row[:n])]
    coeffs = in_row_lattice([row[:n] for row in red], target)
    if coeffs is None:
        return None
    out = [0] * m
    for q, row in zip(coeffs, red):
        for k in range(m):
            out[k] += q * row[n + k]
    return out


def integer_left_kernel(rows: Sequence[Sequence[int]]) -> IntMatrix:
    """Saturated Z-basis of {z : z * A = 0} for the integer matrix A given by rows."""
    m = len(rows)
    if m == 0:
        return []
    n = len(rows[0])
    aug = [list(rows[i]) + [1 if k == i else 0 for k in range(m)] for i in range(m)]
    red = hnf(aug, pivot_cols=n)
    kern = [row[n:] for row in red if not any(row[:n])]
    return hnf(kern) if kern else []


def int_det(mat: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (Bareiss, fraction free)."""
    a = [list(r) for r in mat]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if sw is None:
                return 0
            a[k], a[sw] = a[sw], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_form(mat: Sequence[Sequence[int]]) -> tuple[list[int], IntMatrix, IntMatrix]:
    """Smith normal form with transforms.

    Returns ``(diag, U, V)`` with ``U * A * V`` diagonal, diagonal entries
    nonnegative and each dividing the next (zeros last).  ``U`` and ``V`` are
    unimodular.  ``diag`` has length ``min(rows, cols)``.  Alternating row and
    column Hermite reductions keep intermediate entries small.
    """
    a = [list(r) for r in mat]
    m = len(a)
    n = len(a[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    if m == 0 or n == 0:
        return [], U, V

    def transpose(M, rows, cols):
        return [[M[i][j] for i in range(rows)] for j in range(cols)]

    while True:
        H = hnf([a[i] + U[i] for i in range(m)], pivot_cols=n)
        a = [r[:n] for r in H]
        U = [r[n:] for r in H]
        at = transpose(a, m, n)
        Vt = transpose(V, n, n)
        H = hnf([at[j] + Vt[j] for j in range(n)], pivot_cols=m)
        a = transpose([r[:m] for r in H], n, m)
        V = transpose([r[m:] for r in H], n, n)
        if any(a[i][j] for i in range(m) for j in range(n) if i != j):
            continue
        k = min(m, n)
        bad = next(
            ((i, j) for i in range(k) for j in range(i + 1, k)
             if (a[j][j] % a[i][i] if a[i][i] else a[j][j])),
            None,
        )
        if bad is None:
            break
        i, j = bad
        # column i += column j, then the row phase mixes the two pivots
        for M in (a, V):
            for row in M:
                row[i] += row[j]
    return [a[i][i] for i in range(min(m, n))], U, V


def int_matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    cols = list(zip(*B))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in A]


def unimodular_inverse(U: Sequence[Sequence[int]]) -> IntMatrix:
    inv = rational_inverse(U)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


# ---------------------------------------------------------------- over Q


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return [], []
    width = len(a[0])
    lead = width if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for j in range(lead):
        piv = next((i for i in range(r, len(a)) if a[i][j] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pv = a[r][j]
        if pv != 1:
            a[r] = [x / pv for x in a[r]]
        pr = a[r]
        for i in range(len(a)):
            if i != r and a[i][j] != 0:
                f = a[i][j]
                a[i] = [x - f * y for x, y in zip(a[i], pr)]
        pivots.append(j)
        r += 1
        if r == len(a):
            break
    return a[:r] if ncols is None else a, pivots


def rank_q(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def solve_left(rows: Sequence[Sequence], target: Sequence) -> list[Fraction] | None:
    """Find x with sum_i x_i * rows[i] == target over Q, or None."""
    m = len(rows)
    if m == 0:
        return None if any(target) else []
    n = len(target)
    # columns of the system: unknowns are x_i; equations indexed by coordinate
    aug = [[Fraction(rows[i][k]) for i in range(m)] + [Fraction(target[k])] for k in range(n)]
    red, piv = rref(aug, ncols=m)
    for row in red:
        if all(x == 0 for x in row[:m]) and row[m] != 0:
            return None
    x = [Fraction(0)] * m
    for i, j in enumerate(piv):
        x[j] = red[i][m]
    return x


def rational_left_kernel(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of {x : x * A = 0} over Q."""
    m = len(rows)
    if m == 0:
        return []
    n = len(rows[0])
    cols = [[Fraction(rows[i][k]) for i in range(m)] for k in range(n)]
    return right_kernel(cols, m)


def right_kernel(rows: Sequence[Sequence], width: int | None = None) -> list[list[Fraction]]:
    """Basis of {x : A x = 0} over Q."""
    if width is None:
        width = len(rows[0])
    if not rows:
        return [[Fraction(int(i == j)) for j in range(width)] for i in range(width)]
    red, piv = rref(rows)
    free = [j for j in range(width) if j not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * width
        v[f] = Fraction(1)
        for i, j in enumerate(piv):
            v[j] = -red[i][f]
        basis.append(v)
    return basis


def rational_inverse(mat: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(mat)
    aug = [[Fraction(x) for x in mat[i]] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    red, piv = rref(aug, ncols=n)
    if len(piv) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red[:n]]


def charpoly(mat: Sequence[Sequence]) -> list[Fraction]:
    """Characteristic polynomial det(xI - A), ascending coefficients, via Hessenberg reduction."""
    n = len(mat)
    h = [[Fraction(x) for x in row] for row in mat]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if h[i][m - 1] != 0), None)
        if piv is None:
            continue
        if piv != m:
            h[m], h[piv] = h[piv], h[m]
            for row in h:
                row[m], row[piv] = row[piv], row[m]
        for i in range(m + 1, n):
            if h[i][m - 1] != 0:
                f = h[i][m - 1] / h[m][m - 1]
                h[i] = [a - f * b for a, b in zip(h[i], h[m])]
                for row in h:
                    row[m] += f * row[i]
    # recurrence on leading principal submatrices of the Hessenberg form
    polys: list[list[Fraction]] = [[Fraction(1)]]
    for k in range(1, n + 1):
        # p_k = (x - h[k-1][k-1]) p_{k-1} - sum ...
        prev = polys[k - 1]
        pk = [Fraction(0)] + prev  # x * p_{k-1}
        a = h[k - 1][k - 1]
        for i, c in enumerate(prev):
            pk[i] -= a * c
        t = Fraction(1)
        for i in range(1, k):
            t *= h[k - i][k - i - 1]
            coef = t * h[k - i - 1][k - 1]
            if coef != 0:
                for idx, c in enumerate(polys[k - i - 1]):
                    pk[idx] -= coef * c
        polys.append(pk)
    return polys[n]


# ---------------------------------------------------------------- over F_p


def rref_mod(rows: Sequence[Sequence[int]], p: int, ncols: int | None = None) -> tuple[IntMatrix, list[int]]:
    a = [[x % p for x in r] for r in rows]
    if not a:
        return [], []
    width = len(a[0])
    lead = width if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for j in range(lead):
        piv = next((i for i in range(r, len(a)) if a[i][j]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][j], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        pr = a[r]
        for i in range(len(a)):
            if i != r and a[i][j]:
                f = a[i][j]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], pr)]
        pivots.append(j)
        r += 1
        if r == len(a):
            break
    return a[:r] if ncols is None else a, pivots


def right_kernel_mod(rows: Sequence[Sequence[int]], p: int, width: int) -> IntMatrix:
    """Basis of {x in F_p^width : A x = 0}."""
    if not rows:
        return [[int(i == j) for j in range(width)] for i in range(width)]
    red, piv = rref_mod(rows, p)
    free = [j for j in range(width) if j not in piv]
    basis = []
    for f in free:
        v = [0] * width
        v[f] = 1
        for i, j in enumerate(piv):
            v[j] = -red[i][f] % p
        basis.append(v)
    return basis


def left_kernel_mod(rows: Sequence[Sequence[int]], p: int) -> IntMatrix:
    """Basis of {x : x * A = 0 mod p}."""
    m = len(rows)
    if m == 0:
        return []
    n = len(rows[0])
    cols = [[rows[i][k] % p for i in range(m)] for k in range(n)]
    return right_kernel_mod(cols, p, m)


def span_basis_mod(rows: Sequence[Sequence[int]], p: int) -> IntMatrix:
    red, _ = rref_mod(rows, p)
    return [r for r in red if any(r)]


def solve_left_mod(rows: Sequence[Sequence[int]], target: Sequence[int], p: int) -> list[int] | None:
    m = len(rows)
    n = len(target)
    aug = [[rows[i][k] % p for i in range(m)] + [target[k] % p] for k in range(n)]
    red, piv = rref_mod(aug, p, ncols=m)
    for row in red:
        if not any(row[:m]) and row[m]:
            return None
    x = [0] * m
    for i, j in enumerate(piv):
        x[j] = red[i][m]
    return x
