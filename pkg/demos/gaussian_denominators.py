"""Walk through denominators of two Gaussian rationals.

Run with ``python demos/gaussian_denominators.py``.
"""

from fractions import Fraction

from algden import GammaContext, cached_field, compute_xy, generating_set, membership
from algden.denominators import cross_field_check

M = cached_field((1, 0, 1))
i = M.gen


def show(label, primes):
    print(f"  {label}: {[str(P) for P in primes] or 'none'}")


print("γ = 1/(2+i)")
ctx = GammaContext(M, 1 / (2 + i))
print(f"  minimal polynomial {ctx.minpoly}, (c, d, e, n) = {ctx.invariants.as_tuple()}")
for K, name in ((None, "Q"), (i, "Q(i)")):
    r = compute_xy(ctx, K)
    show(f"X({name})", r.X)
    show(f"Y({name})", r.Y)
# 5 has a pole in Y(Q) but not in X(Q): only one of the two primes above 5 is inverted
print(f"  1/5 in Z[γ]: {membership(ctx, None, Fraction(1, 5))}")
print(f"  1/5 in Z[i][γ]: {membership(ctx, i, M.rational(Fraction(1, 5)))}")
rep = cross_field_check(ctx, None, i)
show("primes of Q(i) over X(Q)", rep.X_lift)
show("X(Q(i))", rep.X_L)

print()
print("γ = 1/(60+15i)")
ctx = GammaContext(M, 1 / (60 + 15 * i))
gs = generating_set(ctx)
for g in gs.per_field:
    print(f"  {g.K.label()}: new primes {[str(P) for P in g.primes]}, h = {g.h}, generator {g.alpha_ambient}")
print(f"  generating set S = {[str(a) for a in gs.S]}")
