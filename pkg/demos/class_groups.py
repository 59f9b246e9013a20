"""How the class group decides whether O_K[γ] ∩ K is a principal ideal ring.

Run with ``python demos/class_groups.py``.
"""

from fractions import Fraction

from algden import GammaContext, cached_field, class_group, ring_description

K = cached_field((5, 0, 1))  # Q(√-5)
G = class_group(K)
print(f"Cl(Q(√-5)) = {G}, generated by {[str(I) for I in G.generator_ideals]}")

# inverting p kills the classes of the primes above p
for p in (2, 3, 7, 29):
    rd = ring_description(GammaContext(K, K.rational(Fraction(1, p))), K.gen)
    print(f"  O_K[1/{p}]: inverted {[str(P) for P in rd.X]}, class group {rd.class_group or 'trivial'}, PID {rd.is_PID}")
