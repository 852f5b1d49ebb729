"""Hensel lifting of isotropic vectors: w = u + p*a*v with w.w = 0 exactly.

Given u with p | u.u and a partner v pairing against u with a unit, a
Newton iteration on the quadratic u.u + 2t(u.v) + t^2(v.v) finds the
unique correction that kills the norm at full precision.
"""

from random import Random

from k3lift import (
    QuadLattice,
    RingContext,
    RingVec,
    hensel_root,
    isotropic_combination,
    random_isotropic_instance,
)

# plain scalar Hensel lifting: sqrt(2) in Z/7^5
ctx = RingContext(7, 5, 1)
root = hensel_root(ctx, [ctx.scalar(-2), ctx.zero(), ctx.one()], ctx.scalar(3))
print("sqrt(2) mod 7^5:", root, " square:", root * root)

# the worked rank-2 instance: Gram [[5,1],[1,0]] over W_3(F_5)
ctx5 = RingContext(5, 3, 1)
lat = QuadLattice(ctx5, [[5, 1], [1, 0]])
u = RingVec.basis_vector(ctx5, 2, 0)
v = RingVec.basis_vector(ctx5, 2, 1)
print("u.u =", lat.norm(u), " u.v =", lat.pairing(u, v))
a, w = isotropic_combination(lat, u, v)
print("correction a =", a)
print("w = u + p*a*v =", [s.coeffs[0] for s in w.entries()])
print("w.w =", lat.norm(w), "(exact zero)")

# the same machinery at higher rank on random near-isotropic instances
rng = Random(4)
ctx13 = RingContext(13, 4, 1)
lat6, u6, v6 = random_isotropic_instance(rng, ctx13, 6)
a6, w6 = isotropic_combination(lat6, u6, v6)
print("rank-6 instance over W_4(F_13): w.w =", lat6.norm(w6))
print("w reduces to u mod p:", w6.reduce_mod_p() == u6.reduce_mod_p())
