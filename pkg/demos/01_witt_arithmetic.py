"""Truncated Witt-vector arithmetic: scalars, Teichmuller lifts, Frobenius.

W(F_{p^m})/p^n is modeled as Z/p^n[x]/(modulus) with exact integer
coefficients.  Every operation either returns an exact result or raises,
so a printed value is a proof-grade fact about the ring.
"""

from k3lift import RingContext

# Z/125: the length-3 Witt ring of the prime field F_5
ctx = RingContext(5, 3, 1)
x = ctx.scalar(2)
print("ring:", ctx)
print("2 inverse:", x.inverse(), "check:", x * x.inverse())
print("valuation of 50:", ctx.scalar(50).valuation())
print("centered representative of 124:", ctx.scalar(124).centered())

# Teichmuller lift: the unique root of unity reducing to a given residue
t = ctx.teichmuller(2)
print("teichmuller(2):", t, " t^4 =", t * t * t * t)

# divided powers p^k / k! exist in truncated rings and vanish for large k
for k in range(4):
    print(f"divided power factor p^{k}/{k}! =", ctx.divided_power_factor(k))

# the quadratic extension W_2(F_49), defined by a modulus for F_49 over F_7
ext = RingContext(7, 2, 2, modulus=[1, 0, 1])
y = ext.scalar([3, 1])
print("extension ring:", ext)
print("y =", y, " y * frobenius(y) =", y * y.frobenius())

# roots of unity come back in power order: [1, z, z^2, ...]
roots = ext.nth_roots_of_unity(8)
print("8th roots of unity:", [r.coeffs for r in roots])
print("z^4 is -1:", roots[4] == -ext.one())
