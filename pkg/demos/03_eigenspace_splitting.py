"""Tame-isometry eigenspace splitting via exact idempotent projectors.

For an isometry of order N prime to p, averaging powers against each Nth
root of unity produces projectors e_zeta with e_zeta^2 = e_zeta,
sum e_zeta = id, and A e_zeta = zeta e_zeta, all verified exactly.
"""

from random import Random

from k3lift import RingContext, eigen_split, random_tame_isometry

ctx = RingContext(7, 3, 1)
rng = Random(2026)

iso = random_tame_isometry(rng, ctx, rank=6, order=3)
print("isometry verifies:", iso.verify(), " order:", iso.order())
print("characteristic polynomial:", [s.centered() for s in iso.char_poly()])

split = eigen_split(iso, 3)
print("eigenvalues:", [r.centered() for r in split.roots])
print("component ranks:", split.ranks())

identities = split.verify_identities()
for name, ok in identities.items():
    print(f"  {name}: {ok}")
print("pairing orthogonality of distinct non-dual eigenspaces:",
      split.pairing_orthogonality())

# the splitting commutes with reduction to the residue field
reduced = eigen_split(iso.reduce_mod_p(), 3)
match = all(
    split.components[i].projector.reduce_mod_p() == reduced.components[i].projector
    for i in range(3)
)
print("reduction compatibility:", match)

# each eigenvector can be lifted from the residue field back to W_n
from k3lift import lift_eigenvector

comp = next(c for c in split.components if c.rank > 0)
vbar = comp.basis[0].reduce_mod_p()
v = lift_eigenvector(split, comp.index, vbar)
print("lifted eigenvector check:",
      (iso.matrix @ v) == v.scale(comp.zeta))
