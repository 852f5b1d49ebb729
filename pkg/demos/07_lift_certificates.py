"""Liftability certificates: the three proof branches plus arithmetic gates.

Each branch takes lattice data with an isometry and a Hodge line and
produces a self-contained certificate (generator, eigenvalue, transcript)
that verify_certificate re-checks from scratch.
"""

import json

from k3lift import (
    QuadLattice,
    RingContext,
    RingMat,
    RingVec,
    SlopeDecomposition,
    SupersingularInput,
    canonical_dumps,
    euler_phi,
    lift_finite_height,
    lift_ss_nonsymplectic,
    lift_ss_symplectic,
    phi_bound_scan,
    phi_rank_check,
    surface_thresholds,
    unique_order_check,
    verify_certificate,
)
from k3lift.lifting import LiftingCertificate

# branch 1: finite height, eigenline inside the top slope piece
ctx = RingContext(5, 3, 1)
lat = QuadLattice(ctx, [[0, 1], [1, 0]])
sd = SlopeDecomposition(lat, low=[[1, 0]], middle=[], high=[[0, 1]])
hodge = RingVec.basis_vector(ctx.residue_context(), 2, 1)
cert1 = lift_finite_height(sd, RingMat.identity(ctx, 2), 1, hodge)
print("finite-height branch:", cert1.branch, "eigenvalue", cert1.eigenvalue)

# branch 2: supersingular nonsymplectic, zeta_0 = -1 needs a correction
lat2 = QuadLattice(ctx, [[5, 1], [1, 0]])
minus = RingMat.identity(ctx, 2).scale(ctx.scalar(-1))
cert2 = lift_ss_nonsymplectic(SupersingularInput(lat2, minus, [1, 0]), 2)
print("nonsymplectic branch: generator",
      [s.coeffs[0] for s in cert2.generator.entries()],
      "eigenvalue", cert2.eigenvalue.centered())

# branch 3: supersingular symplectic, orthogonalizing against the ample class
ctx3 = RingContext(3, 3, 1)
gram = [[3, 1, 0, 0], [1, 0, 0, 0], [0, 0, 3, 1], [0, 0, 1, 0]]
inp = SupersingularInput(
    QuadLattice(ctx3, gram),
    RingMat.identity(ctx3, 4),
    [1, 0, 0, 0],
    ample=[0, 0, 1, 0],
)
cert3 = lift_ss_symplectic(inp, 1)
print("symplectic branch: generator",
      [s.coeffs[0] for s in cert3.generator.entries()])
print("transcript steps:", [t["label"] for t in cert3.transcript])

for cert in (cert1, cert2, cert3):
    report = verify_certificate(cert)
    print(f"verify {cert.branch}: valid={report.valid}, {len(report.checks)} checks")

# certificates are plain JSON and survive a round trip
data = canonical_dumps(cert2.to_json())
again = LiftingCertificate.from_json(json.loads(data))
print("JSON round trip verifies:", verify_certificate(again).valid)

# arithmetic gates from the uniqueness theory
print("phi(66) =", euler_phi(66))
print("rank check for order 66 on a 20-dimensional piece:",
      phi_rank_check(20, 66))
print("thresholds at p=13:", surface_thresholds(13))
print("order-66 uniqueness at p=13:", unique_order_check(66, 13)["uniqueness_applies"])
rows = phi_bound_scan(200)
small = [r["p"] for r in rows if not r["exceeds_21"]]
print("primes p <= 200 with phi(p+1) <= 21:", small)
