"""Period-domain parametrization: lines through the Hodge point <-> (pW)^d.

A standard frame fixes an isotropic flag; every isotropic line reducing
to the Hodge line is completed from its middle coordinates (all in pW) by
a uniquely determined last coordinate in p^2 W.
"""

from random import Random

from k3lift import (
    PeriodFrame,
    QuadLattice,
    RingContext,
    check_conditions,
    complete_period_line,
    from_generator,
    random_period_coordinates,
    random_period_frame,
    standard_lattice,
)

# the worked rank-4 frame over W_3(F_3): coordinates (3, 0) force a_4 = 18
ctx = RingContext(3, 3, 1)
frame = PeriodFrame(
    QuadLattice(ctx, [[0, 0, 0, 1], [0, 2, 0, 0], [0, 0, 2, 0], [1, 0, 0, 0]])
)
line = complete_period_line(frame, [ctx.scalar(3), ctx.scalar(0)])
print("coordinates:", [s.coeffs[0] for s in line.coordinates()])
print("derived last coordinate:", line.last)
print("generator:", [s.coeffs[0] for s in line.generator.entries()])
print("conditions:", check_conditions(line))

# scaling the generator by any unit gives back the identical line
rescaled = from_generator(frame, line.generator.scale(ctx.scalar(2)))
print("unit rescaling preserves the line:", rescaled == line)

# the full moduli count: a frame of K3 rank has 22 - 2 = 20 parameters.
# Reorder a basis of the K3 lattice so the first hyperbolic plane supplies
# the isotropic flag vectors v1 and v_22 in the first and last slots.
k3 = standard_lattice("K3")
order = [0] + list(range(2, 22)) + [1]
gram22 = [[int(k3.gram[i][j]) for j in order] for i in order]
frame22 = PeriodFrame(QuadLattice(RingContext(5, 2, 1), gram22))
print("K3 frame parameter count:", frame22.parameter_count)

# random round trips at rank 6
rng = Random(6)
ctx7 = RingContext(7, 4, 1)
f6 = random_period_frame(rng, ctx7, 6)
coords = random_period_coordinates(rng, f6)
l6 = complete_period_line(f6, coords)
print("round trip recovers coordinates:", list(l6.coordinates()) == coords)
print("generator rebuilds the same line:", from_generator(f6, l6.generator) == l6)
