"""Signature functions and their integrals, straight from Seifert matrices.

The Levine-Tristram signature is a step function on the upper half of the
unit circle.  Everything here is exact: jump locations come from real root
isolation of the Alexander polynomial on the circle, plateau values from
certified Hermitian signatures, and the integral is a finite sum of
arc-length-weighted plateaus.
"""

from fractions import Fraction

from concord.seifert import (
    SeifertMatrix,
    alexander_poly,
    arf,
    connected_sum,
    mirror,
    rho0,
    signature_at,
    signature_profile,
)
from concord.laurent import serialize

trefoil = SeifertMatrix.from_rows([[-1, 1], [0, -1]])
figure_eight = SeifertMatrix.from_rows([[1, 1], [0, -1]])

print("trefoil Alexander polynomial:", serialize(alexander_poly(trefoil)))

profile = signature_profile(trefoil)
print("jumps of the trefoil signature:")
for jump in profile.jumps:
    print(f"  at angle {jump.angle_over_pi} * pi: "
          f"{jump.sigma_before} -> {jump.sigma_after}")

print("signature at angle pi/2:", signature_at(trefoil, Fraction(1, 2)))

# The integral of the signature function over the circle, normalized so the
# whole circle has measure 1.  For the trefoil the answer is rational.
print("trefoil rho0:", rho0(trefoil))
print("mirror trefoil rho0:", rho0(mirror(trefoil)))

# The figure eight is amphichiral; its signature function vanishes
# identically and so does the integral.
print("figure-eight rho0:", rho0(figure_eight))

# Additivity under connected sum, checked on trefoil # figure-eight.
both = connected_sum(trefoil, figure_eight)
assert rho0(both) == rho0(trefoil) + rho0(figure_eight)
print("rho0 is additive on trefoil # figure-eight:", rho0(both))

# Arf invariants: the trefoil and figure eight both have Arf 1, and the
# granny knot (trefoil # trefoil) drops back to 0 mod 2.
granny = connected_sum(trefoil, trefoil)
print("arf values:", arf(trefoil), arf(figure_eight), arf(granny))
print("granny rho0 (doubled):", rho0(granny))
