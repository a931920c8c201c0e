"""
Alexander modules and localization
==================================

A knot's Alexander module is a torsion module over the Laurent ring.
Localizing it at a multiplicative set built from a target polynomial kills
some torsion and keeps the rest; which factors die is what the obstruction
layer ultimately feeds on.
"""

from concord.laurent import parse_poly, serialize
from concord.coprimality import PolySequence
from concord.modules import (
    blanchfield_pairing,
    isotropic_submodule,
    localize,
    module_from_knot,
    proper_submodules,
    reciprocal_half,
)
from concord.seifert import SeifertMatrix

P = parse_poly

# A genus-one matrix with Alexander polynomial (t-2)(2t-1).
v = SeifertMatrix.from_rows([[0, 2], [1, 0]])
mod = module_from_knot(v)
print("module order:", serialize(mod.order))
print("cyclic:", mod.is_cyclic)

# Orders like this split as delta times its reciprocal.
half = reciprocal_half(mod.order)
print("reciprocal half:", serialize(half))

# The proper submodules of a cyclic module of that order, by the divisor
# lattice of its generator's annihilator.
print()
print("proper submodules:")
for sub in proper_submodules(mod.order):
    print(f"  {sub.label}: generated by {serialize(sub.generator_multiple)}")

# Isotropy under the Blanchfield pairing: the submodule generated by t-2
# pairs to zero with itself, the whole module does not.
print()
print("t-2 submodule isotropic:", isotropic_submodule(v, P("t-2")))
print("unit submodule isotropic:", isotropic_submodule(v, P("1")))

pairing = blanchfield_pairing(v, [P("1"), P("0")], [P("1"), P("0")])
print("pairing of the generator with itself:", pairing)

# Localization at a target polynomial.  Factors of the order coprime to the
# target are killed (they act invertibly after localizing); the rest
# survive.  A strongly-coprime check is available for the refined filtration.
target = PolySequence.parse("p:2t^2-5t+2").entries[0]
result = localize(P("(t-2)(3t-2)"), target)
print()
print("localize (t-2)(3t-2) at target 2t^2-5t+2:")
print("  classification:", result.classification.value)
print("  killed:", [serialize(f) for f, _ in result.killed])
print("  survivor:", serialize(result.survivor))

strong = localize(P("(t-2)(3t-2)"), target, mode="strong")
print("  same factors under the strong mode:",
      result.classification is strong.classification)
