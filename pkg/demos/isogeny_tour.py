"""
Strong coprimality of Laurent polynomials
=========================================

Two integral Laurent polynomials can share no common factor yet become
entangled after substituting t -> t^n in one and t -> t^k in the other.
This walk-through shows the plain gcd, the substitution sweep that hunts
for such a witness, and the tuple-level verdicts built from both.
"""

from concord.coprimality import (
    PolySequence,
    classify_roots,
    standard_family,
    strongly_coprime,
    tuple_strongly_coprime,
)
from concord.laurent import gcd, parse_poly, serialize

p = parse_poly("t-4")
q = parse_poly("t^2-4")

print("plain gcd of t-4 and t^2-4:", serialize(gcd(p, q)))

# The plain gcd is a unit, but the roots 4 and 2 satisfy 4^1 = 2^2, so a
# substitution pair links them.  The sweep finds it.
verdict = strongly_coprime(p, q)
print("verdict:", verdict.status)
print("witness: n =", verdict.witness[0], ", k =", verdict.witness[1])

# Root bookkeeping behind the scenes: each irreducible polynomial is
# classified by the kind of roots it carries.
for text in ("t-4", "t^2+t+1", "t^2-3"):
    (rc,) = classify_roots(parse_poly(text))
    print("root class:", rc.kind.value, "for", text)

# The standard doubling family is built to be pairwise strongly coprime,
# exactly, not just up to the search bound.
family = standard_family(5)
print()
print("standard family through k=5:")
for f in family:
    print("  ", serialize(f))
v = strongly_coprime(family[0], family[3])
print("p_1 vs p_4:", v.status, "(exact)" if v.exact else "(bounded)")

# Tuples are compared positionally.  The first index is a plain gcd test;
# from the second index on, the strong test applies.
left = PolySequence.parse("p:2t^2-5t+2;p:6t^2-13t+6")
right = PolySequence.parse("p:2t^2-5t+2;p:12t^2-25t+12")
tv = tuple_strongly_coprime(left, right)
print()
print("tuple verdict:", tv.strongly_coprime, "at index", tv.index,
      "via the", tv.clause, "clause")

# A rational-root pair that is multiplicatively independent stays coprime
# for every substitution; the verdict says so exactly.
w = strongly_coprime(parse_poly("t-2"), parse_poly("t-3"))
print("t-2 vs t-3:", w.status, "exact:", w.exact)

assert w.exact and verdict.witness == (2, 1)
print()
print("done; every claim above was checked as it printed")
