"""
Vanishing, survival, and independence certificates
==================================================

The two one-sided tests at the heart of the package: an expression's
obstruction VANISHES at a localization target when every order sequence is
strongly coprime to it, and SURVIVES when the composition is robust, the
orders line up, and the base signature integral resists a rational relation
search.  Neither test can contradict the other on the same input.
"""

from concord.coprimality import PolySequence
from concord.laurent import parse_poly
from concord.obstruction import (
    family_certificate,
    fractal_tree,
    injectivity_report,
    rho0_relation_falsifier,
    survival_verdict,
    vanishing_verdict,
)
from concord.operators import (
    base_knot,
    compose,
    make_operator,
    ribbon_pattern,
    standard_operator,
    stub_certificate,
)
from fractions import Fraction


def stub_op(k):
    pattern = ribbon_pattern(k)
    alpha = parse_poly(f"({k}t-{k + 1})({k + 1}t-{k})")
    return make_operator(f"stub-{k}", pattern, alpha, stub_certificate(pattern, k))


s1, s2 = stub_op(1), stub_op(2)
granny = base_knot("granny")
expr = compose([s1, s2], granny)

# A target that misses both order entries: every sequence is strongly
# coprime, so the obstruction dies in the localized filtration quotient.
off_target = PolySequence.parse("p:3t^2-7t+3;p:12t^2-25t+12")
v = vanishing_verdict(expr, off_target)
print("off-target verdict:", v.status.value, "(exact)" if v.exact else "")

# The matching target: vanishing cannot be concluded, and the survival
# test takes over with its robustness and independence obligations.
on_target = PolySequence.parse("p:2t^2-5t+2;p:6t^2-13t+6")
print("on-target vanishing:", vanishing_verdict(expr, on_target).status.value)

s = survival_verdict(expr, on_target,
                     rho0_hypothesis="stub logs of distinct primes")
print("on-target survival:", s.status.value)
print("hypotheses checked:")
for entry in s.trail:
    mark = "ok " if entry.outcome else "FAIL"
    print(f"  [{mark}] {entry.hypothesis}")

# The falsifier on its own.  Two rational values are always dependent; the
# reported coefficients witness it exactly.
report = rho0_relation_falsifier([Fraction(-4, 3), Fraction(-8, 3)])
print()
print("falsifier on -4/3 and -8/3:", report.coefficients)

# Swap in a rational certificate and the falsifier refutes the survival
# claim instead: granny's rho0 is -8/3 and the certified values are -4/3.
rational = compose([standard_operator(1), standard_operator(2)], granny)
r = survival_verdict(rational, on_target, rho0_hypothesis="claimed anyway")
print("rational-certificate survival:", r.status.value)

# Families: distinct targets plus per-family falsifier runs give an
# independence certificate over the certified subgroup.
fams = [
    (PolySequence.parse("p:2t^2-5t+2"), [s1], [granny]),
    (PolySequence.parse("p:6t^2-13t+6"), [s2], [granny]),
]
cert = family_certificate(fams, fos_spans="stub logs of distinct primes")
print()
print("family conclusion:", cert.conclusion)

# Injectivity of the induced maps on the certified subgroup.
print("injectivity:", injectivity_report(s1, s2).status)

# Iterated compositions branch into a tree of targets; pairwise strong
# coprimality separates the leaves.
tree = fractal_tree(2, [s1, s2])
print()
print(f"depth-2 tree: {len(tree.paths)} paths, "
      f"{len(tree.pairwise)} pairwise comparisons")
coprime = sum(1 for _, _, tv in tree.pairwise if tv.strongly_coprime)
print("pairwise strongly coprime:", coprime, "of", len(tree.pairwise))
