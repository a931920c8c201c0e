"""Decision procedures for the refined solvability filtration.

Two one-sided tests drive everything here.  The vanishing side checks that
every order sequence read off a composition tree is strongly coprime to the
localization target; when that holds, the tree's knot drops into the next
refined filtration level.  The survival side checks the hypotheses that keep
a chain visible at its own target: robust operators, infection curves of
exactly the target orders, and a base knot whose rho0 stays rationally
independent of the first-order signatures in play.  The two can never both
fire on the same input, because matching orders and strongly coprime orders
are mutually exclusive pair by pair.

The rho0 independence hypothesis is not machine-decidable from numerics.
The oracle runs an integer-relation falsifier first, and past that demands
an explicit provenance string; verdicts record which of the two happened, so
every conclusion is auditable down to either a computation or a named
assertion.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from enum import Enum
from fractions import Fraction
from itertools import product
from math import gcd as gcd_int, log10
from typing import Optional, Sequence

import mpmath

from .coprimality import (
    DEFAULT_BOUND,
    PolySequence,
    TupleVerdict,
    tuple_strongly_coprime,
)
from .errors import PreconditionError
from .laurent import LaurentPoly, eq_up_to_unit, serialize
from .laurent import gcd as poly_gcd
from .operators import (
    Apply,
    Base,
    DoublingOperator,
    KnotExpression,
    NonzeroAsserted,
    Robustness,
    base_leaves,
    compose,
    expression_depth,
    is_robust,
    order_sequences,
)
from .seifert import alexander_poly, rho0

_FALSIFIER_CLAIM = "numeric at the stated precision, not a certified relation"


class ObstructionStatus(Enum):
    VANISHES = "vanishes_at_target"
    SURVIVES = "survives_at_target"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class TrailEntry:
    hypothesis: str
    outcome: bool
    cite: str

    def to_json_dict(self) -> dict:
        return {"hypothesis": self.hypothesis, "outcome": self.outcome,
                "cite": self.cite}


@dataclass(frozen=True)
class ObstructionVerdict:
    status: ObstructionStatus
    trail: tuple[TrailEntry, ...]
    exact: bool

    def __post_init__(self):
        if not self.trail:
            raise PreconditionError("verdict without a hypothesis trail")

    def to_json_dict(self) -> dict:
        return {
            "status": self.status.value,
            "trail": [t.to_json_dict() for t in self.trail],
            "exact": self.exact,
        }


def _require_arf_zero(expr: KnotExpression) -> None:
    for leaf in base_leaves(expr):
        if leaf.arf != 0:
            raise PreconditionError(
                f"base knot {leaf.name} has arf 1; the obstruction needs arf 0")


# ---------------------------------------------------------------------------
# vanishing


def vanishing_verdict(expr: KnotExpression, target: PolySequence,
                      bound: int = DEFAULT_BOUND) -> ObstructionVerdict:
    """Does the tree drop into the next refined level at this target?

    Fires exactly when every root-to-leaf order sequence is strongly
    coprime to the target tuple.  A failed check yields Inconclusive, never
    the opposite conclusion: staying put needs the survival hypotheses.
    """
    _require_arf_zero(expr)
    seqs = order_sequences(expr).sequences
    if not seqs:
        raise PreconditionError(
            f"target length {len(target)} does not match tree depth 0")
    for seq in seqs:
        if len(seq) != len(target):
            raise PreconditionError(
                f"target length {len(target)} does not match a path of "
                f"length {len(seq)}")
    trail = []
    exact = True
    all_coprime = True
    for seq in seqs:
        verdict = tuple_strongly_coprime(target, seq, bound)
        exact = exact and verdict.exact
        all_coprime = all_coprime and verdict.strongly_coprime
        detail = (f" (index {verdict.index}, {verdict.clause})"
                  if verdict.strongly_coprime else "")
        trail.append(TrailEntry(
            f"order sequence {seq.serialize()} strongly coprime to the "
            f"target{detail}",
            verdict.strongly_coprime,
            "rule:vanishing-every-sequence"))
    status = (ObstructionStatus.VANISHES if all_coprime
              else ObstructionStatus.INCONCLUSIVE)
    return ObstructionVerdict(status, tuple(trail), exact)


# ---------------------------------------------------------------------------
# integer-relation falsifier


@dataclass(frozen=True)
class RelationReport:
    """Outcome of an integer-relation search over asserted real values."""

    coefficients: Optional[tuple[int, ...]]
    precision: int
    max_coeff: int
    claim: str = _FALSIFIER_CLAIM

    @property
    def found(self) -> bool:
        return self.coefficients is not None

    def to_json_dict(self) -> dict:
        return {
            "found": self.found,
            "coefficients": (None if self.coefficients is None
                             else list(self.coefficients)),
            "precision": self.precision,
            "max_coeff": self.max_coeff,
            "claim": self.claim,
        }


def falsifier_floor(n_values: int, max_coeff: int) -> int:
    """Digits needed before a relation search is better than noise.

    With coefficients up to M over n values, accidental combinations land
    around M^-(n-1) relative size, so the acceptance tolerance has to sit
    well below that; one coefficient-width per value plus headroom.
    """
    return 10 + n_values * (int(log10(max_coeff)) + 1)


def _exact_rational(value) -> Optional[Fraction]:
    if isinstance(value, bool):
        return None
    if isinstance(value, (int, Fraction, Decimal)):
        return Fraction(value)
    return None


def _rational_relation(rationals: Sequence[Fraction],
                       max_coeff: int) -> Optional[tuple[int, ...]]:
    """Exact relation among rationals, if one fits the coefficient bound.

    Any two rationals are dependent, so scan pairs in index order and take
    the first whose cleared-denominator relation stays within the bound.
    A zero value is a relation on its own.
    """
    n = len(rationals)
    for i, v in enumerate(rationals):
        if v == 0:
            coeffs = [0] * n
            coeffs[i] = 1
            return tuple(coeffs)
    for i in range(n):
        for j in range(i + 1, n):
            vi, vj = rationals[i], rationals[j]
            ci = vj.numerator * vi.denominator
            cj = -vi.numerator * vj.denominator
            g = gcd_int(ci, cj)
            ci, cj = ci // g, cj // g
            if ci < 0:
                ci, cj = -ci, -cj
            if max(abs(ci), abs(cj)) <= max_coeff:
                coeffs = [0] * n
                coeffs[i], coeffs[j] = ci, cj
                return tuple(coeffs)
    return None


def rho0_relation_falsifier(values: Sequence, max_coeff: int = 10 ** 6,
                            precision: Optional[int] = None) -> RelationReport:
    """Search for an integer linear relation among the given reals.

    A single value cannot participate in a relation, so singletons come back
    empty without a search.  All-rational inputs short-circuit to an exact
    pairwise construction, since any two rationals are dependent; the
    numeric search only runs when that construction finds nothing within
    the coefficient bound or some input is not exactly rational.  The
    numeric acceptance tolerance is pinned near full working precision; the
    library default would accept half-precision near-misses, which
    coefficient bounds this size can reach by accident.  Leaving
    ``precision`` unset sizes it from the inputs; an explicit value below
    the floor is rejected rather than silently raised.
    """
    values = [Fraction(v) if isinstance(v, Decimal) else v for v in values]
    if not values:
        raise PreconditionError("relation search over an empty value list")
    required = falsifier_floor(len(values), max_coeff)
    if precision is None:
        precision = max(30, required + 6)
    if precision < required:
        raise PreconditionError(
            f"precision {precision} too small for coefficient bound "
            f"{max_coeff} over {len(values)} values; need at least "
            f"{required} digits")
    if len(values) == 1:
        return RelationReport(None, precision, max_coeff)
    rationals = [_exact_rational(v) for v in values]
    if all(r is not None for r in rationals):
        coeffs = _rational_relation(rationals, max_coeff)
        if coeffs is not None:
            return RelationReport(coeffs, precision, max_coeff)
    with mpmath.workdps(precision):
        vec = [mpmath.mpmathify(v) for v in values]
        tol = mpmath.mpf(10) ** (6 - precision)
        found = mpmath.pslq(vec, tol=tol, maxcoeff=max_coeff, maxsteps=10000)
    if found is None:
        return RelationReport(None, precision, max_coeff)
    return RelationReport(tuple(int(c) for c in found), precision, max_coeff)


# ---------------------------------------------------------------------------
# survival


def _unwind_chain(expr: KnotExpression) -> tuple[
        list[DoublingOperator], list[LaurentPoly], Base]:
    ops: list[DoublingOperator] = []
    orders: list[LaurentPoly] = []
    node = expr
    while isinstance(node, Apply):
        if len(node.inputs) != 1:
            raise PreconditionError(
                "survival analysis covers chains only; this tree branches")
        ops.append(node.op)
        orders.append(node.inputs[0][0])
        node = node.inputs[0][1]
    return ops, orders, node


def survival_verdict(expr: KnotExpression, target: PolySequence,
                     rho0_hypothesis: Optional[str] = None,
                     max_coeff: int = 10 ** 6,
                     precision: int = 30) -> ObstructionVerdict:
    """Does the chain stay visible at its own localization target?

    Three hypothesis groups are audited and recorded: every operator in the
    chain is robust; each infection runs along the certified generator curve
    and its order matches the target entry at the same depth, outermost
    first; and the base knot's rho0 is nonzero, survives the numeric
    relation falsifier against the innermost operator's asserted values, and
    carries an explicit independence assertion.  All three together give
    survival; anything less is Inconclusive.
    """
    _require_arf_zero(expr)
    ops, orders, base = _unwind_chain(expr)
    if not ops:
        raise PreconditionError(
            f"target length {len(target)} does not match tree depth 0")
    if len(ops) != len(target):
        raise PreconditionError(
            f"target length {len(target)} does not match chain depth "
            f"{len(ops)}")
    trail = []

    for op in ops:
        report = is_robust(op)
        ok = report.status is Robustness.ROBUST
        note = ""
        if report.reasons:
            note = " (" + "; ".join(report.reasons) + ")"
        elif report.missing:
            note = " (missing evidence: " + ", ".join(report.missing) + ")"
        trail.append(TrailEntry(
            f"operator {op.name} is robust{note}", ok,
            "rule:survival-robust-operators"))

    for level, (op, order, want) in enumerate(
            zip(ops, orders, target), start=1):
        on_curve = eq_up_to_unit(order, op.alpha_order)
        trail.append(TrailEntry(
            f"level-{level} infection runs along the certified curve of "
            f"{op.name}", on_curve, "rule:survival-order-match"))
        matches = eq_up_to_unit(order, want)
        trail.append(TrailEntry(
            f"level-{level} curve order matches target entry "
            f"{serialize(want.canonical())} up to units", matches,
            "rule:survival-order-match"))

    base_rho0 = rho0(base.knot, precision=precision)
    nonzero = base_rho0 != 0
    trail.append(TrailEntry(
        f"base knot {base.name} has nonzero rho0", nonzero,
        "rule:survival-signature-span"))
    innermost = ops[-1]
    if nonzero and innermost.robust_certificate is not None:
        # Duplicate evidence values span the same line but would hand the
        # search a coefficient-zero relation that says nothing about the
        # base value, so only distinct values go in.
        asserted = []
        seen = set()
        for _, ev in innermost.robust_certificate.entries:
            if not isinstance(ev, NonzeroAsserted):
                continue
            key = _exact_rational(ev.value)
            key = ev.value if key is None else key
            if key not in seen:
                seen.add(key)
                asserted.append(ev.value)
        digits = max(precision,
                     falsifier_floor(1 + len(asserted), max_coeff) + 6)
        report = rho0_relation_falsifier(
            [base_rho0] + asserted, max_coeff=max_coeff, precision=digits)
        refuted = report.found and report.coefficients[0] != 0
        detail = (f" (found coefficients {list(report.coefficients)})"
                  if refuted else "")
        trail.append(TrailEntry(
            "numeric falsifier finds no rational relation involving the "
            f"base rho0{detail}", not refuted, "rule:survival-falsifier"))
    asserted_ok = rho0_hypothesis is not None and bool(rho0_hypothesis)
    text = ("independence of the base rho0 from the first-order signature "
            "span is asserted")
    if asserted_ok:
        text += f": {rho0_hypothesis}"
    trail.append(TrailEntry(text, asserted_ok, "rule:survival-signature-span"))

    if all(entry.outcome for entry in trail):
        status = ObstructionStatus.SURVIVES
    else:
        status = ObstructionStatus.INCONCLUSIVE
    return ObstructionVerdict(status, tuple(trail), exact=True)


# ---------------------------------------------------------------------------
# family certificates


@dataclass(frozen=True)
class Rho0Status:
    kind: str  # "refuted_relation" | "asserted_independent" | "inconclusive"
    coefficients: Optional[tuple[int, ...]] = None
    provenance: Optional[str] = None

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "coefficients": (None if self.coefficients is None
                             else list(self.coefficients)),
            "provenance": self.provenance,
        }


@dataclass(frozen=True)
class FamilyCertificate:
    members: tuple[tuple[KnotExpression, int], ...]
    pairwise: tuple[tuple[int, int, TupleVerdict], ...]
    rho0_status: Rho0Status
    conclusion: str  # "independent-certified" | "refuted" | "conditional"
    shortfalls: tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {
            "member_count": len(self.members),
            "members": [
                {"family": idx, "depth": expression_depth(e)}
                for e, idx in self.members
            ],
            "pairwise": [
                {"i": i, "j": j, **v.to_json_dict()}
                for i, j, v in self.pairwise
            ],
            "rho0": self.rho0_status.to_json_dict(),
            "conclusion": self.conclusion,
            "shortfalls": list(self.shortfalls),
        }


def family_certificate(
    families: Sequence[tuple[PolySequence, Sequence[DoublingOperator],
                             Sequence[Base]]],
    fos_spans: Optional[str] = None,
    bound: int = DEFAULT_BOUND,
    max_coeff: int = 10 ** 6,
    precision: int = 30,
) -> FamilyCertificate:
    """Audit the data behind a claimed independent family of chains.

    Checks run unconditionally and their failures land in the certificate
    rather than raising: pairwise strong coprimality of the targets, a
    relation search over each family's base rho0 values, and robustness of
    every operator.  Failed coprimality or a found relation refutes the
    claim; missing robustness or a missing independence assertion leaves it
    conditional.
    """
    if not families:
        raise PreconditionError("certificate over an empty family list")
    depths = {len(ops) for _, ops, _ in families}
    if len(depths) != 1:
        raise PreconditionError(f"chains have mixed depths {sorted(depths)}")
    for target, ops, bases in families:
        if len(target) != len(ops):
            raise PreconditionError(
                f"target length {len(target)} does not match chain depth "
                f"{len(ops)}")
        if not bases:
            raise PreconditionError("family without base knots")

    members = []
    shortfalls = []
    for idx, (target, ops, bases) in enumerate(families):
        for b in bases:
            if b.arf != 0:
                raise PreconditionError(
                    f"base knot {b.name} has arf 1; the obstruction needs arf 0")
            members.append((compose(list(ops), b), idx))
        for op in ops:
            report = is_robust(op)
            if report.status is not Robustness.ROBUST:
                shortfalls.append(
                    f"family {idx}: operator {op.name} is not robust")

    pairwise = []
    coprime_ok = True
    for i in range(len(families)):
        for j in range(i + 1, len(families)):
            v = tuple_strongly_coprime(families[i][0], families[j][0], bound)
            pairwise.append((i, j, v))
            coprime_ok = coprime_ok and v.strongly_coprime

    relation: Optional[tuple[int, ...]] = None
    for idx, (_, _, bases) in enumerate(families):
        values = [rho0(b.knot, precision=precision) for b in bases]
        if any(v == 0 for v in values):
            shortfalls.append(f"family {idx}: a base knot has rho0 = 0")
            continue
        digits = max(precision,
                     falsifier_floor(len(values), max_coeff) + 6)
        report = rho0_relation_falsifier(
            values, max_coeff=max_coeff, precision=digits)
        if report.found:
            relation = report.coefficients
            shortfalls.append(
                f"family {idx}: base rho0 values admit the relation "
                f"{list(report.coefficients)}")

    if relation is not None:
        status = Rho0Status("refuted_relation", coefficients=relation)
    elif fos_spans:
        status = Rho0Status("asserted_independent", provenance=fos_spans)
    else:
        status = Rho0Status("inconclusive")
        shortfalls.append("no independence assertion for the rho0 values")

    if not coprime_ok or relation is not None:
        conclusion = "refuted"
    elif not shortfalls and status.kind == "asserted_independent":
        conclusion = "independent-certified"
    else:
        conclusion = "conditional"
    return FamilyCertificate(
        members=tuple(members),
        pairwise=tuple(pairwise),
        rho0_status=status,
        conclusion=conclusion,
        shortfalls=tuple(shortfalls),
    )


# ---------------------------------------------------------------------------
# injectivity


@dataclass(frozen=True)
class InjectivityReport:
    status: str  # "disjoint-images-on-subgroup" | "same-polynomial" | "inconclusive"
    reasons: tuple[str, ...]
    scope: str = ("conclusion holds on the certified subgroup spanned by "
                  "robust doubling images, not on the whole concordance group")

    def to_json_dict(self) -> dict:
        return {"status": self.status, "reasons": list(self.reasons),
                "scope": self.scope}


def injectivity_report(op_a: DoublingOperator,
                       op_b: DoublingOperator) -> InjectivityReport:
    """Compare the images of two robust operators through their patterns.

    Coprime pattern orders force the images to meet only at zero, within
    the certified subgroup; identical orders flag the operators as
    interchangeable at the level this invariant sees.
    """
    reasons = []
    for op in (op_a, op_b):
        report = is_robust(op)
        if report.status is not Robustness.ROBUST:
            reasons.append(f"operator {op.name} is not robust")
    if reasons:
        return InjectivityReport("inconclusive", tuple(reasons))
    da = alexander_poly(op_a.pattern)
    db = alexander_poly(op_b.pattern)
    if eq_up_to_unit(da, db):
        return InjectivityReport(
            "same-polynomial",
            (f"both patterns have module order {serialize(da)}",))
    if poly_gcd(da, db).degree_span == 0:
        return InjectivityReport(
            "disjoint-images-on-subgroup",
            (f"pattern orders {serialize(da)} and {serialize(db)} are "
             "coprime",))
    return InjectivityReport(
        "inconclusive",
        ("pattern orders share a proper common factor",))


# ---------------------------------------------------------------------------
# composition-tree enumeration


@dataclass(frozen=True)
class FractalPath:
    operator_names: tuple[str, ...]
    target: PolySequence


@dataclass(frozen=True)
class FractalTree:
    depth: int
    family: tuple[str, ...]
    paths: tuple[FractalPath, ...]
    pairwise: tuple[tuple[int, int, TupleVerdict], ...]

    def to_json_dict(self) -> dict:
        return {
            "depth": self.depth,
            "family": list(self.family),
            "paths": [
                {"operators": list(p.operator_names),
                 "target": p.target.serialize()}
                for p in self.paths
            ],
            "pairwise": [
                {"i": i, "j": j, **v.to_json_dict()}
                for i, j, v in self.pairwise
            ],
        }

    def to_dot(self) -> str:
        lines = ["digraph composition_tree {", "  node [shape=box];",
                 '  root [label="J"];']
        def node_id(prefix):
            return "n" + "_".join(str(i) for i in prefix)
        frontier = [()]
        for _ in range(self.depth):
            nxt = []
            for prefix in frontier:
                for i, name in enumerate(self.family):
                    child = prefix + (i,)
                    lines.append(f'  {node_id(child)} [label="{name}"];')
                    parent = "root" if not prefix else node_id(prefix)
                    lines.append(f"  {parent} -> {node_id(child)};")
                    nxt.append(child)
            frontier = nxt
        for path, leaf in zip(self.paths, frontier):
            label = path.target.serialize().replace(";", "\\n")
            lines.append(
                f'  t{node_id(leaf)} [shape=note, label="{label}"];')
            lines.append(f"  {node_id(leaf)} -> t{node_id(leaf)} [style=dotted];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def fractal_tree(depth: int, family: Sequence[DoublingOperator],
                 bound: int = DEFAULT_BOUND) -> FractalTree:
    """Enumerate every depth-n composition over the family, with targets.

    Paths are listed in lexicographic order of their operator choices,
    outermost first; each carries the tuple of curve orders that localizes
    it, and all pairs of paths get a tuple-coprimality verdict.
    """
    if depth < 1:
        raise PreconditionError("tree depth must be at least 1")
    if not family:
        raise PreconditionError("empty operator family")
    for op in family:
        if is_robust(op).status is not Robustness.ROBUST:
            raise PreconditionError(f"operator {op.name} is not robust")
    paths = []
    for choice in product(range(len(family)), repeat=depth):
        ops = [family[i] for i in choice]
        target = PolySequence(
            tuple(op.alpha_order for op in ops), role="p-target")
        paths.append(FractalPath(
            operator_names=tuple(op.name for op in ops), target=target))
    pairwise = []
    for i in range(len(paths)):
        for j in range(i + 1, len(paths)):
            pairwise.append((i, j, tuple_strongly_coprime(
                paths[i].target, paths[j].target, bound)))
    return FractalTree(
        depth=depth,
        family=tuple(op.name for op in family),
        paths=tuple(paths),
        pairwise=tuple(pairwise),
    )
