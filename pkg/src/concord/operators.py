"""Doubling operators, robustness certificates, and composition trees.

A doubling operator is a satellite construction along a curve in the
complement of a ribbon pattern; algebraically it is the pattern's Seifert
matrix plus the order of the companion curve in the pattern's Alexander
module.  Robustness asks for a specific module shape (cyclic of order
d * reciprocal(d) with d irreducible, generated by the curve) plus signature
conditions that are not computable from Seifert data; those enter as
provenance-tagged assertions and the machine verifies everything else.

Compositions of operators applied to base knots form trees.  Walking a tree
from the root to each leaf and reading off the curve orders produces the
order sequences that the obstruction layer compares against localization
targets.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass
from decimal import Decimal
from enum import Enum
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

import mpmath

from .coprimality import PolySequence
from .errors import PreconditionError
from .laurent import (
    LaurentPoly,
    augmentation,
    divides,
    eq_up_to_unit,
    factor,
    parse_poly,
    reciprocal,
    serialize,
)
from .modules import (
    isotropic_submodule,
    module_from_knot,
    proper_submodules,
    reciprocal_half,
)
from .seifert import (
    UNKNOT,
    SeifertMatrix,
    alexander_poly,
    arf as compute_arf,
    connected_sum,
    mirror,
    rho0,
)

_SUBMODULE_LABELS = ("P0", "P+", "P-", "P+-")


# ---------------------------------------------------------------------------
# certified signature values


@dataclass(frozen=True)
class NonzeroAsserted:
    """A first-order signature value vouched for by its provenance string."""

    value: object  # Fraction, float, or mpf; anything numeric and nonzero
    provenance: str

    kind = "nonzero"

    def __post_init__(self):
        if self.value == 0:
            raise PreconditionError("asserted-nonzero value is zero")
        if not self.provenance:
            raise PreconditionError("assertion without provenance")


@dataclass(frozen=True)
class RibbonDisk:
    """The submodule is exhibited by a ribbon disk; no signature needed."""

    provenance: str = "pattern bounds a ribbon disk exhibiting this submodule"

    kind = "ribbon"


SignatureEvidence = Union[NonzeroAsserted, RibbonDisk]


@dataclass(frozen=True)
class RobustCertificate:
    """Signature evidence per isotropic submodule, keyed by label.

    The delta is the irreducible half of the pattern's module order; the
    factorization claim itself is re-verified against the pattern whenever
    the certificate is attached to an operator.
    """

    delta: LaurentPoly
    entries: tuple[tuple[str, SignatureEvidence], ...]

    def __post_init__(self):
        if self.delta.is_zero or self.delta.degree_span == 0:
            raise PreconditionError("certificate delta must be a non-unit")
        seen = set()
        for label, evidence in self.entries:
            if label not in _SUBMODULE_LABELS:
                raise PreconditionError(f"unknown submodule label: {label}")
            if label in seen:
                raise PreconditionError(f"duplicate certificate entry: {label}")
            seen.add(label)
            if not isinstance(evidence, (NonzeroAsserted, RibbonDisk)):
                raise PreconditionError("entries carry NonzeroAsserted or RibbonDisk")

    def lookup(self, label: str) -> Optional[SignatureEvidence]:
        for have, evidence in self.entries:
            if have == label:
                return evidence
        return None


@dataclass(frozen=True)
class DoublingOperator:
    """A ribbon pattern with a distinguished infection curve, by its order."""

    name: str
    pattern: SeifertMatrix
    alpha_order: LaurentPoly
    generates: bool
    robust_certificate: Optional[RobustCertificate] = None


def make_operator(
    name: str,
    pattern: SeifertMatrix,
    alpha_order: LaurentPoly,
    certificate: Optional[RobustCertificate] = None,
) -> DoublingOperator:
    """Validate and assemble an operator.

    The curve order must divide the pattern's Alexander polynomial; a
    certificate additionally pins the order to delta times its reciprocal
    with delta irreducible.  Whether the curve generates is derived: a
    cyclic module is generated by any element of full order.
    """
    delta_poly = alexander_poly(pattern)
    if alpha_order.is_zero or not divides(alpha_order, delta_poly):
        raise PreconditionError(
            "curve order does not divide the pattern's Alexander polynomial")
    if certificate is not None:
        fac = factor(certificate.delta)
        if len(fac.factors) != 1 or fac.factors[0][1] != 1:
            raise PreconditionError("certificate delta is not irreducible")
        split = certificate.delta * reciprocal(certificate.delta)
        if not eq_up_to_unit(split, delta_poly):
            raise PreconditionError(
                "pattern order is not delta times reciprocal(delta)")
    generates = (module_from_knot(pattern).is_cyclic
                 and eq_up_to_unit(alpha_order, delta_poly))
    return DoublingOperator(
        name=name,
        pattern=pattern,
        alpha_order=alpha_order.canonical(),
        generates=generates,
        robust_certificate=certificate,
    )


# ---------------------------------------------------------------------------
# robustness


class Robustness(Enum):
    ROBUST = "robust"
    NOT_ROBUST = "not_robust"
    CONDITIONAL = "conditional"


@dataclass(frozen=True)
class RobustnessReport:
    status: Robustness
    reasons: tuple[str, ...]
    missing: tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {
            "status": self.status.value,
            "reasons": list(self.reasons),
            "missing": list(self.missing),
        }


def is_robust(op: DoublingOperator) -> RobustnessReport:
    """Re-check the module shape from raw pattern data, then audit evidence.

    Shape failures are final.  With the shape in place, every proper
    isotropic submodule needs a certificate entry; whatever lacks one is
    reported as missing, so adding assertions can only move the verdict
    toward robust.
    """
    reasons = []
    delta_poly = alexander_poly(op.pattern)
    if not module_from_knot(op.pattern).is_cyclic:
        reasons.append("module is not cyclic")
    if not op.generates:
        reasons.append("curve does not generate the module")
    if reciprocal_half(delta_poly) is None:
        reasons.append("order is not an irreducible times its reciprocal")
    if abs(augmentation(delta_poly)) != 1:
        reasons.append("order does not evaluate to a unit at 1")
    if reasons:
        return RobustnessReport(Robustness.NOT_ROBUST, tuple(reasons), ())
    needed = [
        s.label for s in proper_submodules(delta_poly)
        if isotropic_submodule(op.pattern, s.generator_multiple)
    ]
    cert = op.robust_certificate
    missing = tuple(
        label for label in needed
        if cert is None or cert.lookup(label) is None
    )
    if missing:
        return RobustnessReport(Robustness.CONDITIONAL, (), missing)
    return RobustnessReport(Robustness.ROBUST, (), ())


# ---------------------------------------------------------------------------
# first-order signature bookkeeping


@dataclass(frozen=True)
class CertifiedReal:
    """A real value that remembers where it came from."""

    value: object
    provenance: str

    def __post_init__(self):
        if not self.provenance:
            raise PreconditionError("certified value without provenance")


def rho1_bookkeeping(base_rho1: CertifiedReal, infection_rho0) -> tuple[
        CertifiedReal, CertifiedReal]:
    """Derive the infected pattern's first-order signatures.

    Tying a knot into the pattern along the curve adds that knot's rho0 to
    the signature of the whole module and installs it outright on the
    reciprocal-half submodule.  Returns (whole-module value, half value).
    """
    whole = CertifiedReal(
        base_rho1.value + infection_rho0,
        f"{base_rho1.provenance}; plus computed rho0 of the infection knot",
    )
    edge = CertifiedReal(
        infection_rho0, "computed rho0 of the infection knot")
    return whole, edge


# ---------------------------------------------------------------------------
# the shipped pattern family


def ribbon_pattern(k: int) -> SeifertMatrix:
    """Genus-1 ribbon pattern whose module order is (kt-(k+1))((k+1)t-k)."""
    if k < 1:
        raise PreconditionError("pattern index must be positive")
    return SeifertMatrix.from_rows([[0, k + 1], [k, 0]])


def standard_operator(k: int, infection: Optional[SeifertMatrix] = None,
                      name: Optional[str] = None) -> DoublingOperator:
    """The k-th doubling operator, made robust by tying in an infection knot.

    The infection's rho0 must be nonzero; it becomes the asserted first-order
    signature on the whole module and on the reciprocal half, while the plain
    half is exhibited by the pattern's ribbon disk.  The default infection is
    the right-handed trefoil (rho0 = -4/3).
    """
    if infection is None:
        infection = BASE_KNOTS["trefoil"]
    r0 = rho0(infection)
    if r0 == 0:
        raise PreconditionError(
            "infection knot has vanishing rho0; certificate needs nonzero values")
    base = CertifiedReal(
        Fraction(0), "whole-module signature of the bare ribbon pattern, "
        "asserted zero from its ribbon disk")
    whole, edge = rho1_bookkeeping(base, r0)
    pattern = ribbon_pattern(k)
    delta = LaurentPoly.from_ordinary([-(k + 1), k]).canonical()
    certificate = RobustCertificate(
        delta=delta,
        entries=(
            ("P0", NonzeroAsserted(whole.value, whole.provenance)),
            ("P+", RibbonDisk()),
            ("P-", NonzeroAsserted(edge.value, edge.provenance)),
        ),
    )
    return make_operator(
        name or f"doubling-{k}", pattern, alexander_poly(pattern), certificate)


_STUB_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113)


def stub_certificate(pattern: SeifertMatrix, index: int) -> RobustCertificate:
    """Plug every isotropic submodule with a distinct transcendental stub.

    Logarithms of distinct primes are rationally independent of one another
    and of every rational, so stub-certified chains exercise the survival
    logic without the numeric falsifier tripping over an accidental relation.
    Each stub says plainly that it stands in for an uncomputed value.
    """
    order = alexander_poly(pattern)
    delta = reciprocal_half(order)
    if delta is None:
        raise PreconditionError(
            "pattern order is not delta times reciprocal(delta)")
    labels = [
        s.label for s in proper_submodules(order)
        if isotropic_submodule(pattern, s.generator_multiple)
    ]
    entries = []
    with mpmath.workdps(60):
        for j, label in enumerate(labels):
            p = _STUB_PRIMES[(4 * index + j) % len(_STUB_PRIMES)]
            entries.append((label, NonzeroAsserted(
                mpmath.log(p),
                f"stub value log({p}); stands in for an uncomputed "
                "first-order signature")))
    return RobustCertificate(delta=delta, entries=tuple(entries))


# ---------------------------------------------------------------------------
# expressions


@dataclass(frozen=True)
class Base:
    """A leaf knot, named for serialization, with its Arf invariant pinned."""

    name: str
    knot: SeifertMatrix
    arf: int

    def __post_init__(self):
        if self.arf != compute_arf(self.knot):
            raise PreconditionError(
                f"stated arf {self.arf} does not match the matrix")


@dataclass(frozen=True)
class Apply:
    """An operator applied along one or more curves, each with its order."""

    op: DoublingOperator
    inputs: tuple[tuple[LaurentPoly, "KnotExpression"], ...]

    def __post_init__(self):
        if not self.inputs:
            raise PreconditionError("operator application needs an input")
        order_poly = alexander_poly(self.op.pattern)
        for curve_order, _ in self.inputs:
            if curve_order.is_zero or not divides(curve_order, order_poly):
                raise PreconditionError(
                    "curve order does not divide the pattern's module order")


KnotExpression = Union[Base, Apply]


def base_knot(name: str, knot: Optional[SeifertMatrix] = None) -> Base:
    """A leaf from the shipped catalog, or from an explicit matrix."""
    if knot is None:
        if name not in BASE_KNOTS:
            raise PreconditionError(f"unknown base knot: {name}")
        knot = BASE_KNOTS[name]
    return Base(name=name, knot=knot, arf=compute_arf(knot))


def compose(ops: Sequence[DoublingOperator], base: KnotExpression) -> KnotExpression:
    """Nest single-curve applications, first listed operator outermost."""
    if not ops:
        raise PreconditionError("empty operator list")
    expr = base
    for op in reversed(list(ops)):
        expr = Apply(op, ((op.alpha_order, expr),))
    return expr


def expression_depth(expr: KnotExpression) -> int:
    if isinstance(expr, Base):
        return 0
    return 1 + max(expression_depth(sub) for _, sub in expr.inputs)


def base_leaves(expr: KnotExpression) -> tuple[Base, ...]:
    if isinstance(expr, Base):
        return (expr,)
    out: tuple[Base, ...] = ()
    for _, sub in expr.inputs:
        out = out + base_leaves(sub)
    return out


@dataclass(frozen=True)
class OrderSequenceSet:
    """One curve-order sequence per root-to-leaf path, outermost first."""

    sequences: tuple[PolySequence, ...]


def order_sequences(expr: KnotExpression) -> OrderSequenceSet:
    """Read the curve orders along every root-to-leaf path.

    A bare base knot has no infections and yields no sequences.
    """
    def paths(node: KnotExpression):
        if isinstance(node, Base):
            yield ()
            return
        for curve_order, sub in node.inputs:
            for rest in paths(sub):
                yield (curve_order,) + rest

    if isinstance(expr, Base):
        return OrderSequenceSet(())
    return OrderSequenceSet(tuple(
        PolySequence(entries=path, role="q-orders") for path in paths(expr)))


# ---------------------------------------------------------------------------
# serialization and the knot catalog


_RIGHT_TREFOIL = SeifertMatrix.from_rows([[-1, 1], [0, -1]])

BASE_KNOTS: Mapping[str, SeifertMatrix] = {
    "unknot": UNKNOT,
    "trefoil": _RIGHT_TREFOIL,
    "mirror-trefoil": mirror(_RIGHT_TREFOIL),
    "figure-eight": SeifertMatrix.from_rows([[1, 1], [0, -1]]),
    "granny": connected_sum(_RIGHT_TREFOIL, _RIGHT_TREFOIL),
    "cinquefoil": SeifertMatrix.from_rows(
        [[-1, 1, 0, 0], [0, -1, 1, 0], [0, 0, -1, 1], [0, 0, 0, -1]]),
}


_VALUE_DIGITS = 50


def _decimal_value(value) -> Union[int, Decimal]:
    """Render an asserted signature value as an exact or 50-digit decimal.

    Evidence values feed a relation search with coefficients up to a
    million, and a value stored at double precision is a dyadic rational
    coarse enough that such a search finds exact integer relations by
    pigeonhole.  Serialized values therefore carry enough digits to keep
    the search meaningful: floats and other dyadic rationals expand
    exactly, everything else is rounded to 50 significant digits.
    """
    if isinstance(value, int):
        return int(value)
    if isinstance(value, float):
        return Decimal(value)
    if isinstance(value, Decimal):
        value = Fraction(value)
    if isinstance(value, Fraction):
        den = value.denominator
        twos = (den & -den).bit_length() - 1
        rest = den >> twos
        fives = 0
        while rest % 5 == 0:
            rest //= 5
            fives += 1
        if rest == 1:
            shift = max(twos, fives)
            scaled = value.numerator * 2 ** (shift - twos) * 5 ** (shift - fives)
            return Decimal(f"{scaled}E-{shift}")
        with decimal.localcontext() as ctx:
            ctx.prec = _VALUE_DIGITS
            return Decimal(value.numerator) / Decimal(value.denominator)
    with mpmath.workdps(_VALUE_DIGITS + 10):
        return Decimal(mpmath.nstr(mpmath.mpmathify(value), _VALUE_DIGITS))


def operator_json_dict(op: DoublingOperator) -> dict:
    robust = None
    if op.robust_certificate is not None:
        cert = op.robust_certificate
        robust = {
            "delta": serialize(cert.delta),
            "signatures": [
                {
                    "submodule": label,
                    "kind": evidence.kind,
                    "value": (None if isinstance(evidence, RibbonDisk)
                              else _decimal_value(evidence.value)),
                    "provenance": evidence.provenance,
                }
                for label, evidence in cert.entries
            ],
        }
    return {
        "name": op.name,
        "pattern_seifert": op.pattern.to_lists(),
        "alpha_order": serialize(op.alpha_order),
        "robust": robust,
    }


def operator_from_json(data: dict) -> DoublingOperator:
    try:
        name = data["name"]
        pattern = SeifertMatrix.from_rows(data["pattern_seifert"])
        alpha_order = parse_poly(data["alpha_order"])
        robust = data.get("robust")
    except (KeyError, TypeError) as exc:
        raise PreconditionError(f"malformed operator record: {exc}") from exc
    certificate = None
    if robust is not None:
        entries = []
        for sig in robust["signatures"]:
            if sig["kind"] == "ribbon":
                evidence: SignatureEvidence = RibbonDisk(sig["provenance"])
            elif sig["kind"] == "nonzero":
                raw = sig["value"]
                if isinstance(raw, bool) or not isinstance(
                        raw, (int, float, Decimal)):
                    raise PreconditionError(
                        f"asserted signature value must be a number, "
                        f"got {raw!r}")
                value = float(raw) if isinstance(raw, float) else Fraction(raw)
                evidence = NonzeroAsserted(value, sig["provenance"])
            else:
                raise PreconditionError(f"unknown evidence kind: {sig['kind']}")
            entries.append((sig["submodule"], evidence))
        certificate = RobustCertificate(
            delta=parse_poly(robust["delta"]), entries=tuple(entries))
    return make_operator(name, pattern, alpha_order, certificate)


def expression_json_dict(expr: KnotExpression) -> dict:
    if isinstance(expr, Base):
        return {"base": expr.name, "arf": expr.arf}
    return {
        "op": expr.op.name,
        "inputs": [
            {"alpha_order": serialize(order.canonical()),
             "expr": expression_json_dict(sub)}
            for order, sub in expr.inputs
        ],
    }


def expression_from_json(
    data: dict,
    operators: Mapping[str, DoublingOperator],
    knots: Optional[Mapping[str, SeifertMatrix]] = None,
) -> KnotExpression:
    knots = BASE_KNOTS if knots is None else knots
    if "base" in data:
        name = data["base"]
        if name not in knots:
            raise PreconditionError(f"unknown base knot: {name}")
        leaf = Base(name=name, knot=knots[name], arf=data["arf"])
        return leaf
    if "op" not in data:
        raise PreconditionError("expression node needs 'base' or 'op'")
    op_name = data["op"]
    if op_name not in operators:
        raise PreconditionError(f"unknown operator: {op_name}")
    inputs = tuple(
        (parse_poly(item["alpha_order"]),
         expression_from_json(item["expr"], operators, knots))
        for item in data["inputs"]
    )
    return Apply(operators[op_name], inputs)
