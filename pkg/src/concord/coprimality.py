"""Coprimality of Laurent polynomials under every power substitution.

Call p and q *strongly coprime* when p(t^n) and q(t^k) share no common factor
for any nonzero integers n, k.  The only way that can fail is a multiplicative
relation between roots: a common root z of p(t^n) and q(t^k) hands {back} roots
r = z^n of p and s = z^k of q with r^k = s^n, and conversely any such relation
with gcd(n, k) = 1 produces a common root.  Pairs admitting a relation are
called *isogenous*.

The decision procedure classifies the roots of each irreducible factor:

    * rational roots: dependence is a lattice question about signed prime
      exponent vectors, decided exactly;
    * roots of unity: any two are power-related, so such pairs are always
      isogenous; and a root of unity never power-matches anything that is not
      one, which settles those mixed pairs exactly as well;
    * a rational root off the unit circle can never power-match a root of an
      irreducible all of whose roots lie on the circle (compare moduli);
    * everything else falls to a bounded resultant sweep, which either finds a
      certified witness or reports strong coprimality as a bounded search.

Verdicts carry an ``exact`` flag so downstream consumers can tell a theorem
from a failed search.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import gcd as int_gcd
from typing import Optional

from .errors import PreconditionError
from .laurent import (
    LaurentPoly,
    _deg,
    _zz_gcd,
    coprime_fast,
    factor,
    gcd as poly_gcd,
    normalize,
    parse_poly,
    serialize,
)
from .sturm import all_roots_on_unit_circle, cyclotomic_order

DEFAULT_BOUND = 12


class RootKind(Enum):
    RATIONAL = "rational"
    ROOT_OF_UNITY = "root_of_unity"
    GENERAL = "general"


@dataclass(frozen=True)
class RootClass:
    """The Galois orbit of roots of one irreducible polynomial.

    ``value`` is set for the rational kind, ``order`` for roots of unity
    (the exact multiplicative order), and ``on_unit_circle`` records, for the
    general kind, whether every root of the orbit lies on the unit circle.
    """

    kind: RootKind
    minpoly: LaurentPoly
    value: Optional[Fraction] = None
    order: Optional[int] = None
    on_unit_circle: Optional[bool] = None

    @property
    def torsion_order(self) -> Optional[int]:
        """The root-of-unity order, folding in the rational values +/-1."""
        if self.kind is RootKind.ROOT_OF_UNITY:
            return self.order
        if self.kind is RootKind.RATIONAL:
            if self.value == 1:
                return 1
            if self.value == -1:
                return 2
        return None


def _require_irreducible(f: LaurentPoly) -> LaurentPoly:
    if f.is_zero:
        raise PreconditionError("zero polynomial cannot be classified")
    g = f.canonical()
    if g.degree_span == 0:
        raise PreconditionError("unit polynomial has no roots to classify")
    fac = factor(g)
    if len(fac.factors) != 1 or fac.factors[0][1] != 1:
        raise PreconditionError(f"polynomial is not irreducible: {serialize(g)}")
    return g


@lru_cache(maxsize=None)
def _classify(g: LaurentPoly) -> RootClass:
    ints = g.to_int_list()
    if _deg(ints) == 1:
        return RootClass(RootKind.RATIONAL, g, value=Fraction(-ints[0], ints[1]))
    m = cyclotomic_order(g)
    if m is not None:
        return RootClass(RootKind.ROOT_OF_UNITY, g, order=m)
    return RootClass(RootKind.GENERAL, g, on_unit_circle=all_roots_on_unit_circle(g))


def classify_roots(f: LaurentPoly) -> list[RootClass]:
    """Classify the roots of an irreducible polynomial.

    An irreducible has a single Galois orbit, so the list has one entry; the
    list shape leaves room for callers iterating over factorizations.
    """
    return [_classify(_require_irreducible(f))]


# ---------------------------------------------------------------------------
# multiplicative dependence of rationals


@dataclass(frozen=True)
class MultiplicativeRelation:
    """Nonzero exponents with r**k == s**n, verified exactly on return."""

    k: int
    n: int


@lru_cache(maxsize=None)
def _prime_exponents(m: int) -> dict:
    import sympy

    return {int(p): int(e) for p, e in sympy.factorint(m).items()}


def _exponent_vector(x: Fraction) -> dict[int, int]:
    v = dict(_prime_exponents(abs(x.numerator)))
    for p, e in _prime_exponents(x.denominator).items():
        v[p] = v.get(p, 0) - e
    return {p: e for p, e in v.items() if e}


def rationals_multiplicatively_dependent(
    r: Fraction, s: Fraction
) -> Optional[MultiplicativeRelation]:
    """A relation r^k = s^n with k, n nonzero, or None if independent.

    Torsion (+/-1) pairs with torsion; a torsion value is independent of any
    non-torsion one; otherwise the signed prime exponent vectors must be
    proportional, and a sign mismatch is repaired by doubling both exponents.
    """
    r, s = Fraction(r), Fraction(s)
    if r == 0 or s == 0:
        raise PreconditionError("multiplicative dependence needs nonzero values")
    r_torsion, s_torsion = abs(r) == 1, abs(s) == 1
    if r_torsion and s_torsion:
        if r == s:
            rel = MultiplicativeRelation(1, 1)
        elif r == 1:
            rel = MultiplicativeRelation(1, 2)
        elif s == 1:
            rel = MultiplicativeRelation(2, 1)
        else:
            rel = MultiplicativeRelation(1, 1)
        assert r ** rel.k == s ** rel.n
        return rel
    if r_torsion != s_torsion:
        return None
    vr = _exponent_vector(r)
    vs = _exponent_vector(s)
    if set(vr) != set(vs):
        return None
    primes = sorted(vr)
    p0 = primes[0]
    lam = Fraction(vs[p0], vr[p0])
    if any(Fraction(vs[p], vr[p]) != lam for p in primes[1:]):
        return None
    u, v = lam.numerator, lam.denominator  # |r|^u = |s|^v
    if r ** u == s ** v:
        rel = MultiplicativeRelation(u, v)
    else:
        rel = MultiplicativeRelation(2 * u, 2 * v)
    assert r ** rel.k == s ** rel.n
    return rel


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class IsogenyVerdict:
    status: str  # "isogenous" | "strongly_coprime"
    exact: bool
    witness: Optional[tuple[int, int]] = None  # (n, k): gcd(p(t^n), q(t^k)) != 1
    witness_description: Optional[str] = None
    bound: Optional[int] = None

    @property
    def is_isogenous(self) -> bool:
        return self.status == "isogenous"

    def to_json_dict(self) -> dict:
        w = None
        if self.witness is not None:
            w = {"n": self.witness[0], "k": self.witness[1]}
        return {
            "status": self.status,
            "exact": self.exact,
            "witness": w,
            "bound": self.bound,
        }


def _substitution_gcd_nontrivial(f: LaurentPoly, g: LaurentPoly, n: int, k: int) -> bool:
    a = f.substitute_power(n).canonical().to_int_list()
    b = g.substitute_power(k).canonical().to_int_list()
    return _deg(_zz_gcd(a, b)) > 0


def _verified_witness(f, g, candidates):
    for n, k in candidates:
        if n and k and _substitution_gcd_nontrivial(f, g, n, k):
            return (n, k)
    return None


@lru_cache(maxsize=None)
def _sweep_pairs(bound: int) -> tuple[tuple[int, int], ...]:
    pairs = []
    for n in range(1, bound + 1):
        for k in range(-bound, bound + 1):
            if k and int_gcd(n, abs(k)) == 1:
                pairs.append((n, k))
    pairs.sort(key=lambda nk: (max(nk[0], abs(nk[1])), nk[0], nk[1]))
    return tuple(pairs)


def _sweep(f: LaurentPoly, g: LaurentPoly, bound: int) -> Optional[tuple[int, int]]:
    """Search gcd(f(t^n), g(t^k)) != 1 over the reduced index set.

    A common root for (n, k) descends to one for (n, k)/gcd(n, k) and the
    pair (-n, -k) mirrors (n, k) through z -> 1/z, so only coprime pairs with
    n >= 1 need checking; a hit is re-verified exactly before being reported.
    """
    for n, k in _sweep_pairs(bound):
        fs = f.substitute_power(n).canonical()
        gs = g.substitute_power(k).canonical()
        if not coprime_fast(fs, gs):
            if _deg(_zz_gcd(fs.to_int_list(), gs.to_int_list())) > 0:
                return (n, k)
    return None


def _torsion_pair_witness(f, g, a: int, b: int):
    """Witness for two root-of-unity orbits of orders a and b."""
    lcm = a * b // int_gcd(a, b)
    return _verified_witness(f, g, [(lcm // a, lcm // b), (1, 1)])


def _pair_decide(f: LaurentPoly, g: LaurentPoly, bound: int) -> IsogenyVerdict:
    """Verdict for two irreducible canonical polynomials."""
    cf, cg = _classify(f), _classify(g)
    ta, tb = cf.torsion_order, cg.torsion_order

    if ta is not None and tb is not None:
        w = _torsion_pair_witness(f, g, ta, tb)
        return IsogenyVerdict("isogenous", True, witness=w)

    if ta is not None or tb is not None:
        # one side is torsion; powers of the other side never have modulus 1
        if (cf if tb is not None else cg).kind is RootKind.RATIONAL:
            return IsogenyVerdict("strongly_coprime", True)
        if cf.kind is RootKind.ROOT_OF_UNITY or cg.kind is RootKind.ROOT_OF_UNITY:
            # root of unity against an orbit containing no roots of unity
            return IsogenyVerdict("strongly_coprime", True)
        # torsion rational against a general orbit: fall through to the sweep
    elif cf.kind is RootKind.RATIONAL and cg.kind is RootKind.RATIONAL:
        rel = rationals_multiplicatively_dependent(cf.value, cg.value)
        if rel is None:
            return IsogenyVerdict("strongly_coprime", True)
        k, n = rel.k, rel.n
        d = int_gcd(abs(k), abs(n))
        candidates = []
        if d > 1 and cf.value ** (k // d) == cg.value ** (n // d):
            candidates.append((n // d, k // d))
        candidates += [(n, k), (2 * n, 2 * k)]
        w = _verified_witness(f, g, candidates)
        desc = None
        if w is None:
            desc = (f"root {cf.value} of {serialize(f)} and root {cg.value} of "
                    f"{serialize(g)} satisfy ({cf.value})^{k} = ({cg.value})^{n}, "
                    f"but no power substitution shares a factor")
        return IsogenyVerdict("isogenous", True, witness=w, witness_description=desc)
    elif cf.kind is RootKind.RATIONAL and cg.on_unit_circle:
        return IsogenyVerdict("strongly_coprime", True)
    elif cg.kind is RootKind.RATIONAL and cf.on_unit_circle:
        return IsogenyVerdict("strongly_coprime", True)

    w = _sweep(f, g, bound)
    if w is not None:
        return IsogenyVerdict("isogenous", True, witness=w)
    return IsogenyVerdict("strongly_coprime", False, bound=bound)


@lru_cache(maxsize=None)
def _pair_decide_cached(f: LaurentPoly, g: LaurentPoly, bound: int) -> IsogenyVerdict:
    if (f.sort_key() > g.sort_key()):
        v = _pair_decide_cached(g, f, bound)
        w = None if v.witness is None else (v.witness[1], v.witness[0])
        return IsogenyVerdict(v.status, v.exact, witness=w,
                              witness_description=v.witness_description, bound=v.bound)
    return _pair_decide(f, g, bound)


def strongly_coprime(p: LaurentPoly, q: LaurentPoly, bound: int = DEFAULT_BOUND) -> IsogenyVerdict:
    """Decide whether p and q are strongly coprime.

    Units have no roots, so they are strongly coprime to everything.  The
    verdict is isogenous as soon as any pair of irreducible factors is, with
    a witness (n, k) such that gcd(p(t^n), q(t^k)) != 1 whenever one can be
    constructed.  Strong coprimality is exact unless some factor pair had to
    fall back to the bounded sweep.

    >>> strongly_coprime(parse_poly("t-4"), parse_poly("t^2-4")).witness
    (2, 1)
    """
    if p.is_zero or q.is_zero:
        raise PreconditionError("strong coprimality is about nonzero polynomials")
    if bound < 1:
        raise PreconditionError("sweep bound must be at least 1")
    fp = [f for f, _ in factor(p)]
    fq = [g for g, _ in factor(q)]
    exact = True
    swept = False
    for f in fp:
        for g in fq:
            v = _pair_decide_cached(f, g, bound)
            if v.is_isogenous:
                return v
            if not v.exact:
                exact = False
            if v.bound is not None:
                swept = True
    return IsogenyVerdict("strongly_coprime", exact, bound=bound if swept else None)


# ---------------------------------------------------------------------------
# tuples


@dataclass(frozen=True)
class PolySequence:
    """An ordered tuple of nonzero Laurent polynomials.

    Role "p-target" marks obstruction targets; role "q-orders" marks
    infection-curve order sequences, stored outermost first.
    """

    entries: tuple[LaurentPoly, ...]
    role: str = "p-target"

    def __post_init__(self):
        if self.role not in ("p-target", "q-orders"):
            raise PreconditionError(f"unknown sequence role: {self.role}")
        if not self.entries:
            raise PreconditionError("empty polynomial sequence")
        if any(e.is_zero for e in self.entries):
            raise PreconditionError("zero entry in polynomial sequence")

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def serialize(self) -> str:
        return ";".join("p:" + serialize(e.canonical()) for e in self.entries)

    @classmethod
    def parse(cls, text: str, role: str = "p-target") -> "PolySequence":
        parts = [s.strip() for s in text.split(";") if s.strip()]
        if not parts:
            raise PreconditionError("empty polynomial sequence text")
        entries = []
        for part in parts:
            if not part.startswith("p:"):
                raise PreconditionError(f"sequence entries start with 'p:', got {part!r}")
            entries.append(parse_poly(part[2:]))
        return cls(tuple(entries), role)


@dataclass(frozen=True)
class TupleVerdict:
    strongly_coprime: bool
    index: Optional[int]  # 1-based first qualifying position
    clause: Optional[str]  # "plain-gcd" at position 1, "strong" beyond
    exact: bool

    def to_json_dict(self):
        return {
            "strongly_coprime": self.strongly_coprime,
            "index": self.index,
            "clause": self.clause,
            "exact": self.exact,
        }


def tuple_strongly_coprime(p_seq: PolySequence, q_seq: PolySequence,
                           bound: int = DEFAULT_BOUND) -> TupleVerdict:
    """Positionwise tuple coprimality with the asymmetric first clause.

    Position 1 asks only for plain coprimality (a common factor there is
    already fatal to the relation being obstructed); every later position
    asks for strong coprimality.  The verdict reports the first qualifying
    index.  Tuples of unequal length are rejected.
    """
    if len(p_seq) != len(q_seq):
        raise PreconditionError(
            f"tuple length mismatch: {len(p_seq)} vs {len(q_seq)}")
    for j, (pj, qj) in enumerate(zip(p_seq, q_seq), start=1):
        if j == 1:
            if poly_gcd(qj, pj).degree_span == 0:
                return TupleVerdict(True, 1, "plain-gcd", True)
        else:
            v = strongly_coprime(qj, pj, bound)
            if not v.is_isogenous:
                return TupleVerdict(True, j, "strong", v.exact)
    return TupleVerdict(False, None, None, True)


# ---------------------------------------------------------------------------
# the standard family and the logarithm hint


def standard_family(kmax: int) -> list[LaurentPoly]:
    """p_k = (kt - (k+1)) ((k+1)t - k) for k = 1..kmax, canonically.

    Every member evaluates to -1 at t = 1 and the family is pairwise strongly
    coprime: distinct members have rational roots with disjoint prime support
    patterns, k/(k+1) against m/(m+1) style, which never power-match.

    >>> serialize(standard_family(2)[0])
    '2t^2-5t+2'
    """
    if kmax < 1:
        raise PreconditionError("kmax must be positive")
    out = []
    for k in range(1, kmax + 1):
        p = parse_poly(f"({k}t-{k + 1})(({k + 1})t-{k})")
        out.append(normalize(p))
    return out


class LogHint(Enum):
    SUFFICIENT = "sufficient"
    NOT_SUFFICIENT = "not-sufficient"
    NOT_APPLICABLE = "not-applicable"


def log_independence_hint(p: LaurentPoly, q: LaurentPoly) -> LogHint:
    """Whether the rational-root exponent-vector criterion settles the pair.

    Applicable only when every irreducible factor on both sides is linear.
    Then strong coprimality holds precisely when no cross pair of roots is
    multiplicatively dependent, and the hint says whether that argument goes
    through.  Used as a cross-check against the main decision procedure.
    """
    if p.is_zero or q.is_zero:
        raise PreconditionError("hint is about nonzero polynomials")
    fp = [f for f, _ in factor(p)]
    fq = [g for g, _ in factor(q)]
    classes_p = [_classify(f) for f in fp]
    classes_q = [_classify(g) for g in fq]
    if any(c.kind is not RootKind.RATIONAL for c in classes_p + classes_q):
        return LogHint.NOT_APPLICABLE
    for cp in classes_p:
        for cq in classes_q:
            if rationals_multiplicatively_dependent(cp.value, cq.value) is not None:
                return LogHint.NOT_SUFFICIENT
    return LogHint.SUFFICIENT
