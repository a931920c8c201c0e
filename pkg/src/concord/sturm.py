"""Real-root isolation and circle geometry for integer polynomials.

Two consumers drive the design.  The coprimality layer needs to know, exactly,
how many roots of an irreducible polynomial lie on the complex unit circle:
self-inversive polynomials pull back to real polynomials in x = t + 1/t, and
circle roots become real roots in the open interval (-2, 2), so Sturm counting
settles the question.  The signature layer needs certified isolating intervals
with rational endpoints for those x-values, refinable to any width, so that
sample points strictly between consecutive jumps can be chosen exactly.

Everything here is exact; no floating point is consulted for any decision.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

from .errors import PreconditionError
from .laurent import LaurentPoly, _deg, _qq_divmod, _trim


def _frac_list(ints) -> list[Fraction]:
    return [Fraction(v) for v in ints]


def _derivative(p: list[Fraction]) -> list[Fraction]:
    return [i * c for i, c in enumerate(p)][1:]


def _eval_list(p, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def sturm_chain(p: list[Fraction]) -> list[list[Fraction]]:
    """The Sturm chain of a squarefree polynomial (ascending coefficients)."""
    chain = [p[:], _derivative(p)]
    while chain[-1] and _deg(chain[-1]) >= 0:
        _, r = _qq_divmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return chain


def _variations(signs: list[int]) -> int:
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)


def _variations_at(chain, x: Fraction) -> int:
    signs = []
    for p in chain:
        v = _eval_list(p, x)
        signs.append(0 if not v else (1 if v > 0 else -1))
    return _variations(signs)


def squarefree_part(p: list[Fraction]) -> list[Fraction]:
    d = _derivative(p)
    if not d:
        return p[:]
    a, b = p[:], d
    while b:
        _, r = _qq_divmod(a, b)
        a, b = b, r
    if _deg(a) < 1:
        return p[:]
    q, rem = _qq_divmod(p, a)
    assert not rem
    return q


def count_distinct_roots_open(p_ints: list[int], lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots of p in the open interval (lo, hi).

    Endpoints must not be roots; rational roots at the endpoints would be the
    caller's bookkeeping problem, so they are rejected loudly.
    """
    p = squarefree_part(_frac_list(p_ints))
    if lo >= hi:
        raise PreconditionError("empty interval")
    if not _eval_list(p, lo) or not _eval_list(p, hi):
        raise PreconditionError("interval endpoint is a root; deflate first")
    chain = sturm_chain(p)
    return _variations_at(chain, lo) - _variations_at(chain, hi)


@dataclass(frozen=True)
class RootLoc:
    """One real algebraic number: its minimal polynomial plus an isolating
    rational interval.  lo == hi marks an exact rational root."""

    minpoly: tuple[int, ...]
    lo: Fraction
    hi: Fraction

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2


def refine_root(loc: RootLoc, width: Fraction) -> RootLoc:
    """Bisect the isolating interval until it is narrower than ``width``.

    The minimal polynomial is irreducible, so for degree >= 2 no rational
    midpoint can be a root and plain sign bisection always makes progress.
    """
    if loc.is_exact or loc.width < width:
        return loc
    p = _frac_list(loc.minpoly)
    lo, hi = loc.lo, loc.hi
    slo = 1 if _eval_list(p, lo) > 0 else -1
    while hi - lo >= width:
        mid = (lo + hi) / 2
        v = _eval_list(p, mid)
        if not v:
            # only possible for a degree-1 minimal polynomial
            return replace(loc, lo=mid, hi=mid)
        if (1 if v > 0 else -1) == slo:
            lo = mid
        else:
            hi = mid
    return replace(loc, lo=lo, hi=hi)


def _isolate_irreducible(f_ints: list[int], lo: Fraction, hi: Fraction) -> list[RootLoc]:
    """Isolating intervals for the roots of an irreducible (deg >= 2) integer
    polynomial inside the open interval (lo, hi), ordered ascending."""
    p = _frac_list(f_ints)
    chain = sturm_chain(p)
    out: list[RootLoc] = []

    def go(a: Fraction, b: Fraction, n: int):
        if n == 0:
            return
        if n == 1:
            out.append(RootLoc(tuple(f_ints), a, b))
            return
        mid = (a + b) / 2
        # irreducible of degree >= 2: rational mid is never a root
        na = _variations_at(chain, a) - _variations_at(chain, mid)
        go(a, mid, na)
        go(mid, b, n - na)

    total = _variations_at(chain, lo) - _variations_at(chain, hi)
    go(lo, hi, total)
    return out


def isolate_roots(w_ints: list[int], lo: Fraction, hi: Fraction) -> list[RootLoc]:
    """All distinct real roots of an integer polynomial in open (lo, hi).

    Returns RootLocs sorted by position, with pairwise disjoint intervals and
    each carrying the irreducible minimal polynomial of its root.  The
    endpoints lo and hi must not be roots.
    """
    w = _trim(list(w_ints))
    if not w:
        raise PreconditionError("cannot isolate roots of the zero polynomial")
    if _eval_list(_frac_list(w), lo) == 0 or _eval_list(_frac_list(w), hi) == 0:
        raise PreconditionError("interval endpoint is a root; deflate first")

    # peel off x^k so the canonical machinery (which quotients by units) is safe
    shift = 0
    while w and w[0] == 0:
        w = w[1:]
        shift += 1
    locs: list[RootLoc] = []
    if shift and lo < 0 < hi:
        locs.append(RootLoc((0, 1), Fraction(0), Fraction(0)))
    if _deg(w) >= 1:
        from .laurent import factor

        for f, _mult in factor(LaurentPoly.from_ordinary(w)):
            fi = f.to_int_list()
            if _deg(fi) == 1:
                r = Fraction(-fi[0], fi[1])
                if lo < r < hi:
                    locs.append(RootLoc(tuple(fi), r, r))
            else:
                locs.extend(_isolate_irreducible(fi, lo, hi))

    # make the intervals pairwise disjoint so the roots are totally ordered
    target = (hi - lo) / 4
    while True:
        locs = [refine_root(L, target) for L in locs]
        locs.sort(key=lambda L: (L.lo, L.hi))
        overlap = any(a.hi >= b.lo and not (a.is_exact and b.is_exact)
                      for a, b in zip(locs, locs[1:]))
        if not overlap:
            break
        target /= 4
    return locs


# ---------------------------------------------------------------------------
# the x = t + 1/t transform


def _chebyshev_like(j: int) -> list[int]:
    """C_j with t^j + t^-j = C_j(t + 1/t); C_0 = 2, C_1 = x."""
    if j == 0:
        return [2]
    prev, cur = [2], [0, 1]
    for _ in range(j - 1):
        nxt = [0] + cur  # multiply by x
        nxt = [a - b for a, b in zip(nxt, prev + [0] * (len(nxt) - len(prev)))]
        prev, cur = cur, _trim(nxt)
    return cur


def symmetric_transform(p: LaurentPoly) -> LaurentPoly:
    """W with p(t) = unit * t^m * W(t + 1/t), for palindromic even-span p.

    The canonical coefficient list of p must read the same both ways; the
    result is an ordinary integer polynomial in the variable x of degree m.
    """
    c = p.canonical().to_int_list()
    n = _deg(c)
    if c != c[::-1]:
        raise PreconditionError("polynomial is not coefficient-palindromic")
    if n % 2:
        raise PreconditionError("odd-degree palindromic polynomial; strip t+1 first")
    m = n // 2
    out = [c[m]]
    for j in range(1, m + 1):
        cj = _chebyshev_like(j)
        out = [a + c[m + j] * b for a, b in
               zip(out + [0] * (len(cj) - len(out)), cj + [0] * (len(out) - len(cj)))]
    return LaurentPoly.from_ordinary(_trim(out))


@lru_cache(maxsize=None)
def _totient(n: int) -> int:
    import sympy

    return int(sympy.totient(n))


@lru_cache(maxsize=None)
def inverse_totient(n: int) -> tuple[int, ...]:
    """All m with Euler phi(m) = n; phi(m) >= sqrt(m/2) bounds the search."""
    if n < 1:
        return ()
    return tuple(m for m in range(1, 2 * n * n + 3) if _totient(m) == n)


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> LaurentPoly:
    import sympy

    t = sympy.Symbol("t")
    coeffs = [int(c) for c in reversed(sympy.cyclotomic_poly(m, t).as_poly(t).all_coeffs())]
    return LaurentPoly.from_ordinary(coeffs)


def cyclotomic_order(f: LaurentPoly):
    """m when f is the m-th cyclotomic polynomial up to units, else None."""
    g = f.canonical()
    n = g.degree_span
    if n == 0:
        return None
    for m in inverse_totient(n):
        if g == cyclotomic_poly(m):
            return m
    return None


@lru_cache(maxsize=None)
def cyclotomic_x_transform(m: int) -> tuple[int, ...]:
    """Minimal polynomial of 2*cos(2*pi/m) as an ascending integer tuple.

    Defined for m >= 3 (below that the cyclotomic polynomial has odd degree
    and the evaluation point degenerates to x = +/-2).
    """
    if m < 3:
        raise PreconditionError("transform defined for m >= 3")
    return tuple(symmetric_transform(cyclotomic_poly(m)).to_int_list())


def unit_circle_root_count(f: LaurentPoly) -> int:
    """Number of roots of an irreducible f on the unit circle (with t = +/-1
    counted for the linear polynomials that have them)."""
    g = f.canonical()
    n = g.degree_span
    if n == 0:
        return 0
    ints = g.to_int_list()
    if n == 1:
        return 1 if abs(ints[0]) == abs(ints[1]) else 0
    if ints != ints[::-1]:
        # a circle root r forces 1/r = conj(r) to be a root as well, making an
        # irreducible polynomial self-inversive; non-palindromic means none
        return 0
    w = symmetric_transform(g).to_int_list()
    return 2 * count_distinct_roots_open(w, Fraction(-2), Fraction(2))


def all_roots_on_unit_circle(f: LaurentPoly) -> bool:
    g = f.canonical()
    return g.degree_span > 0 and unit_circle_root_count(g) == g.degree_span
