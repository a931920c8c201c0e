"""Seifert matrices and the invariants computed from them.

A Seifert matrix V is a square integer matrix with det(V - V^T) = 1; the
unknot gets the empty matrix.  From V this module derives

  * the Alexander polynomial det(V - t V^T), canonically normalized;
  * the Levine-Tristram signature function on the unit circle, evaluated
    exactly at rational points omega = ((1-u^2) + 2ui)/(1+u^2) by Hermitian
    elimination over the Gaussian rationals;
  * the full signature profile: the jump angles (circle roots of the
    Alexander polynomial) together with the constant signature on each arc
    between them;
  * the integral of the signature over the circle, exact as a fraction when
    every jump angle is a rational multiple of pi, numeric otherwise;
  * the Arf invariant, read off the Alexander polynomial at t = -1 mod 8.

Angles are uniformly reported as theta/pi, so the profile lives on [0, 1];
conjugation symmetry makes the lower semicircle redundant.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Optional, Union

import mpmath

from .errors import JumpPointError, PreconditionError
from .laurent import LaurentPoly, divides, exact_div, normalize, serialize
from .sturm import (
    RootLoc,
    cyclotomic_poly,
    cyclotomic_x_transform,
    inverse_totient,
    isolate_roots,
    refine_root,
    symmetric_transform,
)

# ---------------------------------------------------------------------------
# the matrix itself


@dataclass(frozen=True)
class SeifertMatrix:
    """Integer Seifert matrix; rows are stored as a tuple of tuples.

    Validation requires det(V - V^T) == 1.  That forces even size (an odd
    antisymmetric matrix is singular) and equals the usual unimodularity of
    the intersection form on a genus-g surface.  The empty matrix stands for
    the unknot.
    """

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        for r in self.rows:
            if len(r) != n:
                raise PreconditionError("Seifert matrix must be square")
            for x in r:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise PreconditionError("Seifert matrix entries must be integers")
        anti = [[self.rows[i][j] - self.rows[j][i] for j in range(n)] for i in range(n)]
        if _int_det(anti) != 1:
            raise PreconditionError(
                "not a Seifert matrix: det(V - V^T) must be 1")

    @classmethod
    def from_rows(cls, rows) -> "SeifertMatrix":
        conv = []
        for r in rows:
            row = []
            for x in r:
                i = int(x)
                if i != x:
                    raise PreconditionError(
                        "Seifert matrix entries must be integers")
                row.append(i)
            conv.append(tuple(row))
        return cls(tuple(conv))

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def genus(self) -> int:
        return self.size // 2

    def transpose(self) -> "SeifertMatrix":
        n = self.size
        return SeifertMatrix(tuple(tuple(self.rows[j][i] for j in range(n))
                                   for i in range(n)))

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]


def _int_det(m: list[list[int]]) -> int:
    """Fraction-free Gaussian determinant of an integer matrix."""
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


UNKNOT = SeifertMatrix(())


def _poly_det(m: list[list[LaurentPoly]]) -> LaurentPoly:
    """Bareiss determinant over the polynomial ring; divisions are exact."""
    n = len(m)
    if n == 0:
        return LaurentPoly.one()
    a = [row[:] for row in m]
    sign = 1
    prev = LaurentPoly.one()
    for k in range(n - 1):
        if a[k][k].is_zero:
            for r in range(k + 1, n):
                if not a[r][k].is_zero:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return LaurentPoly.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = exact_div(num, prev) if not num.is_zero else LaurentPoly.zero()
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def connected_sum(a: SeifertMatrix, b: SeifertMatrix) -> SeifertMatrix:
    """Block sum; invariants add (the signature function pointwise)."""
    n, m = a.size, b.size
    rows = []
    for i in range(n):
        rows.append(a.rows[i] + (0,) * m)
    for i in range(m):
        rows.append((0,) * n + b.rows[i])
    return SeifertMatrix(tuple(rows))


def mirror(v: SeifertMatrix) -> SeifertMatrix:
    """Seifert matrix of the mirror image: -V^T.

    The Alexander polynomial is unchanged while every signature flips sign.
    """
    t = v.transpose()
    return SeifertMatrix(tuple(tuple(-x for x in r) for r in t.rows))


# ---------------------------------------------------------------------------
# Alexander polynomial and Arf


@lru_cache(maxsize=None)
def alexander_poly(v: SeifertMatrix) -> LaurentPoly:
    """det(V - t V^T), canonically normalized.

    Always palindromic with |value at 1| = 1, so t = +/-1 is never a root.
    """
    n = v.size
    t = LaurentPoly.t()
    m = [
        [
            LaurentPoly.from_ordinary([v.rows[i][j]]) - t * v.rows[j][i]
            for j in range(n)
        ]
        for i in range(n)
    ]
    return normalize(_poly_det(m))


def arf(v: SeifertMatrix) -> int:
    """0 or 1 according to the Alexander polynomial at -1 modulo 8.

    The determinant of the symmetrized matrix is odd, so the value there is
    an odd integer; residues 1 and 7 mean Arf 0, residues 3 and 5 mean 1.
    """
    d = alexander_poly(v).evaluate(Fraction(-1))
    r = int(d) % 8
    return 0 if r in (1, 7) else 1


# ---------------------------------------------------------------------------
# exact Hermitian arithmetic over the Gaussian rationals

_G = tuple[Fraction, Fraction]  # re + im*i


def _g_add(a: _G, b: _G) -> _G:
    return (a[0] + b[0], a[1] + b[1])


def _g_sub(a: _G, b: _G) -> _G:
    return (a[0] - b[0], a[1] - b[1])


def _g_mul(a: _G, b: _G) -> _G:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _g_div(a: _G, b: _G) -> _G:
    d = b[0] * b[0] + b[1] * b[1]
    return ((a[0] * b[0] + a[1] * b[1]) / d, (a[1] * b[0] - a[0] * b[1]) / d)


def _g_conj(a: _G) -> _G:
    return (a[0], -a[1])


def _hermitian_signature(h: list[list[_G]]) -> int:
    """Signature of a Hermitian Gaussian-rational matrix, by elimination.

    Nonzero diagonal entries are real and contribute their sign before the
    usual Schur complement step.  When the whole diagonal vanishes, a nonzero
    off-diagonal entry spans a hyperbolic 2x2 block of signature zero, and
    its Schur complement removes both indices at once.  Inertia is additive
    over these splittings, so the running tally is the signature.
    """
    idx = list(range(len(h)))
    sig = 0
    while idx:
        p = next((i for i in idx if h[i][i][0]), None)
        if p is not None:
            d = h[p][p]
            sig += 1 if d[0] > 0 else -1
            idx.remove(p)
            for i in idx:
                for j in idx:
                    h[i][j] = _g_sub(h[i][j], _g_div(_g_mul(h[i][p], h[p][j]), d))
            continue
        pq = next(
            ((i, j) for i in idx for j in idx if i < j and h[i][j] != (0, 0)), None)
        if pq is None:
            break
        p, q = pq
        m = h[p][q]
        mc = _g_conj(m)
        idx.remove(p)
        idx.remove(q)
        for i in idx:
            for j in idx:
                corr = _g_add(
                    _g_div(_g_mul(h[i][q], h[p][j]), m),
                    _g_div(_g_mul(h[i][p], h[q][j]), mc),
                )
                h[i][j] = _g_sub(h[i][j], corr)
    return sig


def _form_at_omega(v: SeifertMatrix, om: _G) -> list[list[_G]]:
    """(1-omega) V + (1-conj omega) V^T as a Gaussian-rational matrix."""
    n = v.size
    a = (1 - om[0], -om[1])
    b = _g_conj(a)
    return [
        [
            _g_add(
                _g_mul(a, (Fraction(v.rows[i][j]), Fraction(0))),
                _g_mul(b, (Fraction(v.rows[j][i]), Fraction(0))),
            )
            for j in range(n)
        ]
        for i in range(n)
    ]


def _omega_from_u(u: Fraction) -> _G:
    """The rational circle point with u = tan(theta/2)."""
    d = 1 + u * u
    return ((1 - u * u) / d, 2 * u / d)


def _signature_at_rational_point(v: SeifertMatrix, u: Fraction) -> int:
    return _hermitian_signature(_form_at_omega(v, _omega_from_u(u)))


# ---------------------------------------------------------------------------
# jump isolation and the profile


@dataclass(frozen=True)
class Jump:
    """A discontinuity of the signature function in theta/pi units.

    ``angle_over_pi`` is set when the angle is an exact rational multiple of
    pi, which happens exactly when the jump root is a cyclotomic one.  The
    location is always certified by the isolating interval for x = 2 cos
    theta in ``loc`` (exactness included, e.g. x = 0 at theta/pi = 1/2).
    """

    loc: RootLoc
    angle_over_pi: Optional[Fraction]
    sigma_before: int
    sigma_after: int

    @property
    def exact(self) -> bool:
        return self.angle_over_pi is not None

    @property
    def delta(self) -> int:
        return self.sigma_after - self.sigma_before

    def angle_value(self, dps: int = 30) -> mpmath.mpf:
        """theta/pi as a float, to ``dps`` working digits."""
        if self.angle_over_pi is not None:
            with mpmath.workdps(dps):
                return mpmath.mpf(self.angle_over_pi.numerator) / self.angle_over_pi.denominator
        loc = refine_root(self.loc, Fraction(1, 10 ** (dps + 5)))
        with mpmath.workdps(dps + 10):
            x = mpmath.mpf(loc.midpoint().numerator) / loc.midpoint().denominator
            return +(mpmath.acos(x / 2) / mpmath.pi)


@dataclass(frozen=True)
class SignatureProfile:
    """Jumps in ascending angle order plus the signature on each open arc.

    ``arc_sigmas`` has one more entry than ``jumps``; entry i is the constant
    value between jump i-1 and jump i (with the circle endpoints theta = 0
    and theta = pi closing the ends).  ``exact`` means every jump angle is a
    rational multiple of pi.
    """

    jumps: tuple[Jump, ...]
    arc_sigmas: tuple[int, ...]

    @property
    def exact(self) -> bool:
        return all(j.exact for j in self.jumps)

    def arc_table(self, dps: int = 15) -> list[tuple[mpmath.mpf, mpmath.mpf, int]]:
        """(start, end, sigma) rows in theta/pi units, floats."""
        with mpmath.workdps(dps):
            cuts = [mpmath.mpf(0)]
            cuts += [j.angle_value(dps) for j in self.jumps]
            cuts.append(mpmath.mpf(1))
        return [
            (cuts[i], cuts[i + 1], self.arc_sigmas[i])
            for i in range(len(self.arc_sigmas))
        ]


def _exact_angle_assignments(locs: list[RootLoc]) -> dict[int, Fraction]:
    """Map positions in ``locs`` to exact theta/pi values where possible.

    A location gets an exact angle when its minimal polynomial is the
    x-transform of a cyclotomic polynomial of some order m.  The conjugate
    roots are 2 cos(2 pi j / m) with j coprime to m below m/2, decreasing in
    j; the input arrives sorted by decreasing x, so ranks alone pin each
    root's j in increasing order.
    """
    by_minpoly: dict[tuple, list[int]] = {}
    for i, loc in enumerate(locs):
        by_minpoly.setdefault(loc.minpoly, []).append(i)
    out: dict[int, Fraction] = {}
    for mp_ints, positions in by_minpoly.items():
        deg = len(mp_ints) - 1
        order = None
        for m in inverse_totient(2 * deg):
            if m >= 3 and cyclotomic_x_transform(m) == mp_ints:
                order = m
                break
        if order is None:
            continue
        js = sorted(
            j for j in range(1, (order + 1) // 2 + 1)
            if 2 * j < order and _coprime(j, order)
        )
        if len(js) != len(positions):
            continue
        for pos, j in zip(positions, js):
            out[pos] = Fraction(2 * j, order)
    return out


def _coprime(a: int, b: int) -> bool:
    from math import gcd

    return gcd(a, b) == 1


def _disjoint_descending(locs: list[RootLoc]) -> list[RootLoc]:
    """Refine until enclosures are strictly separated inside (-2, 2)."""
    locs = sorted(locs, key=lambda l: l.lo, reverse=True)
    width = Fraction(1, 64)
    while True:
        locs = [refine_root(l, width) for l in locs]
        ok = all(locs[i + 1].hi < locs[i].lo for i in range(len(locs) - 1))
        if ok and (not locs or (locs[0].hi < 2 and locs[-1].lo > -2)):
            return locs
        width /= 16


def _rational_u_with_square_between(a: Fraction, b: Optional[Fraction]) -> Fraction:
    """A positive rational u with a < u^2 < b, by Stern-Brocot search.

    ``b`` may be None for an unbounded search upward; then the smallest
    integer past sqrt(a) does the job.
    """
    if b is None:
        return Fraction(isqrt(int(a)) + 1)
    lo_n, lo_d = 0, 1
    hi_n, hi_d = 1, 0
    while True:
        mn, md = lo_n + hi_n, lo_d + hi_d
        m = Fraction(mn, md)
        s = m * m
        if s <= a:
            lo_n, lo_d = mn, md
        elif s >= b:
            hi_n, hi_d = mn, md
        else:
            return m


def _sample_u_in_x_gap(glo: Fraction, ghi: Fraction) -> Fraction:
    """u = tan(theta/2) hitting the open x-interval (glo, ghi) in (-2, 2].

    x(u) = 2(1-u^2)/(1+u^2) decreases in u, so the constraint is an open
    interval condition on u^2; glo = -2 opens the interval upward.
    """
    a = (2 - ghi) / (2 + ghi)
    b = None if glo == -2 else (2 - glo) / (2 + glo)
    return _rational_u_with_square_between(a, b)


@lru_cache(maxsize=None)
def signature_profile(v: SeifertMatrix) -> SignatureProfile:
    """The complete signature function of v over the upper semicircle.

    Circle roots of the Alexander polynomial are isolated through the
    symmetric substitution x = t + 1/t, whose real roots in (-2, 2) are in
    order-reversing bijection with the jump angles.  Each arc between
    consecutive jumps gets its signature from one exact evaluation at a
    rational circle point inside it.
    """
    delta = alexander_poly(v)
    jumps_x: list[RootLoc] = []
    if delta.degree_span > 0:
        w = symmetric_transform(delta)
        jumps_x = _disjoint_descending(
            isolate_roots(w.to_int_list(), Fraction(-2), Fraction(2)))
    exact_angles = _exact_angle_assignments(jumps_x)

    sigmas = []
    for i in range(len(jumps_x) + 1):
        ghi = jumps_x[i - 1].lo if i > 0 else Fraction(2)
        glo = jumps_x[i].hi if i < len(jumps_x) else Fraction(-2)
        u = _sample_u_in_x_gap(glo, ghi)
        sigmas.append(_signature_at_rational_point(v, u))

    jumps = tuple(
        Jump(
            loc=loc,
            angle_over_pi=exact_angles.get(i),
            sigma_before=sigmas[i],
            sigma_after=sigmas[i + 1],
        )
        for i, loc in enumerate(jumps_x)
    )
    return SignatureProfile(jumps=jumps, arc_sigmas=tuple(sigmas))


def signature_at(v: SeifertMatrix, angle_over_pi: Fraction) -> int:
    """The signature at omega = exp(i pi a/b), decided exactly.

    The endpoint 0 gives 0 and the endpoint 1 is the classical signature.
    Interior rational angles are roots of unity; the evaluation point is a
    jump precisely when its cyclotomic polynomial divides the Alexander
    polynomial, and then a JumpPointError is raised since the two one-sided
    values differ there in general.
    """
    a = Fraction(angle_over_pi)
    if not 0 <= a <= 1:
        raise PreconditionError("angle must lie in [0, 1] as a fraction of pi")
    if a == 0:
        return 0
    if a == 1:
        h = [
            [(Fraction(2 * (v.rows[i][j] + v.rows[j][i])), Fraction(0))
             for j in range(v.size)]
            for i in range(v.size)
        ]
        return _hermitian_signature(h)
    num, den = a.numerator, a.denominator
    order = 2 * den if num % 2 else den
    if order >= 3 and divides(cyclotomic_poly(order), alexander_poly(v)):
        raise JumpPointError(
            f"signature jumps at theta = {num}/{den} pi; take one-sided values")
    prof = signature_profile(v)
    before = 0
    for i, j in enumerate(prof.jumps):
        side = _angle_side(j, a)
        if side < 0:
            before = i + 1
        else:
            break
    return prof.arc_sigmas[before]


def _dyadic_fraction(raw) -> Fraction:
    """Exact value of a raw mpf tuple (sign, mantissa, exponent, bitcount)."""
    sign, man, exp, _ = raw
    if man == 0 and exp != 0:
        raise PreconditionError("non-finite value in interval bound")
    f = Fraction(man << exp) if exp >= 0 else Fraction(man, 1 << -exp)
    return -f if sign else f


def _angle_side(jump: Jump, a: Fraction) -> int:
    """-1 if the jump angle is below a, +1 if above; never equal here."""
    if jump.angle_over_pi is not None:
        if jump.angle_over_pi == a:
            raise JumpPointError("signature jumps at this angle")
        return -1 if jump.angle_over_pi < a else 1
    # compare x = 2 cos(pi a) against the jump's x-enclosure through a
    # certified interval; the jump root is irrational in theta/pi units, so
    # refining both sides eventually separates them
    loc = jump.loc
    dps = 30
    saved = mpmath.iv.dps
    try:
        while True:
            mpmath.iv.dps = dps
            x = 2 * mpmath.iv.cos(mpmath.iv.pi * a.numerator / a.denominator)
            raw_lo, raw_hi = x._mpi_
            xlo, xhi = _dyadic_fraction(raw_lo), _dyadic_fraction(raw_hi)
            if xhi < loc.lo:
                # x strictly below the enclosure puts a past the jump angle
                return -1
            if xlo > loc.hi:
                return 1
            loc = refine_root(loc, loc.width / 16)
            dps += 20
    finally:
        mpmath.iv.dps = saved


def rho0(v: SeifertMatrix, precision: int = 30) -> Union[Fraction, mpmath.mpf]:
    """Integral of the signature over the circle, normalized by pi.

    Equals the sum of sigma * arc-length over the profile in theta/pi units.
    A Fraction comes back when every jump is cyclotomic; otherwise an mpf
    carrying ``precision`` significant digits.
    """
    prof = signature_profile(v)
    if prof.exact:
        total = Fraction(0)
        cuts = [Fraction(0)] + [j.angle_over_pi for j in prof.jumps] + [Fraction(1)]
        for i, s in enumerate(prof.arc_sigmas):
            total += s * (cuts[i + 1] - cuts[i])
        return total
    with mpmath.workdps(precision + 10):
        cuts = [mpmath.mpf(0)]
        for j in prof.jumps:
            if j.angle_over_pi is not None:
                cuts.append(
                    mpmath.mpf(j.angle_over_pi.numerator) / j.angle_over_pi.denominator)
            else:
                cuts.append(j.angle_value(precision + 10))
        cuts.append(mpmath.mpf(1))
        total = mpmath.mpf(0)
        for i, s in enumerate(prof.arc_sigmas):
            total += s * (cuts[i + 1] - cuts[i])
        with mpmath.workdps(precision):
            return +total


# ---------------------------------------------------------------------------
# serialization


def knot_json_dict(v: SeifertMatrix, name: Optional[str] = None) -> dict:
    d = {"seifert": v.to_lists()}
    if name is not None:
        d["name"] = name
    return d


def knot_from_json(text: str) -> tuple[SeifertMatrix, Optional[str]]:
    """Parse {"seifert": [[...]], "name": ...}; name is optional."""
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise PreconditionError(f"bad knot JSON: {e}") from None
    if not isinstance(d, dict) or "seifert" not in d:
        raise PreconditionError("knot JSON needs a 'seifert' matrix field")
    return SeifertMatrix.from_rows(d["seifert"]), d.get("name")


def profile_csv(v: SeifertMatrix, dps: int = 15) -> str:
    """Arc table as CSV: start_over_pi, end_over_pi, sigma."""
    lines = ["start_over_pi,end_over_pi,sigma"]
    for s, e, sig in signature_profile(v).arc_table(dps):
        lines.append(f"{mpmath.nstr(s, 12)},{mpmath.nstr(e, 12)},{sig}")
    return "\n".join(lines) + "\n"


def profile_svg(v: SeifertMatrix, width: int = 640, height: int = 320) -> str:
    """Step plot of the signature over theta/pi in [0, 1], as a standalone SVG."""
    prof = signature_profile(v)
    table = prof.arc_table(15)
    vals = [sig for _, _, sig in table]
    lo = min(min(vals), 0) - 1
    hi = max(max(vals), 0) + 1
    ml, mr, mt, mb = 46, 16, 16, 34
    iw, ih = width - ml - mr, height - mt - mb

    def xx(t):
        return ml + float(t) * iw

    def yy(s):
        return mt + (hi - s) / (hi - lo) * ih

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{ml}" y1="{yy(0):.1f}" x2="{ml + iw}" y2="{yy(0):.1f}" '
        'stroke="#999" stroke-width="1"/>',
    ]
    for s in range(int(lo) + 1, int(hi)):
        parts.append(
            f'<text x="{ml - 8}" y="{yy(s) + 4:.1f}" text-anchor="end" '
            f'fill="#444">{s}</text>')
    for frac_label in (0, 0.25, 0.5, 0.75, 1):
        parts.append(
            f'<text x="{xx(frac_label):.1f}" y="{height - 10}" text-anchor="middle" '
            f'fill="#444">{frac_label}</text>')
    for (s, e, sig) in table:
        parts.append(
            f'<line x1="{xx(s):.1f}" y1="{yy(sig):.1f}" x2="{xx(e):.1f}" '
            f'y2="{yy(sig):.1f}" stroke="#1a6" stroke-width="2.5"/>')
    for i in range(len(prof.jumps)):
        e = table[i][1]
        parts.append(
            f'<line x1="{xx(e):.1f}" y1="{mt}" x2="{xx(e):.1f}" y2="{mt + ih}" '
            'stroke="#c33" stroke-width="1" stroke-dasharray="4 3"/>')
    parts.append(
        f'<text x="{ml + iw / 2:.1f}" y="{height - 24}" text-anchor="middle" '
        'fill="#222">angle / pi</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
