"""Alexander modules: presentations, cyclicity, the Blanchfield form, localization.

The homology of the infinite cyclic cover is presented over Q[t, t^-1] by
V - t V^T.  Diagonalizing that matrix (Smith form, with the change of basis
tracked) answers whether the module is cyclic and produces an explicit
generator.  On top of the presentation sits the Blanchfield linking form

    B(x, y) = x(1/t)^T (1-t) (V - t V^T)^{-1} y(t)

valued in Q(t) modulo Q[t, t^-1], conjugate-linear in the first slot.  A
submodule is isotropic when the form vanishes on it; for a cyclic module of
order d * reciprocal(d) the interesting candidates are the two halves.

Localization acts on the annihilator: each prime-power factor of the order
either survives or is killed against the target polynomial, in the classical
sense (coprime as written, or after flipping t to 1/t) or the strong sense
(no common factor under any pair of power substitutions), and the surviving
product classifies the localized module.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import product as iter_product
from typing import Optional, Sequence

from .coprimality import strongly_coprime
from .errors import PreconditionError
from .laurent import (
    LaurentPoly,
    _qq_divmod,
    augmentation,
    divides,
    eq_up_to_unit,
    exact_div,
    factor,
    gcd as poly_gcd,
    reciprocal,
    serialize,
)
from .seifert import SeifertMatrix, _poly_det

Matrix = tuple[tuple[LaurentPoly, ...], ...]


def alexander_presentation(v: SeifertMatrix) -> Matrix:
    """V - t V^T as a square matrix of polynomials."""
    t = LaurentPoly.t()
    n = v.size
    return tuple(
        tuple(
            LaurentPoly.from_ordinary([v.rows[i][j]]) - t * v.rows[j][i]
            for j in range(n)
        )
        for i in range(n)
    )


# ---------------------------------------------------------------------------
# Smith normal form over Q[t]


def _shift_nonnegative(p: LaurentPoly) -> LaurentPoly:
    return p.shift(-p.min_exp) if not p.is_zero and p.min_exp < 0 else p


def _poly_divmod(a: LaurentPoly, b: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Ordinary division a = q b + r for entries with no negative powers."""
    if a.is_zero:
        return LaurentPoly.zero(), LaurentPoly.zero()
    la = [Fraction(0)] * a.min_exp + a.to_fraction_list()
    lb = [Fraction(0)] * b.min_exp + b.to_fraction_list()
    q, r = _qq_divmod(la, lb)
    return LaurentPoly.from_ordinary(q), LaurentPoly.from_ordinary(r)


@dataclass(frozen=True)
class SmithForm:
    """Diagonalization u * presentation * (column ops) = diag.

    Row operations change the presented generators; the columns of ``u_inv``
    express the diagonal basis in the original generators, so when the module
    is cyclic the last column of ``u_inv`` is a generator.  Diagonal entries
    are canonical and divide one another in sequence.
    """

    diag: tuple[LaurentPoly, ...]
    u: Matrix
    u_inv: Matrix

    @property
    def invariant_factors(self) -> tuple[LaurentPoly, ...]:
        return tuple(d for d in self.diag if d.degree_span > 0 or d.is_zero)

    @property
    def is_cyclic(self) -> bool:
        return len(self.invariant_factors) <= 1

    @property
    def order(self) -> LaurentPoly:
        out = LaurentPoly.one()
        for d in self.diag:
            out = out * d
        return out.canonical() if not out.is_zero else out

    def generator(self) -> tuple[LaurentPoly, ...]:
        if not self.is_cyclic:
            raise PreconditionError("module is not cyclic; no single generator")
        n = len(self.diag)
        return tuple(self.u_inv[i][n - 1] for i in range(n))


def smith_normal_form(mat: Matrix) -> SmithForm:
    """Diagonalize a square polynomial matrix by elementary operations.

    Column operations mix relations and need no tracking; row operations are
    accumulated into u and its inverse.  Pivots are chosen by minimal degree
    for termination, and a final pass fixes the divisibility chain and
    normalizes the diagonal to canonical representatives.
    """
    n = len(mat)
    for row in mat:
        if len(row) != n:
            raise PreconditionError("presentation matrix must be square")
    a = [[_shift_nonnegative(x) for x in row] for row in mat]
    u = [[LaurentPoly.one() if i == j else LaurentPoly.zero() for j in range(n)]
         for i in range(n)]
    uinv = [[LaurentPoly.one() if i == j else LaurentPoly.zero() for j in range(n)]
            for i in range(n)]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        for r in range(n):
            uinv[r][i], uinv[r][j] = uinv[r][j], uinv[r][i]

    def row_add(i, j, c: LaurentPoly):
        # row_i += c * row_j, so u_inv column j absorbs the inverse move
        for k in range(n):
            a[i][k] = a[i][k] + c * a[j][k]
            u[i][k] = u[i][k] + c * u[j][k]
        for r in range(n):
            uinv[r][j] = uinv[r][j] - c * uinv[r][i]

    def row_scale(i, c: Fraction, e: int):
        # multiply row i by the unit c * t^e
        for k in range(n):
            a[i][k] = a[i][k].shift(e) * c
            u[i][k] = u[i][k].shift(e) * c
        inv_c = 1 / c
        for r in range(n):
            uinv[r][i] = uinv[r][i].shift(-e) * inv_c

    def col_swap(i, j):
        for r in range(n):
            a[r][i], a[r][j] = a[r][j], a[r][i]

    def col_add(i, j, c: LaurentPoly):
        for r in range(n):
            a[r][i] = a[r][i] + c * a[r][j]

    for k in range(n):
        while True:
            pivot = None
            best = None
            for i in range(k, n):
                for j in range(k, n):
                    if not a[i][j].is_zero:
                        key = (a[i][j].max_exp, i, j)
                        if best is None or key < best:
                            best, pivot = key, (i, j)
            if pivot is None:
                break
            pi, pj = pivot
            if pi != k:
                row_swap(k, pi)
            if pj != k:
                col_swap(k, pj)
            dirty = False
            for i in range(k + 1, n):
                if a[i][k].is_zero:
                    continue
                q, r = _poly_divmod(a[i][k], a[k][k])
                row_add(i, k, -q)
                if not r.is_zero:
                    dirty = True
            for j in range(k + 1, n):
                if a[k][j].is_zero:
                    continue
                q, r = _poly_divmod(a[k][j], a[k][k])
                col_add(j, k, -q)
                if not r.is_zero:
                    dirty = True
            if dirty:
                continue
            # the pivot must divide the remaining submatrix for the chain
            offender = None
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    if not a[i][j].is_zero and not divides(a[k][k], a[i][j]):
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_add(k, offender, LaurentPoly.one())
        if not a[k][k].is_zero:
            c, e, _ = a[k][k].unit_parts()
            row_scale(k, 1 / c, -e)

    diag = tuple(a[i][i].canonical() if not a[i][i].is_zero else LaurentPoly.zero()
                 for i in range(n))
    return SmithForm(
        diag=diag,
        u=tuple(tuple(r) for r in u),
        u_inv=tuple(tuple(r) for r in uinv),
    )


@dataclass(frozen=True)
class KnotModule:
    """The rational Alexander module of a Seifert matrix.

    ``generator`` is a vector of polynomials in the presented basis when the
    module is cyclic, None otherwise; non-cyclic modules keep only the
    presentation and the order.
    """

    order: LaurentPoly
    presentation: Matrix
    is_cyclic: bool
    generator: Optional[tuple[LaurentPoly, ...]]


def module_from_knot(v: SeifertMatrix) -> KnotModule:
    """Presentation plus cyclicity; the order is the Alexander polynomial."""
    mat = alexander_presentation(v)
    snf = smith_normal_form(mat)
    gen = snf.generator() if snf.is_cyclic else None
    return KnotModule(
        order=snf.order,
        presentation=mat,
        is_cyclic=snf.is_cyclic,
        generator=gen,
    )


def element_order(order: LaurentPoly, x: LaurentPoly) -> LaurentPoly:
    """Annihilator of the class of x in Q[t, t^-1]/(order).

    The zero class gets the unit annihilator; a generator gets the full
    order.
    """
    if order.is_zero:
        raise PreconditionError("order must be nonzero")
    return exact_div(order, poly_gcd(order, x)).canonical()


def presentation_element_order(mat: Matrix, x: Sequence[LaurentPoly]) -> LaurentPoly:
    """Annihilator of the class of x in the cokernel of a presentation.

    In the diagonal basis component i is annihilated by d_i, so the class of
    x has order lcm over i of d_i / gcd(d_i, y_i) with y = u x.  The zero
    polynomial signals infinite order, possible only when the presentation is
    singular.
    """
    snf = smith_normal_form(mat)
    n = len(snf.diag)
    if len(x) != n:
        raise PreconditionError("element length does not match the presentation")
    out = LaurentPoly.one()
    for i in range(n):
        yi = LaurentPoly.zero()
        for j in range(n):
            yi = yi + snf.u[i][j] * x[j]
        d = snf.diag[i]
        if d.is_zero:
            if not yi.is_zero:
                return LaurentPoly.zero()
            continue
        if yi.is_zero:
            continue
        part = exact_div(d, poly_gcd(d, yi))
        out = exact_div(out * part, poly_gcd(out, part))
    return out.canonical()


def generates(mat: Matrix, x: Sequence[LaurentPoly]) -> bool:
    """Whether x generates the cokernel (requires a cyclic torsion module)."""
    snf = smith_normal_form(mat)
    if not snf.is_cyclic:
        return False
    return eq_up_to_unit(presentation_element_order(mat, x), snf.order)


# ---------------------------------------------------------------------------
# rational functions and the Blanchfield form


@dataclass(frozen=True)
class RatFun:
    """A reduced fraction of Laurent polynomials.

    The denominator is canonical and shares no factor with the numerator, so
    equal values have equal representations.  Supports exactly the arithmetic
    the linking form needs.
    """

    num: LaurentPoly
    den: LaurentPoly

    @classmethod
    def make(cls, num: LaurentPoly, den: LaurentPoly) -> "RatFun":
        if den.is_zero:
            raise PreconditionError("zero denominator")
        if num.is_zero:
            return cls(LaurentPoly.zero(), LaurentPoly.one())
        g = poly_gcd(num, den)
        if g.degree_span > 0:
            num = exact_div(num, g)
            den = exact_div(den, g)
        c, e, dc = den.unit_parts()
        num = num.shift(-e) * (1 / c)
        return cls(num, dc)

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree_span == 0

    def __add__(self, other: "RatFun") -> "RatFun":
        return RatFun.make(
            self.num * other.den + other.num * self.den, self.den * other.den)

    def scale(self, p: LaurentPoly) -> "RatFun":
        return RatFun.make(self.num * p, self.den)

    def conj(self) -> "RatFun":
        return RatFun.make(self.num.substitute_power(-1),
                           self.den.substitute_power(-1))

    def __str__(self) -> str:
        if self.is_polynomial:
            return serialize(self.num)
        return f"({serialize(self.num)})/({serialize(self.den)})"


def _adjugate(mat: Matrix) -> Matrix:
    n = len(mat)
    out = [[LaurentPoly.zero()] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [mat[r][c] for c in range(n) if c != i]
                for r in range(n) if r != j
            ]
            d = _poly_det(minor)
            out[i][j] = -d if (i + j) % 2 else d
    return tuple(tuple(r) for r in out)


def blanchfield_matrix(v: SeifertMatrix) -> tuple[tuple[RatFun, ...], ...]:
    """(1-t) (V - t V^T)^{-1}, entries as reduced rational functions.

    Satisfies the Hermitian identity: transposing equals substituting 1/t.
    Rejects matrices whose Alexander polynomial is a unit, where the module
    is trivial and the form says nothing.
    """
    a = alexander_presentation(v)
    det = _poly_det([list(r) for r in a])
    if det.is_zero:
        raise PreconditionError("degenerate presentation; form undefined")
    if det.degree_span == 0:
        raise PreconditionError("trivial module; linking form undefined")
    adj = _adjugate(a)
    one_minus_t = LaurentPoly.from_ordinary([1, -1])
    return tuple(
        tuple(RatFun.make(one_minus_t * adj[i][j], det) for j in range(v.size))
        for i in range(v.size)
    )


def blanchfield_pairing(
    v: SeifertMatrix, x: Sequence[LaurentPoly], y: Sequence[LaurentPoly]
) -> RatFun:
    """B(x, y), conjugate-linear in x; a polynomial value means zero linking."""
    bm = blanchfield_matrix(v)
    n = v.size
    if len(x) != n or len(y) != n:
        raise PreconditionError("element length does not match the matrix")
    total = RatFun.make(LaurentPoly.zero(), LaurentPoly.one())
    for i in range(n):
        xi = x[i].substitute_power(-1)
        if xi.is_zero:
            continue
        for j in range(n):
            if y[j].is_zero:
                continue
            total = total + bm[i][j].scale(xi * y[j])
    return total


def is_isotropic(v: SeifertMatrix, elements: Sequence[Sequence[LaurentPoly]]) -> bool:
    """Whether the submodule spanned by the elements pairs to zero with itself."""
    for x in elements:
        for y in elements:
            if not blanchfield_pairing(v, x, y).is_polynomial:
                return False
    return True


def isotropic_submodule(v: SeifertMatrix, divisor: LaurentPoly) -> bool:
    """Isotropy of the cyclic submodule generated by divisor times a generator.

    Sesquilinearity reduces the check to the single pairing of the scaled
    generator with itself.
    """
    km = module_from_knot(v)
    if not km.is_cyclic:
        raise PreconditionError("module is not cyclic; pick elements directly")
    scaled = tuple(divisor * g for g in km.generator)
    return is_isotropic(v, [scaled])


# ---------------------------------------------------------------------------
# distinguished submodules of a cyclic module


@dataclass(frozen=True)
class Submodule:
    """A submodule of Q[t, t^-1]/(order), generated by a divisor of the order.

    Labels: P0 is the zero submodule; when the order splits as d * rec(d)
    with d irreducible the halves get P+ and P-, collapsed to P+- if they
    agree; everything else is labeled other.
    """

    label: str
    generator_multiple: LaurentPoly


def reciprocal_half(order: LaurentPoly) -> Optional[LaurentPoly]:
    """The irreducible d with order = d * reciprocal(d) up to units, if any.

    This is the shape a slice pattern's module order takes.  When d is its
    own reciprocal the order is d squared and the two halves coincide.
    """
    if order.is_zero or order.degree_span == 0:
        return None
    fac = factor(order)
    if len(fac.factors) == 1 and fac.factors[0][1] == 2:
        d = fac.factors[0][0]
        if eq_up_to_unit(d, reciprocal(d)):
            return d
    elif (len(fac.factors) == 2
          and fac.factors[0][1] == fac.factors[1][1] == 1
          and eq_up_to_unit(fac.factors[0][0], reciprocal(fac.factors[1][0]))):
        return fac.factors[0][0]
    return None


def proper_submodules(order: LaurentPoly) -> list[Submodule]:
    """All proper submodules of the cyclic module of the given order, labeled.

    Submodules correspond to divisors of the order.  The whole module is
    omitted, and the zero submodule appears as P0 with the order itself as
    its generating multiple.
    """
    if order.is_zero or order.degree_span == 0:
        raise PreconditionError("order must be a nonzero non-unit")
    fac = factor(order)
    half = reciprocal_half(order)

    divisors: list[LaurentPoly] = []
    exps = [range(e + 1) for _, e in fac.factors]
    for combo in iter_product(*exps):
        d = LaurentPoly.one()
        for (f, _), e in zip(fac.factors, combo):
            d = d * f**e
        divisors.append(d.canonical())
    divisors.sort(key=lambda d: d.sort_key())

    out = []
    order_c = order.canonical()
    for d in divisors:
        if d.degree_span == 0:
            continue  # generates the whole module
        if d == order_c:
            out.append(Submodule("P0", d))
        elif half is not None and d == half.canonical():
            if eq_up_to_unit(half, reciprocal(half)):
                out.append(Submodule("P+-", d))
            else:
                out.append(Submodule("P+", d))
        elif half is not None and eq_up_to_unit(d, reciprocal(half)):
            out.append(Submodule("P-", d))
        else:
            out.append(Submodule("other", d))
    return out


# ---------------------------------------------------------------------------
# localization


class LocalClass(Enum):
    TORSION = "torsion"
    TORSION_FREE = "torsion_free"
    MIXED = "mixed"


@dataclass(frozen=True)
class LocalizationResult:
    order: LaurentPoly
    target: LaurentPoly
    mode: str
    killed: tuple[tuple[LaurentPoly, int], ...]
    survivor: LaurentPoly
    classification: LocalClass
    exact: bool

    def to_json_dict(self) -> dict:
        return {
            "order": serialize(self.order.canonical()),
            "target": serialize(self.target.canonical()),
            "mode": self.mode,
            "killed": [
                {"factor": serialize(f), "multiplicity": e} for f, e in self.killed
            ],
            "survivor": serialize(self.survivor),
            "classification": self.classification.value,
            "exact": self.exact,
        }


def localize(
    order: LaurentPoly,
    target: LaurentPoly,
    mode: str = "classical",
    bound: int = 12,
) -> LocalizationResult:
    """Kill the prime-power factors of the order invertible away from target.

    A factor r dies when the localization makes it act invertibly: it must
    not vanish at 1, and must be coprime to the target, classically (plain
    gcd, with the flip t to 1/t of r allowed to witness it) or strongly (no
    common factor under any pair of power substitutions, which keeps
    power-linked factors alive).  What remains classifies the localized
    module: torsion when everything died, torsion-free when nothing did,
    mixed in between.
    """
    if mode not in ("classical", "strong"):
        raise PreconditionError(f"unknown localization mode: {mode}")
    if order.is_zero or target.is_zero:
        raise PreconditionError("order and target must be nonzero")
    if augmentation(order) == 0:
        raise PreconditionError(
            "order vanishes at 1; localization denominators must not")
    fac = factor(order)
    killed = []
    survivor = LaurentPoly.one()
    exact = True
    for f, e in fac.factors:
        dies = False
        if augmentation(f) != 0:
            if mode == "classical":
                dies = (
                    poly_gcd(f, target).degree_span == 0
                    or poly_gcd(reciprocal(f), target).degree_span == 0
                )
            else:
                verdict = strongly_coprime(f, target, bound)
                dies = not verdict.is_isogenous
                if dies and not verdict.exact:
                    exact = False
        if dies:
            killed.append((f, e))
        else:
            survivor = survivor * f**e
    survivor = survivor.canonical()
    if not killed:
        cls = LocalClass.TORSION_FREE
    elif survivor.degree_span == 0:
        cls = LocalClass.TORSION
    else:
        cls = LocalClass.MIXED
    return LocalizationResult(
        order=order,
        target=target,
        mode=mode,
        killed=tuple(killed),
        survivor=survivor,
        classification=cls,
        exact=exact,
    )


def localized_injects(
    order: LaurentPoly, target: LaurentPoly, mode: str = "classical", bound: int = 12
) -> bool:
    """Whether the module maps into its localization with nothing lost."""
    result = localize(order, target, mode, bound)
    return result.classification is LocalClass.TORSION_FREE
