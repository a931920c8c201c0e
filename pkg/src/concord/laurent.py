"""Exact Laurent polynomial arithmetic over the rationals.

The ambient ring is Q[t, t^-1].  Its units are the monomials c*t^j with c a
nonzero rational, and almost every question downstream (coprimality, module
orders, Alexander polynomials) only makes sense up to multiplication by such a
unit.  The canonical form chosen here makes unit-equality a literal equality:

    * lowest exponent 0 (so the constant term is nonzero),
    * integer coefficients with content 1,
    * positive leading coefficient.

``normalize`` produces that form, and ``p.canonical() == q.canonical()`` is
the associate test written ``p = q`` up to units elsewhere in the docs.

Coefficients are ``fractions.Fraction`` throughout; floats are rejected at
construction because nothing in this package is allowed to be approximately
equal.  The heavy integer kernels (pseudo-division, the subresultant PRS for
gcd and resultant) work on plain ascending coefficient lists of Python ints
and are shared with the root-isolation module.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from .errors import PolyParseError, PreconditionError

Rational = Fraction

_Scalar = Union[int, Fraction]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"exact coefficient expected (int or Fraction), got {type(x).__name__}")


class LaurentPoly:
    """A Laurent polynomial with exact rational coefficients.

    Stored sparsely as a map from integer exponent to nonzero coefficient.
    Instances are immutable; all arithmetic returns fresh objects.

    >>> p = LaurentPoly({-2: 1, 1: 2})
    >>> str(p)
    '2t+t^-2'
    >>> str(p * p)
    '4t^2+4t^-1+t^-4'
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Union[Mapping[int, _Scalar], Iterable[tuple[int, _Scalar]], _Scalar] = ()):
        if isinstance(coeffs, (int, Fraction)):
            items: Iterable[tuple[int, _Scalar]] = [(0, coeffs)]
        elif isinstance(coeffs, Mapping):
            items = coeffs.items()
        else:
            items = coeffs
        c: dict[int, Fraction] = {}
        for e, v in items:
            if not isinstance(e, int):
                raise TypeError("exponents must be ints")
            v = _as_fraction(v)
            if v:
                c[e] = c.get(e, Fraction(0)) + v
                if not c[e]:
                    del c[e]
        object.__setattr__(self, "_c", c)

    def __setattr__(self, *a):
        raise AttributeError("LaurentPoly is immutable")

    # -- basic structure ---------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def t(cls, exp: int = 1) -> "LaurentPoly":
        return cls({exp: 1})

    @classmethod
    def from_ordinary(cls, coeffs: Iterable[_Scalar], min_exp: int = 0) -> "LaurentPoly":
        """Build from an ascending coefficient list starting at ``min_exp``."""
        return cls({min_exp + i: v for i, v in enumerate(coeffs)})

    @property
    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    @property
    def min_exp(self) -> int:
        if not self._c:
            raise PreconditionError("the zero polynomial has no exponent range")
        return min(self._c)

    @property
    def max_exp(self) -> int:
        if not self._c:
            raise PreconditionError("the zero polynomial has no exponent range")
        return max(self._c)

    @property
    def degree_span(self) -> int:
        """max_exp - min_exp; the degree of the ordinary representative."""
        return 0 if not self._c else self.max_exp - self.min_exp

    def coeff(self, exp: int) -> Fraction:
        return self._c.get(exp, Fraction(0))

    def items(self) -> Iterator[tuple[int, Fraction]]:
        return iter(sorted(self._c.items()))

    @property
    def is_unit(self) -> bool:
        """True when this is c*t^j, c != 0: a unit of Q[t, t^-1]."""
        return len(self._c) == 1

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "LaurentPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, Fraction(0)) + v
            if s:
                c[e] = s
            elif e in c:
                del c[e]
        return _raw(c)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return _raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            v = _as_fraction(other)
            if not v:
                return LaurentPoly()
            return _raw({e: c * v for e, c in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        c: dict[int, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                s = c.get(e, Fraction(0)) + v1 * v2
                if s:
                    c[e] = s
                elif e in c:
                    del c[e]
        return _raw(c)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if not isinstance(n, int):
            raise TypeError("integer power expected")
        if n < 0:
            if self.is_unit:
                e, v = next(iter(self._c.items()))
                return _raw({e * n: v ** n})
            raise PreconditionError("negative power of a non-unit Laurent polynomial")
        out = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, j: int) -> "LaurentPoly":
        """Multiply by t^j."""
        return _raw({e + j: v for e, v in self._c.items()})

    def substitute_power(self, n: int) -> "LaurentPoly":
        """p(t^n) for nonzero integer n (n may be negative)."""
        if n == 0:
            raise PreconditionError("substitution exponent must be nonzero")
        return _raw({e * n: v for e, v in self._c.items()})

    def evaluate(self, x):
        """Evaluate at x, which may be a Fraction, mpf/mpc, or complex."""
        if not self._c:
            return Fraction(0) if isinstance(x, (int, Fraction)) else 0 * x
        if isinstance(x, (int, Fraction)) and x == 0 and self.min_exp < 0:
            raise PreconditionError("cannot evaluate negative exponents at 0")
        total = None
        for e, v in self._c.items():
            term = (Fraction(v) if isinstance(x, (int, Fraction)) else v) * x ** e
            total = term if total is None else total + term
        return total

    # -- canonical form ----------------------------------------------------

    def unit_parts(self) -> tuple[Fraction, int, "LaurentPoly"]:
        """Split p = c * t^j * q with q canonical; errors on zero."""
        if not self._c:
            raise PreconditionError("the zero polynomial has no canonical form")
        j = self.min_exp
        denom_lcm = 1
        for v in self._c.values():
            denom_lcm = denom_lcm * v.denominator // math.gcd(denom_lcm, v.denominator)
        ints = {e - j: int(v * denom_lcm) for e, v in self._c.items()}
        content = 0
        for v in ints.values():
            content = math.gcd(content, abs(v))
        lead = ints[max(ints)]
        sign = 1 if lead > 0 else -1
        q = _raw({e: Fraction(v * sign, content) for e, v in ints.items()})
        return Fraction(sign * content, denom_lcm), j, q

    def canonical(self) -> "LaurentPoly":
        return self.unit_parts()[2]

    def canonical_key(self) -> tuple:
        """Hashable total identity of the associate class: ascending int coefficients."""
        q = self.canonical()
        n = q.max_exp
        return tuple(int(q.coeff(i)) for i in range(n + 1))

    def to_int_list(self) -> list[int]:
        """Ascending integer coefficients; requires an integer ordinary polynomial."""
        if not self._c:
            return []
        if self.min_exp < 0:
            raise PreconditionError("negative exponents present; canonicalize first")
        out = [0] * (self.max_exp + 1)
        for e, v in self._c.items():
            if v.denominator != 1:
                raise PreconditionError("non-integer coefficients; canonicalize first")
            out[e] = int(v)
        return out

    def to_fraction_list(self) -> list[Fraction]:
        """Ascending coefficients of the ordinary representative t^-min_exp * p."""
        if not self._c:
            return []
        j = self.min_exp
        out = [Fraction(0)] * (self.max_exp - j + 1)
        for e, v in self._c.items():
            out[e - j] = v
        return out

    # -- comparison and hashing -------------------------------------------

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._c.items())))

    def sort_key(self) -> tuple:
        """Deterministic ordering: by degree span, then ascending coefficients."""
        return (self.degree_span, self.canonical_key())

    # -- display -----------------------------------------------------------

    def __str__(self) -> str:
        return serialize(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({serialize(self)!r})"


def _raw(c: dict[int, Fraction]) -> LaurentPoly:
    p = LaurentPoly.__new__(LaurentPoly)
    object.__setattr__(p, "_c", c)
    return p


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly({0: x}) if x else LaurentPoly()
    return NotImplemented


# ---------------------------------------------------------------------------
# parsing


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|(t)|([+\-*/^()]))")


def _tokenize(text: str):
    toks = []
    i = 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if not m or m.end() == m.start():
            if text[i].isspace():
                i += 1
                continue
            raise PolyParseError("unexpected character", text, i)
        if m.group(1) is not None:
            toks.append(("num", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            toks.append(("t", "t", m.start(2)))
        else:
            toks.append((m.group(3), m.group(3), m.start(3)))
        i = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    """Recursive descent over: sums of products of powered atoms.

    The written grammar is sums of terms ``coeff? '*'? t ('^' int)?`` and bare
    coefficients; this parser accepts the natural superset with parentheses
    and implicit products so that inputs like ``(t-2)(2t-1)`` or ``3t-(3+1)``
    mean what they look like.  Negative powers are restricted to invertible
    bases (rationals and unit monomials).
    """

    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def err(self, msg):
        raise PolyParseError(msg, self.text, self.toks[self.i][2])

    def parse(self) -> LaurentPoly:
        if self.peek() == "end":
            self.err("empty polynomial")
        v = self.expr()
        if self.peek() != "end":
            self.err("trailing input after polynomial")
        return v if isinstance(v, LaurentPoly) else LaurentPoly({0: v})

    def expr(self):
        sign = 1
        while self.peek() in ("+", "-"):
            if self.next()[0] == "-":
                sign = -sign
        total = self.product() * sign
        while self.peek() in ("+", "-"):
            op = self.next()[0]
            sign = 1 if op == "+" else -1
            while self.peek() in ("+", "-"):
                if self.next()[0] == "-":
                    sign = -sign
            total = total + self.product() * sign
        return total

    def product(self):
        v = self.power()
        while True:
            nxt = self.peek()
            if nxt == "*":
                self.next()
                v = _mul_any(v, self.power())
            elif nxt in ("num", "t", "("):
                v = _mul_any(v, self.power())
            else:
                return v

    def power(self):
        pos = self.toks[self.i][2]
        base = self.atom()
        if self.peek() != "^":
            return base
        self.next()
        n = self.signed_int()
        if isinstance(base, Fraction):
            if base == 0 and n < 0:
                raise PolyParseError("zero to a negative power", self.text, pos)
            return base ** n
        try:
            return base ** n
        except PreconditionError as e:
            raise PolyParseError(str(e), self.text, pos) from None

    def atom(self):
        kind, value, pos = self.next()
        if kind == "num":
            if self.peek() == "/":
                save = self.i
                self.next()
                if self.peek() == "num":
                    den = self.next()[1]
                    if den == 0:
                        raise PolyParseError("division by zero", self.text, pos)
                    return Fraction(value, den)
                self.i = save
            return Fraction(value)
        if kind == "t":
            return LaurentPoly.t()
        if kind == "(":
            v = self.expr()
            if self.peek() != ")":
                self.err("expected ')'")
            self.next()
            return v
        raise PolyParseError("expected a coefficient, 't', or '('", self.text, pos)

    def signed_int(self) -> int:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.next()[0] == "-":
                sign = -sign
        kind, value, pos = self.next()
        if kind != "num":
            raise PolyParseError("expected an integer exponent", self.text, pos)
        return sign * value


def _mul_any(a, b):
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a * b
    if isinstance(a, Fraction):
        return b * a
    return a * b


def parse_poly(text: str) -> LaurentPoly:
    """Parse polynomial text into a LaurentPoly.

    >>> parse_poly("t^-2 + 2*t").coeff(-2)
    Fraction(1, 1)
    >>> str(parse_poly("(t-2)(2t-1)"))
    '2t^2-5t+2'
    """
    if not isinstance(text, str):
        raise TypeError("polynomial text expected")
    return _Parser(text).parse()


def serialize(p: LaurentPoly) -> str:
    """Canonical text: descending exponents, compact signs.

    Integer coefficients attach directly ("2t^2"); rational ones take an
    explicit star ("1/2*t") so the slash can never be misread as dividing t.
    """
    if p.is_zero:
        return "0"
    parts = []
    for e, v in sorted(p._c.items(), reverse=True):
        mag = abs(v)
        if e == 0:
            body = str(mag)
        else:
            tpart = "t" if e == 1 else f"t^{e}"
            if mag == 1:
                body = tpart
            elif mag.denominator == 1:
                body = f"{mag}{tpart}"
            else:
                body = f"{mag}*{tpart}"
        if not parts:
            parts.append(("-" if v < 0 else "") + body)
        else:
            parts.append(("-" if v < 0 else "+") + body)
    return "".join(parts)


# ---------------------------------------------------------------------------
# integer coefficient-list kernels (ascending order, index = exponent)


def _trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _deg(a: list) -> int:
    return len(a) - 1


def _zz_content(a: list[int]) -> int:
    g = 0
    for v in a:
        g = math.gcd(g, abs(v))
    return g


def _zz_primitive(a: list[int]) -> list[int]:
    g = _zz_content(a)
    if g in (0, 1):
        return a[:]
    return [v // g for v in a]


def _zz_mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _zz_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a modulo b."""
    da, db = _deg(a), _deg(b)
    lb = b[-1]
    r = a[:]
    e = da - db + 1
    while r and _deg(r) >= db:
        dr = _deg(r)
        coef = r[-1]
        r = [lb * x for x in r]
        shift = dr - db
        for i, y in enumerate(b):
            r[shift + i] -= coef * y
        _trim(r)
        e -= 1
    if e > 0:
        f = lb ** e
        r = [x * f for x in r]
    return r


def _zz_gcd(a: list[int], b: list[int]) -> list[int]:
    """Primitive PRS gcd of integer polynomials; result primitive, positive lc."""
    a, b = _zz_primitive(_trim(a[:])), _zz_primitive(_trim(b[:]))
    if not a:
        a, b = b, a
    if not b:
        if not a:
            return []
        return a if a[-1] > 0 else [-v for v in a]
    if _deg(a) < _deg(b):
        a, b = b, a
    while b:
        r = _zz_prem(a, b)
        a, b = b, _zz_primitive(_trim(r))
    return a if a[-1] > 0 else [-v for v in a]


def _zz_resultant(a: list[int], b: list[int]) -> int:
    """Resultant via the subresultant PRS (sign-exact)."""
    a, b = _trim(a[:]), _trim(b[:])
    if not a or not b:
        raise PreconditionError("resultant of the zero polynomial is undefined")
    da, db = _deg(a), _deg(b)
    if da == 0 and db == 0:
        return 1
    if da == 0:
        return a[0] ** db
    if db == 0:
        return b[0] ** da
    s = 1
    if da < db:
        a, b = b, a
        if da % 2 == 1 and db % 2 == 1:
            s = -s
        da, db = db, da
    ca, cb = _zz_content(a), _zz_content(b)
    a = [v // ca for v in a]
    b = [v // cb for v in b]
    t_factor = ca ** db * cb ** da
    g = 1
    h = 1
    while True:
        da, db = _deg(a), _deg(b)
        d = da - db
        if da % 2 == 1 and db % 2 == 1:
            s = -s
        r = _zz_prem(a, b)
        if not r:
            return 0
        a, b = b, [x // (g * h ** d) for x in r]
        g = a[-1]
        h = h if d == 0 else (g ** d) // (h ** (d - 1))
        if _deg(b) == 0:
            break
    da = _deg(a)
    return s * t_factor * (b[0] ** da) // (h ** (da - 1))


_GCD_PRIMES = (2305843009213693951, 2147483647, 999999937, 998244353)


def _fp_gcd_is_unit(a: list[int], b: list[int], p: int) -> bool:
    am = _trim([x % p for x in a])
    bm = _trim([x % p for x in b])
    if len(am) != len(a) or len(bm) != len(b):
        return False  # leading coefficient vanished; prime unusable
    while bm:
        inv = pow(bm[-1], -1, p)
        r = am[:]
        db = _deg(bm)
        while r and _deg(r) >= db:
            coef = (r[-1] * inv) % p
            shift = _deg(r) - db
            for i, y in enumerate(bm):
                r[shift + i] = (r[shift + i] - coef * y) % p
            _trim(r)
        am, bm = bm, r
    return _deg(am) == 0


def coprime_fast(p: "LaurentPoly", q: "LaurentPoly") -> bool:
    """Certified coprimality test, cheap in the common coprime case.

    A gcd of 1 modulo a prime that preserves both leading coefficients proves
    coprimality over Q; if a few primes all fail to certify, fall back to the
    exact PRS gcd.
    """
    a = p.canonical().to_int_list()
    b = q.canonical().to_int_list()
    if _deg(a) == 0 or _deg(b) == 0:
        return True
    for prime in _GCD_PRIMES:
        if _fp_gcd_is_unit(a, b, prime):
            return True
    return _deg(_zz_gcd(a, b)) == 0


# ---------------------------------------------------------------------------
# rational coefficient-list helpers (used by division and the Sturm module)


def _qq_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    if not b:
        raise PreconditionError("division by the zero polynomial")
    r = a[:]
    db = _deg(b)
    lb = b[-1]
    q = [Fraction(0)] * max(len(a) - db, 0)
    while r and _deg(r) >= db:
        coef = r[-1] / lb
        shift = _deg(r) - db
        q[shift] = coef
        for i, y in enumerate(b):
            r[shift + i] -= coef * y
        _trim(r)
    return _trim(q), r


# ---------------------------------------------------------------------------
# the public operations


def normalize(p: LaurentPoly) -> LaurentPoly:
    """The canonical associate of p; errors on the zero polynomial.

    >>> str(normalize(parse_poly("1/2*t^-1 - t^-2")))
    't-2'
    """
    return p.canonical()


def eq_up_to_unit(p: LaurentPoly, q: LaurentPoly) -> bool:
    """Associate test: equal after normalization."""
    if p.is_zero or q.is_zero:
        return p.is_zero and q.is_zero
    return p.canonical() == q.canonical()


def gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Greatest common divisor in canonical form.

    >>> str(gcd(parse_poly("2t^2-5t+2"), parse_poly("t-2")))
    't-2'
    """
    if p.is_zero and q.is_zero:
        raise PreconditionError("gcd(0, 0) is undefined")
    if p.is_zero:
        return q.canonical()
    if q.is_zero:
        return p.canonical()
    a = p.canonical().to_int_list()
    b = q.canonical().to_int_list()
    g = _zz_gcd(a, b)
    return LaurentPoly.from_ordinary(g).canonical()


def resultant(p: LaurentPoly, q: LaurentPoly) -> Fraction:
    """Resultant of the canonical ordinary representatives.

    Zero exactly when p and q share a root (equivalently a common factor,
    since canonical representatives never vanish at 0).
    """
    if p.is_zero or q.is_zero:
        raise PreconditionError("resultant with a zero polynomial is undefined")
    a = p.canonical().to_int_list()
    b = q.canonical().to_int_list()
    return Fraction(_zz_resultant(a, b))


def reciprocal(p: LaurentPoly) -> LaurentPoly:
    """normalize(p(t^-1)): the mirror of p, canonically.

    >>> str(reciprocal(parse_poly("t-2")))
    '2t-1'
    """
    if p.is_zero:
        raise PreconditionError("the zero polynomial has no reciprocal form")
    return p.substitute_power(-1).canonical()


def substitute_power(p: LaurentPoly, n: int) -> LaurentPoly:
    """p(t^n) for nonzero n."""
    return p.substitute_power(n)


def augmentation(p: LaurentPoly) -> Fraction:
    """Evaluation at t = 1, the augmentation of the group ring."""
    return p.evaluate(Fraction(1))


def is_self_reciprocal(p: LaurentPoly) -> bool:
    """True when p equals its reciprocal up to units."""
    return eq_up_to_unit(p, reciprocal(p))


@dataclass(frozen=True)
class Factorization:
    """p = unit_coeff * t^unit_exp * product of canonical irreducible powers."""

    unit_coeff: Fraction
    unit_exp: int
    factors: tuple[tuple[LaurentPoly, int], ...]

    def reassemble(self) -> LaurentPoly:
        out = LaurentPoly({self.unit_exp: self.unit_coeff})
        for f, m in self.factors:
            out = out * f ** m
        return out

    def __iter__(self):
        return iter(self.factors)

    def __str__(self) -> str:
        unit = f"{self.unit_coeff}"
        if self.unit_exp:
            unit += f"*t^{self.unit_exp}" if self.unit_exp != 1 else "*t"
        parts = [f"({serialize(f)})" + (f"^{m}" if m > 1 else "") for f, m in self.factors]
        return unit + ("*" if parts else "") + "*".join(parts)


def factor(p: LaurentPoly) -> Factorization:
    """Irreducible factorization over Q, unit split off.

    Factors are canonical and sorted by degree, then by ascending coefficient
    tuples, so the order is reproducible run to run.

    >>> [str(f) for f, m in factor(parse_poly("t^4-1"))]
    ['t-1', 't+1', 't^2+1']
    """
    if p.is_zero:
        raise PreconditionError("cannot factor the zero polynomial")
    unit_c, unit_e, body = p.unit_parts()
    if body == LaurentPoly.one():
        return Factorization(unit_c, unit_e, ())
    import sympy

    ints = body.to_int_list()
    tsym = sympy.Symbol("t")
    _, pairs = sympy.Poly(list(reversed(ints)), tsym, domain="ZZ").factor_list()
    out = []
    for f, mult in pairs:
        coeffs = [int(x) for x in reversed(f.all_coeffs())]
        q = LaurentPoly.from_ordinary(coeffs).canonical()
        out.append((q, int(mult)))
    out.sort(key=lambda fm: fm[0].sort_key())
    result = Factorization(unit_c, unit_e, tuple(out))
    check = LaurentPoly.one()
    for f, m in out:
        check = check * f ** m
    if check != body:
        raise AssertionError("factorization failed to reassemble; this is a bug")
    return result


def divides(d: LaurentPoly, p: LaurentPoly) -> bool:
    """Exact divisibility in Q[t, t^-1] (units divide everything)."""
    if d.is_zero:
        return p.is_zero
    if p.is_zero:
        return True
    _, rem = _qq_divmod(p.canonical().to_fraction_list(), d.canonical().to_fraction_list())
    return not rem


def exact_div(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """The true quotient p / d when d divides p exactly in Q[t, t^-1]."""
    if d.is_zero:
        raise PreconditionError("division by zero polynomial")
    if p.is_zero:
        return LaurentPoly.zero()
    cp, ep, pc = p.unit_parts()
    cd, ed, dc = d.unit_parts()
    q, rem = _qq_divmod(pc.to_fraction_list(), dc.to_fraction_list())
    if rem:
        raise PreconditionError("inexact polynomial division")
    return (LaurentPoly.from_ordinary(q) * (cp / cd)).shift(ep - ed)
