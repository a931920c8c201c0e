"""Seifert matrices: Alexander polynomial, signatures, profiles, Arf."""

import json
import random
from fractions import Fraction

import mpmath
import pytest

from concord.errors import JumpPointError, PreconditionError
from concord.laurent import eq_up_to_unit, is_self_reciprocal, parse_poly, serialize
from concord.seifert import (
    UNKNOT,
    SeifertMatrix,
    alexander_poly,
    arf,
    connected_sum,
    knot_from_json,
    knot_json_dict,
    mirror,
    profile_csv,
    profile_svg,
    rho0,
    signature_at,
    signature_profile,
)

TREFOIL = SeifertMatrix.from_rows([[-1, 1], [0, -1]])
FIG8 = SeifertMatrix.from_rows([[1, 1], [0, -1]])
CINQ = SeifertMatrix.from_rows(
    [[-1, 1, 0, 0], [0, -1, 1, 0], [0, 0, -1, 1], [0, 0, 0, -1]])
# genus-1 matrix with Alexander polynomial 2t^2 - 3t + 2; its one signature
# jump sits at x = 3/2, an angle that is not a rational multiple of pi
V52 = SeifertMatrix.from_rows([[1, 2], [1, 4]])


def random_seifert(rng: random.Random, genus: int) -> SeifertMatrix:
    """S + N with S symmetric and N placing the standard symplectic pairs."""
    n = 2 * genus
    s = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            s[i][j] = s[j][i] = rng.randint(-2, 2)
    for g in range(genus):
        s[2 * g][2 * g + 1] += 1
    return SeifertMatrix.from_rows(s)


def random_unimodular(rng: random.Random, n: int) -> list[list[int]]:
    """A product of random integer shears and swaps, determinant +/-1."""
    p = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(2 * n):
        i, j = rng.sample(range(n), 2)
        c = rng.choice((-2, -1, 1, 2))
        for k in range(n):
            p[i][k] += c * p[j][k]
    return p


# ---------------------------------------------------------------------------
# construction


def test_validation_rejects_bad_shapes():
    with pytest.raises(PreconditionError):
        SeifertMatrix(((1, 2),))
    with pytest.raises(PreconditionError):
        SeifertMatrix(((0, 1), (1, 0)))  # symmetric, so det(V - V^T) = 0
    with pytest.raises(PreconditionError):
        SeifertMatrix(((1,),))  # odd size is always singular
    with pytest.raises(PreconditionError):
        SeifertMatrix.from_rows([[0.5, 1], [0, 0]])


def test_unknot_is_the_empty_matrix():
    assert UNKNOT.size == 0
    assert serialize(alexander_poly(UNKNOT)) == "1"
    assert arf(UNKNOT) == 0
    assert rho0(UNKNOT) == 0
    assert signature_at(UNKNOT, Fraction(1)) == 0


def test_accessors():
    assert TREFOIL.size == 2
    assert TREFOIL.genus == 1
    assert TREFOIL[0, 1] == 1
    assert TREFOIL.transpose()[1, 0] == 1


# ---------------------------------------------------------------------------
# Alexander polynomial


def test_alexander_frozen_values():
    assert serialize(alexander_poly(TREFOIL)) == "t^2-t+1"
    assert serialize(alexander_poly(FIG8)) == "t^2-3t+1"
    assert serialize(alexander_poly(CINQ)) == "t^4-t^3+t^2-t+1"
    assert serialize(alexander_poly(V52)) == "2t^2-3t+2"


def test_alexander_of_connected_sum_multiplies():
    granny = connected_sum(TREFOIL, TREFOIL)
    assert eq_up_to_unit(
        alexander_poly(granny), parse_poly("(t^2-t+1)^2"))
    mixed = connected_sum(TREFOIL, FIG8)
    assert eq_up_to_unit(
        alexander_poly(mixed), parse_poly("(t^2-t+1)(t^2-3t+1)"))


def test_alexander_properties_on_random_matrices():
    rng = random.Random(411)
    for _ in range(40):
        v = random_seifert(rng, rng.choice((1, 1, 2)))
        d = alexander_poly(v)
        assert is_self_reciprocal(d)
        assert abs(d.evaluate(Fraction(1))) == 1
        assert eq_up_to_unit(alexander_poly(mirror(v)), d)


# ---------------------------------------------------------------------------
# Arf


def test_arf_frozen_values():
    assert arf(TREFOIL) == 1
    assert arf(FIG8) == 1
    assert arf(CINQ) == 1
    assert arf(connected_sum(TREFOIL, TREFOIL)) == 0


def test_arf_additive_mod_2():
    rng = random.Random(802)
    for _ in range(15):
        a = random_seifert(rng, 1)
        b = random_seifert(rng, rng.choice((1, 2)))
        assert arf(connected_sum(a, b)) == (arf(a) + arf(b)) % 2


# ---------------------------------------------------------------------------
# signatures at exact points


def test_trefoil_signatures():
    assert signature_at(TREFOIL, Fraction(0)) == 0
    assert signature_at(TREFOIL, Fraction(1, 4)) == 0
    assert signature_at(TREFOIL, Fraction(1, 2)) == -2
    assert signature_at(TREFOIL, Fraction(1)) == -2
    with pytest.raises(JumpPointError):
        signature_at(TREFOIL, Fraction(1, 3))


def test_fig8_signature_vanishes():
    for a in (Fraction(1, 7), Fraction(1, 2), Fraction(5, 6), Fraction(1)):
        assert signature_at(FIG8, a) == 0


def test_cinq_signature_staircase():
    assert signature_at(CINQ, Fraction(1, 10)) == 0
    assert signature_at(CINQ, Fraction(2, 5)) == -2
    assert signature_at(CINQ, Fraction(4, 5)) == -4
    assert signature_at(CINQ, Fraction(1)) == -4
    for a in (Fraction(1, 5), Fraction(3, 5)):
        with pytest.raises(JumpPointError):
            signature_at(CINQ, a)


def test_signature_next_to_an_irrational_jump():
    # the jump angle is acos(3/4)/pi = 0.2300534..., so 23/100 sits just
    # below it and 1/4 just above; the interval refinement must resolve both
    assert signature_at(V52, Fraction(23, 100)) == 0
    assert signature_at(V52, Fraction(1, 4)) == 2


def test_signature_domain_checked():
    with pytest.raises(PreconditionError):
        signature_at(TREFOIL, Fraction(3, 2))


def test_mirror_negates_signature():
    rng = random.Random(93)
    for _ in range(10):
        v = random_seifert(rng, 1)
        for a in (Fraction(1, 2), Fraction(1)):
            try:
                s = signature_at(v, a)
            except JumpPointError:
                continue
            assert signature_at(mirror(v), a) == -s


def test_connected_sum_adds_signatures():
    rng = random.Random(58)
    for _ in range(8):
        a = random_seifert(rng, 1)
        b = random_seifert(rng, 1)
        for ang in (Fraction(1, 2), Fraction(2, 3), Fraction(1)):
            try:
                sa, sb = signature_at(a, ang), signature_at(b, ang)
            except JumpPointError:
                continue
            assert signature_at(connected_sum(a, b), ang) == sa + sb


def test_signature_against_numeric_eigenvalues():
    numpy = pytest.importorskip("numpy")
    rng = random.Random(7241)
    checked = 0
    while checked < 60:
        v = random_seifert(rng, rng.choice((1, 2)))
        a = Fraction(rng.randint(1, 99), 100)
        try:
            s = signature_at(v, a)
        except JumpPointError:
            continue
        om = complex(mpmath.exp(1j * mpmath.pi * float(a)))
        m = numpy.array(v.to_lists(), dtype=complex)
        h = (1 - om) * m + (1 - om.conjugate()) * m.T
        eig = numpy.linalg.eigvalsh(h)
        scale = max(1.0, float(abs(eig).max()))
        if float(abs(eig).min()) < 1e-9 * scale:
            continue  # too close to a jump for float arithmetic to vote
        assert s == int((eig > 0).sum() - (eig < 0).sum())
        checked += 1


# ---------------------------------------------------------------------------
# profiles


def test_trefoil_profile():
    p = signature_profile(TREFOIL)
    assert p.exact
    assert p.arc_sigmas == (0, -2)
    (j,) = p.jumps
    assert j.angle_over_pi == Fraction(1, 3)
    assert j.delta == -2


def test_repeated_factor_collapses_to_one_jump():
    granny = connected_sum(TREFOIL, TREFOIL)
    p = signature_profile(granny)
    assert p.arc_sigmas == (0, -4)
    (j,) = p.jumps
    assert j.angle_over_pi == Fraction(1, 3)
    assert j.delta == -4


def test_cinq_profile():
    p = signature_profile(CINQ)
    assert p.exact
    assert [j.angle_over_pi for j in p.jumps] == [Fraction(1, 5), Fraction(3, 5)]
    assert p.arc_sigmas == (0, -2, -4)


def test_profile_with_inexact_jump():
    p = signature_profile(V52)
    assert not p.exact
    (j,) = p.jumps
    assert j.angle_over_pi is None
    assert j.loc.lo == j.loc.hi == Fraction(3, 2)  # x-location is exactly 3/2
    assert p.arc_sigmas == (0, 2)
    val = j.angle_value(25)
    with mpmath.workdps(25):
        assert abs(val - mpmath.acos(mpmath.mpf(3) / 4) / mpmath.pi) < mpmath.mpf(10) ** -20


def test_profile_flat_when_no_circle_roots():
    p = signature_profile(FIG8)
    assert p.jumps == () and p.arc_sigmas == (0,)


# ---------------------------------------------------------------------------
# rho0


def test_rho0_exact_values():
    assert rho0(TREFOIL) == Fraction(-4, 3)
    assert rho0(connected_sum(TREFOIL, TREFOIL)) == Fraction(-8, 3)
    assert rho0(CINQ) == Fraction(-12, 5)
    assert rho0(FIG8) == 0
    assert rho0(connected_sum(TREFOIL, mirror(TREFOIL))) == 0


def test_rho0_numeric_value_and_precision():
    val = rho0(V52, precision=40)
    assert not isinstance(val, Fraction)
    with mpmath.workdps(45):
        oracle = 2 * (1 - mpmath.acos(mpmath.mpf(3) / 4) / mpmath.pi)
        assert abs(val - oracle) < mpmath.mpf(10) ** -35


def test_rho0_additive_mixed_exactness():
    v = connected_sum(TREFOIL, V52)
    val = rho0(v, precision=30)
    with mpmath.workdps(35):
        oracle = Fraction(-4, 3) + 2 * (1 - mpmath.acos(mpmath.mpf(3) / 4) / mpmath.pi)
        assert abs(val - oracle) < mpmath.mpf(10) ** -25


def test_rho0_mirror_negates():
    assert rho0(mirror(CINQ)) == Fraction(12, 5)


# ---------------------------------------------------------------------------
# S-equivalence

def test_congruence_invariance():
    rng = random.Random(3117)
    for _ in range(10):
        v = random_seifert(rng, rng.choice((1, 2)))
        n = v.size
        p = random_unimodular(rng, n)
        rows = [
            [
                sum(p[i][a] * v.rows[a][b] * p[j][b] for a in range(n) for b in range(n))
                for j in range(n)
            ]
            for i in range(n)
        ]
        w = SeifertMatrix.from_rows(rows)
        assert alexander_poly(w) == alexander_poly(v)
        assert arf(w) == arf(v)
        pv, pw = signature_profile(v), signature_profile(w)
        assert pv.arc_sigmas == pw.arc_sigmas
        assert [j.angle_over_pi for j in pv.jumps] == [j.angle_over_pi for j in pw.jumps]


def test_stabilization_invariance():
    def stabilize(v, xi, x):
        n = v.size
        rows = [list(v.rows[i]) + [xi[i], 0] for i in range(n)]
        rows.append([0] * n + [x, 1])
        rows.append([0] * n + [0, 0])
        return SeifertMatrix.from_rows(rows)

    for xi, x in [((1, -2), 3), ((0, 5), -1), ((2, 2), 0)]:
        s = stabilize(TREFOIL, xi, x)
        assert eq_up_to_unit(alexander_poly(s), alexander_poly(TREFOIL))
        assert arf(s) == arf(TREFOIL)
        assert rho0(s) == rho0(TREFOIL)
        assert signature_at(s, Fraction(1)) == -2


# ---------------------------------------------------------------------------
# serialization


def test_knot_json_roundtrip():
    text = json.dumps(knot_json_dict(TREFOIL, name="trefoil"))
    v, name = knot_from_json(text)
    assert v == TREFOIL and name == "trefoil"
    v2, name2 = knot_from_json('{"seifert": []}')
    assert v2 == UNKNOT and name2 is None
    with pytest.raises(PreconditionError):
        knot_from_json("{not json")
    with pytest.raises(PreconditionError):
        knot_from_json('{"rows": [[0]]}')


def test_profile_csv_golden():
    assert profile_csv(TREFOIL) == (
        "start_over_pi,end_over_pi,sigma\n"
        "0.0,0.333333333333,0\n"
        "0.333333333333,1.0,-2\n"
    )


def test_profile_svg_structure():
    svg = profile_svg(CINQ)
    assert svg.startswith("<svg ")
    assert svg.count("stroke-dasharray") == 2  # one marker per jump
    assert svg == profile_svg(CINQ)  # deterministic


def test_csv_deterministic_for_inexact_jumps():
    assert profile_csv(V52) == profile_csv(V52)
    assert "0.230053" in profile_csv(V52)
