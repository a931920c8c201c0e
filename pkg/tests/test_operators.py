"""Operator construction, robustness auditing, and expression trees."""

from fractions import Fraction

import pytest

from concord.errors import PreconditionError
from concord.laurent import augmentation, eq_up_to_unit, parse_poly, serialize
from concord.operators import (
    BASE_KNOTS,
    Apply,
    Base,
    CertifiedReal,
    NonzeroAsserted,
    OrderSequenceSet,
    RibbonDisk,
    RobustCertificate,
    Robustness,
    base_knot,
    base_leaves,
    compose,
    expression_depth,
    expression_from_json,
    expression_json_dict,
    is_robust,
    make_operator,
    operator_from_json,
    operator_json_dict,
    order_sequences,
    rho1_bookkeeping,
    ribbon_pattern,
    standard_operator,
    stub_certificate,
)
from concord.seifert import alexander_poly, arf, connected_sum, rho0

P = parse_poly


def pattern_order(k):
    return alexander_poly(ribbon_pattern(k))


# ---------------------------------------------------------------------------
# patterns and construction


def test_ribbon_pattern_rows():
    assert ribbon_pattern(1).to_lists() == [[0, 2], [1, 0]]
    assert ribbon_pattern(3).to_lists() == [[0, 4], [3, 0]]


@pytest.mark.parametrize("k", [1, 2, 5])
def test_ribbon_pattern_order_splits(k):
    split = P(f"{k}t-{k + 1}") * P(f"{k + 1}t-{k}")
    assert eq_up_to_unit(pattern_order(k), split)


def test_ribbon_pattern_rejects_nonpositive_index():
    with pytest.raises(PreconditionError):
        ribbon_pattern(0)


def test_make_operator_requires_dividing_order():
    with pytest.raises(PreconditionError, match="divide"):
        make_operator("bad", ribbon_pattern(1), P("t-3"))


def test_make_operator_rejects_zero_order():
    with pytest.raises(PreconditionError):
        make_operator("bad", ribbon_pattern(1), P("0"))


def test_make_operator_rejects_reducible_delta():
    cert = RobustCertificate(delta=P("2t^2-5t+2"), entries=())
    with pytest.raises(PreconditionError, match="irreducible"):
        make_operator("bad", ribbon_pattern(1), pattern_order(1), cert)


def test_make_operator_rejects_mismatched_delta():
    cert = RobustCertificate(delta=P("t-3"), entries=())
    with pytest.raises(PreconditionError, match="reciprocal"):
        make_operator("bad", ribbon_pattern(1), pattern_order(1), cert)


def test_make_operator_accepts_self_reciprocal_delta():
    granny = BASE_KNOTS["granny"]
    cert = RobustCertificate(
        delta=P("t^2-t+1"),
        entries=(("P+-", NonzeroAsserted(Fraction(1), "made up for the test")),),
    )
    op = make_operator("granny-double", granny, alexander_poly(granny), cert)
    assert op.robust_certificate is cert


def test_generates_flag_tracks_order():
    full = make_operator("full", ribbon_pattern(1), pattern_order(1))
    half = make_operator("half", ribbon_pattern(1), P("t-2"))
    assert full.generates
    assert not half.generates


def test_operator_order_is_canonical():
    op = make_operator("scaled", ribbon_pattern(1), P("4t^2-10t+4"))
    assert serialize(op.alpha_order) == "2t^2-5t+2"


# ---------------------------------------------------------------------------
# certificate plumbing


def test_nonzero_asserted_rejects_zero():
    with pytest.raises(PreconditionError):
        NonzeroAsserted(0, "vacuous")


def test_nonzero_asserted_requires_provenance():
    with pytest.raises(PreconditionError):
        NonzeroAsserted(Fraction(1), "")


def test_certificate_rejects_duplicate_labels():
    with pytest.raises(PreconditionError, match="duplicate"):
        RobustCertificate(
            delta=P("t-2"),
            entries=(
                ("P0", NonzeroAsserted(Fraction(1), "a")),
                ("P0", NonzeroAsserted(Fraction(2), "b")),
            ),
        )


def test_certificate_rejects_unknown_label():
    with pytest.raises(PreconditionError, match="label"):
        RobustCertificate(
            delta=P("t-2"),
            entries=(("Pmax", NonzeroAsserted(Fraction(1), "a")),),
        )


def test_certificate_rejects_unit_delta():
    with pytest.raises(PreconditionError):
        RobustCertificate(delta=P("3"), entries=())


def test_certificate_lookup():
    cert = RobustCertificate(
        delta=P("t-2"),
        entries=(("P+", RibbonDisk()), ("P0", NonzeroAsserted(Fraction(1), "a"))),
    )
    assert cert.lookup("P+").kind == "ribbon"
    assert cert.lookup("P0").value == 1
    assert cert.lookup("P-") is None


# ---------------------------------------------------------------------------
# robustness verdicts


def test_standard_operator_is_robust():
    rep = is_robust(standard_operator(1))
    assert rep.status is Robustness.ROBUST
    assert rep.reasons == ()
    assert rep.missing == ()


def test_standard_operator_shape():
    op = standard_operator(3)
    assert op.name == "doubling-3"
    assert serialize(op.alpha_order) == "12t^2-25t+12"
    cert = op.robust_certificate
    assert serialize(cert.delta) == "3t-4"
    assert cert.lookup("P+").kind == "ribbon"
    assert cert.lookup("P0").value == Fraction(-4, 3)
    assert cert.lookup("P-").value == Fraction(-4, 3)


def test_standard_operator_rejects_signatureless_infection():
    with pytest.raises(PreconditionError, match="rho0"):
        standard_operator(1, infection=BASE_KNOTS["unknot"])


def test_bare_operator_is_conditional():
    op = make_operator("bare", ribbon_pattern(1), pattern_order(1))
    rep = is_robust(op)
    assert rep.status is Robustness.CONDITIONAL
    assert set(rep.missing) == {"P0", "P+", "P-"}
    assert rep.reasons == ()


def test_partial_certificate_shrinks_missing():
    cert = RobustCertificate(
        delta=P("t-2"),
        entries=(("P0", NonzeroAsserted(Fraction(3), "made up for the test")),),
    )
    op = make_operator("partial", ribbon_pattern(1), pattern_order(1), cert)
    rep = is_robust(op)
    assert rep.status is Robustness.CONDITIONAL
    assert set(rep.missing) == {"P+", "P-"}


def test_nongenerating_curve_is_not_robust():
    op = make_operator("half", ribbon_pattern(1), P("t-2"))
    rep = is_robust(op)
    assert rep.status is Robustness.NOT_ROBUST
    assert any("generate" in r for r in rep.reasons)


def test_unit_curve_order_is_never_robust():
    op = make_operator("null-curve", ribbon_pattern(1), P("1"))
    assert is_robust(op).status is Robustness.NOT_ROBUST


def test_unsplit_order_is_not_robust():
    trefoil = BASE_KNOTS["trefoil"]
    op = make_operator("trefoil-pattern", trefoil, alexander_poly(trefoil))
    rep = is_robust(op)
    assert rep.status is Robustness.NOT_ROBUST
    assert rep.reasons == ("order is not an irreducible times its reciprocal",)


@pytest.mark.parametrize("k", range(1, 8))
def test_robust_family_orders_are_units_at_one(k):
    # Seifert matrices force this (det(V - V^T) = 1), so the robustness
    # auditor's re-check of it can only fail on corrupted data; here it
    # stays a live invariant of the shipped family.
    assert augmentation(pattern_order(k)) == -1
    assert is_robust(standard_operator(k)).status is Robustness.ROBUST


def test_noncyclic_pattern_collects_reasons():
    doubled = connected_sum(ribbon_pattern(1), ribbon_pattern(1))
    op = make_operator("doubled", doubled, P("2t^2-5t+2"))
    rep = is_robust(op)
    assert rep.status is Robustness.NOT_ROBUST
    assert "module is not cyclic" in rep.reasons


def test_stub_certificate_fills_every_submodule():
    op = make_operator(
        "stub-4", ribbon_pattern(4), pattern_order(4),
        stub_certificate(ribbon_pattern(4), index=4))
    assert is_robust(op).status is Robustness.ROBUST
    values = [ev.value for _, ev in op.robust_certificate.entries]
    assert len(values) == len(set(float(v) for v in values)) == 3


def test_stub_certificate_values_differ_across_indices():
    a = stub_certificate(ribbon_pattern(1), index=1)
    b = stub_certificate(ribbon_pattern(2), index=2)
    pool = [float(ev.value) for _, ev in a.entries + b.entries]
    assert len(pool) == len(set(pool))


def test_stub_certificate_needs_split_order():
    with pytest.raises(PreconditionError):
        stub_certificate(BASE_KNOTS["trefoil"], index=0)


def test_robustness_report_json():
    rep = is_robust(make_operator("bare", ribbon_pattern(2), pattern_order(2)))
    d = rep.to_json_dict()
    assert d["status"] == "conditional"
    assert sorted(d["missing"]) == ["P+", "P-", "P0"]
    assert d["reasons"] == []


# ---------------------------------------------------------------------------
# signature bookkeeping


def test_rho1_bookkeeping_trefoil_infection():
    base = CertifiedReal(Fraction(0), "bare pattern value")
    whole, edge = rho1_bookkeeping(base, Fraction(-4, 3))
    assert whole.value == Fraction(-4, 3)
    assert edge.value == Fraction(-4, 3)
    assert "bare pattern value" in whole.provenance
    assert "rho0" in edge.provenance


def test_rho1_bookkeeping_shifts_nonzero_base():
    base = CertifiedReal(Fraction(5), "seed")
    whole, edge = rho1_bookkeeping(base, Fraction(-4, 3))
    assert whole.value == Fraction(11, 3)
    assert edge.value == Fraction(-4, 3)


def test_certified_real_requires_provenance():
    with pytest.raises(PreconditionError):
        CertifiedReal(Fraction(1), "")


# ---------------------------------------------------------------------------
# expressions


def test_base_knot_catalog_arfs():
    expected = {"unknot": 0, "trefoil": 1, "mirror-trefoil": 1,
                "figure-eight": 1, "granny": 0, "cinquefoil": 1}
    for name, want in expected.items():
        leaf = base_knot(name)
        assert leaf.arf == want == arf(leaf.knot)


def test_base_knot_unknown_name():
    with pytest.raises(PreconditionError, match="unknown"):
        base_knot("conway")


def test_base_rejects_wrong_arf():
    with pytest.raises(PreconditionError, match="arf"):
        Base(name="trefoil", knot=BASE_KNOTS["trefoil"], arf=0)


def test_apply_checks_curve_orders():
    op = standard_operator(1)
    with pytest.raises(PreconditionError, match="divide"):
        Apply(op, ((P("t-3"), base_knot("unknot")),))


def test_apply_rejects_empty_inputs():
    with pytest.raises(PreconditionError):
        Apply(standard_operator(1), ())


def test_compose_orders_and_depth():
    ops = [standard_operator(1), standard_operator(2), standard_operator(3)]
    expr = compose(ops, base_knot("trefoil"))
    assert expression_depth(expr) == 3
    assert expr.op.name == "doubling-1"
    assert expr.inputs[0][1].op.name == "doubling-2"


def test_compose_rejects_empty_list():
    with pytest.raises(PreconditionError):
        compose([], base_knot("unknot"))


def test_compose_is_associative():
    a, b = standard_operator(1), standard_operator(2)
    base = base_knot("granny")
    assert compose([a], compose([b], base)) == compose([a, b], base)


def test_expression_depth_of_leaf():
    assert expression_depth(base_knot("unknot")) == 0


def test_base_leaves_collects_in_order():
    expr = Apply(
        standard_operator(1),
        ((P("t-2"), base_knot("trefoil")), (P("2t-1"), base_knot("granny"))),
    )
    assert [leaf.name for leaf in base_leaves(expr)] == ["trefoil", "granny"]


def test_order_sequences_single_chain():
    expr = compose(
        [standard_operator(2), standard_operator(1)], base_knot("trefoil"))
    seqs = order_sequences(expr)
    assert len(seqs.sequences) == 1
    seq = seqs.sequences[0]
    assert seq.role == "q-orders"
    assert seq.serialize() == "p:6t^2-13t+6;p:2t^2-5t+2"


def test_order_sequences_branching():
    inner = Apply(
        standard_operator(2),
        ((P("2t-3"), base_knot("unknot")), (P("3t-2"), base_knot("trefoil"))),
    )
    expr = Apply(standard_operator(1), ((pattern_order(1), inner),))
    seqs = order_sequences(expr)
    assert len(seqs.sequences) == 2
    assert [s.serialize() for s in seqs.sequences] == [
        "p:2t^2-5t+2;p:2t-3",
        "p:2t^2-5t+2;p:3t-2",
    ]


def test_order_sequences_of_bare_base():
    assert order_sequences(base_knot("figure-eight")) == OrderSequenceSet(())


# ---------------------------------------------------------------------------
# serialization


def test_operator_json_roundtrip_with_certificate():
    op = standard_operator(2)
    blob = operator_json_dict(op)
    assert blob["name"] == "doubling-2"
    assert blob["pattern_seifert"] == [[0, 3], [2, 0]]
    assert blob["robust"]["delta"] == "2t-3"
    kinds = {sig["submodule"]: sig["kind"] for sig in blob["robust"]["signatures"]}
    assert kinds == {"P0": "nonzero", "P+": "ribbon", "P-": "nonzero"}
    again = operator_from_json(blob)
    assert is_robust(again).status is Robustness.ROBUST
    assert operator_json_dict(again) == blob


def test_operator_json_roundtrip_without_certificate():
    op = make_operator("bare", ribbon_pattern(1), P("t-2"))
    blob = operator_json_dict(op)
    assert blob["robust"] is None
    again = operator_from_json(blob)
    assert again.alpha_order == op.alpha_order
    assert not again.generates


def test_operator_json_ribbon_value_is_null():
    blob = operator_json_dict(standard_operator(1))
    ribbon = [s for s in blob["robust"]["signatures"] if s["kind"] == "ribbon"]
    assert ribbon and ribbon[0]["value"] is None


def test_stub_values_serialize_with_full_precision():
    pattern = ribbon_pattern(2)
    cert = stub_certificate(pattern, 2)
    op = make_operator("stub-2", pattern, P("(2t-3)(3t-2)"), cert)
    blob = operator_json_dict(op)
    values = [s["value"] for s in blob["robust"]["signatures"]]
    for v, (_, ev) in zip(values, cert.entries):
        digits = str(v).lstrip("-").replace(".", "")
        assert len(digits) >= 45
        assert abs(float(v) - float(ev.value)) < 1e-12
    again = operator_from_json(blob)
    assert operator_json_dict(again) == blob


def test_float_evidence_value_roundtrips_exactly():
    pattern = ribbon_pattern(1)
    value = 3.1354942159291497
    cert = RobustCertificate(
        delta=P("t-2"),
        entries=(("P0", NonzeroAsserted(value, "test value")),
                 ("P+", RibbonDisk()),
                 ("P-", NonzeroAsserted(value, "test value"))))
    op = make_operator("f", pattern, P("(t-2)(2t-1)"), cert)
    blob = operator_json_dict(op)
    again = operator_from_json(blob)
    restored = again.robust_certificate.lookup("P0").value
    assert restored == Fraction(value)


def test_operator_from_json_rejects_malformed():
    with pytest.raises(PreconditionError, match="malformed"):
        operator_from_json({"name": "x"})


def test_operator_from_json_rejects_unknown_kind():
    blob = operator_json_dict(standard_operator(1))
    blob["robust"]["signatures"][0]["kind"] = "hearsay"
    with pytest.raises(PreconditionError, match="kind"):
        operator_from_json(blob)


def test_expression_json_roundtrip():
    ops = {f"doubling-{k}": standard_operator(k) for k in (1, 2)}
    expr = compose([ops["doubling-1"], ops["doubling-2"]], base_knot("trefoil"))
    blob = expression_json_dict(expr)
    assert blob["op"] == "doubling-1"
    assert blob["inputs"][0]["expr"]["inputs"][0]["expr"] == {
        "base": "trefoil", "arf": 1}
    assert expression_from_json(blob, ops) == expr


def test_expression_json_leaf():
    leaf = base_knot("granny")
    blob = expression_json_dict(leaf)
    assert blob == {"base": "granny", "arf": 0}
    assert expression_from_json(blob, {}) == leaf


def test_expression_from_json_unknown_operator():
    blob = {"op": "ghost", "inputs": []}
    with pytest.raises(PreconditionError, match="operator"):
        expression_from_json(blob, {})


def test_expression_from_json_unknown_base():
    with pytest.raises(PreconditionError, match="base"):
        expression_from_json({"base": "conway", "arf": 0}, {})


def test_expression_from_json_checks_arf():
    with pytest.raises(PreconditionError, match="arf"):
        expression_from_json({"base": "trefoil", "arf": 0}, {})


def test_expression_from_json_rejects_orderless_node():
    with pytest.raises(PreconditionError):
        expression_from_json({"inputs": []}, {})


# ---------------------------------------------------------------------------
# catalog sanity


def test_catalog_rho0_values():
    assert rho0(BASE_KNOTS["trefoil"]) == Fraction(-4, 3)
    assert rho0(BASE_KNOTS["mirror-trefoil"]) == Fraction(4, 3)
    assert rho0(BASE_KNOTS["granny"]) == Fraction(-8, 3)
    assert rho0(BASE_KNOTS["unknot"]) == 0
