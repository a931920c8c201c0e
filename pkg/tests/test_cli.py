"""End-to-end command tests, driven in-process through main()."""

import json

import pytest

from concord.cli import main


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 0, f"exit {code}, stderr: {err}"
    return json.loads(out)


@pytest.fixture(scope="module")
def artifacts(tmp_path_factory):
    """Operator, expression, knot, and family files shared across tests."""
    root = tmp_path_factory.mktemp("cli")
    paths = {}

    def capture(name, argv):
        import io
        from contextlib import redirect_stdout
        buf = io.StringIO()
        with redirect_stdout(buf):
            code = main(argv)
        assert code == 0, f"fixture command failed: {argv}"
        p = root / name
        p.write_text(buf.getvalue())
        return p

    paths["stub1"] = capture("stub1.json", ["op", "make", "--index", "1", "--stub"])
    paths["stub2"] = capture("stub2.json", ["op", "make", "--index", "2", "--stub"])
    paths["doubling1"] = capture("doubling1.json", ["op", "make", "--index", "1"])
    paths["expr"] = capture(
        "expr.json",
        ["op", "compose", str(paths["stub1"]), str(paths["stub2"]),
         "--base", "granny"])
    v1 = root / "v1.json"
    v1.write_text(json.dumps({"seifert": [[0, 2], [1, 0]], "name": "v1"}))
    paths["v1"] = v1
    fam = root / "family.json"
    fam.write_text(json.dumps({"families": [
        {"target": "p:2t^2-5t+2", "operators": ["stub-1"], "bases": ["granny"]},
        {"target": "p:6t^2-13t+6", "operators": ["stub-2"], "bases": ["granny"]},
    ]}))
    paths["family"] = fam
    return paths


# ---------------------------------------------------------------------------
# exit codes


def test_exit_zero_on_success(capsys):
    code, out, _ = run(["poly", "parse", "t^2-t+1"], capsys)
    assert code == 0
    assert json.loads(out)["canonical"] == "t^2-t+1"


def test_exit_one_on_unknown_subcommand(capsys):
    code, _, err = run(["polynomial", "parse", "t"], capsys)
    assert code == 1
    assert "usage error" in err


def test_exit_one_on_missing_required_option(capsys):
    code, _, err = run(["module", "localize", "t-2"], capsys)
    assert code == 1


def test_exit_one_on_unsupported_format(capsys):
    code, _, err = run(["--format", "svg", "poly", "parse", "t-2"], capsys)
    assert code == 1
    assert "not supported" in err


def test_exit_two_on_rejected_computation(capsys):
    code, _, err = run(["poly", "gcd", "0", "0"], capsys)
    assert code == 2
    assert "error" in err


def test_exit_two_on_unknown_knot(capsys):
    code, _, err = run(["knot", "alex", "borromean"], capsys)
    assert code == 2
    assert "catalog" in err


def test_exit_two_on_bad_polynomial(capsys):
    code, _, err = run(["poly", "parse", "t^^2"], capsys)
    assert code == 2


def test_exit_three_needs_exact_flag(capsys):
    argv = ["--bound", "5", "poly", "isogeny", "5t^2-6t+5", "t^2-3t+1"]
    code, out, _ = run(argv, capsys)
    assert code == 0
    assert json.loads(out)["exact"] is False
    code, out, err = run(["--exact"] + argv, capsys)
    assert code == 3
    assert json.loads(out)["exact"] is False  # output still emitted
    assert "inconclusive" in err


def test_exact_flag_quiet_on_exact_result(capsys):
    code, _, _ = run(["--exact", "poly", "isogeny", "t-2", "t-3"], capsys)
    assert code == 0


def test_help_exits_zero(capsys):
    code, out, _ = run(["--help"], capsys)
    assert code == 0
    assert "poly" in out and "obstruct" in out


# ---------------------------------------------------------------------------
# poly


def test_poly_parse_reports_forms(capsys):
    d = run_json(["poly", "parse", "(t-2)(2t-1)"], capsys)
    assert d["canonical"] == "2t^2-5t+2"
    assert d["degree_span"] == 2
    assert d["augmentation"] == "-1"


def test_poly_factor(capsys):
    d = run_json(["poly", "factor", "2t^3-5t^2+2t"], capsys)
    assert d["unit"]["exp"] == 1
    assert [f["factor"] for f in d["factors"]] == ["t-2", "2t-1"]


def test_poly_gcd(capsys):
    d = run_json(["poly", "gcd", "(t-2)(t-3)", "(t-2)(t-5)"], capsys)
    assert d["gcd"] == "t-2"


def test_poly_resultant(capsys):
    d = run_json(["poly", "resultant", "t-2", "t-3"], capsys)
    assert d["resultant"] == "-1"


def test_poly_isogeny_worked_example(capsys):
    d = run_json(["poly", "isogeny", "t-4", "t^2-4"], capsys)
    assert d["status"] == "isogenous"
    assert d["witness"] == {"n": 2, "k": 1}
    assert d["exact"] is True


def test_poly_isogeny_text(capsys):
    code, out, _ = run(["--format", "text", "poly", "isogeny", "t-4", "t^2-4"],
                       capsys)
    assert code == 0
    assert out == "isogenous (witness n=2, k=1)\n"


def test_poly_tuple(capsys):
    d = run_json(["poly", "tuple", "p:2t^2-5t+2;p:6t^2-13t+6",
                  "p:2t^2-5t+2;p:12t^2-25t+12"], capsys)
    assert d["strongly_coprime"] is True
    assert d["index"] == 2
    assert d["clause"] == "strong"


# ---------------------------------------------------------------------------
# knot


def test_knot_alex_catalog(capsys):
    d = run_json(["knot", "alex", "trefoil"], capsys)
    assert d == {"alexander": "t^2-t+1", "name": "trefoil"}


def test_knot_alex_from_file(artifacts, capsys):
    d = run_json(["knot", "alex", str(artifacts["v1"])], capsys)
    assert d == {"alexander": "2t^2-5t+2", "name": "v1"}


def test_knot_signature_profile(capsys):
    d = run_json(["knot", "signature", "trefoil"], capsys)
    assert d["exact"] is True
    assert len(d["jumps"]) == 1
    assert d["jumps"][0]["angle_over_pi"] == "1/3"
    assert [a["sigma"] for a in d["arcs"]] == [0, -2]


def test_knot_signature_at_point(capsys):
    d = run_json(["knot", "signature", "trefoil", "--at", "1/2"], capsys)
    assert d["signature"] == -2


def test_knot_signature_at_jump_rejected(capsys):
    code, _, err = run(["knot", "signature", "trefoil", "--at", "1/3"], capsys)
    assert code == 2


def test_knot_signature_csv(capsys):
    code, out, _ = run(["--format", "csv", "knot", "signature", "trefoil"],
                       capsys)
    assert code == 0
    assert out.splitlines()[0] == "start_over_pi,end_over_pi,sigma"


def test_knot_signature_svg(capsys):
    code, out, _ = run(["--format", "svg", "knot", "signature", "trefoil"],
                       capsys)
    assert code == 0
    assert out.startswith("<svg ")


def test_knot_rho0_json(capsys):
    d = run_json(["knot", "rho0", "trefoil"], capsys)
    assert d["rational"] == "-4/3"
    assert d["exact"] is True
    assert d["rho0"].startswith("-1.3333333333")


def test_knot_rho0_text_includes_profile(capsys):
    code, out, _ = run(["--format", "text", "knot", "rho0", "trefoil"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("-1.333333333")
    assert lines[1] == "start_over_pi,end_over_pi,sigma"


def test_knot_arf(capsys):
    assert run_json(["knot", "arf", "trefoil"], capsys)["arf"] == 1
    assert run_json(["knot", "arf", "granny"], capsys)["arf"] == 0


def test_knot_sum_roundtrips(tmp_path, capsys):
    d = run_json(["knot", "sum", "trefoil", "trefoil"], capsys)
    assert d["name"] == "trefoil+trefoil"
    p = tmp_path / "sum.json"
    p.write_text(json.dumps(d))
    back = run_json(["knot", "alex", str(p)], capsys)
    assert back["alexander"] == "t^4-2t^3+3t^2-2t+1"


def test_knot_mirror(capsys):
    d = run_json(["knot", "mirror", "trefoil"], capsys)
    assert d["name"] == "trefoil-mirror"
    assert d["seifert"] == [[1, 0], [-1, 1]]


# ---------------------------------------------------------------------------
# module


def test_module_submodules(capsys):
    d = run_json(["module", "submodules", "2t^2-5t+2"], capsys)
    assert [(s["label"], s["generator_multiple"]) for s in d["submodules"]] == [
        ("P+", "t-2"), ("P-", "2t-1"), ("P0", "2t^2-5t+2")]


def test_module_isotropy(artifacts, capsys):
    d = run_json(["module", "isotropy", str(artifacts["v1"]), "t-2"], capsys)
    assert d["isotropic"] is True
    d = run_json(["module", "isotropy", str(artifacts["v1"]), "1"], capsys)
    assert d["isotropic"] is False


def test_module_order(artifacts, capsys):
    d = run_json(["module", "order", str(artifacts["v1"])], capsys)
    assert d["order"] == "2t^2-5t+2"
    assert d["cyclic"] is True
    assert d["generator"] == ["-1/3", "1/3"]


def test_module_order_element(artifacts, capsys):
    d = run_json(["module", "order", str(artifacts["v1"]),
                  "--element", "t-2;t-2"], capsys)
    assert d["annihilator"] == "2t-1"


def test_module_localize(capsys):
    d = run_json(["module", "localize", "(t-2)(3t-2)",
                  "--target", "p:2t^2-5t+2"], capsys)
    assert d["classification"] == "mixed"
    assert [k["factor"] for k in d["killed"]] == ["3t-2"]
    assert d["survivor"] == "t-2"


def test_module_localize_multi_entry_target_rejected(capsys):
    code, _, err = run(["module", "localize", "t-2",
                        "--target", "p:t-2;p:t-3"], capsys)
    assert code == 2
    assert "single-entry" in err


def test_module_localize_augmentation_zero_rejected(capsys):
    code, _, err = run(["module", "localize", "t-1", "--target", "p:t-2"],
                       capsys)
    assert code == 2


# ---------------------------------------------------------------------------
# op


def test_op_make_standard(capsys):
    d = run_json(["op", "make", "--index", "3"], capsys)
    assert d["name"] == "doubling-3"
    assert d["alpha_order"] == "12t^2-25t+12"
    assert d["robust"]["delta"] == "3t-4"
    kinds = {s["submodule"]: s["kind"] for s in d["robust"]["signatures"]}
    assert kinds == {"P0": "nonzero", "P+": "ribbon", "P-": "nonzero"}


def test_op_make_stub(capsys):
    d = run_json(["op", "make", "--index", "2", "--stub"], capsys)
    assert d["name"] == "stub-2"
    assert all(s["kind"] == "nonzero" for s in d["robust"]["signatures"])


def test_op_make_custom_pattern(artifacts, capsys):
    d = run_json(["op", "make", "--pattern", str(artifacts["v1"]),
                  "--alpha", "t-2"], capsys)
    assert d["name"] == "v1"
    assert d["robust"] is None


def test_op_make_usage_conflicts(artifacts, capsys):
    assert run(["op", "make", "--index", "1", "--pattern",
                str(artifacts["v1"])], capsys)[0] == 1
    assert run(["op", "make", "--index", "1", "--stub",
                "--infection", "granny"], capsys)[0] == 1
    assert run(["op", "make", "--pattern", str(artifacts["v1"])], capsys)[0] == 1
    assert run(["op", "make"], capsys)[0] == 1


def test_op_check_robust(artifacts, capsys):
    d = run_json(["op", "check-robust", str(artifacts["stub1"])], capsys)
    assert d["status"] == "robust"
    code, out, _ = run(["--format", "text", "op", "check-robust",
                        str(artifacts["doubling1"])], capsys)
    assert out == "robust\n"


def test_op_compose_emits_expression(artifacts, capsys):
    d = run_json(["op", "compose", str(artifacts["stub1"]),
                  str(artifacts["stub2"]), "--base", "granny"], capsys)
    assert d["op"] == "stub-1"
    inner = d["inputs"][0]["expr"]
    assert inner["op"] == "stub-2"
    assert inner["inputs"][0]["expr"] == {"base": "granny", "arf": 0}


def test_op_orders(artifacts, capsys):
    d = run_json(["op", "orders", str(artifacts["expr"]),
                  "--ops", str(artifacts["stub1"]),
                  "--ops", str(artifacts["stub2"])], capsys)
    assert d["sequences"] == ["p:2t^2-5t+2;p:6t^2-13t+6"]


# ---------------------------------------------------------------------------
# obstruct


def test_obstruct_vanish(artifacts, capsys):
    d = run_json(["obstruct", "vanish", str(artifacts["expr"]),
                  "--target", "p:2t^2-5t+2;p:12t^2-25t+12",
                  "--ops", str(artifacts["stub1"]),
                  "--ops", str(artifacts["stub2"])], capsys)
    assert d["status"] == "vanishes_at_target"
    assert d["exact"] is True
    assert d["trail"][0]["cite"] == "rule:vanishing-every-sequence"


def test_obstruct_survive(artifacts, capsys):
    d = run_json(["obstruct", "survive", str(artifacts["expr"]),
                  "--target", "p:2t^2-5t+2;p:6t^2-13t+6",
                  "--ops", str(artifacts["stub1"]),
                  "--ops", str(artifacts["stub2"]),
                  "--assert-independence", "stub logs of distinct primes"],
                 capsys)
    assert d["status"] == "survives_at_target"
    assert all(t["outcome"] for t in d["trail"])


def test_obstruct_survive_without_assertion(artifacts, capsys):
    d = run_json(["obstruct", "survive", str(artifacts["expr"]),
                  "--target", "p:2t^2-5t+2;p:6t^2-13t+6",
                  "--ops", str(artifacts["stub1"]),
                  "--ops", str(artifacts["stub2"])], capsys)
    assert d["status"] == "inconclusive"


def test_obstruct_family(artifacts, capsys):
    d = run_json(["obstruct", "family", str(artifacts["family"]),
                  "--ops", str(artifacts["stub1"]),
                  "--ops", str(artifacts["stub2"]),
                  "--assert-independence", "stub logs"], capsys)
    assert d["conclusion"] == "independent-certified"
    assert d["pairwise"][0]["strongly_coprime"] is True


def test_obstruct_family_unknown_operator(artifacts, tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"families": [
        {"target": "p:t-2", "operators": ["ghost"], "bases": ["granny"]}]}))
    code, _, err = run(["obstruct", "family", str(bad),
                        "--ops", str(artifacts["stub1"])], capsys)
    assert code == 2
    assert "ghost" in err


def test_obstruct_inject(artifacts, capsys):
    d = run_json(["obstruct", "inject", str(artifacts["stub1"]),
                  str(artifacts["stub2"])], capsys)
    assert d["status"] == "disjoint-images-on-subgroup"


def test_obstruct_tree_json(artifacts, capsys):
    d = run_json(["obstruct", "tree", "--depth", "2",
                  "--ops", str(artifacts["stub1"]),
                  "--ops", str(artifacts["stub2"])], capsys)
    assert len(d["paths"]) == 4
    assert len(d["pairwise"]) == 6


def test_obstruct_tree_dot(artifacts, capsys):
    code, out, _ = run(["--format", "dot", "obstruct", "tree", "--depth", "1",
                        "--ops", str(artifacts["stub1"])], capsys)
    assert code == 0
    assert out.startswith("digraph composition_tree {")
    assert 'root [label="J"]' in out


# ---------------------------------------------------------------------------
# determinism


@pytest.mark.parametrize("argv", [
    ["poly", "isogeny", "t-4", "t^2-4"],
    ["knot", "rho0", "cinquefoil"],
    ["--format", "svg", "knot", "signature", "trefoil"],
])
def test_repeated_runs_are_byte_identical(argv, capsys):
    first = run(argv, capsys)
    second = run(argv, capsys)
    assert first == second
