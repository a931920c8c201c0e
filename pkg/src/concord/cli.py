"""Command-line front end.

Subcommands are grouped by layer: ``poly`` for Laurent polynomial algebra
and isogeny checks, ``knot`` for Seifert-matrix invariants, ``module`` for
Alexander modules and localization, ``op`` for doubling operators and
composition trees, ``obstruct`` for the filtration decision procedures.

Exit codes: 0 on success, 1 on usage errors, 2 when a computation rejects
its input, 3 when ``--exact`` was passed and the result rests on an
exhausted search bound.  Output for a fixed invocation is byte-identical
across runs; everything emitted as JSON can be fed back into the commands
that accept that artifact kind.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from pathlib import Path
import click
import mpmath

from .coprimality import (
    PolySequence,
    strongly_coprime,
    tuple_strongly_coprime,
)
from .errors import InconclusiveError, PolyParseError, PreconditionError
from .laurent import (
    augmentation,
    factor,
    parse_poly,
    resultant,
    serialize,
)
from .laurent import gcd as poly_gcd
from .modules import (
    alexander_presentation,
    isotropic_submodule,
    localize,
    module_from_knot,
    presentation_element_order,
    proper_submodules,
)
from .obstruction import (
    family_certificate,
    fractal_tree,
    injectivity_report,
    survival_verdict,
    vanishing_verdict,
)
from .operators import (
    BASE_KNOTS,
    base_knot,
    compose,
    expression_from_json,
    expression_json_dict,
    is_robust,
    make_operator,
    operator_from_json,
    operator_json_dict,
    order_sequences,
    ribbon_pattern,
    standard_operator,
    stub_certificate,
)
from .seifert import (
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


@dataclass
class Config:
    bound: int
    precision: int
    exact: bool
    fmt: str


def _plant_decimals(data, pool: list):
    """Swap Decimal leaves for sentinel strings, collecting their digits.

    json.dumps only knows float, which cannot carry the 50-digit evidence
    values; the sentinels are replaced with raw number tokens after
    dumping, keeping the output a plain JSON number.
    """
    if isinstance(data, Decimal):
        token = f"\x00{len(pool)}\x00"
        pool.append(str(data))
        return token
    if isinstance(data, dict):
        return {k: _plant_decimals(v, pool) for k, v in data.items()}
    if isinstance(data, (list, tuple)):
        return [_plant_decimals(v, pool) for v in data]
    return data


def _dumps(d: dict) -> str:
    pool: list = []
    text = json.dumps(_plant_decimals(d, pool), indent=2, sort_keys=True)
    for i, digits in enumerate(pool):
        text = text.replace(json.dumps(f"\x00{i}\x00"), digits)
    return text + "\n"


def _dec(x, dps: int) -> str:
    with mpmath.workdps(dps):
        return mpmath.nstr(mpmath.mpmathify(x), dps)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise PreconditionError(f"cannot read {path}: {e.strerror}") from None


def _read_json(path: str) -> dict:
    try:
        return json.loads(_read(path), parse_float=Decimal)
    except json.JSONDecodeError as e:
        raise PreconditionError(f"malformed JSON in {path}: {e}") from None


def _finish(cfg: Config, renderings: dict, exact: bool = True) -> None:
    """Emit the rendering for the selected format, then apply --exact."""
    if cfg.fmt not in renderings:
        supported = "|".join(sorted(renderings))
        raise click.UsageError(
            f"--format {cfg.fmt} is not supported here (use {supported})")
    out = renderings[cfg.fmt]
    if callable(out):
        out = out()
    click.echo(out, nl=False)
    if cfg.exact and not exact:
        raise InconclusiveError(
            "the reported verdict rests on an exhausted search bound; "
            "raise --bound to push the search further")


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise click.UsageError(f"not a rational number: {text!r}")


def _knot_registry(paths) -> dict[str, SeifertMatrix]:
    reg: dict[str, SeifertMatrix] = {}
    for p in paths:
        v, name = knot_from_json(_read(p))
        key = name or Path(p).stem
        if key in reg:
            raise PreconditionError(f"duplicate knot name: {key}")
        reg[key] = v
    return reg


def _resolve_knot(spec: str, extra=None) -> tuple[SeifertMatrix, str]:
    """A path to a knot file, or a name from the catalog / --knot files."""
    if os.path.exists(spec):
        v, name = knot_from_json(_read(spec))
        return v, name or Path(spec).stem
    reg = dict(BASE_KNOTS)
    if extra:
        reg.update(extra)
    if spec in reg:
        return reg[spec], spec
    raise PreconditionError(
        f"unknown knot {spec!r}: not a readable file and not in the catalog "
        f"({', '.join(sorted(reg))})")


def _ops_registry(paths) -> dict:
    reg = {}
    for p in paths:
        op = operator_from_json(_read_json(p))
        if op.name in reg:
            raise PreconditionError(f"duplicate operator name: {op.name}")
        reg[op.name] = op
    return reg


def _target_option(required=True):
    return click.option(
        "--target", "target_text", required=required,
        help="localization target, outermost first: \"p:POLY;p:POLY;...\"")


def _verdict_renderings(verdict) -> dict:
    def text():
        lines = [f"{verdict.status.value} ({'exact' if verdict.exact else 'bounded'})"]
        for t in verdict.trail:
            mark = "pass" if t.outcome else "FAIL"
            lines.append(f"  [{mark}] {t.hypothesis}  ({t.cite})")
        return "\n".join(lines) + "\n"
    return {"json": _dumps(verdict.to_json_dict()), "text": text}


pass_config = click.make_pass_decorator(Config)


@click.group()
@click.option("--bound", type=click.IntRange(min=1), default=12,
              show_default=True, help="power sweep bound for isogeny searches")
@click.option("--precision", type=click.IntRange(min=1), default=30,
              show_default=True, help="working decimal digits for numerics")
@click.option("--exact", is_flag=True,
              help="exit 3 instead of 0 when a verdict is bound-limited")
@click.option("--format", "fmt",
              type=click.Choice(["json", "text", "csv", "dot", "svg"]),
              default="json", show_default=True, help="output rendering")
@click.pass_context
def cli(ctx, bound, precision, exact, fmt):
    """Knot concordance calculations: isogeny, signatures, localization,
    doubling operators, and filtration verdicts."""
    ctx.obj = Config(bound=bound, precision=precision, exact=exact, fmt=fmt)


# ---------------------------------------------------------------------------
# poly


@cli.group()
def poly():
    """Laurent polynomial algebra over the rationals."""


@poly.command("parse")
@click.argument("expr")
@pass_config
def poly_parse(cfg, expr):
    """Parse EXPR and report its normal forms."""
    p = parse_poly(expr)
    d = {
        "input": expr,
        "normalized": serialize(p),
        "canonical": serialize(p.canonical()),
        "degree_span": p.degree_span,
        "augmentation": str(augmentation(p)) if not p.is_zero else "0",
    }
    _finish(cfg, {"json": _dumps(d), "text": serialize(p) + "\n"})


@poly.command("factor")
@click.argument("expr")
@pass_config
def poly_factor(cfg, expr):
    """Factor EXPR into irreducibles over the rationals."""
    fac = factor(parse_poly(expr))
    d = {
        "unit": {"coeff": str(fac.unit_coeff), "exp": fac.unit_exp},
        "factors": [
            {"factor": serialize(f), "multiplicity": e}
            for f, e in fac.factors
        ],
    }
    def text():
        lines = [f"unit {fac.unit_coeff} * t^{fac.unit_exp}"]
        lines += [f"{serialize(f)} ^{e}" for f, e in fac.factors]
        return "\n".join(lines) + "\n"
    _finish(cfg, {"json": _dumps(d), "text": text})


@poly.command("gcd")
@click.argument("a")
@click.argument("b")
@pass_config
def poly_gcd_cmd(cfg, a, b):
    """Monic-canonical gcd of two polynomials."""
    g = poly_gcd(parse_poly(a), parse_poly(b))
    _finish(cfg, {"json": _dumps({"gcd": serialize(g)}),
                  "text": serialize(g) + "\n"})


@poly.command("resultant")
@click.argument("a")
@click.argument("b")
@pass_config
def poly_resultant(cfg, a, b):
    """Resultant of two polynomials as an exact rational."""
    r = resultant(parse_poly(a), parse_poly(b))
    _finish(cfg, {"json": _dumps({"resultant": str(r)}),
                  "text": str(r) + "\n"})


@poly.command("isogeny")
@click.argument("a")
@click.argument("b")
@pass_config
def poly_isogeny(cfg, a, b):
    """Isogenous or strongly coprime, with a checkable witness."""
    v = strongly_coprime(parse_poly(a), parse_poly(b), cfg.bound)
    def text():
        if v.is_isogenous:
            extra = (f" (witness n={v.witness[0]}, k={v.witness[1]})"
                     if v.witness else f" ({v.witness_description})")
            return f"isogenous{extra}\n"
        tag = "exact" if v.exact else f"bound {v.bound} exhausted"
        return f"strongly coprime ({tag})\n"
    _finish(cfg, {"json": _dumps(v.to_json_dict()), "text": text},
            exact=v.exact)


@poly.command("tuple")
@click.argument("p_seq")
@click.argument("q_seq")
@pass_config
def poly_tuple(cfg, p_seq, q_seq):
    """Tuple strong coprimality, plain gcd at position 1, strong beyond."""
    p = PolySequence.parse(p_seq, role="p-target")
    q = PolySequence.parse(q_seq, role="q-orders")
    v = tuple_strongly_coprime(p, q, cfg.bound)
    def text():
        if v.strongly_coprime:
            return f"strongly coprime at index {v.index} ({v.clause})\n"
        return "not strongly coprime\n"
    _finish(cfg, {"json": _dumps(v.to_json_dict()), "text": text},
            exact=v.exact)


# ---------------------------------------------------------------------------
# knot


@cli.group()
def knot():
    """Invariants computed from Seifert matrices."""


@knot.command("alex")
@click.argument("knot_spec")
@pass_config
def knot_alex(cfg, knot_spec):
    """Alexander polynomial, canonical form."""
    v, name = _resolve_knot(knot_spec)
    p = alexander_poly(v)
    _finish(cfg, {"json": _dumps({"name": name, "alexander": serialize(p)}),
                  "text": serialize(p) + "\n"})


@knot.command("signature")
@click.argument("knot_spec")
@click.option("--at", "at_text", default=None,
              help="evaluate at theta/pi = FRACTION instead of profiling")
@pass_config
def knot_signature(cfg, knot_spec, at_text):
    """Signature step function over the upper unit circle."""
    v, name = _resolve_knot(knot_spec)
    if at_text is not None:
        u = _parse_fraction(at_text)
        s = signature_at(v, u)
        _finish(cfg, {"json": _dumps({"name": name, "at": str(u),
                                      "signature": s}),
                      "text": f"{s}\n"})
        return
    prof = signature_profile(v)
    jumps = []
    for j in prof.jumps:
        jumps.append({
            "angle_over_pi": (str(j.angle_over_pi)
                              if j.angle_over_pi is not None else None),
            "angle": _dec(j.angle_value(cfg.precision), cfg.precision),
            "sigma_before": j.sigma_before,
            "sigma_after": j.sigma_after,
        })
    arcs = [
        {"start": _dec(s, 15), "end": _dec(e, 15), "sigma": sig}
        for s, e, sig in prof.arc_table(15)
    ]
    d = {"name": name, "exact": prof.exact, "jumps": jumps, "arcs": arcs}
    def text():
        lines = [f"[{a['start']}, {a['end']}): {a['sigma']}" for a in arcs]
        return "\n".join(lines) + "\n"
    _finish(cfg, {
        "json": _dumps(d),
        "text": text,
        "csv": lambda: profile_csv(v),
        "svg": lambda: profile_svg(v),
    })


@knot.command("rho0")
@click.argument("knot_spec")
@pass_config
def knot_rho0(cfg, knot_spec):
    """Integral of the signature over the circle, normalized."""
    v, name = _resolve_knot(knot_spec)
    value = rho0(v, precision=cfg.precision)
    is_exact = isinstance(value, Fraction)
    d = {
        "name": name,
        "rho0": _dec(value, cfg.precision),
        "rational": str(value) if is_exact else None,
        "exact": is_exact,
        "precision": cfg.precision,
    }
    def text():
        return _dec(value, cfg.precision) + "\n" + profile_csv(v)
    _finish(cfg, {"json": _dumps(d), "text": text,
                  "csv": lambda: profile_csv(v)})


@knot.command("arf")
@click.argument("knot_spec")
@pass_config
def knot_arf(cfg, knot_spec):
    """Arf invariant, 0 or 1."""
    v, name = _resolve_knot(knot_spec)
    _finish(cfg, {"json": _dumps({"name": name, "arf": arf(v)}),
                  "text": f"{arf(v)}\n"})


def _matrix_text(v: SeifertMatrix) -> str:
    return "\n".join(" ".join(str(x) for x in row) for row in v.to_lists()) + "\n"


@knot.command("sum")
@click.argument("a_spec")
@click.argument("b_spec")
@pass_config
def knot_sum(cfg, a_spec, b_spec):
    """Connected sum; emits a knot file."""
    a, na = _resolve_knot(a_spec)
    b, nb = _resolve_knot(b_spec)
    s = connected_sum(a, b)
    _finish(cfg, {"json": _dumps(knot_json_dict(s, name=f"{na}+{nb}")),
                  "text": lambda: _matrix_text(s)})


@knot.command("mirror")
@click.argument("knot_spec")
@pass_config
def knot_mirror(cfg, knot_spec):
    """Mirror image; emits a knot file."""
    v, name = _resolve_knot(knot_spec)
    m = mirror(v)
    _finish(cfg, {"json": _dumps(knot_json_dict(m, name=f"{name}-mirror")),
                  "text": lambda: _matrix_text(m)})


# ---------------------------------------------------------------------------
# module


@cli.group()
def module():
    """Alexander modules: submodules, isotropy, orders, localization."""


@module.command("submodules")
@click.argument("order_text")
@pass_config
def module_submodules(cfg, order_text):
    """Proper submodules of the cyclic module of ORDER, labeled."""
    subs = proper_submodules(parse_poly(order_text))
    d = {"order": serialize(parse_poly(order_text).canonical()),
         "submodules": [
             {"label": s.label,
              "generator_multiple": serialize(s.generator_multiple)}
             for s in subs
         ]}
    def text():
        return "".join(
            f"{s.label} {serialize(s.generator_multiple)}\n" for s in subs)
    _finish(cfg, {"json": _dumps(d), "text": text})


@module.command("isotropy")
@click.argument("knot_spec")
@click.argument("divisor_text")
@pass_config
def module_isotropy(cfg, knot_spec, divisor_text):
    """Is the cyclic submodule at DIVISOR isotropic for the linking form?"""
    v, name = _resolve_knot(knot_spec)
    divisor = parse_poly(divisor_text)
    flag = isotropic_submodule(v, divisor)
    _finish(cfg, {"json": _dumps({"name": name,
                                  "divisor": serialize(divisor.canonical()),
                                  "isotropic": flag}),
                  "text": ("isotropic\n" if flag else "not isotropic\n")})


@module.command("order")
@click.argument("knot_spec")
@click.option("--element", "element_text", default=None,
              help="semicolon-separated coordinates in the presented basis")
@pass_config
def module_order(cfg, knot_spec, element_text):
    """Module order and generator, or the annihilator of --element."""
    v, name = _resolve_knot(knot_spec)
    if element_text is not None:
        coords = tuple(parse_poly(c) for c in element_text.split(";"))
        ann = presentation_element_order(alexander_presentation(v), coords)
        _finish(cfg, {"json": _dumps({
            "name": name,
            "element": [serialize(c) for c in coords],
            "annihilator": serialize(ann),
        }), "text": serialize(ann) + "\n"})
        return
    km = module_from_knot(v)
    d = {
        "name": name,
        "order": serialize(km.order),
        "cyclic": km.is_cyclic,
        "generator": (None if km.generator is None
                      else [serialize(g) for g in km.generator]),
    }
    def text():
        tag = "cyclic" if km.is_cyclic else "not cyclic"
        return f"{serialize(km.order)} ({tag})\n"
    _finish(cfg, {"json": _dumps(d), "text": text})


@module.command("localize")
@click.argument("order_text")
@_target_option()
@click.option("--mode", type=click.Choice(["classical", "strong"]),
              default="classical", show_default=True)
@pass_config
def module_localize(cfg, order_text, target_text, mode):
    """Kill the factors of ORDER that the localization inverts."""
    seq = PolySequence.parse(target_text, role="p-target")
    if len(seq) != 1:
        raise PreconditionError(
            "localization takes a single-entry target; got "
            f"{len(seq)} entries")
    result = localize(parse_poly(order_text), seq.entries[0], mode=mode,
                      bound=cfg.bound)
    def text():
        killed = ", ".join(serialize(f) + (f"^{e}" if e > 1 else "")
                           for f, e in result.killed) or "nothing"
        return (f"{result.classification.value}: killed {killed}; "
                f"survivor {serialize(result.survivor)}\n")
    _finish(cfg, {"json": _dumps(result.to_json_dict()), "text": text},
            exact=result.exact)


# ---------------------------------------------------------------------------
# op


@cli.group("op")
def op_group():
    """Doubling operators: construction, robustness, composition."""


@op_group.command("make")
@click.option("--index", type=click.IntRange(min=1), default=None,
              help="ribbon pattern index k; order (kt-(k+1))((k+1)t-k)")
@click.option("--stub", is_flag=True,
              help="certify with stub values instead of an infection knot")
@click.option("--infection", default=None,
              help="infection knot (catalog name or file) for the certificate")
@click.option("--pattern", "pattern_path", default=None,
              help="knot file to use as a custom pattern (no certificate)")
@click.option("--alpha", "alpha_text", default=None,
              help="curve order for a custom pattern")
@click.option("--name", default=None, help="operator name override")
@pass_config
def op_make(cfg, index, stub, infection, pattern_path, alpha_text, name):
    """Build an operator and emit its JSON record."""
    if index is not None and pattern_path is not None:
        raise click.UsageError("--index and --pattern are mutually exclusive")
    if index is not None:
        if stub:
            if infection is not None:
                raise click.UsageError("--stub and --infection conflict")
            pattern = ribbon_pattern(index)
            op = make_operator(name or f"stub-{index}", pattern,
                               alexander_poly(pattern),
                               stub_certificate(pattern, index=index))
        else:
            inf_v, _ = _resolve_knot(infection or "trefoil")
            op = standard_operator(index, infection=inf_v, name=name)
    elif pattern_path is not None:
        if alpha_text is None:
            raise click.UsageError("--pattern needs --alpha")
        v, pname = _resolve_knot(pattern_path)
        op = make_operator(name or pname, v, parse_poly(alpha_text))
    else:
        raise click.UsageError("need --index or --pattern")
    _finish(cfg, {"json": _dumps(operator_json_dict(op))})


@op_group.command("check-robust")
@click.argument("op_file")
@pass_config
def op_check_robust(cfg, op_file):
    """Audit an operator file against the robustness conditions."""
    op = operator_from_json(_read_json(op_file))
    rep = is_robust(op)
    def text():
        line = rep.status.value
        if rep.reasons:
            line += ": " + "; ".join(rep.reasons)
        if rep.missing:
            line += " (missing evidence: " + ", ".join(rep.missing) + ")"
        return line + "\n"
    _finish(cfg, {"json": _dumps({"name": op.name, **rep.to_json_dict()}),
                  "text": text})


@op_group.command("compose")
@click.argument("op_files", nargs=-1, required=True)
@click.option("--base", "base_name", required=True,
              help="base knot (catalog name or a name from --knot files)")
@click.option("--knot", "knot_files", multiple=True,
              help="extra knot file(s) for base resolution")
@pass_config
def op_compose(cfg, op_files, base_name, knot_files):
    """Chain operators, first file outermost; emits an expression file."""
    ops = [operator_from_json(_read_json(p)) for p in op_files]
    extra = _knot_registry(knot_files)
    v, name = _resolve_knot(base_name, extra)
    expr = compose(ops, base_knot(name, v))
    _finish(cfg, {"json": _dumps(expression_json_dict(expr))})


@op_group.command("orders")
@click.argument("expr_file")
@click.option("--ops", "op_files", multiple=True, required=True,
              help="operator file(s) the expression refers to")
@click.option("--knot", "knot_files", multiple=True,
              help="extra knot file(s) for leaf resolution")
@pass_config
def op_orders(cfg, expr_file, op_files, knot_files):
    """Order sequences along every root-to-leaf path, outermost first."""
    reg = _ops_registry(op_files)
    knots = dict(BASE_KNOTS)
    knots.update(_knot_registry(knot_files))
    expr = expression_from_json(_read_json(expr_file), reg, knots)
    seqs = order_sequences(expr)
    d = {"sequences": [s.serialize() for s in seqs.sequences]}
    def text():
        if not seqs.sequences:
            return "no infections: bare base knot\n"
        return "".join(s.serialize() + "\n" for s in seqs.sequences)
    _finish(cfg, {"json": _dumps(d), "text": text})


# ---------------------------------------------------------------------------
# obstruct


@cli.group()
def obstruct():
    """Filtration verdicts: vanishing, survival, families, injectivity."""


def _load_expression(expr_file, op_files, knot_files):
    reg = _ops_registry(op_files)
    knots = dict(BASE_KNOTS)
    knots.update(_knot_registry(knot_files))
    return expression_from_json(_read_json(expr_file), reg, knots)


@obstruct.command("vanish")
@click.argument("expr_file")
@_target_option()
@click.option("--ops", "op_files", multiple=True, required=True)
@click.option("--knot", "knot_files", multiple=True)
@pass_config
def obstruct_vanish(cfg, expr_file, target_text, op_files, knot_files):
    """Does the expression drop into the next refined level at the target?"""
    expr = _load_expression(expr_file, op_files, knot_files)
    target = PolySequence.parse(target_text, role="p-target")
    verdict = vanishing_verdict(expr, target, bound=cfg.bound)
    _finish(cfg, _verdict_renderings(verdict), exact=verdict.exact)


@obstruct.command("survive")
@click.argument("expr_file")
@_target_option()
@click.option("--ops", "op_files", multiple=True, required=True)
@click.option("--knot", "knot_files", multiple=True)
@click.option("--assert-independence", "assertion", default=None,
              help="provenance for the rho0 independence hypothesis")
@pass_config
def obstruct_survive(cfg, expr_file, target_text, op_files, knot_files,
                     assertion):
    """Does the chain stay visible at its own localization target?"""
    expr = _load_expression(expr_file, op_files, knot_files)
    target = PolySequence.parse(target_text, role="p-target")
    verdict = survival_verdict(expr, target, rho0_hypothesis=assertion,
                               precision=cfg.precision)
    _finish(cfg, _verdict_renderings(verdict), exact=verdict.exact)


@obstruct.command("family")
@click.argument("family_file")
@click.option("--ops", "op_files", multiple=True, required=True)
@click.option("--knot", "knot_files", multiple=True)
@click.option("--assert-independence", "assertion", default=None)
@pass_config
def obstruct_family(cfg, family_file, op_files, knot_files, assertion):
    """Audit a family file: {"families": [{target, operators, bases}, ...]}."""
    spec = _read_json(family_file)
    if not isinstance(spec, dict) or "families" not in spec:
        raise PreconditionError("family file needs a 'families' list")
    reg = _ops_registry(op_files)
    knots = dict(BASE_KNOTS)
    knots.update(_knot_registry(knot_files))
    families = []
    for fam in spec["families"]:
        target = PolySequence.parse(fam["target"], role="p-target")
        try:
            ops = [reg[n] for n in fam["operators"]]
        except KeyError as e:
            raise PreconditionError(f"unknown operator: {e.args[0]}") from None
        bases = []
        for bname in fam["bases"]:
            if bname not in knots:
                raise PreconditionError(f"unknown base knot: {bname}")
            bases.append(base_knot(bname, knots[bname]))
        families.append((target, ops, bases))
    cert = family_certificate(families, fos_spans=assertion, bound=cfg.bound,
                              precision=cfg.precision)
    def text():
        lines = [cert.conclusion]
        lines += [f"  shortfall: {s}" for s in cert.shortfalls]
        for i, j, v in cert.pairwise:
            tag = "strongly coprime" if v.strongly_coprime else "NOT coprime"
            lines.append(f"  families {i},{j}: {tag}")
        return "\n".join(lines) + "\n"
    _finish(cfg, {"json": _dumps(cert.to_json_dict()), "text": text})


@obstruct.command("inject")
@click.argument("op_file_a")
@click.argument("op_file_b")
@pass_config
def obstruct_inject(cfg, op_file_a, op_file_b):
    """Compare the images of two operators through their pattern orders."""
    a = operator_from_json(_read_json(op_file_a))
    b = operator_from_json(_read_json(op_file_b))
    rep = injectivity_report(a, b)
    def text():
        lines = [rep.status]
        lines += [f"  {r}" for r in rep.reasons]
        lines.append(f"  scope: {rep.scope}")
        return "\n".join(lines) + "\n"
    _finish(cfg, {"json": _dumps(rep.to_json_dict()), "text": text})


@obstruct.command("tree")
@click.option("--depth", type=click.IntRange(min=1), required=True)
@click.option("--ops", "op_files", multiple=True, required=True)
@pass_config
def obstruct_tree(cfg, depth, op_files):
    """Enumerate depth-n compositions over a family, with targets."""
    family = [operator_from_json(_read_json(p)) for p in op_files]
    tree = fractal_tree(depth, family, bound=cfg.bound)
    def text():
        lines = [f"depth {tree.depth}, {len(tree.paths)} paths"]
        for p in tree.paths:
            lines.append(f"  {' . '.join(p.operator_names)}: "
                         f"{p.target.serialize()}")
        coprime = sum(1 for _, _, v in tree.pairwise if v.strongly_coprime)
        lines.append(f"  pairwise strongly coprime: {coprime}/{len(tree.pairwise)}")
        return "\n".join(lines) + "\n"
    _finish(cfg, {"json": _dumps(tree.to_json_dict()), "text": text,
                  "dot": tree.to_dot})


# ---------------------------------------------------------------------------
# entry point


def main(argv=None) -> int:
    """Dispatch argv and translate exceptions into the exit-code contract."""
    try:
        cli.main(args=argv, prog_name="concord", standalone_mode=False)
        return 0
    except InconclusiveError as e:
        click.echo(f"inconclusive: {e}", err=True)
        return 3
    except (PreconditionError, PolyParseError) as e:
        click.echo(f"error: {e}", err=True)
        return 2
    except click.UsageError as e:
        click.echo(f"usage error: {e.format_message()}", err=True)
        return 1
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.ClickException as e:
        click.echo(f"error: {e.format_message()}", err=True)
        return e.exit_code


if __name__ == "__main__":
    import sys

    sys.exit(main())
