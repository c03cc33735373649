"""Command-line front end.

Subcommands mirror the library: symplectic checks, hamiltonian fields and
Poisson brackets, Darboux normal forms, Lie algebra cohomology, Heisenberg
orbits, finite-cover periods and prequantization, connection operators, and
the bundled-example verifier.  Output is a single JSON report on stdout.

Exit codes: 0 when the requested claims are verified, 1 when a computation
ran but refuted a claim, 2 on errors (parse failures, bad options).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .charts import CFunction, SuperFunction
from .dsl import Document, DslError, parse
from .scalars import GaussianRational


class CliError(Exception):
    pass


def _load_document(path: str) -> Document:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse(fh.read())
    except FileNotFoundError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc


def _unique(table: dict, kind: str, name, prefer: str = "omega"):
    if name is not None:
        if name not in table:
            raise CliError(f"no {kind} named {name!r} in the document")
        return table[name]
    if len(table) == 1:
        return next(iter(table.values()))
    if prefer in table:
        return table[prefer]
    raise CliError(f"document has {len(table)} {kind}s; pick one with --name")


def _fmt(value):
    """JSON-friendly rendering with rationals as 'p/q' strings."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, GaussianRational):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _fmt(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_fmt(v) for v in value]
    if isinstance(value, (int, str, bool)) or value is None:
        return value
    return str(value)


def _emit(report: dict, ok: bool) -> int:
    print(json.dumps(_fmt(report), indent=2, sort_keys=False))
    return 0 if ok else 1


def _parse_point(text: str) -> dict:
    point = {}
    if not text:
        return point
    for chunk in text.split(","):
        name, _, value = chunk.partition("=")
        if not _:
            raise CliError(f"bad point component {chunk!r}; use name=value")
        point[name.strip()] = Fraction(value.strip())
    return point


def _cfunction(doc: Document, expr: str, chart) -> CFunction:
    value = doc.evaluate(expr, chart)
    if isinstance(value, (GaussianRational, SuperFunction)):
        f = value if isinstance(value, SuperFunction) else chart.constant(value)
        return CFunction(f, chart.zero())
    if not isinstance(value, CFunction):
        raise CliError(f"expression {expr!r} is not a C-valued function")
    return value


# ----------------------------------------------------------------------
# subcommand handlers
# ----------------------------------------------------------------------


def cmd_symplectic_check(args) -> int:
    from .symplectic import is_symplectic

    doc = _load_document(args.file)
    omega = _unique(doc.forms, "form", args.name)
    points = [_parse_point(p) for p in args.point] or [{}]
    rep = is_symplectic(omega, points)
    report = {
        "command": "symplectic check",
        "form": str(omega),
        "closed": rep["closed"],
        "nondegenerate": rep["nondegenerate"],
        "homogeneously_nondegenerate": rep["homogeneously_nondegenerate"],
        "symplectic": rep["symplectic"],
        "points": [
            {
                "point": e.point,
                "nondegenerate": e.nondegenerate,
                "homogeneously_nondegenerate": e.homogeneously_nondegenerate,
            }
            for e in rep["points"]
        ],
    }
    return _emit(report, rep["symplectic"])


def cmd_symplectic_hamiltonian(args) -> int:
    from .symplectic import SymplecticData, hamiltonian_field

    doc = _load_document(args.file)
    omega = _unique(doc.forms, "form", args.name)
    sd = SymplecticData(omega, [_parse_point(p) for p in args.point])
    f = _cfunction(doc, args.f, omega.chart)
    res = hamiltonian_field(f, sd, args.degree)
    report = {
        "command": "symplectic hamiltonian",
        "f": str(f),
        "status": res.status,
        "field": str(res.field) if res.field is not None else None,
        "unique": res.unique,
        "detail": res.detail,
    }
    return _emit(report, res.status == "member")


def cmd_symplectic_poisson(args) -> int:
    from .symplectic import PoissonMembershipError, SymplecticData, poisson_bracket

    doc = _load_document(args.file)
    omega = _unique(doc.forms, "form", args.name)
    sd = SymplecticData(omega, [_parse_point(p) for p in args.point])
    f = _cfunction(doc, args.f, omega.chart)
    g = _cfunction(doc, args.g, omega.chart)
    try:
        bracket = poisson_bracket(f, g, sd, args.degree)
    except PoissonMembershipError as exc:
        return _emit(
            {"command": "symplectic poisson", "error": f"not in the Poisson algebra: {exc}"},
            False,
        )
    report = {
        "command": "symplectic poisson",
        "f": str(f),
        "g": str(g),
        "bracket": str(bracket),
    }
    return _emit(report, True)


def cmd_symplectic_darboux(args) -> int:
    from .symplectic import NotSymplectic, darboux_normal_form

    matrix = json.loads(args.matrix)
    matrix = [[Fraction(str(v)) for v in row] for row in matrix]
    parities = [int(p) for p in args.parities.split(",")]
    homogeneity = 1 if args.odd else 0
    try:
        res = darboux_normal_form(matrix, parities, homogeneity)
    except NotSymplectic as exc:
        return _emit({"command": "symplectic darboux", "error": str(exc)}, False)
    report = {
        "command": "symplectic darboux",
        "kind": res.kind,
        "k": res.k,
        "ell": res.ell,
        "odd_coefficients": [str(c) for c in res.odd_coefficients],
        "exact": res.exact,
        "basis_change": [[str(v) for v in row] for row in res.basis_change],
        "canonical_matrix": [[str(v) for v in row] for row in res.canonical_matrix],
        "canonical_form": str(res.canonical_form()),
    }
    return _emit(report, True)


def cmd_liecoh_h2(args) -> int:
    from .liecoh import h2

    doc = _load_document(args.file)
    g = _unique(doc.algebras, "algebra", args.name)
    rep = h2(g)
    report = {
        "command": "liecoh h2",
        "dim_c2": rep.dim_c2,
        "dim_z2": rep.dim_z2,
        "dim_b2": rep.dim_b2,
        "dim_h2": rep.dim_h2,
        "representatives": [repr(c) for c in rep.representatives],
    }
    return _emit(report, True)


def cmd_liecoh_extend(args) -> int:
    from .liecoh import ce_coboundary, central_extension, jacobi_check

    doc = _load_document(args.file)
    g = _unique(doc.algebras, "algebra", args.name)
    om = _unique(doc.cocycles, "cocycle", args.cocycle)
    ext = central_extension(g, om)
    ok, witness = jacobi_check(ext)
    report = {
        "command": "liecoh extend",
        "closed": ce_coboundary(om, g).is_zero(),
        "jacobi": ok,
        "jacobi_witness": witness,
        "parities": list(ext.parities),
        "brackets": {
            f"[{i+1},{j+1}]": {f"e{k+1}": v for k, v in vec.items()}
            for (i, j), vec in sorted(ext.brackets.items())
            if i <= j
        },
    }
    return _emit(report, ok)


def cmd_liecoh_equiv(args) -> int:
    from .liecoh import extension_equivalent

    doc = _load_document(args.file)
    g = _unique(doc.algebras, "algebra", args.name)
    om1 = _unique(doc.cocycles, "cocycle", args.cocycle)
    om2 = _unique(doc.cocycles, "cocycle", args.cocycle2)
    ok, witness = extension_equivalent(om1, om2, g)
    report = {
        "command": "liecoh equiv",
        "equivalent": ok,
        "witness": repr(witness) if witness is not None else None,
    }
    return _emit(report, ok)


def _orbit_from_args(args):
    from .heisenberg import orbit_classify

    doc = _load_document(args.file)
    spec = _unique(doc.heisenbergs, "heisenberg pairing", args.name)
    return orbit_classify(spec, Fraction(args.y0), Fraction(args.ybar1))


def cmd_heisenberg_orbit(args) -> int:
    orbit = _orbit_from_args(args)
    report = {
        "command": "heisenberg orbit",
        "case": orbit.case,
        "y0": orbit.y0,
        "ybar1": orbit.ybar1,
        "coordinates": list(orbit.coordinates),
        "dimension": f"{orbit.dimension[0]}|{orbit.dimension[1]}",
        "invariants": list(orbit.invariants),
    }
    if orbit.case != "trivial":
        report["kks_form"] = str(orbit.kks_form())
    return _emit(report, True)


def cmd_heisenberg_kks(args) -> int:
    from .symplectic import is_symplectic

    orbit = _orbit_from_args(args)
    if orbit.case == "trivial":
        return _emit({"command": "heisenberg kks", "error": "trivial orbit has no form"}, False)
    omega = orbit.kks_form()
    rep = is_symplectic(omega, [{n: 0 for n in orbit.chart.even}])
    report = {
        "command": "heisenberg kks",
        "case": orbit.case,
        "kks_form": str(omega),
        "closed": rep["closed"],
        "nondegenerate": rep["nondegenerate"],
        "homogeneously_nondegenerate": rep["homogeneously_nondegenerate"],
    }
    return _emit(report, rep["symplectic"])


def cmd_heisenberg_momentum(args) -> int:
    from .heisenberg import momentum_check

    orbit = _orbit_from_args(args)
    if orbit.case == "trivial":
        return _emit(
            {"command": "heisenberg momentum", "case": "trivial", "strongly_hamiltonian": True},
            True,
        )
    rep = momentum_check(orbit)
    cocycle, _ = orbit.momentum_cocycle()
    report = {
        "command": "heisenberg momentum",
        "case": orbit.case,
        "hamiltonian": rep["hamiltonian"],
        "momentum_cocycle": repr(cocycle),
        "strongly_hamiltonian": rep["strongly_hamiltonian"],
    }
    return _emit(report, rep["strongly_hamiltonian"])


def _load_cover(path: str):
    from .cech import load_cover

    try:
        with open(path, "r", encoding="utf-8") as fh:
            return load_cover(fh.read())
    except FileNotFoundError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc


def cmd_cech_periods(args) -> int:
    from .cech import period_group

    cover = _load_cover(args.file)
    per = period_group(cover.cocycle(), cover.nerve)
    report = {
        "command": "cech periods",
        "per": str(per.generator),
        "trivial": per.is_trivial(),
    }
    return _emit(report, True)


def cmd_cech_prequantize(args) -> int:
    from .cech import normalize_to_periods, period_group, prequantum_exists

    cover = _load_cover(args.file)
    d = Fraction(args.d) if args.d is not None else cover.d
    if d is None:
        raise CliError("no d given on the command line or in the cover file")
    a = cover.cocycle()
    per = period_group(a, cover.nerve)
    exists = prequantum_exists(per, d)
    report = {
        "command": "cech prequantize",
        "per": str(per.generator),
        "d": str(d),
        "exists": exists,
    }
    if exists:
        bprime, corrected, _ = normalize_to_periods(a, cover.nerve, per)
        report["normalized_cocycle"] = {str(k): str(v) for k, v in corrected.values.items()}
        report["correction"] = {str(k): str(v) for k, v in bprime.values.items()}
    return _emit(report, exists)


def cmd_cech_classify(args) -> int:
    from .cech import classify_prequantum

    cover = _load_cover(args.file)
    d = Fraction(args.d) if args.d is not None else (cover.d if cover.d is not None else Fraction(0))
    rep = classify_prequantum(cover.nerve, d)
    rep["command"] = "cech classify"
    return _emit(rep, True)


def _prequant_chart(doc: Document, args):
    from .prequant import PrequantChart
    from .symplectic import SymplecticData

    omega = _unique(doc.forms, "form", args.omega) if args.omega else doc.forms.get("omega")
    if omega is None:
        raise CliError("document needs a form named omega (or use --omega)")
    theta = _unique(doc.forms, "form", args.theta) if args.theta else doc.forms.get("theta")
    if theta is None:
        raise CliError("document needs a form named theta (or use --theta)")
    sd = SymplecticData(omega, [_parse_point(p) for p in args.point])
    return PrequantChart(sd, theta, Fraction(args.d) if args.d else 0)


def cmd_prequant_eta(args) -> int:
    doc = _load_document(args.file)
    pq = _prequant_chart(doc, args)
    f = _cfunction(doc, args.f, pq.base.chart)
    eta = pq.eta_field(f)
    report = {
        "command": "prequant eta",
        "f": str(f),
        "eta": str(eta),
        "preserves_connection": pq.symmetry_check(eta),
    }
    return _emit(report, report["preserves_connection"])


def cmd_prequant_qop(args) -> int:
    from .prequant import Section, quantum_op

    doc = _load_document(args.file)
    pq = _prequant_chart(doc, args)
    chart = pq.base.chart
    f = _cfunction(doc, args.f, chart)
    s_val = doc.evaluate(args.section, chart)
    if isinstance(s_val, GaussianRational):
        s_val = chart.constant(s_val)
    if not isinstance(s_val, SuperFunction):
        raise CliError("--section must be a superfunction on the base chart")
    out = quantum_op(f, Section(s_val), pq)
    report = {
        "command": "prequant qop",
        "f": str(f),
        "section": str(s_val),
        "result": str(out.fun),
    }
    return _emit(report, True)


def cmd_prequant_repcheck(args) -> int:
    from .prequant import Section, rep_check

    doc = _load_document(args.file)
    pq = _prequant_chart(doc, args)
    chart = pq.base.chart
    f = _cfunction(doc, args.f, chart)
    g = _cfunction(doc, args.g, chart)
    sections = []
    for expr in args.sections.split(";"):
        val = doc.evaluate(expr.strip(), chart)
        if isinstance(val, GaussianRational):
            val = chart.constant(val)
        if not isinstance(val, SuperFunction):
            raise CliError(f"section {expr!r} is not a superfunction")
        sections.append(Section(val))
    ok = rep_check(f, g, pq, sections)
    report = {
        "command": "prequant repcheck",
        "f": str(f),
        "g": str(g),
        "sections": len(sections),
        "holds": ok,
    }
    return _emit(report, ok)


def cmd_verify(args) -> int:
    from .verify import run_section

    results = run_section(args.section)
    ok = all(r.ok for r in results)
    report = {
        "command": "verify-paper",
        "section": args.section,
        "ok": ok,
        "passed": sum(r.ok for r in results),
        "total": len(results),
        "checks": [r.as_dict() for r in results],
    }
    return _emit(report, ok)


# ----------------------------------------------------------------------
# argument parsing
# ----------------------------------------------------------------------


def _add_point_option(p):
    p.add_argument(
        "--point",
        action="append",
        default=[],
        help="real base point, e.g. --point x=0,y=1/2 (repeatable)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="supersymp",
        description="exact engine for graded symplectic geometry and prequantization",
    )
    sub = parser.add_subparsers(dest="group", required=True)

    sym = sub.add_parser("symplectic", help="closedness, non-degeneracy, Poisson structure")
    sym_sub = sym.add_subparsers(dest="cmd", required=True)

    p = sym_sub.add_parser("check", help="closed + (homogeneously) non-degenerate report")
    p.add_argument("file")
    p.add_argument("--name", help="form name (default: the only form)")
    _add_point_option(p)
    p.set_defaults(fn=cmd_symplectic_check)

    p = sym_sub.add_parser("hamiltonian", help="solve i_X doubled-omega = df")
    p.add_argument("file")
    p.add_argument("--f", required=True, help="C-valued function, e.g. 'x*c0 + xi*c1'")
    p.add_argument("--name", help="form name")
    p.add_argument("--degree", type=int, default=None, help="ansatz degree bound")
    _add_point_option(p)
    p.set_defaults(fn=cmd_symplectic_hamiltonian)

    p = sym_sub.add_parser("poisson", help="Poisson bracket of two members")
    p.add_argument("file")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--name", help="form name")
    p.add_argument("--degree", type=int, default=None)
    _add_point_option(p)
    p.set_defaults(fn=cmd_symplectic_poisson)

    p = sym_sub.add_parser("darboux", help="pointwise normal form of a constant form")
    p.add_argument("--matrix", required=True, help='JSON rows of i_di i_dj omega, e.g. "[[0,1],[-1,0]]"')
    p.add_argument("--parities", required=True, help="comma list, e.g. 0,0,1")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--even", action="store_true")
    mode.add_argument("--odd", action="store_true")
    p.set_defaults(fn=cmd_symplectic_darboux)

    lie = sub.add_parser("liecoh", help="Lie algebra cohomology and central extensions")
    lie_sub = lie.add_subparsers(dest="cmd", required=True)

    p = lie_sub.add_parser("h2", help="dimensions and representatives of H^2")
    p.add_argument("file")
    p.add_argument("--name", help="algebra name")
    p.set_defaults(fn=cmd_liecoh_h2)

    p = lie_sub.add_parser("extend", help="central extension by a 2-cochain")
    p.add_argument("file")
    p.add_argument("--cocycle", help="cocycle name")
    p.add_argument("--name", help="algebra name")
    p.set_defaults(fn=cmd_liecoh_extend)

    p = lie_sub.add_parser("equiv", help="equivalence of two 2-cocycles")
    p.add_argument("file")
    p.add_argument("--cocycle", required=True)
    p.add_argument("--cocycle2", required=True)
    p.add_argument("--name", help="algebra name")
    p.set_defaults(fn=cmd_liecoh_equiv)

    heis = sub.add_parser("heisenberg", help="coadjoint orbits of a central extension")
    heis_sub = heis.add_subparsers(dest="cmd", required=True)
    for cname, handler, text in (
        ("orbit", cmd_heisenberg_orbit, "classify the orbit through (y0, ybar1)"),
        ("kks", cmd_heisenberg_kks, "orbit symplectic form"),
        ("momentum", cmd_heisenberg_momentum, "momentum map checks"),
    ):
        p = heis_sub.add_parser(cname, help=text)
        p.add_argument("file")
        p.add_argument("--y0", default="1")
        p.add_argument("--ybar1", default="0")
        p.add_argument("--name", help="pairing name")
        p.set_defaults(fn=handler)

    cech = sub.add_parser("cech", help="finite-cover periods and prequantization")
    cech_sub = cech.add_subparsers(dest="cmd", required=True)

    p = cech_sub.add_parser("periods", help="period group of the cover cocycle")
    p.add_argument("file")
    p.set_defaults(fn=cmd_cech_periods)

    p = cech_sub.add_parser("prequantize", help="existence and normalized cocycle")
    p.add_argument("file")
    p.add_argument("--d", default=None)
    p.set_defaults(fn=cmd_cech_prequantize)

    p = cech_sub.add_parser("classify", help="H^1 with Q/dZ coefficients")
    p.add_argument("file")
    p.add_argument("--d", default=None)
    p.set_defaults(fn=cmd_cech_classify)

    preq = sub.add_parser("prequant", help="connection symmetries and operators")
    preq_sub = preq.add_subparsers(dest="cmd", required=True)

    p = preq_sub.add_parser("eta", help="infinitesimal symmetry of a Poisson member")
    p.add_argument("file")
    p.add_argument("--f", required=True)
    p.add_argument("--omega", help="form name for omega")
    p.add_argument("--theta", help="form name for theta")
    p.add_argument("--d", default=None)
    _add_point_option(p)
    p.set_defaults(fn=cmd_prequant_eta)

    p = preq_sub.add_parser("qop", help="apply Q(f) to a section")
    p.add_argument("file")
    p.add_argument("--f", required=True)
    p.add_argument("--section", required=True)
    p.add_argument("--omega", help="form name for omega")
    p.add_argument("--theta", help="form name for theta")
    p.add_argument("--d", default=None)
    _add_point_option(p)
    p.set_defaults(fn=cmd_prequant_qop)

    p = preq_sub.add_parser("repcheck", help="[Q(f),Q(g)] = -i Q({f,g}) on samples")
    p.add_argument("file")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--sections", required=True, help="semicolon-separated section expressions")
    p.add_argument("--omega", help="form name for omega")
    p.add_argument("--theta", help="form name for theta")
    p.add_argument("--d", default=None)
    _add_point_option(p)
    p.set_defaults(fn=cmd_prequant_repcheck)

    p = sub.add_parser("verify-paper", help="re-derive the bundled worked examples")
    p.add_argument("section", help="section3..section9 or all")
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (CliError, DslError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(json.dumps({"error": f"{type(exc).__name__}: {exc}"}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
