"""Command-line interface: ``brauergraph <command> [options]``.

Exit codes: 0 ok, 1 usage, 2 invalid input or inapplicable hypotheses,
3 compare found a difference, 4 an internal cross-check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from brauergraph import kernels
from brauergraph.algebra import (
    build_table,
    center_predicted,
    center_solve,
    commutes,
    generators,
    gram_form,
)
from brauergraph.corpus import CorpusSpec, generate, run_suites, summarize
from brauergraph.fields import FieldSpec, Q, parse_field
from brauergraph.invariants import FieldMismatch, cartan_diagnostics, cartan_matrix, compare, fingerprint
from brauergraph.quiver import classify_special, detect_caterpillar, reduce, to_presentation
from brauergraph.ribbon import BGError, RibbonGraph, euler_genus, faces, parse_bg
from brauergraph.torus import CrossCheckError, HypothesisError, cross_check

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_DISTINGUISHED, EXIT_CROSSCHECK = 0, 1, 2, 3, 4


class CLIError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise CLIError(f"{self.prog}: {message}", EXIT_USAGE)


def _emit(args, data: dict, text: list[str]):
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print("\n".join(text))


def _jsonable(x):
    return str(x) if isinstance(x, Fraction) else x


def _load(path: str) -> RibbonGraph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CLIError(f"cannot read {path}: {exc.strerror}", EXIT_USAGE) from None
    try:
        return parse_bg(text)
    except BGError as exc:
        raise CLIError(f"{path}: {exc}", EXIT_INVALID) from None


def _field(args, g: RibbonGraph | None = None) -> FieldSpec:
    if args.field is not None:
        return args.field
    if g is not None and g.field is not None:
        return g.field
    return Q


def _table(g: RibbonGraph, f: FieldSpec):
    try:
        return build_table(reduce(to_presentation(g)), f)
    except ValueError as exc:
        raise CLIError(str(exc), EXIT_INVALID) from None


# -- commands -----------------------------------------------------------------


def cmd_validate(args) -> int:
    g = _load(args.path)
    chi, genus = euler_genus(g)
    per = sorted(f.perimeter for f in faces(g))
    flags = classify_special(g)
    cat = detect_caterpillar(to_presentation(g))
    summary = {
        "valid": True,
        "n_vertices": g.n_vertices,
        "n_edges": g.n_edges,
        "n_faces": len(per),
        "perimeters": per,
        "euler_characteristic": chi,
        "genus": genus,
        "deformed": len(g.deformed),
        "flags": flags._asdict(),
        "caterpillar": None if cat is None else cat._asdict(),
    }
    text = [
        f"valid: {g.n_vertices} vertices, {g.n_edges} edges, {len(per)} faces",
        f"perimeters: {' '.join(map(str, per))}",
        f"euler characteristic {chi}, genus {genus}",
        f"deformed marks: {len(g.deformed)}",
    ]
    on = [k for k, v in flags._asdict().items() if v]
    if cat is not None:
        on.append(f"caterpillar({cat.variant}, length {cat.length})")
    text.append(f"flags: {', '.join(on) if on else 'none'}")
    _emit(args, {"graph": g.to_dict(), "summary": summary}, text)
    return EXIT_OK


def _fingerprint(g: RibbonGraph, f: FieldSpec):
    try:
        return fingerprint(g, f)
    except CrossCheckError as exc:
        raise CLIError(f"cross-check failed: {exc}", EXIT_CROSSCHECK) from None
    except ValueError as exc:
        raise CLIError(str(exc), EXIT_INVALID) from None


def _fingerprint_lines(fp) -> list[str]:
    lines = []
    for k, v in fp.to_dict().items():
        if k == "flags":
            on = [name for name, val in v.items() if val]
            v = ", ".join(on) if on else "none"
        elif isinstance(v, list):
            v = " ".join(map(str, v)) or "-"
        elif v is None:
            v = "-"
        lines.append(f"{k}: {v}")
    return lines


def cmd_fingerprint(args) -> int:
    g = _load(args.path)
    fp = _fingerprint(g, _field(args, g))
    _emit(args, fp.to_dict(), _fingerprint_lines(fp))
    return EXIT_OK


def cmd_compare(args) -> int:
    a, b = _load(args.a), _load(args.b)
    fa, fb = _field(args, a), _field(args, b)
    if fa != fb:
        raise CLIError(f"inputs declare different fields ({fa} vs {fb}); pass --field", EXIT_INVALID)
    try:
        v = compare(_fingerprint(a, fa), _fingerprint(b, fb), extended=args.extended)
    except FieldMismatch as exc:
        raise CLIError(str(exc), EXIT_INVALID) from None
    _emit(args, {"distinguished": v.distinguished, "fields": v.fields}, [str(v)])
    return EXIT_DISTINGUISHED if v.distinguished else EXIT_OK


def cmd_center(args) -> int:
    g = _load(args.path)
    t = _table(g, _field(args, g))
    solved = center_solve(t)
    pred = center_predicted(t)
    gens = generators(t)
    central = {label: all(commutes(t, z, b) for b in gens) for label, z in pred.elements}
    agree = solved.dim == pred.dim and all(central.values())
    data = {
        "field": str(t.field),
        "dim_algebra": t.dim,
        "dim_center_solved": solved.dim,
        "dim_center_predicted": pred.dim,
        "agree": agree,
        "predicted_elements": [
            {"label": label, "central": central[label],
             "vector": {t.label(i): _jsonable(c) for i, c in sorted(z.items())}}
            for label, z in pred.elements
        ],
        "quotient_multiplicities": None if pred.quotient is None else list(pred.quotient),
    }
    text = [
        f"field: {t.field}",
        f"dim A: {t.dim}",
        f"dim Z(A) solved: {solved.dim}",
        f"dim Z(A) predicted: {pred.dim}",
        f"agree: {'yes' if agree else 'NO'}",
        "predicted basis: " + " ".join(pred_label for pred_label, _ in pred.elements),
    ]
    if pred.quotient is None:
        text.append("quotient multiplicities: suppressed for this graph")
    else:
        text.append("quotient multiplicities: " + (" ".join(map(str, pred.quotient)) or "none"))
    _emit(args, data, text)
    return EXIT_OK if agree else EXIT_CROSSCHECK


def cmd_cartan(args) -> int:
    g = _load(args.path)
    t = _table(g, _field(args, g))
    c = cartan_matrix(t)
    d = cartan_diagnostics(c, g)
    rows = c.tolist()
    data = {
        "matrix": rows,
        "rank": d.rank,
        "expected_rank": d.expected_rank,
        "smith_normal_form": d.snf,
        "rule_ok": d.rule_ok,
        "symmetric": c.is_symmetric(),
    }
    width = max((len(str(x)) for r in rows for x in r), default=1)
    text = [" ".join(str(x).rjust(width) for x in r) for r in rows]
    text += [
        f"rank: {d.rank} (bipartite rule expects {d.expected_rank})",
        f"smith normal form: {' '.join(map(str, d.snf))}",
        f"rule ok: {'yes' if d.rule_ok else 'NO'}",
    ]
    _emit(args, data, text)
    return EXIT_OK if d.rule_ok and c.is_symmetric() else EXIT_CROSSCHECK


def cmd_torus(args) -> int:
    g = _load(args.path)
    f = _field(args, g)
    try:
        rep = cross_check(to_presentation(g), f)
    except HypothesisError as exc:
        raise CLIError(exc.reason, EXIT_INVALID) from None
    except CrossCheckError as exc:
        raise CLIError(f"cross-check failed: {exc}", EXIT_CROSSCHECK) from None
    data = dict(rep._asdict(), field=str(f))
    text = [
        f"field: {f}",
        f"|E| = {rep.n_edges}, |V| = {rep.n_vertices}, d = {rep.deformed}",
        f"formula |E| - |V| - d + 2 = {rep.formula}",
        f"exponent matrix rank: {rep.matrix_rank}",
        f"diagonal group dimension: {rep.dim_group}",
        f"lattice torus rank: {rep.lattice}",
    ]
    _emit(args, data, text)
    return EXIT_OK


def cmd_algebra(args) -> int:
    g = _load(args.path)
    t = _table(g, _field(args, g))
    gram = gram_form(t)
    data = t.to_dict()
    data["gram"] = gram._asdict()
    text = [f"field: {t.field}", f"dimension: {t.dim}", "basis:"]
    text += [f"  {i}: {t.label(i)}" for i in range(t.dim)]
    text.append("nonzero products:")
    for i, j, k, c in t.nonzero_products():
        coef = "" if c == t.field.one else f"{c} "
        text.append(f"  {t.label(i)} . {t.label(j)} = {coef}{t.label(k)}")
    text.append(f"gram rank: {gram.rank} of {gram.dim}" + (" (inconclusive)" if gram.inconclusive else ""))
    text += [f"note: {n}" for n in t.notes]
    _emit(args, data, text)
    return EXIT_OK


def cmd_corpus(args) -> int:
    field = args.field or Q
    try:
        spec = CorpusSpec(args.seed, args.count, args.max_edges, args.max_mult, args.deform_prob, field)
    except ValueError as exc:
        raise CLIError(str(exc), EXIT_USAGE) from None
    check_fields = tuple(args.check_fields) if args.check_fields else (field,)
    graphs = generate(spec)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for i, g in enumerate(graphs):
            (out / f"graph_{i:04d}.bg").write_text(g.to_bg(), encoding="utf-8")
    results = [run_suites(g, check_fields) for g in graphs]
    summary = summarize(results)
    failed = sum(s.failed for s in summary)
    data = {
        "spec": {
            "seed": spec.seed,
            "count": spec.count,
            "max_edges": spec.max_edges,
            "max_mult": spec.max_mult,
            "deform_probability": spec.deform_probability,
            "field": str(spec.field),
            "check_fields": [str(f) for f in check_fields],
        },
        "graphs": [
            {
                "index": i,
                "n_edges": g.n_edges,
                "n_vertices": g.n_vertices,
                "deformed": len(g.deformed),
                "checks": [c._asdict() for c in res],
            }
            for i, (g, res) in enumerate(zip(graphs, results))
        ],
        "summary": [s._asdict() for s in summary],
        "failures": failed,
    }
    text = [
        f"corpus: seed {spec.seed}, {spec.count} graphs, |E| <= {spec.max_edges}, "
        f"mult <= {spec.max_mult}, deform probability {spec.deform_probability}, field {spec.field}",
        f"{'suite':<14}{'field':<7}{'pass':>6}{'fail':>6}{'skip':>6}",
    ]
    text += [f"{s.suite:<14}{s.field:<7}{s.passed:>6}{s.failed:>6}{s.skipped:>6}" for s in summary]
    for i, res in enumerate(results):
        for c in res:
            if c.status == "fail":
                text.append(f"FAIL graph {i} {c.suite} [{c.field}]: {c.detail}")
    text.append("all property suites pass" if not failed else f"{failed} check(s) failed")
    _emit(args, data, text)
    return EXIT_CROSSCHECK if failed else EXIT_OK


# -- argument parsing ---------------------------------------------------------


def _field_arg(text: str) -> FieldSpec:
    try:
        return parse_field(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _field_list(text: str) -> list[FieldSpec]:
    return [_field_arg(s) for s in text.split(",") if s.strip()]


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--field", type=_field_arg, default=argparse.SUPPRESS, metavar="F",
                        help="coefficient field: q, 2 or p:<prime> (overrides the file)")

    parser = _Parser(prog="brauergraph", parents=[common],
                     description="Brauer graph algebras and their derived invariants.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__import__('brauergraph').__version__} ({kernels.BACKEND} kernels)")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check a .bg file and summarize the surface").add_argument("path")
    add("fingerprint", cmd_fingerprint, "print the invariant fingerprint").add_argument("path")
    p = add("compare", cmd_compare, "compare the fingerprints of two graphs")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--extended", action="store_true",
                   help="also compare algebra dimension, center dimension and Cartan invariant factors")
    add("center", cmd_center, "solve for the center and compare with the predicted basis").add_argument("path")
    add("cartan", cmd_cartan, "Cartan matrix, rank rule and Smith normal form").add_argument("path")
    add("torus-rank", cmd_torus, "torus rank of the outer automorphism group, two ways").add_argument("path")
    add("algebra", cmd_algebra, "dump the basis and multiplication table").add_argument("path")
    p = add("corpus", cmd_corpus, "generate random graphs and run the property suites")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--max-edges", type=int, default=8)
    p.add_argument("--max-mult", type=int, default=3)
    p.add_argument("--deform-prob", type=float, default=0.5)
    p.add_argument("--check-fields", type=_field_list, default=None, metavar="F[,F...]",
                   help="fields to run the algebra suites over (default: the corpus field)")
    p.add_argument("--out", metavar="DIR", help="also write every graph as a .bg file")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.json = getattr(args, "json", False)
        args.field = getattr(args, "field", None)
        return args.func(args)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
