"""Command-line front end.

Subcommands: classify-relation, classify-language, normalize, verdict,
gadget, count, reduce, table1.  Human-readable text by default, --json
for machine output.  Exit codes: 0 success, 1 domain error (not in
class, no witness, budget, bad method), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import limits
from .classify import RelationClass, classify_relation
from .counting import affine_count, brute_force_count, degree1_count
from .errors import BcspError, ParseError
from .fileio import (
    builtin_relation,
    parse_hypergraph,
    parse_instance,
    parse_language,
    parse_named_relation,
    parse_relation_literal,
    serialize_hypergraph,
    serialize_instance,
)
from .formula import NormalizedFormula
from .gadgets import GadgetWitness, VerificationReport, equality_witness, verify_gadget
from .classify import normalize_imconj, normalize_nandconj, normalize_orconj
from .reductions import (
    his_to_orcsp,
    his_to_relationcsp,
    inflate_degree,
    orcsp_to_his,
    relationcsp_to_his,
)
from .relation import PppRecipe, Relation
from .verdict import LanguageVerdict, classify_language_degree, table1_annotation

REDUCE_KINDS = ("inflate", "his2csp", "csp2his", "rel2his", "his2rel")


# --- argument loading ---------------------------------------------------


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None


def load_relation_arg(arg: str) -> tuple[str, Relation]:
    """A relation from an inline literal, a file, or a built-in name."""
    if arg.strip().startswith("{"):
        return "literal", parse_relation_literal(arg)
    if os.path.exists(arg):
        return parse_named_relation(_read(arg))
    rel = builtin_relation(arg)
    if rel is not None:
        return arg, rel
    raise ParseError(f"{arg!r} is neither a literal, an existing file, nor a built-in name")


def load_language_arg(arg: str) -> tuple[tuple[str, ...], tuple[Relation, ...]]:
    """A language from a file of relation blocks or a comma-separated
    list of built-in names and literals."""
    if os.path.exists(arg):
        catalog = parse_language(_read(arg))
        return tuple(catalog), tuple(catalog.values())
    names, rels = [], []
    for i, piece in enumerate(p.strip() for p in arg.split(",")):
        if not piece:
            raise ParseError("empty language entry")
        if piece.startswith("{"):
            names.append(f"literal{i}")
            rels.append(parse_relation_literal(piece))
        else:
            rel = builtin_relation(piece)
            if rel is None:
                raise ParseError(f"unknown relation {piece!r}")
            names.append(piece)
            rels.append(rel)
    return tuple(names), tuple(rels)


# --- JSON views ----------------------------------------------------------


def relation_json(rel: Relation) -> dict:
    return {"arity": rel.arity, "tuples": ["".join(map(str, t)) for t in rel.tuples()]}


def formula_json(f: NormalizedFormula | None) -> dict | None:
    if f is None:
        return None
    out = {"kind": f.kind, "arity": f.arity, "falsum": f.falsum,
           "pins": {str(v): c for v, c in f.pins}, "text": f.render()}
    if f.kind == "im":
        out["implications"] = [list(p) for p in f.implications]
    else:
        out["clauses"] = [list(c) for c in f.clauses]
    return out


def recipe_json(r: PppRecipe | None) -> dict | None:
    if r is None:
        return None
    return {"kept": list(r.kept), "pins": {str(c): v for c, v in r.pins}}


def relation_class_json(rc: RelationClass) -> dict:
    return {
        "relation": relation_json(rc.relation),
        "affine": rc.affine,
        "orconj": formula_json(rc.orconj),
        "nandconj": formula_json(rc.nandconj),
        "imconj": formula_json(rc.imconj),
        "width": rc.width,
        "repetition": rc.repetition,
        "simulates_equality": rc.simulates_equality(),
        "equality_witness": witness_json(rc.equality_witness),
    }


def witness_json(w: GadgetWitness | None) -> dict | None:
    if w is None:
        return None
    return {
        "k": w.k,
        "m": w.multiplicity,
        "d": w.degree_bound,
        "route": w.route,
        "distinguished": list(w.distinguished),
        "degree_profile": w.degree_profile(),
        "extension_counts": [
            {"alpha": e.alpha, "beta": e.beta, "gamma": e.gamma}
            for e in w.extension_counts
        ],
        "language": {n: relation_json(r) for n, r in zip(w.names, w.language)},
        "template": serialize_instance(w.template),
    }


def report_json(rep: VerificationReport) -> dict:
    return {
        "zero_count": rep.zero_count,
        "one_count": rep.one_count,
        "stray_count": rep.stray_count,
        "multiplicity_ok": rep.multiplicity_ok,
        "template_degree": rep.template_degree,
        "distinguished_degrees": rep.distinguished_degrees,
        "degree_ok": rep.degree_ok,
        "passed": rep.passed,
    }


def verdict_json(v: LanguageVerdict) -> dict:
    return {
        "scope": v.scope,
        "branch": v.branch,
        "d": v.d,
        "w": v.w,
        "k": v.k,
        "lower": v.lower,
        "upper": v.upper,
        "lower_annotation": v.lower_annotation,
        "upper_annotation": v.upper_annotation,
        "no_fpras_tag": v.no_fpras_tag,
        "note": v.note,
        "implies_source": v.implies_source,
        "implies_recipe": recipe_json(v.implies_recipe),
        "equality_witness": witness_json(v.equality_witness),
        "relations": [relation_class_json(rc) for rc in v.relation_classes],
    }


# --- subcommand handlers --------------------------------------------------


def _cmd_classify_relation(args) -> int:
    _, rel = load_relation_arg(args.relation)
    rc = classify_relation(rel)
    if args.json:
        print(json.dumps(relation_class_json(rc), indent=2))
        return 0
    print(f"relation: {rel}")
    print(f"affine: {'yes' if rc.affine else 'no'}")
    for label, f in (("or-conj", rc.orconj), ("nand-conj", rc.nandconj), ("im-conj", rc.imconj)):
        print(f"{label}: {f.render() if f is not None else 'no'}")
    if rc.width is not None:
        print(f"width: {rc.width}  repetition: {rc.repetition}")
    if rc.equality_witness is not None:
        w = rc.equality_witness
        print(f"simulates equality: yes (route {w.route}, k={w.k}, m={w.multiplicity})")
    else:
        print("simulates equality: not needed (clause-definable)")
    return 0


def _cmd_classify_language(args) -> int:
    names, rels = load_language_arg(args.language)
    records = [classify_relation(r) for r in rels]
    if args.json:
        print(json.dumps(
            {n: relation_class_json(rc) for n, rc in zip(names, records)}, indent=2
        ))
        return 0
    for n, rc in zip(names, records):
        shapes = [label for label, f in (
            ("affine", rc.affine), ("or-conj", rc.orconj),
            ("nand-conj", rc.nandconj), ("im-conj", rc.imconj),
        ) if f]
        print(f"{n}: {', '.join(shapes) if shapes else 'simulates equality'}")
    return 0


def _cmd_normalize(args) -> int:
    _, rel = load_relation_arg(args.relation)
    kinds = {
        "or": normalize_orconj, "nand": normalize_nandconj, "im": normalize_imconj,
    }
    if args.kind:
        formula = kinds[args.kind](rel)
        print(json.dumps(formula_json(formula), indent=2) if args.json else formula.render())
        return 0
    results = {}
    for kind, fn in kinds.items():
        try:
            results[kind] = fn(rel)
        except BcspError:
            results[kind] = None
    if args.json:
        print(json.dumps({k: formula_json(f) for k, f in results.items()}, indent=2))
    else:
        for kind, f in results.items():
            print(f"{kind}: {f.render() if f is not None else 'not in class'}")
    return 0


def _cmd_verdict(args) -> int:
    names, rels = load_language_arg(args.language)
    d = None if args.unbounded else args.d
    if d is None and not args.unbounded:
        raise ParseError("give --d <n> or --unbounded")
    v = classify_language_degree(rels, d, names=names)
    if args.json:
        print(json.dumps(verdict_json(v), indent=2))
        return 0
    print(f"scope: {v.scope}")
    print(f"branch: {v.branch}")
    if v.branch == "HIS-interval":
        print(f"width: {v.w}  repetition: {v.k}")
        print(f"interval: {v.lower} [{v.lower_annotation}] .. {v.upper} [{v.upper_annotation}]")
    if v.no_fpras_tag:
        print("tag: no-FPRAS-unless-NP=RP")
    if v.implies_recipe is not None:
        print(f"implication recipe: kept={list(v.implies_recipe.kept)} "
              f"pins={dict(v.implies_recipe.pins)} (relation #{v.implies_source})")
    if v.equality_witness is not None:
        w = v.equality_witness
        print(f"equality witness: route {w.route}, k={w.k}, m={w.multiplicity}")
    if v.note:
        print(f"note: {v.note}")
    return 0


def _cmd_gadget(args) -> int:
    names, rels = load_language_arg(args.language)
    witness = equality_witness(rels, k=args.k, d=args.d, names=names)
    payload = witness_json(witness)
    if args.verify:
        report = verify_gadget(witness)
        payload["verification"] = report_json(report)
        if not report.passed:
            print(json.dumps(payload, indent=2) if args.json
                  else "verification FAILED")
            return 1
    if args.json:
        print(json.dumps(payload, indent=2))
        return 0
    print(serialize_instance(witness.template), end="")
    cert = {k: v for k, v in payload.items() if k != "template"}
    print("certificate: " + json.dumps(cert))
    return 0


def _cmd_count(args) -> int:
    inst = parse_instance(_read(args.instance))
    if args.method == "brute":
        z = brute_force_count(inst)
    elif args.method == "affine":
        z = affine_count(inst)
    else:
        z = degree1_count(inst)
    if args.json:
        print(json.dumps({"method": args.method, "count": z}))
    else:
        print(z)
    return 0


def _cmd_reduce(args) -> int:
    sidecar: dict = {"kind": args.kind, "multiplier": 1}
    if args.kind == "inflate":
        inst = parse_instance(_read(args.input))
        if not args.relation:
            raise ParseError("inflate needs --relation <language>")
        _, rels = load_language_arg(args.relation)
        out, m = inflate_degree(inst, rels, d=args.d)
        sidecar.update(multiplier=m, degree=out.degree())
        text = serialize_instance(out)
    elif args.kind == "his2csp":
        h = parse_hypergraph(_read(args.input))
        w = args.w if args.w else max(2, h.width())
        out = his_to_orcsp(h, w)
        sidecar.update(width=w)
        text = serialize_instance(out)
    elif args.kind == "csp2his":
        inst = parse_instance(_read(args.input))
        out = orcsp_to_his(inst)
        sidecar.update(width=out.width(), degree=out.degree())
        text = serialize_hypergraph(out)
    elif args.kind == "rel2his":
        inst = parse_instance(_read(args.input))
        if not args.relation:
            raise ParseError("rel2his needs --relation")
        _, rel = load_relation_arg(args.relation)
        out, bound = relationcsp_to_his(inst, rel)
        sidecar.update(degree_bound=bound, width=out.width())
        text = serialize_hypergraph(out)
    else:  # his2rel
        h = parse_hypergraph(_read(args.input))
        if not args.relation:
            raise ParseError("his2rel needs --relation")
        _, rel = load_relation_arg(args.relation)
        out = his_to_relationcsp(h, rel)
        text = serialize_instance(out)
    if args.json:
        print(json.dumps({"artifact": text, "sidecar": sidecar}, indent=2))
        return 0
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        with open(args.out + ".json", "w", encoding="utf-8") as fh:
            json.dump(sidecar, fh, indent=2)
        print(f"wrote {args.out} and {args.out}.json")
    else:
        print(text, end="")
        print("sidecar: " + json.dumps(sidecar))
    return 0


def _cmd_table1(args) -> int:
    if args.w is not None and args.d is not None:
        a = table1_annotation(args.w, args.d)
        print(json.dumps({"w": args.w, "d": args.d, "annotation": a}) if args.json else a)
        return 0
    rows = []
    for d in (1, 2, 3, 4, 5, 6, 24, 25):
        for w in (2, 3, 4):
            rows.append({"d": d, "w": w, "annotation": table1_annotation(w, d)})
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        for row in rows:
            print(f"d={row['d']:<3} w={row['w']:<3} {row['annotation']}")
    return 0


# --- entry points ----------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bcsp",
        description="classify Boolean relations, synthesize equality gadgets, "
                    "count and reduce exactly",
    )
    parser.add_argument("--arity-cap", type=int, default=None,
                        help="maximum relation arity (env BCSP_ARITY_CAP)")
    parser.add_argument("--budget", type=int, default=None,
                        help="maximum enumerated variables (env BCSP_BRUTE_BUDGET)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify-relation", help="class memberships of one relation")
    p.add_argument("relation")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_classify_relation)

    p = sub.add_parser("classify-language", help="class memberships per relation")
    p.add_argument("language")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_classify_language)

    p = sub.add_parser("normalize", help="normalized defining formulas")
    p.add_argument("relation")
    p.add_argument("--kind", choices=("or", "nand", "im"))
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_normalize)

    p = sub.add_parser("verdict", help="complexity verdict for a language")
    p.add_argument("language")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--unbounded", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_verdict)

    p = sub.add_parser("gadget", help="synthesize an equality-simulation witness")
    p.add_argument("language")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_gadget)

    p = sub.add_parser("count", help="exact model count of an instance")
    p.add_argument("instance")
    p.add_argument("--method", choices=("brute", "affine", "degree1"), default="brute")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_count)

    p = sub.add_parser("reduce", help="count-preserving transformations")
    p.add_argument("kind", choices=REDUCE_KINDS)
    p.add_argument("input")
    p.add_argument("--relation", default=None)
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--w", type=int, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_reduce)

    p = sub.add_parser("table1", help="approximability annotation lookup")
    p.add_argument("w", type=int, nargs="?", default=None)
    p.add_argument("d", type=int, nargs="?", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_table1)

    return parser


def run(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    limits.set_override("arity_cap", args.arity_cap)
    limits.set_override("brute_budget", args.budget)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BcspError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    finally:
        limits.set_override("arity_cap", None)
        limits.set_override("brute_budget", None)


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
