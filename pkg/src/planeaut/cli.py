"""Command line front end.

Each subcommand reads one JSON document (a path argument, or "-" for
standard input), writes JSON to --output or standard output, and exits
0 on success, 1 when a verification re-check fails, 2 on malformed
input, 3 when the mathematics refuses (NotAnAutomorphism and friends,
reported as {"error": name}).  Identical requests produce identical
bytes: keys are sorted, monomials keep their graded order, nothing is
timestamped.  PLANEAUT_SEED picks the corpus seed for `selftest`.
"""

import argparse
import json
import os
import sys

from .decompose import decompose, invert, polydegree
from .dvr import remove_pole
from .equivariant import (CyclicDiagonalAction, TorusDiagonalAction,
                          centralizer_structure_noncyclic,
                          classify_ad_centralizer)
from .errors import FamilyValidationError, PlaneautError, SchemaError
from .family import TorusFamily, linearize_family, verify_family
from .fields import DVRContext, FieldDescriptor
from .groups import linearize_over_field
from .jsonio import (dump_aut, dump_centralizer, dump_decomposition,
                     dump_endo, dump_family_report, dump_linearization,
                     dump_removal, load_affine, load_aut, load_family,
                     load_family_report, load_field, load_maps,
                     read_document, write_document)
from .plane import PlaneEndo
from .selftest import CRITERIA, SUITES, run_criteria


def _single_map(doc):
    maps = load_maps(doc, minimum=1)
    if len(maps) != 1:
        raise SchemaError("this subcommand takes exactly one map")
    return maps[0]


def _parse_ints(text, flag, count=None):
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError as exc:
        raise SchemaError("%s wants comma-separated integers" % flag) from exc
    if count is not None and len(parts) != count:
        raise SchemaError("%s wants exactly %d integers" % (flag, count))
    return parts


def _field_flag(text):
    """--field takes a descriptor object or the shorthands 'rationals'
    and 'cyclotomic:k'."""
    if text is None:
        return FieldDescriptor.rationals()
    text = text.strip()
    if text.startswith("{"):
        try:
            return load_field(json.loads(text))
        except json.JSONDecodeError as exc:
            raise SchemaError("bad --field JSON: %s" % exc) from exc
    if text == "rationals":
        return FieldDescriptor.rationals()
    if text.startswith("cyclotomic:"):
        try:
            return FieldDescriptor.cyclotomic(int(text.split(":", 1)[1]))
        except ValueError as exc:
            raise SchemaError("bad cyclotomic order in --field") from exc
    raise SchemaError("unknown field shorthand %r" % (text,))


def _cmd_compose(args):
    maps = load_maps(read_document(args.input), minimum=2)
    out = maps[0]
    for nxt in maps[1:]:
        out = out.compose(nxt)
    write_document(dump_endo(out), args.output)
    return 0


def _cmd_invert(args):
    aut = invert(_single_map(read_document(args.input)))
    write_document(dump_aut(aut), args.output)
    return 0


def _cmd_decompose(args):
    dec = decompose(_single_map(read_document(args.input)))
    write_document(dump_decomposition(dec), args.output)
    return 0


def _cmd_polydegree(args):
    f = _single_map(read_document(args.input))
    write_document({"polydegree": list(polydegree(f))}, args.output)
    return 0


def _cmd_centralizer(args):
    field = _field_flag(args.field)
    if (args.k is None) == (args.weight is None):
        raise SchemaError("centralizer wants exactly one of --k, --weight")
    if args.k is not None:
        parts = _parse_ints(args.k, "--k")
        if len(parts) == 1:
            parts = (parts[0], 1)
        if len(parts) != 2:
            raise SchemaError("--k wants k or k,e")
        action = CyclicDiagonalAction(parts[0], parts[1])
    else:
        w1, w2 = _parse_ints(args.weight, "--weight", 2)
        action = TorusDiagonalAction(w1, w2)
    if args.polydegree is not None:
        degrees = _parse_ints(args.polydegree, "--polydegree")
        desc = classify_ad_centralizer(degrees, action)
    elif isinstance(action, TorusDiagonalAction):
        desc = centralizer_structure_noncyclic(field, action)
    else:
        raise SchemaError("a cyclic action needs --polydegree")
    write_document(dump_centralizer(desc), args.output)
    return 0


def _load_generators(doc):
    if not isinstance(doc, dict) or "generators" not in doc:
        raise SchemaError("expected {'field': .., 'generators': [..]}")
    if "field" not in doc:
        raise SchemaError("generators need a document-level field")
    field = load_field(doc["field"])
    gens = []
    for entry in doc["generators"]:
        if isinstance(entry, dict) and "fwd" in entry:
            gens.append(load_aut(entry, field).fwd)
        elif isinstance(entry, dict):
            gens.append(PlaneEndo.from_json(entry, field))
        elif isinstance(entry, list) and len(entry) == 2:
            gens.append(PlaneEndo.from_json({"components": entry}, field))
        else:
            raise SchemaError("bad generator entry %r" % (entry,))
    if not gens:
        raise SchemaError("no generators given")
    return field, gens


def _cmd_linearize(args):
    _, gens = _load_generators(read_document(args.input))
    lin = linearize_over_field(gens)
    write_document(dump_linearization(lin, gens), args.output)
    return 0


def _cmd_remove_pole(args):
    doc = read_document(args.input)
    if not isinstance(doc, dict) or "psi" not in doc or "field" not in doc:
        raise SchemaError("remove-pole wants {'field': .., 'psi': .., ..}")
    field = load_field(doc["field"])
    if not field.is_ratfunc:
        raise SchemaError("remove-pole needs a function-field document")
    entry = doc["psi"]
    if isinstance(entry, dict) and "fwd" in entry:
        psi = load_aut(entry, field)
    else:
        psi = invert(PlaneEndo.from_json(entry, field))
    base = field.base.ring()
    raw = args.at.strip()
    center = base.from_json(json.loads(raw) if raw.startswith("{") else raw)
    ctx = DVRContext(field, center)
    rhos = doc.get("rhos", [])
    if not isinstance(rhos, list):
        raise SchemaError("'rhos' must be a list of affine maps")
    rhos = tuple(load_affine(r, field.base) for r in rhos)
    weights = None
    if "weights" in doc:
        ws = doc["weights"]
        if not (isinstance(ws, list) and len(ws) == 2):
            raise SchemaError("'weights' must hold two integers")
        weights = (int(ws[0]), int(ws[1]))
    removal = remove_pole(psi, ctx, rhos=rhos, weights=weights)
    write_document(dump_removal(removal, ctx), args.output)
    return 0


def _cmd_family(args):
    gens = load_family(read_document(args.input))
    report = linearize_family(gens)
    write_document(dump_family_report(report), args.output)
    return 0 if report.verified else 1


def _cmd_verify(args):
    doc = read_document(args.input)
    if not isinstance(doc, dict) or "family" not in doc or "report" not in doc:
        raise SchemaError("verify wants {'family': .., 'report': ..}")
    gens = load_family(doc["family"])
    if isinstance(gens, TorusFamily):
        field = gens.conjugator.fwd.field
    else:
        field = gens[0].field
    report = load_family_report(doc["report"], field)
    ok = verify_family(gens, report)
    write_document({"verified": bool(ok)}, args.output)
    return 0 if ok else 1


def _cmd_selftest(args):
    names = set(SUITES) | {name for name, _, _ in CRITERIA}
    if args.suite not in names:
        raise SchemaError("unknown suite %r; choose one of %s"
                          % (args.suite, ", ".join(sorted(names))))
    try:
        seed = int(os.environ.get("PLANEAUT_SEED", "0"))
    except ValueError as exc:
        raise SchemaError("PLANEAUT_SEED must be an integer") from exc
    lines = []
    ok = run_criteria(args.suite, seed=seed, out=lines.append)
    text = "".join(line + "\n" for line in lines)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    return 0 if ok else 1


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="planeaut",
        description="Exact computations with polynomial automorphisms of "
                    "the affine plane.")
    sub = parser.add_subparsers(dest="subcommand", required=True,
                                metavar="command")

    def add(name, handler, text, takes_input=True):
        cmd = sub.add_parser(name, help=text, description=text)
        if takes_input:
            cmd.add_argument("input", nargs="?", default="-",
                             help="JSON document path, - for stdin")
        cmd.add_argument("--output", default=None,
                         help="write the result here instead of stdout")
        cmd.set_defaults(handler=handler)
        return cmd

    add("compose", _cmd_compose,
        "compose the listed maps; the last listed map is applied first")
    add("invert", _cmd_invert, "invert one polynomial map exactly")
    add("decompose", _cmd_decompose,
        "write a map as affine and triangular letters")
    add("polydegree", _cmd_polydegree,
        "degree sequence of the triangular letters, [] for affine maps")
    cen = add("centralizer", _cmd_centralizer,
              "equivariant-automorphism structure for a diagonal action",
              takes_input=False)
    cen.add_argument("--field", default=None,
                     help="descriptor JSON, 'rationals' or 'cyclotomic:k'")
    cen.add_argument("--k", default=None,
                     help="cyclic order k, or k,e for the second exponent")
    cen.add_argument("--weight", default=None, help="torus weights w1,w2")
    cen.add_argument("--polydegree", default=None,
                     help="degree sequence d1,d2,... to classify within")
    add("linearize", _cmd_linearize,
        "shared conjugator taking finite-order generators to linear maps")
    rem = add("remove-pole", _cmd_remove_pole,
              "clear one parameter pole of a linearizing conjugator")
    rem.add_argument("--at", required=True,
                     help="pole center, a base-field scalar such as 0 or 1/2")
    add("family", _cmd_family,
        "linearize a one-parameter family and emit the audited report")
    add("verify", _cmd_verify, "re-check a family linearization report")
    st = add("selftest", _cmd_selftest, "run the oracle suites",
             takes_input=False)
    st.add_argument("--suite", default="all",
                    help="one of %s, or a single criterion name"
                         % ", ".join(SUITES))
    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (None, 0) else 2
    output = getattr(args, "output", None)
    try:
        return args.handler(args)
    except SchemaError as exc:
        write_document({"error": "SchemaError", "detail": str(exc)}, output)
        return 2
    except FamilyValidationError as exc:
        write_document({"error": type(exc).__name__, "detail": str(exc)},
                       output)
        return 1
    except PlaneautError as exc:
        write_document({"error": type(exc).__name__, "detail": str(exc)},
                       output)
        return 3


if __name__ == "__main__":
    sys.exit(main())
