"""JSON document layer shared by the command line front end.

Readers accept either a path or "-" for standard input and raise
SchemaError on anything malformed, so the CLI can map bad inputs to a
dedicated exit code.  Writers keep keys sorted and payloads free of
timestamps; identical requests must produce identical bytes.
"""

import json
import sys

from .equivariant import (AdCentralizerReport, CommutantSolution,
                          CyclicDiagonalAction, FiberCentralizerShape,
                          NonCyclicCentralizer, TorusDiagonalAction)
from .errors import SchemaError
from .family import FamilyLinearization, TorusFamily
from .fields import FieldDescriptor, K_RATFUNC
from .plane import AffineMap, PlaneAut, PlaneEndo


def read_document(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise SchemaError("cannot read %r: %s" % (path, exc)) from exc
    except json.JSONDecodeError as exc:
        raise SchemaError("invalid JSON in %r: %s" % (path, exc)) from exc


def write_document(obj, path=None):
    text = json.dumps(obj, indent=2, sort_keys=True)
    if path in (None, "-"):
        sys.stdout.write(text + "\n")
        return
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text + "\n")


def load_field(obj):
    return FieldDescriptor.from_json(obj)


def load_maps(doc, minimum=1):
    """Endomorphisms from {"field": .., "maps": [..]} or a single map.

    Entries may be full map objects or bare component pairs; bare pairs
    need the document-level field.
    """
    if not isinstance(doc, dict):
        raise SchemaError("document must be a JSON object")
    field = None
    if "field" in doc:
        field = load_field(doc["field"])
    if "maps" not in doc:
        return [PlaneEndo.from_json(doc, field)]
    entries = doc["maps"]
    if not isinstance(entries, list):
        raise SchemaError("'maps' must be a list")
    out = []
    for entry in entries:
        if isinstance(entry, dict):
            out.append(PlaneEndo.from_json(entry, field))
        elif isinstance(entry, list) and len(entry) == 2:
            if field is None:
                raise SchemaError("component pairs need a document field")
            out.append(PlaneEndo.from_json({"components": entry}, field))
        else:
            raise SchemaError("bad map entry %r" % (entry,))
    if len(out) < minimum:
        raise SchemaError("expected at least %d maps" % minimum)
    return out


def dump_endo(endo):
    return endo.to_json()


def dump_aut(aut):
    return {"fwd": aut.fwd.to_json(), "inv": aut.inv.to_json()}


def load_aut(obj, field=None):
    if not isinstance(obj, dict) or "fwd" not in obj or "inv" not in obj:
        raise SchemaError("automorphism must be {'fwd': .., 'inv': ..}")
    fwd = PlaneEndo.from_json(obj["fwd"], field)
    inv = PlaneEndo.from_json(obj["inv"], field)
    if not fwd.compose(inv).is_identity():
        raise SchemaError("'inv' is not the inverse of 'fwd'")
    return PlaneAut(fwd, inv)


def load_affine(obj, field):
    if not isinstance(obj, dict) or "matrix" not in obj:
        raise SchemaError("affine map must be {'matrix': [[..]], "
                          "'translation': [..]}")
    ring = field.ring()
    m = obj["matrix"]
    t = obj.get("translation", None)
    if not (isinstance(m, list) and len(m) == 2
            and all(isinstance(r, list) and len(r) == 2 for r in m)):
        raise SchemaError("matrix must be 2x2")
    mat = tuple(tuple(ring.from_json(c) for c in row) for row in m)
    if t is None:
        tr = (ring.zero, ring.zero)
    else:
        if not (isinstance(t, list) and len(t) == 2):
            raise SchemaError("translation must have two entries")
        tr = tuple(ring.from_json(c) for c in t)
    return AffineMap(field, mat, tr)


def dump_affine(aff):
    ring = aff.field.ring()
    return {"matrix": [[ring.to_json(c) for c in row] for row in aff.m],
            "translation": [ring.to_json(c) for c in aff.t]}


def load_action(obj):
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SchemaError("action must be {'kind': 'cyclic'|'torus', ..}")
    kind = obj["kind"]
    if kind == "cyclic":
        try:
            return CyclicDiagonalAction(int(obj["k"]), int(obj["e"]))
        except KeyError as exc:
            raise SchemaError("cyclic action needs 'k' and 'e'") from exc
    if kind == "torus":
        try:
            return TorusDiagonalAction(int(obj["w1"]), int(obj["w2"]))
        except KeyError as exc:
            raise SchemaError("torus action needs 'w1' and 'w2'") from exc
    raise SchemaError("unknown action kind %r" % (kind,))


def dump_action(action):
    if isinstance(action, CyclicDiagonalAction):
        return {"kind": "cyclic", "k": action.k, "e": action.e}
    return {"kind": "torus", "w1": action.w1, "w2": action.w2}


def dump_elementary(e):
    ring = e.field.ring()
    return {"a": ring.to_json(e.a), "p": [ring.to_json(c) for c in e.p],
            "b": ring.to_json(e.b), "c": ring.to_json(e.c)}


def dump_decomposition(dec):
    return {"field": dec.field.to_json(),
            "polydegree": list(dec.polydegree()),
            "affines": [dump_affine(a) for a in dec.affines],
            "elementaries": [dump_elementary(e) for e in dec.elementaries]}


def _dump_fiber_shape(shape):
    doc = {"empty": shape.empty,
           "degrees": list(shape.degrees),
           "allowed_exponents": [sorted(a) for a in shape.allowed],
           "scalar_shifts": {"first": shape.alpha0_free,
                             "second": shape.beta0_free}}
    if not shape.empty:
        doc["unit_coords"] = len(shape.degrees) + 2
        doc["free_coords"] = (shape.coeff_slots - len(shape.degrees)
                              + shape.s_dim - 2)
    return doc


def dump_centralizer(desc):
    """One JSON shape for all three centralizer descriptions."""
    if isinstance(desc, FiberCentralizerShape):
        doc = _dump_fiber_shape(desc)
        doc["case"] = "fiber"
        doc["action"] = dump_action(desc.action)
        return doc
    if isinstance(desc, AdCentralizerReport):
        doc = {"case": desc.case,
               "degrees": list(desc.degrees),
               "action": dump_action(desc.action),
               "components": desc.component_count,
               "fiber": _dump_fiber_shape(desc.fiber_std)}
        if desc.fiber_swapped_inner is not None:
            doc["fiber_at_infinity"] = _dump_fiber_shape(
                desc.fiber_swapped_inner)
        return doc
    if isinstance(desc, NonCyclicCentralizer):
        doc = {"case": desc.kind}
        if desc.kind == "monomial-triangular":
            doc["v"] = desc.v
            doc["swapped"] = desc.swapped
            doc["parameters"] = 3
        elif desc.kind == "diagonal":
            doc["parameters"] = 2
        return doc
    if isinstance(desc, CommutantSolution):
        doc = {"case": "commutant", "bound": desc.bound,
               "dimension": desc.dimension}
        if desc.support is not None:
            doc["support"] = [sorted(map(list, desc.support[0])),
                              sorted(map(list, desc.support[1]))]
        return doc
    raise SchemaError("no JSON form for %r" % (type(desc).__name__,))


def dump_linearization(lin, gens=()):
    """Emit psi/rho plus a verified bit re-derived from the generators
    when they are supplied, so the document carries its own audit."""
    verified = bool(lin.rho)
    conj = lin.conjugator
    for g, rho in zip(gens, lin.rho):
        endo = g.fwd if isinstance(g, PlaneAut) else g
        if conj.fwd.compose(endo).compose(conj.inv) != rho.to_endo():
            verified = False
            break
    return {"psi": dump_aut(conj),
            "rho": [dump_affine(r) for r in lin.rho],
            "verified": verified}


def dump_removal(removal, ctx):
    base = ctx.base.ring()
    steps = []
    for s in removal.steps:
        steps.append({"w_before": s.w_before,
                      "curve": s.curve.to_json(),
                      "mate": s.mate.to_json(),
                      "tau": dump_aut(s.tau),
                      "r1": s.scalings[0],
                      "r2": s.scalings[1]})
    return {"center": base.to_json(ctx.center),
            "initial_weight": removal.initial_weight,
            "alpha": dump_aut(removal.alpha),
            "psi": dump_aut(removal.result),
            "trace": steps}


def dump_family_report(report):
    base = report.conjugator.fwd.field.base.ring()
    sites = []
    for site in report.sites:
        sites.append({
            "center": base.to_json(site.center),
            "initial_weight": site.removal.initial_weight,
            "rounds": len(site.removal.steps),
            "scalings": [list(s.scalings) for s in site.removal.steps]})
    doc = {"psi": dump_aut(report.conjugator),
           "centers": [base.to_json(c) for c in report.centers],
           "residual": [],
           "verified": report.verified,
           "sites": sites}
    if report.weights is not None:
        doc["weights"] = list(report.weights)
    else:
        doc["rho"] = [dump_affine(r) for r in report.rho]
    return doc


def load_family(doc):
    """Family generators (or a torus family) from the CLI document.

    Cyclic groups supply explicit generators; a torus supplies its
    weight pair and the stored conjugator.  Coefficients live in the
    document-level function field.
    """
    if not isinstance(doc, dict) or "group" not in doc:
        raise SchemaError("family document needs a 'group' entry")
    group = doc["group"]
    if not isinstance(group, dict) or "kind" not in group:
        raise SchemaError("group must be {'kind': 'cyclic'|'torus', ..}")
    if "field" not in doc:
        raise SchemaError("family document needs a 'field' entry")
    field = load_field(doc["field"])
    if field.kind != K_RATFUNC:
        raise SchemaError("family coefficients must form a function field")
    kind = group["kind"]
    if kind == "torus":
        try:
            weights = (int(group["w1"]), int(group["w2"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError("torus group needs integer 'w1', 'w2'") from exc
        if "conjugator" not in doc:
            raise SchemaError("torus family needs a 'conjugator'")
        return TorusFamily(weights, load_aut(doc["conjugator"], field))
    if kind != "cyclic":
        raise SchemaError("unknown group kind %r" % (kind,))
    if not isinstance(group.get("order"), int) or group["order"] < 1:
        raise SchemaError("cyclic group needs a positive integer 'order'")
    gens = doc.get("generators")
    if not (isinstance(gens, list) and gens):
        raise SchemaError("cyclic family needs a nonempty 'generators' list")
    return [PlaneEndo.from_json(g, field) if isinstance(g, dict)
            else PlaneEndo.from_json({"components": g}, field)
            for g in gens]


def load_family_report(doc, field):
    """Rebuild the parts of a linearization report that the audit reads:
    the conjugator and the linear forms (or torus weights).  Descent
    traces are evidence for humans and are not reloaded.
    """
    if not isinstance(doc, dict) or "psi" not in doc:
        raise SchemaError("report needs the conjugator under 'psi'")
    conj = load_aut(doc["psi"], field)
    if "weights" in doc:
        ws = doc["weights"]
        if not (isinstance(ws, list) and len(ws) == 2):
            raise SchemaError("'weights' must hold two integers")
        return FamilyLinearization((), conj, (), weights=(int(ws[0]),
                                                          int(ws[1])))
    if "rho" not in doc:
        raise SchemaError("report needs 'rho' or 'weights'")
    rho = tuple(load_affine(r, field.base) for r in doc["rho"])
    return FamilyLinearization(rho, conj, ())
