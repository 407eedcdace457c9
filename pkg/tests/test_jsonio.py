"""Document layer: every loader rejects malformed input with SchemaError
and every dump/load pair round-trips."""

import pytest

from planeaut.corpus import family_cases
from planeaut.decompose import decompose, invert
from planeaut.equivariant import CyclicDiagonalAction, TorusDiagonalAction
from planeaut.errors import SchemaError
from planeaut.family import TorusFamily, linearize_family
from planeaut.fields import FieldDescriptor, mpq
from planeaut.jsonio import (dump_action, dump_affine, dump_aut,
                             dump_decomposition, dump_family_report,
                             load_action, load_affine, load_aut, load_family,
                             load_family_report, load_maps)
from planeaut.plane import AffineMap, BiPoly, PlaneEndo

QQ = FieldDescriptor.rationals()
FX = FieldDescriptor.rational_functions(QQ)


def _henon():
    return PlaneEndo(QQ, BiPoly(QQ, {(0, 1): mpq(1)}),
                     BiPoly(QQ, {(1, 0): mpq(1), (0, 2): mpq(-1)}))


def test_load_maps_variants():
    f = _henon()
    doc = {"field": QQ.to_json(), "maps": [f.to_json(),
                                           f.to_json()["components"]]}
    maps = load_maps(doc, minimum=2)
    assert maps[0] == maps[1] == f
    single = load_maps(f.to_json())
    assert single == [f]


def test_load_maps_rejections():
    with pytest.raises(SchemaError):
        load_maps([1, 2, 3])
    with pytest.raises(SchemaError):
        load_maps({"maps": [[[[1, 0], "1"]]]})  # bare pair without a field
    with pytest.raises(SchemaError):
        load_maps({"field": QQ.to_json(), "maps": []}, minimum=1)


def test_affine_round_trip():
    aff = AffineMap(QQ, ((mpq(1), mpq(2)), (mpq(0), mpq(1))),
                    (mpq(5), mpq(-1, 2)))
    assert load_affine(dump_affine(aff), QQ) == aff
    with pytest.raises(SchemaError):
        load_affine({"matrix": [["1", "0"]]}, QQ)


def test_aut_round_trip_checks_inverse():
    aut = invert(_henon())
    again = load_aut(dump_aut(aut))
    assert again.fwd == aut.fwd and again.inv == aut.inv
    broken = dump_aut(aut)
    broken["inv"] = broken["fwd"]
    with pytest.raises(SchemaError):
        load_aut(broken)


def test_action_round_trip():
    for action in (CyclicDiagonalAction(4, 1), TorusDiagonalAction(2, 1)):
        assert load_action(dump_action(action)) == action
    with pytest.raises(SchemaError):
        load_action({"kind": "dihedral"})


def test_decomposition_document_shape():
    doc = dump_decomposition(decompose(_henon()))
    assert doc["polydegree"] == [2]
    assert len(doc["affines"]) == len(doc["elementaries"]) + 1


def test_family_documents_round_trip():
    cases = family_cases()
    cyclic = next(c for c in cases if c["kind"] == "cyclic")
    torus = next(c for c in cases if c["kind"] == "torus")
    gens = cyclic["gens"]
    field = gens[0].field
    doc = {"group": {"kind": "cyclic", "order": cyclic["order"]},
           "field": field.to_json(),
           "generators": [g.to_json() for g in gens]}
    assert load_family(doc) == gens
    fam = torus["family"]
    field = fam.conjugator.fwd.field
    doc = {"group": {"kind": "torus", "w1": fam.weights[0],
                     "w2": fam.weights[1]},
           "field": field.to_json(),
           "conjugator": dump_aut(fam.conjugator)}
    loaded = load_family(doc)
    assert isinstance(loaded, TorusFamily)
    assert loaded.weights == fam.weights
    assert loaded.conjugator.fwd == fam.conjugator.fwd


def test_family_loader_rejections():
    with pytest.raises(SchemaError):
        load_family({"group": {"kind": "cyclic", "order": 2}})
    with pytest.raises(SchemaError):
        load_family({"group": {"kind": "cyclic", "order": 2},
                     "field": QQ.to_json(), "generators": [[[], []]]})
    with pytest.raises(SchemaError):
        load_family({"group": {"kind": "torus", "w1": 2},
                     "field": FX.to_json()})


def test_family_report_round_trip():
    R = FX.ring()
    b = R.make((mpq(0), mpq(-1), mpq(1)), (mpq(1),))
    g = PlaneEndo(FX, BiPoly(FX, {(1, 0): R.one, (0, 1): b}),
                  BiPoly(FX, {(0, 1): R.neg(R.one)}))
    report = linearize_family([g])
    doc = dump_family_report(report)
    assert doc["verified"] and doc["centers"] == ["0", "1"]
    loaded = load_family_report(doc, FX)
    assert loaded.conjugator.fwd == report.conjugator.fwd
    assert loaded.rho == report.rho
    with pytest.raises(SchemaError):
        load_family_report({"rho": []}, FX)
