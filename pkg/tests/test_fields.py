"""Coefficient field arithmetic: rationals, cyclotomic extensions, and
one-variable rational functions with their valuations."""

import pytest
from hypothesis import given, strategies as st

from planeaut.errors import DivisionByZero, SchemaError
from planeaut.fields import DVRContext, FieldDescriptor, mpq

QQ = FieldDescriptor.rationals()
C3 = FieldDescriptor.cyclotomic(3)
C6 = FieldDescriptor.cyclotomic(6)
FX = FieldDescriptor.rational_functions(QQ)

rationals = st.builds(mpq, st.integers(-30, 30), st.integers(1, 12))


@given(rationals, rationals, rationals)
def test_rational_ring_axioms(a, b, c):
    R = QQ.ring()
    assert R.add(R.add(a, b), c) == R.add(a, R.add(b, c))
    assert R.mul(a, b) == R.mul(b, a)
    assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
    if not R.is_zero(a):
        assert R.mul(a, R.inv(a)) == R.one


@given(rationals)
def test_rational_json_round_trip(a):
    R = QQ.ring()
    assert R.from_json(R.to_json(a)) == a


def test_rational_inverse_of_zero():
    with pytest.raises(DivisionByZero):
        QQ.ring().inv(mpq(0))


def test_cyclotomic_minimal_polynomial():
    # zeta_3 satisfies z^2 + z + 1 = 0 and zeta_6 satisfies z^2 - z + 1 = 0.
    R3 = C3.ring()
    z = R3.zeta
    assert R3.is_zero(R3.add(R3.add(R3.mul(z, z), z), R3.one))
    R6 = C6.ring()
    w = R6.zeta
    assert R6.is_zero(R6.add(R6.sub(R6.mul(w, w), w), R6.one))
    assert R6.eq(R6.pow(w, 3), R6.neg(R6.one))
    assert R6.eq(R6.pow(w, 6), R6.one)


def test_cyclotomic_inverse():
    R = C6.ring()
    z = R.zeta
    assert R.eq(R.mul(z, R.inv(z)), R.one)
    a = R.add(z, R.from_int(2))
    assert R.eq(R.mul(a, R.inv(a)), R.one)


def test_cyclotomic_json_rejects_order_mismatch():
    R = C3.ring()
    payload = R.to_json(R.zeta)
    payload["k"] = 4
    with pytest.raises(SchemaError):
        R.from_json(payload)


def test_cyclotomic_json_rejects_long_tail():
    R = C3.ring()
    with pytest.raises(SchemaError):
        R.from_json({"k": 3, "coeffs": ["0", "0", "1"]})
    # a long but zero tail is tolerated
    assert R.eq(R.from_json({"k": 3, "coeffs": ["0", "1", "0"]}), R.zeta)


def test_rational_function_valuations():
    R = FX.ring()
    x = R.gen
    # x^2 / (x - 1) vanishes to order 2 at 0 and has a simple pole at 1
    f = R.mul(R.mul(x, x), R.inv(R.sub(x, R.one)))
    assert R.valuation_at(f, mpq(0)) == 2
    assert R.valuation_at(f, mpq(1)) == -1
    assert R.valuation_at(f, mpq(2)) == 0
    assert R.valuation_at(R.sub(x, R.from_int(2)), mpq(2)) == 1


def test_rational_function_eval():
    R = FX.ring()
    x = R.gen
    f = R.add(R.mul(x, x), R.from_int(1))
    assert R.eval_at(f, mpq(3)) == mpq(10)
    with pytest.raises(DivisionByZero):
        R.eval_at(R.inv(x), mpq(0))


def test_rational_function_from_base_constant():
    R = FX.ring()
    c = R.from_base(mpq(5, 3))
    assert R.constant_value(c) == mpq(5, 3)
    with pytest.raises(ValueError):
        R.constant_value(R.gen)


@given(st.integers(0, 2 ** 30))
def test_rational_function_field_axioms(seed):
    import random
    R = FX.ring()
    g = random.Random(seed)
    a, b = R.rand(g), R.rand(g)
    assert R.eq(R.add(a, b), R.add(b, a))
    assert R.eq(R.mul(a, b), R.mul(b, a))
    if not R.is_zero(a):
        assert R.eq(R.mul(a, R.inv(a)), R.one)
    assert R.eq(R.from_json(R.to_json(a)), a)


def test_descriptor_round_trips():
    for desc in (QQ, C6, FX,
                 FieldDescriptor.rational_functions(C3, var="t")):
        assert FieldDescriptor.from_json(desc.to_json()) == desc


def test_descriptor_rejects_unknown_kind():
    with pytest.raises(SchemaError):
        FieldDescriptor.from_json({"kind": "padic"})


def test_descriptor_rejects_nested_function_fields():
    with pytest.raises(SchemaError):
        FieldDescriptor.rational_functions(FX)


def test_dvr_context_uniformizer():
    ctx = DVRContext(FX, mpq(2))
    R = FX.ring()
    assert R.valuation_at(ctx.uniformizer().payload, mpq(2)) == 1
    with pytest.raises(SchemaError):
        DVRContext(QQ, mpq(0))
