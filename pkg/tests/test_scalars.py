import itertools

import pytest

from quiverpi.scalars import (
    FieldSpec,
    FieldMismatchError,
    ScalarError,
    ZeroInverseError,
    default_modulus,
    field_arith,
    frobenius,
    parse_scalar,
    render_scalar,
)

GF2 = FieldSpec.gf(2)
GF3 = FieldSpec.gf(3)
GF4 = FieldSpec.gf(2, 2, (1, 1, 1))  # u^2 + u + 1
QQ = FieldSpec.rationals()


def test_gf2_add():
    one = GF2.one
    assert (one + one).is_zero()


def test_gf4_mul_hand_table():
    # u * u reduced mod u^2+u+1 gives u+1 (hand reduction: u^2 = u+1 in char 2)
    u = GF4.element((0, 1))
    assert u * u == GF4.element((1, 1))


def test_rational_inverse():
    x = QQ.element("2/3")
    assert field_arith(x, None, "inv") == QQ.element("3/2")


def test_mismatched_specs_rejected():
    with pytest.raises(FieldMismatchError):
        field_arith(GF2.one, GF3.one, "add")


def test_division_by_zero_rejected():
    with pytest.raises(ZeroInverseError):
        GF3.zero.inverse()


def test_frobenius_fixed_field():
    assert frobenius(GF2.one, 5) == GF2.one


def test_frobenius_gf4_twist():
    u = GF4.element((0, 1))
    assert frobenius(u, 1, q=2) == GF4.element((1, 1))
    assert frobenius(u, 2, q=2) == u


def test_frobenius_char_zero_rejected():
    with pytest.raises(ScalarError):
        frobenius(QQ.one, 1)


@pytest.mark.parametrize("spec", [GF2, GF3, GF4, FieldSpec.gf(2, 3), FieldSpec.gf(2, 4)])
def test_frobenius_is_field_homomorphism(spec):
    # additive and multiplicative on all pairs, orders <= 16
    elems = spec.elements()
    for a, b in itertools.product(elems, repeat=2):
        assert frobenius(a + b, 1, q=spec.p) == frobenius(a, 1, q=spec.p) + frobenius(b, 1, q=spec.p)
        assert frobenius(a * b, 1, q=spec.p) == frobenius(a, 1, q=spec.p) * frobenius(b, 1, q=spec.p)


@pytest.mark.parametrize("p,k", [(2, 1), (2, 2), (2, 3), (3, 2), (5, 1)])
def test_frobenius_order_k_is_identity(p, k):
    spec = FieldSpec.gf(p, k)
    for a in spec.elements():
        b = a
        for _ in range(k):
            b = frobenius(b, 1, q=p)
        assert b == a


@pytest.mark.parametrize("spec", [GF2, GF3, GF4, FieldSpec.gf(5), QQ])
def test_text_round_trip(spec):
    if spec.is_finite:
        sample = spec.elements()
    else:
        sample = [QQ.element(v) for v in ("0", "7", "-3", "22/7", "-5/9")]
    for a in sample:
        assert parse_scalar(render_scalar(a), spec) == a


def test_field_axioms_exhaustive_gf4():
    elems = GF4.elements()
    for a, b, c in itertools.product(elems, repeat=3):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
    for a in elems:
        if not a.is_zero():
            assert a * a.inverse() == GF4.one


def test_default_modulus_is_deterministic():
    assert default_modulus(2, 2) == (1, 1, 1)
    assert default_modulus(2, 3) == (1, 1, 0, 1)
    assert default_modulus(3, 2) == (1, 0, 1)


def test_reducible_modulus_rejected():
    with pytest.raises(ScalarError):
        FieldSpec.gf(2, 2, (0, 0, 1))  # u^2 has root 0


def test_nonprime_characteristic_rejected():
    with pytest.raises(ScalarError):
        FieldSpec.gf(4)


def test_large_field_no_tables():
    spec = FieldSpec.gf(2, 7)  # order 128 > TABLE_CAP
    a = spec.element((0, 1))
    b = a
    for _ in range(7):
        b = frobenius(b, 1, q=2)
    assert b == a
    assert a * a.inverse() == spec.one
