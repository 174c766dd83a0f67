import random

import pytest

from quiverpi.matrep import (
    Mat,
    MatrixError,
    charcoeffs,
    charpoly,
    left_mult_operator,
    matrix_unit_sum,
    parse_matrix,
    poly_coeff_power,
    principal_minor_sum,
    random_matrix,
    render_matrix,
)
from quiverpi.scalars import FieldSpec

GF2 = FieldSpec.gf(2)
GF3 = FieldSpec.gf(3)
GF5 = FieldSpec.gf(5)
QQ = FieldSpec.rationals()


def test_charcoeffs_trace_and_det():
    a = Mat.from_values(QQ, [[1, 2], [3, 4]])
    assert charcoeffs(a) == [QQ.element(5), QQ.element(-2)]


def test_charcoeffs_identity_gf2():
    a = Mat.identity(GF2, 3)
    # binomial coefficients of (lambda - 1)^3 reduced mod 2
    assert charcoeffs(a) == [GF2.one, GF2.one, GF2.one]


def test_charcoeffs_nilpotent():
    a = Mat.unit(QQ, 2, 0, 1)
    assert charcoeffs(a) == [QQ.zero, QQ.zero]


def test_left_mult_identity():
    assert left_mult_operator(Mat.identity(QQ, 2)) == Mat.identity(QQ, 4)


def test_left_mult_nilpotence_transport():
    a = Mat.unit(QQ, 2, 0, 1)
    big = left_mult_operator(a)
    assert (big * big).is_zero()
    assert left_mult_operator(a * a).is_zero()


def test_left_mult_charpoly_is_square():
    a = Mat.from_values(QQ, [[1, 2], [3, 4]])
    lhs = charpoly(left_mult_operator(a))
    rhs = poly_coeff_power(charpoly(a), 2, QQ)
    assert lhs == rhs


def test_principal_minor_sum_examples():
    a = Mat.from_values(QQ, [[1, 2], [3, 4]])
    assert principal_minor_sum(a, 1) == QQ.element(5)
    assert principal_minor_sum(a, 2) == QQ.element(-2)
    with pytest.raises(MatrixError):
        principal_minor_sum(a, 3)


def test_principal_minor_sum_cross_checks_berkowitz():
    rng = random.Random(101)
    for _ in range(25):
        a = random_matrix(GF5, 3, rng)
        alphas = charcoeffs(a)
        for k in (1, 2, 3):
            assert principal_minor_sum(a, k) == alphas[k - 1]


@pytest.mark.parametrize("spec", [GF2, GF3, GF5, QQ])
def test_cayley_hamilton(spec):
    rng = random.Random(2024)
    for n in (1, 2, 3, 4):
        for _ in range(50):
            a = random_matrix(spec, n, rng)
            alphas = charcoeffs(a)
            acc = a ** n
            for k in range(1, n + 1):
                term = (a ** (n - k)).scale(alphas[k - 1])
                acc = acc - term if k % 2 == 1 else acc + term
            assert acc.is_zero()


def test_conjugation_invariance_gf5():
    rng = random.Random(77)
    done = 0
    while done < 20:
        n = rng.randint(2, 4)
        a = random_matrix(GF5, n, rng)
        g = random_matrix(GF5, n, rng)
        try:
            ginv = g.inverse()
        except MatrixError:
            continue
        assert charcoeffs(g * a * ginv) == charcoeffs(a)
        done += 1


@pytest.mark.parametrize("spec,n", [(GF5, 2), (GF5, 3), (QQ, 2), (QQ, 3)])
def test_tensor_spectrum(spec, n):
    rng = random.Random(5)
    for _ in range(10):
        a = random_matrix(spec, n, rng)
        assert charpoly(left_mult_operator(a)) == poly_coeff_power(charpoly(a), n, spec)


def test_matrix_unit_sum_is_experimental():
    a = Mat.from_values(QQ, [[1, 2], [3, 4]])
    with pytest.raises(MatrixError):
        matrix_unit_sum(a, 1)
    value, matches = matrix_unit_sum(a, 1, experimental=True)
    assert matches  # k = 1 collapses to trace * I
    _, matches2 = matrix_unit_sum(a, 2, experimental=True)
    assert not matches2  # the displayed pattern yields power sums, not e_2


def test_serialization_round_trip():
    rng = random.Random(3)
    for spec in (GF3, QQ, FieldSpec.gf(2, 2, (1, 1, 1))):
        a = random_matrix(spec, 3, rng)
        assert parse_matrix(render_matrix(a), spec) == a


def test_inverse_round_trip():
    a = Mat.from_values(QQ, [[1, 2], [3, 4]])
    assert a * a.inverse() == Mat.identity(QQ, 2)
