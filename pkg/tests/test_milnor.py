from fractions import Fraction
from math import prod

import pytest

from conftest import algebra, times_f
from germhodge import linalg
from germhodge.errors import InvalidGerm, NotIsolatedAtOrigin, ZeroGerm
from germhodge.milnor import detect_qh_weights, milnor_algebra, multiplication_matrix
from germhodge.poly import LEX, format_monomial, parse_polynomial

QH = [("x^2", "x"), ("x^3", "x"), ("x^2+y^2", "xy"), ("x^3+y^4", "xy"), ("x^3+x*y^3", "xy"),
      ("x^2*y+y^3", "xy"), ("x^2+y^2+z^2", "xyz"), ("x^3+y^3+z^3", "xyz"), ("x^2+y^3+z^5", "xyz")]


def basis_names(A):
    return [format_monomial(m, A.variables) for m in A.basis]


def test_e6_basis():
    A = algebra("x^3+y^4", "xy")
    assert A.mu == 6
    assert basis_names(A) == ["1", "y", "x", "y^2", "x*y", "x*y^2"]
    assert A.weights.weights == (Fraction(1, 3), Fraction(1, 4))


def test_e7_basis():
    A = algebra("x^3+x*y^3", "xy")
    assert A.mu == 7
    assert A.weights.weights == (Fraction(1, 3), Fraction(2, 9))
    assert basis_names(A) == ["1", "y", "x", "y^2", "x*y", "x^2", "x^2*y"]


def test_t_germ_is_localized():
    A = algebra("x^2*y^2+x^5+y^5", "xy")
    assert A.mu == 11 and not A.is_qh
    assert A.truncation == 6
    assert linalg.jordan_partition_nilpotent(times_f("x^2*y^2+x^5+y^5", "xy")) == [2] + [1] * 9


def test_fermat_cubic_surface():
    A = algebra("x^3+y^3+z^3", "xyz")
    assert basis_names(A) == ["1", "z", "y", "x", "y*z", "x*z", "x*y", "x*y*z"]


@pytest.mark.parametrize("text,variables", QH)
def test_milnor_number_from_weights(text, variables):
    A = algebra(text, variables)
    assert A.mu == prod(1 / w - 1 for w in A.weights.weights)


@pytest.mark.parametrize("text,variables", QH + [("x^2*y^2+x^5+y^5", "xy")])
def test_multiplication_matrices_commute_and_are_nilpotent(text, variables):
    A = algebra(text, variables)
    Ms = A.variable_matrices
    for a in Ms:
        for b in Ms:
            assert linalg.matmul(a, b) == linalg.matmul(b, a)
        assert linalg.is_zero(linalg.matpow(a, A.mu))


def test_euler_relation_kills_f_for_qh():
    for text, variables in QH:
        A = algebra(text, variables)
        assert linalg.is_zero(multiplication_matrix(A, A.f))


def test_order_does_not_change_dimension():
    for text, variables in [("x^3+x*y^3", "xy"), ("x^2*y^2+x^5+y^5", "xy")]:
        f = parse_polynomial(text, variables)
        assert milnor_algebra(f, LEX).mu == algebra(text, variables).mu


@pytest.mark.parametrize("text,variables,note", [
    ("x^2*y^2+x^5+y^5", "xy", "inconsistent"),
    ("x^2", "xy", "absent"),
])
def test_weight_detection_failures(text, variables, note):
    w = detect_qh_weights(parse_polynomial(text, variables))
    assert not w and note in w.note


@pytest.mark.parametrize("text,variables,error", [
    ("x^2*y^2", "xy", NotIsolatedAtOrigin),
    ("x^2", "xy", NotIsolatedAtOrigin),
    ("x+y^2", "xy", NotIsolatedAtOrigin),
    ("x^2+1", "x", InvalidGerm),
    ("0", "x", ZeroGerm),
])
def test_errors(text, variables, error):
    with pytest.raises(error):
        milnor_algebra(parse_polynomial(text, variables))
