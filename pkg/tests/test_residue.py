from fractions import Fraction

import numpy as np
import pytest
import sympy

from conftest import algebra, residue, times_f
from germhodge import linalg
from germhodge.errors import NotMorse
from germhodge.poly import hessian_determinant
from germhodge.residue import (bezoutian, bezoutian_coefficients, hessian_residue_check, morse_oracle,
                               normalization_record, oracle_error)

F = Fraction
CORPUS = [("x^2", "x"), ("x^3", "x"), ("x^2+y^2", "xy"), ("x^3+y^4", "xy"), ("x^3+x*y^3", "xy"),
          ("x^2*y^2+x^5+y^5", "xy"), ("x^2+y^2+z^2", "xyz"), ("x^3+y^3+z^3", "xyz"), ("x^2+y^3+z^5", "xyz")]


def test_small_gram_matrices():
    assert residue("x^2", "x").gram == [[F(1, 2)]]
    assert residue("x^3", "x").gram == [[0, F(1, 3)], [F(1, 3), 0]]
    assert residue("x^2+y^2", "xy").gram == [[F(1, 4)]]


def test_bezoutian_of_cubic():
    B = bezoutian(algebra("x^3", "x").f)
    assert B.delta.terms == {(1, 0): 3, (0, 1): 3}


@pytest.mark.parametrize("n", [3, 4, 5, 7])
def test_one_variable_against_sympy(n):
    # res(x^a x^b dx / f') is the ordinary residue of x^{a+b} / (n x^{n-1}) at 0
    A = algebra(f"x^{n}", "x")
    G = residue(f"x^{n}", "x").gram
    x = sympy.symbols("x")
    for a, ma in enumerate(A.basis):
        for b, mb in enumerate(A.basis):
            expected = sympy.residue(x ** (ma[0] + mb[0]) / (n * x ** (n - 1)), x, 0)
            assert G[a][b] == F(str(expected))


def test_one_variable_with_unit_against_sympy():
    A = algebra("x^3+x^4", "x")
    G = residue("x^3+x^4", "x").gram
    x = sympy.symbols("x")
    fp = sympy.diff(x ** 3 + x ** 4, x)
    for a, ma in enumerate(A.basis):
        for b, mb in enumerate(A.basis):
            assert G[a][b] == F(str(sympy.residue(x ** (ma[0] + mb[0]) / fp, x, 0)))


@pytest.mark.parametrize("text,variables,exps", [
    ("x^3+y^4", "xy", (3, 4)),
    ("x^3+y^3+z^3", "xyz", (3, 3, 3)),
    ("x^2+y^3+z^5", "xyz", (2, 3, 5)),
])
def test_brieskorn_pham_socle(text, variables, exps):
    A = algebra(text, variables)
    R = residue(text, variables)
    socle = tuple(e - 2 for e in exps)
    value = R.functional[A.index[socle]]
    expected = F(1)
    for e in exps:
        expected /= e
    assert value == expected


@pytest.mark.parametrize("text,variables", CORPUS)
def test_hessian_normalization(text, variables):
    A, R = algebra(text, variables), residue(text, variables)
    assert hessian_residue_check(A, R) == A.mu


@pytest.mark.parametrize("text,variables", CORPUS)
def test_gram_symmetric_nondegenerate_and_orders_agree(text, variables):
    A, R = algebra(text, variables), residue(text, variables)
    assert R.gram == linalg.transpose(R.gram)
    assert linalg.determinant(R.gram) != 0
    B = bezoutian(A.f)
    assert bezoutian_coefficients(A, B, first="x") == R.bezout_matrix
    assert B.diagonal() == hessian_determinant(A.f)


@pytest.mark.parametrize("text,variables", CORPUS)
def test_multiplication_is_self_adjoint(text, variables):
    A, G = algebra(text, variables), residue(text, variables).gram
    for M in A.variable_matrices + [times_f(text, variables)]:
        GM = linalg.matmul(G, M)
        assert GM == linalg.transpose(GM)


def test_t_germ_functional():
    R = residue("x^2*y^2+x^5+y^5", "xy")
    assert R.functional == [F(-625, 64), 0, 0, 0, F(-25, 16), 0, 0, 0, 0, 0, F(-1, 4)]


def test_normalization_record_is_symbolic():
    rec = normalization_record(2)
    assert rec["sign"] == -1 and rec["power_of_2_pi_i"] == 3 and rec["asserted"] is False


def test_oracle_pairs_and_full_matrix():
    A, R = algebra("x^3+y^4", "xy"), residue("x^3+y^4", "xy")
    s = [F(1, 1000), F(-7, 10000)]
    full = morse_oracle(A, s)
    G = np.array([[float(x) for x in row] for row in R.gram])
    assert np.max(np.abs(full - G)) < 1e-6
    vals = morse_oracle(A, s, pairs=[(0, 5), (2, 4)])
    assert np.allclose(vals, [G[0, 5], G[2, 4]])


@pytest.mark.parametrize("text,variables", [("x^3+x*y^3", "xy"), ("x^2*y^2+x^5+y^5", "xy"),
                                            ("x^4+y^4+x^2*y^2", "xy")])
def test_oracle_converges_linearly(text, variables):
    A, R = algebra(text, variables), residue(text, variables)
    errs = [oracle_error(A, R, eps) for eps in (1e-3, 1e-4, 1e-5)]
    for coarse, fine in zip(errs, errs[1:]):
        assert 5 < coarse / fine < 20


def test_oracle_rejects_unseparated_perturbation():
    A = algebra("x^2*y^2+x^5+y^5", "xy")
    with pytest.raises(NotMorse):
        morse_oracle(A, [F(1, 2), F(1, 3)])
