
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from germhodge.errors import NotZeroDimensional
from germhodge.groebner import Ideal, buchberger, normal_form, quotient_basis
from germhodge.poly import GREVLEX, LEX, Polynomial, format_polynomial, parse_polynomial

IDEALS = [
    (("x", "y"), ["3*x^2", "4*y^3"]),
    (("x", "y"), ["3*x^2 + y^3", "3*x*y^2"]),
    (("x", "y"), ["2*x*y^2 + 5*x^4", "2*x^2*y + 5*y^4"]),
    (("x", "y", "z"), ["x*y - z", "y*z - x", "x*z - y"]),
    (("x", "y", "z"), ["x^2 + y*z", "y^2 + x*z + 1", "z^3 - x"]),
    (("x", "y", "z"), ["2*x*y + z^2", "x^2 + 3*y^2", "2*x*z + y^3"]),
]


def _sympy_basis(variables, gens, order):
    syms = sympy.symbols(variables)
    exprs = [sympy.sympify(g.replace("^", "**"), locals=dict(zip(variables, syms))) for g in gens]
    G = sympy.groebner(exprs, *syms, order=order)
    return {sympy.expand(g / sympy.Poly(g, *syms).LC(order=order)) for g in G.exprs}


def _ours(variables, gens, order):
    gb = buchberger(Ideal([parse_polynomial(g, variables) for g in gens], variables), order)
    syms = sympy.symbols(variables)
    loc = dict(zip(variables, syms))
    return gb, {sympy.sympify(format_polynomial(g, order).replace("^", "**"), locals=loc) for g in gb.polys}


@pytest.mark.parametrize("variables,gens", IDEALS)
@pytest.mark.parametrize("order,sym_order", [(GREVLEX, "grevlex"), (LEX, "lex")])
def test_reduced_basis_matches_sympy(variables, gens, order, sym_order):
    _, ours = _ours(variables, gens, order)
    theirs = _sympy_basis(variables, gens, sym_order)
    assert {sympy.expand(e) for e in ours} == {sympy.expand(e) for e in theirs}


def test_staircase_t_germ():
    A = Ideal([parse_polynomial(g, "xy") for g in IDEALS[2][1]], ("x", "y"))
    gb = buchberger(A)
    # the global quotient also sees the 5 critical points away from the origin
    assert len(quotient_basis(gb)) == 16


def test_not_zero_dimensional():
    gb = buchberger(Ideal([parse_polynomial("x*y^2", "xy"), parse_polynomial("x^2*y", "xy")], ("x", "y")))
    with pytest.raises(NotZeroDimensional):
        quotient_basis(gb)


def test_unit_ideal():
    gb = buchberger(Ideal([parse_polynomial("x", "xy"), parse_polynomial("x + 1", "xy")], ("x", "y")))
    assert gb.is_unit_ideal() and quotient_basis(gb) == []


@pytest.mark.parametrize("variables,gens", [IDEALS[1], IDEALS[2], IDEALS[5]])
def test_dimension_independent_of_order(variables, gens):
    dims = [len(quotient_basis(_ours(variables, gens, o)[0])) for o in (GREVLEX, LEX)]
    assert dims[0] == dims[1]


small = st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)),
                        st.fractions(min_value=-3, max_value=3, max_denominator=3), max_size=4)


@settings(max_examples=50, deadline=None)
@given(small, small, small)
def test_normal_form_canonical(p, h1, h2):
    gb, _ = _ours(*IDEALS[1], GREVLEX)
    p, h1, h2 = (Polynomial(("x", "y"), d) for d in (p, h1, h2))
    shifted = p + h1 * gb.polys[0] + h2 * gb.polys[-1]
    assert normal_form(shifted, gb) == normal_form(p, gb)
    # the normal form only involves standard monomials
    std = set(quotient_basis(gb))
    assert set(normal_form(p, gb).terms) <= std
