import random
from fractions import Fraction

import pytest

from conftest import algebra, residue, times_f
from germhodge import linalg
from germhodge.hodge import hodge_data
from germhodge.weight import (bilinear_relation_check, cross_orthogonality, jacobson_morosov_check, level_form,
                              nilpotent_weight_filtration, primitive_parts, well_defined_modulo)

F = Fraction
T_GERM = ("x^2*y^2+x^5+y^5", "xy")


def test_zero_operator():
    N = linalg.zeros(6)
    W = nilpotent_weight_filtration(N)
    assert W.gr_dims() == {0: 6}
    P = primitive_parts(W, N)
    assert P.dims() == {0: 6}


def test_single_two_block():
    N = linalg.nilpotent_from_partition([2])
    W = nilpotent_weight_filtration(N)
    assert W.gr_dims() == {-1: 1, 1: 1}
    assert jacobson_morosov_check(W) == {"lowers_weight_by_two": True, "hard_lefschetz": True}


def test_center_shifts_levels():
    N = linalg.nilpotent_from_partition([3, 1])
    assert nilpotent_weight_filtration(N, center=2).gr_dims() == {0: 1, 2: 2, 4: 1}


@pytest.mark.parametrize("sizes", [[3, 1], [2, 2], [4, 2, 1], [3, 3, 1, 1]])
def test_partition_bookkeeping(sizes):
    N = linalg.nilpotent_from_partition(sizes)
    W = nilpotent_weight_filtration(N)
    P = primitive_parts(W, N)
    assert P.lefschetz_ok
    for l, d in P.dims().items():
        assert d == sizes.count(l + 1)
    assert all(jacobson_morosov_check(W).values())


def test_filtration_is_basis_independent():
    rng = random.Random(7)
    N = linalg.nilpotent_from_partition([3, 2, 2, 1])
    n = len(N)
    Q = linalg.identity(n)
    for _ in range(20):
        i, j = rng.sample(range(n), 2)
        for k in range(n):
            Q[k][j] += rng.randint(-2, 2) * Q[k][i]
    N2 = linalg.matmul(linalg.inverse(Q), linalg.matmul(N, Q))
    a, b = nilpotent_weight_filtration(N), nilpotent_weight_filtration(N2)
    assert a.gr_dims() == b.gr_dims()
    assert {l: len(v) for l, v in a.spaces.items()} == {l: len(v) for l, v in b.spaces.items()}


def test_hyperbolic_toy_level_form():
    N = [[F(0), F(1)], [F(0), F(0)]]
    G = [[F(0), F(1, 3)], [F(1, 3), F(0)]]
    W = nilpotent_weight_filtration(N)
    P = primitive_parts(W, N, G)
    assert P.dims() == {1: 1}
    L = level_form(G, N, P)
    assert L.matrices[1] == [[F(1, 3)]]


def test_t_germ_structure():
    N = times_f(*T_GERM)
    G = residue(*T_GERM).gram
    W = nilpotent_weight_filtration(N)
    assert W.gr_dims() == {-1: 1, 0: 9, 1: 1}
    assert all(jacobson_morosov_check(W).values())
    P = primitive_parts(W, N, G)
    assert P.dims() == {0: 9, 1: 1} and P.lefschetz_ok
    L = level_form(G, N, P)
    assert L.matrices[1] == [[F(-1, 20)]]
    assert all(L.nondegenerate().values())
    assert cross_orthogonality(G, N, P)
    assert well_defined_modulo(G, N, W)
    rep = bilinear_relation_check(L, G, W, P)
    assert rep.ok and rep.definite is None


def test_t_germ_echelon_lifts_also_decompose():
    N = times_f(*T_GERM)
    W = nilpotent_weight_filtration(N)
    P = primitive_parts(W, N)
    assert P.dims() == {0: 9, 1: 1} and P.lefschetz_ok


@pytest.mark.parametrize("text,variables", [("x^3+y^4", "xy"), ("x^3+y^3+z^3", "xyz"), ("x^2+y^3+z^5", "xyz")])
def test_brieskorn_pham_polarization_is_definite(text, variables):
    A = algebra(text, variables)
    G = residue(text, variables).gram
    N = times_f(text, variables)
    W = nilpotent_weight_filtration(N)
    P = primitive_parts(W, N, G)
    hd = hodge_data(A)
    L = level_form(G, N, P, hd.signs.ctilde)
    rep = bilinear_relation_check(L, G, W, P, hd, global_sign=1)
    assert rep.ok and rep.definite and rep.sign == 1


def test_e6_example_values():
    A = algebra("x^3+y^4", "xy")
    G = residue("x^3+y^4", "xy").gram
    x, xy = A.index[(1, 0)], A.index[(1, 1)]
    assert G[x][xy] == 0


def test_e7_definiteness_finding():
    # the middle class y^2 pairs with itself negatively against the socle,
    # so the monomial conjugation does not polarize this germ
    text, variables = "x^3+x*y^3", "xy"
    A = algebra(text, variables)
    G = residue(text, variables).gram
    y2 = A.index[(0, 2)]
    assert G[y2][y2] == F(-1, 3) and G[0][A.mu - 1] == F(1, 9)
    N = times_f(text, variables)
    W = nilpotent_weight_filtration(N)
    P = primitive_parts(W, N, G)
    hd = hodge_data(A)
    rep = bilinear_relation_check(level_form(G, N, P, hd.signs.ctilde), G, W, P, hd)
    assert rep.inertia == {0: (6, 1, 0)} and rep.definite is False
