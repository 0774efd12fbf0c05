"""Grothendieck residue pairing on the Milnor algebra.

The exact pairing comes from the Bezoutian of the partial derivatives: reducing
Delta(x, y) in both variable blocks gives sum_ab C_ab e_a(x) e_b(y), and the
Gram matrix of the residue in the monomial basis is C^{-1}.  With this
normalization the residue of the Hessian class equals the Milnor number.

``morse_oracle`` is an independent floating-point route: perturb f by a generic
linear form, locate the Morse critical points near 0 as joint eigenvalues of
the multiplication matrices, and sum h(p)/Hess(p).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg
from .errors import NoConvergence, NormalizationFailure, NotMorse, NotZeroDimensional, Singular, SingularBezoutian
from .groebner import Ideal, buchberger, quotient_basis
from .milnor import MilnorAlgebra
from .poly import GREVLEX, Monomial, Polynomial, determinant, hessian_determinant

# Symbolic normalization relating the rational residue to the topological pairing:
# S = (-1)^{n(n+1)/2} (2 pi i)^{n+1} * res (homogeneous case), times an undetermined constant.

def normalization_record(n: int) -> dict:
    sign = -1 if (n * (n + 1) // 2) % 2 else 1
    return {
        "formula": "(-1)^(n(n+1)/2) * (2*pi*i)^(n+1) * res_f0",
        "n": n,
        "sign": sign,
        "power_of_2_pi_i": n + 1,
        "asserted": False,
    }


def _bezout_variables(variables: Sequence[str]) -> Tuple[str, ...]:
    return tuple(variables) + tuple(f"{v}'" for v in variables)


def _divided_difference(p: Polynomial, j: int, k: int) -> Polynomial:
    """(p - p|_{x_j -> x_k}) / (x_j - x_k), where p does not involve x_k."""
    out: Dict[Monomial, Fraction] = {}
    for m, c in p.terms.items():
        e = m[j]
        for a in range(e):
            t = list(m)
            t[j] = a
            t[k] = m[k] + e - 1 - a
            t = tuple(t)
            out[t] = out.get(t, 0) + c
    return Polynomial(p.variables, out)


@dataclass
class Bezoutian:
    delta: Polynomial
    n1: int

    def diagonal(self) -> Polynomial:
        """Delta(x, x) in the original variables."""
        variables = self.delta.variables[: self.n1]
        return self.delta.embed(variables, list(range(self.n1)) * 2)


def bezoutian(f: Polynomial) -> Bezoutian:
    n1 = f.nvars
    big = _bezout_variables(f.variables)
    grads = [f.diff(i) for i in range(n1)]
    rows = []
    for g in grads:
        row = []
        for j in range(n1):
            # variables before j are already primed, j and after are unprimed
            index_map = [n1 + k if k < j else k for k in range(n1)]
            h = g.embed(big, index_map)
            row.append(_divided_difference(h, j, n1 + j))
        rows.append(row)
    return Bezoutian(determinant(rows), n1)


def bezoutian_coefficients(A: MilnorAlgebra, B: Bezoutian, first: str = "y") -> linalg.Matrix:
    """Matrix C with Delta = sum C_ab e_a(x) e_b(y) modulo the ideal in each block."""
    n1 = B.n1
    variables = A.variables
    mu = A.mu
    # split Delta into {x-monomial: {y-monomial: c}}
    split: Dict[Monomial, Dict[Monomial, Fraction]] = {}
    for m, c in B.delta.terms.items():
        xm, ym = m[:n1], m[n1:]
        if first == "y":
            split.setdefault(xm, {})[ym] = c
        else:
            split.setdefault(ym, {})[xm] = c
    # reduce the inner block, leaving sum_b P_b(outer) e_b(inner)
    outer_coeffs: List[Dict[Monomial, Fraction]] = [dict() for _ in range(mu)]
    for om, inner in split.items():
        v = A.coords(Polynomial(variables, inner))
        for b, cb in enumerate(v):
            if cb:
                d = outer_coeffs[b]
                d[om] = d.get(om, 0) + cb
    C = linalg.zeros(mu)
    for b in range(mu):
        v = A.coords(Polynomial(variables, outer_coeffs[b]))
        for a in range(mu):
            if first == "y":
                C[a][b] = v[a]
            else:
                C[b][a] = v[a]
    return C


@dataclass
class ResidueForm:
    gram: linalg.Matrix
    functional: List[Fraction]
    bezout_matrix: linalg.Matrix
    one: List[Fraction]

    @property
    def mu(self) -> int:
        return len(self.gram)

    def pair(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        return residue_pair(self, u, v)

    def value(self, v: Sequence[Fraction]) -> Fraction:
        """The residue functional on a coordinate vector."""
        return sum((a * b for a, b in zip(self.functional, v)), Fraction(0))


def gram_matrix(A: MilnorAlgebra, B: Optional[Bezoutian] = None) -> ResidueForm:
    B = B or bezoutian(A.f)
    C = bezoutian_coefficients(A, B, first="y")
    try:
        G = linalg.inverse(C)
    except Singular as exc:
        raise SingularBezoutian("reduced Bezoutian matrix is singular") from exc
    one = A.coords(Polynomial.constant(A.variables, 1))
    functional = linalg.matvec(G, one)
    return ResidueForm(G, functional, C, one)


def residue_pair(R: ResidueForm, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return linalg.bilinear(R.gram, list(u), list(v))


def residue_of(A: MilnorAlgebra, R: ResidueForm, p: Polynomial) -> Fraction:
    return R.value(A.coords(p))


def hessian_residue_check(A: MilnorAlgebra, R: ResidueForm) -> Fraction:
    value = residue_of(A, R, hessian_determinant(A.f))
    if value != A.mu:
        raise NormalizationFailure(f"residue of Hess f is {value}, expected mu = {A.mu}")
    return value


# ------------------------------------------------------------------ oracle

def _compile(p: Polynomial):
    exps = np.array(list(p.terms.keys()), dtype=np.int64).reshape(-1, p.nvars)
    coeffs = np.array([float(c) for c in p.terms.values()], dtype=np.complex128)
    return exps, coeffs


def _evaluate(compiled, point: np.ndarray) -> complex:
    exps, coeffs = compiled
    if not len(coeffs):
        return 0j
    return complex(np.sum(coeffs * np.prod(point[None, :] ** exps, axis=1)))


def _newton(grads, hess, z: np.ndarray, iterations: int = 30) -> np.ndarray:
    n = len(z)
    for _ in range(iterations):
        g = np.array([_evaluate(c, z) for c in grads])
        H = np.array([[_evaluate(hess[i][j], z) for j in range(n)] for i in range(n)])
        try:
            step = np.linalg.solve(H, g)
        except np.linalg.LinAlgError as exc:
            raise NoConvergence("singular Hessian during Newton refinement") from exc
        z = z - step
        if np.linalg.norm(step) <= 1e-15 * max(1.0, np.linalg.norm(z)):
            break
    return z


@dataclass
class MorsePoints:
    points: np.ndarray
    hessians: np.ndarray
    total: int


def morse_critical_points(f: Polynomial, s: Sequence, mu: int, seed: int = 0) -> MorsePoints:
    """The ``mu`` critical points of f + sum s_i x_i closest to the origin."""
    variables = f.variables
    n1 = f.nvars
    s = [Fraction(x) if not isinstance(x, float) else Fraction(x).limit_denominator(10 ** 15) for x in s]
    fs = f + sum((Polynomial.var(variables, i) * s[i] for i in range(n1)), Polynomial.zero(variables))
    gb = buchberger(Ideal([fs.diff(i) for i in range(n1)], variables), GREVLEX)
    try:
        basis = quotient_basis(gb)
    except NotZeroDimensional as exc:
        raise NotMorse("perturbed critical locus is not finite") from exc
    total = len(basis)
    if total < mu:
        raise NotMorse(f"perturbation has {total} critical points, fewer than mu = {mu}")
    index = {m: k for k, m in enumerate(basis)}

    def mult(g: Polynomial) -> np.ndarray:
        M = np.zeros((total, total))
        for j, m in enumerate(basis):
            nf = gb.normal_form(g.scale_monomial(m))
            for mm, c in nf.terms.items():
                M[index[mm], j] = float(c)
        return M

    Ms = [mult(Polynomial.var(variables, i)) for i in range(n1)]
    rng = np.random.default_rng(seed)
    combo = sum(r * M for r, M in zip(rng.uniform(0.5, 1.5, n1), Ms))
    # evaluation functionals are left eigenvectors of every multiplication matrix
    eigvals, vecs = np.linalg.eig(combo.T)
    one = index[(0,) * n1]
    grads = [_compile(fs.diff(i)) for i in range(n1)]
    hess = [[_compile(fs.diff(i).diff(j)) for j in range(n1)] for i in range(n1)]
    points = []
    for k in range(total):
        v = vecs[:, k]
        if abs(v[one]) < 1e-300:
            raise NoConvergence("eigenvector has no component on the constant monomial")
        v = v / v[one]
        z = np.array([(v @ M)[one] for M in Ms], dtype=np.complex128)
        points.append(_newton(grads, hess, z))
    points = np.array(points)
    norms = np.linalg.norm(points, axis=1)
    order = np.argsort(norms)
    points = points[order]
    norms = norms[order]
    if total > mu and norms[mu] < 2 * max(norms[mu - 1], 1e-300):
        raise NotMorse("cannot separate the critical points near the origin from the others")
    points = points[:mu]
    if mu > 1:
        diffs = np.linalg.norm(points[:, None, :] - points[None, :, :], axis=2)
        diffs[np.diag_indices(mu)] = np.inf
        scale = max(float(norms[mu - 1]), 1e-300)
        if diffs.min() < 1e-8 * scale:
            raise NotMorse("critical points collide; perturbation is not generic")
    hdet = _compile(hessian_determinant(fs))
    hvals = np.array([_evaluate(hdet, p) for p in points])
    if np.min(np.abs(hvals)) == 0:
        raise NotMorse("degenerate critical point")
    return MorsePoints(points, hvals, total)


def morse_oracle(A: MilnorAlgebra, s: Sequence, pairs: Optional[Iterable[Tuple[int, int]]] = None,
                 seed: int = 0) -> np.ndarray:
    """Floating approximation of the Gram matrix: sum_r e_a(p_r) e_b(p_r) / Hess(p_r).

    Returns the full mu x mu complex matrix, or a vector of values for ``pairs``.
    """
    mp = morse_critical_points(A.f, s, A.mu, seed)
    vals = np.array([[np.prod(p ** np.array(m)) for m in A.basis] for p in mp.points])  # r x mu
    weighted = vals / mp.hessians[:, None]
    full = weighted.T @ vals
    if pairs is None:
        return full
    return np.array([full[i, j] for i, j in pairs])


def oracle_error(A: MilnorAlgebra, R: ResidueForm, eps: float, seed: int = 0) -> float:
    """Max entrywise deviation of the oracle from the exact Gram matrix at scale ``eps``."""
    rng = np.random.default_rng(seed)
    direction = rng.uniform(-1.0, 1.0, A.f.nvars)
    direction /= np.max(np.abs(direction))
    s = [Fraction(str(eps)) * Fraction(float(d)).limit_denominator(1000) for d in direction]
    O = morse_oracle(A, s, seed=seed)
    G = np.array([[float(x) for x in row] for row in R.gram])
    return float(np.max(np.abs(O - G)))
