"""The Milnor (Jacobian) algebra of a germ at the origin.

The algebra is the quotient of the polynomial ring by the Jacobian ideal,
localized at 0.  When every critical point of ``f`` sits at the origin the
global quotient already is the local algebra; otherwise the ideal is replaced by
J + m^N, where m is the maximal ideal at 0 and N is the first exponent at which
the quotient dimension stops growing (by Nakayama this is exactly the local
algebra).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .errors import NotIsolatedAtOrigin, NotZeroDimensional, ZeroGerm, InvalidGerm
from .groebner import GroebnerBasis, Ideal, buchberger, quotient_basis, variable_nilpotency_check
from .poly import GREVLEX, Monomial, MonomialOrder, Polynomial, form_level

log = logging.getLogger(__name__)

MAX_LOCAL_EXPONENT = 48


@dataclass(frozen=True)
class QhWeights:
    weights: Optional[Tuple[Fraction, ...]]
    note: str = ""

    def __bool__(self) -> bool:
        return self.weights is not None


def jacobian_ideal(f: Polynomial) -> Ideal:
    if f.is_constant():
        raise ZeroGerm("constant germ has no Jacobian ideal")
    return Ideal([f.diff(i) for i in range(f.nvars)], f.variables)


def detect_qh_weights(f: Polynomial) -> QhWeights:
    """Positive weights w with sum_i w_i*a_i = 1 on every monomial a of f, if they exist."""
    if f.is_zero():
        return QhWeights(None, "zero polynomial")
    n = f.nvars
    present = [i for i in range(n) if any(m[i] for m in f.terms)]
    if len(present) < n:
        missing = [f.variables[i] for i in range(n) if i not in present]
        return QhWeights(None, f"variables absent from f: {', '.join(missing)}")
    rows = [[Fraction(m[i]) for i in present] + [Fraction(1)] for m in sorted(f.terms)]
    R, pivots = linalg.rref(rows)
    if len(present) in pivots:
        return QhWeights(None, "weight equations are inconsistent")
    if len(pivots) < len(present):
        return QhWeights(None, "weight equations are underdetermined")
    w = [Fraction(0)] * n
    for row, pc in zip(R, pivots):
        w[present[pc]] = row[-1]
    if any(x <= 0 for x in w):
        return QhWeights(None, "weights are not strictly positive")
    return QhWeights(tuple(w))


def _monomials_of_degree(n: int, d: int) -> List[Monomial]:
    out = []
    for combo in combinations_with_replacement(range(n), d):
        m = [0] * n
        for i in combo:
            m[i] += 1
        out.append(tuple(m))
    return out


def _quotient_dim(gb: GroebnerBasis) -> int:
    try:
        return len(quotient_basis(gb))
    except NotZeroDimensional:
        return -1


def localize_at_origin(ideal: Ideal, order: MonomialOrder) -> Tuple[GroebnerBasis, Optional[int]]:
    """Groebner basis of the component of ``ideal`` supported at the origin.

    Returns the basis and the exponent N used (None when no truncation was needed).
    """
    gb = buchberger(ideal, order)
    if _quotient_dim(gb) > 0 and variable_nilpotency_check(gb):
        return gb, None
    variables = ideal.variables
    n = len(variables)
    prev_dim = None
    prev_gb = None
    for N in range(1, MAX_LOCAL_EXPONENT + 1):
        extra = [Polynomial.monomial(variables, m) for m in _monomials_of_degree(n, N)]
        gbN = buchberger(Ideal(list(ideal.generators) + extra, variables), order)
        d = _quotient_dim(gbN)
        if prev_dim is not None and d == prev_dim:
            log.debug("local algebra stabilized at N=%d (dim %d)", N - 1, d)
            return prev_gb, N - 1
        prev_dim, prev_gb = d, gbN
    raise NotIsolatedAtOrigin(
        f"local quotient dimension did not stabilize up to m^{MAX_LOCAL_EXPONENT}; "
        "the critical point at 0 is not isolated")


@dataclass
class MilnorAlgebra:
    f: Polynomial
    order: MonomialOrder
    groebner: GroebnerBasis
    basis: List[Monomial]
    weights: QhWeights
    truncation: Optional[int] = None
    index: Dict[Monomial, int] = field(init=False)
    variable_matrices: List[linalg.Matrix] = field(init=False)

    def __post_init__(self):
        self.index = {m: k for k, m in enumerate(self.basis)}
        self.variable_matrices = [multiplication_matrix(self, Polynomial.var(self.variables, i))
                                  for i in range(self.f.nvars)]

    @property
    def variables(self) -> Tuple[str, ...]:
        return self.f.variables

    @property
    def mu(self) -> int:
        return len(self.basis)

    @property
    def n(self) -> int:
        """Dimension of the Milnor fibre (number of variables minus one)."""
        return self.f.nvars - 1

    @property
    def is_qh(self) -> bool:
        return bool(self.weights)

    def normal_form(self, p: Polynomial) -> Polynomial:
        return self.groebner.normal_form(p)

    def coords(self, p: Polynomial) -> linalg.Vector:
        nf = self.normal_form(p)
        v = [Fraction(0)] * self.mu
        for m, c in nf.terms.items():
            v[self.index[m]] = c
        return v

    def element(self, v: Sequence[Fraction]) -> Polynomial:
        return Polynomial(self.variables, {m: c for m, c in zip(self.basis, v) if c})

    def basis_element(self, k: int) -> Polynomial:
        return Polynomial.monomial(self.variables, self.basis[k])

    def levels(self) -> Optional[List[Fraction]]:
        if not self.weights:
            return None
        return [form_level(m, self.weights.weights) for m in self.basis]


def multiplication_matrix(A: MilnorAlgebra, g: Polynomial) -> linalg.Matrix:
    """Matrix of v -> NF(g*v) in the monomial basis (column j is the image of e_j)."""
    cols = [A.coords(g.scale_monomial(m)) for m in A.basis]
    return linalg.transpose(cols)


def _tie_sorted(basis: List[Monomial], weights: Optional[Sequence[Fraction]]) -> List[Monomial]:
    key = GREVLEX.key
    if weights is None:
        return sorted(basis, key=key)
    return sorted(basis, key=lambda m: (form_level(m, weights), key(m)))


def milnor_algebra(f: Polynomial, order: MonomialOrder = GREVLEX) -> MilnorAlgebra:
    if f.is_constant():
        raise ZeroGerm("constant germ")
    if f.constant_term():
        raise InvalidGerm("germ must vanish at the origin (drop the constant term)")
    if any(sum(m) == 1 for m in f.terms):
        raise NotIsolatedAtOrigin("the origin is not a critical point (f has a linear term)")
    weights = detect_qh_weights(f)
    gb, N = localize_at_origin(jacobian_ideal(f), order)
    basis = quotient_basis(gb)
    if not basis:
        raise NotIsolatedAtOrigin("the local algebra at the origin is zero")
    basis = _tie_sorted(basis, weights.weights)
    return MilnorAlgebra(f, order, gb, basis, weights, N)
