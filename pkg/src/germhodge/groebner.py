"""Buchberger's algorithm, normal forms and standard monomials."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import NotZeroDimensional
from .poly import (
    GREVLEX,
    Monomial,
    MonomialOrder,
    Polynomial,
    form_level,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)


@dataclass(frozen=True)
class Ideal:
    generators: Tuple[Polynomial, ...]
    variables: Tuple[str, ...]

    def __init__(self, generators: Sequence[Polynomial], variables: Optional[Sequence[str]] = None):
        gens = tuple(g for g in generators if not g.is_zero())
        if variables is None:
            variables = generators[0].variables
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "variables", tuple(variables))


def _reduce(terms: Dict[Monomial, Fraction], divisors, key) -> Dict[Monomial, Fraction]:
    """Fully reduce a term dict by ``divisors`` = [(lm, lc, poly_terms)]."""
    p = dict(terms)
    rem: Dict[Monomial, Fraction] = {}
    # max-heap of monomials still present in p
    heap = [(_neg(key(m)), m) for m in p]
    heapq.heapify(heap)
    while heap:
        _, m = heapq.heappop(heap)
        c = p.get(m)
        if not c:
            continue
        for lm, lc, gterms in divisors:
            if mono_divides(lm, m):
                q = mono_div(m, lm)
                factor = c / lc
                for gm, gc in gterms.items():
                    t = mono_mul(gm, q)
                    old = p.get(t)
                    new = (old or 0) - factor * gc
                    if new:
                        if old is None:
                            heapq.heappush(heap, (_neg(key(t)), t))
                        p[t] = new
                    elif old is not None:
                        del p[t]
                break
        else:
            rem[m] = c
            del p[m]
    return rem


class _Neg:
    """Reverses comparison so heapq (a min-heap) pops the largest key first."""

    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return self.k > other.k

    def __eq__(self, other):
        return self.k == other.k


def _neg(k):
    return _Neg(k)


@dataclass
class GroebnerBasis:
    polys: Tuple[Polynomial, ...]
    order: MonomialOrder
    variables: Tuple[str, ...]
    leading: Tuple[Monomial, ...] = field(init=False)

    def __post_init__(self):
        self.leading = tuple(g.leading_monomial(self.order) for g in self.polys)
        self._divisors = [(lm, g.terms[lm], g.terms) for lm, g in zip(self.leading, self.polys)]

    def normal_form(self, p: Polynomial) -> Polynomial:
        return normal_form(p, self)

    def is_unit_ideal(self) -> bool:
        return any(not any(lm) for lm in self.leading)


def normal_form(p: Polynomial, G: GroebnerBasis) -> Polynomial:
    if p.variables != G.variables:
        raise ValueError("polynomial and basis live in different rings")
    return Polynomial(p.variables, _reduce(p.terms, G._divisors, G.order.key))


def _spoly(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    mf, cf = f.leading_term(order)
    mg, cg = g.leading_term(order)
    lcm = mono_lcm(mf, mg)
    return f.scale_monomial(mono_div(lcm, mf), 1 / cf) - g.scale_monomial(mono_div(lcm, mg), 1 / cg)


def _coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def buchberger(ideal: Ideal, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal``.

    Pairs are selected by the normal strategy (smallest lcm degree first, ties
    by generator indices), and skipped by the coprime and chain criteria.
    """
    variables = ideal.variables
    key = order.key
    basis: List[Polynomial] = []
    lms: List[Monomial] = []
    pairs: List[Tuple[int, int, int]] = []  # heap of (deg lcm, j, i) with i < j
    done = set()

    def add(g: Polynomial):
        g = g.monic(order)
        j = len(basis)
        basis.append(g)
        lms.append(g.leading_monomial(order))
        for i in range(j):
            heapq.heappush(pairs, (sum(mono_lcm(lms[i], lms[j])), i, j))

    for g in ideal.generators:
        divisors = [(lm, b.terms[lm], b.terms) for lm, b in zip(lms, basis)]
        r = Polynomial(variables, _reduce(g.terms, divisors, key))
        if not r.is_zero():
            add(r)

    while pairs:
        _, i, j = heapq.heappop(pairs)
        done.add((i, j))
        lcm = mono_lcm(lms[i], lms[j])
        if _coprime(lms[i], lms[j]):
            continue
        if _chain_criterion(i, j, lcm, lms, done):
            continue
        s = _spoly(basis[i], basis[j], order)
        divisors = [(lm, b.terms[lm], b.terms) for lm, b in zip(lms, basis)]
        r = Polynomial(variables, _reduce(s.terms, divisors, key))
        if not r.is_zero():
            add(r)

    return GroebnerBasis(tuple(_interreduce(basis, order)), order, variables)


def _chain_criterion(i, j, lcm, lms, done) -> bool:
    for k in range(len(lms)):
        if k in (i, j):
            continue
        if not mono_divides(lms[k], lcm):
            continue
        if _pair(i, k) in done and _pair(j, k) in done:
            return True
    return False


def _pair(a, b):
    return (a, b) if a < b else (b, a)


def _interreduce(basis: List[Polynomial], order: MonomialOrder) -> List[Polynomial]:
    key = order.key
    lms = [g.leading_monomial(order) for g in basis]
    keep = []
    for i, g in enumerate(basis):
        redundant = False
        for j, h in enumerate(basis):
            if j == i:
                continue
            if mono_divides(lms[j], lms[i]) and (lms[j] != lms[i] or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(g)
    out = []
    for i, g in enumerate(keep):
        others = [(h.leading_monomial(order), h.leading_term(order)[1], h.terms)
                  for j, h in enumerate(keep) if j != i]
        lm, lc = g.leading_term(order)
        tail = {m: c for m, c in g.terms.items() if m != lm}
        reduced = _reduce(tail, others, key)
        reduced[lm] = lc
        out.append(Polynomial(g.variables, reduced).monic(order))
    out.sort(key=lambda g: key(g.leading_monomial(order)), reverse=True)
    return out


def quotient_basis(G: GroebnerBasis, weights: Optional[Sequence[Fraction]] = None) -> List[Monomial]:
    """Standard monomials of the quotient, sorted ascending.

    With ``weights`` the sort key is the form level sum w_i*(a_i+1), ties broken by
    the monomial order; otherwise the monomial order alone.
    """
    n = len(G.variables)
    if G.is_unit_ideal():
        return []
    bounds = [None] * n
    for lm in G.leading:
        support = [i for i, e in enumerate(lm) if e]
        if len(support) == 1:
            i = support[0]
            bounds[i] = lm[i] if bounds[i] is None else min(bounds[i], lm[i])
    if any(b is None for b in bounds):
        missing = [G.variables[i] for i, b in enumerate(bounds) if b is None]
        raise NotZeroDimensional(f"no pure power of {', '.join(missing)} among leading monomials")
    standard = [m for m in product(*(range(b) for b in bounds))
                if not any(mono_divides(lm, m) for lm in G.leading)]
    key = G.order.key
    if weights is not None:
        standard.sort(key=lambda m: (form_level(m, weights), key(m)))
    else:
        standard.sort(key=key)
    return standard


def variable_nilpotency_check(G: GroebnerBasis) -> bool:
    """Every variable acts nilpotently on the quotient (the quotient is local at 0)."""
    mu = len(quotient_basis(G))
    if mu == 0:
        return False
    for i in range(len(G.variables)):
        if not normal_form(Polynomial.var(G.variables, i) ** mu, G).is_zero():
            return False
    return True
