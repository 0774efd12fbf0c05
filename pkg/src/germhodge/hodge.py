"""Spectrum, Hodge bigrading, conjugation and Weil signs for quasi-homogeneous germs.

Every basis monomial e_a = x^a of the Milnor algebra stands for the top form
x^a dx_0^...^dx_n.  With weights w its level is l(a) = sum w_i (a_i + 1) and its
spectral number is beta = l - 1.

Hodge indices follow the orientation in which the lowest-level classes of
x^3 + y^4 span J^{0,1}:

* beta not an integer: p = ceil(beta), q = n - p (weight n);
* beta an integer (eigenvalue 1): p = beta + 1, q = n - beta (weight n + 1).

Complex scalars never appear explicitly; powers of i are stored as exponents
mod 4.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from . import linalg
from .errors import AsymmetricSpectrum, NotQuasiHomogeneous
from .milnor import MilnorAlgebra
from .poly import Monomial, form_level


@dataclass(frozen=True)
class SpectrumRow:
    monomial: Monomial
    level: Fraction
    beta: Fraction
    eigen_residue: Fraction  # level mod 1; the eigenvalue is exp(-2 pi i * level)

    @property
    def unipotent(self) -> bool:
        return self.beta.denominator == 1


@dataclass(frozen=True)
class SpectrumTable:
    rows: Tuple[SpectrumRow, ...]
    n: int

    @property
    def levels(self) -> List[Fraction]:
        return [r.level for r in self.rows]

    @property
    def betas(self) -> List[Fraction]:
        return [r.beta for r in self.rows]

    def is_symmetric(self) -> bool:
        return Counter(self.betas) == Counter(self.n - 1 - b for b in self.betas)


def spectrum(A: MilnorAlgebra) -> SpectrumTable:
    if not A.weights:
        raise NotQuasiHomogeneous(A.weights.note or "no quasi-homogeneous weights")
    rows = []
    for m in A.basis:
        level = form_level(m, A.weights.weights)
        rows.append(SpectrumRow(m, level, level - 1, level - math.floor(level)))
    rows.sort(key=lambda r: r.level)  # stable: keeps the algebra's tie order
    return SpectrumTable(tuple(rows), A.n)


@dataclass(frozen=True)
class HodgeGrading:
    pq: Tuple[Tuple[int, int], ...]
    n: int

    @property
    def weights(self) -> List[int]:
        return [p + q for p, q in self.pq]

    def dims(self) -> Dict[Tuple[int, int], int]:
        return dict(Counter(self.pq))

    def piece(self, p: int, q: int) -> List[int]:
        return [k for k, pq in enumerate(self.pq) if pq == (p, q)]

    def hodge_filtration(self, p: int) -> List[int]:
        """Indices spanning F^p = sum of J^{r,s} with r >= p."""
        return [k for k, (r, _) in enumerate(self.pq) if r >= p]

    def opposite_filtration(self, q: int) -> List[int]:
        """Indices spanning U_q = sum of J^{r,s} with r <= q."""
        return [k for k, (r, _) in enumerate(self.pq) if r <= q]


def hodge_indices(beta: Fraction, n: int) -> Tuple[int, int]:
    if beta.denominator == 1:
        b = int(beta)
        return b + 1, n - b
    p = math.ceil(beta)
    return p, n - p


def hodge_bigrading(S: SpectrumTable) -> HodgeGrading:
    return HodgeGrading(tuple(hodge_indices(r.beta, S.n) for r in S.rows), S.n)


@dataclass(frozen=True)
class Conjugation:
    """Antilinear involution e_a -> i^{coeff_exp[a]} e_{kappa[a]} on the monomial basis."""

    kappa: Tuple[int, ...]
    coeff_exp: Tuple[int, ...]


def conjugation_map(S: SpectrumTable, H: HodgeGrading) -> Conjugation:
    mu = len(S.rows)
    kappa = tuple(mu - 1 - a for a in range(mu))
    target = S.n + 1
    for a, b in enumerate(kappa):
        if S.rows[a].level + S.rows[b].level != target:
            raise AsymmetricSpectrum(
                f"levels {S.rows[a].level} and {S.rows[b].level} do not sum to {target}")
        if H.pq[b] != H.pq[a][::-1]:
            raise AsymmetricSpectrum(f"conjugation does not map J^{H.pq[a]} to its transpose")
    # i^{-k} on weight-k classes: real on even weight, imaginary on odd weight,
    # which keeps the twisted residue real and the involution consistent
    coeff = tuple((-(p + q)) % 4 for p, q in H.pq)
    return Conjugation(kappa, coeff)


@dataclass(frozen=True)
class WeilSigns:
    ctilde: Tuple[int, ...]  # (-1)^p
    weil_exp: Tuple[int, ...]  # p - q mod 4, the Weil operator is i^{p-q}

    def ctilde_matrix(self) -> linalg.Matrix:
        n = len(self.ctilde)
        return [[Fraction(self.ctilde[i]) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def weil_signs(H: HodgeGrading) -> WeilSigns:
    return WeilSigns(tuple(-1 if p % 2 else 1 for p, _ in H.pq),
                     tuple((p - q) % 4 for p, q in H.pq))


def opposite_filtration_check(H: HodgeGrading) -> bool:
    """H = F^p (+) U_{p-1} for every p, checked by ranks of the spanning vectors."""
    mu = len(H.pq)
    ps = [p for p, _ in H.pq]
    lo, hi = (min(ps), max(ps)) if ps else (0, 0)
    unit = linalg.identity(mu)
    for p in range(lo - 1, hi + 2):
        F = [unit[k] for k in H.hodge_filtration(p)]
        U = [unit[k] for k in H.opposite_filtration(p - 1)]
        if len(F) + len(U) != mu:
            return False
        if (F or U) and linalg.rank(F + U) != mu:
            return False
    return True


@dataclass
class HodgeData:
    """Everything the polarization checks need for a quasi-homogeneous germ."""

    spectrum: SpectrumTable
    grading: HodgeGrading
    conjugation: Conjugation
    signs: WeilSigns

    @property
    def unipotent(self) -> List[bool]:
        return [r.unipotent for r in self.spectrum.rows]


def hodge_data(A: MilnorAlgebra) -> HodgeData:
    S = spectrum(A)
    if [r.monomial for r in S.rows] != list(A.basis):
        raise AsymmetricSpectrum("algebra basis is not sorted by level")
    H = hodge_bigrading(S)
    return HodgeData(S, H, conjugation_map(S, H), weil_signs(H))
