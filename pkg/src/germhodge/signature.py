"""Signature of the polarization, from Hodge numbers and from the level forms.

The direct computation sums Hermitian inertias of

    h_l(u, v) = res(u, Ct * N^{l+e} * conj(v)) * i^{-k}

over the primitive pieces, where k is the Hodge weight of the piece and e = 1
on the unipotent part (whose polarization involves one extra power of N).
The overall sign of the residue relative to the topological pairing is not
determined a priori; it is fixed once on x^2 + y^2 + z^2.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Tuple

from . import linalg
from .errors import CalibrationFailure
from .hodge import HodgeData, HodgeGrading, SpectrumTable, hodge_data
from .milnor import milnor_algebra, multiplication_matrix
from .poly import parse_polynomial
from .residue import gram_matrix
from .weight import (PrimitiveDecomposition, bilinear_relation_check, level_form, nilpotent_weight_filtration,
                     primitive_parts, twisted_hermitian)

REFERENCE_GERM = ("x^2+y^2+z^2", ("x", "y", "z"))

PQ = Tuple[int, int]


@dataclass(frozen=True)
class HodgeNumberTable:
    unipotent: Dict[PQ, int]
    other: Dict[PQ, int]

    @property
    def total(self) -> int:
        return sum(self.unipotent.values()) + sum(self.other.values())

    def is_symmetric(self) -> bool:
        return all(d.get((q, p), 0) == c for d in (self.unipotent, self.other) for (p, q), c in d.items())


def hodge_number_table(S: SpectrumTable, H: HodgeGrading) -> HodgeNumberTable:
    uni = Counter(pq for pq, row in zip(H.pq, S.rows) if row.unipotent)
    other = Counter(pq for pq, row in zip(H.pq, S.rows) if not row.unipotent)
    return HodgeNumberTable(dict(sorted(uni.items())), dict(sorted(other.items())))


def signature_formula(T: HodgeNumberTable, n: int) -> int:
    if n % 2:
        return 0
    sigma = 0
    for (p, q), h in T.unipotent.items():
        if p + q == n + 2:
            sigma += (-1) ** q * h
        elif p + q >= n + 3:
            sigma += 2 * (-1) ** q * h
    for (p, q), h in T.other.items():
        sigma += (-1) ** q * h
    return sigma


def raw_signature(gram: linalg.Matrix, N: linalg.Matrix, hodge: HodgeData, P: PrimitiveDecomposition) -> int:
    """Uncalibrated sum of Hermitian inertias over primitive pieces split by eigenvalue type."""
    K = hodge.conjugation
    ctilde = hodge.signs.ctilde
    left = tuple((-(p + q)) % 4 for p, q in hodge.grading.pq)
    uni = hodge.unipotent
    total = 0
    for l, reps in sorted(P.reps.items()):
        for unipotent in (False, True):
            vs = [v for v in reps if _supported(v, uni, unipotent)]
            if not vs:
                continue
            H_re, H_im = twisted_hermitian(gram, N, l + int(unipotent), ctilde, K.kappa,
                                           K.coeff_exp, left, vs)
            plus, minus, _ = linalg.hermitian_signature(H_re, H_im)
            total += plus - minus
    return total


def _supported(v, unipotent_flags, want: bool) -> bool:
    support = [k for k, x in enumerate(v) if x]
    return bool(support) and all(unipotent_flags[k] == want for k in support)


@dataclass(frozen=True)
class Calibration:
    sign: int
    raw: int
    formula: int


def _pipeline(text: str, variables):
    A = milnor_algebra(parse_polynomial(text, variables))
    R = gram_matrix(A)
    hodge = hodge_data(A)
    N = multiplication_matrix(A, A.f)
    W = nilpotent_weight_filtration(N)
    P = primitive_parts(W, N, R.gram)
    return A, R, hodge, N, P


@lru_cache(maxsize=None)
def calibration() -> Calibration:
    A, R, hodge, N, P = _pipeline(*REFERENCE_GERM)
    raw = raw_signature(R.gram, N, hodge, P)
    formula = signature_formula(hodge_number_table(hodge.spectrum, hodge.grading), A.n)
    if raw == 0 or abs(raw) != abs(formula):
        raise CalibrationFailure(f"reference germ gives {raw} directly and {formula} from Hodge numbers")
    return Calibration(1 if raw == formula else -1, raw, formula)


def signature_direct(gram: linalg.Matrix, N: linalg.Matrix, hodge: HodgeData, P: PrimitiveDecomposition) -> int:
    return calibration().sign * raw_signature(gram, N, hodge, P)


@lru_cache(maxsize=None)
def positivity_sign() -> int:
    """Sign of the Hermitian level form on the reference germ; every germ must share it."""
    A, R, hodge, N, P = _pipeline(*REFERENCE_GERM)
    W = nilpotent_weight_filtration(N)
    L = level_form(R.gram, N, P, hodge.signs.ctilde)
    rep = bilinear_relation_check(L, R.gram, W, P, hodge)
    if rep.sign is None:
        raise CalibrationFailure("reference germ has no definite polarization")
    return rep.sign
