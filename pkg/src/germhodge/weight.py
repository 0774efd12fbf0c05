"""Weight filtration of a nilpotent operator, primitive parts and level forms.

For a nilpotent N the filtration centered at 0 is

    W_l = sum_{j >= max(0, -l)}  ker N^{l+1+j}  intersected with  im N^j,

which puts the vector N^i v of a Jordan chain of length s in weight s - 1 - 2i.
Primitive representatives are built chain by chain: take the longest chains,
then pass to the residue-orthogonal complement of their span and repeat.
Because N is self-adjoint for the residue pairing this keeps different
primitive pieces exactly orthogonal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .errors import DegenerateLevelForm, NotHermitian, NotNilpotent
from .linalg import Matrix, Vector


def _apply(M: Matrix, vectors: Sequence[Vector]) -> List[Vector]:
    return [linalg.matvec(M, v) for v in vectors]


def nilpotency_index(N: Matrix) -> int:
    """Smallest m with N^m = 0."""
    n = len(N)
    P = linalg.identity(n)
    for m in range(n + 1):
        if linalg.is_zero(P):
            return m
        P = linalg.matmul(P, N)
    raise NotNilpotent("operator is not nilpotent")


@dataclass
class WeightFiltration:
    N: Matrix
    center: int
    index: int  # nilpotency index m
    spaces: Dict[int, List[Vector]]  # l -> basis of W_l (uncentered)

    @property
    def dim(self) -> int:
        return len(self.N)

    @property
    def range(self) -> Tuple[int, int]:
        """Uncentered levels that can be nonzero in Gr."""
        return -(self.index - 1), self.index - 1

    def W(self, l: int) -> List[Vector]:
        l -= self.center
        lo, hi = self.range
        if l < lo:
            return []
        if l > hi:
            return linalg.identity(self.dim)
        return self.spaces[l]

    def gr_dims(self) -> Dict[int, int]:
        lo, hi = self.range
        out = {}
        for l in range(lo, hi + 1):
            d = len(self.W(l + self.center)) - len(self.W(l - 1 + self.center))
            if d:
                out[l + self.center] = d
        return out


def nilpotent_weight_filtration(N: Matrix, center: int = 0) -> WeightFiltration:
    dim = len(N)
    m = nilpotency_index(N)
    powers = [linalg.identity(dim)]
    for _ in range(m):
        powers.append(linalg.matmul(powers[-1], N))
    kernels = [linalg.span_basis(linalg.kernel_basis(P), dim) if dim else [] for P in powers]
    images = [linalg.column_space(P) if dim else [] for P in powers]

    def ker(k):
        return kernels[min(k, m)]

    def im(k):
        return images[k] if k <= m else []

    spaces = {}
    for l in range(-(m - 1), m):
        parts: List[Vector] = []
        for j in range(max(0, -l), m + 1):
            if l + 1 + j < 0:
                continue
            parts.extend(linalg.intersect(ker(l + 1 + j), im(j), dim))
        spaces[l] = linalg.span_basis(parts, dim)
    return WeightFiltration(N, center, m, spaces)


def jacobson_morosov_check(W: WeightFiltration) -> Dict[str, bool]:
    """N W_l in W_{l-2}, and N^l: Gr_l -> Gr_{-l} bijective for l >= 0 (centered at W.center)."""
    N = W.N
    c = W.center
    lo, hi = W.range
    lowers = True
    for l in range(lo - 1, hi + 2):
        target = W.W(l - 2 + c)
        if not all(linalg.contains(target, v) for v in _apply(N, W.W(l + c))):
            lowers = False
    iso = True
    for l in range(0, hi + 1):
        Nl = linalg.matpow(N, l)
        below = W.W(-l - 1 + c)
        gr_l = len(W.W(l + c)) - len(W.W(l - 1 + c))
        gr_ml = len(W.W(-l + c)) - len(below)
        image = linalg.span_basis(below + _apply(Nl, W.W(l + c)), W.dim)
        if gr_l != gr_ml or len(image) - len(below) != gr_l:
            iso = False
    return {"lowers_weight_by_two": lowers, "hard_lefschetz": iso}


@dataclass
class PrimitiveDecomposition:
    reps: Dict[int, List[Vector]]  # l -> representatives of P_l
    lefschetz_ok: bool
    orthogonal_construction: bool

    def dims(self) -> Dict[int, int]:
        return {l: len(v) for l, v in sorted(self.reps.items()) if v}


def _chain_tops(N: Matrix, S: List[Vector], m: int) -> List[Vector]:
    """Vectors of span(S) whose N^{m-1}-images form a basis of N^{m-1} span(S)."""
    Nm1 = linalg.matpow(N, m - 1)
    chosen: List[Vector] = []
    images: List[Vector] = []
    for v in S:
        w = linalg.matvec(Nm1, v)
        if any(w) and linalg.rank(images + [w]) > len(images):
            chosen.append(v)
            images.append(w)
    return chosen


def _restricted_index(N: Matrix, S: List[Vector]) -> int:
    m = 0
    cur = S
    while cur and any(any(v) for v in cur):
        cur = _apply(N, cur)
        m += 1
    return m


def _orthogonal_complement(form: Matrix, C: List[Vector], S: List[Vector], dim: int) -> List[Vector]:
    """Vectors s in span(S) with form(c, s) = 0 for all c in C."""
    if not C:
        return S
    rows = [[linalg.bilinear(form, c, s) for s in S] for c in C]
    out = []
    for k in linalg.kernel_basis(rows):
        out.append([sum((a * s[t] for a, s in zip(k, S) if a), Fraction(0)) for t in range(dim)])
    return linalg.span_basis(out, dim)


def primitive_parts(W: WeightFiltration, N: Matrix, form: Optional[Matrix] = None) -> PrimitiveDecomposition:
    """Representatives of P_l = ker N^{l+1} on Gr_l, for l >= 0 (uncentered).

    With a nondegenerate ``form`` for which N is self-adjoint, chains are split
    off orthogonally.  Without one, representatives are echelon lifts.
    """
    dim = len(N)
    reps: Dict[int, List[Vector]] = {}
    if form is not None:
        S = linalg.identity(dim)
        while S:
            m = _restricted_index(N, S)
            if m == 0:
                break
            tops = _chain_tops(N, S, m)
            reps.setdefault(m - 1, []).extend(tops)
            chains = [linalg.matvec(linalg.matpow(N, j), u) for u in tops for j in range(m)]
            S = _orthogonal_complement(form, chains, S, dim)
    else:
        for l in range(0, W.index):
            kernel = linalg.span_basis(linalg.kernel_basis(linalg.matpow(N, l + 1)), dim)
            lift = linalg.intersect(kernel, W.W(l + W.center), dim)
            extra = linalg.complement_in(W.W(l - 1 + W.center), lift, dim)
            if extra:
                reps[l] = extra
    return PrimitiveDecomposition(reps, _lefschetz_check(W, N, reps), form is not None)


def _lefschetz_check(W: WeightFiltration, N: Matrix, reps: Dict[int, List[Vector]]) -> bool:
    """W_l = W_{l-1} + sum_r N^r P_{l+2r}, with the expected dimension, for every l."""
    dim = len(N)
    lo, hi = W.range
    for l in range(lo, hi + 1):
        below = W.W(l - 1 + W.center)
        pieces = []
        for k, vs in reps.items():
            if (k - l) % 2 == 0 and k >= abs(l):
                r = (k - l) // 2
                pieces.extend(_apply(linalg.matpow(N, r), vs))
        here = W.W(l + W.center)
        if len(below) + len(pieces) != len(here):
            return False
        if len(linalg.span_basis(below + pieces, dim)) != len(here):
            return False
        if not all(linalg.contains(here, v) for v in pieces):
            return False
    return True


@dataclass
class LevelForm:
    matrices: Dict[int, Matrix]  # l -> res(u, Ct N^l v) on P_l representatives
    twisted: bool  # False when Ct is the identity (no Hodge grading)

    def nondegenerate(self) -> Dict[int, bool]:
        return {l: linalg.rank(M) == len(M) for l, M in self.matrices.items()}


def level_form(gram: Matrix, N: Matrix, P: PrimitiveDecomposition,
               ctilde: Optional[Sequence[int]] = None, strict: bool = False) -> LevelForm:
    dim = len(N)
    D = [[Fraction(ctilde[i]) if i == j else Fraction(0) for j in range(dim)]
         for i in range(dim)] if ctilde is not None else linalg.identity(dim)
    mats = {}
    for l, vs in sorted(P.reps.items()):
        T = linalg.matmul(gram, linalg.matmul(D, linalg.matpow(N, l)))
        mats[l] = [[linalg.bilinear(T, u, v) for v in vs] for u in vs]
    L = LevelForm(mats, ctilde is not None)
    if strict:
        bad = [l for l, ok in L.nondegenerate().items() if not ok]
        if bad:
            raise DegenerateLevelForm(f"level forms degenerate at levels {bad}")
    return L


def twisted_hermitian(gram: Matrix, N: Matrix, power: int, ctilde: Sequence[int],
                      kappa: Sequence[int], coeff_exp: Sequence[int], left_exp: Sequence[int],
                      vectors: Sequence[Vector]) -> Tuple[Matrix, Matrix]:
    """Real and imaginary parts of h(u, v) = sum_ab u_a v_b i^{left[a] + coeff[b]} res(e_a, Ct N^power e_kappa(b)).

    ``vectors`` are real coordinate vectors; the form is linear in u and
    (through the antilinear conjugation) antilinear in v.
    """
    dim = len(N)
    D = [[Fraction(ctilde[i]) if i == j else Fraction(0) for j in range(dim)] for i in range(dim)]
    T = linalg.matmul(gram, linalg.matmul(D, linalg.matpow(N, power)))
    parts = [linalg.zeros(dim), linalg.zeros(dim)]  # real, imaginary parts of the full matrix
    unit = {0: (1, 0), 1: (0, 1), 2: (-1, 0), 3: (0, -1)}
    for a in range(dim):
        for b in range(dim):
            t = T[a][kappa[b]]
            if not t:
                continue
            re, im = unit[(left_exp[a] + coeff_exp[b]) % 4]
            if re:
                parts[0][a][b] += re * t
            if im:
                parts[1][a][b] += im * t
    H_re = linalg.congruence(parts[0], vectors)
    H_im = linalg.congruence(parts[1], vectors)
    return H_re, H_im


@dataclass
class BilinearReport:
    orthogonal: bool
    nondegenerate: Dict[int, bool]
    well_defined: bool
    definite: Optional[bool] = None
    sign: Optional[int] = None
    inertia: Dict[int, Tuple[int, int, int]] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.orthogonal and all(self.nondegenerate.values()) and self.well_defined
                and self.definite is not False)


def cross_orthogonality(gram: Matrix, N: Matrix, P: PrimitiveDecomposition) -> bool:
    """res(N^a u, N^b v) = 0 for u in P_r, v in P_s, r != s, all a <= r, b <= s."""
    levels = sorted(P.reps)
    chains = {l: [linalg.matvec(linalg.matpow(N, j), u) for u in P.reps[l] for j in range(l + 1)]
              for l in levels}
    for i, r in enumerate(levels):
        for s in levels[i + 1:]:
            for u in chains[r]:
                for v in chains[s]:
                    if linalg.bilinear(gram, u, v):
                        return False
    return True


def well_defined_modulo(gram: Matrix, N: Matrix, W: WeightFiltration,
                        ctilde: Optional[Sequence[int]] = None) -> bool:
    """res(u, Ct N^l v) = 0 for u in W_{l-1}, v in W_l: the level forms descend to Gr."""
    dim = len(N)
    D = [[Fraction(ctilde[i]) if i == j else Fraction(0) for j in range(dim)]
         for i in range(dim)] if ctilde is not None else linalg.identity(dim)
    for l in range(0, W.index):
        T = linalg.matmul(gram, linalg.matmul(D, linalg.matpow(N, l)))
        for u in W.W(l - 1 + W.center):
            for v in W.W(l + W.center):
                if linalg.bilinear(T, u, v):
                    return False
    return True


def bilinear_relation_check(L: LevelForm, gram: Matrix, W: WeightFiltration, P: PrimitiveDecomposition,
                            hodge=None, global_sign: Optional[int] = None) -> BilinearReport:
    """Orthogonality, nondegeneracy and (given Hodge data) definiteness with one shared sign.

    ``hodge`` is a HodgeData; ``global_sign`` is the calibrated sign the
    definite forms must share (if None, any single common sign is accepted).
    """
    N = W.N
    ctilde = hodge.signs.ctilde if hodge is not None else None
    report = BilinearReport(
        orthogonal=cross_orthogonality(gram, N, P),
        nondegenerate=L.nondegenerate(),
        well_defined=well_defined_modulo(gram, N, W, ctilde),
    )
    if hodge is None:
        report.notes.append("no Hodge grading: C-tilde taken as identity, positivity not checked")
        return report
    signs = set()
    definite = True
    for l, vs in sorted(P.reps.items()):
        try:
            H_re, H_im = twisted_hermitian(gram, N, l, ctilde, hodge.conjugation.kappa,
                                           hodge.conjugation.coeff_exp, hodge.signs.weil_exp, vs)
            inertia = linalg.hermitian_signature(H_re, H_im)
        except NotHermitian as exc:
            report.notes.append(f"level {l}: {exc}")
            definite = False
            continue
        report.inertia[l] = inertia
        plus, minus, _ = inertia
        if plus == len(vs):
            signs.add(1)
        elif minus == len(vs):
            signs.add(-1)
        else:
            definite = False
    if len(signs) > 1:
        definite = False
        report.notes.append("definite levels disagree in sign")
    sign = signs.pop() if len(signs) == 1 else None
    if global_sign is not None and sign is not None and sign != global_sign:
        definite = False
        report.notes.append(f"sign {sign} differs from the calibrated sign {global_sign}")
    report.definite = definite
    report.sign = sign
    return report
