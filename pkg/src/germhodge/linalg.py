"""Exact dense linear algebra over ``Fraction``.

Matrices are plain row-major lists of lists; vectors are lists.  Nothing here
rounds.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import List, Sequence, Tuple

from .errors import NotHermitian, NotNilpotent, NotSymmetric, Singular

Matrix = List[List[Fraction]]
Vector = List[Fraction]


def to_matrix(rows) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def zeros(m: int, n: int | None = None) -> Matrix:
    return [[Fraction(0)] * (m if n is None else n) for _ in range(m)]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def shape(M: Matrix) -> Tuple[int, int]:
    return len(M), (len(M[0]) if M else 0)


def transpose(M: Matrix) -> Matrix:
    return [list(col) for col in zip(*M)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    Bt = transpose(B)
    return [[sum((a * b for a, b in zip(row, col) if a and b), Fraction(0)) for col in Bt] for row in A]


def matvec(A: Matrix, v: Vector) -> Vector:
    return [sum((a * x for a, x in zip(row, v) if a and x), Fraction(0)) for row in A]


def add(A: Matrix, B: Matrix) -> Matrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def scale(A: Matrix, c) -> Matrix:
    c = Fraction(c)
    return [[c * a for a in row] for row in A]


def is_zero(M: Matrix) -> bool:
    return all(not x for row in M for x in row)


def matpow(M: Matrix, k: int) -> Matrix:
    result = identity(len(M))
    base = M
    while k:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


def submatrix(M: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    return [[M[i][j] for j in cols] for i in rows]


def bilinear(A: Matrix, u: Vector, v: Vector) -> Fraction:
    """u^T A v."""
    return sum((x * y for x, y in zip(u, matvec(A, v))), Fraction(0))


def congruence(A: Matrix, basis: Sequence[Vector]) -> Matrix:
    """Gram matrix of the form A restricted to span(basis): B^T A B."""
    return [[bilinear(A, u, v) for v in basis] for u in basis]


# ---------------------------------------------------------------- elimination

def _integer_rows(M: Matrix) -> List[List[int]]:
    out = []
    for row in M:
        d = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * d) for x in row])
    return out


def rank(M: Matrix) -> int:
    """Rank by fraction-free (Bareiss) elimination on an integer-scaled copy."""
    if not M or not M[0]:
        return 0
    A = _integer_rows(M)
    m, n = len(A), len(A[0])
    r = 0
    prev = 1
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, m):
            for j in range(c + 1, n):
                A[i][j] = (A[r][c] * A[i][j] - A[i][c] * A[r][j]) // prev
            A[i][c] = 0
        prev = A[r][c]
        r += 1
        if r == m:
            break
    return r


def determinant(M: Matrix) -> Fraction:
    """Determinant via Bareiss on the integer-scaled matrix."""
    n = len(M)
    if n == 0:
        return Fraction(1)
    denom = 1
    A = []
    for row in M:
        d = lcm(*(x.denominator for x in row))
        denom *= d
        A.append([int(x * d) for x in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return Fraction(0)
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[k][k] * A[i][j] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return Fraction(sign * A[n - 1][n - 1], denom)


def rref(M: Matrix) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns (Gauss-Jordan over Q)."""
    A = [list(row) for row in M]
    m = len(A)
    n = len(A[0]) if A else 0
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        A[r] = [x / p for x in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A, pivots


def kernel_basis(M: Matrix) -> List[Vector]:
    """Basis of {v : M v = 0}, one vector per free column."""
    n = len(M[0]) if M else 0
    if not M:
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    R, pivots = rref(M)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def inverse(M: Matrix) -> Matrix:
    n = len(M)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise Singular("matrix is singular")
    return [row[n:] for row in R[:n]]


def solve(M: Matrix, b: Vector) -> Vector:
    return matvec(inverse(M), b)


# ------------------------------------------------------------- subspaces
# A subspace is represented by a list of basis vectors (columns).

def span_basis(vectors: Sequence[Vector], dim: int) -> List[Vector]:
    """A basis (echelon form) of the span of ``vectors`` in Q^dim."""
    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return []
    R, pivots = rref([list(v) for v in vectors])
    return [R[i] for i in range(len(pivots))]


def column_space(M: Matrix) -> List[Vector]:
    return span_basis(transpose(M), len(M))


def intersect(U: Sequence[Vector], V: Sequence[Vector], dim: int) -> List[Vector]:
    if not U or not V:
        return []
    # solve sum a_i u_i = sum b_j v_j
    A = transpose([list(u) for u in U] + [[-x for x in v] for v in V])
    out = []
    for k in kernel_basis(A):
        a = k[:len(U)]
        out.append([sum((ai * u[t] for ai, u in zip(a, U)), Fraction(0)) for t in range(dim)])
    return span_basis(out, dim)


def subspace_sum(U: Sequence[Vector], V: Sequence[Vector], dim: int) -> List[Vector]:
    return span_basis(list(U) + list(V), dim)


def contains(U: Sequence[Vector], v: Vector) -> bool:
    if not any(v):
        return True
    return rank([list(u) for u in U] + [list(v)]) == len(span_basis(U, len(v)))


def complement_in(U: Sequence[Vector], V: Sequence[Vector], dim: int) -> List[Vector]:
    """Vectors of V (taken greedily, in order) completing a basis of U to one of U + V."""
    current = span_basis(U, dim)
    extra = []
    for v in V:
        trial = current + [list(v)]
        if rank(trial) > len(current):
            current = trial
            extra.append(list(v))
    return extra


# --------------------------------------------------------------- invariants

def jordan_partition_nilpotent(N: Matrix) -> List[int]:
    """Jordan block sizes of a nilpotent matrix, largest first."""
    n = len(N)
    ranks = [n]
    P = identity(n)
    for _ in range(n):
        P = matmul(P, N)
        ranks.append(rank(P))
        if ranks[-1] == 0:
            break
    if ranks[-1] != 0:
        raise NotNilpotent("matrix power N^dim is nonzero")
    # number of blocks of size >= k is r_{k-1} - r_k
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    sizes = []
    for k in range(len(at_least), 0, -1):
        exact = at_least[k - 1] - (at_least[k] if k < len(at_least) else 0)
        sizes.extend([k] * exact)
    return sizes


def nilpotent_from_partition(sizes: Sequence[int]) -> Matrix:
    n = sum(sizes)
    N = zeros(n)
    start = 0
    for s in sizes:
        for k in range(s - 1):
            N[start + k + 1][start + k] = Fraction(1)
        start += s
    return N


def _check_symmetric(S: Matrix):
    n = len(S)
    if any(len(row) != n for row in S):
        raise NotSymmetric("matrix is not square")
    for i in range(n):
        for j in range(i + 1, n):
            if S[i][j] != S[j][i]:
                raise NotSymmetric(f"entry ({i},{j}) differs from ({j},{i})")


def symmetric_signature(S: Matrix) -> Tuple[int, int, int]:
    """Inertia (n_plus, n_minus, n_zero) by symmetric congruence diagonalization."""
    _check_symmetric(S)
    A = [list(row) for row in S]
    n = len(A)
    plus = minus = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if A[i][i]), None)
        if piv is not None:
            p = A[piv][piv]
            if p > 0:
                plus += 1
            else:
                minus += 1
            active.remove(piv)
            for i in active:
                if A[i][piv]:
                    f = A[i][piv] / p
                    for j in active:
                        A[i][j] -= f * A[piv][j]
            for i in active:
                A[i][piv] = A[piv][i] = Fraction(0)
            continue
        pair = next(((i, j) for i in active for j in active if i < j and A[i][j]), None)
        if pair is None:
            break
        i, j = pair
        # replace e_i by e_i + e_j, creating a nonzero diagonal entry 2*A[i][j]
        for k in active:
            A[i][k] += A[j][k]
        for k in active:
            A[k][i] += A[k][j]
    return plus, minus, n - plus - minus


def hermitian_signature(H_re: Matrix, H_im: Matrix) -> Tuple[int, int, int]:
    """Inertia of the Hermitian form H_re + i*H_im via its real 2n x 2n realification."""
    n = len(H_re)
    for i in range(n):
        for j in range(n):
            if H_re[i][j] != H_re[j][i]:
                raise NotHermitian(f"real part not symmetric at ({i},{j})")
            if H_im[i][j] != -H_im[j][i]:
                raise NotHermitian(f"imaginary part not antisymmetric at ({i},{j})")
    big = [H_re[i] + [-x for x in H_im[i]] for i in range(n)]
    big += [H_im[i] + H_re[i] for i in range(n)]
    p, m, z = symmetric_signature(big)
    return p // 2, m // 2, z // 2
