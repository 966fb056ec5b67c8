"""Exact dense linear algebra over :class:`~liegcs.scalars.Scalar`.

Matrices are lists of rows, vectors are lists.  Entries may be any value that
mixes with Scalar (ints are fine); results are always Scalars.
"""

from __future__ import annotations

from typing import Sequence

from .scalars import Scalar, as_scalar

Vec = list
Mat = list


def S(x) -> Scalar:
    return x if isinstance(x, Scalar) else as_scalar(x)


def zeros(n: int, m: int | None = None) -> Mat:
    m = n if m is None else m
    z = Scalar(0)
    return [[z] * m for _ in range(n)]


def identity(n: int) -> Mat:
    out = zeros(n)
    one = Scalar(1)
    for k in range(n):
        out[k][k] = one
    return out


def mat(rows) -> Mat:
    return [[S(x) for x in row] for row in rows]


def vec(xs) -> Vec:
    return [S(x) for x in xs]


def shape(A: Mat) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def transpose(A: Mat) -> Mat:
    return [list(col) for col in zip(*A)]


def conj(A):
    if A and isinstance(A[0], list):
        return [[x.conjugate() for x in row] for row in A]
    return [x.conjugate() for x in A]


def dagger(A: Mat) -> Mat:
    return conj(transpose(A))


def dot(u: Sequence, v: Sequence) -> Scalar:
    acc = Scalar(0)
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc


def matmul(A: Mat, B: Mat) -> Mat:
    Bt = transpose(B)
    return [[dot(row, col) for col in Bt] for row in A]


def matvec(A: Mat, v: Sequence) -> Vec:
    return [dot(row, v) for row in A]


def vecmat(v: Sequence, A: Mat) -> Vec:
    return matvec(transpose(A), v)


def add(A, B):
    if A and isinstance(A[0], list):
        return [[a + b for a, b in zip(r, s)] for r, s in zip(A, B)]
    return [a + b for a, b in zip(A, B)]


def sub(A, B):
    if A and isinstance(A[0], list):
        return [[a - b for a, b in zip(r, s)] for r, s in zip(A, B)]
    return [a - b for a, b in zip(A, B)]


def scale(c, A):
    c = S(c)
    if A and isinstance(A[0], list):
        return [[c * a for a in row] for row in A]
    return [c * a for a in A]


def is_zero(A) -> bool:
    if A and isinstance(A[0], list):
        return all(not x for row in A for x in row)
    return all(not x for x in A)


def bilinear(u: Sequence, M: Mat, v: Sequence) -> Scalar:
    """u^T M v."""
    return dot(u, matvec(M, v))


def block(blocks: list[list[Mat]]) -> Mat:
    out: Mat = []
    for brow in blocks:
        h = len(brow[0])
        for k in range(h):
            row: list = []
            for b in brow:
                row.extend(b[k])
            out.append(row)
    return out


def rref(A: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = [list(map(S, row)) for row in A]
    n, m = shape(M)
    pivots: list[int] = []
    r = 0
    for c in range(m):
        if r == n:
            break
        p = next((k for k in range(r, n) if M[k][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = M[r][c].inverse()
        M[r] = [x * inv if x else x for x in M[r]]
        for k in range(n):
            if k != r and M[k][c]:
                f = M[k][c]
                M[k] = [a - f * b if b else a for a, b in zip(M[k], M[r])]
        pivots.append(c)
        r += 1
    return M, pivots


def rank(A: Mat) -> int:
    if not A:
        return 0
    return len(rref(A)[1])


def nullspace(A: Mat, ncols: int | None = None) -> list[Vec]:
    """Basis of {x : A x = 0}."""
    if not A:
        m = ncols or 0
        return [e for e in identity(m)]
    R, piv = rref(A)
    m = len(R[0])
    free = [c for c in range(m) if c not in piv]
    basis = []
    zero = Scalar(0)
    for f in free:
        x = [zero] * m
        x[f] = Scalar(1)
        for r, pc in enumerate(piv):
            if R[r][f]:
                x[pc] = -R[r][f]
        basis.append(x)
    return basis


def inverse(A: Mat) -> Mat:
    n = len(A)
    aug = [list(row) + e for row, e in zip(A, identity(n))]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def solve(A: Mat, b: Sequence) -> Vec | None:
    """One solution of A x = b, or None when inconsistent."""
    n, m = shape(A)
    aug = [list(row) + [S(bb)] for row, bb in zip(A, b)]
    R, piv = rref(aug)
    if m in piv:
        return None
    x = [Scalar(0)] * m
    for r, pc in enumerate(piv):
        x[pc] = R[r][m]
    return x


def row_basis(vectors: Sequence[Sequence]) -> list[Vec]:
    """Echelon basis of the span of the given vectors."""
    vs = [list(map(S, v)) for v in vectors]
    if not vs:
        return []
    R, piv = rref(vs)
    return R[: len(piv)]


def independent_subset(vectors: Sequence[Sequence], start: Sequence[Sequence] = ()) -> list[int]:
    """Indices of a greedy maximal subset of ``vectors`` independent modulo ``start``."""
    chosen: list[int] = []
    basis = [list(map(S, v)) for v in start]
    r = rank(basis) if basis else 0
    for k, v in enumerate(vectors):
        trial = basis + [list(map(S, v))]
        rk = rank(trial)
        if rk > r:
            basis = trial
            r = rk
            chosen.append(k)
    return chosen


def in_span(v: Sequence, vectors: Sequence[Sequence]) -> bool:
    if not vectors:
        return is_zero(list(v))
    return rank(list(vectors) + [list(v)]) == rank(list(vectors))


def coords(v: Sequence, basis: Sequence[Sequence]) -> Vec | None:
    """Coordinates of v in the given (independent) vectors, or None."""
    A = transpose([list(b) for b in basis])
    return solve(A, v)


def intersect(U: Sequence[Sequence], W: Sequence[Sequence]) -> list[Vec]:
    """Basis of span(U) ∩ span(W)."""
    if not U or not W:
        return []
    A = transpose([list(u) for u in U] + [[-x for x in w] for w in W])
    ker = nullspace(A)
    out = []
    for k in ker:
        v = [Scalar(0)] * len(U[0])
        for c, u in zip(k[: len(U)], U):
            if c:
                v = [a + c * b for a, b in zip(v, u)]
        out.append(v)
    return row_basis(out)


def det(A: Mat) -> Scalar:
    M = [list(map(S, row)) for row in A]
    n = len(M)
    d = Scalar(1)
    for c in range(n):
        p = next((k for k in range(c, n) if M[k][c]), None)
        if p is None:
            return Scalar(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d = d * M[c][c]
        inv = M[c][c].inverse()
        for k in range(c + 1, n):
            if M[k][c]:
                f = M[k][c] * inv
                M[k] = [a - f * b for a, b in zip(M[k], M[c])]
    return d


def real_split(v: Sequence) -> Vec:
    """[Re v ; Im v] stacked, for real-linear rank computations."""
    re = [x.real_imag()[0] for x in v]
    im = [x.real_imag()[1] for x in v]
    return re + im


def real_rank(vectors: Sequence[Sequence]) -> int:
    """Rank over R of complex vectors."""
    if not vectors:
        return 0
    return rank([real_split(list(map(S, v))) for v in vectors])


def real_independent_subset(vectors, start=()) -> list[int]:
    return independent_subset(
        [real_split(list(map(S, v))) for v in vectors],
        [real_split(list(map(S, v))) for v in start],
    )
