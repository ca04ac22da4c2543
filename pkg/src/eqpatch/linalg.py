"""Dense Gaussian elimination over a base field (F_p or Q scalars)."""
from __future__ import annotations

from typing import Optional, Sequence

from .poly import Field


def rref(F: Field, rows: Sequence[Sequence], ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (rows, pivot columns)."""
    A = [[F.coerce(x) for x in r] for r in rows]
    p = F.char
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = F.inv(A[r][c])
        A[r] = [(x * inv) % p for x in A[r]] if p else [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                row_r = A[r]
                if p:
                    A[i] = [(x - f * y) % p for x, y in zip(A[i], row_r)]
                else:
                    A[i] = [x - f * y for x, y in zip(A[i], row_r)]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(F: Field, rows: Sequence[Sequence], ncols: int) -> int:
    return len(rref(F, rows, ncols)[1])


def solve(F: Field, A: Sequence[Sequence], b: Sequence) -> Optional[list]:
    """One solution x of A x = b, or None."""
    n = len(A[0]) if A else 0
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    if not aug:
        return [0] * n
    R, piv = rref(F, aug, n + 1)
    if piv and piv[-1] == n:
        return None
    x = [0] * n
    for row, c in zip(R, piv):
        x[c] = row[n]
    return x


def nullspace(F: Field, A: Sequence[Sequence], n: int) -> list[list]:
    """Basis of {x : A x = 0} for an m x n matrix A."""
    if not A:
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    R, piv = rref(F, A, n)
    free = [c for c in range(n) if c not in set(piv)]
    basis = []
    p = F.char
    for f in free:
        x = [0] * n
        x[f] = 1
        for row, c in zip(R, piv):
            x[c] = (-row[f]) % p if p else -row[f]
        basis.append(x)
    return basis
