"""Small exact integer linear algebra: kernels, Hermite forms, determinants."""
from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence

Matrix = List[List[int]]


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Basis of {v in Z^n : A v = 0} by unimodular column operations.

    Returns the basis vectors as rows.
    """
    A = [list(r) for r in rows]
    m = len(A)
    # columns carry (A-part, U-part); U starts as the identity
    cols = [[A[i][j] for i in range(m)] + [1 if k == j else 0 for k in range(ncols)] for j in range(ncols)]
    pivot = 0
    for row in range(m):
        if pivot >= ncols:
            break
        while True:
            nz = [j for j in range(pivot, ncols) if cols[j][row] != 0]
            if not nz:
                break
            best = min(nz, key=lambda j: abs(cols[j][row]))
            cols[pivot], cols[best] = cols[best], cols[pivot]
            others = [j for j in range(pivot + 1, ncols) if cols[j][row] != 0]
            if not others:
                pivot += 1
                break
            p = cols[pivot][row]
            for j in others:
                q = cols[j][row] // p
                cols[j] = [x - q * y for x, y in zip(cols[j], cols[pivot])]
    return [c[m:] for c in cols[pivot:]]


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> Matrix:
    """Row-style Hermite normal form (positive pivots, reduced above), zero rows dropped."""
    H = [list(r) for r in rows if any(r)]
    if not H:
        return []
    n = len(H[0])
    r = 0
    for c in range(n):
        while True:
            nz = [i for i in range(r, len(H)) if H[i][c] != 0]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(H[i][c]))
            H[r], H[best] = H[best], H[r]
            others = [i for i in range(r + 1, len(H)) if H[i][c] != 0]
            if not others:
                break
            for i in others:
                q = H[i][c] // H[r][c]
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
        if r < len(H) and H[r][c] != 0:
            if H[r][c] < 0:
                H[r] = [-x for x in H[r]]
            for i in range(r):
                q = H[i][c] // H[r][c]
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
            r += 1
        if r == len(H):
            break
    return [row for row in H if any(row)]


def same_lattice(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> bool:
    return hermite_normal_form(a) == hermite_normal_form(b)


def in_lattice(v: Sequence[int], basis: Sequence[Sequence[int]]) -> bool:
    return hermite_normal_form(list(basis)) == hermite_normal_form(list(basis) + [list(v)])


def rank(rows: Sequence[Sequence[int]]) -> int:
    return len(hermite_normal_form(rows))


def determinant(M: Sequence[Sequence[int]]) -> Fraction:
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        for i in range(c + 1, n):
            f = A[i][c] / A[c][c]
            A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return det


def inverse(M: Sequence[Sequence[int]]) -> Optional[List[List[Fraction]]]:
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            return None
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [x / piv for x in A[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return [row[n:] for row in A]
