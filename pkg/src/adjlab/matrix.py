"""Small dense polynomial matrices: products, determinants and minors."""

from __future__ import annotations

import itertools


def matmul(A, B):
    """Product of two matrices given as lists of rows of polynomials."""
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = None
            for t in range(k):
                a, b = A[i][t], B[t][j]
                if a and b:
                    acc = a * b if acc is None else acc + a * b
            row.append(acc if acc is not None else A[i][0].ring.zero)
        out.append(row)
    return out


def det(rows):
    """Determinant of a square polynomial matrix by fraction-free Bareiss elimination."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    ring = rows[0][0].ring
    A = [list(r) for r in rows]
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if not A[k][k]:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return ring.zero
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]).exact_divide(prev)
        prev = A[k][k]
    d = A[n - 1][n - 1]
    return d if sign == 1 else -d



def jacobian_matrix(polys, variables=None):
    """Rows are gradients of ``polys`` with respect to ``variables`` (default: all)."""
    if not polys:
        return []
    ring = polys[0].ring
    variables = variables or ring.variables
    return [[f.derivative(v) for v in variables] for f in polys]


def minor(M, rows, cols):
    return det([[M[i][j] for j in cols] for i in rows])


def all_minors(M, size):
    """Every ``size`` x ``size`` minor (row subsets outer, column subsets inner)."""
    nr = len(M)
    nc = len(M[0]) if M else 0
    for rows in itertools.combinations(range(nr), size):
        for cols in itertools.combinations(range(nc), size):
            yield minor(M, rows, cols)
