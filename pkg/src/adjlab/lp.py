"""Exact rational linear programming (two-phase tableau simplex, Bland's rule).

All arithmetic is on :class:`fractions.Fraction`; no floats are involved, so
optimal values and unbounded rays are exact certificates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


@dataclass
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    x: list = field(default_factory=list)
    value: Fraction | None = None
    ray: list | None = None  # direction of unboundedness (original variables)


def _pivot(T, basis, r, c):
    row = T[r]
    inv = 1 / row[c]
    if inv != 1:
        T[r] = row = [v * inv for v in row]
    for i, other in enumerate(T):
        if i != r:
            f = other[c]
            if f:
                T[i] = [a - f * b for a, b in zip(other, row)]
    basis[r] = c


def _simplex(T, basis, ncols, allowed):
    """Minimize the objective stored in the last row of ``T``.

    Returns None at optimality or the entering column when unbounded.
    """
    m = len(T) - 1
    obj = T[m]
    while True:
        obj = T[m]
        enter = None
        for j in range(ncols):
            if allowed[j] and obj[j] < 0:
                enter = j
                break
        if enter is None:
            return None
        best = None
        leave = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            return enter
        _pivot(T, basis, leave, enter)


def linprog(c, A_ub=(), b_ub=(), A_eq=(), b_eq=(), lb=None, ub=None):
    """Minimize ``c.x`` subject to ``A_ub x <= b_ub``, ``A_eq x == b_eq``, ``lb <= x <= ub``.

    ``lb`` defaults to zero for every variable; entries of ``ub`` may be None.
    """
    n = len(c)
    c = [Fraction(v) for v in c]
    lb = [Fraction(0)] * n if lb is None else [Fraction(v) for v in lb]
    ub = [None] * n if ub is None else [None if v is None else Fraction(v) for v in ub]

    rows = []  # (coeffs over x', rhs, kind) with x = lb + x'
    for a, b in zip(A_ub, b_ub):
        a = [Fraction(v) for v in a]
        rows.append((a, Fraction(b) - sum(ai * li for ai, li in zip(a, lb)), "ub"))
    for a, b in zip(A_eq, b_eq):
        a = [Fraction(v) for v in a]
        rows.append((a, Fraction(b) - sum(ai * li for ai, li in zip(a, lb)), "eq"))
    for j, u in enumerate(ub):
        if u is not None:
            a = [Fraction(0)] * n
            a[j] = Fraction(1)
            rows.append((a, u - lb[j], "ub"))

    n_slack = sum(1 for r in rows if r[2] == "ub")
    m = len(rows)
    ncols = n + n_slack + m  # x', slacks, artificials
    T = []
    basis = []
    s = 0
    for i, (a, b, kind) in enumerate(rows):
        row = list(a) + [Fraction(0)] * (n_slack + m) + [b]
        if kind == "ub":
            row[n + s] = Fraction(1)
            s += 1
        if b < 0:
            row = [-v for v in row]
        row[n + n_slack + i] = Fraction(1)
        T.append(row)
        basis.append(n + n_slack + i)

    # phase 1
    obj = [Fraction(0)] * (ncols + 1)
    for i in range(m):
        obj = [o - v for o, v in zip(obj, T[i])]
    for i in range(m):
        obj[n + n_slack + i] = Fraction(0)
    T.append(obj)
    allowed = [True] * ncols
    _simplex(T, basis, ncols, allowed)
    if T[m][-1] < 0:
        return LPResult("infeasible")
    # drive artificials out of the basis
    art0 = n + n_slack
    for i in range(m):
        if basis[i] >= art0:
            for j in range(art0):
                if T[i][j] != 0:
                    _pivot(T, basis, i, j)
                    break
    allowed = [j < art0 for j in range(ncols)]

    # phase 2
    obj = [Fraction(0)] * (ncols + 1)
    for j in range(n):
        obj[j] = c[j]
    for i in range(m):
        bj = basis[i]
        if bj < n and c[bj]:
            f = c[bj]
            obj = [o - f * v for o, v in zip(obj, T[i])]
    T[m] = obj
    enter = _simplex(T, basis, ncols, allowed)
    xp = [Fraction(0)] * ncols
    for i in range(m):
        xp[basis[i]] = T[i][-1]
    x = [lb[j] + xp[j] for j in range(n)]
    if enter is not None:
        ray = [Fraction(0)] * ncols
        ray[enter] = Fraction(1)
        for i in range(m):
            ray[basis[i]] = -T[i][enter]
        return LPResult("unbounded", x=x, ray=ray[:n])
    value = sum(cj * xj for cj, xj in zip(c, x))
    return LPResult("optimal", x=x, value=value)


def feasible(A_ub=(), b_ub=(), A_eq=(), b_eq=(), n=None, lb=None):
    if n is None:
        n = len((list(A_ub) or list(A_eq))[0])
    return linprog([0] * n, A_ub, b_ub, A_eq, b_eq, lb=lb).status == "optimal"
