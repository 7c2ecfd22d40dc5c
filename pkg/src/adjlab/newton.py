"""Newton polyhedra of monomial ideals and their integral closures.

The Newton polyhedron of a monomial ideal with exponent set ``A`` is
``conv(A) + R^n_{>=0}``; a monomial lies in the integral closure exactly when
its exponent lies in this polyhedron.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd

from .lp import linprog

_FACET_CANDIDATE_CAP = 200_000


def in_newton_polyhedron(exps, u):
    """Decide ``u in conv(exps) + R^n_{>=0}`` exactly (rational LP)."""
    exps = [tuple(a) for a in exps]
    u = tuple(u)
    if not exps:
        return False
    if any(all(ai <= ui for ai, ui in zip(a, u)) for a in exps):
        return True
    n = len(u)
    k = len(exps)
    # variables: lambda_a >= 0; sum lambda = 1; sum lambda_a a_i <= u_i
    A_ub = [[a[i] for a in exps] for i in range(n)]
    res = linprog([0] * k, A_ub=A_ub, b_ub=list(u), A_eq=[[1] * k], b_eq=[1])
    return res.status == "optimal"


def vertices(exps):
    """Exponents that are vertices of the Newton polyhedron (sorted)."""
    exps = sorted(set(tuple(a) for a in exps))
    # componentwise-dominated points are never vertices
    cand = [a for a in exps if not any(b != a and all(x <= y for x, y in zip(b, a)) for b in exps)]
    if len(cand) <= 1:
        return cand
    n = len(cand[0])
    # lex-first minimizers of strictly positive functionals are vertices; they
    # make a cheap sufficient test for the remaining points
    known = set()
    orders = list(itertools.permutations(range(n))) if n <= 5 else [tuple(range(i, n)) + tuple(range(i)) for i in range(n)]
    for w in ([1] * n, *([1 + (n + 1) * (j == i) for j in range(n)] for i in range(n))):
        for perm in orders:
            known.add(min(cand, key=lambda a: (sum(x * y for x, y in zip(w, a)), [a[j] for j in perm])))
    out = []
    for a in cand:
        if a in known:
            out.append(a)
            continue
        if in_newton_polyhedron(sorted(known), a):
            continue
        others = [b for b in cand if b != a]
        if not in_newton_polyhedron(others, a):
            out.append(a)
            known.add(a)
    return out


def _nullvector(rows, n):
    """A nonzero integer vector orthogonal to ``rows`` when the nullspace is 1-dim."""
    M = [[Fraction(v) for v in r] for r in rows]
    pivots = []
    r = 0
    for col in range(n):
        piv = None
        for i in range(r, len(M)):
            if M[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][col]
        M[r] = [v * inv for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    if len(free) != 1:
        return None
    fcol = free[0]
    v = [Fraction(0)] * n
    v[fcol] = Fraction(1)
    for i, pc in enumerate(pivots):
        v[pc] = -M[i][fcol]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    w = [int(x * den) for x in v]
    g = 0
    for x in w:
        g = gcd(g, abs(x))
    return [x // g for x in w]


def facets(exps):
    """Valid inequalities ``<w, u> >= h`` (w >= 0 integral) cutting out the polyhedron.

    Returns a sorted list of ``(w, h)``; the coordinate inequalities are
    included.  Returns None when the candidate enumeration would be too large.
    """
    verts = vertices(exps)
    if not verts:
        return None
    n = len(verts[0])
    count = 0
    for k in range(1, n + 1):
        count += _binom(len(verts), k) * _binom(n, n - k)
    if count > _FACET_CANDIDATE_CAP:
        return None
    ineqs = set()
    for i in range(n):
        w = [0] * n
        w[i] = 1
        ineqs.add((tuple(w), min(v[i] for v in verts)))
    for k in range(1, n + 1):
        for pts in itertools.combinations(verts, k):
            base = pts[0]
            diffs = [[a - b for a, b in zip(p, base)] for p in pts[1:]]
            for rays in itertools.combinations(range(n), n - k):
                rows = diffs + [[1 if j == i else 0 for j in range(n)] for i in rays]
                w = _nullvector(rows, n)
                if w is None:
                    continue
                if any(x < 0 for x in w):
                    w = [-x for x in w]
                if any(x < 0 for x in w):
                    continue
                h = sum(a * b for a, b in zip(w, base))
                if all(sum(a * b for a, b in zip(w, v)) >= h for v in verts):
                    ineqs.add((tuple(w), h))
    return sorted(ineqs)


def _binom(n, k):
    if k < 0 or k > n:
        return 0
    from math import comb

    return comb(n, k)


class NewtonPolyhedron:
    def __init__(self, exps):
        self.exps = sorted(set(tuple(a) for a in exps))
        if not self.exps:
            raise ValueError("the zero ideal has no Newton polyhedron")
        self.n = len(self.exps[0])
        self._facets = None
        self._facets_done = False

    @property
    def facets(self):
        if not self._facets_done:
            self._facets = facets(self.exps)
            self._facets_done = True
        return self._facets

    def __contains__(self, u):
        if self._facets is not None:
            return all(sum(a * b for a, b in zip(w, u)) >= h for w, h in self._facets)
        return in_newton_polyhedron(self.exps, u)

    def minimal_lattice_points(self, lattice=None, pad=0):
        """Minimal exponents of lattice points in the polyhedron.

        ``lattice`` is an optional predicate restricting to a sublattice
        (e.g. invariant monomials of a cyclic quotient); minimality is then
        taken with respect to steps that stay in the sublattice, and ``pad``
        must cover the sublattice's step length in each coordinate.
        """
        _ = self.facets  # computed once so membership tests reuse it
        box = [max(a[i] for a in self.exps) + pad for i in range(self.n)]
        pts = []
        for u in itertools.product(*(range(b + 1) for b in box)):
            if lattice is not None and not lattice(u):
                continue
            if u in self:
                pts.append(u)
        ptset = set(pts)
        if lattice is None:
            minimal = [
                u for u in pts
                if not any(u[i] and u[:i] + (u[i] - 1,) + u[i + 1:] in ptset for i in range(self.n))
            ]
        else:
            minimal = [
                u for u in pts
                if not any(v != u and all(x <= y for x, y in zip(v, u)) for v in ptset)
            ]
        return sorted(minimal)


def closure_exponents(exps, lattice=None, pad=0):
    return NewtonPolyhedron(exps).minimal_lattice_points(lattice, pad)


def same_closure(exps_a, exps_b):
    """Equality of Newton polyhedra, checked by mutual membership of generators."""
    pa = NewtonPolyhedron(exps_a)
    pb = NewtonPolyhedron(exps_b)
    return all(a in pb for a in _antichain(pa.exps)) and all(b in pa for b in _antichain(pb.exps))


def _antichain(exps):
    return [a for a in exps if not any(b != a and all(x <= y for x, y in zip(b, a)) for b in exps)]
