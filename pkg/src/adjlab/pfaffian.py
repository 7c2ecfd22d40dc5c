"""Alternating matrices, pfaffians and sub-pfaffians.

Signs follow the recursive first-row expansion

    pf(M) = sum_{j >= 2} (-1)^j m_{1j} pf(M with rows/cols 1, j removed)

with 1-based indices.  The incidental (adjugate-like) matrix built from the
order-two sub-pfaffians satisfies ``Q M = M Q = pf(M) Id``; that identity is
checked every time :func:`incidental_matrix` runs, so a sign slip surfaces as
an immediate :class:`VerificationError`.
"""

from __future__ import annotations

import itertools

from .errors import VerificationError
from .matrix import det, matmul  # noqa: F401  (det re-exported)
from .poly import PolyRing


class AlternatingMatrix:
    """Square matrix with ``M[j][i] = -M[i][j]`` and a zero diagonal."""

    def __init__(self, ring, upper, n=None):
        """``upper`` maps 0-based pairs ``(i, j)`` with ``i < j`` to entries, or is a full square list."""
        self.ring = ring
        if isinstance(upper, dict):
            if n is None:
                n = 1 + max((max(k) for k in upper), default=0)
            self.n = n
            self._up = {(i, j): ring(upper.get((i, j), 0)) for i in range(n) for j in range(i + 1, n)}
        else:
            rows = [[ring(v) for v in row] for row in upper]
            n = len(rows)
            if any(len(r) != n for r in rows):
                raise ValueError("matrix must be square")
            for i in range(n):
                if rows[i][i]:
                    raise ValueError("alternating matrix needs a zero diagonal")
                for j in range(i + 1, n):
                    if rows[j][i] != -rows[i][j]:
                        raise ValueError(f"entry ({j},{i}) is not minus entry ({i},{j})")
            self.n = n
            self._up = {(i, j): rows[i][j] for i in range(n) for j in range(i + 1, n)}

    @classmethod
    def generic(cls, n, field=0, prefix="m"):
        """Generic alternating matrix with one variable ``m{i}{j}`` per upper entry (1-based names)."""
        names = [f"{prefix}{i + 1}{j + 1}" if n < 10 else f"{prefix}{i + 1}_{j + 1}"
                 for i in range(n) for j in range(i + 1, n)]
        ring = PolyRing(names, field)
        up = {}
        k = 0
        for i in range(n):
            for j in range(i + 1, n):
                up[(i, j)] = ring.var(names[k])
                k += 1
        return cls(ring, up, n)

    def __getitem__(self, ij):
        i, j = ij
        if i == j:
            return self.ring.zero
        if i < j:
            return self._up[(i, j)]
        return -self._up[(j, i)]

    def rows(self):
        return [[self[i, j] for j in range(self.n)] for i in range(self.n)]

    def delete(self, indices):
        """Principal submatrix with the given (0-based) rows and columns removed."""
        keep = [i for i in range(self.n) if i not in set(indices)]
        up = {(a, b): self[keep[a], keep[b]] for a in range(len(keep)) for b in range(a + 1, len(keep))}
        return AlternatingMatrix(self.ring, up, len(keep))

    def substitute(self, point):
        """Entry-wise evaluation at a point (dict name -> value); stays in the same ring."""
        up = {k: self.ring.constant(v.evaluate(point)) for k, v in self._up.items()}
        return AlternatingMatrix(self.ring, up, self.n)

    def map(self, fn):
        up = {k: fn(v) for k, v in self._up.items()}
        return AlternatingMatrix(self.ring, up, self.n)


def pfaffian(M):
    """Pfaffian by first-row expansion; zero for odd size."""
    entries = {k: v for k, v in M._up.items()}
    return _pf(M.ring, entries, tuple(range(M.n)))


def _pf(ring, entries, idx):
    # memoized over index tuples within one call tree
    cache = {}

    def rec(ix):
        if len(ix) % 2:
            return ring.zero
        if not ix:
            return ring.one
        if ix in cache:
            return cache[ix]
        first = ix[0]
        total = ring.zero
        for pos in range(1, len(ix)):
            e = entries[(first, ix[pos])]
            if not e:
                continue
            rest = ix[1:pos] + ix[pos + 1:]
            # 1-based column index within the submatrix is pos + 1
            term = e * rec(rest)
            total = total + term if pos % 2 == 1 else total - term
        cache[ix] = total
        return total

    return rec(idx)


def sub_pfaffian(M, indices):
    """``pf`` of ``M`` with the (1-based) rows/columns in ``indices`` deleted."""
    zero_based = sorted(i - 1 for i in indices)
    keep = tuple(i for i in range(M.n) if i not in set(zero_based))
    return _pf(M.ring, M._up, keep)


def sub_pfaffians(M, order):
    """All sub-pfaffians from deleting ``order`` rows/columns, keyed by the 1-based index tuple."""
    if order < 0 or order > M.n or (M.n - order) % 2:
        raise ValueError(f"size {M.n} minus {order} deleted indices must be even and non-negative")
    return {
        ix: sub_pfaffian(M, ix)
        for ix in itertools.combinations(range(1, M.n + 1), order)
    }


def incidental_matrix(M, verify=True):
    """``Q`` with ``q_ij = (-1)^(i+j) pf(M_ij)`` above the diagonal and ``Q M = pf(M) Id``."""
    if M.n % 2:
        raise ValueError("incidental matrix needs even size")
    up = {}
    for i in range(M.n):
        for j in range(i + 1, M.n):
            p = sub_pfaffian(M, (i + 1, j + 1))
            up[(i, j)] = p if (i + j) % 2 == 0 else -p
    Q = AlternatingMatrix(M.ring, up, M.n)
    if verify:
        p = pfaffian(M)
        for left, right in ((Q, M), (M, Q)):
            prod = matmul(left.rows(), right.rows())
            for i in range(M.n):
                for j in range(M.n):
                    want = p if i == j else M.ring.zero
                    if prod[i][j] != want:
                        raise VerificationError(
                            f"incidental identity fails at ({i + 1},{j + 1}): sign convention bug"
                        )
    return Q
