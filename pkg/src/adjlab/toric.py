"""Veronese cones handled through their monomial parametrization.

The cone over the degree-``k`` Veronese embedding of ``P^{n-1}`` is the
quotient ``A^n / mu_k`` acting diagonally.  Its coordinate ring is the span of
monomials in ``x_1..x_n`` whose degree is divisible by ``k``; the ambient
coordinates ``z_alpha`` map to ``x^alpha``.

Every Jacobian minor of the binomial equations is multihomogeneous, so it
pulls back to a single monomial.  That turns the singularity computations of
this cone into exact lattice-point bookkeeping.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import VerificationError
from .ideal import Ideal, SandwichCertificate
from .matrix import det
from .newton import closure_exponents, same_closure
from .poly import PolyRing
from .rng import XorShift

DEFAULT_PRIME = 32003


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def monomials_of_degree(deg, nvars):
    return list(_compositions(deg, nvars))


class VeroneseCone:
    """Cone over the degree-``k`` Veronese of ``P^{n-1}`` (``k = n = 3`` is the ``1/3(1,1,1)`` point)."""

    def __init__(self, nvars=3, degree=3, field=DEFAULT_PRIME):
        self.n = nvars
        self.k = degree
        self.xring = PolyRing([f"x{i + 1}" for i in range(nvars)], field)
        self.alphas = monomials_of_degree(degree, nvars)
        self.zring = PolyRing(["z" + "".join(map(str, a)) for a in self.alphas], field)
        self.index = {a: i for i, a in enumerate(self.alphas)}
        self.relations = self._binomials()

    # structure -----------------------------------------------------------
    def _binomials(self):
        """Binomial quadrics ``z_a z_b - z_c z_d`` with ``a + b = c + d`` (spanning-tree choice)."""
        by_sum = {}
        N = len(self.alphas)
        for i in range(N):
            for j in range(i, N):
                s = tuple(x + y for x, y in zip(self.alphas[i], self.alphas[j]))
                by_sum.setdefault(s, []).append((i, j))
        rel = []
        for s in sorted(by_sum, reverse=True):
            pairs = by_sum[s]
            for other in pairs[1:]:
                rel.append((pairs[0], other))
        return rel

    @property
    def ambient_dim(self):
        return len(self.alphas)

    @property
    def codimension(self):
        return len(self.alphas) - self.n

    def ideal(self):
        R = self.zring
        z = R.gens
        gens = [z[a] * z[b] - z[c] * z[d] for (a, b), (c, d) in self.relations]
        return Ideal(gens, R)

    def in_lattice(self, exp):
        """Exponent of an invariant monomial (a regular function on the cone)."""
        return sum(exp) % self.k == 0

    def xmono(self, exp, c=1):
        return self.xring.monomial(exp, c)

    def transport(self, f):
        """Pull a ``z``-polynomial back to ``k[x]`` along ``z_alpha -> x^alpha``."""
        return f.compose([self.xmono(a) for a in self.alphas])

    def jacobian_x(self):
        """Jacobian matrix of the binomials, entries pulled back to ``k[x]`` (one monomial each)."""
        R = self.xring
        rows = []
        for (a, b), (c, d) in self.relations:
            row = [R.zero] * len(self.alphas)
            row[a] = row[a] + self.xmono(self.alphas[b])
            row[b] = row[b] + self.xmono(self.alphas[a])
            row[c] = row[c] - self.xmono(self.alphas[d])
            row[d] = row[d] - self.xmono(self.alphas[c])
            rows.append(row)
        return rows

    def parametrization_jacobian(self):
        """``d(x^alpha)/dx_i`` as a ``len(alphas)`` x ``n`` matrix."""
        return [[self.xmono(a).derivative(i) for i in range(self.n)] for a in self.alphas]

    def power_of_max_ideal(self, e):
        """Exponents generating ``m^e`` on the cone: invariant monomials of degree ``k e``."""
        return monomials_of_degree(self.k * e, self.n)


# ---------------------------------------------------------------------------
# the Jacobian ideal
# ---------------------------------------------------------------------------


def _numeric(M, point, field):
    return [[field(e.evaluate(point)) for e in row] for row in M]


def _pivot_indices(A, size, p):
    """Rows and columns of a nonsingular ``size`` x ``size`` submatrix, by elimination mod ``p``."""
    A = [[int(v) % p for v in row] for row in A]
    nr, nc = len(A), len(A[0])
    rows_left = list(range(nr))
    picked_r, picked_c = [], []
    work = [row[:] for row in A]
    for col in range(nc):
        piv = next((r for r in rows_left if work[r][col]), None)
        if piv is None:
            continue
        picked_r.append(piv)
        picked_c.append(col)
        rows_left.remove(piv)
        inv = pow(work[piv][col], -1, p)
        for r in rows_left:
            if work[r][col]:
                f = work[r][col] * inv % p
                work[r] = [(x - f * y) % p for x, y in zip(work[r], work[piv])]
        if len(picked_r) == size:
            return sorted(picked_r), sorted(picked_c)
    raise VerificationError("matrix has rank below the requested size at this point")


def pivot_minor(cone, i):
    """A Jacobian minor equal to a nonzero multiple of ``x_i^(k c)``.

    The minor is chosen nonsingular at the point ``x = e_i``; being a single
    monomial, it must then be a pure power of ``x_i``.
    """
    p = cone.xring.field.p
    if not p:
        raise ValueError("pivot selection needs a prime field")
    M = cone.jacobian_x()
    point = [1 if j == i else 0 for j in range(cone.n)]
    rows, cols = _pivot_indices(_numeric(M, point, cone.xring.field), cone.codimension, p)
    m = det([[M[r][c] for c in cols] for r in rows])
    want = tuple(cone.k * cone.codimension if j == i else 0 for j in range(cone.n))
    if not m.is_monomial() or m.LM != want:
        raise VerificationError(f"pivot minor is {m}, expected a multiple of x{i + 1}^{want[i]}")
    return rows, cols, m


def jacobian_support(cone, seed=0, stable_rounds=2, max_rounds=12):
    """Exponents of nonzero maximal-order Jacobian minors, found via ``det(A M B)``.

    By Cauchy-Binet the coefficient of ``x^beta`` in ``det(A M B)`` is a
    combination of the minors with exponent ``beta``, so every exponent seen
    is a genuine minor exponent.  Random ``A``, ``B`` are drawn until
    ``stable_rounds`` consecutive draws add nothing.
    """
    R = cone.xring
    M = cone.jacobian_x()
    c = cone.codimension
    rng = XorShift(seed)
    found = set()
    quiet = 0
    rounds = 0
    while quiet < stable_rounds and rounds < max_rounds:
        rounds += 1
        A = [[rng.coefficient() for _ in M] for _ in range(c)]
        B = [[rng.coefficient() for _ in range(c)] for _ in cone.alphas]
        AM = _int_times_poly(A, M, R)
        AMB = [[_dot([Brow[col] for Brow in B], row, R) for col in range(c)] for row in AM]
        d = det(AMB)
        new = set(d.terms) - found
        if new:
            found |= new
            quiet = 0
        else:
            quiet += 1
    return sorted(found, reverse=True), rounds, quiet >= stable_rounds


def _dot(coeffs, polys, R):
    total = R.zero
    for a, f in zip(coeffs, polys):
        if a and f:
            total = total + f.scale(a)
    return total


def _int_times_poly(A, M, R):
    """Integer matrix times polynomial matrix."""
    cols = len(M[0])
    return [[_dot(Arow, [M[r][j] for r in range(len(M))], R) for j in range(cols)] for Arow in A]


def jacobian_sandwich(cone, seed=0):
    """Certificate for ``(x_i^(kc)) <= J'_X <= m^c`` on the cone (transported to ``k[x]``)."""
    R = cone.xring
    c = cone.codimension
    support, rounds, stable = jacobian_support(cone, seed)
    lower_gens = [pivot_minor(cone, i)[2] for i in range(cone.n)]
    J = Ideal([cone.xmono(b) for b in support] + lower_gens, R)
    upper = Ideal([cone.xmono(e) for e in cone.power_of_max_ideal(c)], R)
    lower = Ideal(lower_gens, R)
    # every minor has x-degree c*(2k) - c*k = c*k, so it lies in the upper bound
    lower_ok = all(J.contains(g) for g in lower.gens)
    upper_ok = all(sum(b) == cone.k * c for b in support) and all(upper.contains(g) for g in J.gens)
    closures = same_closure([g.LM for g in lower.gens], cone.power_of_max_ideal(c))
    cert = SandwichCertificate(lower_ok, upper_ok, closures)
    return cert, support, stable


# ---------------------------------------------------------------------------
# J_{1,X}, conductors of slices, and the defect
# ---------------------------------------------------------------------------


def jacobian_of_parametrization(cone):
    """Exponents of the nonzero ``n`` x ``n`` minors of ``d(x^alpha)/dx``.

    For the quotient ``A^n -> X`` these generate ``J_{1,X}`` pulled back.
    """
    P = cone.parametrization_jacobian()
    out = {}
    for rows in itertools.combinations(range(len(cone.alphas)), cone.n):
        m = det([P[r] for r in rows])
        if m:
            if not m.is_monomial():
                raise VerificationError("parametrization minor is not a monomial")
            out[rows] = m
    return out


@dataclass
class SliceConductor:
    generator: object  # g_Y in k[x]
    checked_subsets: int
    hat_exponents: list  # exponents of Delta_K / g_Y


def slice_conductor(cone, seed, subsets=3, all_subsets=False):
    """Generator ``g_Y`` of the conductor of a general slice, pulled back to ``k[x]``.

    For ``Y`` cut out by ``A F`` the rows of ``A M`` annihilate the columns of
    the parametrization Jacobian, so every maximal minor ``Delta_K`` of ``A M``
    equals ``+- g_Y`` times the complementary minor of the parametrization.
    ``g_Y`` is read off one ``K`` and confirmed on further ones.
    """
    R = cone.xring
    M = cone.jacobian_x()
    c = cone.codimension
    N = len(cone.alphas)
    rng = XorShift(seed)
    A = [[rng.coefficient() for _ in M] for _ in range(c)]
    AM = _int_times_poly(A, M, R)
    P = cone.parametrization_jacobian()
    ks = list(itertools.combinations(range(N), c))
    order = rng.shuffle(ks) if not all_subsets else ks
    g = None
    checked = 0
    hats = set()
    for K in order:
        comp = [j for j in range(N) if j not in K]
        jac = det([P[j] for j in comp])
        if not jac:
            if all_subsets and det([[AM[i][j] for j in K] for i in range(c)]):
                raise VerificationError("slice minor is nonzero where the parametrization minor vanishes")
            continue
        delta = det([[AM[i][j] for j in K] for i in range(c)])
        q, r = _div(delta, jac)
        if r:
            raise VerificationError("slice minor is not divisible by the complementary parametrization minor")
        if g is None:
            g = q
        elif q != g and q != -g:
            raise VerificationError("conductor generator depends on the chosen minor")
        hats.add(jac.LM)
        checked += 1
        if not all_subsets and checked >= subsets:
            break
    if g is None:
        raise VerificationError("no usable minor for this slice")
    return SliceConductor(g, checked, sorted(hats, reverse=True))


def _div(f, g):
    from .poly import divide

    q, r = divide(f, [g])
    return q[0], r


def monomial_colon(num_exps, den_exps, lattice, max_degree):
    """Lattice exponents ``u`` (degree ``<= max_degree``) with ``u + v`` in the numerator ideal for all ``v``."""
    n = len(num_exps[0])
    out = []
    for deg in range(max_degree + 1):
        for u in monomials_of_degree(deg, n):
            if not lattice(u):
                continue
            if all(any(all(a + b >= c for a, b, c in zip(u, v, w)) for w in num_exps) for v in den_exps):
                out.append(u)
    return [u for u in out if not any(v != u and all(a <= b for a, b in zip(v, u)) and lattice(tuple(b - a for a, b in zip(v, u))) for v in out)]


@dataclass
class ToricReport:
    sandwich: SandwichCertificate
    support_size: int
    support_stable: bool
    j1_exponents: list
    j1_closure_is_m2: bool
    hat_exponents: list
    hat_closure_is_m2: bool
    defect_exponents: list
    defect_closure_is_m5: bool
    conductor_degree: int

    def as_dict(self):
        return {
            "sandwich": self.sandwich.as_dict(),
            "jacobian_support_size": self.support_size,
            "jacobian_support_stable": self.support_stable,
            "j1_generators": len(self.j1_exponents),
            "j1_closure_is_m2": self.j1_closure_is_m2,
            "hat_closure_is_m2": self.hat_closure_is_m2,
            "defect_generators": len(self.defect_exponents),
            "defect_closure_is_m5": self.defect_closure_is_m5,
            "conductor_degree": self.conductor_degree,
        }


def quotient_singularity_report(cone=None, seed=0):
    """Run the full toric-side computation for the ``1/3(1,1,1)`` cone."""
    cone = cone or VeroneseCone()
    cert, support, stable = jacobian_sandwich(cone, seed)
    j1 = sorted({m.LM for m in jacobian_of_parametrization(cone).values()}, reverse=True)
    m2 = cone.power_of_max_ideal(2)
    cond = slice_conductor(cone, seed, all_subsets=True)
    hat = cond.hat_exponents
    # lower containment gives every monomial of degree >= k*c, so larger degrees add nothing
    top = cone.k * cone.codimension
    jp = sorted(set(support) | {tuple(top if j == i else 0 for j in range(cone.n)) for i in range(cone.n)})
    defect = monomial_colon(jp, j1, cone.in_lattice, top)
    m5 = cone.power_of_max_ideal(max(cone.codimension - 2, 0))
    return ToricReport(
        sandwich=cert,
        support_size=len(support),
        support_stable=stable,
        j1_exponents=j1,
        j1_closure_is_m2=same_closure(j1, m2),
        hat_exponents=hat,
        hat_closure_is_m2=same_closure(hat, m2),
        defect_exponents=defect,
        defect_closure_is_m5=same_closure(defect, m5),
        conductor_degree=cond.generator.total_degree(),
    )


def defect_sum_span(cone, seeds):
    """Rank of the span of conductor generators over slices, against all forms of that degree."""
    gens = [slice_conductor(cone, s, subsets=1).generator for s in seeds]
    deg = gens[0].total_degree()
    basis = monomials_of_degree(deg, cone.n)
    p = cone.xring.field.p
    rows = [[int(g.terms.get(b, 0)) % p for b in basis] for g in gens]
    return _rank_mod_p(rows, p), len(basis)


def _rank_mod_p(rows, p):
    rows = [r[:] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col] * inv % p
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def closure_in_lattice(cone, exps):
    return closure_exponents(exps, lattice=cone.in_lattice, pad=cone.k)
