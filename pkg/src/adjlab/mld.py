"""Minimal log discrepancies of monomial pairs.

For a monomial boundary ``prod I_j^{a_j}`` on affine space (or on a cyclic
quotient chart) and a monomial valuation with weight vector ``w``, the log
discrepancy is

    f(w) = sum(w) - sum_j a_j * min_{u in G_j} <w, u>.

``f`` is convex and positively homogeneous, so its infimum over lattice
points of the open positive orthant is found by one rational LP with
auxiliary variables ``y_j <= <w, u>``, then branch and bound for
integrality.  A negative value on the simplex ``sum(w) = 1`` means the
infimum is ``-inf``; the minimizer is then perturbed into the interior and
scaled to a lattice point, giving an exactly checked negative direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BudgetExceeded, Refused
from .groebner import current_budget
from .ideal import Ideal, QIdeal
from .lp import linprog
from .newton import vertices

NEG_INF = "-inf"


def _frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def _fmt(x):
    x = _frac(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass
class MonomialPair:
    """Monomial boundary on ``A^N`` or on the quotient ``A^d / (1/m)(a_1..a_d)``.

    ``boundary`` is a list of ``(exponent list, coefficient)`` pairs; each
    exponent list generates one monomial ideal.
    """

    arity: int
    boundary: list = field(default_factory=list)
    modulus: int = 1
    weights: tuple | None = None

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError("arity must be positive")
        groups = []
        for exps, a in self.boundary:
            exps = [tuple(int(v) for v in u) for u in exps]
            a = _frac(a)
            if a < 0:
                raise ValueError("boundary exponents must be non-negative")
            if any(len(u) != self.arity for u in exps):
                raise ValueError("exponent length does not match arity")
            if not exps:
                raise ValueError("boundary factor has no generators (zero ideal)")
            if a:
                # for nonnegative weights the minimum over generators is attained at a vertex
                groups.append((vertices(exps), a))
        self.boundary = groups
        if self.modulus != 1:
            if self.weights is None or len(self.weights) != self.arity:
                raise ValueError("quotient data needs one weight per coordinate")
            if any(math.gcd(int(a), self.modulus) != 1 for a in self.weights):
                raise ValueError("quotient weights must be coprime to the modulus")
            self.weights = tuple(int(a) % self.modulus for a in self.weights)

    @classmethod
    def from_qideal(cls, Q, modulus=1, weights=None):
        """Pair on ``A^N`` from a Q-ideal whose factors are monomial ideals."""
        ring = Q.ring
        groups = []
        for I, a in Q.factors:
            if not I.is_monomial():
                raise Refused("boundary factor is not a monomial ideal")
            if I.is_zero():
                raise Refused("boundary factor is the zero ideal")
            groups.append((I.monomial_exponents(), a))
        return cls(ring.nvars, groups, modulus, weights)

    @property
    def is_quotient(self):
        return self.modulus != 1

    def in_lattice(self, w):
        """``w`` lies in ``Z^d + Z (a/m)``."""
        w = [_frac(x) for x in w]
        if not self.is_quotient:
            return all(x.denominator == 1 for x in w)
        for k in range(self.modulus):
            shift = [Fraction(k * a % self.modulus, self.modulus) for a in self.weights]
            if all((x - s).denominator == 1 for x, s in zip(w, shift)):
                return True
        return False

    def scaled(self, lam):
        return MonomialPair(self.arity, [(e, a * _frac(lam)) for e, a in self.boundary], self.modulus, self.weights)


def boundary_order(pair, w):
    return sum((a * min(sum(x * y for x, y in zip(w, u)) for u in exps) for exps, a in pair.boundary), Fraction(0))


def log_discrepancy_at_weight(w, pair):
    """``sum(w) - mult_w(boundary)`` for a strictly positive lattice weight."""
    w = [_frac(x) for x in w]
    if len(w) != pair.arity:
        raise ValueError("weight length does not match arity")
    if any(x <= 0 for x in w):
        raise ValueError("weights must be strictly positive")
    if not pair.in_lattice(w):
        raise ValueError("weight is not a point of the lattice")
    return sum(w, Fraction(0)) - boundary_order(pair, w)


@dataclass
class MldResult:
    value: Fraction | str
    witness: tuple | None = None
    direction: tuple | None = None
    certificate: dict = field(default_factory=dict)

    @property
    def is_neg_inf(self):
        return self.value == NEG_INF

    @property
    def log_canonical(self):
        return not self.is_neg_inf and self.value >= 0

    @property
    def klt(self):
        """False when ruled out; None when the sign of the mld alone cannot decide."""
        if self.is_neg_inf or self.value <= 0:
            return False
        return None

    def as_dict(self):
        return {
            "value": NEG_INF if self.is_neg_inf else _fmt(self.value),
            "witness": None if self.witness is None else [_fmt(x) for x in self.witness],
            "direction": None if self.direction is None else [_fmt(x) for x in self.direction],
            "log_canonical": self.log_canonical,
            "klt": self.klt,
            "certificate": self.certificate,
        }


# ---------------------------------------------------------------------------
# LP model
# ---------------------------------------------------------------------------


def _lp(pair, shift, lb, ub, simplex=False):
    """Minimize ``f(shift + z)`` over real ``z`` in the box (or over ``sum w = 1``)."""
    N = pair.arity
    k = len(pair.boundary)
    c = [Fraction(1)] * N + [-a for _, a in pair.boundary]
    A_ub, b_ub = [], []
    for j, (exps, _) in enumerate(pair.boundary):
        for u in exps:
            row = [Fraction(-x) for x in u] + [Fraction(0)] * k
            row[N + j] = Fraction(1)
            A_ub.append(row)
            b_ub.append(sum(s * x for s, x in zip(shift, u)))
    A_eq, b_eq = [], []
    if simplex:
        A_eq = [[Fraction(1)] * N + [Fraction(0)] * k]
        b_eq = [Fraction(1)]
    res = linprog(c, A_ub, b_ub, A_eq, b_eq, lb=list(lb) + [Fraction(0)] * k, ub=list(ub) + [None] * k)
    if res.status == "optimal":
        res.value += sum(shift, Fraction(0))
    return res


def _negative_direction(pair):
    """Strictly positive integer ``w`` with ``f(w) < 0``, or None if ``f >= 0`` on the orthant."""
    N = pair.arity
    zero = [Fraction(0)] * N
    res = _lp(pair, zero, zero, [None] * N, simplex=True)
    if res.status != "optimal" or res.value >= 0:
        return None, (res.value if res.status == "optimal" else None)
    w = res.x[:N]
    fw = res.value
    ones = [Fraction(1)] * N
    f1 = sum(ones) - boundary_order(pair, ones)
    # subadditivity: f(w + d*1) <= f(w) + d*f(1)
    delta = Fraction(1) if f1 <= 0 else min(Fraction(1), -fw / (2 * f1))
    v = [x + delta for x in w]
    den = 1
    for x in v:
        den = den * x.denominator // math.gcd(den, x.denominator)
    d = tuple(Fraction(int(x * den)) for x in v)
    if sum(d) - boundary_order(pair, d) >= 0:
        raise AssertionError("perturbed direction lost negativity")
    return d, res.value


def _branch_and_bound(pair, shift, lb0):
    N = pair.arity
    cap = current_budget().node_cap
    best = None
    best_w = None
    nodes = 0
    root = None
    stack = [(list(lb0), [None] * N)]
    while stack:
        lb, ub = stack.pop()
        nodes += 1
        if nodes > cap:
            raise BudgetExceeded(f"branch and bound exceeded {cap} nodes")
        res = _lp(pair, shift, lb, ub)
        if res.status == "infeasible":
            continue
        if res.status == "unbounded":
            raise AssertionError("bounded problem reported unbounded")
        if root is None:
            root = res.value
        if best is not None and res.value >= best:
            continue
        z = res.x[:N]
        frac_i = next((i for i, x in enumerate(z) if x.denominator != 1), None)
        if frac_i is None:
            w = tuple(s + x for s, x in zip(shift, z))
            val = sum(w) - boundary_order(pair, w)
            if best is None or val < best:
                best, best_w = val, w
            continue
        fl = math.floor(z[frac_i])
        up_lb = list(lb)
        up_lb[frac_i] = Fraction(fl + 1)
        dn_ub = list(ub)
        dn_ub[frac_i] = Fraction(fl)
        stack.append((up_lb, ub))
        stack.append((lb, dn_ub))
    return best, best_w, nodes, root


def _shifts(pair):
    """Residue representatives ``frac(k a / m)`` and the matching lower bounds on ``z``."""
    N = pair.arity
    if not pair.is_quotient:
        return [([Fraction(0)] * N, [Fraction(1)] * N)]
    out = []
    for k in range(pair.modulus):
        shift = [Fraction(k * a % pair.modulus, pair.modulus) for a in pair.weights]
        lb = [Fraction(0) if s > 0 else Fraction(1) for s in shift]
        out.append((shift, lb))
    return out


def _minimize(pair):
    direction, hom = _negative_direction(pair)
    if direction is not None:
        return MldResult(NEG_INF, direction=direction, certificate={"homogeneous_minimum": _fmt(hom)})
    best = None
    best_w = None
    nodes = 0
    roots = []
    for shift, lb in _shifts(pair):
        val, w, n, root = _branch_and_bound(pair, shift, lb)
        nodes += n
        roots.append(root)
        if val is not None and (best is None or val < best):
            best, best_w = val, w
    if pair.arity == 1 and best < 0:
        return MldResult(NEG_INF, direction=best_w, certificate={"dimension_one_convention": True})
    cert = {
        "homogeneous_minimum": _fmt(hom),
        "lp_lower_bound": _fmt(min(r for r in roots if r is not None)),
        "nodes": nodes,
    }
    return MldResult(best, best_w, None, cert)


def mld_monomial(pair):
    """Minimal log discrepancy at the origin of a monomial pair on ``A^N``."""
    if pair.is_quotient:
        raise ValueError("use mld_toric_quotient for quotient charts")
    return _minimize(pair)


def mld_toric_quotient(pair):
    """Minimal log discrepancy at the fixed point of a cyclic quotient chart."""
    return _minimize(pair)


def brute_force_mld(pair, box=8):
    """Exhaustive minimum of ``f`` over lattice points with coordinates in ``(0, box]``."""
    import itertools

    best = None
    best_w = None
    steps = [Fraction(1)] if not pair.is_quotient else [Fraction(1, pair.modulus)]
    step = steps[0]
    grid = [step * i for i in range(1, int(box / step) + 1)]
    for w in itertools.product(grid, repeat=pair.arity):
        if pair.is_quotient and not pair.in_lattice(w):
            continue
        v = sum(w) - boundary_order(pair, w)
        if best is None or v < best:
            best, best_w = v, w
    return best, best_w


def verify_direction(pair, direction, scale=1000):
    """``f`` is negative on the direction and decreases linearly along it."""
    d = [_frac(x) for x in direction]
    if any(x <= 0 for x in d):
        return False
    f1 = sum(d) - boundary_order(pair, d)
    big = [x * scale for x in d]
    return f1 < 0 and sum(big) - boundary_order(pair, big) == scale * f1


# ---------------------------------------------------------------------------
# jet-level estimator
# ---------------------------------------------------------------------------


@dataclass
class JetEstimate:
    best_upper: Fraction | None
    witness: tuple | None  # (n, p, dim)
    table: list
    oracle: object = None

    def certifies_below(self, a):
        """``mld < a`` is certified."""
        return self.best_upper is not None and self.best_upper < _frac(a)

    def consistent_with(self, oracle_value):
        if oracle_value == NEG_INF or self.best_upper is None:
            return True
        return self.best_upper >= oracle_value

    def as_dict(self):
        return {
            "best_upper_bound": None if self.best_upper is None else _fmt(self.best_upper),
            "witness": None if self.witness is None else list(self.witness),
            "levels": len({row[0] for row in self.table}),
        }


def mld_jet_estimate(Q, Z, n_max, p_max=None):
    """Upper bounds on ``mld_Z(A, Q)`` from contact loci at finite jet level.

    For a level-``n`` contact locus ``{ord_I >= p}`` over ``V(Z)`` of
    dimension ``dim``, the witness quantity ``W = dim - (n+1) N + p / r``
    (``I`` the representative at denominator ``r``) certifies
    ``mld <= -W``.  Only upper bounds are ever claimed.
    """
    from .jets import contact_locus_dim

    ring = Z.ring
    N = ring.nvars
    if Q is None or not Q.factors:
        I, r = Ideal([ring.one], ring), 1
    else:
        r = Q.denominator()
        I = Q.representative(r, ring)
    table = []
    best = None
    witness = None
    for n in range(n_max + 1):
        top = n + 1 if p_max is None else min(n + 1, p_max)
        for p in range(0, top + 1):
            if p and I.is_unit():
                break
            rep = contact_locus_dim(I, p, n, Z) if p else None
            dim = rep.dimension if rep else _center_dim(Z, n)
            if dim < 0:
                break
            W = Fraction(dim - (n + 1) * N) + Fraction(p, r)
            table.append((n, p, dim, _fmt(-W)))
            if best is None or -W < best:
                best, witness = -W, (n, p, dim)
    return JetEstimate(best, witness, table)


def _center_dim(Z, n):
    from .jets import contact_ideal

    return contact_ideal(Ideal([Z.ring.one], Z.ring), 0, n, Z).dimension()


# ---------------------------------------------------------------------------
# inversion check on linear subspaces
# ---------------------------------------------------------------------------


@dataclass
class InversionReport:
    left: object
    right: object
    passed: bool
    note: str = ""

    def as_dict(self):
        f = lambda v: NEG_INF if v == NEG_INF else _fmt(v)  # noqa: E731
        return {"left": f(self.left), "right": f(self.right), "pass": self.passed, "note": self.note}


def linear_change(forms):
    """Coordinates in which independent linear forms become the first variables.

    Returns an invertible rational matrix ``T`` (rows = new coordinates as
    forms in the old ones) whose first rows are ``forms``.
    """
    ring = forms[0].ring
    N = ring.nvars
    rows = []
    for f in forms:
        if f.total_degree() != 1 or f.constant_value():
            raise Refused("defining equations are not homogeneous linear forms")
        row = [Fraction(0)] * N
        for m, c in f.terms.items():
            row[m.index(1)] = ring.field.to_fraction(c)
        rows.append(row)
    basis = [list(r) for r in rows]
    for i in range(N):
        e = [Fraction(int(i == j)) for j in range(N)]
        if _rank(basis + [e]) > _rank(basis):
            basis.append(e)
    if _rank(rows) != len(rows):
        raise Refused("linear forms are dependent")
    return basis


def _rank(rows):
    M = [list(r) for r in rows]
    rank = 0
    ncols = len(M[0]) if M else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][col]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][col]:
                f = M[i][col] / M[rank][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def inversion_check(X, r=1):
    """Compare ``mld_0(X, D_X)`` with ``mld_0(A, I_X^c)`` for a linear subspace ``X``.

    ``X`` must be cut out by independent linear forms, so after a linear
    change of coordinates it is a coordinate subspace.  The left side uses
    the defect computed by the singularity module, which must be trivial.
    """
    from .singularity import AffineSubscheme, jacobian_ideal, weak_defect_colon

    if not isinstance(X, AffineSubscheme):
        raise TypeError("expected an AffineSubscheme")
    d = X.dimension
    c = X.codimension
    if d == 0:
        raise Refused("the center must be a point of a positive-dimensional X")
    forms = list(X.gens)
    if len(forms) != c:
        raise Refused("X must be cut out by exactly codim linear forms")
    linear_change(forms)  # validates linearity and independence
    Jp = jacobian_ideal(X)
    defect = weak_defect_colon(X, r, Jp, jacobian=Jp)
    if not defect.is_unit():
        raise Refused("defect ideal is not trivial; X is not monomially accessible")
    left = mld_monomial(MonomialPair(d, []))
    # in the new coordinates I_X = (u_1..u_c)
    gens = [tuple(int(i == j) for j in range(d + c)) for i in range(c)]
    right = mld_monomial(MonomialPair(d + c, [(gens, c)]))
    lv, rv = left.value, right.value
    return InversionReport(lv, rv, lv == rv, note=f"d={d}, c={c}")


def qideal_pair(Q):
    """Convenience wrapper: monomial pair from a Q-ideal."""
    if not isinstance(Q, QIdeal):
        raise TypeError("expected a QIdeal")
    return MonomialPair.from_qideal(Q)
