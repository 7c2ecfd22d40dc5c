"""Jet schemes, truncated arcs and order functions.

A level-``n`` jet of affine ``N``-space is a tuple of polynomials
``sum_{j<=n} a_{i,j} t^j``; the coordinate ``a_{i,j}`` of variable ``x`` is
named ``x_j``.  Everything is truncated explicitly: an order that reaches
the available precision is reported as a lower bound, never as a value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PrecisionError, Refused
from .ideal import Ideal
from .matrix import jacobian_matrix
from .poly import PolyRing, TruncatedSeries, substitute_series
from .rng import XorShift


def jet_var(name, j):
    return f"{name}_{j}"


def jet_ring(ring, n, order="grevlex"):
    """Ring of level-``n`` jet coordinates, ordered level by level."""
    names = [jet_var(v, j) for j in range(n + 1) for v in ring.variables]
    return PolyRing(names, ring.field, order)


def generic_jet(ring, n, target=None):
    """The universal level-``n`` jet as truncated series over the jet ring."""
    J = target or jet_ring(ring, n)
    return [
        TruncatedSeries(J, [J.var(jet_var(v, j)) for j in range(n + 1)], n + 1)
        for v in ring.variables
    ]


def coefficient_equations(polys, series, upto):
    """Coefficients of ``t^0 .. t^(upto-1)`` of each ``f(series)``, level-major."""
    subs = [substitute_series(f, series, upto) for f in polys]
    return [s.coeffs[j] for j in range(upto) for s in subs]


@dataclass
class JetIdeal:
    base: object  # AffineSubscheme
    level: int
    ring: PolyRing
    ideal: Ideal

    def dimension(self):
        return self.ideal.dimension()

    def level_generators(self):
        return list(self.ideal.gens)


def jet_ideal(X, n):
    """Equations of ``J_n X``: the ``t^j`` coefficients, ``j <= n``, of every generator."""
    if n < 0:
        raise ValueError("jet level must be non-negative")
    J = jet_ring(X.ring, n)
    eqs = coefficient_equations(X.gens, generic_jet(X.ring, n, J), n + 1)
    return JetIdeal(X, n, J, Ideal([e for e in eqs if e], J))


# ---------------------------------------------------------------------------
# arcs
# ---------------------------------------------------------------------------


class TruncatedArc:
    """Point of ``A^N`` over ``k[t]/(t^P)`` with scalar coefficients."""

    def __init__(self, ring, coords):
        coords = [c if isinstance(c, TruncatedSeries) else TruncatedSeries(ring, list(c)) for c in coords]
        if len(coords) != ring.nvars:
            raise ValueError("one series per ambient coordinate")
        self.ring = ring
        self.coords = coords

    @classmethod
    def from_lists(cls, ring, lists, prec=None):
        prec = prec or max(len(c) for c in lists)
        return cls(ring, [TruncatedSeries(ring, [ring(v) for v in c], prec) for c in lists])

    @property
    def precision(self):
        return min(c.prec for c in self.coords)

    @property
    def base_point(self):
        return [c.coeffs[0].constant_value() if c.prec else None for c in self.coords]

    def truncate(self, n):
        """Level-``n`` jet (precision ``n + 1``)."""
        if n + 1 > self.precision:
            raise PrecisionError(f"arc known to t^{self.precision}, level {n} requested")
        if n < 0:
            raise ValueError("level must be non-negative")
        return TruncatedArc(self.ring, [c.truncate(n + 1) for c in self.coords])

    def evaluate(self, f, precision=None):
        return substitute_series(f, self.coords, precision or self.precision)

    def lies_on(self, polys):
        return all(self.evaluate(f).is_zero() for f in polys)

    def coefficient_lists(self):
        return [[c.coeffs[j].constant_value() for j in range(c.prec)] for c in self.coords]

    def __eq__(self, other):
        return isinstance(other, TruncatedArc) and self.coords == other.coords

    def __repr__(self):
        return "TruncatedArc(" + ", ".join(str(c) for c in self.coords) + ")"


def truncate_jet(arc, m, n):
    """``pi_{nm}``: level-``m`` jet to level ``n``."""
    if n > m:
        raise ValueError(f"cannot truncate from level {m} up to level {n}")
    if arc.precision < m + 1:
        raise PrecisionError(f"arc known to t^{arc.precision}, level {m} claimed")
    return arc.truncate(n)


@dataclass(frozen=True)
class OrderValue:
    """An order along an arc: exact, or only known to be at least ``value``."""

    value: Fraction
    exact: bool = True

    def __str__(self):
        return str(self.value) if self.exact else f"at-least({self.value})"

    def __add__(self, other):
        return OrderValue(self.value + other.value, self.exact and other.exact)

    def scaled(self, a):
        return OrderValue(self.value * Fraction(a), self.exact)

    def as_json(self):
        v = self.value
        s = str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
        return s if self.exact else f"at-least({s})"


def ideal_order(ideal, arc, precision=None):
    """``min`` over generators of the ``t``-adic order of ``g(arc)``."""
    P = precision or arc.precision
    best = None
    for g in ideal.gens:
        v = arc.evaluate(g, P).valuation()
        if v is not None and (best is None or v < best):
            best = v
    if best is None:
        return OrderValue(Fraction(P), False)
    return OrderValue(Fraction(best))


def arc_order(Q, arc, precision=None):
    """Order of a Q-ideal (or plain ideal) along a truncated arc."""
    if isinstance(Q, Ideal):
        return ideal_order(Q, arc, precision)
    total = OrderValue(Fraction(0))
    for I, a in Q.factors:
        if a:
            total = total + ideal_order(I, arc, precision).scaled(a)
    return total


# ---------------------------------------------------------------------------
# elementary divisors
# ---------------------------------------------------------------------------


def series_matrix(polys, arc, precision=None):
    """Jacobian matrix of ``polys`` evaluated along ``arc``."""
    P = precision or arc.precision
    return [[arc.evaluate(e, P) for e in row] for row in jacobian_matrix(polys)]


def smith_orders(S):
    """``t``-orders of the Smith normal form of a matrix of truncated series.

    Pivots on an entry of minimal order; raises :class:`PrecisionError` when
    the remaining block vanishes to its precision before all divisors are
    found.
    """
    S = [row[:] for row in S]
    nr = len(S)
    nc = len(S[0]) if S else 0
    out = []
    for k in range(min(nr, nc)):
        best = None
        for i in range(k, nr):
            for j in range(k, nc):
                v = S[i][j].valuation()
                if v is not None and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            raise PrecisionError(f"divisor {k + 1} is not determined at this precision")
        v, i, j = best
        S[k], S[i] = S[i], S[k]
        for row in S:
            row[k], row[j] = row[j], row[k]
        piv = S[k][k]
        unit_inv = piv.divide_by_t(v).inverse()
        for i in range(k + 1, nr):
            a = S[i][k]
            if a.is_zero():
                continue
            f = a.divide_by_t(v) * unit_inv
            S[i] = [x - f * y for x, y in zip(S[i], S[k])]
        for j in range(k + 1, nc):
            a = S[k][j]
            if a.is_zero():
                continue
            f = a.divide_by_t(v) * unit_inv
            for row in S:
                row[j] = row[j] - f * row[k]
        out.append(v)
        # entries below precision of the pivot row/column are gone; keep the tail block only
    return out


def elementary_divisors_along_arc(Y, arc, precision=None):
    """Elementary divisors ``e_1 <= ... <= e_c`` of the Jacobian of ``Y`` along ``arc``.

    ``Y`` must be cut out by exactly ``codim`` generators and contain the arc.
    Their sum is checked against the order of the ``c`` x ``c`` minors.
    """
    P = precision or arc.precision
    c = Y.codimension
    if len(Y.gens) != c:
        raise Refused("elementary divisors need a complete intersection presentation")
    if not all(arc.evaluate(g, P).is_zero() for g in Y.gens):
        raise Refused("arc does not lie on Y to the stated precision")
    es = sorted(smith_orders(series_matrix(Y.gens, arc, P)))
    from .singularity import jacobian_minors

    minors = Ideal(jacobian_minors(Y.gens, c).minors or [Y.ring.zero], Y.ring)
    e = ideal_order(minors, arc, P)
    if not e.exact or e.value != sum(es):
        raise PrecisionError(f"sum of divisors {sum(es)} does not match Jacobian order {e}")
    return es


# ---------------------------------------------------------------------------
# fibres of truncation maps
# ---------------------------------------------------------------------------


@dataclass
class FiberReport:
    expected: int
    measured: int
    affine: bool
    e: int
    unknowns: int
    equations: int

    @property
    def passed(self):
        return self.affine and self.measured == self.expected

    def as_dict(self):
        return {
            "expected": self.expected,
            "measured": self.measured,
            "affine_space": self.affine,
            "e": self.e,
            "pass": self.passed,
        }


def lifting_ideal(Y, arc, n, m):
    """Ideal of level-``m`` jets on ``Y`` over the level-``n`` truncation of ``arc``.

    Unknowns are the coordinates of levels ``n+1..m``, named ``x_j``.
    """
    R = Y.ring
    names = [jet_var(v, j) for j in range(m, n, -1) for v in R.variables]
    V = PolyRing(names, R.field, "lex")
    base = arc.truncate(n).coefficient_lists()
    coords = []
    for i, v in enumerate(R.variables):
        cs = [V.constant(Y.ring.field.to_fraction(base[i][j])) for j in range(n + 1)]
        cs += [V.var(jet_var(v, j)) for j in range(n + 1, m + 1)]
        coords.append(TruncatedSeries(V, cs, m + 1))
    eqs = coefficient_equations(Y.gens, coords, m + 1)
    return Ideal([e for e in eqs if e], V), len(names)


def fiber_dimension_check(Y, arc, n, m):
    """Dimension of the fibre of ``J_m Y -> J_n Y`` over ``arc`` against ``(m-n) d + e``.

    Refuses unless ``m >= n + e >= 2 e``.  The fibre is certified to be an
    affine space when every element of its reduced lex basis has a distinct
    variable as leading term.
    """
    if arc.precision < m + 1:
        raise PrecisionError("arc precision below the target level")
    e = sum(elementary_divisors_along_arc(Y, arc))
    if not (m >= n + e and n + e >= 2 * e):
        raise Refused(f"hypothesis m >= n + e >= 2e fails for (n, m, e) = ({n}, {m}, {e})")
    if m == n:
        # the fibre over a point of J_n Y is that point
        return FiberReport(e, 0, True, e, 0, 0)
    I, unknowns = lifting_ideal(Y, arc, n, m)
    gb = I.groebner()
    if len(gb) == 1 and gb[0].is_constant():
        return FiberReport((m - n) * Y.dimension + e, -1, False, e, unknowns, len(I.gens))
    leads = [g.LM for g in gb]
    linear = all(sum(l) == 1 for l in leads) and len(set(leads)) == len(leads)
    measured = unknowns - len(gb) if linear else I.dimension()
    return FiberReport((m - n) * Y.dimension + e, measured, linear, e, unknowns, len(I.gens))


# ---------------------------------------------------------------------------
# contact loci
# ---------------------------------------------------------------------------


@dataclass
class ContactReport:
    dim_at_least_p: int
    dim_at_least_next: int | None
    ambiguous: bool

    @property
    def dimension(self):
        return self.dim_at_least_p


def contact_ideal(I, p, n, Z=None, target=None):
    """Equations of ``{ord_I >= p}`` in ``J_n A`` with base point in ``V(Z)``."""
    ring = I.ring
    if p > n + 1:
        raise ValueError("contact order p must be at most n + 1")
    J = target or jet_ring(ring, n)
    jets = generic_jet(ring, n, J)
    eqs = coefficient_equations(I.gens, jets, p) if p > 0 else []
    if Z is not None:
        lvl0 = [J.var(jet_var(v, 0)) for v in ring.variables]
        eqs += [z.compose(lvl0) for z in Z.gens]
    return Ideal([e for e in eqs if e], J)


def contact_locus_dim(I, p, n, Z=None):
    """Dimension of ``{ord_I >= p}`` over ``V(Z)`` at level ``n`` (``-1`` when empty)."""
    if I.is_unit() and p >= 1:
        return ContactReport(-1, -1 if p + 1 <= n + 1 else None, False)
    d = contact_ideal(I, p, n, Z).dimension()
    nxt = None
    if p + 1 <= n + 1:
        nxt = contact_ideal(I, p + 1, n, Z).dimension()
    return ContactReport(d, nxt, nxt is not None and nxt >= d)


# ---------------------------------------------------------------------------
# images of truncation maps
# ---------------------------------------------------------------------------


@dataclass
class StabilizationReport:
    level: int
    observed: bool
    stable_from: int | None
    images: list = field(default_factory=list)  # serialized image ideals per m

    def as_dict(self):
        return {"level": self.level, "observed": self.observed, "stable_from": self.stable_from}


def truncation_image(Y, n, m):
    """Ideal of ``pi_{nm}(J_m Y)`` (closure) in the level-``n`` jet ring."""
    JI = jet_ideal(Y, m)
    high = [jet_var(v, j) for j in range(n + 1, m + 1) for v in Y.ring.variables]
    img = JI.ideal.eliminate(high)
    target = jet_ring(Y.ring, n)
    return Ideal([g.to_ring(target) for g in img.gens], target)


def image_stabilization_probe(Y, n, m_values):
    m_values = sorted(m_values)
    images = []
    stable_from = None
    prev = None
    for m in m_values:
        if m < n:
            continue
        img = truncation_image(Y, n, m)
        images.append((m, img))
        if prev is not None and prev.equals(img):
            stable_from = images[-2][0]
            break
        prev = img
    return StabilizationReport(n, stable_from is not None, stable_from, [(m, i.serialize()) for m, i in images])


# ---------------------------------------------------------------------------
# order additivity along slices
# ---------------------------------------------------------------------------


@dataclass
class AdditivityReport:
    status: str  # pass, fail or inconclusive
    lhs: OrderValue
    j_part: OrderValue
    d_part: OrderValue

    def as_dict(self):
        return {
            "status": self.status,
            "ord_jacobian_slice": self.lhs.as_json(),
            "ord_j": self.j_part.as_json(),
            "ord_divisor": self.d_part.as_json(),
        }


def order_additivity_check(X, Y, arc, r=1, precision=None, jrx=None):
    """Compare ``ord J'_Y`` with ``ord J_{r,X} / r + ord O_X(-r D^Y) / r`` along ``arc``."""
    from .singularity import jacobian_ideal, jrx_from_slice

    P = precision or arc.precision
    if not arc.lies_on(X.gens):
        raise Refused("arc does not lie on X to its precision")
    res = jrx or jrx_from_slice(X, Y, r)
    lhs = ideal_order(jacobian_ideal(Y.scheme), arc, P)
    j = ideal_order(res.ideal, arc, P).scaled(Fraction(1, r))
    d = ideal_order(res.hull, arc, P).scaled(Fraction(1, r))
    rhs = j + d
    if lhs.exact and rhs.exact:
        status = "pass" if lhs.value == rhs.value else "fail"
    elif lhs.exact and not rhs.exact and rhs.value > lhs.value:
        status = "fail"
    elif rhs.exact and not lhs.exact and lhs.value > rhs.value:
        status = "fail"
    else:
        status = "inconclusive"
    return AdditivityReport(status, lhs, j, d)


# ---------------------------------------------------------------------------
# arc samplers
# ---------------------------------------------------------------------------


def random_series(ring, rng, prec, valuation=1, bound=5, unit=True):
    """Seeded scalar series ``t^valuation * (nonzero + ...)``."""
    cs = [0] * prec
    for j in range(valuation, prec):
        cs[j] = rng.randint(-bound, bound)
    if valuation < prec and unit and cs[valuation] == 0:
        cs[valuation] = 1
    return TruncatedSeries(ring, [ring(c) for c in cs], prec)


def arc_from_parametrization(ring, images, params, prec):
    """Compose a polynomial parametrization (``images`` in a parameter ring) with parameter series."""
    return TruncatedArc(ring, [substitute_series(img, params, prec) for img in images])


@dataclass
class LciSample:
    name: str
    Y: object
    arc: TruncatedArc


def lci_corpus():
    """Small complete intersections with polynomial parametrizations of a branch."""
    from .singularity import AffineSubscheme

    def sub(vars_, gens):
        R = PolyRing(vars_)
        return AffineSubscheme(Ideal(gens, R)), R

    out = []
    Y, R = sub(["x", "y"], ["x^2 - y^2"])
    out.append(("node", Y, ["s", "s"], 1))
    Y, R = sub(["x", "y"], ["x^2 - y^3"])
    out.append(("cusp", Y, ["s^3", "s^2"], 1))
    Y, R = sub(["x", "y"], ["x*y"])
    out.append(("cross", Y, ["s", "0"], 1))
    Y, R = sub(["x", "y", "z"], ["x*y - z^2"])
    out.append(("a1_surface", Y, ["s^2", "u^2", "s*u"], 2))
    Y, R = sub(["x", "y", "z"], ["y^2 - x^3", "z - x*y"])
    out.append(("space_cusp", Y, ["s^2", "s^3", "s^5"], 1))
    Y, R = sub(["x", "y", "z", "w"], ["x*y", "z*w"])
    out.append(("double_cross", Y, ["s", "0", "u", "0"], 2))
    Y, R = sub(["x", "y", "z"], ["x", "y"])
    out.append(("line", Y, ["0", "0", "s"], 1))
    return out


def sample_lci_arc(entry, seed, prec, valuation=1):
    """Seeded arc on a corpus entry: parameters are random series of the given order."""
    name, Y, images, nparams = entry
    rng = XorShift(seed)
    pnames = ["s", "u"][:nparams]
    Pring = PolyRing(pnames, Y.ring.field)
    imgs = [Pring(e) for e in images]
    base = Y.ring
    params = [random_series(base, rng, prec, valuation=rng.randint(valuation, valuation + 1)) for _ in pnames]
    arc = arc_from_parametrization(base, imgs, params, prec)
    if not arc.lies_on(Y.gens):
        raise AssertionError(f"sampled arc left {name}")
    return arc


def node_arc(prec=8):
    R = PolyRing(["x", "y"])
    t = [R.zero, R.one] + [R.zero] * (prec - 2)
    return TruncatedArc(R, [TruncatedSeries(R, t, prec), TruncatedSeries(R, t, prec)])

