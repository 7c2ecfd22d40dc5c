"""Ideals with cached Groebner bases, Q-ideals and monomial valuations."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

from .errors import RingMismatch
from .groebner import buchberger, check_time, normal_form
from .newton import NewtonPolyhedron, closure_exponents, same_closure
from .poly import Polynomial, PolyRing

INFINITY = math.inf


class Ideal:
    """Finitely generated ideal of a :class:`PolyRing`.

    Generators are kept as given (zeros dropped); reduced Groebner bases are
    computed lazily and cached per monomial order.
    """

    def __init__(self, gens, ring=None):
        gens = list(gens)
        if ring is None:
            if not gens or not isinstance(gens[0], Polynomial):
                raise ValueError("ring required for an empty or string generator list")
            ring = gens[0].ring
        conv = []
        for g in gens:
            g = ring(g)
            if g.ring != ring:
                raise RingMismatch("generator outside the ideal's ring")
            if g:
                conv.append(g)
        self.ring = ring
        self.gens = tuple(conv)
        self._gb = {}

    # Groebner data --------------------------------------------------------
    def groebner(self, order=None):
        order = order or self.ring.order
        if order not in self._gb:
            if order == self.ring.order:
                self._gb[order] = tuple(buchberger(self.gens, self.ring))
            else:
                r2 = self.ring.with_order(order)
                gb = buchberger([g.to_ring(r2) for g in self.gens], r2)
                self._gb[order] = tuple(gb)
        return list(self._gb[order])

    def reduce(self, f):
        f = self.ring(f)
        return normal_form(f, self.groebner())

    def contains(self, f):
        return not self.reduce(f)

    __contains__ = contains

    def is_subset(self, other):
        """``self`` is contained in ``other``."""
        self._same_ring(other)
        return all(other.contains(g) for g in self.gens)

    def equals(self, other):
        self._same_ring(other)
        return self.is_subset(other) and other.is_subset(self)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.equals(other)

    def __hash__(self):
        return hash(tuple(self.serialize()))

    def is_unit(self):
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant()

    def is_zero(self):
        return not self.gens

    def is_monomial(self):
        if all(g.is_monomial() for g in self.gens):
            return True
        return all(g.is_monomial() for g in self.groebner())

    def monomial_exponents(self):
        """Exponents of monomial generators (minimalized)."""
        gens = self.gens if all(g.is_monomial() for g in self.gens) else self.groebner()
        if not all(g.is_monomial() for g in gens):
            raise ValueError("ideal is not monomial")
        exps = sorted({g.LM for g in gens})
        return [a for a in exps if not any(b != a and all(x <= y for x, y in zip(b, a)) for b in exps)]

    def _same_ring(self, other):
        if other.ring != self.ring:
            raise RingMismatch("ideals live in different rings")

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        self._same_ring(other)
        return Ideal(self.gens + other.gens, self.ring)

    def __mul__(self, other):
        self._same_ring(other)
        return Ideal([f * g for f in self.gens for g in other.gens], self.ring)

    def __pow__(self, k):
        if k == 0:
            return Ideal([self.ring.one], self.ring)
        out = self
        for _ in range(k - 1):
            out = Ideal(_minimal_products(out.gens, self.gens), self.ring)
        return out

    def intersection(self, other):
        """``I cap J`` via ``t*I + (1 - t)*J`` and elimination of ``t``."""
        self._same_ring(other)
        if self.is_zero() or other.is_zero():
            return Ideal([], self.ring)
        if self.is_unit():
            return other
        if other.is_unit():
            return self
        R = self.ring
        t = R.fresh_name("t")
        big = PolyRing((t,) + R.variables, R.field, ("block", 1))
        tt = big.var(t)
        gens = [tt * g.to_ring(big) for g in self.gens]
        gens += [(big.one - tt) * g.to_ring(big) for g in other.gens]
        gb = buchberger(gens, big)
        keep = [g for g in gb if all(m[0] == 0 for m in g.terms)]
        return Ideal([g.to_ring(R) for g in keep], R)

    def quotient(self, other):
        """Colon ideal ``(I : J) = {f : f J in I}``."""
        if isinstance(other, Polynomial):
            return self._quotient_poly(other)
        self._same_ring(other)
        parts = [self._quotient_poly(g) for g in other.gens if not self.contains(g)]
        if not parts:
            return Ideal([self.ring.one], self.ring)
        return reduce(lambda a, b: a.intersection(b), parts)

    def _quotient_poly(self, f):
        check_time()
        if not f or self.contains(f):
            return Ideal([self.ring.one], self.ring)
        if f.is_constant():
            return self
        inter = self.intersection(Ideal([f], self.ring))
        return Ideal([g.exact_divide(f) for g in inter.gens], self.ring)

    def saturation(self, other, max_steps=64):
        """``(I : J^infinity)`` and the first exponent at which the chain stabilizes."""
        cur = self
        for k in range(max_steps):
            nxt = cur.quotient(other)
            if nxt.equals(cur):
                return cur, k
            cur = nxt
        from .errors import BudgetExceeded

        raise BudgetExceeded(f"saturation did not stabilize in {max_steps} steps")

    def eliminate(self, names):
        """Intersection with the subring not involving ``names``."""
        R = self.ring
        names = [n for n in R.variables if n in set(names)]
        if not names:
            return self
        rest = [n for n in R.variables if n not in names]
        if not rest:
            return Ideal([R.one] if self.is_unit() else [], R)
        big = PolyRing(tuple(names) + tuple(rest), R.field, ("block", len(names)))
        gb = buchberger([g.to_ring(big) for g in self.gens], big)
        k = len(names)
        keep = [g for g in gb if all(not any(m[:k]) for m in g.terms)]
        return Ideal([g.to_ring(R) for g in keep], R)

    def dimension(self):
        """Krull dimension of ``R / I``; ``-1`` stands for the empty scheme."""
        if self.is_zero():
            return self.ring.nvars
        gb = self.groebner() if self.ring.order != "lex" else self.groebner("grevlex")
        if len(gb) == 1 and gb[0].is_constant():
            return -1
        supports = [frozenset(i for i, e in enumerate(g.LM) if e) for g in gb]
        return self.ring.nvars - min_hitting_set(supports, self.ring.nvars)

    def leading_ideal(self):
        return Ideal([self.ring.monomial(g.LM) for g in self.groebner()], self.ring)

    # presentation ---------------------------------------------------------
    def serialize(self):
        """Sorted reduced Groebner basis as strings (textual ideal equality)."""
        return sorted(str(g) for g in self.groebner())

    def __repr__(self):
        return "Ideal(" + ", ".join(str(g) for g in self.gens) + ")"

    def map(self, fn, ring=None):
        ring = ring or self.ring
        return Ideal([fn(g) for g in self.gens], ring)

    def to_ring(self, target):
        return Ideal([g.to_ring(target) for g in self.gens], target)


def _minimal_products(a, b):
    seen = {}
    for f in a:
        for g in b:
            h = f * g
            seen.setdefault(h, None)
    return list(seen)


def min_hitting_set(sets, n):
    """Size of a smallest set of indices meeting every set in ``sets``."""
    sets = [s for s in set(sets)]
    if any(not s for s in sets):
        return n + 1
    sets = [s for s in sets if not any(t < s for t in sets)]
    best = [n]

    def rec(remaining, chosen):
        if chosen >= best[0]:
            return
        if not remaining:
            best[0] = chosen
            return
        if chosen + 1 >= best[0]:
            return
        s = min(remaining, key=lambda x: (len(x), sorted(x)))
        for v in sorted(s):
            rec([t for t in remaining if v not in t], chosen + 1)

    rec(sets, 0)
    return best[0]


def ideal_equal_mod(I, J, modulus):
    """Equality of ``I + modulus`` and ``J + modulus``."""
    return (I + modulus).equals(J + modulus)


def saturated_equal(I, J, by):
    """Equality after saturating both sides by ``by``."""
    return I.saturation(by)[0].equals(J.saturation(by)[0])


# ---------------------------------------------------------------------------
# monomial valuations and Q-ideals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonomialValuation:
    """Monomial valuation ``x^u -> <w, u>`` centred at the origin."""

    weights: tuple

    def __post_init__(self):
        w = tuple(Fraction(x) for x in self.weights)
        if any(x <= 0 for x in w):
            raise ValueError("monomial valuation weights must be positive")
        object.__setattr__(self, "weights", w)

    def of_monomial(self, exp):
        return sum((w * e for w, e in zip(self.weights, exp)), Fraction(0))

    def of_polynomial(self, f):
        if not f:
            return INFINITY
        return min(self.of_monomial(m) for m in f.terms)

    def of_ideal(self, ideal):
        return monomial_order_of_ideal(self, ideal)


def monomial_order_of_ideal(w, ideal):
    """``min`` over generators of the ``w``-order; infinity for the zero ideal."""
    if not isinstance(w, MonomialValuation):
        w = MonomialValuation(tuple(w))
    if len(w.weights) != ideal.ring.nvars:
        raise ValueError("weight vector length does not match ring arity")
    if ideal.is_zero():
        return INFINITY
    return min(w.of_polynomial(g) for g in ideal.gens)


@dataclass
class QIdeal:
    """Formal product of ideals with non-negative rational exponents."""

    factors: list = field(default_factory=list)

    def __post_init__(self):
        conv = []
        for ideal, a in self.factors:
            a = Fraction(a)
            if a < 0:
                raise ValueError("Q-ideal exponents must be non-negative")
            conv.append((ideal, a))
        self.factors = conv

    @classmethod
    def of(cls, ideal, exponent=1):
        return cls([(ideal, exponent)])

    @property
    def ring(self):
        return self.factors[0][0].ring if self.factors else None

    def denominator(self):
        d = 1
        for _, a in self.factors:
            d = d * a.denominator // math.gcd(d, a.denominator)
        return d

    def representative(self, r, ring=None):
        """The ordinary ideal ``prod I_i^(r a_i)``; ``r`` must clear denominators."""
        if r <= 0:
            raise ValueError("denominator must be positive")
        ring = ring or self.ring
        out = Ideal([ring.one], ring)
        for ideal, a in self.factors:
            e = a * r
            if e.denominator != 1:
                raise ValueError(f"{r} is not a denominator of this Q-ideal")
            if e:
                out = out * (ideal ** int(e))
        return out

    def multiplicity(self, w):
        """Order along a monomial valuation: ``sum a_i * ord_w(I_i)``."""
        total = Fraction(0)
        for ideal, a in self.factors:
            if not a:
                continue
            v = monomial_order_of_ideal(w, ideal)
            if v == INFINITY:
                return INFINITY
            total += a * v
        return total

    def __mul__(self, other):
        return QIdeal(self.factors + other.factors)

    def scaled(self, lam):
        return QIdeal([(I, a * Fraction(lam)) for I, a in self.factors])

    def is_monomial(self):
        return all(I.is_monomial() for I, _ in self.factors)


def qideal_representative(Q, r):
    return Q.representative(r)


def qideal_equivalence(Q1, Q2):
    """'equivalent', 'not equivalent' or 'undetermined'.

    Monomial Q-ideals are compared by Newton polyhedra of representatives to a
    common denominator; otherwise only exact equality can be certified.
    """
    r = Q1.denominator() * Q2.denominator() // math.gcd(Q1.denominator(), Q2.denominator())
    ring = Q1.ring or Q2.ring
    A = Q1.representative(r, ring)
    B = Q2.representative(r, ring)
    if A.is_monomial() and B.is_monomial():
        return "equivalent" if closure_equal(A, B) else "not equivalent"
    if A.equals(B):
        return "equivalent"
    return "undetermined"


# ---------------------------------------------------------------------------
# monomial integral closure and containment certificates
# ---------------------------------------------------------------------------


def monomial_integral_closure(ideal):
    """Integral closure of a monomial ideal (lattice points of its Newton polyhedron)."""
    if not ideal.is_monomial():
        raise ValueError("integral closure is only implemented for monomial ideals")
    if ideal.is_zero():
        return ideal
    exps = closure_exponents(ideal.monomial_exponents())
    return Ideal([ideal.ring.monomial(e) for e in exps], ideal.ring)


def closure_equal(I, J):
    if not (I.is_monomial() and J.is_monomial()):
        raise ValueError("closure comparison needs monomial ideals")
    if I.is_zero() or J.is_zero():
        return I.is_zero() and J.is_zero()
    return same_closure(I.monomial_exponents(), J.monomial_exponents())


def in_closure(ideal, exp):
    return tuple(exp) in NewtonPolyhedron(ideal.monomial_exponents())


@dataclass
class SandwichCertificate:
    lower_contained: bool
    upper_contained: bool
    closures_equal: bool | None
    witness: str | None = None

    @property
    def passed(self):
        return self.lower_contained and self.upper_contained and self.closures_equal is not False

    def as_dict(self):
        return {
            "lower_contained": self.lower_contained,
            "upper_contained": self.upper_contained,
            "closures_equal": self.closures_equal,
            "passed": self.passed,
            "witness": self.witness,
        }


def sandwich_certificate(I, lower, upper):
    """Certify ``lower <= I <= upper`` and, for monomial bounds, equal closures."""
    witness = None
    lower_ok = True
    for g in lower.gens:
        if not I.contains(g):
            lower_ok = False
            witness = f"lower generator {g} not in ideal"
            break
    upper_ok = True
    for g in I.gens:
        if not upper.contains(g):
            upper_ok = False
            witness = witness or f"generator {g} not in upper bound"
            break
    closures = None
    if lower.is_monomial() and upper.is_monomial():
        closures = closure_equal(lower, upper)
        if not closures:
            witness = witness or "closure mismatch between lower and upper bounds"
    return SandwichCertificate(lower_ok, upper_ok, closures, witness)
