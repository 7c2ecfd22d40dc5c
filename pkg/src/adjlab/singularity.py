"""Jacobian ideals, general complete-intersection slices, conductors and defect ideals.

Everything here lives in the ambient polynomial ring.  An ideal "on X" is
represented by an ambient ideal containing the defining ideal of X, so
equality on X is plain ideal equality after adding ``I_X``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .errors import BudgetExceeded, GenericityError, Refused, VerificationError
from .groebner import current_budget
from .ideal import Ideal
from .matrix import jacobian_matrix, minor
from .rng import COEFF_RANGE, XorShift


class AffineSubscheme:
    """Closed subscheme ``X = V(I)`` of affine space ``Spec ring``."""

    def __init__(self, ideal, name=None):
        if not isinstance(ideal, Ideal):
            raise TypeError("AffineSubscheme needs an Ideal")
        self.ideal = ideal
        self.ring = ideal.ring
        self.name = name
        self._dim = None

    @classmethod
    def from_strings(cls, ring, gens, name=None):
        return cls(Ideal(gens, ring), name)

    @property
    def dimension(self):
        if self._dim is None:
            d = self.ideal.dimension()
            if d < 0:
                raise ValueError("defining ideal is the unit ideal")
            self._dim = d
        return self._dim

    @property
    def codimension(self):
        return self.ring.nvars - self.dimension

    @property
    def gens(self):
        return list(self.ideal.gens)

    def on_X(self, ideal):
        """Ambient representative ``ideal + I_X`` of the image in ``O_X``."""
        return ideal + self.ideal

    def is_nonzerodivisor(self, f):
        return self.ideal.quotient(f).equals(self.ideal)

    def is_complete_intersection(self):
        """``I_X`` generated by ``codim`` of its own generators (minimal-count test)."""
        c = self.codimension
        gens = [g for g in self.ideal.groebner()]
        if len(self.gens) <= c or len(gens) <= c:
            return True
        for combo in itertools.combinations(self.gens, c):
            if Ideal(combo, self.ring).equals(self.ideal):
                return True
        return False

    def __repr__(self):
        label = f"{self.name}: " if self.name else ""
        return f"AffineSubscheme({label}{self.ideal!r})"


# ---------------------------------------------------------------------------
# Jacobian ideal
# ---------------------------------------------------------------------------


@dataclass
class MinorSample:
    minors: list
    exhaustive: bool
    rounds: int = 0


def jacobian_minors(polys, size, seed=0, batch=64, stable_rounds=2, modulo=None):
    """``size`` x ``size`` minors of the Jacobian matrix of ``polys``.

    All minors are returned when their count is within the budget's minor
    cap.  Otherwise minors are sampled in seeded batches until the ideal they
    generate (plus ``modulo``) is unchanged for ``stable_rounds`` batches.
    """
    ring = polys[0].ring
    J = jacobian_matrix(polys)
    nr, nc = len(J), ring.nvars
    if size == 0:
        return MinorSample([ring.one], True)
    if size > min(nr, nc):
        return MinorSample([], True)
    count = math.comb(nr, size) * math.comb(nc, size)
    cap = current_budget().minor_cap
    if count <= cap:
        out = []
        for rows in itertools.combinations(range(nr), size):
            for cols in itertools.combinations(range(nc), size):
                m = minor(J, rows, cols)
                if m:
                    out.append(m)
        return MinorSample(out, True)
    rng = XorShift(seed)
    base = modulo if modulo is not None else Ideal([], ring)
    found = []
    current = base
    quiet = 0
    rounds = 0
    drawn = 0
    while quiet < stable_rounds:
        rounds += 1
        new = []
        for _ in range(batch):
            rows = sorted(rng.shuffle(range(nr))[:size])
            cols = sorted(rng.shuffle(range(nc))[:size])
            m = minor(J, rows, cols)
            drawn += 1
            if m and not current.contains(m):
                new.append(m)
        if drawn > max(cap, 50 * batch):
            raise BudgetExceeded(f"minor sampling did not stabilize within {drawn} draws")
        if new:
            found.extend(new)
            current = current + Ideal(new, ring)
            quiet = 0
        else:
            quiet += 1
    return MinorSample(found, False, rounds)


def jacobian_ideal(X, seed=0):
    """``I_X`` plus all ``c`` x ``c`` minors of the Jacobian matrix of its generators."""
    sample = jacobian_minors(X.gens, X.codimension, seed=seed, modulo=X.ideal)
    return Ideal(list(X.ideal.gens) + sample.minors, X.ring)


# ---------------------------------------------------------------------------
# general complete-intersection slices
# ---------------------------------------------------------------------------


@dataclass
class LciSlice:
    parent: AffineSubscheme
    ideal: Ideal  # I_Y
    residual: Ideal  # I_{C^Y} = (I_Y : I_X)
    seed: int | None
    coefficients: list = field(default_factory=list)

    @property
    def scheme(self):
        return AffineSubscheme(self.ideal)

    def union_check(self):
        """``I_Y == I_X cap I_{C^Y}`` exactly."""
        return self.ideal.equals(self.parent.ideal.intersection(self.residual))


def _combination(gens, coeffs, ring):
    total = ring.zero
    for g, a in zip(gens, coeffs):
        total = total + g.scale(a)
    return total


def general_lci_slice(X, seed=None, retries=5, generators=None, bound=COEFF_RANGE):
    """A complete intersection ``Y`` of codimension ``c`` containing ``X``.

    ``Y`` is cut out by ``c`` seeded integer combinations of the generators of
    ``I_X``; pass ``generators`` (indices) to use those generators verbatim
    instead.  The choice is then validated: ``dim Y == dim X`` and
    ``I_Y == I_X cap (I_Y : I_X)``.  Random choices are retried with derived
    seeds; a :class:`GenericityError` names the failing check.
    """
    ring = X.ring
    c = X.codimension
    gens = X.gens
    if generators is not None:
        attempts = [("fixed", [gens[i] for i in generators], [])]
    else:
        if seed is None:
            raise ValueError("a seed is required for a random slice")
        attempts = []
        for k in range(retries):
            rng = XorShift(seed + 0x9E37 * k)
            rows = [[rng.coefficient(bound) for _ in gens] for _ in range(c)]
            if ring.field.p:
                rows = [[a % ring.field.p or 1 for a in row] for row in rows]
            attempts.append((seed + 0x9E37 * k, [_combination(gens, r, ring) for r in rows], rows))
    last = None
    for tag, polys, rows in attempts:
        if len(polys) != c:
            last = f"slice needs exactly {c} equations, got {len(polys)}"
            continue
        IY = Ideal(polys, ring)
        if any(not g for g in IY.gens) or len(IY.gens) != c:
            last = "a slice equation vanished"
            continue
        if IY.dimension() != X.dimension:
            last = f"slice has dimension {IY.dimension()} instead of {X.dimension}"
            continue
        residual = IY.quotient(X.ideal)
        if not IY.equals(X.ideal.intersection(residual)):
            last = "scheme-theoretic union check I_Y = I_X cap I_C failed"
            continue
        return LciSlice(X, IY, residual, None if tag == "fixed" else tag, rows)
    raise GenericityError(f"no valid slice after {len(attempts)} attempt(s): {last}")


def conductor_on_X(Y):
    """``I_{C^Y} O_X`` represented as ``I_{C^Y} + I_X``."""
    return Y.residual + Y.parent.ideal


# ---------------------------------------------------------------------------
# divisorial powers and defect ideals
# ---------------------------------------------------------------------------


@dataclass
class HullResult:
    ideal: Ideal
    nonzerodivisors: list
    independent: bool | None  # agreement between two choices, None if only one tried


def divisorial_power(a, r, X, check_two=True, seed=0):
    """Reflexive hull of ``a^r`` on ``X`` via ``((f) : ((f) : a^r))`` for a nonzerodivisor ``f``.

    Generators of ``a^r`` are tried as ``f`` first, then a few seeded
    combinations of them.  Returns a :class:`HullResult` whose ideal contains
    ``I_X``.
    """
    if r < 1:
        raise ValueError("r must be a positive integer")
    IX = X.ideal
    power = a ** r if r > 1 else a
    ar = X.on_X(power)
    if ar.is_unit():
        return HullResult(ar, [], None)
    gens = [g for g in power.gens if not IX.contains(g)]
    gens.sort(key=lambda g: (len(g), g.total_degree(), str(g)))
    want = 2 if check_two else 1
    picks = [f for f in gens if X.is_nonzerodivisor(f)][:want]
    rng = XorShift(seed)
    tries = 0
    while len(picks) < want and tries < 4 and gens:
        tries += 1
        f = _combination(gens, [rng.coefficient(100) for _ in gens], X.ring)
        if f and X.is_nonzerodivisor(f):
            picks.append(f)
    if not picks:
        raise Refused("no nonzerodivisor on O_X found in a^r")
    hulls = []
    for f in picks:
        F = IX + Ideal([f], X.ring)
        hulls.append(F.quotient(F.quotient(ar)))
    independent = None
    if len(hulls) > 1:
        independent = hulls[0].equals(hulls[1])
        if not independent:
            raise VerificationError("reflexive hull depends on the chosen nonzerodivisor")
    return HullResult(hulls[0], picks, independent)


@dataclass
class DefectSum:
    ideal: Ideal
    stabilized: bool
    slices_used: int
    seeds: list


def weak_defect_sum(X, r, seeds, slices=None):
    """Sum over slices of ``O_X(-r D^Y)``; stops after two consecutive equal sums.

    ``slices`` may supply ready-made :class:`LciSlice` objects instead of seeds.
    """
    ring = X.ring
    items = list(slices) if slices is not None else list(seeds)
    if not items:
        raise ValueError("need at least one seed or slice")
    total = None
    stable = 0
    used = []
    for item in items:
        Y = item if isinstance(item, LciSlice) else general_lci_slice(X, item)
        part = divisorial_power(conductor_on_X(Y), r, X).ideal
        new = part if total is None else total + part
        used.append(Y.seed)
        if total is not None and new.equals(total):
            stable += 1
        else:
            stable = 0
        total = new
        if stable >= 2 and slices is None:
            break
    return DefectSum(Ideal(total.gens, ring), stable >= 2, len(used), used)


def weak_defect_colon(X, r, J_rX, jacobian=None):
    """``[(J'_X)^r : J_{r,X}]`` on ``X`` (ambient representative containing ``I_X``)."""
    Jp = jacobian if jacobian is not None else jacobian_ideal(X)
    num = X.on_X(Jp ** r if r > 1 else Jp)
    return num.quotient(X.on_X(J_rX))


@dataclass
class JrxResult:
    ideal: Ideal
    status: str  # "exact", "saturated" or "undetermined"
    slices: int
    hull: Ideal


def _multiply_back_status(X, cand, hull, target):
    lhs = X.on_X(cand * hull)
    if lhs.equals(target):
        return "exact"
    if lhs.saturation(hull)[0].equals(target.saturation(hull)[0]):
        return "saturated"
    return None


def jrx_from_slice(X, Y, r, extra=()):
    """Recover ``J_{r,X}`` from ``(J'_Y O_X)^r = J_{r,X} O_X(-r D^Y)``.

    The candidate ``((J'_Y O_X)^r : O_X(-r D^Y))`` is verified by multiplying
    back.  If that fails, candidates from the slices in ``extra`` are
    intersected in and re-verified.
    """
    JY = X.on_X(jacobian_ideal(Y.scheme))
    target = X.on_X(JY ** r) if r > 1 else JY
    hull = divisorial_power(conductor_on_X(Y), r, X).ideal
    cand = target.quotient(hull)
    status = _multiply_back_status(X, cand, hull, target)
    used = 1
    for Z in extra:
        if status is not None:
            break
        JZ = X.on_X(jacobian_ideal(Z.scheme))
        tz = X.on_X(JZ ** r) if r > 1 else JZ
        hz = divisorial_power(conductor_on_X(Z), r, X).ideal
        cand = cand.intersection(tz.quotient(hz))
        used += 1
        status = _multiply_back_status(X, cand, hull, target)
    if status is None:
        raise VerificationError("inversion undetermined: multiplying back never reproduced the slice Jacobian")
    return JrxResult(cand, status, used, hull)
