"""Buchberger's algorithm with the Gebauer-Moeller criteria.

Pairs are selected by the normal strategy with sugar degree first, so the
run is deterministic for a fixed input and monomial order.  Budgets are
enforced here: hitting a cap raises :class:`BudgetExceeded`.
"""

from __future__ import annotations

import contextlib
import contextvars
import heapq
import time
from dataclasses import dataclass, replace
from operator import add, ge

from gmpy2 import gcd, invert, is_prime, isqrt, lcm, mpq, mpz

from .errors import BudgetExceeded, RingMismatch
from .poly import Field, Polynomial, PolyRing


@dataclass(frozen=True)
class Budget:
    degree_cap: int = 80
    pair_cap: int = 500_000
    time_budget: float | None = None
    minor_cap: int = 50_000
    node_cap: int = 50_000

    def deadline(self):
        if self.time_budget is None:
            return None
        return time.monotonic() + self.time_budget


_current = contextvars.ContextVar("adjlab_budget", default=Budget())
_deadline = contextvars.ContextVar("adjlab_deadline", default=None)


def current_budget():
    return _current.get()


@contextlib.contextmanager
def budget(b=None, **overrides):
    """Install a budget for the dynamic extent of a ``with`` block."""
    b = replace(b or current_budget(), **overrides)
    tok = _current.set(b)
    dtok = _deadline.set(b.deadline())
    try:
        yield b
    finally:
        _current.reset(tok)
        _deadline.reset(dtok)


def check_time():
    d = _deadline.get()
    if d is not None and time.monotonic() > d:
        raise BudgetExceeded("time budget exhausted")


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _divides(a, b):
    return all(map(ge, b, a))


def _coprime(a, b):
    return not any(x and y for x, y in zip(a, b))


class _Reducer:
    """Normal forms of dict-polynomials against normalized reducers.

    Over a prime field the reducers are monic.  Over Q they are primitive
    integer polynomials and reduction is fraction free: the working
    polynomial is scaled instead of divided, and its content is stripped
    now and then to keep the integers small.
    """

    def __init__(self, ring):
        self.ring = ring
        self.key = ring.key
        self.p = ring.field.p

    def reduce(self, terms, basis, active, full=True, exact=True):
        """Remainder of ``terms``.

        Over Q with ``exact=False`` the remainder is only returned up to a
        nonzero rational factor (as a primitive integer polynomial), which
        is all Buchberger needs.
        """
        if self.p:
            return self._reduce_p(terms, basis, active, full)
        return self._reduce_q(terms, basis, active, full, exact)

    def _reduce_p(self, terms, basis, active, full):
        key = self.key
        p = self.p
        f = dict(terms)
        heap = [(-key(m), m) for m in f]
        heapq.heapify(heap)
        rem = {}
        push = heapq.heappush
        pop = heapq.heappop
        while heap:
            _, m = pop(heap)
            c = f.pop(m, None)
            if c is None:
                continue
            for i in active:
                lm = basis[i][1]
                if all(map(ge, m, lm)):
                    q = tuple(a - b for a, b in zip(m, lm))
                    for mg, cg in basis[i][0].items():
                        if mg is lm or mg == lm:
                            continue
                        mm = tuple(map(add, mg, q))
                        old = f.get(mm)
                        if old is None:
                            v = -c * cg % p
                            if v:
                                f[mm] = v
                                push(heap, (-key(mm), mm))
                        else:
                            v = (old - c * cg) % p
                            if v:
                                f[mm] = v
                            else:
                                del f[mm]
                    break
            else:
                rem[m] = c
                if not full:
                    rem.update(f)
                    return rem
        return rem

    def _reduce_q(self, terms, basis, active, full, exact):
        key = self.key
        f, scale = _integral(terms)
        heap = [(-key(m), m) for m in f]
        heapq.heapify(heap)
        rem = {}
        push = heapq.heappush
        pop = heapq.heappop
        steps = 0
        while heap:
            _, m = pop(heap)
            c = f.pop(m, None)
            if c is None:
                continue
            for i in active:
                lm = basis[i][1]
                if all(map(ge, m, lm)):
                    g_terms = basis[i][0]
                    a = g_terms[lm]
                    d = gcd(a, c)
                    ma, mc = a // d, c // d
                    if ma != 1:
                        for k in f:
                            f[k] *= ma
                        for k in rem:
                            rem[k] *= ma
                        scale *= ma
                    q = tuple(x - y for x, y in zip(m, lm))
                    for mg, cg in g_terms.items():
                        if mg is lm or mg == lm:
                            continue
                        mm = tuple(map(add, mg, q))
                        old = f.get(mm)
                        if old is None:
                            f[mm] = -mc * cg
                            push(heap, (-key(mm), mm))
                        else:
                            v = old - mc * cg
                            if v:
                                f[mm] = v
                            else:
                                del f[mm]
                    steps += 1
                    if steps % 8 == 0:
                        cont = _content(f, rem)
                        if cont > 1:
                            for k in f:
                                f[k] //= cont
                            for k in rem:
                                rem[k] //= cont
                            scale /= cont
                    break
            else:
                rem[m] = c
                if not full:
                    rem.update(f)
                    break
        if not exact:
            return _primitive(rem)
        return {m: mpq(c) / scale for m, c in rem.items()}


def _content(*dicts):
    g = mpz(0)
    for dct in dicts:
        for c in dct.values():
            g = gcd(g, c)
            if g == 1:
                return g
    return g


def _integral(terms):
    """Integer multiple of a rational dict-polynomial and the factor used."""
    den = mpz(1)
    for c in terms.values():
        den = lcm(den, mpq(c).denominator)
    return {m: mpz(mpq(c) * den) for m, c in terms.items()}, mpq(den)


def _primitive(terms):
    if not terms:
        return terms
    cont = _content(terms)
    return {m: c // cont for m, c in terms.items()}


def _normal(terms, ring):
    """Reducer form: monic over a prime field, primitive integer with positive
    leading coefficient over Q."""
    if not terms:
        return terms
    lm = max(terms, key=ring.key)
    p = ring.field.p
    if p:
        inv = ring.field.inv(terms[lm])
        return {m: c * inv % p for m, c in terms.items()}
    ints = _primitive(_integral(terms)[0])
    if ints[lm] < 0:
        ints = {m: -c for m, c in ints.items()}
    return ints


def _monic(terms, ring):
    if not terms:
        return terms
    lm = max(terms, key=ring.key)
    inv = ring.field.inv(terms[lm])
    p = ring.field.p
    if p:
        return {m: c * inv % p for m, c in terms.items()}
    return {m: mpq(c) * inv for m, c in terms.items()}


def buchberger(polys, ring=None, budget=None):
    """Reduced Groebner basis of ``polys`` in their ring's monomial order.

    Returns a list of monic polynomials sorted by decreasing leading monomial.
    The zero ideal gives ``[]``; the unit ideal gives ``[1]``.

    Over Q the direct computation is tried first.  If intermediate
    coefficients outgrow ``_BIT_GUARD`` bits it switches to the verified
    multi-modular path in :func:`_modular_basis`.
    """
    polys = [f for f in polys if f]
    if ring is None:
        if not polys:
            raise ValueError("cannot infer the ring of an empty generator list")
        ring = polys[0].ring
    for f in polys:
        if f.ring != ring:
            raise RingMismatch("generators live in different rings")
    b = budget or current_budget()
    deadline = _deadline.get()
    if budget is not None and budget.time_budget is not None:
        deadline = budget.deadline()
    if ring.field.p:
        return _buchberger(polys, ring, b, deadline)
    try:
        return _buchberger(polys, ring, b, deadline, bit_guard=_BIT_GUARD)
    except _CoefficientGrowth:
        return _modular_basis(polys, ring, b, deadline)


_BIT_GUARD = 2048


class _CoefficientGrowth(Exception):
    pass


def _buchberger(polys, ring, b, deadline, bit_guard=None):
    key = ring.key
    red = _Reducer(ring)

    basis = []  # entries: (terms, lm, sugar)
    active = []
    pairs = []  # heap of (sugar, key(lcm), i, j, lcm)
    processed = 0

    def add_element(terms, sugar):
        terms = _normal(terms, ring)
        if bit_guard is not None and max(int(abs(c)).bit_length() for c in terms.values()) > bit_guard:
            raise _CoefficientGrowth
        lm = max(terms, key=key)
        h = len(basis)
        basis.append((terms, lm, sugar))
        if not any(lm):
            # unit ideal
            active.clear()
            active.append(h)
            pairs.clear()
            return
        _update(h)
        if not ring.field.p:
            _retail(h)

    def _retail(h):
        # keep tails reduced against the newest element; over Q this stops
        # coefficient growth from compounding through stale tails
        lmh = basis[h][1]
        for g in active:
            if g == h:
                continue
            gt, glm, gs = basis[g]
            if not any(m != glm and all(map(ge, m, lmh)) for m in gt):
                continue
            tail = {m: c for m, c in gt.items() if m != glm}
            r = red.reduce(tail, basis, active)
            r = {m: mpq(c) / gt[glm] for m, c in r.items()}
            r[glm] = mpq(1)
            basis[g] = (_normal(r, ring), glm, gs)

    def pair_entry(i, j):
        lmi, lmj = basis[i][1], basis[j][1]
        lcm = _lcm(lmi, lmj)
        dl = sum(lcm)
        s = max(basis[i][2] + dl - sum(lmi), basis[j][2] + dl - sum(lmj))
        return (s, key(lcm), i, j, lcm)

    def _update(h):
        lmh = basis[h][1]
        cands = [(g, _lcm(basis[g][1], lmh)) for g in active]
        keep = []
        for idx, (g, l) in enumerate(cands):
            if _coprime(basis[g][1], lmh):
                keep.append((g, l))
                continue
            redundant = False
            for _, l2 in cands[idx + 1:]:
                if _divides(l2, l):
                    redundant = True
                    break
            if not redundant:
                for _, l2 in keep:
                    if _divides(l2, l):
                        redundant = True
                        break
            if not redundant:
                keep.append((g, l))
        new_pairs = [(g, l) for g, l in keep if not _coprime(basis[g][1], lmh)]
        old = []
        for entry in pairs:
            _, _, i, j, l = entry
            if (
                not _divides(lmh, l)
                or _lcm(basis[i][1], lmh) == l
                or _lcm(basis[j][1], lmh) == l
            ):
                old.append(entry)
        old.extend(pair_entry(g, h) for g, _ in new_pairs)
        heapq.heapify(old)
        pairs[:] = old
        active[:] = [g for g in active if not _divides(lmh, basis[g][1])] + [h]

    start = sorted(
        ((_normal(dict(f.terms), ring), f.total_degree()) for f in polys),
        key=lambda t: key(max(t[0], key=key)),
    )
    for terms, deg in start:
        if active and not any(basis[active[0]][1]):
            break
        r = red.reduce(terms, basis, active, exact=False) if active else terms
        if r:
            add_element(r, deg)

    while pairs:
        if active and not any(basis[active[0]][1]):
            break
        sugar, _, i, j, lcm = heapq.heappop(pairs)
        processed += 1
        if processed > b.pair_cap:
            raise BudgetExceeded(f"pair cap {b.pair_cap} exceeded")
        if sum(lcm) > b.degree_cap:
            raise BudgetExceeded(f"degree cap {b.degree_cap} exceeded (lcm degree {sum(lcm)})")
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceeded("time budget exhausted during Groebner basis computation")
        s = _spoly(basis[i], basis[j], lcm, ring)
        r = red.reduce(s, basis, active, exact=False)
        if r:
            add_element(r, sugar)

    # interreduce the minimal basis
    final = []
    act = sorted(active, key=lambda g: key(basis[g][1]))
    for g in act:
        others = [h for h in act if h != g]
        terms = basis[g][0]
        lm = basis[g][1]
        tail = {m: c for m, c in terms.items() if m != lm}
        r = red.reduce(tail, basis, others) if tail else {}
        r[lm] = terms[lm]
        final.append(Polynomial(ring, _monic(r, ring)))
    final.sort(key=lambda f: key(f.LM), reverse=True)
    return final


def _rational(a, m):
    """Rational reconstruction of ``a`` mod ``m``, or ``None``."""
    bound = isqrt(m // 2)
    r0, r1, s0, s1 = m, a % m, mpz(0), mpz(1)
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if not s1 or abs(s1) > bound or gcd(r1, s1) != 1:
        return None
    return mpq(r1, s1)


def _primes(start=(1 << 31) - 1):
    p = mpz(start)
    while p > 3:
        if is_prime(p):
            yield int(p)
        p -= 2 if p % 2 else 1


def _homogenize(polys, ring):
    """Homogenized copies in ``ring[h]`` with the degree-first order, or
    the inputs unchanged (and ``None``) when they are already homogeneous."""
    if all(len({sum(m) for m in f.terms}) == 1 for f in polys):
        return polys, ring, False
    big = PolyRing(ring.variables + (ring.fresh_name("h"),), ring.field, ("homog", ring.order))
    out = []
    for f in polys:
        d = f.total_degree()
        out.append(Polynomial(big, {m + (d - sum(m),): c for m, c in f.terms.items()}))
    return out, big, True


def _modular_basis(polys, ring, b, deadline):
    """Groebner basis over Q from bases modulo many primes.

    The input is homogenized first.  A candidate is lifted by Chinese
    remaindering and rational reconstruction and then verified over Q: it
    must be homogeneous, contain the input, pass Buchberger's criterion and
    share its leading monomials with the basis modulo a prime.  For
    homogeneous ideals those checks force equality degree by degree, since
    reduction modulo a prime never lowers the dimension of the lattice of
    integral elements in a fixed degree.  Dehomogenizing a homogeneous
    basis for a degree-first order refining the ring order gives a basis
    for the original ideal.
    """
    ints = [Polynomial(ring, {m: mpq(c) for m, c in _primitive(_integral(dict(f.terms))[0]).items()})
            for f in polys]
    hom, hring, lifted = _homogenize(ints, ring)
    groups = {}
    for p in _primes():
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceeded("time budget exhausted during modular Groebner computation")
        fp = Field(p)
        pring = PolyRing(hring.variables, fp, hring.order)
        images = [Polynomial(pring, {m: int(c) % p for m, c in f.terms.items() if int(c) % p}) for f in hom]
        gp = _buchberger([g for g in images if g], pring, b, deadline)
        lms = tuple(g.LM for g in gp)
        group = groups.setdefault(lms, [])
        group.append((p, gp))
        if len(group) < 2 or max(len(v) for v in groups.values()) > len(group):
            continue
        cand = _lift(group[:-1], hring)
        if cand is None or not _agrees(cand, group[-1]):
            continue
        if _verify(cand, hom, hring):
            break
    else:  # pragma: no cover - the prime supply is effectively unbounded
        raise BudgetExceeded("ran out of primes for the modular Groebner computation")
    if not lifted:
        return cand
    low = [Polynomial(ring, {m[:-1]: c for m, c in g.terms.items()}) for g in cand]
    return _reduce_basis(low, ring)


def _lift(group, hring):
    modulus = mpz(1)
    acc = None
    for p, gp in group:
        vals = [{m: mpz(c) for m, c in g.terms.items()} for g in gp]
        if acc is None:
            acc = vals
        else:
            inv = invert(modulus, p)
            for a, v in zip(acc, vals):
                for m in set(a) | set(v):
                    x = a.get(m, mpz(0))
                    a[m] = x + modulus * (((v.get(m, 0) - x) * inv) % p)
        modulus *= p
    out = []
    for a in acc:
        terms = {}
        for m, c in a.items():
            r = _rational(c, modulus)
            if r is None:
                return None
            if r:
                terms[m] = r
        out.append(Polynomial(hring, terms))
    return out


def _agrees(cand, test):
    p, gp = test
    for g, h in zip(cand, gp):
        image = {}
        for m, c in g.terms.items():
            if c.denominator % p == 0:
                return False
            v = int(c.numerator * invert(c.denominator, p)) % p
            if v:
                image[m] = v
        if image != dict(h.terms):
            return False
    return True


def _verify(cand, gens, hring):
    if any(len({sum(m) for m in g.terms}) != 1 for g in cand):
        return False
    red = _Reducer(hring)
    basis = [(_normal(dict(g.terms), hring), g.LM, 0) for g in cand]
    act = list(range(len(basis)))
    if any(red.reduce(dict(f.terms), basis, act, exact=False) for f in gens):
        return False
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if _coprime(basis[i][1], basis[j][1]):
                continue
            s = _spoly(basis[i], basis[j], _lcm(basis[i][1], basis[j][1]), hring)
            if red.reduce(s, basis, act, exact=False):
                return False
    return True


def _reduce_basis(gb, ring):
    """Reduced form of a Groebner basis: drop redundant leaders, reduce tails."""
    key = ring.key
    gb = sorted(gb, key=lambda g: key(g.LM))
    keep = []
    for g in gb:
        if not any(_divides(h.LM, g.LM) for h in keep):
            keep.append(g)
    red = _Reducer(ring)
    basis = [(_normal(dict(g.terms), ring), g.LM, 0) for g in keep]
    out = []
    for i, (terms, lm, _) in enumerate(basis):
        others = [j for j in range(len(basis)) if j != i]
        tail = {m: c for m, c in terms.items() if m != lm}
        r = red.reduce(tail, basis, others) if tail else {}
        r[lm] = terms[lm]
        out.append(Polynomial(ring, _monic(r, ring)))
    out.sort(key=lambda f: key(f.LM), reverse=True)
    return out


def _spoly(a, b, lcm_ab, ring):
    p = ring.field.p
    ta, lma, _ = a
    tb, lmb, _ = b
    ca, cb = ta[lma], tb[lmb]
    if p or ca == cb:
        ka, kb = 1, 1
    else:
        d = gcd(ca, cb)
        ka, kb = cb // d, ca // d
    qa = tuple(x - y for x, y in zip(lcm_ab, lma))
    qb = tuple(x - y for x, y in zip(lcm_ab, lmb))
    out = {}
    for m, c in ta.items():
        if m != lma:
            out[tuple(map(add, m, qa))] = ka * c
    for m, c in tb.items():
        if m == lmb:
            continue
        mm = tuple(map(add, m, qb))
        v = out.get(mm, 0) - kb * c
        if p:
            v %= p
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


def normal_form(f, gb):
    """Fully reduced remainder of ``f`` modulo a Groebner basis ``gb``."""
    if not gb:
        return f
    ring = f.ring
    basis = [(g.terms, g.LM, 0) for g in gb]
    for g in gb:
        if g.ring != ring:
            raise RingMismatch("basis and polynomial in different rings")
    basis = [(_normal(dict(t), ring), lm, s) for t, lm, s in basis]
    r = _Reducer(ring).reduce(f.terms, basis, list(range(len(basis))))
    return Polynomial(ring, r)


def is_groebner(gb):
    """Check Buchberger's criterion directly (every S-pair reduces to 0)."""
    if not gb:
        return True
    ring = gb[0].ring
    basis = [(_normal(dict(g.terms), ring), g.LM, 0) for g in gb]
    red = _Reducer(ring)
    act = list(range(len(basis)))
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            lcm = _lcm(basis[i][1], basis[j][1])
            s = _spoly(basis[i], basis[j], lcm, ring)
            if red.reduce(s, basis, act, exact=False):
                return False
    return True
