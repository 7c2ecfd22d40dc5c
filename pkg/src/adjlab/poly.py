"""Exact multivariate polynomials over Q or F_p, plus truncated power series.

Monomials are exponent tuples; a polynomial is an immutable map from exponent
tuples to nonzero coefficients.  Rational coefficients are ``gmpy2.mpq``;
prime-field coefficients are Python ints in ``[0, p)``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from operator import add

from gmpy2 import mpq

from .errors import ParseError, PrecisionError, RingMismatch

# Exponent bound used by the packed integer order keys.
_KEY_BITS = 24
_KEY_BASE = 1 << _KEY_BITS


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """The rationals (``p == 0``) or the prime field F_p."""

    __slots__ = ("p",)

    def __init__(self, p=0):
        if p and not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p >= 2**31:
            raise ValueError("prime fields require p < 2^31")
        self.p = p

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return f"GF({self.p})" if self.p else "QQ"

    @property
    def characteristic(self):
        return self.p

    def __call__(self, x):
        p = self.p
        if isinstance(x, str):
            x = Fraction(x)
        if p:
            if isinstance(x, int):
                return x % p
            if isinstance(x, (Fraction, type(mpq(0)))):
                num, den = int(x.numerator), int(x.denominator)
                if den % p == 0:
                    raise ZeroDivisionError(f"denominator divisible by {p}")
                return num * pow(den, -1, p) % p
            return int(x) % p
        return mpq(x)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(int(a), -1, self.p)
        return 1 / mpq(a)

    def to_str(self, a):
        if self.p:
            a = int(a)
            if a > self.p // 2:
                a -= self.p
            return str(a)
        return str(a)

    def to_fraction(self, a):
        """Exact value as a Fraction (symmetric representative over F_p)."""
        if self.p:
            a = int(a)
            return Fraction(a - self.p if a > self.p // 2 else a)
        return Fraction(int(a.numerator), int(a.denominator))


QQ = Field(0)


def GF(p):
    return Field(p)


def _as_field(field):
    if isinstance(field, Field):
        return field
    if field in (None, 0, "QQ", "q", "Q"):
        return QQ
    if isinstance(field, str) and field.startswith("p:"):
        return Field(int(field[2:]))
    return Field(int(field))


class PolyRing:
    """Polynomial ring k[x_1..x_n] with a fixed monomial order.

    ``order`` is ``"lex"``, ``"grevlex"`` or ``("block", k)``; the block order
    compares the first ``k`` variables by grevlex first and breaks ties by
    grevlex on the remaining ones, so it eliminates the first block.

    ``("homog", inner)`` is used for homogenized rings whose last variable is
    the homogenizing one: total degree first, then ``inner`` on the other
    variables.
    """

    def __init__(self, variables, field=QQ, order="grevlex"):
        variables = tuple(variables)
        if not variables:
            raise ValueError("a ring needs at least one variable")
        if len(set(variables)) != len(variables):
            raise ValueError("variable names must be distinct")
        for v in variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
                raise ValueError(f"bad variable name {v!r}")
        if isinstance(order, list):
            order = tuple(order)
        if order not in ("lex", "grevlex") and not (
            isinstance(order, tuple) and order[0] == "block" and 0 < order[1] < len(variables)
        ) and not (isinstance(order, tuple) and order[0] == "homog" and len(variables) > 1):
            raise ValueError(f"unknown monomial order {order!r}")
        self.variables = variables
        self.nvars = len(variables)
        self.field = _as_field(field)
        self.order = order
        self.index = {v: i for i, v in enumerate(variables)}
        self.key = lru_cache(maxsize=None)(self._make_key())
        self._zero_exp = (0,) * self.nvars

    def _make_key(self):
        n = self.nvars
        base = _KEY_BASE

        def grevlex(exp):
            s = sum(exp)
            k = s
            for i in range(len(exp) - 1, 0, -1):
                s -= exp[i]
                k = k * base + s
            return k

        if self.order == "lex":
            def key(exp):
                k = 0
                for e in exp:
                    k = k * base + e
                return k
        elif self.order == "grevlex":
            key = grevlex
        elif self.order[0] == "homog":
            inner = PolyRing(self.variables[:-1], self.field, self.order[1]).key
            shift = base ** (n - 1)

            def key(exp):
                return sum(exp) * shift + inner(exp[:-1])
        else:
            split = self.order[1]
            shift = base ** (n - split)

            def key(exp):
                return grevlex(exp[:split]) * shift + grevlex(exp[split:])
        return key

    # identity -----------------------------------------------------------
    def __eq__(self, other):
        return self is other or (
            isinstance(other, PolyRing)
            and self.variables == other.variables
            and self.field == other.field
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.variables, self.field, self.order))

    def __reduce__(self):
        # the order key is a closure; rebuild it instead of pickling it
        return (PolyRing, (self.variables, self.field, self.order))

    def __repr__(self):
        return f"PolyRing({list(self.variables)}, {self.field!r}, {self.order!r})"

    # constructors -------------------------------------------------------
    @property
    def zero(self):
        return Polynomial(self, {})

    @property
    def one(self):
        return self.constant(1)

    def constant(self, c):
        c = self.field(c)
        return Polynomial(self, {self._zero_exp: c} if c else {})

    def monomial(self, exp, c=1):
        exp = tuple(exp)
        if len(exp) != self.nvars or any(e < 0 for e in exp):
            raise ValueError("exponent vector does not fit the ring")
        c = self.field(c)
        return Polynomial(self, {exp: c} if c else {})

    def var(self, name):
        exp = [0] * self.nvars
        exp[self.index[name]] = 1
        return Polynomial(self, {tuple(exp): self.field(1)})

    @property
    def gens(self):
        return [self.var(v) for v in self.variables]

    def __call__(self, x):
        """Coerce a string, scalar or same-named polynomial into this ring."""
        if isinstance(x, Polynomial):
            return x if x.ring == self else x.to_ring(self)
        if isinstance(x, str):
            return parse_polynomial(x, self)
        return self.constant(x)

    def parse(self, text):
        return parse_polynomial(text, self)

    # ring changes -------------------------------------------------------
    def with_order(self, order):
        return PolyRing(self.variables, self.field, order)

    def with_field(self, field):
        return PolyRing(self.variables, field, self.order)

    def fresh_name(self, stem):
        name = stem
        k = 0
        while name in self.index:
            k += 1
            name = f"{stem}{k}"
        return name


def _scalar(ring, c):
    if isinstance(c, Polynomial):
        return None
    return ring.field(c)


class Polynomial:
    __slots__ = ("ring", "terms", "_lm")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._lm = None

    @classmethod
    def from_dict(cls, ring, data):
        f = ring.field
        terms = {}
        for exp, c in data.items():
            exp = tuple(exp)
            if len(exp) != ring.nvars:
                raise ValueError("exponent length does not match ring arity")
            c = f(c)
            if c:
                terms[exp] = c
        return cls(ring, terms)

    # basic queries ------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)) or type(other) is type(mpq(0)):
            return self.terms == self.ring.constant(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and self.ring._zero_exp in self.terms)

    def constant_value(self):
        return self.terms.get(self.ring._zero_exp, self.ring.field(0))

    def is_monomial(self):
        return len(self.terms) == 1

    def leading_monomial(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        if self._lm is None:
            self._lm = max(self.terms, key=self.ring.key)
        return self._lm

    LM = property(leading_monomial)

    @property
    def LC(self):
        return self.terms[self.leading_monomial()]

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree(self, var):
        i = var if isinstance(var, int) else self.ring.index[var]
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def support(self):
        return sorted(self.terms, key=self.ring.key, reverse=True)

    def sorted_terms(self):
        key = self.ring.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def used_variables(self):
        used = set()
        for e in self.terms:
            used.update(i for i, a in enumerate(e) if a)
        return sorted(used)

    # arithmetic ---------------------------------------------------------
    def _check(self, other):
        if other.ring != self.ring:
            raise RingMismatch("polynomials live in different rings")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        p = self.ring.field.p
        terms = dict(self.terms)
        for m, c in other.terms.items():
            v = terms.get(m)
            if v is None:
                terms[m] = c
            else:
                v = v + c
                if p:
                    v %= p
                if v:
                    terms[m] = v
                else:
                    del terms[m]
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.p
        if p:
            return Polynomial(self.ring, {m: (-c) % p for m, c in self.terms.items()})
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c):
        c = self.ring.field(c)
        if not c:
            return self.ring.zero
        p = self.ring.field.p
        if p:
            return Polynomial(self.ring, {m: v * c % p for m, v in self.terms.items()})
        return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()})

    def mul_term(self, exp, c):
        """Multiply by the term ``c * x^exp``."""
        p = self.ring.field.p
        if not c:
            return self.ring.zero
        if p:
            return Polynomial(
                self.ring, {tuple(map(add, m, exp)): v * c % p for m, v in self.terms.items()}
            )
        return Polynomial(self.ring, {tuple(map(add, m, exp)): v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        if len(self.terms) < len(other.terms):
            a, b = self.terms, other.terms
        else:
            a, b = other.terms, self.terms
        p = self.ring.field.p
        out = {}
        get = out.get
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = tuple(map(add, ma, mb))
                v = get(m)
                out[m] = ca * cb if v is None else v + ca * cb
        if p:
            out = {m: c % p for m, c in out.items() if c % p}
        else:
            out = {m: c for m, c in out.items() if c}
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def monic(self):
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.LC))

    def derivative(self, var):
        i = var if isinstance(var, int) else self.ring.index[var]
        if not 0 <= i < self.ring.nvars:
            raise IndexError(f"variable index {i} out of range")
        p = self.ring.field.p
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                v = c * e
                if p:
                    v %= p
                if v:
                    out[m[:i] + (e - 1,) + m[i + 1:]] = v
        return Polynomial(self.ring, out)

    def exact_divide(self, g):
        """Return q with ``self == q * g``; raise ValueError otherwise."""
        q, r = divide(self, [g])
        if r:
            raise ValueError("division is not exact")
        return q[0]

    def divides_monomial(self, other):
        return all(a <= b for a, b in zip(self.LM, other.LM))

    # substitution -------------------------------------------------------
    def compose(self, images):
        """Substitute polynomials (all in one target ring) for the variables."""
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        target = images[0].ring
        powers = [{0: target.one, 1: img} for img in images]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = power(i, e // 2) * power(i, e - e // 2)
            return cache[e]

        out = target.zero
        for m, c in self.terms.items():
            term = target.constant(self.ring.field.to_fraction(c)) if target.field != self.ring.field else target.constant(c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    def evaluate(self, point):
        """Evaluate at a point given as field scalars (one per variable)."""
        f = self.ring.field
        vals = [f(v) for v in point]
        total = f(0)
        for m, c in self.terms.items():
            v = c
            for x, e in zip(vals, m):
                if e:
                    v = v * x**e
            total = total + v
        return f(total)

    def to_ring(self, target, mapping=None):
        """Re-express in ``target`` matching variables by name (or ``mapping``)."""
        src = self.ring
        mapping = mapping or {}
        idx = []
        for v in src.variables:
            name = mapping.get(v, v)
            idx.append(target.index.get(name))
        n = target.nvars
        out = {}
        for m, c in self.terms.items():
            new = [0] * n
            for i, e in enumerate(m):
                if e:
                    j = idx[i]
                    if j is None:
                        raise RingMismatch(f"variable {src.variables[i]} missing from target ring")
                    new[j] += e
            out[tuple(new)] = c if src.field == target.field else target.field(src.field.to_fraction(c))
        return Polynomial.from_dict(target, out) if src.field != target.field else Polynomial(target, out)

    # printing -----------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.variables
        fs = self.ring.field
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(m) if e
            )
            cs = fs.to_str(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if mono:
                body = mono if cs == "1" else f"{cs}*{mono}"
            else:
                body = cs
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"Polynomial({self})"


def divide(f, divisors):
    """Multivariate division; returns (quotients, remainder)."""
    ring = f.ring
    p = ring.field.p
    key = ring.key
    divisors = [g for g in divisors]
    for g in divisors:
        if g.ring != ring:
            raise RingMismatch("divisor in a different ring")
    leads = [(g.LM, ring.field.inv(g.LC)) if g else None for g in divisors]
    quots = [dict() for _ in divisors]
    rem = {}
    work = dict(f.terms)
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        for i, lead in enumerate(leads):
            if lead is None:
                continue
            lm, linv = lead
            if all(a >= b for a, b in zip(m, lm)):
                q = tuple(a - b for a, b in zip(m, lm))
                qc = c * linv
                if p:
                    qc %= p
                quots[i][q] = quots[i].get(q, 0) + qc
                for mg, cg in divisors[i].terms.items():
                    if mg == lm:
                        continue
                    mm = tuple(map(add, mg, q))
                    v = work.get(mm, 0) - qc * cg
                    if p:
                        v %= p
                    if v:
                        work[mm] = v
                    else:
                        work.pop(mm, None)
                break
        else:
            rem[m] = c
    qs = [Polynomial.from_dict(ring, q) for q in quots]
    return qs, Polynomial(ring, rem)


# ---------------------------------------------------------------------------
# truncated power series
# ---------------------------------------------------------------------------


class TruncatedSeries:
    """Power series in ``t`` known modulo ``t^prec``.

    ``coeffs`` is a dense list of length ``prec`` whose entries are
    polynomials of ``ring`` (constants for scalar series).  Orders at or past
    ``prec`` are never reported as exact.
    """

    __slots__ = ("ring", "coeffs", "prec")

    def __init__(self, ring, coeffs, prec=None):
        coeffs = [ring(c) if not isinstance(c, Polynomial) else c for c in coeffs]
        if prec is None:
            prec = len(coeffs)
        coeffs = (coeffs + [ring.zero] * prec)[:prec]
        self.ring = ring
        self.coeffs = coeffs
        self.prec = prec

    @classmethod
    def constant(cls, ring, c, prec):
        return cls(ring, [ring(c)], prec)

    @classmethod
    def variable(cls, ring, prec, scale=1):
        return cls(ring, [ring.zero, ring(scale)], prec)

    def valuation(self):
        """Index of the first nonzero coefficient, or None if zero mod t^prec."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def _val_or_prec(self):
        v = self.valuation()
        return self.prec if v is None else v

    def is_zero(self):
        return self.valuation() is None

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(self.ring, other, self.prec)
        prec = min(self.prec, other.prec)
        return TruncatedSeries(self.ring, [a + b for a, b in zip(self.coeffs[:prec], other.coeffs[:prec])], prec)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.ring, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.constant(self.ring, other, self.prec)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            c = self.ring(other)
            return TruncatedSeries(self.ring, [a * c for a in self.coeffs], self.prec)
        prec = min(self.prec + other._val_or_prec(), other.prec + self._val_or_prec())
        zero = self.ring.zero
        out = [zero] * prec
        a, b = self.coeffs, other.coeffs
        for i, ai in enumerate(a):
            if i >= prec:
                break
            if not ai:
                continue
            for j in range(min(len(b), prec - i)):
                bj = b[j]
                if bj:
                    out[i + j] = out[i + j] + ai * bj
        return TruncatedSeries(self.ring, out, prec)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = TruncatedSeries.constant(self.ring, 1, self.prec)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, k):
        """Multiply by ``t^k``."""
        return TruncatedSeries(self.ring, [self.ring.zero] * k + self.coeffs, self.prec + k)

    def divide_by_t(self, k):
        v = self._val_or_prec()
        if v < k:
            raise ValueError("series is not divisible by t^k")
        return TruncatedSeries(self.ring, self.coeffs[k:], self.prec - k)

    def truncate(self, n):
        """Known part modulo ``t^n``."""
        if n > self.prec:
            raise PrecisionError(f"cannot truncate precision {self.prec} to {n}")
        return TruncatedSeries(self.ring, self.coeffs[:n], n)

    def inverse(self):
        """Inverse of a unit whose constant term is a nonzero scalar."""
        c0 = self.coeffs[0] if self.prec else self.ring.zero
        if not c0 or not c0.is_constant():
            raise ValueError("series is not a unit with scalar constant term")
        inv0 = self.ring.field.inv(c0.constant_value())
        out = [self.ring.constant(inv0)]
        for k in range(1, self.prec):
            s = self.ring.zero
            for j in range(1, k + 1):
                s = s + self.coeffs[j] * out[k - j]
            out.append(-(s.scale(inv0)))
        return TruncatedSeries(self.ring, out, self.prec)

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedSeries)
            and self.prec == other.prec
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.prec, tuple(self.coeffs)))

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = str(c)
            if len(c) > 1:
                cs = f"({cs})"
            if i == 0:
                parts.append(cs)
            elif cs == "1":
                parts.append("t" if i == 1 else f"t^{i}")
            else:
                parts.append(f"{cs}*t" if i == 1 else f"{cs}*t^{i}")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(t^{self.prec})"

    def __repr__(self):
        return f"TruncatedSeries({self})"


def series_from_coeffs(ring, coeffs, prec):
    return TruncatedSeries(ring, list(coeffs), prec)


def substitute_series(f, images, precision):
    """``f(images)`` modulo ``t^precision``.

    Every image must be known to at least ``precision`` terms.
    """
    if len(images) != f.ring.nvars:
        raise ValueError("need one series per variable")
    for s in images:
        if s.prec < precision:
            raise PrecisionError(
                f"image known to t^{s.prec} but t^{precision} requested"
            )
    target = images[0].ring
    imgs = [s.truncate(precision) for s in images]
    cache = {}

    def power(i, e):
        k = (i, e)
        if k not in cache:
            if e == 1:
                cache[k] = imgs[i]
            else:
                h = e // 2
                cache[k] = power(i, h) * power(i, e - h)
        return cache[k]

    total = [target.zero] * precision
    conv = f.ring.field != target.field
    for m, c in f.terms.items():
        cc = target.field(f.ring.field.to_fraction(c)) if conv else c
        term = None
        for i, e in enumerate(m):
            if e:
                term = power(i, e) if term is None else term * power(i, e)
        if term is None:
            total[0] = total[0] + target.constant(cc)
            continue
        for k in range(precision):
            ck = term.coeffs[k] if k < term.prec else target.zero
            if ck:
                total[k] = total[k] + ck.scale(cc)
    return TruncatedSeries(target, total, precision)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*^()/]))")


def _tokenize(text):
    pos = 0
    tokens = []
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + 1
            while col <= n and text[col - 1].isspace():
                col += 1
            line = text.count("\n", 0, col - 1) + 1
            raise ParseError(f"unexpected character {text[col - 1]!r}", line, col)
        num, ident, op = m.groups()
        start = m.start(m.lastindex)
        if op == "**":
            op = "^"
        tokens.append((("num", num) if num else ("id", ident) if ident else ("op", op), start))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text, ring):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def error(self, msg, pos=None):
        if pos is None:
            pos = self.tokens[self.i][1] if self.i < len(self.tokens) else len(self.text)
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        raise ParseError(msg, line, col)

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self):
        if not self.tokens:
            self.error("empty expression", 0)
        value = self.expr()
        if self.i != len(self.tokens):
            tok = self.peek()
            if tok[0] in ("num", "id") or tok == ("op", "("):
                self.error("implicit multiplication is not allowed; use '*'")
            self.error(f"unexpected token {tok[1]!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[0][1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[0][1]
            if op == "*":
                value = value * self.unary()
            else:
                tok, pos = self.tokens[self.i] if self.i < len(self.tokens) else (None, len(self.text))
                if tok is None or tok[0] != "num":
                    self.error("only division by an integer literal is allowed", pos)
                self.take()
                d = int(tok[1])
                if d == 0:
                    self.error("division by zero", pos)
                value = value * self.ring.field(Fraction(1, d))
        return value

    def unary(self):
        tok = self.peek()
        if tok == ("op", "-"):
            self.take()
            return -self.unary()
        if tok == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            tok = self.peek()
            if tok is None or tok[0] != "num":
                self.error("exponent must be a non-negative integer literal")
            base = base ** int(self.take()[0][1])
        return base

    def atom(self):
        tok = self.peek()
        if tok is None:
            self.error("unexpected end of expression")
        kind, val = tok
        pos = self.tokens[self.i][1]
        if kind == "num":
            self.take()
            return self.ring.constant(int(val))
        if kind == "id":
            self.take()
            if val not in self.ring.index:
                self.error(f"unknown variable {val!r}", pos)
            return self.ring.var(val)
        if tok == ("op", "("):
            self.take()
            value = self.expr()
            if self.peek() != ("op", ")"):
                self.error("expected ')'")
            self.take()
            return value
        self.error(f"unexpected token {val!r}")


def parse_polynomial(text, ring):
    """Parse ``text`` such as ``"x1^2*x2 - 3*x3"`` into ``ring``."""
    return _Parser(text, ring).parse()
