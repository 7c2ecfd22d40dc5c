"""Built-in scenarios.

Each scenario is a function ``(report, ctx)`` that records assertions on a
:class:`~adjlab.harness.report.Report`.  ``ctx`` carries the seed, the
coefficient field and scenario parameters; all randomness derives from the
seed, so a scenario is a pure function of its context.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from dataclasses import field as dc_field
from fractions import Fraction

from ..errors import Refused
from ..groebner import budget
from ..ideal import Ideal, QIdeal
from ..poly import PolyRing
from ..rng import XorShift
from .report import INCONCLUSIVE


@dataclass
class Context:
    seed: int = 0
    field: object = 0
    params: dict = dc_field(default_factory=dict)

    def get(self, key, default=None):
        v = self.params.get(key)
        return default if v is None else v


@dataclass(frozen=True)
class ScenarioInfo:
    name: str
    anchors: tuple
    runtime: str  # seconds, minutes or stretch
    stretch: bool
    func: object
    description: str

    def as_dict(self):
        from .anchors import ANCHORS

        return {
            "name": self.name,
            "anchors": [ANCHORS[a] for a in self.anchors],
            "runtime": self.runtime,
            "stretch": self.stretch,
            "description": self.description,
        }


CATALOG = {}


def scenario(name, anchors, runtime, description, stretch=False):
    def deco(fn):
        CATALOG[name] = ScenarioInfo(name, tuple(anchors), runtime, stretch, fn, description)
        return fn

    return deco


# ---------------------------------------------------------------------------
# shared fixtures
# ---------------------------------------------------------------------------


def non_lci_varieties(field=0):
    """Small reduced varieties that are not complete intersections."""
    from ..singularity import AffineSubscheme

    out = []
    R = PolyRing(["x", "y", "z", "w"], field)
    out.append(("twisted_cubic_cone", AffineSubscheme(Ideal(["x*z - y^2", "x*w - y*z", "y*w - z^2"], R))))
    R = PolyRing(["x", "y", "z"], field)
    out.append(("three_axes", AffineSubscheme(Ideal(["x*y", "y*z", "x*z"], R))))
    R = PolyRing(["x", "y", "z", "w"], field)
    out.append(("two_planes", AffineSubscheme(Ideal(["x*z", "x*w", "y*z", "y*w"], R))))
    return out


def node_pair(field=0):
    """``X = V(x - y)`` inside the node ``Y = V(x^2 - y^2)``."""
    from ..singularity import AffineSubscheme, LciSlice

    R = PolyRing(["x", "y"], field)
    X = AffineSubscheme(Ideal(["x - y"], R), "line")
    IY = Ideal(["x^2 - y^2"], R)
    return X, LciSlice(X, IY, IY.quotient(X.ideal), None)


def monomial_corpus(seed, count=48):
    """Seeded monomial pairs on ``A^N`` with ``N <= 3`` and exponents ``<= 3``."""
    from ..mld import MonomialPair

    rng = XorShift(seed)
    coeffs = [Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1), Fraction(3, 2), Fraction(2)]
    out = []
    for _ in range(count):
        N = rng.randint(1, 3)
        groups = []
        for _ in range(rng.randint(1, 2)):
            gens = set()
            for _ in range(rng.randint(1, 3)):
                u = tuple(rng.randint(0, 3) for _ in range(N))
                if any(u):
                    gens.add(u)
            if gens:
                groups.append((sorted(gens), rng.choice(coeffs)))
        out.append(MonomialPair(N, groups))
    return out


def pair_qideal(pair):
    R = PolyRing([f"x{i + 1}" for i in range(pair.arity)])
    factors = [(Ideal([R.monomial(u) for u in exps], R), a) for exps, a in pair.boundary]
    return R, QIdeal(factors) if factors else None


def _fmt(v):
    if isinstance(v, str):
        return v
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


# ---------------------------------------------------------------------------
# scenarios
# ---------------------------------------------------------------------------


@scenario("example_3_2", ["conductor_pfaffian", "incidental_identity", "incidental_entries"], "minutes",
          "pfaffian variety: incidental identity, slice conductor, defect generated by lower pfaffians")
def example_3_2(report, ctx):
    from ..pfaffian import AlternatingMatrix, incidental_matrix, sub_pfaffian, sub_pfaffians
    from ..singularity import AffineSubscheme, conductor_on_X, general_lci_slice

    n = int(ctx.get("n", 5))
    if n % 2 == 0 or n < 5:
        raise Refused("the pfaffian scenario needs an odd size n >= 5")
    M = AlternatingMatrix.generic(n, ctx.field)
    R = M.ring

    def incidental():
        # checked on the even-size matrix left after deleting one index
        incidental_matrix(M.delete([0]))
        return True, {"size": n - 1}

    report.run("pfaffian.incidental_identity", "incidental_identity", incidental)
    ps = sub_pfaffians(M, 1)
    p = [ps[(i,)] for i in range(1, n + 1)]
    X = AffineSubscheme(Ideal(p, R), f"pfaffian_{n}")

    def conductor():
        Y = general_lci_slice(X, generators=[0, 1, 2])
        got = conductor_on_X(Y)
        want = Ideal([sub_pfaffian(M, (1, 2, 3))], R) + X.ideal
        return got.equals(want), {"conductor": got, "codimension": X.codimension}

    report.run("pfaffian.conductor_123", "conductor_pfaffian", conductor)

    def defect():
        total = None
        for trip in itertools.combinations(range(n), 3):
            Y = general_lci_slice(X, generators=list(trip))
            part = conductor_on_X(Y)
            total = part if total is None else total + part
        lower = Ideal(list(sub_pfaffians(M, 3).values()), R) + X.ideal
        return total.equals(lower), {"slices": len(list(itertools.combinations(range(n), 3))), "defect": total}

    report.run("pfaffian.defect_sum", "conductor_pfaffian", defect)


@scenario("node_suite", ["slice_identity", "fiber_affine", "order_additivity", "inversion"], "seconds",
          "line inside the plane node: slice identity, fibres, additivity, inversion")
def node_suite(report, ctx):
    from ..jets import fiber_dimension_check, node_arc, order_additivity_check
    from ..mld import inversion_check
    from ..singularity import jrx_from_slice

    X, Y = node_pair(ctx.field)

    def eq3():
        res = jrx_from_slice(X, Y, 1)
        return res.status == "exact" and res.ideal.is_unit(), {"status": res.status, "jhat": res.ideal, "divisor": res.hull}

    report.run("node.slice_identity", "slice_identity", eq3)
    report.run("node.union", "slice_union", lambda: (Y.union_check(), {"residual": Y.residual}))
    arc = node_arc(8)
    for n, m in [(2, 4), (3, 5)]:
        def fib(n=n, m=m):
            r = fiber_dimension_check(Y.scheme, arc, n, m)
            return r.passed, r.as_dict()

        report.run(f"node.fiber_{n}_{m}", "fiber_affine", fib)

    def refusal():
        try:
            fiber_dimension_check(Y.scheme, arc, 0, 1)
        except Refused as exc:
            return True, {"refused": str(exc)}
        return False, {"refused": False}

    report.run("node.fiber_refusal_0_1", "fiber_hypothesis", refusal)

    def additivity():
        r = order_additivity_check(X, Y, arc, 1)
        return (None if r.status == INCONCLUSIVE else r.status == "pass"), r.as_dict()

    report.run("node.order_additivity", "order_additivity", additivity)

    def inversion():
        r = inversion_check(X)
        return r.passed, r.as_dict()

    report.run("node.inversion", "inversion", inversion)


@scenario("prop_4_3", ["fiber_affine", "fiber_hypothesis"], "seconds",
          "fibre of jet truncation over an arc on a complete intersection is an affine space")
def prop_4_3(report, ctx):
    from ..jets import elementary_divisors_along_arc, fiber_dimension_check, lci_corpus, node_arc, sample_lci_arc

    _, Y = node_pair(ctx.field)
    arc = node_arc(8)
    for n, m in [(2, 4), (3, 5)]:
        def fib(n=n, m=m):
            r = fiber_dimension_check(Y.scheme, arc, n, m)
            return r.passed and r.e == 1, r.as_dict()

        report.run(f"prop43.node_{n}_{m}", "fiber_affine", fib)

    def refusal():
        try:
            fiber_dimension_check(Y.scheme, arc, 0, 1)
        except Refused as exc:
            return True, {"refused": str(exc)}
        return False, {"refused": False}

    report.run("prop43.node_refusal_0_1", "fiber_hypothesis", refusal)
    corpus = lci_corpus()
    cases = int(ctx.get("cases", 14))
    prec = 24
    for k in range(cases):
        entry = corpus[k % len(corpus)]
        seed = ctx.seed * 1000 + k

        def case(entry=entry, seed=seed, k=k):
            arc = sample_lci_arc(entry, seed, prec)
            e = sum(elementary_divisors_along_arc(entry[1], arc))
            n = max(e, 1) + k % 2
            m = n + max(e, 1) + (k // len(corpus)) % 2
            if m + 1 > prec:
                return None, {"skipped": "precision", "e": e}
            r = fiber_dimension_check(entry[1], arc, n, m)
            return r.passed, dict(r.as_dict(), name=entry[0], n=n, m=m, seed=seed)

        report.run(f"prop43.case_{k:02d}", "fiber_affine", case)


@scenario("eq3_random", ["slice_identity", "slice_union"], "seconds",
          "slice identity on seeded complete-intersection slices of non-l.c.i. varieties")
def eq3_random(report, ctx):
    from ..singularity import general_lci_slice, jrx_from_slice

    seeds = int(ctx.get("slices", 5))
    for name, X in non_lci_varieties(ctx.field):
        first = None
        for k in range(seeds):
            s = ctx.seed * 7919 + k

            def one(X=X, s=s):
                nonlocal first
                Y = general_lci_slice(X, s)
                res = jrx_from_slice(X, Y, 1)
                if first is None:
                    first = res.ideal
                same = res.ideal.equals(first)
                ok = Y.union_check() and res.status in ("exact", "saturated") and same
                return ok, {"seed": s, "status": res.status, "jhat": res.ideal, "slice_independent": same}

            report.run(f"eq3.{name}.slice_{k}", "slice_identity", one)


@scenario("inversion_subspace", ["inversion", "mld_lc"], "seconds",
          "both sides of the inversion equality on linear subspaces")
def inversion_subspace(report, ctx):
    from ..mld import MonomialPair, inversion_check, mld_monomial, verify_direction
    from ..singularity import AffineSubscheme

    for d, c in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 2)]:
        def sub(d=d, c=c):
            R = PolyRing([f"x{i + 1}" for i in range(d + c)], ctx.field)
            X = AffineSubscheme(Ideal([f"x{i + 1}" for i in range(c)], R))
            r = inversion_check(X)
            return r.passed and r.left == d, r.as_dict()

        report.run(f"inversion.subspace_d{d}_c{c}", "inversion", sub)

    def node():
        X, _ = node_pair(ctx.field)
        r = inversion_check(X)
        return r.passed and r.left == 1, r.as_dict()

    report.run("inversion.node_in_plane", "inversion", node)

    def point():
        R = PolyRing(["x"], ctx.field)
        try:
            inversion_check(AffineSubscheme(Ideal(["x"], R)))
        except Refused as exc:
            return True, {"refused": str(exc)}
        return False, {}

    report.run("inversion.point_refused", "inversion", point)

    def line_convention():
        pair = MonomialPair(1, [([(1,)], 2)])
        r = mld_monomial(pair)
        return r.is_neg_inf and verify_direction(pair, r.direction), r.as_dict()

    report.run("inversion.dimension_one_convention", "mld_lc", line_convention)


@scenario("mld_corpus", ["mld_lc"], "seconds",
          "exact mld oracle against brute force over a weight box")
def mld_corpus(report, ctx):
    from ..mld import MonomialPair, brute_force_mld, mld_monomial, mld_toric_quotient, verify_direction

    for N in range(1, 7):
        report.run(f"mld.empty_N{N}", "mld_lc",
                   lambda N=N: ((v := mld_monomial(MonomialPair(N, [])).value) == N, {"value": v}))
    report.run("mld.xy_plane", "mld_lc",
               lambda: ((v := mld_monomial(MonomialPair(2, [([(1, 1)], 1)])).value) == 0, {"value": v}))
    report.run("mld.quotient_third", "mld_lc",
               lambda: ((v := mld_toric_quotient(MonomialPair(3, [], 3, (1, 1, 1))).value) == 1, {"value": v}))
    box = int(ctx.get("box", 8))
    corpus = monomial_corpus(ctx.seed, int(ctx.get("cases", 48)))

    def agreement():
        bad, neg, attained = [], 0, 0
        for i, pair in enumerate(corpus):
            res = mld_monomial(pair)
            brute, _ = brute_force_mld(pair, box)
            if res.is_neg_inf:
                neg += 1
                if not verify_direction(pair, res.direction):
                    bad.append(i)
                continue
            in_box = all(0 < x <= box for x in res.witness)
            attained += in_box
            if brute < res.value or (in_box and brute != res.value):
                bad.append(i)
        return not bad, {"cases": len(corpus), "discrepancies": bad, "neg_inf": neg, "witness_in_box": attained}

    report.run("mld.brute_force_agreement", "mld_lc", agreement)


@scenario("jet_estimate_cross", ["jet_criterion", "mld_bound"], "minutes",
          "jet-level contact loci never certify a bound below the exact mld")
def jet_estimate_cross(report, ctx):
    from ..mld import mld_jet_estimate, mld_monomial

    corpus = monomial_corpus(ctx.seed, int(ctx.get("cases", 48)))
    n_max = int(ctx.get("levels", 6))

    def cross():
        false, tight = [], 0
        for i, pair in enumerate(corpus):
            oracle = mld_monomial(pair).value
            R, Q = pair_qideal(pair)
            Z = Ideal(list(R.gens), R)
            est = mld_jet_estimate(Q, Z, n_max)
            if not est.consistent_with(oracle):
                false.append(i)
            elif oracle != "-inf" and est.best_upper == oracle:
                tight += 1
        return not false, {"cases": len(corpus), "false_certificates": false, "tight": tight, "levels": n_max}

    report.run("jets.no_false_certificate", "jet_criterion", cross)


@scenario("example_3_1_toric", ["j1_quotient", "jacobian_sandwich", "defect_quotient", "inversion"], "minutes",
          "quotient point 1/3(1,1,1) through its monomial parametrization")
def example_3_1_toric(report, ctx):
    from ..mld import MonomialPair, mld_toric_quotient
    from ..toric import DEFAULT_PRIME, VeroneseCone, quotient_singularity_report

    p = ctx.field if ctx.field else DEFAULT_PRIME
    cone = VeroneseCone(3, 3, p)
    state = {}

    def full():
        state["r"] = quotient_singularity_report(cone, ctx.seed)
        return state["r"].sandwich.passed, dict(state["r"].as_dict(), prime=p)

    report.run("toric.jacobian_sandwich", "jacobian_sandwich", full)
    r = state.get("r")
    if r is None:
        return
    report.run("toric.j1_closure_m2", "j1_quotient",
               lambda: (r.j1_closure_is_m2, {"generators": len(r.j1_exponents)}))
    report.run("toric.jhat_closure_m2", "j1_quotient",
               lambda: (r.hat_closure_is_m2, {"conductor_degree": r.conductor_degree}))
    report.run("toric.defect_closure_m5", "defect_quotient",
               lambda: (r.defect_closure_is_m5, {"generators": len(r.defect_exponents)}))

    def x_side():
        # D_X = m^5 pulls back to the invariant monomials of degree 15
        pair = MonomialPair(3, [(cone.power_of_max_ideal(5), 1)], 3, (1, 1, 1))
        res = mld_toric_quotient(pair)
        # the ambient side is not monomial; only the value it is predicted to share is recorded
        return None, {"x_side": res.as_dict(), "ambient_prediction": _fmt(res.value), "ambient_verified": False}

    report.run("toric.inversion_x_side", "inversion", x_side)


@scenario("example_3_1_embedded_modp", ["jacobian_sandwich"], "stretch",
          "pivot Jacobian minors of the cubic Veronese cone in A^10 over a prime field", stretch=True)
def example_3_1_embedded_modp(report, ctx):
    from ..matrix import det, jacobian_matrix
    from ..toric import DEFAULT_PRIME, VeroneseCone, pivot_minor

    p = ctx.field if ctx.field else DEFAULT_PRIME
    cone = VeroneseCone(3, 3, p)
    IX = cone.ideal()
    Z = cone.zring
    J = jacobian_matrix(IX.gens, Z.variables)
    limit = ctx.get("time_budget") or 600
    for i in range(cone.n):
        def one(i=i):
            with budget(time_budget=limit):
                rows, cols, m = pivot_minor(cone, i)
                mz = det([[J[r][c] for c in cols] for r in rows])
                target = Z.monomial(tuple(7 if a == tuple(3 if j == i else 0 for j in range(3)) else 0
                                          for a in cone.alphas), m.LC)
                diff = mz - target
                return IX.contains(diff), {"index": i + 1, "coefficient": str(m.LC), "prime": p,
                                           "minor_is_pure_power": not diff}

        report.run(f"embedded.pivot_minor_{i + 1}", "jacobian_sandwich", one, budget_status=INCONCLUSIVE)


DEFAULT_SUITE = [n for n in ("example_3_1_toric", "example_3_2", "node_suite", "prop_4_3", "eq3_random",
                             "inversion_subspace", "mld_corpus", "jet_estimate_cross")]


def catalog(include_stretch=True):
    return [info for name, info in sorted(CATALOG.items()) if include_stretch or not info.stretch]
