"""Input documents: a ring, named ideals and a list of tasks.

A document is JSON::

    {"ring": {"vars": ["x", "y"], "char": 0},
     "ideals": {"I": ["x^2", "x*y"], "J": ["y"]},
     "tasks": [{"op": "quotient", "args": {"left": "I", "right": "J"},
                "store": "K", "expect": ["x"]}]}

Errors carry 1-based line and column positions in the document text.
"""

from __future__ import annotations

import json
from fractions import Fraction

from ..errors import ParseError, Refused
from ..ideal import Ideal
from ..poly import PolyRing, parse_polynomial
from .report import jsonable


def _position(text, offset):
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _locate(text, fragment, inner=None):
    """Line/column of a JSON string literal (plus an offset inside it) in ``text``."""
    needle = json.dumps(fragment)
    at = text.find(needle)
    if at < 0:
        return None, None
    return _position(text, at + 1 + ((inner or 1) - 1))


class Document:
    def __init__(self, data, text=""):
        self.text = text
        self.data = data
        if not isinstance(data, dict):
            raise ParseError("document must be an object", 1, 1)
        ring = data.get("ring")
        if not isinstance(ring, dict) or not isinstance(ring.get("vars"), list) or not ring["vars"]:
            line, col = _locate(text, "ring")
            raise ParseError("missing or malformed 'ring' section (needs a non-empty 'vars' list)", line, col)
        char = ring.get("char", 0)
        try:
            self.ring = PolyRing([str(v) for v in ring["vars"]], char, ring.get("order", "grevlex"))
        except (ValueError, TypeError) as exc:
            line, col = _locate(text, "ring")
            raise ParseError(f"bad ring: {exc}", line, col) from None
        self.ideals = {}
        for name, gens in (data.get("ideals") or {}).items():
            if not isinstance(gens, list):
                line, col = _locate(text, name)
                raise ParseError(f"ideal {name!r} must be a list of polynomial strings", line, col)
            self.ideals[name] = Ideal([self.poly(g) for g in gens], self.ring)
        self.tasks = data.get("tasks") or []
        if not isinstance(self.tasks, list):
            line, col = _locate(text, "tasks")
            raise ParseError("'tasks' must be a list", line, col)
        for i, t in enumerate(self.tasks):
            if not isinstance(t, dict) or t.get("op") not in OPS:
                op = t.get("op") if isinstance(t, dict) else None
                line, col = _locate(text, op) if isinstance(op, str) else (None, None)
                raise ParseError(f"task {i}: unknown op {op!r}", line, col)

    def poly(self, s):
        if not isinstance(s, str):
            s = str(s)
        try:
            return parse_polynomial(s, self.ring)
        except ParseError as exc:
            line, col = _locate(self.text, s, exc.column)
            raise ParseError(f"in {s!r}: {exc.message}", line, col) from None

    def ideal(self, ref):
        if isinstance(ref, str):
            if ref not in self.ideals:
                line, col = _locate(self.text, ref)
                raise ParseError(f"unknown ideal {ref!r}", line, col)
            return self.ideals[ref]
        if isinstance(ref, list):
            return Ideal([self.poly(g) for g in ref], self.ring)
        raise ParseError(f"cannot read an ideal from {ref!r}")


def parse_document(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return Document(data, text)


def load_document(path):
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read())


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def _frac(x):
    return Fraction(x) if not isinstance(x, Fraction) else x


def _scheme(doc, args, key="ideal"):
    from ..singularity import AffineSubscheme

    return AffineSubscheme(doc.ideal(args[key]))


def op_groebner(doc, a):
    return doc.ideal(a["ideal"])


def op_sum(doc, a):
    return doc.ideal(a["left"]) + doc.ideal(a["right"])


def op_product(doc, a):
    return doc.ideal(a["left"]) * doc.ideal(a["right"])


def op_power(doc, a):
    return doc.ideal(a["ideal"]) ** int(a["exponent"])


def op_intersection(doc, a):
    return doc.ideal(a["left"]).intersection(doc.ideal(a["right"]))


def op_quotient(doc, a):
    return doc.ideal(a["left"]).quotient(doc.ideal(a["right"]))


def op_saturation(doc, a):
    sat, k = doc.ideal(a["left"]).saturation(doc.ideal(a["right"]))
    return {"ideal": sat, "exponent": k}


def op_eliminate(doc, a):
    return doc.ideal(a["ideal"]).eliminate(a["vars"])


def op_dimension(doc, a):
    return doc.ideal(a["ideal"]).dimension()


def op_contains(doc, a):
    return doc.ideal(a["ideal"]).contains(doc.poly(a["poly"]))


def op_equal(doc, a):
    return doc.ideal(a["left"]).equals(doc.ideal(a["right"]))


def op_integral_closure(doc, a):
    from ..ideal import monomial_integral_closure

    return monomial_integral_closure(doc.ideal(a["ideal"]))


def op_jacobian(doc, a):
    from ..singularity import jacobian_ideal

    return jacobian_ideal(_scheme(doc, a), seed=int(a.get("seed", 0)))


def op_conductor(doc, a):
    from ..singularity import conductor_on_X, general_lci_slice

    X = _scheme(doc, a, "X")
    Y = general_lci_slice(X, seed=a.get("seed"), generators=a.get("generators"))
    return conductor_on_X(Y)


def op_jrx(doc, a):
    from ..singularity import general_lci_slice, jrx_from_slice

    X = _scheme(doc, a, "X")
    Y = general_lci_slice(X, seed=a.get("seed"), generators=a.get("generators"))
    res = jrx_from_slice(X, Y, int(a.get("r", 1)))
    return {"ideal": res.ideal, "status": res.status}


def _pair(a, ring=None):
    from ..mld import MonomialPair

    N = int(a.get("N", ring.nvars if ring else 0))
    boundary = []
    for item in a.get("boundary", []):
        exps = item.get("exponents")
        if exps is None and ring is not None:
            exps = [parse_polynomial(g, ring).LM for g in item["gens"]]
        boundary.append(([tuple(u) for u in exps], _frac(item.get("coefficient", 1))))
    q = a.get("quotient")
    if q:
        return MonomialPair(N, boundary, int(q["m"]), tuple(q["weights"]))
    return MonomialPair(N, boundary)


def op_mld_monomial(doc, a):
    from ..mld import mld_monomial, mld_toric_quotient

    pair = _pair(a, doc.ring if doc else None)
    res = mld_toric_quotient(pair) if pair.is_quotient else mld_monomial(pair)
    return res.as_dict()


def op_inversion_check(doc, a):
    from ..mld import inversion_check

    r = inversion_check(_scheme(doc, a))
    return r.as_dict()


def op_fiber_dimension(doc, a):
    from ..jets import TruncatedArc, fiber_dimension_check

    Y = _scheme(doc, a)
    arc = TruncatedArc.from_lists(doc.ring, a["arc"])
    return fiber_dimension_check(Y, arc, int(a["n"]), int(a["m"])).as_dict()


OPS = {
    "groebner": op_groebner,
    "sum": op_sum,
    "product": op_product,
    "power": op_power,
    "intersection": op_intersection,
    "quotient": op_quotient,
    "saturation": op_saturation,
    "eliminate": op_eliminate,
    "dimension": op_dimension,
    "contains": op_contains,
    "equal": op_equal,
    "integral_closure": op_integral_closure,
    "jacobian": op_jacobian,
    "conductor": op_conductor,
    "jrx": op_jrx,
    "mld_monomial": op_mld_monomial,
    "inversion_check": op_inversion_check,
    "fiber_dimension": op_fiber_dimension,
}

# ops whose result carries its own verdict under the key "pass"
_SELF_CHECKING = {"inversion_check", "fiber_dimension"}


def _matches(doc, result, expect):
    if isinstance(result, Ideal):
        if isinstance(expect, list):
            return result.equals(Ideal([doc.poly(g) for g in expect], doc.ring))
        return result.equals(doc.ideal(expect))
    got = jsonable(result)
    if isinstance(got, dict) and not isinstance(expect, dict):
        got = got.get("value", got)
    if isinstance(expect, (int, float)) and not isinstance(expect, bool) and isinstance(got, str):
        try:
            return Fraction(got) == Fraction(str(expect))
        except ValueError:
            return False
    if isinstance(expect, dict) and isinstance(got, dict):
        return all(jsonable(got.get(k)) == v for k, v in expect.items())
    return got == expect


def run_document(doc, report):
    for i, task in enumerate(doc.tasks):
        op = task["op"]
        args = task.get("args", {})
        tid = task.get("id") or f"task_{i:03d}_{op}"

        def work(op=op, args=args, task=task):
            try:
                result = OPS[op](doc, args)
            except Refused as exc:
                if task.get("expect") == "refused":
                    return True, {"refused": str(exc)}
                raise
            except KeyError as exc:
                raise ParseError(f"op {op!r} is missing argument {exc.args[0]!r}") from None
            if task.get("store") and isinstance(result, Ideal):
                doc.ideals[task["store"]] = result
            witness = {"result": result}
            if "expect" in task:
                return _matches(doc, result, task["expect"]), witness
            if op in _SELF_CHECKING:
                return bool(result.get("pass")), witness
            return True, witness

        report.run(tid, task.get("anchor", ""), work)
