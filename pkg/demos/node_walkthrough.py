"""The line x = y inside the node x^2 = y^2.

Walks through the checks the ``node_suite`` scenario runs, printing the
intermediate objects instead of only pass/fail.

    python demos/node_walkthrough.py
"""

from adjlab import Ideal, PolyRing
from adjlab.jets import fiber_dimension_check, node_arc, order_additivity_check
from adjlab.mld import inversion_check
from adjlab.singularity import AffineSubscheme, LciSlice, jrx_from_slice

R = PolyRing(["x", "y"])
X = AffineSubscheme(Ideal(["x - y"], R), "line")
IY = Ideal(["x^2 - y^2"], R)
Y = LciSlice(X, IY, IY.quotient(X.ideal), None)

print("residual component of the node:", Y.residual)
print("X and the residual component recover the node:", Y.union_check())

res = jrx_from_slice(X, Y, 1)
print(f"Jacobian comparison on X: status {res.status}, unit ideal: {res.ideal.is_unit()}")

arc = node_arc(8)
print("test arc:", arc)
for n, m in [(2, 4), (3, 5)]:
    rep = fiber_dimension_check(Y.scheme, arc, n, m)
    print(f"fiber of level {m} jets over the level {n} truncation:", rep.as_dict())

add = order_additivity_check(X, Y, arc, 1)
print("order additivity along the arc:", add.as_dict())

inv = inversion_check(X)
print("minimal log discrepancy on X and on the ambient plane:", inv.as_dict())
