"""Minimal log discrepancies of monomial pairs, exact and from jets.

The exact value comes from a linear program over weight vectors.  The jet
side only ever produces upper bounds, taken from dimensions of contact
loci at finite level.  The two are compared on a few pairs on A^2.

    python demos/mld_and_jets.py
"""

from fractions import Fraction

from adjlab.harness.scenarios import pair_qideal
from adjlab.ideal import Ideal
from adjlab.mld import MonomialPair, brute_force_mld, mld_jet_estimate, mld_monomial

PAIRS = {
    "no boundary": MonomialPair(2, []),
    "(xy)": MonomialPair(2, [([(1, 1)], 1)]),
    "(x^2, y^3) to the 5/6": MonomialPair(2, [([(2, 0), (0, 3)], Fraction(5, 6))]),
    "(x, y) cubed": MonomialPair(2, [([(1, 0), (0, 1)], 3)]),
}

for name, pair in PAIRS.items():
    exact = mld_monomial(pair)
    brute, _ = brute_force_mld(pair, 8)
    R, Q = pair_qideal(pair)
    est = mld_jet_estimate(Q, Ideal(list(R.gens), R), 4)
    w = exact.witness or exact.direction
    w = "(" + ", ".join(str(c) for c in w) + ")"
    print(f"{name}:")
    print(f"    linear program : {exact.value}  witness {w}")
    print(f"    weights <= 8   : {brute}")
    print(f"    jets, level 4  : mld <= {est.best_upper}  (level, order, dim) = {est.witness}")
