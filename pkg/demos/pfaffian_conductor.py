"""Conductor of a three-equation slice of the 5x5 pfaffian variety.

X is cut out by the five 4x4 sub-pfaffians of a generic alternating 5x5
matrix.  Keeping three of those equations gives a complete intersection Y
containing X.  The script computes the conductor (I_Y : I_X) + I_X and
compares it with the ideal of the 2x2 pfaffian on the same three indices.

    python demos/pfaffian_conductor.py
"""

import time

from adjlab import GF, Ideal
from adjlab.pfaffian import AlternatingMatrix, sub_pfaffian, sub_pfaffians
from adjlab.singularity import AffineSubscheme, conductor_on_X, general_lci_slice


def main(field=GF(32003)):
    M = AlternatingMatrix.generic(5, field)
    R = M.ring
    ps = sub_pfaffians(M, 1)
    X = AffineSubscheme(Ideal([ps[(i,)] for i in range(1, 6)], R), "pfaffian_5")
    print(f"ring: {len(R.variables)} variables over {R.field!r}")
    print(f"X has codimension {X.codimension}")

    start = time.monotonic()
    Y = general_lci_slice(X, generators=[0, 1, 2])
    cond = conductor_on_X(Y)
    expected = Ideal([sub_pfaffian(M, (1, 2, 3))], R) + X.ideal
    print("conductor generators:")
    for g in cond.gens:
        print("   ", g)
    print("equals p_123 + I_X:", cond.equals(expected))
    print(f"took {time.monotonic() - start:.2f}s")


if __name__ == "__main__":
    main()
