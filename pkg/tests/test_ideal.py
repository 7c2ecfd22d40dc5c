from fractions import Fraction

import pytest

from adjlab import Ideal, PolyRing, QIdeal
from adjlab.ideal import (
    MonomialValuation,
    closure_equal,
    monomial_integral_closure,
    monomial_order_of_ideal,
    qideal_equivalence,
    sandwich_certificate,
)


@pytest.fixture
def R():
    return PolyRing(["x", "y", "z"])


def test_membership_and_equality(R):
    I = Ideal(["x^2", "x*y"], R)
    assert R("x^3 + x*y*z") in I
    assert R("y^2") not in I
    assert I == Ideal(["x*y", "x^2", "x^2 + x*y"], R)


def test_intersection_of_coordinate_ideals(R):
    assert Ideal(["x"], R).intersection(Ideal(["y"], R)) == Ideal(["x*y"], R)


def test_colon_and_saturation(R):
    I = Ideal(["x^2", "x*y"], R)
    assert I.quotient(Ideal(["y"], R)) == Ideal(["x"], R)
    sat, k = Ideal(["x^2*y", "x*y^2"], R).saturation(Ideal(["x"], R))
    assert sat == Ideal(["y"], R) and k == 2


def test_elimination(R):
    I = Ideal(["x - y^2", "z - y^3"], R)
    E = I.eliminate(["y"])
    assert E == Ideal(["x^3 - z^2"], R)
    assert all(g.degree(1) == 0 for g in E.gens)


def test_dimension(R):
    assert Ideal(["x*y", "x*z"], R).dimension() == 2
    assert Ideal([], R).dimension() == 3
    assert Ideal(["x", "y", "z"], R).dimension() == 0
    assert Ideal(["1"], R).dimension() == -1


def test_monomial_closure(R):
    I = Ideal(["x^2", "y^2"], R)
    assert monomial_integral_closure(I) == Ideal(["x^2", "x*y", "y^2"], R)
    assert closure_equal(I, Ideal(["x^2", "x*y", "y^2"], R))
    with pytest.raises(ValueError):
        monomial_integral_closure(Ideal(["x + y"], R))


def test_monomial_valuation_orders(R):
    v = MonomialValuation((1, 2, 3))
    assert v.of_polynomial(R("x*y + z")) == 3
    assert monomial_order_of_ideal((2, 1, 1), Ideal(["x^2", "y^3"], R)) == 3
    with pytest.raises(ValueError):
        MonomialValuation((0, 1, 1))


def test_qideal_representative_and_equivalence(R):
    Q = QIdeal([(Ideal(["x", "y"], R), Fraction(1, 2))])
    assert Q.denominator() == 2
    assert Q.representative(2) == Ideal(["x", "y"], R)
    Q2 = QIdeal([(Ideal(["x^2", "y^2"], R), Fraction(1, 4))])
    assert qideal_equivalence(Q, Q2) == "equivalent"
    assert Q.multiplicity((1, 1, 1)) == Fraction(1, 2)


def test_sandwich_reports_mismatched_bounds(R):
    I = Ideal(["x^2", "y^2"], R)
    good = sandwich_certificate(I, Ideal(["x^2", "y^2"], R), Ideal(["x", "y"], R) ** 2)
    assert good.passed
    bad = sandwich_certificate(I, Ideal(["x^2", "y^2"], R), Ideal(["x", "y"], R) ** 3)
    assert not bad.passed
