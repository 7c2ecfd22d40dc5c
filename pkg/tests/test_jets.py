from fractions import Fraction

import pytest

from adjlab import Ideal, PolyRing, PrecisionError, QIdeal, Refused
from adjlab.jets import (
    TruncatedArc,
    arc_order,
    contact_locus_dim,
    elementary_divisors_along_arc,
    fiber_dimension_check,
    image_stabilization_probe,
    jet_ideal,
    lci_corpus,
    node_arc,
    order_additivity_check,
    sample_lci_arc,
    truncate_jet,
)
from adjlab.singularity import AffineSubscheme, LciSlice


def node():
    R = PolyRing(["x", "y"])
    return AffineSubscheme(Ideal(["x^2 - y^2"], R))


def test_jet_ideal_dimensions():
    R = PolyRing(["x", "y"])
    cross = AffineSubscheme(Ideal(["x*y"], R))
    assert jet_ideal(cross, 0).dimension() == 1
    assert jet_ideal(cross, 1).dimension() == 2
    R1 = PolyRing(["x", "y"])
    line = AffineSubscheme(Ideal(["x"], R1))
    assert jet_ideal(line, 3).dimension() == 4


def test_orders_along_node_arc():
    Y = node()
    arc = node_arc(8)
    assert arc_order(Ideal(["x^2 - y^2", "x"], Y.ring), arc).value == 1
    Q = QIdeal([(Ideal(["x", "y"], Y.ring), Fraction(3, 2))])
    assert arc_order(Q, arc).value == Fraction(3, 2)
    zero = arc_order(Ideal(["x - y"], Y.ring), arc)
    assert not zero.exact and zero.as_json() == "at-least(8)"


def test_elementary_divisors_of_node():
    assert elementary_divisors_along_arc(node(), node_arc(8)) == [1]


@pytest.mark.parametrize("n,m", [(2, 4), (3, 5), (1, 2)])
def test_node_fibres_are_affine_spaces(n, m):
    rep = fiber_dimension_check(node(), node_arc(8), n, m)
    assert rep.passed and rep.measured == (m - n) + 1


def test_fibre_check_refuses_outside_hypothesis():
    with pytest.raises(Refused):
        fiber_dimension_check(node(), node_arc(8), 0, 1)


def test_fibre_check_needs_enough_precision():
    with pytest.raises(PrecisionError):
        fiber_dimension_check(node(), node_arc(4), 2, 4)


def test_truncation_levels():
    arc = node_arc(8)
    assert truncate_jet(arc, 7, 3).precision == 4
    with pytest.raises(ValueError):
        truncate_jet(arc, 3, 5)


def test_contact_loci_of_cross():
    R = PolyRing(["x", "y"])
    I = Ideal(["x*y"], R)
    assert contact_locus_dim(I, 1, 1).dimension == 3
    Z = Ideal(["x", "y"], R)
    assert contact_locus_dim(I, 2, 1, Z).dimension == 2


def test_truncation_image_stabilizes_for_node():
    rep = image_stabilization_probe(node(), 0, [1, 2, 3, 4])
    assert rep.stable_from is not None


def test_additivity_on_node():
    R = PolyRing(["x", "y"])
    X = AffineSubscheme(Ideal(["x - y"], R))
    IY = Ideal(["x^2 - y^2"], R)
    Y = LciSlice(X, IY, IY.quotient(X.ideal), None)
    rep = order_additivity_check(X, Y, node_arc(8))
    assert rep.status == "pass"
    assert rep.lhs.value == 1 and rep.j_part.value == 0 and rep.d_part.value == 1


@pytest.mark.parametrize("k", range(7))
def test_corpus_arcs_lie_on_their_schemes(k):
    entry = lci_corpus()[k]
    arc = sample_lci_arc(entry, seed=k, prec=16)
    assert arc.lies_on(entry[1].gens)
    assert isinstance(arc, TruncatedArc)
