import pytest

from adjlab import GenericityError, Ideal, PolyRing
from adjlab.singularity import (
    AffineSubscheme,
    LciSlice,
    conductor_on_X,
    divisorial_power,
    general_lci_slice,
    jacobian_ideal,
    jacobian_minors,
    jrx_from_slice,
    weak_defect_colon,
    weak_defect_sum,
)


def cubic_cone():
    R = PolyRing(["x", "y", "z", "w"])
    return AffineSubscheme(Ideal(["x*z - y^2", "x*w - y*z", "y*w - z^2"], R))


def node():
    R = PolyRing(["x", "y"])
    X = AffineSubscheme(Ideal(["x - y"], R))
    IY = Ideal(["x^2 - y^2"], R)
    return X, LciSlice(X, IY, IY.quotient(X.ideal), None)


def test_node_slice_conductor_and_identity():
    X, Y = node()
    assert Y.residual == Ideal(["x + y"], X.ring)
    assert conductor_on_X(Y) == Ideal(["x", "y"], X.ring)
    res = jrx_from_slice(X, Y, 1)
    assert res.status == "exact" and res.ideal.is_unit()


def test_jacobian_ideal_of_cusp_is_maximal_ideal_primary():
    R = PolyRing(["x", "y"])
    X = AffineSubscheme(Ideal(["y^2 - x^3"], R))
    J = jacobian_ideal(X)
    assert J == Ideal(["y^2 - x^3", "x^2", "y"], R)


def test_minor_sampling_matches_exhaustive_ideal():
    X = cubic_cone()
    full = jacobian_minors(X.gens, 2)
    assert full.exhaustive
    from adjlab import budget

    with budget(minor_cap=2):
        sampled = jacobian_minors(X.gens, 2, seed=3, modulo=X.ideal)
    assert not sampled.exhaustive
    assert Ideal(sampled.minors, X.ring) + X.ideal == Ideal(full.minors, X.ring) + X.ideal


def test_general_slice_is_validated_and_seed_deterministic():
    X = cubic_cone()
    a = general_lci_slice(X, seed=11)
    b = general_lci_slice(X, seed=11)
    assert a.ideal == b.ideal and a.coefficients == b.coefficients
    assert a.union_check()
    assert a.ideal.dimension() == X.dimension


def test_bad_fixed_slice_raises_genericity_error():
    R = PolyRing(["x", "y", "z"])
    X = AffineSubscheme(Ideal(["x*y", "y*z", "x*z"], R))
    with pytest.raises(GenericityError):
        general_lci_slice(X, generators=[0, 0])


def test_hull_of_conductor_power_is_independent_of_choice():
    X = cubic_cone()
    Y = general_lci_slice(X, seed=5)
    hull = divisorial_power(conductor_on_X(Y), 1, X)
    assert hull.independent
    assert X.ideal.is_subset(hull.ideal)


def test_hull_of_cube_of_maximal_ideal_on_cubic_cone_is_everything():
    X = cubic_cone()
    m = Ideal(list(X.ring.gens), X.ring)
    assert divisorial_power(m, 3, X).ideal.is_unit()


def test_defect_sum_and_colon_on_cubic_cone():
    X = cubic_cone()
    total = weak_defect_sum(X, 1, seeds=[1, 2, 3, 4])
    assert total.stabilized
    res = jrx_from_slice(X, general_lci_slice(X, seed=1), 1)
    colon = weak_defect_colon(X, 1, res.ideal)
    assert X.ideal.is_subset(colon)


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_slice_identity_on_cubic_cone(seed):
    X = cubic_cone()
    res = jrx_from_slice(X, general_lci_slice(X, seed=seed), 1)
    assert res.status in ("exact", "saturated")
