import pytest

from adjlab.newton import same_closure
from adjlab.toric import (
    VeroneseCone,
    defect_sum_span,
    jacobian_of_parametrization,
    monomial_colon,
    monomials_of_degree,
    pivot_minor,
    quotient_singularity_report,
)


def test_cubic_veronese_cone_data():
    cone = VeroneseCone(3, 3)
    assert cone.ambient_dim == 10 and cone.codimension == 7
    assert len(cone.relations) == 27
    I = cone.ideal()
    # every relation pulls back to zero along the parametrization
    assert all(cone.transport(g).is_zero() for g in I.gens)


@pytest.mark.parametrize("i", [0, 1, 2])
def test_pivot_minors_are_pure_powers(i):
    cone = VeroneseCone(3, 3)
    _, _, m = pivot_minor(cone, i)
    want = tuple(21 if j == i else 0 for j in range(3))
    assert m.is_monomial() and m.LM == want


def test_parametrization_minors_generate_m2_on_quotient():
    cone = VeroneseCone(3, 3)
    exps = {m.LM for m in jacobian_of_parametrization(cone).values()}
    assert all(sum(e) == 6 for e in exps)
    assert same_closure(sorted(exps), cone.power_of_max_ideal(2))


def test_hypersurface_cone_has_trivial_defect():
    # the cone over a conic is a hypersurface, so its defect is trivial
    cone = VeroneseCone(2, 2)
    rep = quotient_singularity_report(cone)
    assert rep.sandwich.passed
    assert rep.defect_exponents == [(0, 0)]
    assert same_closure(rep.j1_exponents, cone.power_of_max_ideal(1))


def test_monomial_colon_on_a_sublattice():
    lat = lambda u: sum(u) % 2 == 0  # noqa: E731
    num = monomials_of_degree(6, 2)
    den = monomials_of_degree(2, 2)
    got = monomial_colon(num, den, lat, 8)
    assert same_closure(got, monomials_of_degree(4, 2))


def test_conductor_span_on_small_cone():
    cone = VeroneseCone(2, 3)
    rank, total = defect_sum_span(cone, seeds=[1, 2, 3, 4, 5, 6])
    assert 1 <= rank <= total
