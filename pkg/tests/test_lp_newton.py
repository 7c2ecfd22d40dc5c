from fractions import Fraction

from adjlab.lp import feasible, linprog
from adjlab.newton import NewtonPolyhedron, closure_exponents, in_newton_polyhedron, same_closure, vertices


def test_lp_optimum_is_exact():
    # min -x - y  s.t. x + 2y <= 4, 3x + y <= 6
    res = linprog([-1, -1], A_ub=[[1, 2], [3, 1]], b_ub=[4, 6])
    assert res.status == "optimal"
    assert res.value == Fraction(-14, 5)
    assert res.x == [Fraction(8, 5), Fraction(6, 5)]


def test_lp_detects_unbounded_and_infeasible():
    assert linprog([-1, 0], A_ub=[[0, 1]], b_ub=[1]).status == "unbounded"
    assert linprog([1], A_ub=[[1]], b_ub=[-1]).status == "infeasible"
    assert not feasible(A_ub=[[1, 1]], b_ub=[-1], n=2)


def test_lp_respects_lower_and_upper_bounds():
    res = linprog([1, 1], lb=[2, 3], ub=[5, None])
    assert res.value == 5


def test_newton_membership():
    exps = [(2, 0), (0, 2)]
    assert in_newton_polyhedron(exps, (1, 1))
    assert not in_newton_polyhedron(exps, (1, 0))
    assert (3, 0) in NewtonPolyhedron(exps)


def test_vertices_drop_interior_and_dominated_points():
    assert vertices([(3, 0), (0, 3), (1, 1), (2, 2), (1, 2)]) == [(0, 3), (1, 1), (3, 0)]
    assert vertices([(3, 0), (0, 3), (2, 1), (1, 2)]) == [(0, 3), (3, 0)]


def test_closure_exponents_and_sublattice():
    assert closure_exponents([(2, 0), (0, 2)]) == [(0, 2), (1, 1), (2, 0)]
    # on the sublattice of even total degree the closure of (x^4, y^4) is m^4
    lat = lambda u: sum(u) % 2 == 0  # noqa: E731
    got = closure_exponents([(4, 0), (0, 4)], lattice=lat, pad=2)
    assert same_closure(got, [(4, 0), (3, 1), (2, 2), (1, 3), (0, 4)])
