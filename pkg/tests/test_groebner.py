import pytest

from adjlab import BudgetExceeded, PolyRing, budget
from adjlab.groebner import buchberger, is_groebner, normal_form


def test_cyclic3_basis_is_groebner_and_reduced():
    R = PolyRing(["x", "y", "z"], order="lex")
    gens = [R("x + y + z"), R("x*y + y*z + z*x"), R("x*y*z - 1")]
    gb = buchberger(gens, R)
    assert is_groebner(gb)
    keys = [R.key(g.LM) for g in gb]
    assert keys == sorted(keys, reverse=True)
    for g in gens:
        assert normal_form(g, gb).is_zero()
    assert R("z^3 - 1") in gb


def test_normal_form_of_non_member_is_nonzero():
    R = PolyRing(["x", "y"])
    gb = buchberger([R("x^2"), R("y^2")], R)
    assert normal_form(R("x*y"), gb) == R("x*y")


def test_degree_cap_is_a_hard_error():
    R = PolyRing(["x", "y", "z"])
    gens = [R("x^2*y - z^3"), R("x*y^2 - z^3"), R("x*y*z - 1")]
    with budget(degree_cap=3):
        with pytest.raises(BudgetExceeded):
            buchberger(gens, R)


def test_time_budget_is_a_hard_error():
    R = PolyRing([f"x{i}" for i in range(6)])
    gens = [R(f"x{i}^3 - x{(i + 1) % 6}*x{(i + 2) % 6}^2 + x{(i + 3) % 6}") for i in range(6)]
    with budget(time_budget=0):
        with pytest.raises(BudgetExceeded):
            buchberger(gens, R)


def test_unit_ideal_collapses():
    R = PolyRing(["x", "y"])
    gb = buchberger([R("x*y - 1"), R("x")], R)
    assert len(gb) == 1 and gb[0].is_constant()


@pytest.mark.parametrize("order", ["grevlex", "lex", ("block", 1)])
@pytest.mark.parametrize("gens", [
    ["x^2*y - z^3/2", "x*y^2 - 3*z", "x*y*z - 1"],
    ["x^3 + 2*y*z - 1", "y^2 - x*z", "z^2 + x"],
    ["x*y - z", "x*z - y^2"],
])
def test_modular_path_matches_direct(monkeypatch, order, gens):
    import adjlab.groebner as gbmod

    R = PolyRing(["x", "y", "z"], order=order)
    polys = [R(g) for g in gens]
    direct = buchberger(polys, R)
    monkeypatch.setattr(gbmod, "_BIT_GUARD", -1)
    modular = buchberger(polys, R)
    assert modular == direct


def test_coefficient_growth_case_finishes():
    R = PolyRing(["t", "x", "y"], order=("block", 1))
    f = R("2*x*y^3 + 3*x*y^2 - 3*x*y")
    gens = [R("t*(3*x^3*y^3 - 2*x^3 - x)"), R("t*(4*x^3*y^2 - 3*x^2*y^2 + x^2)"), (R.one - R("t")) * f]
    with budget(time_budget=60):
        gb = buchberger(gens, R)
    assert is_groebner(gb)
    assert all(normal_form(g, gb).is_zero() for g in gens)
    kept = [g for g in gb if all(m[0] == 0 for m in g.terms)]
    assert len(kept) == 3
