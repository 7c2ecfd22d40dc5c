from fractions import Fraction

import pytest

from adjlab import Ideal, PolyRing, QIdeal, Refused
from adjlab.mld import (
    MonomialPair,
    brute_force_mld,
    inversion_check,
    linear_change,
    log_discrepancy_at_weight,
    mld_jet_estimate,
    mld_monomial,
    mld_toric_quotient,
    verify_direction,
)
from adjlab.singularity import AffineSubscheme


@pytest.mark.parametrize("N", range(1, 7))
def test_empty_boundary_gives_dimension(N):
    assert mld_monomial(MonomialPair(N, [])).value == N


def test_normal_crossing_boundary_is_log_canonical_not_klt():
    res = mld_monomial(MonomialPair(2, [([(1, 1)], 1)]))
    assert res.value == 0 and res.log_canonical and res.klt is False


def test_klt_flag_is_one_sided():
    res = mld_monomial(MonomialPair(2, [([(1, 1)], Fraction(1, 2))]))
    assert res.value == 1 and res.klt is None


def test_negative_infinity_carries_a_checked_direction():
    pair = MonomialPair(2, [([(1, 0), (0, 1)], 3)])
    res = mld_monomial(pair)
    assert res.is_neg_inf and verify_direction(pair, res.direction)


def test_dimension_one_convention():
    pair = MonomialPair(1, [([(1,)], 2)])
    assert mld_monomial(pair).is_neg_inf
    assert mld_monomial(MonomialPair(1, [([(1,)], 1)])).value == 0


def test_cusp_threshold_value():
    # (x^2, y^3) with coefficient 5/6 sits exactly at its threshold
    pair = MonomialPair(2, [([(2, 0), (0, 3)], Fraction(5, 6))])
    res = mld_monomial(pair)
    assert res.value == 0
    assert brute_force_mld(pair)[0] == 0


def test_quotient_singularity_values():
    assert mld_toric_quotient(MonomialPair(3, [], 3, (1, 1, 1))).value == 1
    assert mld_toric_quotient(MonomialPair(2, [], 2, (1, 1))).value == 1
    # 1/5(1,2): minimal weight (1/5, 2/5) gives 3/5
    assert mld_toric_quotient(MonomialPair(2, [], 5, (1, 2))).value == Fraction(3, 5)


def test_quotient_rejects_non_coprime_weights():
    with pytest.raises(ValueError):
        MonomialPair(2, [], 4, (2, 1))


def test_log_discrepancy_validates_weights():
    pair = MonomialPair(2, [([(1, 1)], 1)])
    assert log_discrepancy_at_weight((2, 3), pair) == 0
    with pytest.raises(ValueError):
        log_discrepancy_at_weight((0, 1), pair)
    q = MonomialPair(2, [], 3, (1, 1))
    with pytest.raises(ValueError):
        log_discrepancy_at_weight((Fraction(1, 3), Fraction(2, 3)), q)


def test_pair_from_qideal():
    R = PolyRing(["x", "y"])
    Q = QIdeal([(Ideal(["x*y"], R), 1)])
    assert mld_monomial(MonomialPair.from_qideal(Q)).value == 0
    with pytest.raises(Refused):
        MonomialPair.from_qideal(QIdeal([(Ideal(["x + y"], R), 1)]))


def test_jet_estimate_is_an_upper_bound():
    R = PolyRing(["x", "y"])
    Z = Ideal(["x", "y"], R)
    Q = QIdeal([(Ideal(["x*y"], R), 1)])
    est = mld_jet_estimate(Q, Z, 3)
    assert est.best_upper == 0
    assert est.certifies_below(Fraction(1, 10)) and not est.certifies_below(0)
    empty = mld_jet_estimate(None, Z, 2)
    assert empty.best_upper == 2


@pytest.mark.parametrize("d,c", [(1, 1), (1, 2), (2, 1), (2, 2), (3, 2)])
def test_inversion_on_coordinate_subspaces(d, c):
    R = PolyRing([f"x{i}" for i in range(d + c)])
    X = AffineSubscheme(Ideal([f"x{i}" for i in range(c)], R))
    rep = inversion_check(X)
    assert rep.passed and rep.left == rep.right == d


def test_inversion_after_linear_change():
    R = PolyRing(["x", "y"])
    rep = inversion_check(AffineSubscheme(Ideal(["x - y"], R)))
    assert rep.left == rep.right == 1


def test_inversion_refusals():
    R = PolyRing(["x", "y"])
    with pytest.raises(Refused):
        inversion_check(AffineSubscheme(Ideal(["x", "y"], R)))
    with pytest.raises(Refused):
        inversion_check(AffineSubscheme(Ideal(["x^2 - y^3"], R)))
    with pytest.raises(Refused):
        linear_change([R("x"), R("2*x")])
