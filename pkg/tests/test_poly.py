from fractions import Fraction

import pytest

from adjlab import GF, ParseError, PolyRing, RingMismatch
from adjlab.poly import TruncatedSeries, divide, substitute_series


@pytest.fixture
def R():
    return PolyRing(["x", "y", "z"])


def test_parse_and_print_round_trip(R):
    f = R("x^2*y - 3/2*z + 1")
    assert str(f) == "x^2*y - 3/2*z + 1"
    assert R(str(f)) == f


def test_parser_expands_powers_and_division(R):
    assert R("(x+y)^2") == R("x^2 + 2*x*y + y^2")
    assert R("x/2") == R("1/2*x")


def test_parse_error_reports_column(R):
    with pytest.raises(ParseError) as info:
        R("x^2 +* 1")
    assert info.value.column == 6


def test_unknown_variable_is_a_parse_error(R):
    with pytest.raises(ParseError):
        R("w + 1")


def test_orders_disagree_where_expected():
    lex = PolyRing(["x", "y", "z"], order="lex")
    grev = PolyRing(["x", "y", "z"], order="grevlex")
    assert lex("x + y^5").LM == (1, 0, 0)
    assert grev("x + y^5").LM == (0, 5, 0)
    # grevlex: x*z^2 < y^3 because the last variable breaks the degree tie
    assert grev("x*z^2 + y^3").LM == (0, 3, 0)


def test_block_order_prefers_first_block():
    B = PolyRing(["t", "x", "y"], order=("block", 1))
    assert B("x^5*y^5 + t").LM == (1, 0, 0)


def test_prime_field_arithmetic():
    R = PolyRing(["x"], GF(7))
    assert R("8*x") == R("x")
    assert R("x/3") * 3 == R("x")
    assert (R("x + 1") ** 7) == R("x^7 + 1")


def test_ring_mismatch_raises(R):
    S = PolyRing(["a"])
    with pytest.raises(RingMismatch):
        R("x") + S("a")


def test_derivative_and_compose(R):
    f = R("x^3*y + z")
    assert f.derivative(0) == R("3*x^2*y")
    assert f.compose([R("y"), R("x"), R("0")]) == R("y^3*x")


def test_exact_divide_and_division_remainder(R):
    f = R("x^2*y + z")
    q, r = divide(f, [R("x*y")])
    assert q[0] == R("x") and r == R("z")
    assert R("x^2 - y^2").exact_divide(R("x - y")) == R("x + y")


def test_evaluate_is_exact(R):
    assert R("x/3 + y").evaluate([1, 1, 0]) == Fraction(4, 3)


def test_series_arithmetic_and_inverse(R):
    s = TruncatedSeries(R, [R(1), R(2), R(0), R(5)], 4)
    inv = s.inverse()
    assert (s * inv).truncate(4) == TruncatedSeries(R, [R(1), R(0), R(0), R(0)], 4)
    t = TruncatedSeries(R, [R(0), R(1)], 6)
    assert (t ** 3).valuation() == 3
    assert TruncatedSeries(R, [R(0)] * 4, 4).valuation() is None


def test_substitute_series_matches_polynomial_substitution(R):
    t = TruncatedSeries(R, [R(0), R(1)], 8)
    u = TruncatedSeries(R, [R(0), R(0), R(1)], 8)
    val = substitute_series(R("x^2 - y"), [t, u, t], 8)
    assert val.is_zero()


def test_rings_and_polynomials_survive_pickling():
    import pickle

    R = PolyRing(["x", "y", "z"], GF(101), ("block", 1))
    f = R("x^2*y - 3*z + 1")
    g = pickle.loads(pickle.dumps(f))
    assert g.ring == R and g == f
    assert g.ring.key((1, 0, 0)) == R.key((1, 0, 0))
