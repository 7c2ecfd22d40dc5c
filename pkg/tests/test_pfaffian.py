import pytest

from adjlab import Ideal, VerificationError
from adjlab.pfaffian import AlternatingMatrix, det, incidental_matrix, pfaffian, sub_pfaffian, sub_pfaffians


@pytest.mark.parametrize("n", [2, 4, 6])
def test_pfaffian_squares_to_determinant(n):
    M = AlternatingMatrix.generic(n)
    assert pfaffian(M) ** 2 == det(M.rows())


def test_four_by_four_expansion():
    M = AlternatingMatrix.generic(4)
    R = M.ring
    assert pfaffian(M) == R("m12*m34 - m13*m24 + m14*m23")


def test_odd_size_pfaffian_vanishes():
    assert pfaffian(AlternatingMatrix.generic(5)).is_zero()


def test_sub_pfaffians_of_generic_five():
    M = AlternatingMatrix.generic(5)
    assert sub_pfaffian(M, (1, 2, 3)) == M.ring("m45")
    subs = sub_pfaffians(M, 1)
    assert len(subs) == 5
    X = Ideal(list(subs.values()), M.ring)
    assert X.dimension() == 7


def test_incidental_identity_holds_and_catches_sign_errors():
    M = AlternatingMatrix.generic(4)
    Q = incidental_matrix(M)
    assert Q[0, 1] == sub_pfaffian(M, (1, 2)) * -1


def test_incidental_identity_rejects_wrong_signs(monkeypatch):
    import adjlab.pfaffian as pf

    M = AlternatingMatrix.generic(4)
    real = pf.sub_pfaffian
    monkeypatch.setattr(pf, "sub_pfaffian", lambda A, ix: -real(A, ix) if ix == (1, 3) else real(A, ix))
    with pytest.raises(VerificationError):
        pf.incidental_matrix(M)


def test_alternating_validation():
    from adjlab import PolyRing

    R = PolyRing(["a"])
    with pytest.raises(ValueError):
        AlternatingMatrix(R, [[0, 1], [1, 0]])
