import pytest

from qeuclid import qexponential as qe
from qeuclid.scalars import I, ONE, qpow
from qeuclid.series import CPoly, conjugate_series


def coeff(E, x, p):
    # key order is (p+, p3, p-, x+, x3, x-)
    return E.poly.coefficient(tuple(p) + tuple(x))


class TestSeries:
    def test_normalization(self):
        E = qe.exp_xp(3)
        assert E.poly.truncate("p", 0) == CPoly.one(("p", "x"))
        assert qe.exp_px(3).poly.truncate("x", 0) == CPoly.one(("p", "x"))

    def test_linear_coefficients(self):
        E = qe.exp_xp(2)
        assert coeff(E, (1, 0, 0), (0, 0, 1)) == -I * qpow(1)
        assert coeff(E, (0, 1, 0), (0, 1, 0)) == I
        assert coeff(qe.exp_px(2), (0, 0, 1), (1, 0, 0)) == I * qpow(1)

    def test_negative_cap(self):
        with pytest.raises(ValueError):
            qe.exp_xp(-1)

    def test_conjugate_exponential(self):
        assert conjugate_series(qe.exp_xp(4).poly) == qe.exp_px(4).poly

    def test_cached_series_is_shared(self):
        assert qe.exp_xp(3) is qe.exp_xp(3)


class TestEigenvalueEquations:
    @pytest.mark.parametrize("cap", [3, 4])
    @pytest.mark.parametrize("axis", [0, 1, 2])
    def test_left(self, cap, axis):
        assert qe.eigen_residual(qe.exp_xp(cap), axis, "left").vanishes_below_cap()

    @pytest.mark.parametrize("axis", [0, 1, 2])
    def test_right(self, axis):
        assert qe.eigen_residual(qe.exp_px(4), axis, "right").vanishes_below_cap()

    def test_residual_lives_at_the_cap(self):
        r = qe.eigen_residual(qe.exp_xp(3), 0, "left")
        assert not r.poly.is_zero()
        assert r.lowest_term("p")[0][:3] != (0, 0, 0)

    def test_bad_side(self):
        with pytest.raises(ValueError):
            qe.eigen_residual(qe.exp_xp(2), 0, "middle")


class TestAdditionAndInversion:
    def test_addition_theorem(self):
        assert qe.addition_residual(3).vanishes_below_cap()

    def test_addition_theorem_needs_the_y_exponential_on_the_left(self):
        assert not qe.addition_residual(3, order="inner_right").vanishes_below_cap()

    def test_inverse_exponential(self):
        Einv = qe.exp_inverse(3)
        assert coeff(Einv, (0, 0, 0), (0, 0, 0)) == ONE
        assert coeff(Einv, (1, 0, 0), (0, 0, 1)) == I * qpow(1)

    def test_inversion_identity(self):
        assert qe.inversion_residual(3).vanishes_below_cap()


class TestDualExponential:
    def test_recursive_solution_is_normalized(self):
        E = qe.dual_exp_recursive(2)
        assert E.poly.coefficient((0,) * 6) == ONE

    def test_refuses_unvalidated_action(self):
        with pytest.raises(qe.CandidateUnavailable):
            qe.dual_exp_recursive(2, validated=False)
