import pytest
from hypothesis import given
from hypothesis import strategies as st

from qeuclid.scalars import I, ONE, QScalar, qnum, qpow
from qeuclid.series import (CPoly, conjugate_series, dilate, jackson_antiderivative, jackson_derivative, map_slot,
                            mirror, monomials_up_to, power_product, swap_pm, var)

from conftest import cpolys

xp, x3, xm = var(0), var(1), var(2)
axes = st.integers(0, 2)
bases = st.sampled_from([-4, -2, 2, 4])


class TestJackson:
    def test_monomial_rule(self):
        assert jackson_derivative(xp * xp, "x", "+", 4) == xp.scale(ONE + qpow(4))
        assert jackson_derivative(x3 * xm, "x", "3", 2) == xm

    def test_constant(self):
        assert jackson_derivative(CPoly.one(), "x", 0, 4).is_zero()

    def test_antiderivative_example(self):
        assert jackson_antiderivative(x3, "x", 1, 2) == (x3 * x3).scale(qnum(2, 2).inverse())
        assert jackson_antiderivative(CPoly.zero(), "x", 1, 2).is_zero()

    @given(cpolys(max_degree=4), axes, bases)
    def test_derivative_undoes_antiderivative(self, f, a, m):
        assert jackson_derivative(jackson_antiderivative(f, "x", a, m), "x", a, m) == f

    @given(cpolys(max_degree=4), axes, bases)
    def test_repeated_derivative(self, f, a, m):
        twice = jackson_derivative(jackson_derivative(f, "x", a, m), "x", a, m)
        assert jackson_derivative(f, "x", a, m, times=2) == twice


class TestDilation:
    def test_example(self):
        assert dilate(xp * x3, "x", 0, 2) == (xp * x3).scale(qpow(2))

    @given(cpolys(), axes, st.integers(-4, 4))
    def test_inverse_pair(self, f, a, m):
        assert dilate(dilate(f, "x", a, m), "x", a, -m) == f
        assert dilate(f, "x", a, 0) == f


class TestConjugation:
    def test_generators(self):
        assert conjugate_series(xp) == xm.scale(-qpow(1))
        assert conjugate_series(x3.scale(I)) == x3.scale(-I)

    @given(cpolys(max_terms=4))
    def test_involution(self, f):
        assert conjugate_series(conjugate_series(f)) == f

    @given(cpolys(slots=("p", "x")))
    def test_slot_restriction(self, f):
        both = conjugate_series(f)
        # conjugating one slot at a time conjugates coefficients twice
        split = conjugate_series(conjugate_series(f, ("x",)), ("p",))
        assert split.map_coeffs(QScalar.conj) == both


class TestSlots:
    def test_rename_and_align(self):
        f = var(0, "x") * var(1, "y")
        g = f.rename({"x": "y", "y": "x"})
        assert g == var(0, "y") * var(1, "x")
        assert f.align(("x", "y", "z")) == f

    def test_rename_collision(self):
        with pytest.raises(ValueError):
            (var(0, "x") * var(0, "y")).rename({"x": "y"})

    def test_truncate_and_drop(self):
        f = var(0, "p") * var(0, "x") + var(1, "x")
        assert f.truncate("p", 0) == var(1, "x")
        assert f.drop_slot("p") == var(1, "x")

    def test_map_slot_keeps_spectators(self):
        f = var(0, "x") * var(2, "p")
        out = map_slot(f, "x", lambda e: [((e[2], e[1], e[0]), ONE)])
        assert out == var(2, "x") * var(2, "p")


class TestMirror:
    @given(cpolys())
    def test_involution(self, f):
        assert mirror(mirror(f)) == f
        assert swap_pm(swap_pm(f)) == f

    def test_example(self):
        assert mirror(xp.scale(qpow(3))) == xm.scale(qpow(-3))


def test_monomial_enumeration():
    mons = monomials_up_to(6)
    assert len(mons) == len(set(mons)) == 84
    assert power_product((1, 0, 2)) == xp * xm * xm
