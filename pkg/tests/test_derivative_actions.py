import pytest
from hypothesis import given
from hypothesis import strategies as st

from qeuclid import derivative_actions as da
from qeuclid.quantum_algebra import METRIC
from qeuclid.scalars import I, LAMBDA, ONE, ZERO, qpow
from qeuclid.series import CPoly, conjugate_series, var
from qeuclid.star_product import star

from conftest import cpolys

xp, x3, xm = var(0), var(1), var(2)
axes = st.integers(0, 2)


def const(c):
    return CPoly.one().scale(c) if c else CPoly.zero()


class TestExamples:
    def test_left_action(self):
        assert da.d_left("+", xp) == CPoly.one()
        assert da.d_left("3", x3 * x3) == x3.scale(ONE + qpow(2))
        assert da.d_left("-", x3 * x3) == xp.scale(LAMBDA * (ONE + qpow(2)))

    def test_right_bar_action(self):
        assert da.d_right_bar("3", x3) == -CPoly.one()
        for a in range(3):
            assert da.d_right_bar(a, CPoly.one()).is_zero()

    def test_hatted_left_action(self):
        assert da.d_left_bar("-", xm) == CPoly.one()

    def test_momentum(self):
        assert da.momentum_apply("3", x3) == const(-I)
        assert da.momentum_apply("+", CPoly.one()).is_zero()
        f = x3 * xm
        assert da.momentum_apply("+", f) == da.d_left("-", f).scale(-I * -qpow(1))


@pytest.mark.parametrize("kind", ["left", "left_bar"])
def test_contravariant_pairing_is_the_metric(kind):
    for a in range(3):
        for b in range(3):
            assert da.ACTIONS[kind](a, var(b), upper=True) == const(METRIC[a][b])


def test_right_actions_on_coordinates():
    for a in range(3):
        for b in range(3):
            g = METRIC[b][a]
            assert da.d_right_bar(a, var(b), upper=True) == const(-g)
            assert da.d_right_paired(a, var(b), upper=True) == const(-g * qpow(-6) if g else ZERO)


@given(cpolys(max_degree=4), axes)
def test_raising_uses_the_metric(f, a):
    partner = 2 - a
    assert da.d_left(a, f, upper=True) == da.d_left(partner, f).scale(METRIC[a][partner])


@given(cpolys(max_degree=4), axes)
def test_right_bar_is_conjugate_of_left(f, a):
    # conj(d^A > f) = -conj(f) <bar d_A
    lhs = conjugate_series(da.d_left(a, f, upper=True))
    assert lhs == -da.d_right_bar(a, conjugate_series(f))


@pytest.mark.parametrize("kind", list(da.ACTIONS))
@given(f=cpolys(max_degree=4, max_terms=4))
def test_operator_words_obey_coordinate_relations(kind, f):
    op = da.ACTIONS[kind]
    if kind.startswith("left"):
        def w(a, b):
            return op(a, op(b, f, upper=True), upper=True)
    else:
        def w(a, b):
            return op(b, op(a, f, upper=True), upper=True)
    q2 = qpow(2)
    assert w(1, 0) == w(0, 1).scale(q2)
    assert w(2, 1) == w(1, 2).scale(q2)
    assert w(2, 0) == w(0, 2) + w(1, 1).scale(LAMBDA)


class TestLeibniz:
    def test_matrix_entries(self):
        m = da.leibniz_matrix()
        q = qpow
        assert m[(0, 0, 0, 0)] == ONE
        assert m[(0, 2, 1, 1)] == q(1) - q(5)
        assert m[(0, 2, 0, 2)] == q(6) - q(4) - q(2) + ONE
        assert m[(2, 0, 0, 2)] == q(4)
        assert len(m) == 14

    def test_eigenvalues(self):
        # (M - 1)(M - q^6)(M + q^4) = 0 on the 9-dimensional space
        m = da.leibniz_matrix()
        a, b = qpow(6), -qpow(4)
        ident = {(i, j, i, j): ONE for i in range(3) for j in range(3)}

        def sub(x, c):
            out = dict(x)
            for k, v in ident.items():
                out[k] = out.get(k, ZERO) - v * c
            return {k: v for k, v in out.items() if v}

        prod = da._matmul(da._matmul(sub(m, ONE), sub(m, a)), sub(m, b))
        assert not prod

    def test_braiding_inverts_leibniz(self):
        prod = da._matmul(da.braiding_matrix(), da.leibniz_matrix())
        assert prod == {(i, j, i, j): ONE for i in range(3) for j in range(3)}

    @given(cpolys(max_degree=3), axes, axes)
    def test_rule_on_random_polynomials(self, f, i, j):
        lhs = da.d_left(i, star(var(j), f), upper=True)
        rhs = f.scale(METRIC[i][j]) if METRIC[i][j] else CPoly.zero()
        for (a, b, k, l_), c in da.leibniz_matrix().items():
            if (a, b) == (i, j):
                rhs = rhs + star(var(k), da.d_left(l_, f, upper=True)).scale(c)
        assert lhs == rhs


@given(cpolys(max_degree=3), axes, axes)
def test_paired_right_action_obeys_the_reversed_leibniz_rule(f, k, l_):
    # (f * x^k) < d^l = R^{kl}_{ij} (f < d^i) * x^j - (R g)^{kl} f
    r = da.braiding_matrix()
    lhs = da.d_right_paired(l_, star(f, var(k)), upper=True)
    rhs = CPoly.zero()
    rg = ZERO
    for (a, b, i, j), c in r.items():
        if (a, b) == (k, l_):
            rhs = rhs + star(da.d_right_paired(i, f, upper=True), var(j)).scale(c)
            rg = rg + c * METRIC[i][j]
    assert lhs == rhs - f.scale(rg)


def test_bad_axis():
    with pytest.raises(ValueError):
        da.d_left("x", xp)
