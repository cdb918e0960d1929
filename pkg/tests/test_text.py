import pytest
from hypothesis import given

from qeuclid.quantum_algebra import NCPoly, normal_order
from qeuclid.scalars import LAMBDA, QScalar, qpow
from qeuclid.series import var
from qeuclid.text import ParseError, parse_cpoly, parse_ncpoly, parse_scalar, render_cpoly, render_ncpoly

from conftest import cpolys, qscalars


def test_render_examples():
    f = (var(0) * var(2)) + (var(1) * var(1)).scale(LAMBDA)
    assert render_cpoly(f) == "x+*x- + (q - q^-1)*x3^2"
    assert render_cpoly(var(1) + var(1, "y")) == "x3 + y.x3"
    assert render_ncpoly(parse_ncpoly("X- X+")) == "X+ X- + (q - q^-1)*X3^2"


def test_scalar_grammar():
    assert parse_scalar("q - q^-1") == LAMBDA
    assert parse_scalar("(1 + q^2)/(1 + q^2)") == QScalar.const(1)
    assert parse_scalar("i*q^2*2") == parse_scalar("2*i*q^2")


def test_variables_and_slots():
    assert parse_cpoly("x+^2*p.x3") == var(0) * var(0) * var(1, "p")
    assert parse_cpoly("3") == parse_cpoly("1 + 2")


@given(cpolys(max_degree=3, max_terms=4))
def test_cpoly_roundtrip(f):
    assert parse_cpoly(render_cpoly(f)) == f


@given(cpolys(max_degree=2, max_terms=3, slots=("p", "x")))
def test_two_slot_roundtrip(f):
    assert parse_cpoly(render_cpoly(f)) == f


@given(qscalars())
def test_scalar_roundtrip(s):
    assert parse_scalar(str(s)) == s


def test_ncpoly_roundtrip():
    p = normal_order(NCPoly.word("X-", "X3", "X+"))
    assert parse_ncpoly(render_ncpoly(p)) == p
    assert parse_ncpoly("X3 X+") == NCPoly.word("X+", "X3", coeff=qpow(2))


@pytest.mark.parametrize("text, pos", [("x+ +", 4), ("x+ * (x3", 8), ("x7", 0), ("", 0), ("x+^x3", 3)])
def test_parse_errors_carry_positions(text, pos):
    with pytest.raises(ParseError) as info:
        parse_cpoly(text)
    assert info.value.pos == pos


def test_mode_errors():
    with pytest.raises(ParseError):
        parse_scalar("x+")
    with pytest.raises(ParseError):
        parse_cpoly("X+")
    with pytest.raises(ParseError):
        parse_cpoly("x+ / x3")
