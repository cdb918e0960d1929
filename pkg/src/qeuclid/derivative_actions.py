"""Actions of q-deformed partial derivatives on commutative polynomials.

Four actions are provided:

* ``d_left``       left action, from explicit Jackson-operator formulas
* ``d_right_bar``  right action obtained from ``d_left`` by conjugation
* ``d_left_bar``   hatted left action (candidate: q -> 1/q with + and - swapped)
* ``d_right``      hatted right action, conjugate of ``d_left_bar``
* ``d_right_paired`` right action generated by the same Leibniz rule as ``d_left``

Derivative indices are covariant (``upper=False``) or contravariant
(``upper=True``); raising uses ``g^{+-} = -q``, ``g^{33} = 1``, ``g^{-+} = -1/q``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Dict, Tuple

from .scalars import I, LAMBDA, ONE, ZERO, QScalar, qpow
from .series import CPoly, axis_index, conjugate_series, dilate, jackson_derivative, var

__all__ = [
    "ACTIONS",
    "d_left",
    "d_right_bar",
    "d_left_bar",
    "d_right",
    "momentum_apply",
    "raised",
    "leibniz_matrix",
    "braiding_matrix",
    "d_right_paired",
]

_PARTNER = (2, 1, 0)
# d^A = g^{AB} d_B with B = partner(A)
_RAISE = (-qpow(1), qpow(0), -qpow(-1))


def raised(action: Callable[[int, CPoly, str], CPoly], axis, f: CPoly, slot: str = "x") -> CPoly:
    """Apply the contravariant component ``d^A`` of a covariant action."""
    a = axis_index(axis)
    return action(_PARTNER[a], f, slot).scale(_RAISE[a])


def _covariant_left(a: int, f: CPoly, slot: str) -> CPoly:
    if a == 0:
        return jackson_derivative(f, slot, 0, 4)
    if a == 1:
        return jackson_derivative(dilate(f, slot, 0, 2), slot, 1, 2)
    first = jackson_derivative(dilate(f, slot, 1, 2), slot, 2, 4)
    second = var(0, slot) * jackson_derivative(f, slot, 1, 2, times=2)
    return first + second.scale(LAMBDA)


def _covariant_left_bar(a: int, f: CPoly, slot: str) -> CPoly:
    # mirror image of _covariant_left: q -> 1/q and + <-> -
    if a == 2:
        return jackson_derivative(f, slot, 2, -4)
    if a == 1:
        return jackson_derivative(dilate(f, slot, 2, -2), slot, 1, -2)
    first = jackson_derivative(dilate(f, slot, 1, -2), slot, 0, -4)
    second = var(2, slot) * jackson_derivative(f, slot, 1, -2, times=2)
    return first - second.scale(LAMBDA)


def _with_index(cov: Callable[[int, CPoly, str], CPoly]):
    def action(axis, f: CPoly, slot: str = "x", upper: bool = False) -> CPoly:
        if upper:
            return raised(cov, axis, f, slot)
        return cov(axis_index(axis), f, slot)

    return action


_left = _with_index(_covariant_left)
_left_bar = _with_index(_covariant_left_bar)


def d_left(axis, f: CPoly, slot: str = "x", upper: bool = False) -> CPoly:
    """``d_A > f`` (or ``d^A > f`` with ``upper=True``)."""
    return _left(axis, f, slot, upper)


def d_left_bar(axis, f: CPoly, slot: str = "x", upper: bool = False) -> CPoly:
    """Candidate hatted left action ``d_A >bar f``."""
    return _left_bar(axis, f, slot, upper)


def d_right_bar(axis, f: CPoly, slot: str = "x", upper: bool = False) -> CPoly:
    """``f <bar d_A`` defined by ``conj(d^A > f) = -conj(f) <bar d_A``.

    The index type flips under conjugation, so a covariant right derivative
    comes from the contravariant left one and vice versa.
    """
    g = conjugate_series(f, (slot,))
    return -conjugate_series(_left(axis, g, slot, not upper), (slot,))


def d_right(axis, f: CPoly, slot: str = "x", upper: bool = False) -> CPoly:
    """Candidate hatted right action ``f < d_A``, conjugate of :func:`d_left_bar`."""
    g = conjugate_series(f, (slot,))
    return -conjugate_series(_left_bar(axis, g, slot, not upper), (slot,))


Quad = Tuple[int, int, int, int]


@lru_cache(maxsize=None)
def leibniz_matrix() -> Dict[Quad, QScalar]:
    """``M^{ij}_{kl}`` in ``d^i > (x^j * f) = g^{ij} f + M^{ij}_{kl} x^k * (d^l > f)``.

    Read off from the action on products of two coordinates. The Leibniz
    rule itself is checked for general ``f`` by the test suite.
    """
    from .quantum_algebra import METRIC
    from .star_product import star

    x = [var(a) for a in range(3)]
    out: Dict[Quad, QScalar] = {}
    for i in range(3):
        for j in range(3):
            for m in range(3):
                r = d_left(i, star(x[j], x[m]), upper=True) - x[m].scale(METRIC[i][j])
                l_ = _PARTNER[m]
                for k in range(3):
                    e = [0, 0, 0]
                    e[k] = 1
                    c = r.coefficient(tuple(e))
                    if c:
                        out[(i, j, k, l_)] = c / METRIC[l_][m]
    return out


def _mat(entries: Dict[Quad, QScalar]):
    return {k: v for k, v in entries.items() if v}


def _matmul(a: Dict[Quad, QScalar], b: Dict[Quad, QScalar]) -> Dict[Quad, QScalar]:
    out: Dict[Quad, QScalar] = {}
    for (i, j, k, l_), va in a.items():
        for (k2, l2, m, n), vb in b.items():
            if (k2, l2) == (k, l_):
                key = (i, j, m, n)
                out[key] = out.get(key, ZERO) + va * vb
    return _mat(out)


@lru_cache(maxsize=None)
def braiding_matrix() -> Dict[Quad, QScalar]:
    """Inverse of :func:`leibniz_matrix`.

    The Leibniz matrix has eigenvalues ``1, q^6, -q^4``, so its inverse is a
    quadratic polynomial in it: ``M^-1 = (M^2 - s1 M + s2) / (a b)`` with
    ``a = q^6``, ``b = -q^4``, ``s1 = 1 + a + b``, ``s2 = a + b + a b``.
    """
    m = leibniz_matrix()
    a, b = qpow(6), -qpow(4)
    s1, s2 = ONE + a + b, a + b + a * b
    m2 = _matmul(m, m)
    out: Dict[Quad, QScalar] = {}
    inv_ab = (a * b).inverse()
    for i in range(3):
        for j in range(3):
            for k in range(3):
                for l_ in range(3):
                    key = (i, j, k, l_)
                    v = m2.get(key, ZERO) - m.get(key, ZERO) * s1
                    if (i, j) == (k, l_):
                        v = v + s2
                    if v:
                        out[key] = v * inv_ab
    return out


@lru_cache(maxsize=None)
def _paired_word(w: Tuple[int, ...], j: int):
    """``W(w) < d^j`` as ``{normal word: coeff}``.

    Uses ``X^k d^l = R^{kl}_{ab} d^a X^b - (R g)^{kl}``, the Leibniz rule of
    ``d_left`` solved for the reversed order.
    """
    from .quantum_algebra import METRIC, NCPoly, nc_mul

    if not w:
        return {}
    head, k = w[:-1], w[-1]
    r = braiding_matrix()
    acc = NCPoly({})
    rg = sum((r.get((k, j, a, b), ZERO) * METRIC[a][b] for a in range(3) for b in range(3)), ZERO)
    if rg:
        acc = acc - NCPoly({head: rg})
    for a in range(3):
        for b in range(3):
            c = r.get((k, j, a, b))
            if not c:
                continue
            sub = _paired_word(head, a)
            if sub:
                acc = acc + nc_mul(NCPoly(dict(sub)), NCPoly.word(b)).scale(c)
    from .quantum_algebra import normal_order

    return tuple(normal_order(acc).terms.items())


def d_right_paired(axis, f: CPoly, slot: str = "x", upper: bool = False) -> CPoly:
    """``f < d_A`` obtained by moving the derivative leftwards through ``W(f)``.

    This is the right action belonging to the same derivative as ``d_left``;
    it satisfies integration by parts against ``d_left`` exactly.
    """
    from .quantum_algebra import METRIC
    from .series import map_slot

    a = axis_index(axis)
    if upper:
        comps = [(a, ONE)]
    else:
        comps = [(b, METRIC[a][b]) for b in range(3) if METRIC[a][b]]

    def mono(e):
        w = (0,) * e[0] + (1,) * e[1] + (2,) * e[2]
        for b, gab in comps:
            for word, c in _paired_word(w, b):
                yield (word.count(0), word.count(1), word.count(2)), c * gab

    return map_slot(f, slot, mono)


ACTIONS = {
    "left": d_left,
    "right_bar": d_right_bar,
    "left_bar": d_left_bar,
    "right": d_right,
    "right_paired": d_right_paired,
}

_MINUS_I: QScalar = -I


def momentum_apply(axis, f: CPoly, slot: str = "x") -> CPoly:
    """``P^A > f = i^{-1} d^A > f``."""
    return d_left(axis, f, slot, upper=True).scale(_MINUS_I)
