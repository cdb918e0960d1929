"""q-translations, q-inversions and the operators U, U^-1 on polynomials.

All sums terminate on polynomials, so every map here is exact. The barred
variants are mirror images (q -> 1/q, + <-> -) of the unbarred ones and are
validated elsewhere rather than assumed.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Tuple

from .scalars import LAMBDA, LAMBDA_PLUS, ONE, QScalar, inv_qfact, qdfact_even, qnum, qpow
from .series import CPoly, map_slot, mirror
from .star_product import star

__all__ = [
    "translate",
    "translate_bar",
    "invert",
    "invert_bar",
    "uhat",
    "antipode_residual",
]

Exps = Tuple[int, int, int]


def _falling(n: int, k: int, a: int) -> QScalar:
    out = ONE
    for j in range(k):
        out = out * qnum(n - j, a)
    return out


# (-q^-1 lambda lambda_+)
_BRAID = -(qpow(-1) * LAMBDA * LAMBDA_PLUS)
# (-q lambda lambda_+)
_INV = -(qpow(1) * LAMBDA * LAMBDA_PLUS)


@lru_cache(maxsize=None)
def _translate_mono(n: Exps) -> Tuple[Tuple[Tuple[int, ...], QScalar], ...]:
    """Image of ``x^n`` under ``x -> x (+) y`` as ``(x exps + y exps, coeff)``."""
    np_, n3, nm = n
    out = []
    for ip in range(np_ + 1):
        cp = _falling(np_, ip, -4) * inv_qfact(ip, -4)
        for im in range(nm + 1):
            cm = _falling(nm, im, -4) * inv_qfact(im, -4)
            for i3 in range(n3 + 1):
                for k in range(min(i3, n3 - i3) + 1):
                    c3 = _falling(n3, i3 + k, -2) * inv_qfact(i3 - k, -2)
                    c = cp * cm * c3 * _BRAID ** k * qdfact_even(2 * k, -2).inverse()
                    yp, y3, ym = np_ - ip, n3 - i3 - k, nm - im
                    c = c.shift(2 * (k - i3) * ym - 2 * ip * y3)
                    out.append(((ip + k, i3 - k, im, yp, y3, ym + k), c))
    return tuple(out)


def translate(f: CPoly, slot: str = "x", into: Tuple[str, str] = ("x", "y")) -> CPoly:
    """``f(x (+) y)``: the braided coproduct realised on commuting coordinates.

    The coordinates of ``slot`` are replaced by the sum of ``into[0]`` and
    ``into[1]``; other slots are spectators.
    """
    return map_slot(f, slot, _translate_mono, into)


def translate_bar(f: CPoly, slot: str = "x", into: Tuple[str, str] = ("x", "y")) -> CPoly:
    """Mirror-image translation ``f(x (+)bar y)`` (candidate)."""
    return mirror(translate(mirror(f), slot, into))


@lru_cache(maxsize=None)
def _uhat_mono(n: Exps, direction: int) -> Tuple[Tuple[Exps, QScalar], ...]:
    s = -direction  # U uses q^-4 and -lambda, U^-1 uses q^4 and +lambda
    np_, n3, nm = n
    out = []
    for k in range(min(np_, nm) + 1):
        c = _falling(np_, k, 4 * s) * _falling(nm, k, 4 * s) * inv_qfact(k, 4 * s)
        c = c * (LAMBDA * s) ** k
        c = c.shift(2 * s * n3 * (np_ - k + nm - k + k))
        out.append(((np_ - k, n3 + 2 * k, nm - k), c))
    return tuple(out)


def uhat(f: CPoly, direction: int = 1, slot: str = "x") -> CPoly:
    """``U f`` for ``direction=+1`` and ``U^-1 f`` for ``direction=-1``."""
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    return map_slot(f, slot, lambda n: _uhat_mono(n, direction))


@lru_cache(maxsize=None)
def _uinv_invert_mono(n: Exps) -> Tuple[Tuple[Exps, QScalar], ...]:
    """``U^-1 x^n (-) `` for one monomial."""
    np_, n3, nm = n
    out = []
    for i in range(n3 // 2 + 1):
        c = (qpow(2 - 4 * i) * -1) ** np_ * (qpow(1 - 2 * i) * -1) ** n3 * (qpow(2 - 4 * i) * -1) ** nm
        c = c * _falling(n3, 2 * i, -2)
        m3 = n3 - 2 * i
        c = c.shift(-2 * np_ * (np_ + m3) - 2 * nm * (nm + m3) - m3 * m3)
        c = c * _INV ** i * qdfact_even(2 * i, -2).inverse()
        out.append(((np_ + i, m3, nm + i), c))
    return tuple(out)


def invert(f: CPoly, slot: str = "x") -> CPoly:
    """``f((-) x)``: the braided antipode realised on commuting coordinates."""
    return uhat(map_slot(f, slot, _uinv_invert_mono), 1, slot)


def invert_bar(f: CPoly, slot: str = "x") -> CPoly:
    """Mirror-image inversion ``f((-)bar x)`` (candidate)."""
    return mirror(invert(mirror(f), slot))


def antipode_residual(f: CPoly, bar: bool = False) -> CPoly:
    """``sum f_(1) * S(f_(2)) - f(0)`` with ``*`` the star product.

    Zero for every polynomial when translation and inversion form a
    braided Hopf pair.
    """
    tr = translate_bar if bar else translate
    inv = invert_bar if bar else invert
    two = inv(tr(f, "x", ("x", "y")), "y")
    out = CPoly.zero(("x",))
    # multiply the two tensor legs with the star product
    by_y = {}
    for e, c in two.align(("x", "y")).terms.items():
        by_y.setdefault(e[3:], {})[e[:3]] = c
    for ye, xs in by_y.items():
        left = CPoly(xs, ("x",))
        out = out + star(left, CPoly({ye: ONE}, ("x",)))
    counit = f.terms.get((0, 0, 0), None) if f.slots == ("x",) else None
    if f.slots != ("x",):
        raise ValueError("antipode_residual expects a polynomial in the x slot only")
    return out - CPoly.one(("x",)).scale(counit) if counit else out
