"""Closed-form star product on commutative polynomials.

    f * g = sum_k lambda^k (x3)^(2k) / [[k]]_{q^4}!
                 q^{2(n3 n'+ + n- n'3)}  D^k_{q^4, x-} f  D^k_{q^4, x'+} g

The dilation weight is read off the exponents left after differentiation.
Other slots of a multi-slot polynomial ride along as commuting spectators.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .scalars import LAMBDA, ONE, QScalar, inv_qfact, qnum
from .series import CPoly

__all__ = ["star", "star_corrections", "star_monomials"]

Exps = Tuple[int, int, int]


def _falling(n: int, k: int, a: int) -> QScalar:
    out = ONE
    for j in range(k):
        out = out * qnum(n - j, a)
    return out


@lru_cache(maxsize=None)
def _star_mono_k(a: Exps, b: Exps) -> Tuple[Tuple[int, Exps, QScalar], ...]:
    """``(k, exponents, coefficient of lambda^k)`` for ``x^a * x^b``."""
    out = []
    a1, a2, a3 = a
    b1, b2, b3 = b
    for k in range(min(a3, b1) + 1):
        m3, mm = a2, a3 - k  # f's exponents on x3, x- after D^k
        mp = b1 - k  # g's exponent on x+ after D^k
        c = _falling(a3, k, 4) * _falling(b1, k, 4) * inv_qfact(k, 4)
        c = c.shift(2 * (m3 * mp + mm * b2))
        e = (a1 + b1 - k, a2 + b2 + 2 * k, a3 - k + b3)
        out.append((k, e, c))
    return tuple(out)


@lru_cache(maxsize=None)
def star_monomials(a: Exps, b: Exps) -> Tuple[Tuple[Exps, QScalar], ...]:
    """Star product of two monomials as ``((exps, coeff), ...)``."""
    acc: Dict[Exps, QScalar] = {}
    for k, e, c in _star_mono_k(a, b):
        v = c * LAMBDA ** k if k else c
        s = acc.get(e)
        acc[e] = v if s is None else s + v
    return tuple((e, c) for e, c in acc.items() if c)


def _split(f: CPoly, off: int):
    for e, c in f.terms.items():
        yield e[off: off + 3], e[:off] + e[off + 3:], c


def _join(rest: Tuple[int, ...], mono: Exps, off: int) -> Tuple[int, ...]:
    return rest[:off] + mono + rest[off:]


def star(f: CPoly, g: CPoly, slot: str = "x") -> CPoly:
    """Star product in ``slot``; every other slot is treated as a commuting coefficient."""
    slots = tuple(sorted(set(f.slots) | set(g.slots) | {slot}))
    f = f.align(slots)
    g = g.align(slots)
    off = 3 * slots.index(slot)
    fs = list(_split(f, off))
    gs = list(_split(g, off))
    acc: Dict[Tuple[int, ...], QScalar] = {}
    for ma, ra, ca in fs:
        for mb, rb, cb in gs:
            cab = ca * cb
            rest = tuple(x + y for x, y in zip(ra, rb))
            for e, c in star_monomials(ma, mb):
                key = _join(rest, e, off)
                v = cab * c
                s = acc.get(key)
                acc[key] = v if s is None else s + v
    return CPoly({k: v for k, v in acc.items() if v}, slots)


def star_corrections(f: CPoly, g: CPoly, slot: str = "x") -> List[CPoly]:
    """Terms ``W_k`` with ``f * g = sum_k lambda^k W_k``.

    ``W_0`` is the k = 0 term including its dilation weight; it coincides
    with ``f g`` only when that weight is trivial.
    """
    slots = tuple(sorted(set(f.slots) | set(g.slots) | {slot}))
    f = f.align(slots)
    g = g.align(slots)
    off = 3 * slots.index(slot)
    per_k: Dict[int, Dict[Tuple[int, ...], QScalar]] = {}
    for ma, ra, ca in _split(f, off):
        for mb, rb, cb in _split(g, off):
            cab = ca * cb
            rest = tuple(x + y for x, y in zip(ra, rb))
            for k, e, c in _star_mono_k(ma, mb):
                acc = per_k.setdefault(k, {})
                key = _join(rest, e, off)
                v = cab * c
                s = acc.get(key)
                acc[key] = v if s is None else s + v
    top = max(per_k, default=0)
    return [CPoly({e: c for e, c in per_k.get(k, {}).items() if c}, slots) for k in range(top + 1)]


def star_many(factors: Sequence[CPoly], slot: str = "x") -> CPoly:
    out = factors[0]
    for f in factors[1:]:
        out = star(out, f, slot)
    return out
