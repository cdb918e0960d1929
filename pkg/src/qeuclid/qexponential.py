"""Truncated q-exponentials as two-slot series in position ``x`` and momentum ``p``.

Identities are only asserted on terms strictly below the truncation cap:
every operator used here preserves or lowers degree, so terms at the cap
may be incomplete.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .braided_maps import invert_bar, translate_bar
from .derivative_actions import d_left, d_left_bar, d_right_bar
from .scalars import I, ONE, Gaussian, QScalar, inv_qfact, qpow
from .series import CPoly, var
from .star_product import star_monomials

__all__ = [
    "XPSeries",
    "CandidateUnavailable",
    "exp_xp",
    "exp_px",
    "exp_inverse",
    "eigen_residual",
    "addition_residual",
    "inversion_residual",
    "dual_exp_recursive",
]

SLOTS = ("p", "x")
_MINUS_I = -I


class CandidateUnavailable(RuntimeError):
    """Raised when an operation needs a candidate action that failed validation."""


@dataclass(frozen=True)
class XPSeries:
    """Series in the slots of ``poly`` truncated at total degree ``cap`` per slot."""

    poly: CPoly
    cap: int

    def below(self, slot: str = "p", degree: Optional[int] = None) -> CPoly:
        """Terms whose ``slot`` degree is at most ``degree`` (default ``cap - 1``)."""
        top = self.cap - 1 if degree is None else degree
        return self.poly.truncate(slot, top)

    def vanishes_below_cap(self, slot: str = "p") -> bool:
        return self.below(slot).is_zero()

    def lowest_term(self, slot: str = "p") -> Optional[Tuple[Tuple[int, ...], QScalar]]:
        """Nonzero term of lowest ``slot`` degree, for failure reports."""
        if not self.poly.terms:
            return None
        off = self.poly.slot_offset(slot) if slot in self.poly.slots else None
        key = (lambda e: sum(e[off: off + 3])) if off is not None else sum
        e = min(sorted(self.poly.terms), key=key)
        return e, self.poly.terms[e]

    def __str__(self):
        return str(self.poly)


_lock = threading.Lock()


def _exp_terms(cap: int, momentum_first: bool) -> CPoly:
    terms: Dict[Tuple[int, ...], QScalar] = {}
    for n in range(cap + 1):
        for np_ in range(n + 1):
            for n3 in range(n - np_ + 1):
                nm = n - np_ - n3
                denom = inv_qfact(np_, 4) * inv_qfact(n3, 2) * inv_qfact(nm, 4)
                if not momentum_first:
                    # (q x+)^n+ (x3)^n3 (q^-1 x-)^n- (-i p+)^n- (i p3)^n3 (-i p-)^n+
                    c = qpow(np_ - nm) * _MINUS_I ** (nm + np_) * I ** n3
                    key = (nm, n3, np_, np_, n3, nm)
                else:
                    # (i p+)^n+ (-i p3)^n3 (i p-)^n- (q^-1 x+)^n- (x3)^n3 (q x-)^n+
                    c = qpow(np_ - nm) * I ** (np_ + nm) * _MINUS_I ** n3
                    key = (np_, n3, nm, nm, n3, np_)
                terms[key] = c * denom
    return CPoly(terms, SLOTS)


@lru_cache(maxsize=None)
def _exp_cached(cap: int, momentum_first: bool) -> XPSeries:
    return XPSeries(_exp_terms(cap, momentum_first), cap)


def exp_xp(cap: int) -> XPSeries:
    """``exp_q(x|ip)`` truncated at total degree ``cap``."""
    if cap < 0:
        raise ValueError("cap must be non-negative")
    with _lock:
        return _exp_cached(cap, False)


def exp_px(cap: int) -> XPSeries:
    """``exp_q(i^-1 p|x)`` truncated at total degree ``cap``."""
    if cap < 0:
        raise ValueError("cap must be non-negative")
    with _lock:
        return _exp_cached(cap, True)


def _p_star(f: CPoly, g: CPoly) -> CPoly:
    from .star_product import star

    return star(f, g, "p")


def eigen_residual(E: XPSeries, axis, side: str = "left") -> XPSeries:
    """Residual of the momentum eigenvalue equation.

    ``left``:  ``i^-1 d^A > E - E * p^A`` for ``E = exp_xp``.
    ``right``: ``E <bar d^A i^-1 - p^A * E`` for ``E = exp_px``.
    """
    pA = var(axis, "p")
    if side == "left":
        lhs = d_left(axis, E.poly, "x", upper=True).scale(_MINUS_I)
        rhs = _p_star(E.poly, pA)
    elif side == "right":
        lhs = d_right_bar(axis, E.poly, "x", upper=True).scale(_MINUS_I)
        rhs = _p_star(pA, E.poly)
    else:
        raise ValueError("side must be 'left' or 'right'")
    return XPSeries(lhs - rhs, E.cap)


def _split_slot(f: CPoly, slot: str):
    """Group terms by the exponents of ``slot``."""
    off = f.slot_offset(slot)
    groups: Dict[Tuple[int, ...], Dict[Tuple[int, ...], QScalar]] = {}
    for e, c in f.terms.items():
        groups.setdefault(e[off: off + 3], {})[e[:off] + e[off + 3:]] = c
    return groups


def addition_residual(cap: int, order: str = "inner_left") -> XPSeries:
    """``exp(x (+)bar y|ip) - exp(x|exp(y|ip) * ip)`` over slots ``(p, x, y)``.

    The right side is the p-slot star product of the two exponentials; with
    ``order="inner_left"`` the exponential in ``y`` stands on the left.
    """
    E = exp_xp(cap).poly
    lhs = translate_bar(E, "x", ("x", "y"))
    Ey = E.rename({"x": "y"})
    Ex = E.align(("p", "x", "y"))
    Ey = Ey.align(("p", "x", "y"))
    rhs = _p_star(Ey, Ex) if order == "inner_left" else _p_star(Ex, Ey)
    return XPSeries((lhs - rhs).truncate("p", cap), cap)


def exp_inverse(cap: int) -> XPSeries:
    """``exp_q((-)bar x|ip)``: the mirrored inversion applied to the x slot."""
    return XPSeries(invert_bar(exp_xp(cap).poly, "x"), cap)


def _double_star(a: CPoly, b: CPoly) -> CPoly:
    """Star in x with ``a`` on the left and in p with ``b`` on the left."""
    a = a.align(SLOTS)
    b = b.align(SLOTS)
    acc: Dict[Tuple[int, ...], QScalar] = {}
    for ea, ca in a.terms.items():
        for eb, cb in b.terms.items():
            cab = ca * cb
            xs = star_monomials(ea[3:], eb[3:])
            ps = star_monomials(eb[:3], ea[:3])
            for pe, pc in ps:
                for xe, xc in xs:
                    key = pe + xe
                    v = cab * pc * xc
                    s = acc.get(key)
                    acc[key] = v if s is None else s + v
    return CPoly({k: v for k, v in acc.items() if v}, SLOTS)


def inversion_residual(cap: int) -> XPSeries:
    """``exp(ix * exp((-)bar x|ip) * p) - 1`` below the cap.

    Each exponential is a sum of products ``e(x) f(p)``; composing them
    star-multiplies the position factors in the order written and the
    momentum factors in the opposite order.
    """
    E = exp_xp(cap).poly
    Einv = exp_inverse(cap).poly
    out = _double_star(E, Einv) - CPoly.one(SLOTS)
    return XPSeries(out.truncate("p", cap), cap)


# --------------------------------------------------------------------------
# dual exponential from its eigenvalue equation
# --------------------------------------------------------------------------


def _solve_exact(rows: List[List[Gaussian]], rhs: List[Gaussian]) -> List[Gaussian]:
    """Least-structure exact solve of a consistent linear system (Gauss-Jordan)."""
    n = len(rows[0]) if rows else 0
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = Gaussian(1) / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [vi - f * vr for vi, vr in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    for row in m[r:]:
        if row[-1]:
            raise ArithmeticError("inconsistent eigenvalue system")
    if len(pivots) != n:
        raise ArithmeticError("eigenvalue system is underdetermined")
    sol = [Gaussian(0)] * n
    for i, c in enumerate(pivots):
        sol[c] = m[i][-1]
    return sol


def dual_exp_recursive(cap: int, q0=Fraction(11, 10), validated: bool = True) -> XPSeries:
    """Solve ``d^A >bar E = E * (i p^A)`` degree by degree with ``E|_{p=0} = 1``.

    Coefficients are exact Gaussian rationals at ``q = q0``. ``validated``
    must reflect the outcome of the candidate checks for the hatted left
    action; an unvalidated action is refused.
    """
    if not validated:
        raise CandidateUnavailable("hatted left action failed validation; dual exponential unavailable")
    from .series import monomials_up_to

    q0 = Fraction(q0)
    iq = QScalar.const(Gaussian(0, 1))
    solution: Dict[Tuple[int, ...], Gaussian] = {(0,) * 6: Gaussian(1)}
    for n in range(1, cap + 1):
        mons = [m for m in monomials_up_to(n) if sum(m) == n]
        unknowns = [(pm, xm) for pm in mons for xm in mons]
        index = {u: i for i, u in enumerate(unknowns)}
        prev = CPoly({e: QScalar.const(c) for e, c in solution.items() if sum(e[:3]) == n - 1}, SLOTS)
        rows: Dict[Tuple[int, Tuple[int, ...]], List[Gaussian]] = {}
        rhs_map: Dict[Tuple[int, Tuple[int, ...]], Gaussian] = {}
        for a in range(3):
            target = _p_star(prev, var(a, "p")).scale(iq)
            for e, c in target.terms.items():
                rhs_map[(a, e)] = c.evaluate(q0)
            for (pm, xm), col in index.items():
                img = d_left_bar(a, CPoly({pm + xm: ONE}, SLOTS), "x", upper=True)
                for e, c in img.terms.items():
                    row = rows.setdefault((a, e), [Gaussian(0)] * len(unknowns))
                    row[col] = row[col] + c.evaluate(q0)
        keys = sorted(set(rows) | set(rhs_map))
        mat = [rows.get(k, [Gaussian(0)] * len(unknowns)) for k in keys]
        vec = [rhs_map.get(k, Gaussian(0)) for k in keys]
        sol = _solve_exact(mat, vec)
        for (pm, xm), v in zip(unknowns, sol):
            if v:
                solution[pm + xm] = v
    return XPSeries(CPoly({e: QScalar.const(c) for e, c in solution.items()}, SLOTS), cap)
