"""Noncommutative coordinate algebra of the q-deformed Euclidean space.

Words are tuples over ``0, 1, 2`` standing for ``X+, X3, X-``. The normal
order is ``X+ < X3 < X-``; the commutation relations become the rewrite
rules

    X3 X+  ->  q^2 X+ X3
    X- X3  ->  q^2 X3 X-
    X- X+  ->  X+ X-  +  lambda X3 X3

Termination: the first two rules keep the letter multiset and remove one
inversion, the third strictly lowers the number of ``X+`` letters, so the
pair (#X+, #inversions) decreases lexicographically.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .scalars import LAMBDA, ONE, ZERO, Q, QScalar, qnum, qpow
from .series import CPoly

__all__ = [
    "NCPoly",
    "normal_order",
    "nc_mul",
    "weyl",
    "unweyl",
    "nc_conjugate",
    "METRIC",
    "lower_index",
    "raise_index",
    "metric_trace",
    "SurdSum",
    "SpinRep",
    "uqsu2_matrices",
    "uqsu2_relation_residuals",
]

Word = Tuple[int, ...]
LETTERS = ("X+", "X3", "X-")

_Q2 = qpow(2)


def _add_into(acc: Dict, key, val: QScalar) -> None:
    s = acc.get(key)
    s = val if s is None else s + val
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)


def _first_inversion(w: Word) -> int:
    for i in range(len(w) - 1):
        if w[i] > w[i + 1]:
            return i
    return -1


def _inversions(w: Word) -> List[int]:
    return [i for i in range(len(w) - 1) if w[i] > w[i + 1]]


def _rewrite_at(w: Word, i: int) -> List[Tuple[Word, QScalar]]:
    a, b = w[i], w[i + 1]
    head, tail = w[:i], w[i + 2:]
    if (a, b) == (1, 0):
        return [(head + (0, 1) + tail, _Q2)]
    if (a, b) == (2, 1):
        return [(head + (1, 2) + tail, _Q2)]
    if (a, b) == (2, 0):
        return [(head + (0, 2) + tail, ONE), (head + (1, 1) + tail, LAMBDA)]
    raise AssertionError("not an inversion")


@lru_cache(maxsize=200_000)
def _normal_form_word(w: Word) -> Tuple[Tuple[Word, QScalar], ...]:
    i = _first_inversion(w)
    if i < 0:
        return ((w, ONE),)
    acc: Dict[Word, QScalar] = {}
    for nw, c in _rewrite_at(w, i):
        for fw, fc in _normal_form_word(nw):
            _add_into(acc, fw, c * fc)
    return tuple(acc.items())


def _normal_form_random(w: Word, rng: random.Random) -> Dict[Word, QScalar]:
    """Normal form with the redex chosen at random each step (no caching)."""
    acc: Dict[Word, QScalar] = {}
    pending: Dict[Word, QScalar] = {w: ONE}
    while pending:
        nxt: Dict[Word, QScalar] = {}
        for word, c in pending.items():
            inv = _inversions(word)
            if not inv:
                _add_into(acc, word, c)
                continue
            for nw, k in _rewrite_at(word, rng.choice(inv)):
                _add_into(nxt, nw, c * k)
        pending = nxt
    return acc


class NCPoly:
    """Linear combination of words in ``X+, X3, X-`` over QScalar.

    Construction does not normal-order; use :func:`normal_order` or the
    arithmetic (``*`` normal-orders its result).
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, QScalar] | None = None):
        self.terms: Dict[Word, QScalar] = {tuple(w): c for w, c in (terms or {}).items() if c}

    @classmethod
    def word(cls, *letters, coeff=ONE) -> "NCPoly":
        w = tuple(_letter(x) for x in letters)
        return cls({w: coeff if isinstance(coeff, QScalar) else QScalar.const(coeff)})

    @classmethod
    def one(cls) -> "NCPoly":
        return cls({(): ONE})

    def __add__(self, other: "NCPoly") -> "NCPoly":
        acc = dict(self.terms)
        for w, c in other.terms.items():
            _add_into(acc, w, c)
        return NCPoly(acc)

    def __neg__(self):
        return NCPoly({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "NCPoly":
        c = c if isinstance(c, QScalar) else QScalar.const(c)
        return NCPoly({w: v * c for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            return nc_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_normal(self) -> bool:
        return all(_first_inversion(w) < 0 for w in self.terms)

    def __repr__(self):
        return f"NCPoly({self})"

    def __str__(self):
        from .text import render_ncpoly

        return render_ncpoly(self)


def _letter(x) -> int:
    if isinstance(x, int):
        return x
    key = str(x).replace("X", "")
    return {"+": 0, "3": 1, "-": 2}[key]


def normal_order(p: NCPoly, rng: Optional[random.Random] = None) -> NCPoly:
    """Unique normal-ordered representative.

    With ``rng`` the redex is picked at random at every step, which is how
    confluence is exercised; the default uses the leftmost redex with a
    per-word cache.
    """
    acc: Dict[Word, QScalar] = {}
    for w, c in p.terms.items():
        if rng is None:
            items = _normal_form_word(w)
        else:
            items = _normal_form_random(w, rng).items()
        for fw, fc in items:
            _add_into(acc, fw, c * fc)
    return NCPoly(acc)


def nc_mul(a: NCPoly, b: NCPoly) -> NCPoly:
    acc: Dict[Word, QScalar] = {}
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            c = ca * cb
            for fw, fc in _normal_form_word(wa + wb):
                _add_into(acc, fw, c * fc)
    return NCPoly(acc)


# --------------------------------------------------------------------------
# Moyal-Weyl map
# --------------------------------------------------------------------------


def _word_of(exps) -> Word:
    a, b, c = exps
    return (0,) * a + (1,) * b + (2,) * c


def weyl(f: CPoly, slot: str = "x") -> NCPoly:
    """Send ``x+^a x3^b x-^c`` to the normal-ordered word ``X+^a X3^b X-^c``."""
    f = f.prune_slots()
    if f.terms and f.slots != (slot,):
        if set(f.slots) - {slot}:
            raise ValueError(f"weyl expects a single-slot polynomial in {slot!r}, got {f.slots}")
    out = {}
    for e, c in f.terms.items():
        out[_word_of(e[:3])] = c
    return NCPoly(out)


def unweyl(F: NCPoly, slot: str = "x") -> CPoly:
    """Inverse of :func:`weyl`; ``F`` must already be normal-ordered."""
    out = {}
    for w, c in F.terms.items():
        if _first_inversion(w) >= 0:
            raise ValueError("unweyl needs a normal-ordered NCPoly")
        out[(w.count(0), w.count(1), w.count(2))] = c
    return CPoly(out, (slot,))


# --------------------------------------------------------------------------
# Metric and conjugation
# --------------------------------------------------------------------------

# rows/columns ordered +, 3, -
METRIC: Tuple[Tuple[QScalar, ...], ...] = (
    (ZERO, ZERO, -Q),
    (ZERO, ONE, ZERO),
    (-qpow(-1), ZERO, ZERO),
)


def metric_product() -> List[List[QScalar]]:
    """``g_AB g^BC`` (both arrays are the same matrix)."""
    g = METRIC
    return [[sum((g[a][b] * g[b][c] for b in range(3)), ZERO) for c in range(3)] for a in range(3)]


def metric_trace() -> QScalar:
    """``g^EF g_EF``."""
    return sum((METRIC[a][b] * METRIC[a][b] for a in range(3) for b in range(3)), ZERO)


def lower_index(axis, slot: str = "x") -> CPoly:
    """Covariant coordinate ``x_A = g_AB x^B`` as a CPoly."""
    from .series import axis_index

    a = axis_index(axis)
    terms = {}
    for b in range(3):
        if METRIC[a][b]:
            e = [0, 0, 0]
            e[b] = 1
            terms[tuple(e)] = METRIC[a][b]
    return CPoly(terms, (slot,))


def raise_index(components: Sequence[CPoly]) -> List[CPoly]:
    """Contract lower-index components ``v_B`` with ``g^AB``."""
    out = []
    for a in range(3):
        acc = CPoly.zero(components[0].slots)
        for b in range(3):
            if METRIC[a][b]:
                acc = acc + components[b].scale(METRIC[a][b])
        out.append(acc)
    return out


_CONJ_LETTER = {0: (2, -Q), 1: (1, ONE), 2: (0, -qpow(-1))}


def nc_conjugate(F: NCPoly) -> NCPoly:
    """Semilinear anti-involution ``X^A -> g_AB X^B``; result normal-ordered."""
    acc: Dict[Word, QScalar] = {}
    for w, c in F.terms.items():
        coeff = c.conj()
        nw = []
        for letter in reversed(w):
            t, s = _CONJ_LETTER[letter]
            nw.append(t)
            coeff = coeff * s
        for fw, fc in _normal_form_word(tuple(nw)):
            _add_into(acc, fw, coeff * fc)
    return NCPoly(acc)


# --------------------------------------------------------------------------
# U_q(su2) spin representations
# --------------------------------------------------------------------------


class SurdSum:
    """Finite sum ``sum_r c_r * sqrt(r)`` with QScalar radicands and coefficients.

    Only as much surd arithmetic as the spin-representation checks need:
    products merge radicands, and ``sqrt(r) * sqrt(r) = r``.
    """

    __slots__ = ("parts",)

    def __init__(self, parts: Mapping[QScalar, QScalar] | None = None):
        self.parts: Dict[QScalar, QScalar] = {r: c for r, c in (parts or {}).items() if c}

    @classmethod
    def rational(cls, c: QScalar) -> "SurdSum":
        return cls({ONE: c})

    @classmethod
    def sqrt(cls, r: QScalar, coeff: QScalar = ONE) -> "SurdSum":
        if not r:
            return cls()
        return cls({r: coeff})

    def __add__(self, other: "SurdSum") -> "SurdSum":
        acc = dict(self.parts)
        for r, c in other.parts.items():
            _add_into(acc, r, c)
        return SurdSum(acc)

    def __neg__(self):
        return SurdSum({r: -c for r, c in self.parts.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: QScalar) -> "SurdSum":
        return SurdSum({r: v * c for r, v in self.parts.items()})

    def __mul__(self, other):
        if isinstance(other, QScalar):
            return self.scale(other)
        acc: Dict[QScalar, QScalar] = {}
        for r1, c1 in self.parts.items():
            for r2, c2 in other.parts.items():
                c = c1 * c2
                if r1 == r2:
                    _add_into(acc, ONE, c * r1)
                elif r1 == ONE:
                    _add_into(acc, r2, c)
                elif r2 == ONE:
                    _add_into(acc, r1, c)
                else:
                    _add_into(acc, r1 * r2, c)
        return SurdSum(acc)

    def is_zero(self) -> bool:
        return not self.parts

    def __eq__(self, other):
        if isinstance(other, QScalar):
            other = SurdSum.rational(other)
        if not isinstance(other, SurdSum):
            return NotImplemented
        return self.parts == other.parts

    def __repr__(self):
        if not self.parts:
            return "0"
        return " + ".join(f"({c})" if r == ONE else f"({c})*sqrt({r})" for r, c in self.parts.items())


Matrix = List[List[SurdSum]]


def _zeros(n: int) -> Matrix:
    return [[SurdSum() for _ in range(n)] for _ in range(n)]


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    out = _zeros(n)
    for i in range(n):
        for k in range(n):
            if a[i][k].is_zero():
                continue
            for j in range(n):
                if not b[k][j].is_zero():
                    out[i][j] = out[i][j] + a[i][k] * b[k][j]
    return out


def _madd(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _mscale(a: Matrix, c: QScalar) -> Matrix:
    return [[x.scale(c) for x in row] for row in a]


class SpinRep:
    """Matrices of ``T3, T+, T-, tau`` on ``|j, m>``, basis ordered ``m = -j..j``."""

    def __init__(self, two_j: int, t3: Matrix, tp: Matrix, tm: Matrix, tau: Matrix):
        self.two_j = two_j
        self.t3, self.tp, self.tm, self.tau = t3, tp, tm, tau

    @property
    def j(self) -> Fraction:
        return Fraction(self.two_j, 2)

    @property
    def dim(self) -> int:
        return self.two_j + 1

    def index(self, m) -> int:
        """Row/column of the state with magnetic number ``m``."""
        two_m = int(2 * Fraction(m))
        return (two_m + self.two_j) // 2

    def entry(self, op: str, m_out, m_in) -> SurdSum:
        mat = {"T3": self.t3, "T+": self.tp, "T-": self.tm, "tau": self.tau}[op]
        return mat[self.index(m_out)][self.index(m_in)]


def uqsu2_matrices(j) -> SpinRep:
    """Spin-``j`` representation of U_q(su2) with the q^{-2}/q^{2} q-numbers."""
    two_j = int(2 * Fraction(j))
    if two_j < 0 or Fraction(two_j, 2) != Fraction(j):
        raise ValueError("j must be a nonnegative half-integer")
    n = two_j + 1
    t3, tp, tm, tau = _zeros(n), _zeros(n), _zeros(n), _zeros(n)
    qinv = qpow(-1)
    for col in range(n):
        two_m = 2 * col - two_j  # 2m
        # T3 |m> = q^-1 [[2m]]_{q^-2} |m>
        t3[col][col] = SurdSum.rational(qinv * qnum(two_m, -2))
        tau[col][col] = SurdSum.rational(qpow(-2 * two_m))
        # j + m + 1 etc. as integers via doubled quantities
        jpm = (two_j + two_m) // 2
        jmm = (two_j - two_m) // 2
        if col + 1 < n:
            rad = qnum(jpm + 1, -2) * qnum(jmm, 2)
            tp[col + 1][col] = SurdSum.sqrt(rad, qinv)
        if col - 1 >= 0:
            rad = qnum(jpm, -2) * qnum(jmm + 1, 2)
            tm[col - 1][col] = SurdSum.sqrt(rad, Q)
    return SpinRep(two_j, t3, tp, tm, tau)


def uqsu2_relation_residuals(j) -> List[Matrix]:
    """Residual matrices of the defining relations; all zero when they hold.

    1. q^-1 T+T- - q T-T+ - T3
    2. q^2 T3T+ - q^-2 T+T3 - (q + q^-1) T+
    3. q^2 T-T3 - q^-2 T3T- - (q + q^-1) T-
    4. tau - (1 - lambda T3)
    """
    rep = uqsu2_matrices(j)
    n = rep.dim
    q, qi = Q, qpow(-1)
    q2, qm2 = qpow(2), qpow(-2)
    lam_plus = q + qi
    ident = [[SurdSum.rational(ONE) if a == b else SurdSum() for b in range(n)] for a in range(n)]
    r1 = _madd(_madd(_mscale(_matmul(rep.tp, rep.tm), qi), _mscale(_matmul(rep.tm, rep.tp), -q)),
               _mscale(rep.t3, -ONE))
    r2 = _madd(_madd(_mscale(_matmul(rep.t3, rep.tp), q2), _mscale(_matmul(rep.tp, rep.t3), -qm2)),
               _mscale(rep.tp, -lam_plus))
    r3 = _madd(_madd(_mscale(_matmul(rep.tm, rep.t3), q2), _mscale(_matmul(rep.t3, rep.tm), -qm2)),
               _mscale(rep.tm, -lam_plus))
    r4 = _madd(_madd(rep.tau, _mscale(ident, -ONE)), _mscale(rep.t3, LAMBDA))
    return [r1, r2, r3, r4]


def matrix_is_zero(m: Matrix) -> bool:
    return all(x.is_zero() for row in m for x in row)


def random_word(rng: random.Random, length: int) -> Word:
    return tuple(rng.randrange(3) for _ in range(length))


def words_iter(max_len: int) -> Iterable[Word]:
    from itertools import product

    for n in range(max_len + 1):
        yield from product(range(3), repeat=n)
