"""Exact scalars: rational functions of q over the Gaussian rationals.

A :class:`QScalar` is stored as a Laurent polynomial numerator (real and
imaginary parts kept as separate ``{exponent: Fraction}`` maps) over a
denominator that is a product of cyclotomic polynomials ``Phi_d(q)``.
Every q-number ``[[n]]_{q^a}`` factors into cyclotomics, so this is closed
under everything the package needs (q-factorials in denominators included)
while keeping a canonical form: the numerator is never divisible by a
cyclotomic factor still present in the denominator.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Tuple, Union

__all__ = [
    "Gaussian",
    "QScalar",
    "EvalPoint",
    "ZERO",
    "ONE",
    "I",
    "Q",
    "LAMBDA",
    "LAMBDA_PLUS",
    "KAPPA",
    "qnum",
    "qfact",
    "qdfact_even",
    "qpow",
    "evaluate",
    "cyclotomic",
    "inv_qfact",
    "sum_scalars",
]

Poly = Dict[int, Fraction]
Number = Union[int, Fraction]


# --------------------------------------------------------------------------
# Gaussian rationals (values produced by evaluation at a rational q)
# --------------------------------------------------------------------------


class Gaussian:
    """Exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Number = 0, im: Number = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, value) -> "Gaussian":
        if isinstance(value, Gaussian):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to Gaussian")

    def __add__(self, other):
        other = Gaussian.coerce(other)
        return Gaussian(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = Gaussian.coerce(other)
        return Gaussian(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return Gaussian.coerce(other) - self

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Gaussian(self.re * other, self.im * other if self.im else 0)
        other = Gaussian.coerce(other)
        if not other.im:
            return Gaussian(self.re * other.re, self.im * other.re if self.im else 0)
        if not self.im:
            return Gaussian(self.re * other.re, self.re * other.im)
        return Gaussian(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero Gaussian")
            return Gaussian(self.re / other, self.im / other if self.im else 0)
        other = Gaussian.coerce(other)
        n = other.abs2()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian")
        return self * Gaussian(other.re / n, -other.im / n)

    def conj(self) -> "Gaussian":
        return Gaussian(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            other = Gaussian.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"Gaussian({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re} {sign} {abs(self.im)}*i"


# --------------------------------------------------------------------------
# Laurent polynomial helpers on {exponent: Fraction}
# --------------------------------------------------------------------------


def _padd(a: Poly, b: Poly, sign: int = 1) -> Poly:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) + sign * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return {}
    out: Dict[int, Fraction] = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = ka + kb
            out[k] = out.get(k, 0) + va * vb
    return {k: v for k, v in out.items() if v}


def _pscale(a: Poly, c: Number, shift: int = 0) -> Poly:
    if not c:
        return {}
    return {k + shift: v * c for k, v in a.items()}


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> Tuple[int, ...]:
    """Integer coefficients of ``Phi_d(q)``, lowest degree first."""
    if d < 1:
        raise ValueError("cyclotomic index must be positive")
    # q^d - 1 divided by Phi_e for every proper divisor e
    num = [-1] + [0] * (d - 1) + [1]
    for e in range(1, d):
        if d % e == 0:
            num = _int_exact_div(num, list(cyclotomic(e)))
    return tuple(num)


def _int_exact_div(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // lead
        out[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    assert not any(num[: len(den) - 1]), "inexact cyclotomic division"
    return out


def _divide_by_cyclotomic(p: Poly, d: int):
    """Return ``p / Phi_d`` if exact, else ``None``. ``p`` is Laurent."""
    if not p:
        return {}
    phi = cyclotomic(d)
    deg_phi = len(phi) - 1
    lo = min(p)
    hi = max(p)
    if hi - lo < deg_phi:
        return None
    work = {k - lo: v for k, v in p.items()}
    n = hi - lo
    quot: Dict[int, Fraction] = {}
    # Phi_d is monic
    for i in range(n - deg_phi, -1, -1):
        c = work.get(i + deg_phi)
        if not c:
            continue
        quot[i] = c
        for j, pj in enumerate(phi):
            if pj:
                key = i + j
                s = work.get(key, 0) - c * pj
                if s:
                    work[key] = s
                else:
                    work.pop(key, None)
    if work:
        return None
    return {k + lo: v for k, v in quot.items()}


def _totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


# --------------------------------------------------------------------------
# QScalar
# --------------------------------------------------------------------------

Den = Tuple[Tuple[int, int], ...]


def _den_dict(den: Den) -> Dict[int, int]:
    return dict(den)


def _den_tuple(d: Dict[int, int]) -> Den:
    return tuple(sorted((k, v) for k, v in d.items() if v))


def _den_poly(den: Dict[int, int]) -> Poly:
    out: Poly = {0: Fraction(1)}
    for d, mult in den.items():
        phi = {i: Fraction(c) for i, c in enumerate(cyclotomic(d)) if c}
        for _ in range(mult):
            out = _pmul(out, phi)
    return out


class QScalar:
    """Exact element of Q(i)(q) with cyclotomic denominator.

    Instances are immutable. Arithmetic keeps the canonical form, so ``==``
    is structural equality.
    """

    __slots__ = ("re", "im", "den", "_hash")

    def __init__(self, re: Poly | None = None, im: Poly | None = None, den: Den = ()):
        self.re = re or {}
        self.im = im or {}
        self.den = den
        self._hash = None

    # -- construction -----------------------------------------------------

    @classmethod
    def _make(cls, re: Poly, im: Poly, den: Dict[int, int]) -> "QScalar":
        if not re and not im:
            return ZERO
        for d in sorted(den):
            mult = den[d]
            while mult:
                qr = _divide_by_cyclotomic(re, d)
                if qr is None:
                    break
                qi = _divide_by_cyclotomic(im, d)
                if qi is None:
                    break
                re, im = qr, qi
                mult -= 1
            den[d] = mult
        return cls(re, im, _den_tuple(den))

    @classmethod
    def const(cls, value) -> "QScalar":
        if isinstance(value, QScalar):
            return value
        if isinstance(value, Gaussian):
            return cls({0: value.re} if value.re else {}, {0: value.im} if value.im else {})
        value = Fraction(value)
        return cls({0: value} if value else {})

    @classmethod
    def monomial(cls, k: int, coeff=1) -> "QScalar":
        c = Gaussian.coerce(coeff) if not isinstance(coeff, Gaussian) else coeff
        return cls({k: c.re} if c.re else {}, {k: c.im} if c.im else {})

    @classmethod
    def from_terms(cls, terms: Dict[int, object]) -> "QScalar":
        """Laurent polynomial from ``{exponent: coefficient}``."""
        re: Poly = {}
        im: Poly = {}
        for k, v in terms.items():
            g = Gaussian.coerce(v)
            if g.re:
                re[k] = re.get(k, 0) + g.re
            if g.im:
                im[k] = im.get(k, 0) + g.im
        return cls({k: v for k, v in re.items() if v}, {k: v for k, v in im.items() if v})

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __bool__(self):
        return not self.is_zero()

    def is_laurent(self) -> bool:
        return not self.den

    def is_real(self) -> bool:
        return not self.im

    @property
    def terms(self) -> Dict[int, Gaussian]:
        """Numerator as ``{exponent: Gaussian}`` (denominator ignored)."""
        keys = set(self.re) | set(self.im)
        return {k: Gaussian(self.re.get(k, 0), self.im.get(k, 0)) for k in sorted(keys)}

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "QScalar":
        if isinstance(other, QScalar):
            return other
        if isinstance(other, (int, Fraction, Gaussian)):
            return QScalar.const(other)
        return NotImplemented

    def __add__(self, other):
        other = QScalar._coerce(other)
        if other is NotImplemented:
            return other
        if not other:
            return self
        if not self:
            return other
        if self.den == other.den:
            if not self.den:
                re = _padd(self.re, other.re)
                im = _padd(self.im, other.im)
                if not re and not im:
                    return ZERO
                return QScalar(re, im)
            return QScalar._make(_padd(self.re, other.re), _padd(self.im, other.im), _den_dict(self.den))
        da, db = _den_dict(self.den), _den_dict(other.den)
        common = dict(da)
        for d, m in db.items():
            common[d] = max(common.get(d, 0), m)
        fa = _den_poly({d: common[d] - da.get(d, 0) for d in common})
        fb = _den_poly({d: common[d] - db.get(d, 0) for d in common})
        re = _padd(_pmul(self.re, fa), _pmul(other.re, fb))
        im = _padd(_pmul(self.im, fa), _pmul(other.im, fb))
        return QScalar._make(re, im, common)

    __radd__ = __add__

    def __neg__(self):
        if not self:
            return self
        return QScalar({k: -v for k, v in self.re.items()}, {k: -v for k, v in self.im.items()}, self.den)

    def __sub__(self, other):
        other = QScalar._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return QScalar._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return QScalar(_pscale(self.re, other), _pscale(self.im, other), self.den)
        other = QScalar._coerce(other)
        if other is NotImplemented:
            return other
        if not self or not other:
            return ZERO
        if self.im or other.im:
            re = _padd(_pmul(self.re, other.re), _pmul(self.im, other.im), -1)
            im = _padd(_pmul(self.re, other.im), _pmul(self.im, other.re))
        else:
            re = _pmul(self.re, other.re)
            im = {}
        if not self.den and not other.den:
            if not re and not im:
                return ZERO
            return QScalar(re, im)
        den = _den_dict(self.den)
        for d, m in other.den:
            den[d] = den.get(d, 0) + m
        return QScalar._make(re, im, den)

    __rmul__ = __mul__

    def shift(self, k: int) -> "QScalar":
        """Multiply by ``q**k``."""
        if not k or not self:
            return self
        return QScalar({e + k: v for e, v in self.re.items()}, {e + k: v for e, v in self.im.items()}, self.den)

    def inverse(self) -> "QScalar":
        """Multiplicative inverse.

        Only elements whose numerator is a monomial times cyclotomic factors
        are invertible here; anything else raises ``ValueError``.
        """
        if not self:
            raise ZeroDivisionError("inverse of zero QScalar")
        re, im = self.re, self.im
        factors: Dict[int, int] = {}
        keys = set(re) | set(im)
        deg = max(keys) - min(keys)
        # q-number products only carry Phi_d with d <= 2 * degree
        bound = 2 * deg + 2
        d = 1
        while deg > 0 and d <= bound:
            if _totient(d) <= deg:
                qr = _divide_by_cyclotomic(re, d)
                qi = _divide_by_cyclotomic(im, d) if qr is not None else None
                if qr is not None and qi is not None:
                    re, im = qr, qi
                    factors[d] = factors.get(d, 0) + 1
                    keys = set(re) | set(im)
                    deg = max(keys) - min(keys)
                    continue
            d += 1
        if deg:
            raise ValueError(f"{self} is not invertible over cyclotomic denominators")
        (k,) = keys
        c = Gaussian(re.get(k, 0), im.get(k, 0))
        ci = Gaussian(1) / c
        num = _den_poly(_den_dict(self.den))
        out_re = {e - k: v * ci.re for e, v in num.items()} if ci.re else {}
        out_im = {e - k: v * ci.im for e, v in num.items()} if ci.im else {}
        return QScalar._make(out_re, out_im, factors)

    def __truediv__(self, other):
        other = QScalar._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return QScalar._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> "QScalar":
        """Complex conjugation of coefficients; q is real."""
        if not self.im:
            return self
        return QScalar(self.re, {k: -v for k, v in self.im.items()}, self.den)

    def subs_q_inverse(self) -> "QScalar":
        """Substitute ``q -> 1/q``."""
        if not self:
            return self
        re = {-k: v for k, v in self.re.items()}
        im = {-k: v for k, v in self.im.items()}
        if not self.den:
            return QScalar(re, im)
        # Phi_d(1/q) = q^-phi(d) Phi_d(q) for d > 1, Phi_1(1/q) = -q^-1 Phi_1(q)
        shift = 0
        sign = 1
        for d, m in self.den:
            shift += m * (len(cyclotomic(d)) - 1)
            if d == 1 and m % 2:
                sign = -sign
        return QScalar._make(_pscale(re, sign, shift), _pscale(im, sign, shift), _den_dict(self.den))

    # -- evaluation -----------------------------------------------------------

    def evaluate(self, q0: Number) -> Gaussian:
        q0 = Fraction(q0)
        re = sum((v * q0 ** k for k, v in self.re.items()), Fraction(0))
        im = sum((v * q0 ** k for k, v in self.im.items()), Fraction(0))
        val = Gaussian(re, im)
        if self.den:
            denom = Fraction(1)
            for d, m in self.den:
                phi = sum(c * q0 ** i for i, c in enumerate(cyclotomic(d)))
                denom *= Fraction(phi) ** m
            val = val * (1 / denom)
        return val

    # -- comparison / hashing -----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Gaussian)):
            other = QScalar.const(other)
        if not isinstance(other, QScalar):
            return NotImplemented
        return self.re == other.re and self.im == other.im and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (tuple(sorted(self.re.items())), tuple(sorted(self.im.items())), self.den)
            )
        return self._hash

    # -- text -------------------------------------------------------------------

    def is_single_term(self) -> bool:
        return not self.den and len(set(self.re) | set(self.im)) == 1 and not (
            self.re and self.im
        )

    def __repr__(self):
        return f"QScalar({self})"

    def __str__(self):
        num = _render_laurent(self.re, self.im)
        if not self.den:
            return num
        den = "*".join(
            (_render_cyclotomic(d) if m == 1 else f"{_render_cyclotomic(d)}^{m}")
            for d, m in self.den
        )
        return f"({num})/({den})" if len(self.den) > 1 or self.den[0][1] > 1 else f"({num})/{den}"


def _render_laurent(re: Poly, im: Poly) -> str:
    parts = []
    for k in sorted(set(re) | set(im), reverse=True):
        for c, unit in ((re.get(k), ""), (im.get(k), "i")):
            if not c:
                continue
            parts.append((c < 0, _render_term(abs(c), unit, k)))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] else "") + parts[0][1]
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


def _render_term(c: Fraction, unit: str, k: int) -> str:
    factors = []
    if c != 1 or (not unit and k == 0):
        factors.append(str(c))
    if unit:
        factors.append(unit)
    if k == 1:
        factors.append("q")
    elif k:
        factors.append(f"q^{k}")
    return "*".join(factors)


def _render_cyclotomic(d: int) -> str:
    coeffs = cyclotomic(d)
    poly = {i: Fraction(c) for i, c in enumerate(coeffs) if c}
    return "(" + _render_laurent(poly, {}) + ")"


ZERO = QScalar()
ONE = QScalar({0: Fraction(1)})
I = QScalar({}, {0: Fraction(1)})
Q = QScalar({1: Fraction(1)})
LAMBDA = QScalar({1: Fraction(1), -1: Fraction(-1)})
# lambda_+ is used but not defined alongside lambda; q + 1/q is the adopted convention
LAMBDA_PLUS = QScalar({1: Fraction(1), -1: Fraction(1)})
KAPPA = QScalar({6: Fraction(1)})


def qpow(k: int) -> QScalar:
    return QScalar({k: Fraction(1)})


# --------------------------------------------------------------------------
# q-numbers and factorials
# --------------------------------------------------------------------------


@lru_cache(maxsize=None)
def qnum(n: int, a: int) -> QScalar:
    """Antisymmetric q-number ``[[n]]_{q^a} = (1 - q^(a n)) / (1 - q^a)``.

    Negative ``n`` is allowed (``[[-n]] = -q^(-a n) [[n]]``); it shows up in
    the spin representations at negative magnetic quantum number.
    """
    if a == 0:
        raise ValueError("q-number base exponent must be nonzero")
    if n >= 0:
        return QScalar({a * k: Fraction(1) for k in range(n)})
    return -qnum(-n, a).shift(a * n)


@lru_cache(maxsize=None)
def qfact(n: int, a: int) -> QScalar:
    if n < 0:
        raise ValueError("q-factorial of a negative integer")
    if a == 0:
        raise ValueError("q-number base exponent must be nonzero")
    out = ONE
    for m in range(1, n + 1):
        out = out * qnum(m, a)
    return out


@lru_cache(maxsize=None)
def qdfact_even(two_k: int, a: int) -> QScalar:
    """Even double factorial ``[[2k]]!! = [[2]] [[4]] ... [[2k]]``."""
    if two_k < 0 or two_k % 2:
        raise ValueError("qdfact_even needs an even nonnegative argument")
    out = ONE
    for j in range(1, two_k // 2 + 1):
        out = out * qnum(2 * j, a)
    return out


@lru_cache(maxsize=None)
def inv_qfact(n: int, a: int) -> QScalar:
    return qfact(n, a).inverse()


class EvalPoint:
    """A rational evaluation point ``q0 > 0``, ``q0 != 1``."""

    __slots__ = ("q0",)

    def __init__(self, q0: Number):
        q0 = Fraction(q0)
        if q0 <= 0 or q0 == 1:
            raise ValueError("evaluation point must satisfy q0 > 0 and q0 != 1")
        self.q0 = q0

    def __repr__(self):
        return f"EvalPoint({self.q0})"


def evaluate(s: QScalar, at: EvalPoint | Number) -> Gaussian:
    q0 = at.q0 if isinstance(at, EvalPoint) else Fraction(at)
    return s.evaluate(q0)


def sum_scalars(items: Iterable[QScalar]) -> QScalar:
    out = ZERO
    for s in items:
        out = out + s
    return out
