"""Exact Jackson integration on signed q-lattices.

Each axis carries the lattice ``{s * step^j * base : s = +-1, j in Z}`` with
step ``q^2`` on the ``+`` and ``-`` axes and ``q`` on the ``3`` axis. A
:class:`LatticeWindow` restricts indices to ``|j| <= J``; functions are
compactly supported when they vanish for ``|j| > J - M``.

With ``conjugate_bases=True`` (the default) the ``-`` axis uses the base
``x0 / q`` so that quantum-space conjugation ``x+ -> -q x-``,
``x- -> -x+ / q`` maps lattice points to lattice points. The whole-space
normalization factor is 1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, Iterator, Optional, Tuple

from .derivative_actions import ACTIONS
from .scalars import LAMBDA, Gaussian, QScalar, inv_qfact, qnum
from .series import CPoly, conjugate_series, var
from .star_product import star

__all__ = [
    "LatticeWindow",
    "LatticeFn",
    "MarginError",
    "jackson_integral_line",
    "integral_R3",
    "integral_poly",
    "sample",
    "cutoff",
    "d_left_lattice",
    "action_lattice",
    "conjugate_lattice",
    "star_poly_lattice",
    "expectation",
    "density",
    "stokes_residual",
    "by_parts_residual",
    "random_compact",
    "stencil",
    "position_component",
]

# lattice step exponent per axis (+, 3, -)
STEP = (2, 1, 2)

Index = Tuple[int, int, int, int, int, int]  # (s+, j+, s3, j3, s-, j-)


class MarginError(ValueError):
    """A lattice operation would reach outside the window."""


@dataclass(frozen=True)
class LatticeWindow:
    q0: Fraction = Fraction(11, 10)
    x0: Fraction = Fraction(1)
    J: int = 10
    M: int = 4
    conjugate_bases: bool = True

    def __post_init__(self):
        object.__setattr__(self, "q0", Fraction(self.q0))
        object.__setattr__(self, "x0", Fraction(self.x0))
        if self.q0 <= 1:
            raise ValueError("lattice integrals need q0 > 1")
        if self.x0 <= 0:
            raise ValueError("x0 must be positive")
        if self.M < 4:
            raise ValueError("margin M must be at least 4")
        if self.J < self.M:
            raise ValueError("window half-width J must be at least M")

    @property
    def inner(self) -> int:
        """Largest index magnitude allowed for compactly supported functions."""
        return self.J - self.M

    def base(self, axis: int) -> Fraction:
        if axis == 2 and self.conjugate_bases:
            return self.x0 / self.q0
        return self.x0

    def coord(self, axis: int, sign: int, j: int) -> Fraction:
        return sign * self._pow(STEP[axis] * j) * self.base(axis)

    def weight(self, axis: int, sign: int, j: int) -> Fraction:
        """Jackson weight ``(step - 1) |x|`` of one lattice point."""
        return (self._pow(STEP[axis]) - 1) * self._pow(STEP[axis] * j) * self.base(axis)

    def _pow(self, k: int) -> Fraction:
        return _qpow_cached(self.q0, k)

    def qval(self, s: QScalar) -> Gaussian:
        return _eval_cached(s, self.q0)

    def points(self, inner: bool = False) -> Iterator[Index]:
        r = self.inner if inner else self.J
        line = [(s, j) for s in (1, -1) for j in range(-r, r + 1)]
        for sp, jp in line:
            for s3, j3 in line:
                for sm, jm in line:
                    yield (sp, jp, s3, j3, sm, jm)

    def contains(self, idx: Index, inner: bool = False) -> bool:
        r = self.inner if inner else self.J
        return abs(idx[1]) <= r and abs(idx[3]) <= r and abs(idx[5]) <= r


@lru_cache(maxsize=None)
def _qpow_cached(q0: Fraction, k: int) -> Fraction:
    return q0 ** k


@lru_cache(maxsize=4096)
def _eval_cached(s: QScalar, q0: Fraction) -> Gaussian:
    return s.evaluate(q0)


_ZERO = Gaussian(0)


@dataclass
class LatticeFn:
    """Finitely supported function on the signed lattice, values Gaussian rationals."""

    window: LatticeWindow
    values: Dict[Index, Gaussian] = field(default_factory=dict)

    def __call__(self, idx: Index) -> Gaussian:
        return self.values.get(idx, _ZERO)

    def prune(self) -> "LatticeFn":
        self.values = {k: v for k, v in self.values.items() if v}
        return self

    def __add__(self, other: "LatticeFn") -> "LatticeFn":
        out = dict(self.values)
        for k, v in other.values.items():
            out[k] = out.get(k, _ZERO) + v
        return LatticeFn(self.window, out).prune()

    def __sub__(self, other: "LatticeFn") -> "LatticeFn":
        return self + other.scale(Gaussian(-1))

    def scale(self, c) -> "LatticeFn":
        c = Gaussian.coerce(c)
        return LatticeFn(self.window, {k: v * c for k, v in self.values.items()}).prune()

    def support_radius(self) -> int:
        return max((max(abs(k[1]), abs(k[3]), abs(k[5])) for k in self.values), default=0)

    def is_compact(self) -> bool:
        return all(self.window.contains(k, inner=True) for k in self.values)

    def require_within(self, radius: int, what: str) -> None:
        if self.values and self.support_radius() > radius:
            raise MarginError(f"{what}: support radius {self.support_radius()} exceeds {radius}")

    def is_zero(self) -> bool:
        return not any(self.values.values())


# --------------------------------------------------------------------------
# integrals
# --------------------------------------------------------------------------


def jackson_integral_line(f: Callable[[Fraction], Gaussian], x: Fraction, q0, kind: str = "zero_to_x",
                          step: int = 1, terms: Optional[int] = None) -> Gaussian:
    """One-dimensional Jackson integral with dilation ``q^step``.

    ``zero_to_x``:      ``(Q-1) x sum_{j>=1} Q^-j f(Q^-j x)``
    ``x_to_infinity``:  ``(Q-1) x sum_{j>=0} Q^j f(Q^j x)``
    ``full_line``:      both signs of ``x_to_infinity`` plus ``zero_to_x``

    ``Q = q0**step``. Infinite ranges need ``terms`` (the number of lattice
    points carrying support); ``f`` must vanish beyond them.
    """
    Q = Fraction(q0) ** step
    x = Fraction(x)
    if Q <= 1 or x <= 0:
        raise ValueError("need q0 > 1 and x > 0")
    if terms is None:
        raise ValueError("an explicit number of lattice terms is required")
    total = Gaussian(0)
    if kind in ("zero_to_x", "full_line"):
        for j in range(1, terms + 1):
            for s in ((1,) if kind == "zero_to_x" else (1, -1)):
                total = total + Gaussian.coerce(f(s * x / Q ** j)) * (Q ** -j)
    if kind in ("x_to_infinity", "full_line"):
        for j in range(terms):
            for s in ((1,) if kind == "x_to_infinity" else (1, -1)):
                total = total + Gaussian.coerce(f(s * x * Q ** j)) * (Q ** j)
    if kind not in ("zero_to_x", "x_to_infinity", "full_line"):
        raise ValueError(f"unknown range {kind!r}")
    return total * ((Q - 1) * x)


def integral_R3(F: LatticeFn) -> Gaussian:
    """Whole-space integral: iterated full-line Jackson sums over the support."""
    w = F.window
    total = Gaussian(0)
    for (sp, jp, s3, j3, sm, jm), v in F.values.items():
        if not v:
            continue
        wt = w.weight(0, sp, jp) * w.weight(1, s3, j3) * w.weight(2, sm, jm)
        total = total + v * wt
    return total


@lru_cache(maxsize=None)
def _line_moment(w: LatticeWindow, axis: int, n: int, radius: int) -> Fraction:
    """``sum_{s, |j| <= radius} weight * x^n``; odd moments cancel."""
    if n % 2:
        return Fraction(0)
    total = Fraction(0)
    for j in range(-radius, radius + 1):
        x = w.coord(axis, 1, j)
        total += 2 * w.weight(axis, 1, j) * x ** n
    return total


def integral_poly(f: CPoly, w: LatticeWindow, radius: Optional[int] = None) -> Gaussian:
    """Integral of ``cutoff(f)`` computed axis by axis (Fubini on finite sums)."""
    r = w.inner if radius is None else radius
    f = f.prune_slots()
    if f.slots != ("x",) and f.terms:
        raise ValueError("integral_poly expects a polynomial in the x slot")
    total = Gaussian(0)
    for e, c in f.terms.items():
        m = _line_moment(w, 0, e[0], r) * _line_moment(w, 1, e[1], r) * _line_moment(w, 2, e[2], r)
        if m:
            total = total + w.qval(c) * m
    return total


# --------------------------------------------------------------------------
# sampling
# --------------------------------------------------------------------------


def _eval_at(f: CPoly, w: LatticeWindow, idx: Index, coeffs: Dict) -> Gaussian:
    sp, jp, s3, j3, sm, jm = idx
    xp, x3, xm = w.coord(0, sp, jp), w.coord(1, s3, j3), w.coord(2, sm, jm)
    total = Gaussian(0)
    for e, c in coeffs.items():
        total = total + c * (xp ** e[0] * x3 ** e[1] * xm ** e[2])
    return total


def sample(f: CPoly, w: LatticeWindow, inner: bool = False,
           indices: Optional[Iterable[Index]] = None) -> LatticeFn:
    """Values of ``f`` at every window point, or only at ``indices``."""
    f = f.prune_slots()
    coeffs = {e: w.qval(c) for e, c in f.terms.items()}
    pts = w.points(inner) if indices is None else indices
    return LatticeFn(w, {idx: _eval_at(f, w, idx, coeffs) for idx in pts}).prune()


def stencil(center: Index, reach: int = 4) -> Iterator[Index]:
    """All indices within ``reach`` steps of ``center`` on every axis (same signs)."""
    sp, jp, s3, j3, sm, jm = center
    r = range(-reach, reach + 1)
    for a in r:
        for b in r:
            for c in r:
                yield (sp, jp + a, s3, j3 + b, sm, jm + c)


def cutoff(f: CPoly, w: LatticeWindow) -> LatticeFn:
    """``sample`` with the outer ``M`` shells set to zero."""
    return sample(f, w, inner=True)


def random_compact(rng: random.Random, w: LatticeWindow, n_points: int = 20, radius: Optional[int] = None,
                   complex_values: bool = True) -> LatticeFn:
    """Random function supported on ``n_points`` points with ``|j| <= radius``."""
    r = w.inner if radius is None else radius
    vals = {}
    for _ in range(n_points):
        idx = (rng.choice((1, -1)), rng.randint(-r, r), rng.choice((1, -1)), rng.randint(-r, r),
               rng.choice((1, -1)), rng.randint(-r, r))
        re = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        im = Fraction(rng.randint(-9, 9), rng.randint(1, 5)) if complex_values else 0
        vals[idx] = Gaussian(re, im)
    return LatticeFn(w, vals).prune()


# --------------------------------------------------------------------------
# difference operators
# --------------------------------------------------------------------------


def _shift(g: LatticeFn, axis: int, steps: int) -> LatticeFn:
    """``g(step^steps x^axis)`` as a new function."""
    if not steps:
        return g
    p = 1 + 2 * axis
    out = {}
    for k, v in g.values.items():
        nk = list(k)
        nk[p] -= steps
        out[tuple(nk)] = v
    return LatticeFn(g.window, out)


def _mul_coord(g: LatticeFn, axis: int, power: int = 1) -> LatticeFn:
    if not power:
        return g
    w = g.window
    s, p = 2 * axis, 2 * axis + 1
    return LatticeFn(w, {k: v * (w.coord(axis, k[s], k[p]) ** power) for k, v in g.values.items()}).prune()


def _dilation_steps(axis: int, m: int) -> int:
    if m % STEP[axis]:
        raise ValueError(f"dilation q^{m} is not a lattice step on axis {axis}")
    return m // STEP[axis]


def _jackson(g: LatticeFn, axis: int, m: int) -> LatticeFn:
    """``(g(q^m x) - g(x)) / ((q^m - 1) x)`` on one axis."""
    w = g.window
    steps = _dilation_steps(axis, m)
    diff = _shift(g, axis, steps) - g
    qm = w._pow(m) - 1
    s, p = 2 * axis, 2 * axis + 1
    return LatticeFn(w, {k: v / (qm * w.coord(axis, k[s], k[p])) for k, v in diff.values.items()}).prune()


def _dilate(g: LatticeFn, axis: int, m: int) -> LatticeFn:
    return _shift(g, axis, _dilation_steps(axis, m))


def _left_cov(a: int, g: LatticeFn) -> LatticeFn:
    lam = g.window.qval(LAMBDA)
    if a == 0:
        return _jackson(g, 0, 4)
    if a == 1:
        return _jackson(_dilate(g, 0, 2), 1, 2)
    first = _jackson(_dilate(g, 1, 2), 2, 4)
    second = _mul_coord(_jackson(_jackson(g, 1, 2), 1, 2), 0).scale(lam)
    return first + second


def _left_bar_cov(a: int, g: LatticeFn) -> LatticeFn:
    lam = g.window.qval(LAMBDA)
    if a == 2:
        return _jackson(g, 2, -4)
    if a == 1:
        return _jackson(_dilate(g, 2, -2), 1, -2)
    first = _jackson(_dilate(g, 1, -2), 0, -4)
    second = _mul_coord(_jackson(_jackson(g, 1, -2), 1, -2), 2).scale(lam)
    return first - second


_PARTNER = (2, 1, 0)


def _raise(cov, a: int, g: LatticeFn) -> LatticeFn:
    q0 = g.window.q0
    factor = (-q0, Fraction(1), -1 / q0)[a]
    return cov(_PARTNER[a], g).scale(factor)


def conjugate_lattice(g: LatticeFn) -> LatticeFn:
    """Quantum-space conjugation of a lattice function.

    ``gbar(x+, x3, x-) = conj(g(-q x-, x3, -x+/q))``; needs conjugate bases.
    """
    w = g.window
    if not w.conjugate_bases:
        raise ValueError("conjugation needs a window with conjugate_bases=True")
    out = {}
    for (sp, jp, s3, j3, sm, jm), v in g.values.items():
        # the point (sp, jp) on the + axis is the image of (-sp, jp) on the - axis
        out[(-sm, jm, s3, j3, -sp, jp)] = v.conj()
    return LatticeFn(w, out)


def action_lattice(kind: str, axis, g: LatticeFn, upper: bool = False) -> LatticeFn:
    """Lattice version of the derivative actions (``left``, ``right_bar``, ``left_bar``, ``right``)."""
    from .series import axis_index

    a = axis_index(axis)
    if kind in ("left", "left_bar"):
        cov = _left_cov if kind == "left" else _left_bar_cov
        return _raise(cov, a, g) if upper else cov(a, g)
    if kind in ("right_bar", "right"):
        inner = "left" if kind == "right_bar" else "left_bar"
        img = action_lattice(inner, a, conjugate_lattice(g), not upper)
        return conjugate_lattice(img).scale(Gaussian(-1))
    raise ValueError(f"unknown action kind {kind!r}")


def d_left_lattice(axis, g: LatticeFn, upper: bool = False) -> LatticeFn:
    """``d_A > g`` realised with index shifts; exact on the lattice."""
    g.require_within(g.window.inner, "d_left_lattice input")
    return action_lattice("left", axis, g, upper)


# --------------------------------------------------------------------------
# star product with one polynomial factor
# --------------------------------------------------------------------------


def _poly_left_star(e: Tuple[int, int, int], c: Gaussian, g: LatticeFn) -> LatticeFn:
    """``(c x^e) * g`` for a monomial on the left."""
    w = g.window
    a_p, a_3, a_m = e
    out = LatticeFn(w, {})
    dk = g
    for k in range(a_m + 1):
        # D^k_{q^4, x-} x^e = falling * x^(a+, a3, a- - k)
        coef = w.qval(_falling(a_m, k, 4) * inv_qfact(k, 4) * LAMBDA ** k) * c
        # dilation weight q^{2 (n3 n'+ + n- n'3)} with n = (a+, a3, a- - k)
        h = _dilate(_dilate(dk, 0, 2 * a_3), 1, 2 * (a_m - k))
        h = _mul_coord(_mul_coord(_mul_coord(h, 0, a_p), 1, a_3 + 2 * k), 2, a_m - k)
        out = out + h.scale(coef)
        dk = _jackson(dk, 0, 4)
        if dk.is_zero():
            break
    return out


def _poly_right_star(e: Tuple[int, int, int], c: Gaussian, g: LatticeFn) -> LatticeFn:
    """``g * (c x^e)`` for a monomial on the right."""
    w = g.window
    b_p, b_3, b_m = e
    out = LatticeFn(w, {})
    dk = g
    for k in range(b_p + 1):
        coef = w.qval(_falling(b_p, k, 4) * inv_qfact(k, 4) * LAMBDA ** k) * c
        # n' = (b+ - k, b3, b-) belongs to the polynomial; n acts on g
        h = _dilate(_dilate(dk, 1, 2 * (b_p - k)), 2, 2 * b_3)
        h = _mul_coord(_mul_coord(_mul_coord(h, 0, b_p - k), 1, b_3 + 2 * k), 2, b_m)
        out = out + h.scale(coef)
        dk = _jackson(dk, 2, 4)
        if dk.is_zero():
            break
    return out


def _falling(n: int, k: int, a: int) -> QScalar:
    from .scalars import ONE

    out = ONE
    for j in range(k):
        out = out * qnum(n - j, a)
    return out


def star_poly_lattice(f: CPoly, g: LatticeFn, side: str = "left") -> LatticeFn:
    """``f * g`` (``side='left'``) or ``g * f`` (``side='right'``) for polynomial ``f``."""
    w = g.window
    fn = _poly_left_star if side == "left" else _poly_right_star
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    out = LatticeFn(w, {})
    for e, c in f.prune_slots().terms.items():
        out = out + fn(e, w.qval(c), g)
    return out


# --------------------------------------------------------------------------
# physics layer
# --------------------------------------------------------------------------


def position_component(i: int) -> CPoly:
    """Self-adjoint position components, scaled by ``q^(1/2)`` to stay in Z[q, 1/q].

    ``1: (i/2)(-x+ - q x-)``, ``2: (1/2)(-x+ + q x-)``, ``3: x3``.
    """
    from .scalars import I as IU, ONE, qpow

    half = QScalar.const(Fraction(1, 2))
    xp, x3, xm = var(0), var(1), var(2)
    if i == 1:
        return (-xp - xm.scale(qpow(1))).scale(IU * half)
    if i == 2:
        return (-xp + xm.scale(qpow(1))).scale(half)
    if i == 3:
        return x3.scale(ONE)
    raise ValueError("component index must be 1, 2 or 3")


def _observable_poly(observable, psi: CPoly) -> CPoly:
    left = conjugate_series(psi)
    if observable in (None, 1, "1"):
        right = psi
    elif isinstance(observable, CPoly):
        right = star(observable, psi)
    elif isinstance(observable, str) and observable[0] == "X":
        right = star(position_component(int(observable[1:])), psi)
    elif isinstance(observable, str) and observable[0] == "P":
        from .derivative_actions import momentum_apply

        right = momentum_apply({"P+": 0, "P3": 1, "P-": 2}[observable], psi)
    else:
        raise ValueError(f"unknown observable {observable!r}")
    return star(left, right)


def expectation(observable, psi: CPoly, w: LatticeWindow) -> Gaussian:
    """Windowed ``integral psi_L^* * (O > psi)`` with ``psi_L^* = conj(psi)``.

    ``observable`` is ``1``, ``"X1"``, ``"X2"``, ``"X3"``, ``"P+"``,
    ``"P3"``, ``"P-"`` or a polynomial acting by left star multiplication.
    """
    return integral_poly(_observable_poly(observable, psi), w)


def density(psi: CPoly, w: LatticeWindow) -> LatticeFn:
    """``psi_L^* * psi_R`` sampled on the window with the margin cut off."""
    return cutoff(star(conjugate_series(psi), psi), w)


def stokes_residual(kind: str, axis, g: LatticeFn, upper: bool = True) -> Gaussian:
    """Whole-space integral of a derivative image of a compact function."""
    g.require_within(g.window.inner, "stokes_residual input")
    return integral_R3(action_lattice(kind, axis, g, upper))


def by_parts_residual(right_kind: str, axis, f: CPoly, g: LatticeFn) -> Gaussian:
    """``int f * (d^A > g) - int (f <_kind d^A) * g`` for polynomial ``f``."""
    g.require_within(g.window.inner, "by_parts_residual input")
    lhs = integral_R3(star_poly_lattice(f, action_lattice("left", axis, g, upper=True), "left"))
    f_right = ACTIONS[right_kind](axis, f, "x", upper=True)
    rhs = integral_R3(star_poly_lattice(f_right, g, "left"))
    return lhs - rhs

