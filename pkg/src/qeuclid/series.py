"""Commutative polynomials in named coordinate slots.

Each slot (``"x"``, ``"y"``, ``"p"``, ...) carries the three light-cone
axes ``+``, ``3``, ``-``. A :class:`CPoly` stores its slot names in sorted
order and its terms as ``{flat exponent tuple: QScalar}`` where slot ``i``
occupies positions ``3*i .. 3*i+2`` in the order ``(+, 3, -)``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Iterable, Mapping, Sequence, Tuple

from .scalars import ONE, ZERO, Gaussian, QScalar, qnum

__all__ = [
    "AXES",
    "AXIS_INDEX",
    "CPoly",
    "axis_index",
    "var",
    "const",
    "jackson_derivative",
    "jackson_antiderivative",
    "dilate",
    "conjugate_series",
    "weight",
    "substitute_linear",
    "random_cpoly",
    "monomials_up_to",
    "power_product",
    "map_slot",
    "swap_pm",
    "mirror",
]

AXES = ("+", "3", "-")
AXIS_INDEX = {"+": 0, "3": 1, "-": 2}
PLUS, THREE, MINUS = 0, 1, 2

Exps = Tuple[int, ...]


def axis_index(axis) -> int:
    if isinstance(axis, int):
        if axis not in (0, 1, 2):
            raise ValueError(f"bad axis {axis!r}")
        return axis
    try:
        return AXIS_INDEX[str(axis)]
    except KeyError:
        raise ValueError(f"bad axis {axis!r}; expected one of + 3 -") from None


def _scalar(c) -> QScalar:
    if isinstance(c, QScalar):
        return c
    return QScalar.const(c)


class CPoly:
    """Polynomial in commuting coordinates over :class:`QScalar`."""

    __slots__ = ("slots", "terms")

    def __init__(self, terms: Mapping[Exps, QScalar] | None = None, slots: Sequence[str] = ("x",)):
        self.slots = tuple(slots)
        if list(self.slots) != sorted(set(self.slots)):
            raise ValueError(f"slots must be sorted and distinct: {slots!r}")
        self.terms: Dict[Exps, QScalar] = dict(terms) if terms else {}

    # -- construction -----------------------------------------------------

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[Exps, QScalar]], slots: Sequence[str]) -> "CPoly":
        out: Dict[Exps, QScalar] = {}
        for e, c in terms:
            if not c:
                continue
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            else:
                del out[e]
        return cls(out, slots)

    @classmethod
    def zero(cls, slots: Sequence[str] = ("x",)) -> "CPoly":
        return cls({}, slots)

    @classmethod
    def one(cls, slots: Sequence[str] = ("x",)) -> "CPoly":
        return cls({(0,) * (3 * len(slots)): ONE}, slots)

    @classmethod
    def monomial(cls, exps: Mapping[Tuple[str, str], int] | Sequence[int], coeff=ONE,
                 slots: Sequence[str] | None = None) -> "CPoly":
        """Monomial from ``{(slot, axis): power}`` or a flat exponent tuple."""
        if isinstance(exps, Mapping):
            names = sorted({s for s, _ in exps} | set(slots or ()))
            if not names:
                names = ["x"]
            flat = [0] * (3 * len(names))
            for (s, a), n in exps.items():
                flat[3 * names.index(s) + axis_index(a)] += n
            key = tuple(flat)
        else:
            names = list(slots or ("x",))
            key = tuple(exps)
            if len(key) != 3 * len(names):
                raise ValueError("exponent tuple does not match slots")
        c = _scalar(coeff)
        return cls({key: c} if c else {}, names)

    # -- slot bookkeeping -----------------------------------------------------

    def align(self, slots: Sequence[str]) -> "CPoly":
        """Re-express over a superset of slots."""
        slots = tuple(sorted(set(slots)))
        if slots == self.slots:
            return self
        missing = set(self.slots) - set(slots)
        if missing:
            raise ValueError(f"cannot drop slots {sorted(missing)} by alignment")
        pos = [slots.index(s) for s in self.slots]
        n = 3 * len(slots)
        out = {}
        for e, c in self.terms.items():
            flat = [0] * n
            for i, p in enumerate(pos):
                flat[3 * p: 3 * p + 3] = e[3 * i: 3 * i + 3]
            out[tuple(flat)] = c
        return CPoly(out, slots)

    def _common(self, other: "CPoly"):
        slots = tuple(sorted(set(self.slots) | set(other.slots)))
        return self.align(slots), other.align(slots)

    def slot_offset(self, slot: str) -> int:
        try:
            return 3 * self.slots.index(slot)
        except ValueError:
            raise KeyError(f"slot {slot!r} not in {self.slots}") from None

    def rename(self, mapping: Mapping[str, str]) -> "CPoly":
        """Rename slots; targets must not collide."""
        new = [mapping.get(s, s) for s in self.slots]
        if len(set(new)) != len(new):
            raise ValueError("slot rename collides")
        order = sorted(range(len(new)), key=lambda i: new[i])
        out = {}
        for e, c in self.terms.items():
            flat = []
            for i in order:
                flat.extend(e[3 * i: 3 * i + 3])
            out[tuple(flat)] = c
        return CPoly(out, [new[i] for i in order])

    def drop_slot(self, slot: str) -> "CPoly":
        """Set every coordinate of ``slot`` to zero and remove the slot."""
        if slot not in self.slots:
            return self
        off = self.slot_offset(slot)
        keep = [s for s in self.slots if s != slot]
        out = {}
        for e, c in self.terms.items():
            if e[off] or e[off + 1] or e[off + 2]:
                continue
            out[e[:off] + e[off + 3:]] = c
        if not keep:
            keep = ["x"]
            out = {(0, 0, 0): c for c in out.values()}
        return CPoly(out, keep)

    def prune_slots(self) -> "CPoly":
        """Drop slots on which no term depends."""
        used = set()
        for e in self.terms:
            for i in range(len(self.slots)):
                if e[3 * i] or e[3 * i + 1] or e[3 * i + 2]:
                    used.add(i)
        if len(used) == len(self.slots) or not self.slots:
            return self
        keep = sorted(used) or [0]
        out = {}
        for e, c in self.terms.items():
            flat = []
            for i in keep:
                flat.extend(e[3 * i: 3 * i + 3])
            out[tuple(flat)] = c
        return CPoly(out, [self.slots[i] for i in keep])

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, CPoly):
            other = CPoly.one(self.slots).scale(_scalar(other))
        a, b = self._common(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return CPoly(out, a.slots)

    __radd__ = __add__

    def __neg__(self):
        return CPoly({e: -c for e, c in self.terms.items()}, self.slots)

    def __sub__(self, other):
        if not isinstance(other, CPoly):
            other = CPoly.one(self.slots).scale(_scalar(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "CPoly":
        c = _scalar(c)
        if not c:
            return CPoly({}, self.slots)
        if c == ONE:
            return self
        out = {}
        for e, v in self.terms.items():
            p = v * c
            if p:
                out[e] = p
        return CPoly(out, self.slots)

    def __mul__(self, other):
        if not isinstance(other, CPoly):
            return self.scale(other)
        a, b = self._common(other)
        out: Dict[Exps, QScalar] = {}
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                p = ca * cb
                s = out.get(e)
                out[e] = p if s is None else s + p
        return CPoly({e: c for e, c in out.items() if c}, a.slots)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        out = CPoly.one(self.slots)
        for _ in range(n):
            out = out * self
        return out

    def map_coeffs(self, fn: Callable[[QScalar], QScalar]) -> "CPoly":
        return CPoly.from_terms(((e, fn(c)) for e, c in self.terms.items()), self.slots)

    # -- queries ----------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, CPoly):
            if isinstance(other, (int, Fraction, QScalar, Gaussian)):
                other = CPoly.one(self.slots).scale(_scalar(other))
            else:
                return NotImplemented
        a, b = self._common(other)
        return a.terms == b.terms

    def __hash__(self):
        p = self.prune_slots()
        return hash((p.slots, frozenset(p.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self, slot: str | None = None) -> int:
        if not self.terms:
            return -1
        if slot is None:
            return max(sum(e) for e in self.terms)
        if slot not in self.slots:
            return 0
        off = self.slot_offset(slot)
        return max(e[off] + e[off + 1] + e[off + 2] for e in self.terms)

    def axis_degree(self, slot: str, axis) -> int:
        if slot not in self.slots:
            return 0
        k = self.slot_offset(slot) + axis_index(axis)
        return max((e[k] for e in self.terms), default=-1)

    def coefficient(self, exps: Mapping[Tuple[str, str], int] | Sequence[int]) -> QScalar:
        if isinstance(exps, Mapping):
            flat = [0] * (3 * len(self.slots))
            for (s, a), n in exps.items():
                if s not in self.slots:
                    if n:
                        return ZERO
                    continue
                flat[self.slot_offset(s) + axis_index(a)] += n
            key = tuple(flat)
        else:
            key = tuple(exps)
        return self.terms.get(key, ZERO)

    def homogeneous_part(self, degree: int, slot: str | None = None) -> "CPoly":
        if slot is None:
            return CPoly({e: c for e, c in self.terms.items() if sum(e) == degree}, self.slots)
        off = self.slot_offset(slot)
        return CPoly({e: c for e, c in self.terms.items()
                      if e[off] + e[off + 1] + e[off + 2] == degree}, self.slots)

    def truncate(self, slot: str, max_degree: int) -> "CPoly":
        if slot not in self.slots:
            return self
        off = self.slot_offset(slot)
        return CPoly({e: c for e, c in self.terms.items()
                      if e[off] + e[off + 1] + e[off + 2] <= max_degree}, self.slots)

    def evaluate(self, point: Mapping[Tuple[str, str], Fraction], q0) -> Gaussian:
        """Numeric value at rational coordinates (missing coordinates are 0)."""
        vals = []
        for s in self.slots:
            for a in AXES:
                vals.append(Fraction(point.get((s, a), 0)))
        total = Gaussian(0)
        cache: Dict[QScalar, Gaussian] = {}
        for e, c in self.terms.items():
            m = Fraction(1)
            for v, n in zip(vals, e):
                if n:
                    m *= v ** n
                    if not m:
                        break
            if not m:
                continue
            g = cache.get(c)
            if g is None:
                g = cache[c] = c.evaluate(q0)
            total = total + g * m
        return total

    def evaluate_q(self, q0) -> Dict[Exps, Gaussian]:
        return {e: c.evaluate(q0) for e, c in self.terms.items()}

    def __repr__(self):
        return f"CPoly({self})"

    def __str__(self):
        from .text import render_cpoly

        return render_cpoly(self)


def var(axis, slot: str = "x") -> CPoly:
    """The coordinate ``slot.x^axis``."""
    e = [0, 0, 0]
    e[axis_index(axis)] = 1
    return CPoly({tuple(e): ONE}, (slot,))


def const(c, slots: Sequence[str] = ("x",)) -> CPoly:
    return CPoly.one(slots).scale(_scalar(c))


# --------------------------------------------------------------------------
# Jackson calculus and dilations
# --------------------------------------------------------------------------


def _axis_pos(f: CPoly, slot: str, axis) -> int:
    return f.slot_offset(slot) + axis_index(axis)


def jackson_derivative(f: CPoly, slot: str, axis, m: int, times: int = 1) -> CPoly:
    """``D_{q^m}`` on one axis: ``x^n -> [[n]]_{q^m} x^(n-1)``."""
    if m == 0:
        raise ValueError("Jackson derivative needs a nonzero dilation exponent")
    if times == 0:
        return f
    if slot not in f.slots:
        return CPoly({}, f.slots)
    k = _axis_pos(f, slot, axis)
    out = {}
    for e, c in f.terms.items():
        n = e[k]
        if n < times:
            continue
        factor = ONE
        for j in range(times):
            factor = factor * qnum(n - j, m)
        v = c * factor
        if v:
            ne = list(e)
            ne[k] = n - times
            ne = tuple(ne)
            s = out.get(ne)
            v = v if s is None else s + v
            if v:
                out[ne] = v
            else:
                out.pop(ne)
    return CPoly(out, f.slots)


def jackson_antiderivative(f: CPoly, slot: str, axis, m: int) -> CPoly:
    """Right inverse of :func:`jackson_derivative` vanishing at the origin."""
    if m == 0:
        raise ValueError("Jackson antiderivative needs a nonzero dilation exponent")
    f = f.align(set(f.slots) | {slot})
    k = _axis_pos(f, slot, axis)
    out = {}
    for e, c in f.terms.items():
        ne = list(e)
        ne[k] += 1
        out[tuple(ne)] = c / qnum(e[k] + 1, m)
    return CPoly(out, f.slots)


def dilate(f: CPoly, slot: str, axis, m: int) -> CPoly:
    """``q^{m n_A}``: rescale the axis argument by ``q^m``."""
    if m == 0 or slot not in f.slots:
        return f
    k = _axis_pos(f, slot, axis)
    return CPoly({e: c.shift(m * e[k]) if e[k] else c for e, c in f.terms.items()}, f.slots)


def weight(f: CPoly, fn: Callable[[Exps], int]) -> CPoly:
    """Multiply each term by ``q**fn(exponents)``; general ``q^{quadratic(n)}``."""
    return CPoly({e: c.shift(fn(e)) for e, c in f.terms.items()}, f.slots)


# conjugation image of each axis: x^+ -> -q x^-, x^3 -> x^3, x^- -> -q^-1 x^+
_CONJ_TARGET = (MINUS, THREE, PLUS)
_CONJ_FACTOR = (-1, 1, -1)
_CONJ_QPOW = (1, 0, -1)


def conjugate_series(f: CPoly, slots: Iterable[str] | None = None) -> CPoly:
    """Quantum-space conjugation of a commutative polynomial.

    Coefficients are complex conjugated and every contravariant coordinate
    is replaced by its covariant partner ``x_A = g_AB x^B``, in every slot
    (or only the given ones).
    """
    chosen = set(f.slots if slots is None else slots)
    offsets = [3 * i for i, s in enumerate(f.slots) if s in chosen]
    out = {}
    for e, c in f.terms.items():
        ne = list(e)
        sign = 1
        shift = 0
        for off in offsets:
            a, b, d = e[off], e[off + 1], e[off + 2]
            ne[off], ne[off + 1], ne[off + 2] = d, b, a
            if (a + d) % 2:
                sign = -sign
            shift += a - d
        v = c.conj().shift(shift)
        out[tuple(ne)] = -v if sign < 0 else v
    return CPoly(out, f.slots)


def substitute_linear(f: CPoly, slot: str, images: Sequence[Tuple[int, QScalar]]) -> CPoly:
    """Replace each axis ``A`` of ``slot`` by ``scale_A * x^{target_A}``.

    ``images[A] = (target_axis, scale)``; used for inversions and similar
    argument rescalings that permute axes.
    """
    off = f.slot_offset(slot)
    out: Dict[Exps, QScalar] = {}
    for e, c in f.terms.items():
        ne = list(e)
        ne[off: off + 3] = [0, 0, 0]
        v = c
        for a in range(3):
            n = e[off + a]
            if n:
                t, s = images[a]
                ne[off + t] += n
                v = v * s ** n
        ne = tuple(ne)
        prev = out.get(ne)
        v = v if prev is None else prev + v
        if v:
            out[ne] = v
        else:
            out.pop(ne, None)
    return CPoly(out, f.slots)


def random_cpoly(rng, max_degree: int, slots: Sequence[str] = ("x",), n_terms: int = 4,
                 complex_coeffs: bool = True, q_spread: int = 2) -> CPoly:
    """Random polynomial with small Gaussian-rational Laurent coefficients."""
    terms = []
    nslots = len(slots)
    for _ in range(n_terms):
        deg = rng.randint(0, max_degree)
        flat = [0] * (3 * nslots)
        for _ in range(deg):
            flat[rng.randrange(3 * nslots)] += 1
        coeff = {}
        for _ in range(rng.randint(1, 2)):
            k = rng.randint(-q_spread, q_spread)
            re = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
            im = Fraction(rng.randint(-5, 5), rng.randint(1, 4)) if complex_coeffs else 0
            coeff[k] = Gaussian(re, im)
        terms.append((tuple(flat), QScalar.from_terms(coeff)))
    return CPoly.from_terms(terms, sorted(slots))


def monomials_up_to(degree: int) -> list:
    """All exponent triples ``(i+, i3, i-)`` with total degree ``<= degree``."""
    out = []
    for d in range(degree + 1):
        for a in range(d + 1):
            for b in range(d - a + 1):
                out.append((a, b, d - a - b))
    return out


def power_product(exps: Exps) -> CPoly:
    return CPoly({tuple(exps): ONE}, ("x",))



def map_slot(f: CPoly, slot: str, mono_map: Callable[[Exps], Iterable[Tuple[Exps, QScalar]]],
             out_slots: Sequence[str] | None = None) -> CPoly:
    """Apply a linear map defined on monomials of one slot.

    ``mono_map(e)`` takes the slot's three exponents and yields
    ``(exponents, coeff)`` where ``exponents`` has ``3 * len(out_slots)``
    entries, one triple per output slot. Other slots are carried along; an
    output slot may coincide with a spectator, in which case exponents add.
    """
    out_slots = tuple(out_slots or (slot,))
    if slot not in f.slots:
        f = f.align(set(f.slots) | {slot})
    rest = [s for s in f.slots if s != slot]
    slots = tuple(sorted(set(rest) | set(out_slots)))
    off = f.slot_offset(slot)
    rest_pos = [3 * slots.index(s) for s in rest]
    out_pos = [3 * slots.index(s) for s in out_slots]
    rest_src = [3 * f.slots.index(s) for s in rest]
    cache: Dict[Exps, tuple] = {}
    acc: Dict[Exps, QScalar] = {}
    n = 3 * len(slots)
    for e, c in f.terms.items():
        m = e[off: off + 3]
        images = cache.get(m)
        if images is None:
            images = cache[m] = tuple(mono_map(m))
        base = [0] * n
        for src, dst in zip(rest_src, rest_pos):
            base[dst: dst + 3] = e[src: src + 3]
        for ex, k in images:
            flat = list(base)
            for i, dst in enumerate(out_pos):
                for a in range(3):
                    flat[dst + a] += ex[3 * i + a]
            key = tuple(flat)
            v = c * k
            s = acc.get(key)
            acc[key] = v if s is None else s + v
    return CPoly({k: v for k, v in acc.items() if v}, slots)


def swap_pm(f: CPoly) -> CPoly:
    """Exchange the ``+`` and ``-`` axes in every slot."""
    out = {}
    for e, c in f.terms.items():
        ne = list(e)
        for off in range(0, len(e), 3):
            ne[off], ne[off + 2] = e[off + 2], e[off]
        out[tuple(ne)] = c
    return CPoly(out, f.slots)


def mirror(f: CPoly) -> CPoly:
    """``q -> 1/q`` on coefficients combined with ``+ <-> -``.

    Conjugating a q-linear operator by this involution produces its mirror
    image with every ``q`` inverted and the light-cone axes exchanged.
    """
    return swap_pm(f.map_coeffs(QScalar.subs_q_inverse))
