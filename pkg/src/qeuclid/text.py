"""Text rendering and parsing for scalars, commutative series and NC words.

Grammar (whitespace insensitive)::

    expr    := term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := ('-' | '+') factor | atom ('^' int)?
    atom    := number | 'q' | 'i' | variable | word-letter | '(' expr ')'
    variable:= [slot '.'] 'x' ('+' | '3' | '-')     # default slot is x
    letter  := 'X' ('+' | '3' | '-')                 # noncommutative words

A variable ``x+`` followed by ``^2`` is read as the power; the ``+``/``-``
right after ``x``/``X`` always belongs to the name.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Tuple

from .scalars import ONE, I, Q, QScalar

__all__ = ["ParseError", "parse_scalar", "parse_cpoly", "parse_ncpoly", "render_cpoly", "render_ncpoly",
           "render_scalar"]


class ParseError(ValueError):
    """Syntax error with the offending character position."""

    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


# --------------------------------------------------------------------------
# rendering
# --------------------------------------------------------------------------

_AX = ("+", "3", "-")


def render_scalar(s: QScalar) -> str:
    return str(s)


def _render_mono(slots, e) -> str:
    parts = []
    for i in sorted(range(len(slots)), key=lambda i: (slots[i] != "x", slots[i])):
        slot = slots[i]
        prefix = "" if slot == "x" else f"{slot}."
        for a in range(3):
            n = e[3 * i + a]
            if not n:
                continue
            name = f"{prefix}x{_AX[a]}"
            parts.append(name if n == 1 else f"{name}^{n}")
    return "*".join(parts)


def _mono_sort_key(slots, e):
    # x slot first, then others alphabetically; higher degree first
    order = sorted(range(len(slots)), key=lambda i: (slots[i] != "x", slots[i]))
    flat = tuple(x for i in order for x in e[3 * i: 3 * i + 3])
    return (-sum(e), tuple(-x for x in flat))


def _render_coeff_term(coeff: QScalar, mono: str) -> Tuple[bool, str]:
    """Return (negative, body) for ``coeff * mono``."""
    if coeff.is_single_term():
        (k, g), = coeff.terms.items()
        val = g.re if g.re else g.im
        unit = "" if g.re else "i"
        neg = val < 0
        val = abs(val)
        factors = []
        if val != 1:
            factors.append(str(val))
        if unit:
            factors.append(unit)
        if k == 1:
            factors.append("q")
        elif k:
            factors.append(f"q^{k}")
        if mono:
            factors.append(mono)
        if not factors:
            factors.append("1")
        return neg, "*".join(factors)
    text = str(coeff)
    if not text.startswith("(") or coeff.den == ():
        text = f"({text})"
    return False, f"{text}*{mono}" if mono else text


def render_cpoly(f) -> str:
    if not f.terms:
        return "0"
    items = sorted(f.terms.items(), key=lambda t: _mono_sort_key(f.slots, t[0]))
    pieces = [_render_coeff_term(c, _render_mono(f.slots, e)) for e, c in items]
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


def render_ncpoly(F) -> str:
    if not F.terms:
        return "0"
    pieces = []
    for w, c in sorted(F.terms.items(), key=lambda t: (-len(t[0]), t[0])):
        mono = _render_word(w)
        pieces.append(_render_coeff_term(c, mono))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


def _render_word(w) -> str:
    if not w:
        return ""
    out = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        name = f"X{_AX[w[i]]}"
        out.append(name if j - i == 1 else f"{name}^{j - i}")
        i = j
    return " ".join(out)


# --------------------------------------------------------------------------
# parsing
# --------------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>(?:[a-wyz]\.)?x[+3-])|(?P<letter>X[+3-])"
    r"|(?P<q>q)|(?P<i>i)|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    pos = 0
    out = []
    text_len = len(text)
    while pos < text_len:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError("unexpected character", text, pos)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    # juxtaposed NC letters ("X+ X3") multiply
    fixed = []
    for tok in out:
        if fixed and tok[0] == "letter" and fixed[-1][0] in ("letter", "num") or (
            fixed and tok[0] == "letter" and fixed[-1] == ("op", ")", fixed[-1][2])
        ):
            fixed.append(("op", "*", tok[2]))
        fixed.append(tok)
    out = []
    for tok in fixed:
        if out and out[-1][0] == "letter" and tok[0] == "letter":
            out.append(("op", "*", tok[2]))
        out.append(tok)
    return out


class _Parser:
    def __init__(self, text: str, mode: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.mode = mode  # "scalar" | "cpoly" | "nc"

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("end", "", len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[1] != value:
            raise ParseError(f"expected {value!r}", self.text, tok[2])

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression", self.text, 0)
        val = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", self.text, tok[2])
        return val

    def expr(self):
        val = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op, _, pos = self.take()[1], None, self.peek()[2]
            rhs = self.factor()
            if op == "*":
                val = self._mul(val, rhs)
            else:
                if not isinstance(rhs, QScalar):
                    raise ParseError("can only divide by scalars", self.text, pos)
                val = self._mul(val, rhs.inverse())
        return val

    def factor(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("-", "+"):
            self.take()
            val = self.factor()
            return -val if tok[1] == "-" else val
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            sign = 1
            if self.peek()[1] == "-":
                self.take()
                sign = -1
            ntok = self.take()
            if ntok[0] != "num" or "/" in ntok[1]:
                raise ParseError("expected integer exponent", self.text, ntok[2])
            n = sign * int(ntok[1])
            if isinstance(base, QScalar):
                return base ** n
            if n < 0:
                raise ParseError("negative power of a coordinate", self.text, ntok[2])
            out = self._one()
            for _ in range(n):
                out = self._mul(out, base)
            return out
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            return QScalar.const(Fraction(val))
        if kind == "q":
            return Q
        if kind == "i":
            return I
        if kind == "var":
            if self.mode != "cpoly":
                raise ParseError("coordinate not allowed here", self.text, pos)
            from .series import var

            slot, _, name = val.rpartition(".")
            return var(name[1], slot or "x")
        if kind == "letter":
            if self.mode != "nc":
                raise ParseError("noncommutative letter not allowed here", self.text, pos)
            from .quantum_algebra import NCPoly

            return NCPoly.word(val)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected {val or 'end of input'!r}", self.text, pos)

    def _one(self):
        if self.mode == "cpoly":
            from .series import CPoly

            return CPoly.one()
        if self.mode == "nc":
            from .quantum_algebra import NCPoly

            return NCPoly.one()
        return ONE

    def _mul(self, a, b):
        if isinstance(a, QScalar) and isinstance(b, QScalar):
            return a * b
        if isinstance(a, QScalar):
            return b.scale(a)
        if isinstance(b, QScalar):
            return a.scale(b)
        return a * b


def _lift(val, mode):
    if isinstance(val, QScalar) and mode != "scalar":
        if mode == "cpoly":
            from .series import CPoly

            return CPoly.one().scale(val)
        from .quantum_algebra import NCPoly

        return NCPoly.one().scale(val)
    return val


class _LiftingParser(_Parser):
    """Promote scalars when they are added to polynomials."""

    def expr(self):
        val = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            if isinstance(val, QScalar) != isinstance(rhs, QScalar):
                val, rhs = _lift(val, self.mode), _lift(rhs, self.mode)
            val = val + rhs if op == "+" else val - rhs
        return val


def parse_scalar(text: str) -> QScalar:
    return _Parser(text, "scalar").parse()


def parse_cpoly(text: str):
    return _lift(_LiftingParser(text, "cpoly").parse(), "cpoly")


def parse_ncpoly(text: str):
    from .quantum_algebra import normal_order

    return normal_order(_lift(_LiftingParser(text, "nc").parse(), "nc"))


