"""Exact scalars: ``fractions.Fraction`` for Q and :class:`QI` for Q(i).

Every routine in the package is written against the field operations
``+ - * /`` and a zero test, so a matrix may hold Fractions, QI values, or a
mix of both.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

__all__ = ["QI", "I", "Q", "conj", "re_part", "im_part", "parse_scalar", "format_scalar", "is_real"]


class QI:
    """Gaussian rational ``re + im*i`` with Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _coerce(other):
        if isinstance(other, QI):
            return other
        if isinstance(other, (int, Rational)):
            return QI(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QI(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QI(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QI(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QI(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return QI((self.re * o.re + self.im * o.im) / n, (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __pos__(self):
        return self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def conjugate(self):
        return QI(self.re, -self.im)

    def __repr__(self):
        return f"QI({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


I = QI(0, 1)


def Q(x) -> Fraction:
    """Coerce an int, Fraction or literal string to a Fraction."""
    if isinstance(x, str):
        x = parse_scalar(x)
        if isinstance(x, QI):
            raise ValueError("expected a real scalar")
    return Fraction(x)


def conj(x):
    return x.conjugate() if isinstance(x, QI) else x


def re_part(x) -> Fraction:
    return x.re if isinstance(x, QI) else Fraction(x)


def im_part(x) -> Fraction:
    return x.im if isinstance(x, QI) else Fraction(0)


def is_real(x) -> bool:
    return not isinstance(x, QI) or x.im == 0


_RAT = r"[+-]?\d+(?:/\d+)?"
_GAUSS = re.compile(rf"^\s*(?:(?P<re>{_RAT})\s*(?=[+-]|$))?\s*(?:(?P<im>[+-]?\s*(?:\d+(?:/\d+)?)?)\s*\*?\s*i)?\s*$")


def parse_scalar(text: str):
    """Parse ``"p"``, ``"p/q"``, ``"p/q+r/s*i"`` or ``"i"``-style literals.

    >>> parse_scalar("3/4")
    Fraction(3, 4)
    >>> parse_scalar("1/2-3*i")
    QI('1/2-3*i')
    """
    from .errors import ParseError

    s = text.strip()
    if not s:
        raise ParseError("empty scalar literal")
    if re.fullmatch(_RAT, s):
        return Fraction(s)
    m = _GAUSS.match(s)
    if not m or (m.group("re") is None and m.group("im") is None):
        raise ParseError(f"bad scalar literal {text!r}")
    real = Fraction(m.group("re")) if m.group("re") else Fraction(0)
    im_txt = (m.group("im") or "").replace(" ", "")
    if im_txt in ("", "+"):
        imag = Fraction(1)
    elif im_txt == "-":
        imag = Fraction(-1)
    else:
        imag = Fraction(im_txt)
    return QI(real, imag)


def _fmt_rat(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_scalar(x) -> str:
    """Inverse of :func:`parse_scalar`; real values never carry an ``i`` part."""
    if isinstance(x, QI):
        if x.im == 0:
            return _fmt_rat(x.re)
        im = f"{_fmt_rat(x.im)}*i"
        if x.re == 0:
            return im
        sign = "+" if x.im > 0 else ""
        return f"{_fmt_rat(x.re)}{sign}{im}"
    return _fmt_rat(Fraction(x))
