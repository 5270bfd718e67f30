"""Salamon shorthand ``(0,0,0,12,13,14+23)`` for nilpotent structure equations.

Entry ``k`` lists ``de^k``; a term ``c ij`` contributes ``c e^i∧e^j``.  Since
``de^k = -Σ c^k_{ij} e^{ij}``, the term ``12`` in entry 4 means
``[e1, e2] = -e4``.  Coefficients may be rational literals, parameter names
or parenthesised expressions in declared parameters: ``a12``, ``(a+2b)14``,
``1/2*23``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .scalars import format_scalar, parse_scalar

ZERO = Fraction(0)


def _split_top(text, sep):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced parentheses")
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise ParseError("unbalanced parentheses")
    parts.append("".join(cur))
    return parts


class _Expr:
    """Recursive-descent evaluator for + - * / with implicit multiplication."""

    _tok = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))")

    def __init__(self, text, params):
        self.tokens = []
        for m in self._tok.finditer(text):
            if m.group(1):
                self.tokens.append(("num", Fraction(int(m.group(1)))))
            elif m.group(2):
                name = m.group(2)
                if name not in params:
                    raise ParseError(f"undeclared parameter {name!r}")
                val = params[name]
                self.tokens.append(("num", Fraction(val) if isinstance(val, (int, str)) else val))
            elif m.group(3) and not m.group(3).isspace():
                self.tokens.append(("op", m.group(3)))
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        t = self.peek()
        self.pos += 1
        return t

    def parse(self):
        v = self.sum()
        if self.pos != len(self.tokens):
            raise ParseError("trailing tokens in coefficient expression")
        return v

    def sum(self):
        v = self.product()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            w = self.product()
            v = v + w if op == "+" else v - w
        return v

    def product(self):
        v = self.unary()
        while True:
            kind, val = self.peek()
            if (kind, val) in (("op", "*"), ("op", "/")):
                self.take()
                w = self.unary()
                v = v * w if val == "*" else v / w
            elif kind == "num" or (kind, val) == ("op", "("):
                v = v * self.unary()
            else:
                return v

    def unary(self):
        kind, val = self.peek()
        if (kind, val) == ("op", "-"):
            self.take()
            return -self.unary()
        if (kind, val) == ("op", "+"):
            self.take()
            return self.unary()
        if (kind, val) == ("op", "("):
            self.take()
            v = self.sum()
            if self.take() != ("op", ")"):
                raise ParseError("missing ')'")
            return v
        if kind == "num":
            self.take()
            return val
        raise ParseError("malformed coefficient expression")


def _eval_coeff(text, params):
    text = text.strip().rstrip("*").strip()
    if not text:
        return Fraction(1)
    try:
        return parse_scalar(text)
    except ParseError:
        pass
    if "i" in re.sub(r"[A-Za-z_]\w+", "", text) and "i" not in params:
        raise ParseError(f"bad coefficient {text!r}")
    return _Expr(text, params).parse()


def _parse_entry(text, params, dim, k):
    s = text.replace(" ", "")
    if s == "0":
        return {}
    terms = {}
    # split on top-level signs, keeping each sign with its term
    chunks, depth, cur = [], 0, ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and cur and cur[-1] not in "*/":
            chunks.append(cur)
            cur = ch
        else:
            cur += ch
    chunks.append(cur)
    for chunk in chunks:
        m = re.fullmatch(r"([+-]?)(.*?)(\d)(\d)", chunk)
        if not m:
            raise ParseError(f"bad term {chunk!r} in entry {k + 1}")
        sign = -1 if m.group(1) == "-" else 1
        c = sign * _eval_coeff(m.group(2), params)
        i, j = int(m.group(3)) - 1, int(m.group(4)) - 1
        if not (0 <= i < dim and 0 <= j < dim) or i == j:
            raise ParseError(f"bad index pair {m.group(3)}{m.group(4)} in entry {k + 1}")
        if i > j:
            i, j, c = j, i, -c
        terms[(i, j)] = terms.get((i, j), ZERO) + c
    return terms


def parse_shorthand(text, params=None, check=True):
    """Parse shorthand into a :class:`~mirrorpairs.lie.LieAlgebra`."""
    from .lie import LieAlgebra

    params = dict(params or {})
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ParseError("shorthand must be enclosed in parentheses")
    entries = _split_top(s[1:-1], ",")
    dim = len(entries)
    br = {}
    for k, entry in enumerate(entries):
        if not entry.strip():
            raise ParseError(f"empty entry {k + 1}")
        for (i, j), c in _parse_entry(entry, params, dim, k).items():
            if c:
                br.setdefault((i, j), {})
                br[(i, j)][k] = br[(i, j)].get(k, ZERO) - c
    return LieAlgebra(dim, br, check=check)


def _fmt_term(c, i, j, first):
    idx = f"{i + 1}{j + 1}"
    s = format_scalar(c)
    if s == "1":
        body, neg = idx, False
    elif s == "-1":
        body, neg = idx, True
    elif "i" in s:
        body, neg = f"({s})*{idx}", False
    elif s.startswith("-"):
        body, neg = f"{s[1:]}*{idx}", True
    else:
        body, neg = f"{s}*{idx}", False
    if neg:
        return "-" + body
    return body if first else "+" + body


def format_shorthand(L) -> str:
    """Inverse of :func:`parse_shorthand`.

    Entry ``k`` is ``de^k``; round trips ``parse_shorthand(format_shorthand(L)) == L``
    hold for every algebra of dimension at most 9.
    """
    entries = []
    for k in range(L.dim):
        terms = []
        for (i, j), coeffs in sorted(L.brackets.items()):
            c = coeffs.get(k)
            if c:
                terms.append((i, j, -c))
        if not terms:
            entries.append("0")
            continue
        entries.append("".join(_fmt_term(c, i, j, n == 0) for n, (i, j, c) in enumerate(terms)))
    return "(" + ",".join(entries) + ")"
