"""Homogeneous elements of the exterior algebra on a based vector space.

An :class:`ExtElement` of degree ``k`` is a dict from strictly increasing index
tuples (0-based) to nonzero coefficients.  ``e(0, 1)`` is e^1 ∧ e^2 in the
1-based labels used for printing.  Evaluation uses the determinant
convention, so ``(e^1∧e^2)(e_1, e_2) = 1``.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction

from .errors import ArityMismatch, DimensionMismatch, ParseError
from .scalars import format_scalar, is_real, parse_scalar, re_part

ZERO = Fraction(0)


def _sort_sign(indices):
    """Sort ``indices``; return ``(sign, sorted_tuple)`` or ``(0, None)`` on a repeat."""
    idx = list(indices)
    sign = 1
    # insertion sort counting transpositions
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(idx, idx[1:]):
        if a == b:
            return 0, None
    return sign, tuple(idx)


class ExtElement:
    """A homogeneous exterior form with exact coefficients."""

    __slots__ = ("dim", "degree", "terms")

    def __init__(self, dim, degree, terms=None):
        self.dim = dim
        self.degree = degree
        clean = {}
        for key, c in (terms or {}).items():
            if len(key) != degree:
                raise ValueError(f"index tuple {key} does not have degree {degree}")
            sign, k = _sort_sign(key)
            if not sign or not c:
                continue
            if k and k[-1] >= dim:
                raise DimensionMismatch(f"index {k[-1]} out of range for dimension {dim}")
            v = clean.get(k, ZERO) + sign * c
            if v:
                clean[k] = v
            else:
                clean.pop(k, None)
        self.terms = clean

    @classmethod
    def zero(cls, dim, degree):
        return cls(dim, degree)

    @classmethod
    def one(cls, dim):
        return cls(dim, 0, {(): Fraction(1)})

    @classmethod
    def basis(cls, dim, *indices, coeff=Fraction(1)):
        return cls(dim, len(indices), {tuple(indices): coeff})

    @classmethod
    def from_covector(cls, vec):
        return cls(len(vec), 1, {(i,): c for i, c in enumerate(vec) if c})

    def is_zero(self):
        return not self.terms

    __bool__ = lambda self: bool(self.terms)  # noqa: E731

    def _check(self, other):
        if not isinstance(other, ExtElement):
            return NotImplemented
        if other.dim != self.dim:
            raise DimensionMismatch("forms live on spaces of different dimension")
        if other.degree != self.degree and self.terms and other.terms:
            raise ValueError("mixed-degree sums are not supported")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        deg = self.degree if self.terms else other.degree
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, ZERO) + c
        return ExtElement(self.dim, deg, t)

    def __neg__(self):
        return ExtElement(self.dim, self.degree, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, ExtElement):
            return NotImplemented
        return ExtElement(self.dim, self.degree, {k: c * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, ExtElement):
            return NotImplemented
        if self.dim != other.dim:
            return False
        if not self.terms and not other.terms:
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.dim, self.degree, frozenset(self.terms.items())))

    def map_coeffs(self, f):
        return ExtElement(self.dim, self.degree, {k: f(c) for k, c in self.terms.items()})

    def coefficient(self, *indices):
        sign, k = _sort_sign(indices)
        if not sign:
            return ZERO
        return sign * self.terms.get(k, ZERO)

    def __repr__(self):
        return f"ExtElement({self.dim}, {self.degree}, {format_form(self)!r})"

    def __str__(self):
        return format_form(self)


def wedge(a: ExtElement, b: ExtElement) -> ExtElement:
    if a.dim != b.dim:
        raise DimensionMismatch("wedge of forms on different spaces")
    out = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            sign, k = _sort_sign(ka + kb)
            if sign:
                out[k] = out.get(k, ZERO) + sign * ca * cb
    return ExtElement(a.dim, a.degree + b.degree, out)


def wedge_all(elements, dim=None):
    it = iter(elements)
    acc = next(it, None)
    if acc is None:
        return ExtElement.one(dim)
    for x in it:
        acc = wedge(acc, x)
    return acc


def contract(x, a: ExtElement) -> ExtElement:
    """Interior product ι_x a, with ι_x(e^{i1..ik}) = Σ_s (-1)^s x[i_s] e^{..î_s..}."""
    if a.degree < 1:
        raise ArityMismatch("cannot contract a 0-form")
    if len(x) != a.dim:
        raise DimensionMismatch("vector and form dimensions differ")
    out = {}
    for k, c in a.terms.items():
        for s, i in enumerate(k):
            if x[i]:
                rest = k[:s] + k[s + 1:]
                v = (-c if s % 2 else c) * x[i]
                out[rest] = out.get(rest, ZERO) + v
    return ExtElement(a.dim, a.degree - 1, out)


def evaluate(a: ExtElement, vectors):
    """Full antisymmetric evaluation of a k-form on k vectors."""
    if len(vectors) != a.degree:
        raise ArityMismatch(f"{a.degree}-form evaluated on {len(vectors)} vectors")
    total = ZERO
    for k, c in a.terms.items():
        # det of the k×k minor [v_r[k_s]]
        minor = [[v[i] for i in k] for v in vectors]
        total += c * _det_small(minor)
    return total


def _det_small(m):
    n = len(m)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    from .linalg import det

    return det(m)


def pullback_1(a: ExtElement, matrix) -> ExtElement:
    """Pull back a form along the linear map with the given matrix (columns = images).

    ``matrix`` is ``dim × new_dim``; the result lives on the source space.
    """
    new_dim = len(matrix[0]) if matrix else 0
    images = []
    for j in range(new_dim):
        images.append([matrix[i][j] for i in range(len(matrix))])
    out = {}
    for key in itertools.combinations(range(new_dim), a.degree):
        v = evaluate(a, [images[j] for j in key])
        if v:
            out[key] = v
    return ExtElement(new_dim, a.degree, out)


def basis_forms(dim, degree):
    return list(itertools.combinations(range(dim), degree))


# --- e-notation -----------------------------------------------------------

def format_form(a: ExtElement) -> str:
    """Human form ``e16-e25+e34``; coefficients other than ±1 print as ``2*e12``."""
    if not a.terms:
        return "0"
    parts = []
    for k in sorted(a.terms):
        c = a.terms[k]
        label = "e" + "".join(str(i + 1) for i in k) if k else "1"
        if is_real(c):
            r = re_part(c)
            sign = "-" if r < 0 else "+"
            mag = format_scalar(abs(r))
            body = label if mag == "1" else f"{mag}*{label}"
        else:
            sign, body = "+", f"({format_scalar(c)})*{label}"
        parts.append((sign, body))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += sign + body
    return text


def parse_form(text: str, dim: int) -> ExtElement:
    """Parse ``e16-e25+e34`` or ``2*e12+(1/2+i)*e34``.

    Index digits are single-digit basis labels (1-based), as in the shorthand.
    """
    s = text.replace(" ", "")
    if s in ("0", ""):
        if s == "":
            raise ParseError("empty form")
        return ExtElement.zero(dim, 0)
    pos = 0
    terms = {}
    degree = None
    pattern = re.compile(r"([+-]?)(?:\(([^()]*)\)\*|([0-9]+(?:/[0-9]+)?)\*)?e([1-9]+)")
    while pos < len(s):
        m = pattern.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"bad form syntax near {s[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        if pos > 0 and not m.group(1):
            raise ParseError(f"missing sign before term at {s[pos:]!r}")
        coeff_txt = m.group(2) or m.group(3)
        c = parse_scalar(coeff_txt) if coeff_txt else Fraction(1)
        idx = tuple(int(ch) - 1 for ch in m.group(4))
        if any(i >= dim for i in idx):
            raise ParseError(f"index out of range in {m.group(0)!r} for dimension {dim}")
        if degree is None:
            degree = len(idx)
        elif degree != len(idx):
            raise ParseError("mixed-degree form")
        sgn, k = _sort_sign(idx)
        if not sgn:
            raise ParseError(f"repeated index in {m.group(0)!r}")
        terms[k] = terms.get(k, ZERO) + sign * sgn * c
        pos = m.end()
    return ExtElement(dim, degree, terms)
