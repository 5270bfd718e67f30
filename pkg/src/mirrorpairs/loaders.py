"""Input handling: shorthand, e-notation and JSON, from inline text or a file path.

JSON shapes::

    {"dim": 6, "brackets": [{"i": 1, "j": 2, "coeffs": {"4": "-1"}}]}       Lie algebra
    {"base": <algebra>, "rho": [[[..]]], "fiber_dim": 3}                      representation
    {"J": [[..]]}  or  {"a": [[..]]}                                          complex structure
    {"omega": "e16-e25+e34"}  or  {"omega": [[..]]}                           two-form

Indices in user-facing text are 1-based.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction

from . import linalg as la
from .errors import ParseError, ValidationError
from .exterior import parse_form
from .lie import LieAlgebra
from .scalars import parse_scalar
from .semidirect import Representation, build_semidirect, interleaved_layout, split_semidirect
from .shorthand import parse_shorthand
from .structures import ComplexStructure, TwoForm


def read_text(source: str) -> str:
    """``source`` itself, or the contents of the file it names."""
    if os.path.isfile(source):
        with open(source, encoding="utf-8") as fh:
            return fh.read()
    return source


def _json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def _matrix(rows, what):
    try:
        m = [[parse_scalar(str(c)) for c in r] for r in rows]
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed {what} matrix: {exc}") from exc
    n = len(m)
    if not n or any(len(r) != n for r in m):
        raise ParseError(f"{what} matrix must be square and non-empty")
    return m


def load_algebra(source: str, expected_dim=None) -> LieAlgebra:
    text = read_text(source).strip()
    if text.startswith("{"):
        L = LieAlgebra.from_json(_json(text))
    else:
        L = parse_shorthand(text)
    if expected_dim is not None and L.dim != expected_dim:
        raise ParseError(f"expected {expected_dim} entries, got {L.dim}")
    return L


def load_representation(source: str) -> Representation:
    return Representation.from_json(_json(read_text(source)))


def load_semidirect(source: str, layout="interleaved"):
    """A representation JSON, built with the given layout."""
    rep = load_representation(source)
    lay = interleaved_layout(rep.base.dim) if layout == "interleaved" and rep.base.dim == rep.fiber_dim else None
    return build_semidirect(rep, lay)


def parse_indices(text: str):
    """``"1,3,5"`` → ``(0, 2, 4)``."""
    try:
        return tuple(int(t) - 1 for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise ParseError(f"bad index list {text!r}") from exc


def split_algebra(L: LieAlgebra, base=None, fiber=None):
    """``L`` as a semi-direct product; defaults to odd slots as base, even slots as fiber."""
    if base is None and fiber is None:
        base, fiber = interleaved_layout(L.dim // 2)
    if base is None or fiber is None or sorted(tuple(base) + tuple(fiber)) != list(range(L.dim)):
        raise ParseError(f"base and fiber slots must partition 1..{L.dim}")
    return split_semidirect(L, base, fiber)


def load_complex(source: str, base_idx=None, fiber_idx=None) -> ComplexStructure:
    """``standard``, ``{"J": M}``, or ``{"a": A}`` with ``J x_i = Σ_j a_ij v_j``."""
    text = read_text(source).strip()
    if text.startswith("standard"):
        n = int(text.split(":")[1]) if ":" in text else 3
        return ComplexStructure.standard(n)
    d = _json(text)
    if "J" in d:
        return ComplexStructure(_matrix(d["J"], "J"))
    if "a" in d:
        a = _matrix(d["a"], "a")
        n = len(a)
        if base_idx is None:
            base_idx, fiber_idx = interleaved_layout(n)
        try:
            ai = la.inverse(a)
        except ArithmeticError as exc:
            raise ValidationError("a-block is singular") from exc
        J = la.zeros(2 * n, 2 * n)
        for i in range(n):
            for j in range(n):
                J[fiber_idx[j]][base_idx[i]] = a[i][j]
                J[base_idx[i]][fiber_idx[j]] = -ai[j][i]
        return ComplexStructure(J)
    raise ParseError('complex structure JSON needs "J" or "a"')


def load_form(source: str, dim: int) -> TwoForm:
    text = read_text(source).strip()
    if text.startswith("{"):
        d = _json(text)
        if "omega" not in d:
            raise ParseError('two-form JSON needs "omega"')
        w = d["omega"]
        if isinstance(w, str):
            return TwoForm.from_ext(parse_form(w, dim))
        return TwoForm(_matrix(w, "omega"))
    return TwoForm.from_ext(parse_form(text, dim))


def load(source: str, kind="algebra", **kw):
    """Dispatch on ``kind``: algebra, representation, semidirect, complex, form."""
    if kind == "algebra":
        return load_algebra(source, kw.get("expected_dim"))
    if kind == "representation":
        return load_representation(source)
    if kind == "semidirect":
        return load_semidirect(source, kw.get("layout", "interleaved"))
    if kind == "complex":
        return load_complex(source, kw.get("base_idx"), kw.get("fiber_idx"))
    if kind == "form":
        return load_form(source, kw["dim"])
    raise ParseError(f"unknown input kind {kind!r}")


def rational(text: str) -> Fraction:
    x = parse_scalar(text)
    if not isinstance(x, Fraction):
        raise ParseError(f"expected a rational number, got {text!r}")
    return x


__all__ = [
    "read_text",
    "load",
    "load_algebra",
    "load_representation",
    "load_semidirect",
    "load_complex",
    "load_form",
    "parse_indices",
    "split_algebra",
    "rational",
]
