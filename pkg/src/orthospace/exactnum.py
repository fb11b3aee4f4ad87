"""Exact scalars over Q and the Eisenstein rationals Q(w), w a primitive cube root of unity.

Rationals are plain :class:`fractions.Fraction` values; conjugation on them is the
identity.  Elements of Q(w) are stored in the basis {1, w} and reduced with
w**2 = -1 - w.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = [
    "Eisenstein",
    "MixedFieldError",
    "OMEGA",
    "Scalar",
    "conj",
    "field_of",
    "format_scalar",
    "norm",
    "parse_scalar",
    "scalar_arith",
    "to_field",
]


class MixedFieldError(TypeError):
    """Raised when Q-tagged and Q(w)-tagged scalars meet in one operation."""


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise TypeError(f"not a rational: {v!r}")


@dataclass(frozen=True, slots=True)
class Eisenstein:
    """The number a + b*w with rational a, b."""

    a: Fraction
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", _frac(self.a))
        object.__setattr__(self, "b", _frac(self.b))

    @staticmethod
    def _coerce(other) -> "Eisenstein | None":
        # ints and Fractions embed in Q(w); this is promotion, not a tag mix
        if isinstance(other, Eisenstein):
            return other
        if isinstance(other, (int, Fraction)):
            return Eisenstein(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _make(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return _make(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return _make(-self.a, -self.b)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        # (a + bw)(c + dw) = ac + (ad + bc)w + bd w^2,  w^2 = -1 - w
        bd = self.b * o.b
        return _make(self.a * o.a - bd, self.a * o.b + self.b * o.a - bd)

    __rmul__ = __mul__

    def conjugate(self) -> "Eisenstein":
        return _make(self.a - self.b, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def inverse(self) -> "Eisenstein":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("Eisenstein division by zero")
        c = self.conjugate()
        return Eisenstein(c.a / n, c.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        # agree with hash(Fraction) on the embedded copy of Q
        return hash(self.a) if self.b == 0 else hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"Eisenstein({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def _make(a: Fraction, b: Fraction) -> Eisenstein:
    # both parts already Fractions: skip the coercion in __post_init__
    z = object.__new__(Eisenstein)
    object.__setattr__(z, "a", a)
    object.__setattr__(z, "b", b)
    return z


OMEGA = Eisenstein(0, 1)

Scalar = Union[Fraction, Eisenstein]


def field_of(s) -> str:
    """Field tag of a scalar: ``"Q"`` or ``"Qw"``."""
    if isinstance(s, Eisenstein):
        return "Qw"
    if isinstance(s, (int, Fraction)):
        return "Q"
    raise TypeError(f"not a scalar: {s!r}")


def to_field(s, field: str) -> Scalar:
    """Lift ``s`` into ``field``; only Q -> Qw lifting is allowed."""
    tag = field_of(s)
    if field == "Q":
        if tag != "Q":
            raise MixedFieldError(f"{s} is not rational")
        return _frac(s)
    if field == "Qw":
        return s if tag == "Qw" else Eisenstein(s, 0)
    raise ValueError(f"unknown field tag {field!r}")


def scalar_arith(lhs: Scalar, rhs: Scalar, op: str) -> Scalar:
    """Strictly tagged arithmetic: both operands must carry the same field tag."""
    if field_of(lhs) != field_of(rhs):
        raise MixedFieldError(f"cannot {op} {field_of(lhs)} and {field_of(rhs)} scalars")
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "div":
        if not rhs:
            raise ZeroDivisionError("division by zero")
        return lhs / rhs
    raise ValueError(f"unknown op {op!r}")


def conj(s: Scalar) -> Scalar:
    if isinstance(s, Eisenstein):
        return s.conjugate()
    return _frac(s)


def norm(s: Scalar) -> Fraction:
    """s * conj(s), always a non-negative rational."""
    if isinstance(s, Eisenstein):
        return s.norm()
    s = _frac(s)
    return s * s


def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(s: Scalar) -> str:
    """``p/q`` for rationals, ``p/q+r/sw`` for Q(w) (the w term is always present)."""
    if isinstance(s, Eisenstein):
        sign = "-" if s.b < 0 else "+"
        return f"{_fmt_q(s.a)}{sign}{_fmt_q(abs(s.b))}w"
    return _fmt_q(_frac(s))


_Q = r"[+-]?\d+(?:/\d+)?"
_Q_RE = re.compile(rf"^{_Q}$")
_QW_RE = re.compile(rf"^({_Q})([+-]\d+(?:/\d+)?)w$")


def _parse_q(text: str) -> Fraction:
    if "/" in text and int(text.split("/")[1]) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(text)


def parse_scalar(text: str) -> Scalar:
    text = text.strip()
    if _Q_RE.match(text):
        return _parse_q(text)
    m = _QW_RE.match(text)
    if m:
        return Eisenstein(_parse_q(m.group(1)), _parse_q(m.group(2)))
    raise ValueError(f"malformed scalar {text!r}")
