"""Rays of K^3 (K = Q or Q(w)) with the Hermitian inner product and conjugated cross product."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exactnum import Eisenstein, MixedFieldError, Scalar, conj, field_of, format_scalar, norm, parse_scalar, to_field

__all__ = [
    "BlockError",
    "Ray",
    "Vector3",
    "cross",
    "inner",
    "orthogonal",
    "ray_equal",
    "squared_cosine",
    "unbiased_wrt_block",
    "vec",
]


class BlockError(ValueError):
    """A supposed block is not three pairwise-orthogonal rays."""


@dataclass(frozen=True, slots=True)
class Vector3:
    x: Scalar
    y: Scalar
    z: Scalar
    field: str = "Q"

    def __iter__(self):
        return iter((self.x, self.y, self.z))

    def __getitem__(self, i: int) -> Scalar:
        return (self.x, self.y, self.z)[i]

    def is_zero(self) -> bool:
        return not (self.x or self.y or self.z)

    def scale(self, s: Scalar) -> "Vector3":
        return Vector3(self.x * s, self.y * s, self.z * s, self.field)

    def lift(self, field: str) -> "Vector3":
        return vec(self.x, self.y, self.z, field=field)

    def __str__(self):
        return "(" + ", ".join(format_scalar(c) for c in self) + ")"


def vec(x, y, z, field: str | None = None) -> Vector3:
    """Build a Vector3, inferring the field tag (Qw if any entry is Eisenstein)."""
    comps = (x, y, z)
    if field is None:
        field = "Qw" if any(field_of(c) == "Qw" for c in comps) else "Q"
    return Vector3(*(to_field(c, field) for c in comps), field=field)


def _same_field(u: Vector3, v: Vector3) -> str:
    if u.field != v.field:
        raise MixedFieldError(f"vectors over {u.field} and {v.field}")
    return u.field


def inner(u: Vector3, v: Vector3) -> Scalar:
    """Hermitian product, conjugate-linear in the second argument."""
    _same_field(u, v)
    return u.x * conj(v.x) + u.y * conj(v.y) + u.z * conj(v.z)


def cross(u: Vector3, v: Vector3) -> Vector3:
    """Conjugated cross product; the zero vector when u, v are dependent."""
    f = _same_field(u, v)
    return Vector3(
        conj(u.y * v.z - u.z * v.y),
        conj(u.z * v.x - u.x * v.z),
        conj(u.x * v.y - u.y * v.x),
        f,
    )


class Ray:
    """A 1-dimensional subspace, stored with its first nonzero coordinate equal to 1."""

    __slots__ = ("rep", "_key", "_ints")

    def __init__(self, v: Vector3 | Sequence, field: str | None = None):
        if not isinstance(v, Vector3):
            v = vec(*v, field=field)
        elif field is not None and field != v.field:
            v = v.lift(field)
        if v.is_zero():
            raise ValueError("the zero vector spans no ray")
        lead = next(c for c in v if c)
        inv = 1 / lead
        self.rep = Vector3(*(c * inv for c in v), field=v.field)
        self._key = (self.rep.field, self.rep.x, self.rep.y, self.rep.z)
        self._ints = None

    def int_coords(self) -> tuple:
        """A scaled representative with integer (a, b) coordinates, a + b*w; same ray."""
        if self._ints is None:
            parts = [(c.a, c.b) if isinstance(c, Eisenstein) else (c, Fraction(0)) for c in self.rep]
            den = math.lcm(*(q.denominator for p in parts for q in p))
            self._ints = tuple((int(a * den), int(b * den)) for a, b in parts)
        return self._ints

    @property
    def field(self) -> str:
        return self.rep.field

    def __eq__(self, other):
        if not isinstance(other, Ray):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Ray<{', '.join(format_scalar(c) for c in self.rep)}>"

    def lift(self, field: str) -> "Ray":
        return Ray(self.rep.lift(field))

    def to_json(self) -> dict:
        return {"field": self.field, "v": [format_scalar(c) for c in self.rep]}

    @classmethod
    def from_json(cls, obj: dict) -> "Ray":
        return cls(vec(*(parse_scalar(t) for t in obj["v"]), field=obj["field"]))


def _vector(r) -> Vector3:
    return r.rep if isinstance(r, Ray) else r


def ray_equal(u: Ray, v: Ray) -> bool:
    _same_field(u.rep, v.rep)
    return u == v


def orthogonal(u, v) -> bool:
    if isinstance(u, Ray) and isinstance(v, Ray):
        _same_field(u.rep, v.rep)
        # sum of x * conj(y) over integer Eisenstein coordinates; conj(c + dw) = (c - d) - dw
        re = im = 0
        for (a, b), (c, d) in zip(u.int_coords(), v.int_coords()):
            y0, y1 = c - d, -d
            re += a * y0 - b * y1
            im += a * y1 + b * y0 - b * y1
        return re == 0 and im == 0
    return not inner(_vector(u), _vector(v))


def squared_cosine(u, v) -> Fraction:
    """cos^2 of the angle between two rays: |<u,v>|^2 / (|u|^2 |v|^2)."""
    u, v = _vector(u), _vector(v)
    return norm(inner(u, v)) / (_sqlen(u) * _sqlen(v))


def _sqlen(u: Vector3) -> Fraction:
    return norm(u.x) + norm(u.y) + norm(u.z)


def unbiased_wrt_block(u, block: Iterable) -> bool:
    """True iff ``u`` makes the same angle with each of three pairwise-orthogonal rays."""
    block = list(block)
    if len(block) != 3:
        raise BlockError(f"a block here has 3 rays, got {len(block)}")
    for i in range(3):
        for j in range(i + 1, 3):
            if not orthogonal(block[i], block[j]):
                raise BlockError(f"block rays {i} and {j} are not orthogonal")
    c0, c1, c2 = (squared_cosine(u, a) for a in block)
    return c0 == c1 == c2
