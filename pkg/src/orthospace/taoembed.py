"""Rational vectors whose orthogonality pattern is a given graph, with all inner products >= 0.

Each new vertex doubles the ambient space: previous vectors go into the first summand,
non-neighbours of the new vertex get their own coordinate in the second summand, and
the new vertex is the all-ones vector of the second summand.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .greechie import GraphSpec

__all__ = ["GramReport", "exact_rank", "gram_matrix", "tao_vectors", "verify_gram"]

Vector = tuple  # of Fraction


def tao_vectors(g: GraphSpec) -> list[Vector]:
    if g.n < 1:
        raise ValueError("graph has no vertices")
    vectors: list[list[Fraction]] = [[Fraction(1)]]
    for new in range(1, g.n):
        dim = len(vectors[0])
        out = []
        for i, u in enumerate(vectors):
            tail = [Fraction(0)] * dim
            if not g.adjacent(i, new):
                tail[i] = Fraction(1)
            out.append(u + tail)
        out.append([Fraction(0)] * dim + [Fraction(1) if i < new else Fraction(0) for i in range(dim)])
        vectors = out
    return [tuple(v) for v in vectors]


def gram_matrix(vectors: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    dims = {len(v) for v in vectors}
    if len(dims) > 1:
        raise ValueError(f"vectors of different dimensions {sorted(dims)}")
    return [[sum((a * b for a, b in zip(u, v)), Fraction(0)) for v in vectors] for u in vectors]


def exact_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank by fraction-free (Bareiss) elimination on the cleared-denominator integer matrix."""
    m = []
    for row in rows:
        den = math.lcm(*(Fraction(q).denominator for q in row)) if row else 1
        m.append([int(Fraction(q) * den) for q in row])
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank, prev = 0, 1
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, nrows):
            f = m[r][col]
            m[r] = [(p * m[r][c] - f * m[rank][c]) // prev for c in range(ncols)]
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


@dataclass
class GramReport:
    gram: list[list[Fraction]]
    rank: int
    pattern_ok: bool
    nonneg_ok: bool

    @property
    def ok(self) -> bool:
        return self.pattern_ok and self.nonneg_ok and self.rank == len(self.gram)


def verify_gram(vectors: Sequence[Sequence[Fraction]], g: GraphSpec) -> GramReport:
    if len(vectors) != g.n:
        raise ValueError(f"{len(vectors)} vectors for {g.n} vertices")
    gram = gram_matrix(vectors)
    pattern_ok = all(
        (gram[i][j] == 0) == g.adjacent(i, j)
        for i in range(g.n)
        for j in range(g.n)
        if i != j
    ) and all(gram[i][i] != 0 for i in range(g.n))
    nonneg_ok = all(x >= 0 for row in gram for x in row)
    return GramReport(gram, exact_rank(vectors), pattern_ok, nonneg_ok)
