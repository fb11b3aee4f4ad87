"""Finite orthomodular lattices as bitset up-set tables, and constructions on them.

An element ``x`` of a :class:`FiniteOml` is an index; ``upsets[x]`` is an int whose bit
``y`` is set iff x <= y, and ``ortho`` is the orthocomplement as a permutation.
Constructions keep the indices of the lattice they extend, so embeddings produced
here are the identity on indices.
"""
from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .bits import iter_bits, mask as _bits_mask, select_bits, transpose as _transpose

__all__ = [
    "CheckReport",
    "CoatomExtension",
    "FiniteOml",
    "Lemma2Result",
    "MalformedTables",
    "PasteVerificationError",
    "SizeLimitExceeded",
    "bigcoatom_extend",
    "check_limit",
    "boolean_powerset",
    "check_oml",
    "interval_union_subalgebra",
    "kalmbach_coatom_extension",
    "lemma2_extend",
    "mo",
    "o6",
    "product",
    "size_cap",
]

DEFAULT_SIZE_CAP = 1 << 15


def size_cap() -> int:
    return int(os.environ.get("ORTHOSPACE_SIZE_CAP", DEFAULT_SIZE_CAP))


DEFAULT_CHECK_LIMIT = 4096


def check_limit() -> int:
    """Largest lattice the construction verifiers check law-by-law on every pair."""
    return int(os.environ.get("ORTHOSPACE_CHECK_LIMIT", DEFAULT_CHECK_LIMIT))


class MalformedTables(ValueError):
    pass


class SizeLimitExceeded(MemoryError):
    pass


class PasteVerificationError(AssertionError):
    pass


def _check_size(n: int, what: str) -> None:
    cap = size_cap()
    if n > cap:
        raise SizeLimitExceeded(f"{what} would have {n} elements (cap {cap})")


def _mask(indices: Iterable[int], n: int) -> int:
    return _bits_mask(indices, n)


def _popcount(m: int) -> int:
    return m.bit_count()


class FiniteOml:
    """A finite bounded poset with an orthocomplementation, stored as up-set bitsets.

    Construction only checks the tables are well-formed; use :func:`check_oml` for the laws.
    """

    def __init__(
        self,
        upsets: Sequence[int],
        ortho: Sequence[int],
        labels: Sequence[str] | None = None,
        *,
        allow_trivial: bool = False,
    ):
        n = len(upsets)
        if n == 0:
            raise MalformedTables("empty lattice")
        if n == 1 and not allow_trivial:
            raise MalformedTables("one-element lattice (bottom = top) needs allow_trivial=True")
        if len(ortho) != n or sorted(ortho) != list(range(n)):
            raise MalformedTables("ortho is not a permutation of the elements")
        full = (1 << n) - 1
        if any(r < 0 or r > full for r in upsets):
            raise MalformedTables("up-set row refers to a missing element")
        _check_size(n, "lattice")
        self.size = n
        self.upsets = list(upsets)
        self.ortho = list(ortho)
        self.labels = [str(i) for i in range(n)] if labels is None else list(labels)
        if len(self.labels) != n:
            raise MalformedTables("label count mismatch")
        self._downsets: list[int] | None = None
        self._up_index: dict[int, int] | None = None
        self._down_index: dict[int, int] | None = None
        bottoms = [x for x in range(n) if self.upsets[x] == full]
        tops = [x for x in range(n) if self.upsets[x] == 1 << x]
        self.bottom = bottoms[0] if len(bottoms) == 1 else None
        self.top = tops[0] if len(tops) == 1 else None

    def __repr__(self):
        return f"FiniteOml(size={self.size})"

    # --- order queries ---------------------------------------------------

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    @property
    def downsets(self) -> list[int]:
        if self._downsets is None:
            self._downsets = _transpose(self.upsets)
        return self._downsets

    def leq(self, x: int, y: int) -> bool:
        return bool(self.upsets[x] >> y & 1)

    def lt(self, x: int, y: int) -> bool:
        return x != y and self.leq(x, y)

    def join(self, x: int, y: int) -> int | None:
        if self._up_index is None:
            self._up_index = {r: i for i, r in enumerate(self.upsets)}
        return self._up_index.get(self.upsets[x] & self.upsets[y])

    def meet(self, x: int, y: int) -> int | None:
        if self._down_index is None:
            self._down_index = {r: i for i, r in enumerate(self.downsets)}
        return self._down_index.get(self.downsets[x] & self.downsets[y])

    def join_all(self, xs: Iterable[int]) -> int:
        acc = self.full
        for x in xs:
            acc &= self.upsets[x]
        if self._up_index is None:
            self._up_index = {r: i for i, r in enumerate(self.upsets)}
        j = self._up_index.get(acc)
        if j is None:
            raise ValueError("join does not exist")
        return j

    def orthogonal(self, x: int, y: int) -> bool:
        return self.leq(x, self.ortho[y])

    def is_atom(self, x: int) -> bool:
        return x != self.bottom and self.downsets[x] == (1 << x) | (1 << self.bottom)

    def atoms(self) -> list[int]:
        return [x for x in range(self.size) if self.is_atom(x)]

    def up(self, x: int) -> set[int]:
        return set(iter_bits(self.upsets[x]))

    def interval(self, lo: int, hi: int) -> list[int]:
        return iter_bits(self.upsets[lo] & self.downsets[hi])

    def element(self, label: str) -> int:
        return self.labels.index(label)

    # --- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        leq = [[x, y] for x in range(self.size) for y in iter_bits(self.upsets[x])]
        return {"n": self.size, "leq": leq, "ortho": list(self.ortho), "labels": list(self.labels)}

    @classmethod
    def from_json(cls, obj: dict, *, covers: bool = False, allow_trivial: bool = False) -> "FiniteOml":
        n = obj["n"]
        pairs = obj.get("covers" if covers and "covers" in obj else "leq", [])
        return cls.from_pairs(n, pairs, obj["ortho"], obj.get("labels"), closure=covers, allow_trivial=allow_trivial)

    @classmethod
    def from_pairs(cls, n, pairs, ortho, labels=None, *, closure=False, allow_trivial=False) -> "FiniteOml":
        rows = [0] * n
        for x, y in pairs:
            if not (0 <= x < n and 0 <= y < n):
                raise MalformedTables(f"pair {(x, y)} out of range")
            rows[x] |= 1 << y
        if closure:
            rows = transitive_closure([r | 1 << i for i, r in enumerate(rows)])
        return cls(rows, ortho, labels, allow_trivial=allow_trivial)


def transitive_closure(rows: Sequence[int]) -> list[int]:
    """Reflexive-transitive closure of a relation given by successor bitsets."""
    rows = [r | 1 << i for i, r in enumerate(rows)]
    changed = True
    while changed:
        changed = False
        for x in range(len(rows)):
            acc = rows[x]
            for y in iter_bits(rows[x]):
                acc |= rows[y]
            if acc != rows[x]:
                rows[x] = acc
                changed = True
    return rows


# --- law checking -------------------------------------------------------------


@dataclass
class CheckReport:
    passed: bool
    law: str | None = None
    witness: tuple = ()
    detail: str = ""
    exhaustive: bool = True

    def to_json(self, labels: Sequence[str] | None = None) -> dict:
        out = {
            "passed": self.passed,
            "law": self.law,
            "witness": list(self.witness),
            "detail": self.detail,
            "exhaustive": self.exhaustive,
        }
        if labels is not None and self.witness:
            out["witness_labels"] = [labels[i] for i in self.witness]
        return out


def _fail(law: str, witness: tuple, detail: str) -> CheckReport:
    return CheckReport(False, law, tuple(witness), detail)


def check_oml(L: FiniteOml, *, exhaustive_limit: int | None = None, samples: int = 20000, seed: int = 0) -> CheckReport:
    """Check, in order: partial order, bounds, lattice, orthocomplement, orthomodular law.

    Above ``exhaustive_limit`` elements the pairwise laws are checked on ``samples`` random
    pairs instead (the report then has ``exhaustive=False``); the O(n) laws stay exact.
    """
    if exhaustive_limit is not None and L.size > exhaustive_limit:
        return _check_oml_sampled(L, samples, seed)
    n, up = L.size, L.upsets
    for x in range(n):
        if not up[x] >> x & 1:
            return _fail("partial-order", (x,), "not reflexive")
    for x in range(n):
        row = up[x]
        for y in iter_bits(row):
            if y != x and up[y] >> x & 1:
                return _fail("partial-order", (x, y), "not antisymmetric")
            extra = up[y] & ~row
            if extra:
                z = iter_bits(extra)[0]
                return _fail("partial-order", (x, y, z), "not transitive")

    if L.bottom is None:
        return _fail("bounds", (), "no least element")
    if L.top is None:
        return _fail("bounds", (), "no greatest element")

    # joins: index elements in a linear extension (bigger up-set first); a least upper
    # bound, if any, is then the lowest set bit of the common up-set
    order = sorted(range(n), key=lambda x: (-_popcount(up[x]), x))
    rank = [0] * n
    for r, x in enumerate(order):
        rank[x] = r
    upr = [_mask((rank[y] for y in iter_bits(up[x])), n) for x in range(n)]
    bad = _first_joinless_pair(upr, order)
    if bad is not None:
        return _fail("lattice", bad, "no least upper bound")
    # finite + bounded + all binary joins => all binary meets

    ortho = L.ortho
    for x in range(n):
        if ortho[ortho[x]] != x:
            return _fail("ortho-involution", (x,), "x'' != x")
    for x in range(n):
        ox = ortho[x]
        for y in iter_bits(up[x]):
            if not up[ortho[y]] >> ox & 1:
                return _fail("ortho-antitone", (x, y), "x <= y but not y' <= x'")
    for x in range(n):
        if L.meet(x, ortho[x]) != L.bottom or L.join(x, ortho[x]) != L.top:
            return _fail("ortho-complement", (x,), "x meet x' != 0 or x join x' != 1")

    for x in range(n):
        ox = ortho[x]
        for y in iter_bits(up[x]):
            if L.join(x, L.meet(y, ox)) != y:
                return _fail("orthomodular", (x, y), "x <= y but x join (y meet x') != y")
    return CheckReport(True)


def _first_joinless_pair(upr: Sequence[int], order: Sequence[int]) -> tuple[int, int] | None:
    """Lexicographically first (x, y), x < y, whose common up-set has no least element.

    Rows are up-sets re-indexed along a linear extension, so the candidate join is the
    lowest set bit; one numpy pass per x over all y > x.
    """
    n = len(upr)
    words = (n + 63) // 64
    P = np.frombuffer(b"".join(r.to_bytes(words * 8, "little") for r in upr), dtype="<u8").reshape(n, words)
    order_arr = np.asarray(order)
    for x in range(n - 1):
        C = P[x] & P[x + 1 :]
        w = (C != 0).argmax(axis=1)
        v = C[np.arange(len(C)), w]
        low = v & (~v + np.uint64(1))
        pos = w * 64 + np.log2(low.astype(np.float64)).astype(np.int64)
        m = order_arr[pos]
        wrong = ~(P[m] == C).all(axis=1)
        if wrong.any():
            return x, x + 1 + int(wrong.argmax())
    return None


def _check_oml_sampled(L: FiniteOml, samples: int, seed: int) -> CheckReport:
    n, up, ortho = L.size, L.upsets, L.ortho
    rng = random.Random(seed)

    def done(rep: CheckReport) -> CheckReport:
        rep.exhaustive = False
        return rep

    for x in range(n):
        if not up[x] >> x & 1:
            return done(_fail("partial-order", (x,), "not reflexive"))
        if ortho[ortho[x]] != x:
            return done(_fail("ortho-involution", (x,), "x'' != x"))
    if L.bottom is None:
        return done(_fail("bounds", (), "no least element"))
    if L.top is None:
        return done(_fail("bounds", (), "no greatest element"))
    for x in range(n):
        if L.meet(x, ortho[x]) != L.bottom or L.join(x, ortho[x]) != L.top:
            return done(_fail("ortho-complement", (x,), "x meet x' != 0 or x join x' != 1"))
    for _ in range(samples):
        x = rng.randrange(n)
        above = iter_bits(up[x])
        y = rng.choice(above)
        if y != x and up[y] >> x & 1:
            return done(_fail("partial-order", (x, y), "not antisymmetric"))
        extra = up[y] & ~up[x]
        if extra:
            return done(_fail("partial-order", (x, y, iter_bits(extra)[0]), "not transitive"))
        if not up[ortho[y]] >> ortho[x] & 1:
            return done(_fail("ortho-antitone", (x, y), "x <= y but not y' <= x'"))
        if L.join(x, L.meet(y, ortho[x])) != y:
            return done(_fail("orthomodular", (x, y), "x <= y but x join (y meet x') != y"))
        z = rng.randrange(n)
        if L.join(x, z) is None:
            return done(_fail("lattice", (min(x, z), max(x, z)), "no least upper bound"))
    return CheckReport(True, exhaustive=False, detail=f"{samples} sampled pairs")


# --- fixtures and basic constructions ----------------------------------------


def boolean_powerset(k: int, labels: Sequence[str] | None = None, *, allow_trivial: bool = False) -> FiniteOml:
    """The Boolean algebra of subsets of a k-set; element m is the subset with bitmask m."""
    if k < 0:
        raise ValueError("negative k")
    n = 1 << k
    _check_size(n, f"2^{k}")
    rows = []
    for m in range(n):
        sups = []
        s = m
        while s < n:
            sups.append(s)
            s = (s + 1) | m
        rows.append(_mask(sups, n))
    names = [str(i) for i in range(k)] if labels is None else list(labels)
    lab = ["{" + ",".join(names[i] for i in range(k) if m >> i & 1) + "}" for m in range(n)]
    return FiniteOml(rows, [(n - 1) ^ m for m in range(n)], lab, allow_trivial=allow_trivial)


def product(L: FiniteOml, M: FiniteOml) -> FiniteOml:
    """Componentwise product; (l, m) has index l * |M| + m."""
    nl, nm = L.size, M.size
    _check_size(nl * nm, "product")
    rows = []
    for l in range(nl):
        ls = iter_bits(L.upsets[l])
        for m in range(nm):
            rm = M.upsets[m]
            r = 0
            for l2 in ls:
                r |= rm << (l2 * nm)
            rows.append(r)
    ortho = [L.ortho[l] * nm + M.ortho[m] for l in range(nl) for m in range(nm)]
    labels = [f"({a},{b})" for a in L.labels for b in M.labels]
    return FiniteOml(rows, ortho, labels)


def mo(k: int) -> FiniteOml:
    """MO_k: bottom, top and k pairs of complementary atoms x_i, x_i'."""
    n = 2 * k + 2
    top = n - 1
    rows = [(1 << n) - 1] + [(1 << i) | (1 << top) for i in range(1, top)] + [1 << top]
    ortho = [top] + [i + 1 if i % 2 else i - 1 for i in range(1, top)] + [0]
    labels = ["0"] + [f"x{i // 2 + 1}" + ("" if i % 2 else "'") for i in range(1, top)] + ["1"]
    return FiniteOml(rows, ortho, labels)


def o6() -> FiniteOml:
    """The benzene ring 0 < a < b < 1, 0 < b' < a' < 1: an ortholattice, not orthomodular."""
    labels = ["0", "a", "b", "b'", "a'", "1"]
    le = {
        0: {0, 1, 2, 3, 4, 5},
        1: {1, 2, 5},
        2: {2, 5},
        3: {3, 4, 5},
        4: {4, 5},
        5: {5},
    }
    rows = [_mask(le[i], 6) for i in range(6)]
    return FiniteOml(rows, [5, 4, 3, 2, 1, 0], labels)


# --- the embedding lemmas ------------------------------------------------------


@dataclass
class Lemma2Result:
    M: FiniteOml
    g: dict[int, int]
    domain: list[int]
    checks: dict = field(default_factory=dict)


def lemma2_extend(
    L: FiniteOml,
    mode: str = "faithful",
    S: Sequence[int] | None = None,
    *,
    verify: bool = True,
    exhaustive_limit: int = 4096,
    samples: int = 1000,
    seed: int = 0,
) -> Lemma2Result:
    """M = L x P(S) with g(x) = (x, {x}); S = all of L in faithful mode.

    g separates joins: g(x) <= join g(A) iff x in A, and preserves orthogonality off 0.
    """
    if mode == "faithful":
        dom = list(range(L.size))
    elif mode == "optimized":
        if not S:
            raise ValueError("optimized mode needs a nonempty S")
        dom = sorted(set(S))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    k = len(dom)
    _check_size(L.size << k, "lemma-2 extension")
    B = boolean_powerset(k, [str(x) for x in dom])
    M = product(L, B)
    g = {x: x * B.size + (1 << i) for i, x in enumerate(dom)}
    res = Lemma2Result(M, g, dom)
    if verify:
        res.checks = verify_lemma2(L, res, exhaustive_limit=exhaustive_limit, samples=samples, seed=seed)
    return res


def verify_lemma2(L, res: Lemma2Result, *, exhaustive_limit=4096, samples=1000, seed=0) -> dict:
    M, g, dom = res.M, res.g, res.domain
    if len(set(g.values())) != len(g):
        raise PasteVerificationError("g is not one-one")
    nz = [x for x in dom if x != L.bottom]
    for x in nz:
        for y in nz:
            if L.orthogonal(x, y) != M.orthogonal(g[x], g[y]):
                raise PasteVerificationError(f"orthogonality of ({x},{y}) not preserved by g")

    def prop2(x: int, A: Sequence[int]) -> None:
        j = M.join_all(g[a] for a in A)
        if M.leq(g[x], j) != (x in A):
            raise PasteVerificationError(f"g({x}) <= join g({sorted(A)}) fails to match membership")

    exhaustive = M.size <= exhaustive_limit
    if exhaustive:
        for r in range(len(dom) + 1):
            for A in combinations(dom, r):
                for x in dom:
                    prop2(x, A)
        checked = (1 << len(dom)) * len(dom)
    else:
        rng = random.Random(seed)
        for _ in range(samples):
            A = [a for a in dom if rng.random() < 0.5]
            prop2(rng.choice(dom), A)
        checked = samples
    return {"prop1_pairs": len(nz) ** 2, "prop2_cases": checked, "prop2_exhaustive": exhaustive}


def interval_union_subalgebra(
    L: FiniteOml, e: int, *, verify: bool = True, pairs_limit: int = 1 << 16, seed: int = 0
) -> list[int]:
    """[0, e'] U [e, 1], a subalgebra of L for e != 0."""
    if e == L.bottom:
        raise ValueError("e must be nonzero")
    low = L.downsets[L.ortho[e]]
    high = L.upsets[e]
    if low & high:
        raise PasteVerificationError("[0,e'] and [e,1] overlap")
    S = iter_bits(low | high)
    if verify:
        members = low | high
        for x in S:
            if not members >> L.ortho[x] & 1:
                raise PasteVerificationError(f"S_e not closed under ': {x}")
        # both intervals are convex and a mixed pair joins above e and meets below e',
        # so closure only fails on a non-lattice; large S is spot-checked
        if len(S) * len(S) <= pairs_limit:
            pairs = combinations(S, 2)
        else:
            rng = random.Random(seed)
            pairs = [(rng.choice(S), rng.choice(S)) for _ in range(pairs_limit)]
        for x, y in pairs:
            j, m = L.join(x, y), L.meet(x, y)
            if j is None or m is None or not (members >> j & 1 and members >> m & 1):
                raise PasteVerificationError(f"S_e not closed under meet/join at ({x},{y})")
    return S


@dataclass
class CoatomExtension:
    M: FiniteOml
    iota: list[int]
    atom: int
    e: int
    check: CheckReport | None = None


def kalmbach_coatom_extension(L: FiniteOml, e: int, *, verify: bool = True) -> CoatomExtension:
    """Paste L with S_e x 2 over the shared copy of S_e; the new element (e, 0) is an atom below e.

    (t, 0) is glued to t for t in [0, e'], (t, 1) to t for t in [e, 1]; every other element of
    S_e x 2 is new and appended after L's elements.
    """
    n = L.size
    S = interval_union_subalgebra(L, e, verify=verify)
    low = L.downsets[L.ortho[e]]
    smask = _mask(S, n)
    _check_size(n + len(S), "coatom extension")
    pos = {s: i for i, s in enumerate(S)}

    def idx(t: int, b: int) -> int:
        glued = (b == 0) == bool(low >> t & 1)
        return t if glued else n + pos[t]

    # Closure of the union of both orders, composed out explicitly. With NEW(X) the new
    # copies of X & S_e:
    #   x in L:           up_L(x) | NEW(up_L(x))           if x <= e', else up_L(x)
    #   (t,1), t <= e':   up_L(t v e) | NEW(up_L(t) & [0,e'])
    #   (t,0), t >= e:    up_L(t) | NEW(up_L(t))
    # Transitivity is re-checked by check_oml when verifying.
    eo = L.ortho[e]

    def new(m: int) -> int:
        return select_bits(m & smask, S) << n

    rows = [0] * (n + len(S))
    for x in range(n):
        ux = L.upsets[x]
        rows[x] = ux | new(ux) if ux >> eo & 1 else ux
    for s in S:
        us = L.upsets[s]
        if low >> s & 1:
            rows[idx(s, 1)] = L.upsets[L.join(s, e)] | new(us & low)
        else:
            rows[idx(s, 0)] = us | new(us)

    ortho = list(L.ortho) + [0] * len(S)
    labels = list(L.labels) + [""] * len(S)
    for s in S:
        for b in (0, 1):
            i = idx(s, b)
            if i >= n:
                ortho[i] = idx(L.ortho[s], 1 - b)
                labels[i] = f"<{L.labels[s]};{b}>"
    M = FiniteOml(rows, ortho, labels)
    a = idx(e, 0)
    ext = CoatomExtension(M, list(range(n)), a, e)
    if verify:
        verify_coatom_extension(L, ext)
    return ext


def _check_subalgebra(L: FiniteOml, M: FiniteOml, iota: Sequence[int], pairs_limit: int = 4096, seed: int = 0):
    lmask = _mask(iota, M.size)
    identity = list(iota) == list(range(L.size))
    for x in range(L.size):
        want = L.upsets[x] if identity else _mask((iota[y] for y in iter_bits(L.upsets[x])), M.size)
        if M.upsets[iota[x]] & lmask != want:
            raise PasteVerificationError(f"order on L not preserved at {x}")
        if M.ortho[iota[x]] != iota[L.ortho[x]]:
            raise PasteVerificationError(f"orthocomplement on L not preserved at {x}")
    if L.size * L.size <= pairs_limit:
        pairs = combinations(range(L.size), 2)
    else:
        rng = random.Random(seed)
        pairs = [(rng.randrange(L.size), rng.randrange(L.size)) for _ in range(pairs_limit)]
    for x, y in pairs:
        if M.join(iota[x], iota[y]) != iota[L.join(x, y)]:
            raise PasteVerificationError(f"join of ({x},{y}) not preserved")


def verify_coatom_extension(L: FiniteOml, ext: CoatomExtension) -> None:
    M, a, e, iota = ext.M, ext.atom, ext.e, ext.iota
    report = check_oml(M, exhaustive_limit=check_limit())
    ext.check = report
    if not report.passed:
        raise PasteVerificationError(f"pasted structure is not an OML: {report}")
    _check_subalgebra(L, M, iota)
    if a in iota:
        raise PasteVerificationError("new atom lies in L")
    if not M.lt(a, iota[e]):
        raise PasteVerificationError("new atom is not strictly below e")
    if not M.is_atom(a):
        raise PasteVerificationError("new element is not an atom")
    lmask = _mask(iota, M.size)
    up_e = _mask((iota[y] for y in iter_bits(L.upsets[e])), M.size)
    if M.upsets[a] & lmask != up_e:
        raise PasteVerificationError("up(a) meet L differs from up_L(e)")
    if M.upsets[iota[e]] != up_e:
        raise PasteVerificationError("up_M(e) differs from up_L(e)")
    for x in L.atoms():
        if x != e and not M.is_atom(iota[x]):
            raise PasteVerificationError(f"atom {x} of L is no longer an atom")


@dataclass
class BigCoatomResult:
    M: FiniteOml
    atoms: list[int]
    iota: list[int]
    sizes: list[int]


def bigcoatom_extend(L: FiniteOml, xs: Sequence[int], *, verify: bool = True, verify_steps: bool = True) -> BigCoatomResult:
    """Iterated coatom extensions giving fresh atoms a_i with up(a_i) meet L = up_L(x_i)."""
    if len(set(xs)) != len(xs):
        raise ValueError("elements must be distinct")
    if any(x == L.bottom for x in xs):
        raise ValueError("elements must be nonzero")
    cur = L
    atoms: list[int] = []
    sizes = [L.size]
    for x in xs:
        ext = kalmbach_coatom_extension(cur, x, verify=verify_steps)
        cur = ext.M
        atoms.append(ext.atom)
        sizes.append(cur.size)
    res = BigCoatomResult(cur, atoms, list(range(L.size)), sizes)
    if verify:
        verify_bigcoatom(L, xs, res)
    return res


def verify_bigcoatom(L: FiniteOml, xs: Sequence[int], res: BigCoatomResult) -> None:
    M, atoms = res.M, res.atoms
    lmask = _mask(res.iota, M.size)
    if len(set(atoms)) != len(atoms):
        raise PasteVerificationError("new atoms are not distinct")
    for a, x in zip(atoms, xs):
        if a in res.iota or not M.is_atom(a):
            raise PasteVerificationError(f"{a} is not a new atom")
        if M.upsets[a] & lmask != _mask(iter_bits(L.upsets[x]), M.size):
            raise PasteVerificationError(f"up(a) meet L differs from up_L({x})")
    for i, j in combinations(range(len(xs)), 2):
        if M.orthogonal(atoms[i], atoms[j]) != L.orthogonal(xs[i], xs[j]):
            raise PasteVerificationError(f"orthogonality of atoms {i},{j} does not match")
