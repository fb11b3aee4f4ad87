"""Greechie diagrams: vertices plus blocks (the maximal cliques of an orthogonality graph)."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable, Sequence

from .bits import iter_bits

__all__ = [
    "DiagramEmbedding",
    "GraphSpec",
    "GreechieDiagram",
    "InvalidDiagram",
    "SearchTimeout",
    "diagram_from_graph",
    "find_embedding",
    "graph_from_diagram",
    "maximal_cliques",
    "min_loop_order",
    "to_dot",
]


class InvalidDiagram(ValueError):
    pass


class SearchTimeout(TimeoutError):
    """The deadline passed before the search was exhausted (distinct from "no embedding")."""


@dataclass(frozen=True)
class GraphSpec:
    """Finite simple loopless undirected graph on vertices 0..n-1."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative vertex count")
        norm = set()
        for e in self.edges:
            i, j = e
            if i == j:
                raise ValueError(f"self-loop at {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge {e} out of range for n={self.n}")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "GraphSpec":
        edges = [tuple(e) for e in edges]
        canon = [(min(e), max(e)) for e in edges]
        if len(set(canon)) != len(canon):
            raise ValueError("duplicate edge")
        return cls(n, frozenset(canon))

    def adjacent(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def adjacency(self) -> list[int]:
        adj = [0] * self.n
        for i, j in self.edges:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return adj

    def neighbors(self, i: int) -> list[int]:
        return sorted(j for e in self.edges if i in e for j in e if j != i)

    def degree(self, i: int) -> int:
        return sum(1 for e in self.edges if i in e)

    def complement(self) -> "GraphSpec":
        return GraphSpec(self.n, frozenset(p for p in combinations(range(self.n), 2) if p not in self.edges))

    def induced(self, keep: Sequence[int]) -> "GraphSpec":
        """Subgraph induced on ``keep``, relabelled 0..len(keep)-1 in the given order."""
        pos = {v: k for k, v in enumerate(keep)}
        return GraphSpec(
            len(keep),
            frozenset((pos[i], pos[j]) for i, j in self.edges if i in pos and j in pos),
        )

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in sorted(self.edges)]}

    @classmethod
    def from_json(cls, obj: dict) -> "GraphSpec":
        return cls.from_edges(obj["n"], obj.get("edges", []))


def maximal_cliques(adj: Sequence[int]) -> list[int]:
    """Bron-Kerbosch with pivoting over bitset adjacency; cliques returned as bitmasks."""
    out: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(r)
            return
        # pivot maximising |P & N(u)|
        pu = max(iter_bits(p | x), key=lambda u: bin(p & adj[u]).count("1"))
        for v in iter_bits(p & ~adj[pu]):
            bit = 1 << v
            expand(r | bit, p & adj[v], x & adj[v])
            p &= ~bit
            x |= bit

    expand(0, (1 << len(adj)) - 1, 0)
    return sorted(out, key=lambda m: iter_bits(m))


class GreechieDiagram:
    """Ordered vertex labels plus blocks (tuples of labels)."""

    def __init__(self, vertices: Iterable[Hashable], blocks: Iterable[Iterable[Hashable]], *, validate: bool = True):
        self.vertices: tuple = tuple(vertices)
        self.index = {v: i for i, v in enumerate(self.vertices)}
        if len(self.index) != len(self.vertices):
            raise InvalidDiagram("duplicate vertex labels")
        self.blocks: tuple = tuple(tuple(b) for b in blocks)
        if validate:
            self.validate()

    def __repr__(self):
        return f"GreechieDiagram({len(self.vertices)} vertices, {len(self.blocks)} blocks)"

    def __eq__(self, other):
        if not isinstance(other, GreechieDiagram):
            return NotImplemented
        return set(self.vertices) == set(other.vertices) and self.block_sets() == other.block_sets()

    def block_sets(self) -> set[frozenset]:
        return {frozenset(b) for b in self.blocks}

    def block_masks(self) -> list[int]:
        return [sum(1 << self.index[v] for v in b) for b in self.blocks]

    def adjacency(self) -> list[int]:
        adj = [0] * len(self.vertices)
        for m in self.block_masks():
            for i in iter_bits(m):
                adj[i] |= m & ~(1 << i)
        return adj

    def validate(self) -> None:
        masks = []
        for b in self.blocks:
            if len(b) < 2:
                raise InvalidDiagram(f"block {b} has fewer than 2 vertices")
            if len(set(b)) != len(b):
                raise InvalidDiagram(f"block {b} repeats a vertex")
            missing = [v for v in b if v not in self.index]
            if missing:
                raise InvalidDiagram(f"block {b} uses unknown vertices {missing}")
            masks.append(sum(1 << self.index[v] for v in b))
        for i, j in combinations(range(len(masks)), 2):
            if masks[i] & masks[j] in (masks[i], masks[j]):
                raise InvalidDiagram(f"block {self.blocks[i]} and {self.blocks[j]} are nested")
        cliques = {m for m in maximal_cliques(self.adjacency()) if m & (m - 1)}
        if cliques != set(masks):
            extra = [self._labels(m) for m in cliques - set(masks)]
            raise InvalidDiagram(f"blocks are not the maximal cliques; unlisted cliques {extra}")

    def _labels(self, mask: int) -> tuple:
        return tuple(self.vertices[i] for i in iter_bits(mask))

    def restrict(self, keep: Iterable[Hashable]) -> "GreechieDiagram":
        """Sub-diagram on ``keep``: blocks lying wholly inside it."""
        keep = set(keep)
        verts = [v for v in self.vertices if v in keep]
        return GreechieDiagram(verts, [b for b in self.blocks if set(b) <= keep])

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "blocks": [list(b) for b in self.blocks]}

    @classmethod
    def from_json(cls, obj: dict) -> "GreechieDiagram":
        return cls(obj["vertices"], obj["blocks"])


def diagram_from_graph(g: GraphSpec, labels: Sequence[Hashable] | None = None) -> GreechieDiagram:
    labels = list(range(g.n)) if labels is None else list(labels)
    adj = g.adjacency()
    blocks = [[labels[i] for i in iter_bits(m)] for m in maximal_cliques(adj) if m & (m - 1)]
    return GreechieDiagram(labels, blocks, validate=False)


def graph_from_diagram(d: GreechieDiagram) -> GraphSpec:
    d.validate()
    edges = set()
    for i, m in enumerate(d.adjacency()):
        edges.update((i, j) for j in iter_bits(m) if i < j)
    return GraphSpec(len(d.vertices), frozenset(edges))


def min_loop_order(d: GreechieDiagram, max_order: int | None = None) -> int | None:
    """Smallest n >= 3 with an n-loop (distinct blocks, distinct connecting atoms), else None."""
    d.validate()
    masks = d.block_masks()
    nb = len(masks)
    limit = nb if max_order is None else min(nb, max_order)

    def has_loop(order: int) -> bool:
        for s in range(nb):
            # s is the smallest block index on the loop
            def dfs(cur: int, used_blocks: int, used_atoms: int, length: int) -> bool:
                if length == order:
                    closing = masks[cur] & masks[s] & ~used_atoms
                    return bool(closing)
                for nxt in range(s + 1, nb):
                    if used_blocks >> nxt & 1:
                        continue
                    shared = masks[cur] & masks[nxt] & ~used_atoms
                    for atom in iter_bits(shared):
                        if dfs(nxt, used_blocks | 1 << nxt, used_atoms | 1 << atom, length + 1):
                            return True
                return False

            if dfs(s, 1 << s, 0, 1):
                return True
        return False

    for order in range(3, limit + 1):
        if has_loop(order):
            return order
    return None


@dataclass
class DiagramEmbedding:
    mapping: dict
    full: bool


def _search_order(adj: Sequence[int]) -> list[int]:
    """Most-constrained-first: next vertex has the most placed neighbours, then highest degree."""
    n = len(adj)
    deg = [bin(a).count("1") for a in adj]
    placed = 0
    order: list[int] = []
    remaining = set(range(n))
    while remaining:
        v = min(remaining, key=lambda u: (-bin(adj[u] & placed).count("1"), -deg[u], u))
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)
    return order


def find_embedding(
    pattern: GreechieDiagram,
    host: GreechieDiagram,
    full: bool = False,
    deadline: float | None = None,
) -> DiagramEmbedding | None:
    """Injective map of co-block graphs preserving adjacency (and reflecting it if ``full``).

    ``deadline`` is a budget in seconds; exceeding it raises :class:`SearchTimeout`.
    Returns None only when the search space has been exhausted.
    """
    padj = pattern.adjacency()
    hadj = host.adjacency()
    return _embed_graphs(padj, hadj, full, deadline, pattern.vertices, host.vertices)


def _embed_graphs(padj, hadj, full, deadline, plabels, hlabels):
    npat, nhost = len(padj), len(hadj)
    if npat > nhost:
        return None
    stop_at = None if deadline is None else time.monotonic() + deadline
    pdeg = [bin(a).count("1") for a in padj]
    hdeg = [bin(a).count("1") for a in hadj]
    order = _search_order(padj)
    by_degree = {}
    for k in set(pdeg):
        by_degree[k] = sum(1 << h for h in range(nhost) if hdeg[h] >= k)
    image = [-1] * npat
    used = 0
    nodes = 0

    def rec(depth: int) -> bool:
        nonlocal used, nodes
        if depth == npat:
            return True
        nodes += 1
        if stop_at is not None and nodes & 1023 == 0 and time.monotonic() > stop_at:
            raise SearchTimeout(f"embedding search exceeded {deadline}s")
        v = order[depth]
        cand = by_degree[pdeg[v]] & ~used
        for k in range(depth):
            w = order[k]
            if padj[v] >> w & 1:
                cand &= hadj[image[w]]
            elif full:
                cand &= ~hadj[image[w]]
            if not cand:
                return False
        for h in iter_bits(cand):
            image[v] = h
            used |= 1 << h
            if rec(depth + 1):
                return True
            used &= ~(1 << h)
        image[v] = -1
        return False

    if not rec(0):
        return None
    return DiagramEmbedding({plabels[i]: hlabels[image[i]] for i in range(npat)}, full)


def _dot_id(label) -> str:
    s = str(label).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{s}"'


def to_dot(d: GreechieDiagram, name: str = "greechie") -> str:
    """DOT text: one point node per vertex, one box node per block, membership edges."""
    lines = [f"digraph {name} {{", "  edge [dir=none];"]
    for v in d.vertices:
        lines.append(f"  {_dot_id(v)} [shape=circle, label={_dot_id(v)}];")
    for k, b in enumerate(d.blocks):
        lines.append(f'  "__block{k}" [shape=box, label="B{k}"];')
        for v in b:
            lines.append(f'  "__block{k}" -> {_dot_id(v)};')
    lines.append("}")
    return "\n".join(lines) + "\n"
