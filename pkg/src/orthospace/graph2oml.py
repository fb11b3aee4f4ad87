"""Strong embeddings of finite graphs into orthogonality spaces of finite OMLs.

``embed_nonzero`` maps vertices to nonzero elements with x ~ y iff f(x) _|_ f(y), by
induction on the number of vertices; ``embed_atoms`` then replaces every image by a
fresh atom below it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .greechie import GraphSpec
from .omlcore import (
    CheckReport,
    FiniteOml,
    SizeLimitExceeded,
    bigcoatom_extend,
    boolean_powerset,
    kalmbach_coatom_extension,
    lemma2_extend,
)

__all__ = ["EmbeddingResult", "embed_atoms", "embed_nonzero", "verify_strong_embedding"]


@dataclass
class EmbeddingResult:
    oml: FiniteOml
    vertex_map: dict[int, int]
    stage: str
    stats: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "stage": self.stage,
            "size": self.oml.size,
            "vertex_map": {str(v): x for v, x in sorted(self.vertex_map.items())},
            "vertex_labels": {str(v): self.oml.labels[x] for v, x in sorted(self.vertex_map.items())},
            "stats": self.stats,
        }


def _pick_w(g: GraphSpec) -> int | None:
    for v in range(g.n):
        if g.degree(v) < g.n - 1:
            return v
    return None


def embed_nonzero(g: GraphSpec, mode: str = "optimized", *, verify: bool = True) -> EmbeddingResult:
    if g.n < 1:
        raise ValueError("graph has no vertices")
    if mode not in ("optimized", "faithful"):
        raise ValueError(f"unknown mode {mode!r}")
    res = _embed_nonzero(g, mode, verify)
    if verify:
        report = verify_strong_embedding(res, g)
        if not report.passed:
            raise AssertionError(f"construction produced a bad embedding: {report}")
    return res


def _embed_nonzero(g: GraphSpec, mode: str, verify: bool) -> EmbeddingResult:
    n = g.n
    w = _pick_w(g)
    if w is None:
        # complete graph (including n = 1): atoms of 2^n; for n = 1 the atom is the top
        B = boolean_powerset(n)
        vmap = {v: 1 << v for v in range(n)}
        return EmbeddingResult(B, vmap, "nonzero", [{"step": n, "kind": "boolean", "size": B.size}])

    rest = [v for v in range(n) if v != w]
    sub = _embed_nonzero(g.induced(rest), mode, verify)
    L, h = sub.oml, {rest[i]: x for i, x in sub.vertex_map.items()}
    stats = list(sub.stats)
    try:
        if mode == "faithful":
            lem = lemma2_extend(L, "faithful", verify=verify)
        else:
            lem = lemma2_extend(L, "optimized", sorted(h.values()), verify=verify)
        M = lem.M
        k = {v: lem.g[x] for v, x in h.items()}
        P = [v for v in rest if g.adjacent(v, w)]
        e = M.ortho[M.join_all(k[v] for v in P)]
        if e == M.bottom:
            raise AssertionError("e' = 1: the join of the neighbours is the top")
        ext = kalmbach_coatom_extension(M, e, verify=verify)
    except SizeLimitExceeded as exc:
        raise SizeLimitExceeded(f"step with {n} vertices: {exc}") from exc
    N = ext.M
    f = {v: ext.iota[x] for v, x in k.items()}
    f[w] = ext.atom
    entry = {"step": n, "kind": "extend", "w": w, "lemma2_size": M.size, "size": N.size}
    if ext.check is not None:
        entry["law_check"] = "exhaustive" if ext.check.exhaustive else "sampled"
    stats.append(entry)
    return EmbeddingResult(N, f, "nonzero", stats)


def embed_atoms(g: GraphSpec, mode: str = "optimized", *, verify: bool = True) -> EmbeddingResult:
    first = embed_nonzero(g, mode, verify=verify)
    L = first.oml
    xs = [first.vertex_map[v] for v in range(g.n)]
    big = bigcoatom_extend(L, xs, verify=verify, verify_steps=verify)
    vmap = {v: big.atoms[v] for v in range(g.n)}
    stats = first.stats + [{"step": "atoms", "kind": "coatom", "size": s} for s in big.sizes[1:]]
    res = EmbeddingResult(big.M, vmap, "atoms", stats)
    if verify:
        report = verify_strong_embedding(res, g)
        if not report.passed:
            raise AssertionError(f"construction produced a bad embedding: {report}")
    return res


def verify_strong_embedding(res: EmbeddingResult, g: GraphSpec) -> CheckReport:
    """Re-check from the lattice tables alone: one-one, nonzero/atoms, and _|_ iff adjacent."""
    L = res.oml
    vm = res.vertex_map
    if sorted(vm) != list(range(g.n)):
        return CheckReport(False, "domain", tuple(sorted(vm)), "vertex map does not cover the graph")
    seen: dict[int, int] = {}
    for v in range(g.n):
        x = vm[v]
        if not 0 <= x < L.size:
            return CheckReport(False, "range", (v,), "image out of range")
        if x in seen:
            return CheckReport(False, "injective", (seen[x], v), "two vertices share an image")
        seen[x] = v
        if x == L.bottom:
            return CheckReport(False, "nonzero", (v,), "vertex mapped to 0")
        if res.stage == "atoms" and not L.is_atom(x):
            return CheckReport(False, "atom", (v,), "image is not an atom")
    for u, v in combinations(range(g.n), 2):
        if L.orthogonal(vm[u], vm[v]) != g.adjacent(u, v):
            return CheckReport(False, "pattern", (u, v), "orthogonality differs from adjacency")
    return CheckReport(True)
