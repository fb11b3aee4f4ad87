"""The partial configuration (22 rays, 12 blocks), centers, the MUB table and the C^3-not-R^3 witness."""
from __future__ import annotations

import random
from functools import lru_cache
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .exactnum import OMEGA, Eisenstein, Scalar, conj, field_of
from .greechie import GreechieDiagram, SearchTimeout, diagram_from_graph, find_embedding, GraphSpec
from .rays3 import Ray, Vector3, cross, inner, orthogonal, unbiased_wrt_block, vec

__all__ = [
    "CenterCertificate",
    "Figure1Config",
    "HEXAGON_BLOCKS",
    "RAY_NAMES",
    "VerificationError",
    "WitnessDiagram",
    "ZeroComponentError",
    "build_figure1",
    "build_witness",
    "center_test",
    "figure1_diagram",
    "figure2_diagram",
    "mub_table",
    "r3_obstruction_certificates",
    "witness_diagram",
]


class VerificationError(AssertionError):
    """An exact check on a constructed configuration failed."""


class ZeroComponentError(ValueError):
    pass


RAY_NAMES = (
    "u",
    "a1", "a2", "a3",
    "b1", "b2", "b3",
    "c1", "c2", "c3",
    "d1", "d2", "d3",
    "b12", "b13", "b23",
    "b112", "b212", "b113", "b313", "b223", "b323",
)

HEXAGON_BLOCKS = (
    ("b1", "b112", "b12"),
    ("b12", "b212", "b2"),
    ("b2", "b223", "b23"),
    ("b23", "b323", "b3"),
    ("b3", "b313", "b13"),
    ("b13", "b113", "b1"),
)

FIGURE1_BLOCKS = (
    tuple((f"a{i}", f"b{i}", f"c{i}") for i in (1, 2, 3))
    + tuple(("u", f"c{i}", f"d{i}") for i in (1, 2, 3))
    + HEXAGON_BLOCKS
)

# derived ray -> the pair whose cross product generates it
GENERATORS = {
    "c1": ("a1", "b1"), "c2": ("a2", "b2"), "c3": ("a3", "b3"),
    "d1": ("u", "c1"), "d2": ("u", "c2"), "d3": ("u", "c3"),
    "b12": ("b1", "b2"), "b13": ("b1", "b3"), "b23": ("b2", "b3"),
    "b112": ("b1", "b12"), "b212": ("b2", "b12"),
    "b113": ("b1", "b13"), "b313": ("b3", "b13"),
    "b223": ("b2", "b23"), "b323": ("b3", "b23"),
}

# dashed blocks of the center diagram: (c_i, opposite hexagon vertex, third point)
DASHED_BLOCKS = (("c1", "b23", "t1"), ("c2", "b13", "t2"), ("c3", "b12", "t3"))


def figure1_diagram(*, rim: bool = False) -> GreechieDiagram:
    blocks = list(FIGURE1_BLOCKS)
    if rim:
        blocks.append(("a1", "a2", "a3"))
    return GreechieDiagram(RAY_NAMES, blocks)


@lru_cache(maxsize=None)
def _figure1_shared(rim: bool) -> GreechieDiagram:
    return figure1_diagram(rim=rim)


def figure2_diagram(*, rim: bool = False) -> GreechieDiagram:
    blocks = list(FIGURE1_BLOCKS) + list(DASHED_BLOCKS)
    if rim:
        blocks.append(("a1", "a2", "a3"))
    return GreechieDiagram(RAY_NAMES + ("t1", "t2", "t3"), blocks)


def _closed_forms(x: Scalar, y: Scalar, z: Scalar) -> dict[str, tuple]:
    """Coordinates of the 22 rays as polynomials in x, y, z and their conjugates."""
    X, Y, Z = conj(x), conj(y), conj(z)
    xx, yy, zz = x * X, y * Y, z * Z
    zero, one = x * 0, x * 0 + 1
    return {
        "u": (x, y, z),
        "a1": (one, zero, zero),
        "a2": (zero, one, zero),
        "a3": (zero, zero, one),
        "b1": (zero, y, z),
        "b2": (x, zero, z),
        "b3": (x, y, zero),
        "c1": (zero, Z, -Y),
        "c2": (Z, zero, -X),
        "c3": (Y, -X, zero),
        "d1": (-yy - zz, X * y, X * z),
        "d2": (x * Y, -xx - zz, Y * z),
        "d3": (x * Z, y * Z, -xx - yy),
        "b12": (Y * Z, X * Z, -X * Y),
        "b13": (Y * Z, -X * Z, X * Y),
        "b23": (-Y * Z, X * Z, X * Y),
        "b112": (x * yy + x * zz, -y * zz, yy * z),
        "b212": (-x * zz, xx * y + y * zz, xx * z),
        "b113": (x * yy + x * zz, y * zz, -yy * z),
        "b313": (-x * yy, xx * y, xx * z + yy * z),
        "b223": (x * zz, y * zz + xx * y, -xx * z),
        "b323": (x * yy, -xx * y, xx * z + yy * z),
    }


def _field_of_triple(x, y, z) -> str:
    return "Qw" if "Qw" in {field_of(x), field_of(y), field_of(z)} else "Q"


def _lift_triple(x, y, z):
    f = _field_of_triple(x, y, z)
    if f == "Qw":
        x, y, z = (s if isinstance(s, Eisenstein) else Eisenstein(s) for s in (x, y, z))
    else:
        x, y, z = (Fraction(s) for s in (x, y, z))
    if not (x and y and z):
        raise ZeroComponentError("x, y, z must all be nonzero")
    return f, x, y, z


@dataclass
class Figure1Config:
    x: Scalar
    y: Scalar
    z: Scalar
    field: str
    rays: dict[str, Ray]
    diagram: GreechieDiagram
    # orthogonal pairs not drawn in the diagram (special values such as |y| = |z|)
    extra_orthogonalities: list[tuple[str, str]] = field(default_factory=list)

    def vectors(self) -> dict[str, Vector3]:
        return {k: r.rep for k, r in self.rays.items()}


def build_figure1(x: Scalar, y: Scalar, z: Scalar, *, rim: bool = False) -> Figure1Config:
    f, x, y, z = _lift_triple(x, y, z)
    forms = _closed_forms(x, y, z)
    rays = {name: Ray(vec(*forms[name], field=f)) for name in RAY_NAMES}

    for name, (p, q) in GENERATORS.items():
        w = cross(rays[p].rep, rays[q].rep)
        if w.is_zero():
            raise VerificationError(f"{p} and {q} are dependent; cannot generate {name}")
        if Ray(w) != rays[name]:
            raise VerificationError(f"{name} = {rays[name]} differs from {p} x {q} = {Ray(w)}")

    if len(set(rays.values())) != len(rays):
        seen: dict[Ray, str] = {}
        for name, r in rays.items():
            if r in seen:
                raise VerificationError(f"{seen[r]} and {name} are the same ray {r}")
            seen[r] = name

    diagram = _figure1_shared(rim)
    for block in diagram.blocks:
        for i in range(len(block)):
            for j in range(i + 1, len(block)):
                if not orthogonal(rays[block[i]], rays[block[j]]):
                    raise VerificationError(f"block {block}: {block[i]} not orthogonal to {block[j]}")

    adj = diagram.adjacency()
    extra = []
    for i, j in _pairs(len(RAY_NAMES)):
        if not adj[i] >> j & 1 and orthogonal(rays[RAY_NAMES[i]], rays[RAY_NAMES[j]]):
            extra.append((RAY_NAMES[i], RAY_NAMES[j]))
    return Figure1Config(x, y, z, f, rays, diagram, extra)


def _pairs(n):
    return ((i, j) for i in range(n) for j in range(i + 1, n))


@dataclass
class CenterCertificate:
    x: Scalar
    y: Scalar
    z: Scalar
    products: tuple[Scalar, Scalar, Scalar]
    is_center: bool
    is_unbiased: bool


def center_test(x: Scalar, y: Scalar, z: Scalar) -> CenterCertificate:
    """Decide centerhood from the three dashed orthogonalities, and unbiasedness from angles."""
    cfg = build_figure1(x, y, z)
    X, Y, Z = cfg.x, cfg.y, cfg.z
    # products on the table representatives, not the canonical (rescaled) ones
    forms = {k: vec(*t, field=cfg.field) for k, t in _closed_forms(X, Y, Z).items()}
    products = tuple(inner(forms[c], forms[b]) for c, b, _ in DASHED_BLOCKS)
    closed = (
        X * Z * conj(Z) - X * Y * conj(Y),
        Y * Z * conj(Z) - Y * X * conj(X),
        Z * Y * conj(Y) - Z * X * conj(X),
    )
    for (c, b, _), got, want in zip(DASHED_BLOCKS, products, closed):
        if got != want:
            raise VerificationError(f"<{c},{b}> = {got}, closed form gives {want}")
        if bool(got) == orthogonal(cfg.rays[c], cfg.rays[b]):
            raise VerificationError(f"<{c},{b}> disagrees with ray orthogonality")
    is_center = all(not p for p in products)
    std = [cfg.rays["a1"], cfg.rays["a2"], cfg.rays["a3"]]
    is_unbiased = unbiased_wrt_block(cfg.rays["u"], std)
    if is_center != is_unbiased:
        raise VerificationError(f"center={is_center} but unbiased={is_unbiased} at ({X}, {Y}, {Z})")
    return CenterCertificate(X, Y, Z, products, is_center, is_unbiased)


def mub_table() -> list[list[Ray]]:
    """Four mutually unbiased bases of C^3 (unnormalised rows)."""
    w, w2 = OMEGA, OMEGA * OMEGA
    one = Eisenstein(1)
    zero = Eisenstein(0)
    rows = [
        [(one, zero, zero), (zero, one, zero), (zero, zero, one)],
        [(one, one, one), (one, w, w2), (one, w2, w)],
        [(one, w, w), (one, w2, one), (one, one, w2)],
        [(one, w2, w2), (one, w, one), (one, one, w)],
    ]
    return [[Ray(vec(*r, field="Qw")) for r in row] for row in rows]


@dataclass
class WitnessDiagram:
    diagram: GreechieDiagram
    realization: dict[str, Ray] | None = None


def _copy_name(name: str, copy: int) -> str:
    return name if name in ("a1", "a2", "a3") else f"{name}^{copy}"


def witness_diagram(*, third_point: bool = False, rim: bool = False) -> GreechieDiagram:
    """Two center diagrams glued along a1, a2, a3 plus a block joining the two centers."""
    fig2 = figure2_diagram(rim=rim)
    verts: list[str] = []
    for copy in (1, 2):
        for v in fig2.vertices:
            nv = _copy_name(v, copy)
            if nv not in verts:
                verts.append(nv)
    blocks: list[tuple] = []
    for copy in (1, 2):
        for b in fig2.blocks:
            nb = tuple(_copy_name(v, copy) for v in b)
            if set(nb) not in [set(x) for x in blocks]:
                blocks.append(nb)
    centers = ("u^1", "u^2")
    if third_point:
        verts.append("t12")
        centers = centers + ("t12",)
    blocks.append(centers)
    return GreechieDiagram(verts, blocks)


def build_witness(*, third_point: bool = False, rim: bool = False, verify: bool = True) -> WitnessDiagram:
    """Realise the witness in C^3 with centers (1,1,1) and (1,w,w^2) of the standard block."""
    diagram = witness_diagram(third_point=third_point, rim=rim)
    w = OMEGA
    realization: dict[str, Ray] = {}
    for copy, center in ((1, (Eisenstein(1), Eisenstein(1), Eisenstein(1))), (2, (Eisenstein(1), w, w * w))):
        cfg = build_figure1(*center)
        rays = dict(cfg.rays)
        for c, b, t in DASHED_BLOCKS:
            third = cross(rays[c].rep, rays[b].rep)
            if third.is_zero():
                raise VerificationError(f"copy {copy}: {c} and {b} are dependent")
            rays[t] = Ray(third)
        for name, r in rays.items():
            realization[_copy_name(name, copy)] = r
    if third_point:
        realization["t12"] = Ray(cross(realization["u^1"].rep, realization["u^2"].rep))
    if verify:
        _verify_realization(diagram, realization)
    return WitnessDiagram(diagram, realization)


def _verify_realization(diagram: GreechieDiagram, realization: dict[str, Ray]) -> None:
    missing = [v for v in diagram.vertices if v not in realization]
    if missing:
        raise VerificationError(f"unrealised vertices {missing}")
    seen: dict[Ray, str] = {}
    for v in diagram.vertices:
        r = realization[v]
        if r in seen:
            raise VerificationError(f"{seen[r]} and {v} realise the same ray {r}")
        seen[r] = v
    for b in diagram.blocks:
        for i in range(len(b)):
            for j in range(i + 1, len(b)):
                if not orthogonal(realization[b[i]], realization[b[j]]):
                    raise VerificationError(f"block {b}: {b[i]} not orthogonal to {b[j]}")


# --- the R^3 side -------------------------------------------------------------


def sign_certificate() -> dict:
    """min |sigma . tau| over all sigma, tau in {+1,-1}^3."""
    signs = list(product((1, -1), repeat=3))
    values = [abs(sum(s * t for s, t in zip(a, b))) for a in signs for b in signs]
    return {"pairs": len(values), "min_abs_inner": min(values)}


def _random_rational(rng: random.Random, height: int) -> Fraction:
    while True:
        q = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if q:
            return q


def sampled_pairs_check(samples: int, rng: random.Random, height: int = 12) -> dict:
    """Random orthogonal rational pairs; count those with both rays unbiased wrt the standard basis.

    Half of the first rays are drawn unbiased on purpose (+-s, +-s, +-s) so the test is not vacuous.
    """
    std = [Ray((1, 0, 0)), Ray((0, 1, 0)), Ray((0, 0, 1))]
    violations = 0
    first_unbiased = 0
    for k in range(samples):
        if k % 2 == 0:
            s = _random_rational(rng, height)
            u = vec(*(s * rng.choice((1, -1)) for _ in range(3)))
        else:
            u = vec(*(_random_rational(rng, height) for _ in range(3)))
        while True:
            r = vec(*(_random_rational(rng, height) for _ in range(3)))
            v = cross(u, r)
            if not v.is_zero():
                break
        assert not inner(u, v)
        ub = unbiased_wrt_block(u, std)
        first_unbiased += ub
        if ub and unbiased_wrt_block(v, std):
            violations += 1
    return {"samples": samples, "first_unbiased": first_unbiased, "violations": violations}


def bounded_rational_rays(height: int) -> list[Ray]:
    """All rays of Q^3 whose canonical coordinates are p/q with |p|, q <= height."""
    values = sorted({Fraction(p, q) for p in range(-height, height + 1) for q in range(1, height + 1)})
    rays = [Ray((1, y, z)) for y in values for z in values]
    rays += [Ray((0, 1, z)) for z in values]
    rays.append(Ray((0, 0, 1)))
    return rays


def ray_host_diagram(rays: list[Ray]) -> GreechieDiagram:
    """Orthogonality diagram on ``rays``; in R^3 its cliques have at most 3 elements."""
    n = len(rays)
    edges = set()
    for i in range(n):
        ri = rays[i].rep
        for j in range(i + 1, n):
            if not inner(ri, rays[j].rep):
                edges.add((i, j))
    g = GraphSpec(n, frozenset(edges))
    d = diagram_from_graph(g, labels=[str(i) for i in range(n)])
    if any(len(b) > 3 for b in d.blocks):
        raise VerificationError("orthogonal 4-set in a 3-dimensional space")
    return d


def r3_obstruction_certificates(
    samples: int = 10_000,
    height_bound: int = 4,
    deadline: float | None = 600.0,
    seed: int = 0,
    rim: bool = False,
) -> dict:
    rng = random.Random(seed)
    report: dict = {"sign_certificate": sign_certificate()}
    report["sampled_pairs"] = sampled_pairs_check(samples, rng)
    rays = bounded_rational_rays(height_bound)
    host = ray_host_diagram(rays)
    part_c: dict = {"height_bound": height_bound, "host_rays": len(rays), "host_blocks": len(host.blocks)}
    try:
        emb = find_embedding(witness_diagram(rim=rim), host, full=False, deadline=deadline)
        part_c["status"] = "none" if emb is None else "found"
        if emb is not None:
            part_c["embedding"] = {k: rays[int(v)].to_json() for k, v in emb.mapping.items()}
    except SearchTimeout:
        part_c["status"] = "timeout"
    report["bounded_search"] = part_c
    return report
