"""Command-line front end.

Every command writes JSON lines to stdout, the last one being ``{"summary": ...}``.
Exit status: 0 verified, 1 a check failed (the report says which), 2 bad usage or input.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Callable

from . import mubconfig
from .exactnum import format_scalar, parse_scalar, to_field
from .graph2oml import embed_atoms, embed_nonzero, verify_strong_embedding
from .greechie import (
    GraphSpec,
    GreechieDiagram,
    InvalidDiagram,
    SearchTimeout,
    diagram_from_graph,
    find_embedding,
    min_loop_order,
    to_dot,
)
from .omlcore import (
    FiniteOml,
    MalformedTables,
    PasteVerificationError,
    SizeLimitExceeded,
    check_limit,
    check_oml,
)
from .rays3 import orthogonal, squared_cosine
from .taoembed import tao_vectors, verify_gram

__all__ = ["main", "run"]


class InputError(Exception):
    """Bad file, bad JSON or a value the command cannot accept (exit 2)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


class Output:
    def __init__(self, stream, pretty: bool):
        self.stream = stream
        self.pretty = pretty

    def emit(self, obj: dict) -> None:
        if self.pretty:
            self.stream.write(json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
        else:
            self.stream.write(json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n")


# --- input helpers ---------------------------------------------------------------

_SHORTHAND = {"w": "0+1w", "-w": "0-1w", "w2": "-1-1w", "w^2": "-1-1w", "-w2": "1+1w", "-w^2": "1+1w"}


def _scalar(text: str):
    try:
        return parse_scalar(_SHORTHAND.get(text.strip(), text))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from exc


def _load_json(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not JSON ({exc})") from exc


def _load_graph(path: str) -> GraphSpec:
    obj = _load_json(path)
    try:
        return GraphSpec.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: bad graph ({exc})") from exc


def _load_diagram(path: str) -> GreechieDiagram:
    """Diagram JSON, or graph JSON (blocks taken to be its maximal cliques)."""
    obj = _load_json(path)
    try:
        if "blocks" in obj:
            return GreechieDiagram.from_json(obj)
        return diagram_from_graph(GraphSpec.from_json(obj))
    except InvalidDiagram as exc:
        raise InputError(f"{path}: {exc}") from exc
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: bad diagram ({exc})") from exc


def _write_text(path: str, text: str, out: "Output") -> None:
    if path == "-":
        out.stream.write(text)
    else:
        Path(path).write_text(text)


# --- commands ----------------------------------------------------------------------


def cmd_figure1(args, out: Output) -> int:
    x, y, z = (_scalar(s) for s in (args.x, args.y, args.z))
    if args.field == "Qw":
        x, y, z = (to_field(s, "Qw") for s in (x, y, z))
    try:
        cfg = mubconfig.build_figure1(x, y, z, rim=args.rim)
    except mubconfig.ZeroComponentError as exc:
        raise InputError(str(exc)) from exc
    except mubconfig.VerificationError as exc:
        out.emit({"summary": {"command": "figure1", "ok": False, "error": str(exc)}})
        return 1
    for name in mubconfig.RAY_NAMES:
        out.emit({"name": name, "ray": cfg.rays[name].to_json()})
    loops = min_loop_order(cfg.diagram)
    if args.emit_dot:
        _write_text(args.emit_dot, to_dot(cfg.diagram, "figure1"), out)
    ok = loops is None or loops >= 5
    out.emit(
        {
            "summary": {
                "command": "figure1",
                "ok": ok,
                "field": cfg.field,
                "x": format_scalar(cfg.x),
                "y": format_scalar(cfg.y),
                "z": format_scalar(cfg.z),
                "rays": len(set(cfg.rays.values())),
                "blocks": len(cfg.diagram.blocks),
                "min_loop_order": loops,
                "extra_orthogonalities": [list(p) for p in cfg.extra_orthogonalities],
            }
        }
    )
    return 0 if ok else 1


def cmd_center(args, out: Output) -> int:
    x, y, z = (_scalar(s) for s in (args.x, args.y, args.z))
    try:
        cert = mubconfig.center_test(x, y, z)
    except mubconfig.ZeroComponentError as exc:
        raise InputError(str(exc)) from exc
    except mubconfig.VerificationError as exc:
        out.emit({"summary": {"command": "center", "ok": False, "error": str(exc)}})
        return 1
    out.emit(
        {
            "summary": {
                "command": "center",
                "ok": True,
                "x": format_scalar(cert.x),
                "y": format_scalar(cert.y),
                "z": format_scalar(cert.z),
                "products": [format_scalar(p) for p in cert.products],
                "is_center": cert.is_center,
                "is_unbiased": cert.is_unbiased,
            }
        }
    )
    return 0


def cmd_mub(args, out: Output) -> int:
    table = mubconfig.mub_table()
    for k, basis in enumerate(table):
        out.emit({"basis": k, "rays": [r.to_json() for r in basis]})
    internal = all(orthogonal(u, v) for basis in table for u, v in combinations(basis, 2))
    cosines = [
        squared_cosine(u, v) for b1, b2 in combinations(table, 2) for u in b1 for v in b2
    ]
    bad = sorted({format_scalar(c) for c in cosines if c != Fraction(1, 3)})
    ok = internal and not bad
    out.emit(
        {
            "summary": {
                "command": "mub",
                "ok": ok,
                "bases": len(table),
                "cross_pairs": len(cosines),
                "bases_orthogonal": internal,
                "off_cosines": bad,
            }
        }
    )
    return 0 if ok else 1


def cmd_witness(args, out: Output) -> int:
    try:
        wit = mubconfig.build_witness(third_point=args.third_point, rim=args.rim, verify=args.verify)
    except mubconfig.VerificationError as exc:
        out.emit({"summary": {"command": "witness", "ok": False, "error": str(exc)}})
        return 1
    d = wit.diagram
    for v in d.vertices:
        out.emit({"name": v, "ray": wit.realization[v].to_json()})
    if args.emit_dot:
        _write_text(args.emit_dot, to_dot(d, "witness"), out)
    centers = orthogonal(wit.realization["u^1"], wit.realization["u^2"])
    out.emit(
        {
            "summary": {
                "command": "witness",
                "ok": centers,
                "verified": args.verify,
                "rays": len(set(wit.realization[v] for v in d.vertices)),
                "vertices": len(d.vertices),
                "blocks": len(d.blocks),
                "centers_orthogonal": centers,
            }
        }
    )
    return 0 if centers else 1


def cmd_obstruct(args, out: Output) -> int:
    if args.samples < 0 or args.height < 1:
        raise InputError("--samples must be >= 0 and --height >= 1")
    rep = mubconfig.r3_obstruction_certificates(
        samples=args.samples, height_bound=args.height, deadline=args.deadline, seed=args.seed, rim=args.rim
    )
    out.emit({"sign_certificate": rep["sign_certificate"]})
    out.emit({"sampled_pairs": rep["sampled_pairs"]})
    out.emit({"bounded_search": rep["bounded_search"]})
    ok = (
        rep["sign_certificate"]["min_abs_inner"] == 1
        and rep["sampled_pairs"]["violations"] == 0
        and rep["bounded_search"]["status"] == "none"
    )
    out.emit({"summary": {"command": "obstruct", "ok": ok, "seed": args.seed, "status": rep["bounded_search"]["status"]}})
    return 0 if ok else 1


def cmd_tao(args, out: Output) -> int:
    g = _load_graph(args.graph)
    if g.n < 1:
        raise InputError("graph has no vertices")
    vecs = tao_vectors(g)
    rep = verify_gram(vecs, g)
    for i, v in enumerate(vecs):
        out.emit({"vertex": i, "vector": [format_scalar(q) for q in v]})
    if args.emit_gram:
        out.emit({"gram": [[format_scalar(q) for q in row] for row in rep.gram]})
    out.emit(
        {
            "summary": {
                "command": "tao",
                "ok": rep.ok,
                "n": g.n,
                "dimension": len(vecs[0]),
                "rank": rep.rank,
                "pattern_ok": rep.pattern_ok,
                "nonneg_ok": rep.nonneg_ok,
            }
        }
    )
    return 0 if rep.ok else 1


def cmd_check_oml(args, out: Output) -> int:
    obj = _load_json(args.file)
    try:
        L = FiniteOml.from_json(obj, covers=args.covers)
    except (MalformedTables, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{args.file}: {exc}") from exc
    limit = None if args.exhaustive else check_limit()
    rep = check_oml(L, exhaustive_limit=limit, seed=args.seed)
    out.emit({"summary": {"command": "check-oml", "ok": rep.passed, "size": L.size, **rep.to_json(L.labels)}})
    return 0 if rep.passed else 1


def cmd_embed(args, out: Output) -> int:
    g = _load_graph(args.graph)
    if g.n < 1:
        raise InputError("graph has no vertices")
    build = embed_atoms if args.stage == "atoms" else embed_nonzero
    try:
        res = build(g, args.mode, verify=True)
    except (AssertionError, PasteVerificationError) as exc:
        out.emit({"summary": {"command": "embed", "ok": False, "error": str(exc)}})
        return 1
    # re-verified from the final tables only
    strong = verify_strong_embedding(res, g)
    law = check_oml(res.oml, exhaustive_limit=check_limit(), seed=args.seed)
    ok = strong.passed and law.passed
    body = res.to_json()
    stats = body.pop("stats")
    if args.emit_oml:
        _write_text(args.emit_oml, json.dumps(res.oml.to_json(), sort_keys=True) + "\n", out)
    else:
        out.emit({"oml": res.oml.to_json()})
    out.emit({"embedding": body})
    if args.stats:
        for s in stats:
            out.emit({"stats": s})
    out.emit(
        {
            "summary": {
                "command": "embed",
                "ok": ok,
                "mode": args.mode,
                "stage": args.stage,
                "size": res.oml.size,
                "strong_embedding": strong.to_json(),
                "oml_check": law.to_json(res.oml.labels),
            }
        }
    )
    return 0 if ok else 1


def cmd_loops(args, out: Output) -> int:
    d = _load_diagram(args.diagram)
    order = min_loop_order(d, args.max_order)
    out.emit(
        {
            "summary": {
                "command": "loops",
                "ok": True,
                "vertices": len(d.vertices),
                "blocks": len(d.blocks),
                "min_loop_order": order,
                "max_order": args.max_order,
            }
        }
    )
    return 0


def cmd_find_subdiagram(args, out: Output) -> int:
    pattern = _load_diagram(args.pattern)
    host = _load_diagram(args.host)
    try:
        emb = find_embedding(pattern, host, full=args.full, deadline=args.deadline)
        status = "none" if emb is None else "found"
    except SearchTimeout:
        emb, status = None, "timeout"
    if emb is not None:
        out.emit({"mapping": {str(k): v for k, v in emb.mapping.items()}})
    out.emit({"summary": {"command": "find-subdiagram", "ok": emb is not None, "status": status, "full": args.full}})
    return 0 if emb is not None else 1


_BUILTIN_DIAGRAMS: dict[str, Callable[[], GreechieDiagram]] = {
    "figure1": mubconfig.figure1_diagram,
    "figure2": mubconfig.figure2_diagram,
    "witness": mubconfig.witness_diagram,
}


def cmd_render(args, out: Output) -> int:
    if args.builtin:
        d = _BUILTIN_DIAGRAMS[args.builtin]()
        name = args.builtin
    elif args.diagram:
        d = _load_diagram(args.diagram)
        name = "greechie"
    else:
        raise InputError("render needs a diagram file or --builtin")
    _write_text(args.output, to_dot(d, name), out)
    return 0


# --- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="indented output")
    common.add_argument("--seed", type=int, default=0, help="seed for every randomized check")

    p = _Parser(prog="orthospace", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.set_defaults(fn=fn)
        return sp

    sp = add("figure1", cmd_figure1, "build and verify the 22-ray configuration")
    for c in "xyz":
        sp.add_argument(f"--{c}", required=True)
    sp.add_argument("--field", choices=["Q", "Qw"], default=None)
    sp.add_argument("--rim", action="store_true", help="include the block a1 a2 a3")
    sp.add_argument("--emit-dot", metavar="PATH")

    sp = add("center", cmd_center, "centerhood vs unbiasedness of <(x,y,z)>")
    for c in "xyz":
        sp.add_argument(f"--{c}", required=True)

    add("mub", cmd_mub, "the four mutually unbiased bases of C^3")

    sp = add("witness", cmd_witness, "realise the two-centers diagram over Q(w)")
    sp.add_argument("--verify", action="store_true")
    sp.add_argument("--emit-dot", metavar="PATH")
    sp.add_argument("--third-point", action="store_true", help="add a third point to the centers block")
    sp.add_argument("--rim", action="store_true")

    sp = add("obstruct", cmd_obstruct, "certificates that the witness has no real realisation")
    sp.add_argument("--samples", type=int, default=10_000)
    sp.add_argument("--height", type=int, default=4)
    sp.add_argument("--deadline", type=float, default=600.0, help="seconds for the bounded search")
    sp.add_argument("--rim", action="store_true")

    sp = add("tao", cmd_tao, "nonnegative rational orthogonal representation of a graph")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--emit-gram", action="store_true")

    sp = add("check-oml", cmd_check_oml, "check the orthomodular lattice laws")
    sp.add_argument("file")
    sp.add_argument("--covers", action="store_true", help="input lists cover pairs; take the closure")
    sp.add_argument("--exhaustive", action="store_true", help="never fall back to sampling")

    sp = add("embed", cmd_embed, "strong embedding of a graph into a finite OML")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--mode", choices=["optimized", "faithful"], default="optimized")
    sp.add_argument("--stage", choices=["nonzero", "atoms"], default="atoms")
    sp.add_argument("--emit-oml", metavar="PATH")
    sp.add_argument("--stats", action="store_true")

    sp = add("loops", cmd_loops, "smallest loop order of a diagram")
    sp.add_argument("diagram")
    sp.add_argument("--max-order", type=int, default=None)

    sp = add("find-subdiagram", cmd_find_subdiagram, "embed one diagram into another")
    sp.add_argument("pattern")
    sp.add_argument("host")
    sp.add_argument("--full", action="store_true", help="also reflect orthogonality")
    sp.add_argument("--deadline", type=float, default=None)

    sp = add("render", cmd_render, "DOT text of a diagram")
    sp.add_argument("diagram", nargs="?")
    sp.add_argument("--builtin", choices=sorted(_BUILTIN_DIAGRAMS))
    sp.add_argument("-o", "--output", default="-")
    return p


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        out = Output(stdout, args.pretty)
        return args.fn(args, out)
    except InputError as exc:
        stderr.write(json.dumps({"error": str(exc)}) + "\n")
        return 2
    except SizeLimitExceeded as exc:
        stderr.write(json.dumps({"error": f"size limit: {exc}"}) + "\n")
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
