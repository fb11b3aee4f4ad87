"""Regenerate fixtures/ (lattices, diagrams, graphs). Output is deterministic."""
import json
from itertools import combinations
from pathlib import Path

from orthospace.greechie import GraphSpec, GreechieDiagram
from orthospace.mubconfig import figure1_diagram, figure2_diagram, witness_diagram
from orthospace.omlcore import boolean_powerset, mo, o6

ROOT = Path(__file__).resolve().parent.parent / "fixtures"


def dump(path: Path, obj) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, sort_keys=True) + "\n")


def all_graphs(n: int):
    pairs = list(combinations(range(n), 2))
    for m in range(1 << len(pairs)):
        yield m, GraphSpec(n, frozenset(p for i, p in enumerate(pairs) if m >> i & 1))


def main() -> None:
    dump(ROOT / "o6.json", o6().to_json())
    for k in (1, 2, 3):
        dump(ROOT / f"mo{k}.json", mo(k).to_json())
    for k in (1, 2, 3, 4):
        dump(ROOT / f"bool{k}.json", boolean_powerset(k).to_json())
    two = GreechieDiagram(["a", "b", "c", "d", "e"], [["a", "b", "c"], ["c", "d", "e"]])
    dump(ROOT / "two_block.json", two.to_json())
    dump(ROOT / "triangle.json", GraphSpec(3, frozenset(combinations(range(3), 2))).to_json())
    dump(ROOT / "figure1.json", figure1_diagram().to_json())
    dump(ROOT / "figure2.json", figure2_diagram().to_json())
    dump(ROOT / "witness.json", witness_diagram().to_json())
    dump(ROOT / "p3.json", GraphSpec(3, frozenset({(0, 1), (1, 2)})).to_json())
    count = 0
    for n in range(1, 5):
        for m, g in all_graphs(n):
            dump(ROOT / "graphs" / f"n{n}_{m:02d}.json", g.to_json())
            count += 1
    print(f"wrote {count} graphs to {ROOT / 'graphs'}")


if __name__ == "__main__":
    main()
