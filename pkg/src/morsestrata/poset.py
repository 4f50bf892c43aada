"""The stratification poset: classes ordered by the adjacency map delta."""
from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .canonical import CanonicalClass
from .enumeration import delta
from .errors import IncompleteInput
from .partitions import OrderedPartition


@dataclass(frozen=True)
class StrataPoset:
    nodes: dict[str, CanonicalClass]
    edges: dict[tuple[str, str], tuple[OrderedPartition, ...]]  # witnesses per edge
    q: int
    kind: str  # "isotopy poset" in the sphere regime, otherwise "class poset"

    @property
    def dims(self) -> dict[str, int]:
        return {cid: c.s_value + 2 * self.q for cid, c in self.nodes.items()}

    def successors(self, cid: str) -> list[str]:
        return sorted(g for f, g in self.edges if f == cid)

    @property
    def neighborhoods(self) -> dict[str, frozenset[str]]:
        return {cid: specialty_neighborhood(self, cid) for cid in self.nodes}

    def is_acyclic(self) -> bool:
        # edges strictly increase s, which already rules out cycles; check directly anyway
        state: dict[str, int] = {}

        def visit(v):
            state[v] = 1
            for w in self.successors(v):
                if state.get(w) == 1 or (w not in state and not visit(w)):
                    return False
            state[v] = 2
            return True

        return all(visit(v) for v in sorted(self.nodes) if v not in state)

    # -- exports ---------------------------------------------------------
    def to_dot(self) -> str:
        lines = [f'digraph "{self.kind}" {{']
        dims = self.dims
        for cid in sorted(self.nodes):
            lines.append(f'  "{cid}" [label="{cid}:{self.nodes[cid].s_value}:{dims[cid]}"];')
        for f, g in sorted(self.edges):
            lines.append(f'  "{f}" -> "{g}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_dict(self, certificates: dict | None = None) -> dict:
        dims = self.dims
        nodes = []
        for cid in sorted(self.nodes):
            c = self.nodes[cid]
            rec = {
                "class_id": cid,
                "s": c.s_value,
                "dim": dims[cid],
                "partition": c.partition.to_list(),
                "program": c.canonical_program.to_dict(),
            }
            if certificates and cid in certificates:
                cert = certificates[cid]
                rec["certificate"] = {
                    "matrix": [list(r) for r in cert.matrix],
                    "determinant": cert.determinant,
                }
            nodes.append(rec)
        edges = [
            {"source": f, "target": g, "witnesses": [w.to_list() for w in ws]}
            for (f, g), ws in sorted(self.edges.items())
        ]
        return {"kind": self.kind, "q": self.q, "nodes": nodes, "edges": edges}

    def to_json(self, certificates: dict | None = None) -> str:
        return json.dumps(self.to_dict(certificates), sort_keys=True, separators=(",", ":"))

    def dimension_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["class_id", "s", "dim"])
        dims = self.dims
        for cid in sorted(self.nodes):
            w.writerow([cid, self.nodes[cid].s_value, dims[cid]])
        return buf.getvalue()


def _out_edges(cls: CanonicalClass):
    out: dict[str, list[OrderedPartition]] = {}
    for j in cls.partition.proper_refinements():
        out.setdefault(delta(cls, j).class_id, []).append(j)
    return out


def build_poset(classes, workers: int = 1, kind: str | None = None) -> StrataPoset:
    classes = sorted(classes, key=lambda c: c.class_id)
    if not classes:
        return StrataPoset({}, {}, 0, kind or "class poset")
    nodes = {c.class_id: c for c in classes}
    q = classes[0].q
    if kind is None:
        prog = classes[0].canonical_program
        regime = prog.labels.sphere_regime(prog.signature)
        kind = "isotopy poset" if regime else "class poset"
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            outs = list(ex.map(_out_edges, classes))
    else:
        outs = [_out_edges(c) for c in classes]
    edges = {}
    for c, out in zip(classes, outs):
        for g, ws in out.items():
            if g not in nodes:
                raise IncompleteInput(f"delta image {g} of {c.class_id} is not among the input classes")
            edges[(c.class_id, g)] = tuple(sorted(ws))
    return StrataPoset(nodes, edges, q, kind)


def filtration(poset: StrataPoset, s: int) -> frozenset[str]:
    """Nodes with at least ``s`` saddle levels."""
    if not 1 <= s <= poset.q + 1:
        raise ValueError(f"s must lie in 1..{poset.q + 1}")
    return frozenset(cid for cid, c in poset.nodes.items() if c.s_value >= s)


def specialty_neighborhood(poset: StrataPoset, cid: str) -> frozenset[str]:
    """The node and everything reachable from it along refinement edges."""
    if cid not in poset.nodes:
        raise KeyError(cid)
    seen = {cid}
    stack = [cid]
    while stack:
        for w in poset.successors(stack.pop()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return frozenset(seen)
