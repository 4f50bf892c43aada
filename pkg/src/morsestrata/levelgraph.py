"""The level graph: union of the singular level sets through the saddles."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .program import Mark, MorseProgram, Trace, execute, require_valid


@dataclass(frozen=True)
class Edge:
    index: int
    level: int
    source: int  # saddle where the arc starts
    target: int  # saddle where the arc ends
    start: Mark  # mark the arc leaves from
    end: Mark
    circle: int  # circle of the family below the level carrying the arc
    position: int  # index of ``start`` in that circle's cyclic word


@dataclass(frozen=True)
class LevelGraph:
    vertices: dict[int, int]  # saddle -> level index
    edges: tuple[Edge, ...]

    def degree(self, saddle: int) -> int:
        return sum((e.source == saddle) + (e.target == saddle) for e in self.edges)

    def in_out(self, saddle: int) -> tuple[int, int]:
        return (sum(e.target == saddle for e in self.edges), sum(e.source == saddle for e in self.edges))

    def edges_at_level(self, level: int) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.level == level)

    def degree_histogram(self) -> Counter:
        return Counter(self.degree(v) for v in self.vertices)


def reading_order(trace: Trace) -> list[Mark]:
    """Marks listed level by level, circle by circle, along each cyclic word.

    Arc ``i`` of a program is the arc leaving the ``i``-th mark of this list.
    """
    return [m for lv in trace.levels for w in lv.words for m in w]


def extract_level_graph(prog: MorseProgram) -> LevelGraph:
    require_valid(prog)
    tr = execute(prog)
    edges = []
    for k, lv in enumerate(tr.levels):
        for c, w in enumerate(lv.words):
            for i, m in enumerate(w):
                nxt = w[(i + 1) % len(w)]
                edges.append(Edge(len(edges), k, m[0], nxt[0], m, nxt, c, i))
    vertices = {j: prog.partition.level_of(j) for j in range(1, prog.q + 1)}
    return LevelGraph(vertices, tuple(edges))
