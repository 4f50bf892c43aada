"""Cell structure of the surface and relative first homology.

The closed surface is cut into: the saddles (0-cells); the ``2q`` arcs of the
level graph plus one connector for every regular circle running between two
saddle levels (1-cells); a disc around each extremum and an annulus for every
such circle (2-cells).  Each 2-cell has boundary ``upper walk - lower walk``,
so every arc occurs once with each sign.  Removing the extremum discs and
working relative to all 0-cells gives ``H_1(M - extrema, saddles)``.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .canonical import CanonicalClass
from .enumeration import delta_with_map
from .errors import RankMismatch
from .levelgraph import reading_order
from .linalg import Matrix, determinant, matmul, nullspace, smith_normal_form
from .partitions import OrderedPartition
from .program import MorseProgram, execute, require_valid


@dataclass(frozen=True)
class CellComplex:
    n_vertices: int
    one_cells: tuple[str, ...]  # "arc:i" or "conn:k"
    two_cells: tuple[str, ...]  # "min:id", "max:id" or "annulus:k"
    d1: tuple[tuple[int, ...], ...]  # n_vertices x n_one
    d2: tuple[tuple[int, ...], ...]  # n_one x n_two
    arcs: tuple[int, ...]  # 1-cell indices of the level-graph arcs, in arc order
    deleted: tuple[int, ...]  # 2-cell indices of the extremum discs

    @property
    def euler_char(self) -> int:
        return self.n_vertices - len(self.one_cells) + len(self.two_cells)

    def boundary_squared_zero(self) -> bool:
        prod = matmul([list(r) for r in self.d1], [list(r) for r in self.d2])
        return all(x == 0 for row in prod for x in row)


@dataclass(frozen=True)
class EdgeBasisCertificate:
    """Arc classes written in a computed basis of relative ``H_1``.

    ``matrix[b][i]`` is the ``b``-th coordinate of arc ``i``; ``projection``
    sends any 1-chain to its class coordinates.
    """

    matrix: tuple[tuple[int, ...], ...]
    determinant: int
    projection: tuple[tuple[int, ...], ...]
    torsion: tuple[int, ...]

    @property
    def is_basis(self) -> bool:
        return abs(self.determinant) == 1

    def arc_relations(self) -> list[list[int]]:
        """Integer vectors ``r`` with ``sum_i r_i [e_i] = 0``."""
        return nullspace([list(r) for r in self.matrix])


def build_cell_complex(prog: MorseProgram) -> CellComplex:
    require_valid(prog)
    tr = execute(prog)
    order = reading_order(tr)
    arc_of = {m: i for i, m in enumerate(order)}
    q = prog.q
    n_arcs = len(order)
    one = [f"arc:{i}" for i in range(n_arcs)]
    d1_cols = []
    for k, lv in enumerate(tr.levels):
        for w in lv.words:
            for i, m in enumerate(w):
                col = [0] * q
                col[w[(i + 1) % len(w)][0] - 1] += 1
                col[m[0] - 1] -= 1
                d1_cols.append(col)
    two = []
    d2_cols = []
    deleted = []
    for idx, st in enumerate(tr.strands):
        col = [0] * n_arcs
        if st.death_level < prog.partition.s:
            for m in st.death:
                col[arc_of[m]] += 1
        if st.birth_level >= 0:
            for m in st.birth:
                col[arc_of[m]] -= 1
        if st.birth_level < 0:
            name = f"min:{st.birth[0]}"
        elif st.death_level == prog.partition.s:
            name = f"max:{st.death[0]}"
        else:
            name = f"annulus:{idx}"
            a, b = st.birth[0], st.death[0]
            conn = [0] * q
            conn[b[0] - 1] += 1
            conn[a[0] - 1] -= 1
            one.append(f"conn:{idx}")
            d1_cols.append(conn)
        if name.startswith(("min", "max")):
            deleted.append(len(two))
        two.append(name)
        d2_cols.append(col)
    n1 = len(one)
    d2 = [[0] * len(two) for _ in range(n1)]
    for c, col in enumerate(d2_cols):
        for i, v in enumerate(col):
            d2[i][c] = v
    d1 = [[d1_cols[c][v] for c in range(n1)] for v in range(q)]
    return CellComplex(
        q, tuple(one), tuple(two),
        tuple(map(tuple, d1)), tuple(map(tuple, d2)),
        tuple(range(n_arcs)), tuple(deleted),
    )


def relative_h1(cx: CellComplex) -> tuple[int, EdgeBasisCertificate]:
    """Rank of ``H_1(X, X^0)`` for the complex with extremum discs removed."""
    kept = [c for c in range(len(cx.two_cells)) if c not in cx.deleted]
    n1 = len(cx.one_cells)
    b = [[cx.d2[i][c] for c in kept] for i in range(n1)]
    if kept:
        d, p, _ = smith_normal_form(b)
        r = sum(1 for i in range(min(n1, len(kept))) if d[i][i])
        torsion = tuple(d[i][i] for i in range(r) if d[i][i] > 1)
    else:
        p, r, torsion = [[int(i == j) for j in range(n1)] for i in range(n1)], 0, ()
    rank = n1 - r
    q = cx.n_vertices
    if rank != 2 * q:
        raise RankMismatch(f"relative H_1 has rank {rank}, expected {2 * q}")
    proj = [list(p[i]) for i in range(r, n1)]
    mat = [[row[a] for a in cx.arcs] for row in proj]
    cert = EdgeBasisCertificate(
        tuple(map(tuple, mat)), determinant(mat), tuple(map(tuple, proj)), torsion
    )
    return rank, cert


def class_certificate(cls: CanonicalClass) -> EdgeBasisCertificate:
    return relative_h1(build_cell_complex(cls.canonical_program))[1]


# -- incidence -------------------------------------------------------------


@dataclass(frozen=True)
class Incidence:
    """Chart transition data from a class to ``delta(class, finer)``.

    ``matrix[i][j]`` counts how often target arc ``i`` runs along source arc
    ``j`` once the split levels are pushed back together; periods transform as
    ``u_target = matrix @ u_source``.  ``saddles[j - 1]`` is the target name of
    source saddle ``j``.
    """

    source: CanonicalClass
    target: CanonicalClass
    finer: OrderedPartition
    matrix: tuple[tuple[int, ...], ...]
    saddles: tuple[int, ...]

    @property
    def determinant(self) -> int:
        return determinant([list(r) for r in self.matrix])

    @property
    def is_unimodular(self) -> bool:
        return abs(self.determinant) == 1

    def to_json(self) -> str:
        return json.dumps(
            {
                "source": self.source.class_id,
                "target": self.target.class_id,
                "finer": self.finer.to_list(),
                "matrix": [list(r) for r in self.matrix],
                "saddles": list(self.saddles),
            },
            sort_keys=True,
            separators=(",", ":"),
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["target_arc"] + [f"source_arc_{j}" for j in range(len(self.matrix))])
        for i, row in enumerate(self.matrix):
            w.writerow([i, *row])
        return buf.getvalue()


class ChainMapInconsistent(RankMismatch):
    """A relation among target arcs does not pull back to a relation among source arcs."""


def incidence_matrix(coarse: CanonicalClass, finer: OrderedPartition, check: bool = True) -> Incidence:
    target, relabel, walks = delta_with_map(coarse, finer)
    src_order = reading_order(execute(coarse.canonical_program))
    src_idx = {m: i for i, m in enumerate(src_order)}
    n = len(src_order)
    mat = [[0] * n for _ in range(n)]
    for i, m in enumerate(src_order):
        # refined program keeps the mark names of the coarse canonical program
        ti = relabel.arcs[_arc_index_in_refined(coarse, finer)[m]]
        for cm, cnt in walks[m].items():
            mat[ti][src_idx[cm]] += cnt
    saddles = tuple(relabel.saddles[j] for j in range(1, coarse.q + 1))
    inc = Incidence(coarse, target, finer, tuple(map(tuple, mat)), saddles)
    if check:
        _check_chain_map(inc)
    return inc


def _arc_index_in_refined(coarse: CanonicalClass, finer: OrderedPartition):
    from .enumeration import refine_order

    fine = refine_order(coarse.canonical_program, finer)
    return {m: i for i, m in enumerate(reading_order(execute(fine)))}


def _check_chain_map(inc: Incidence) -> None:
    src = class_certificate(inc.source)
    tgt = class_certificate(inc.target)
    m = [list(r) for r in inc.matrix]
    for rel in tgt.arc_relations():
        pulled = [sum(rel[i] * m[i][j] for i in range(len(rel))) for j in range(len(m))]
        image = [sum(row[j] * pulled[j] for j in range(len(pulled))) for row in src.matrix]
        if any(image):
            raise ChainMapInconsistent(
                f"relation {rel} of {inc.target.class_id} fails in {inc.source.class_id}"
            )
