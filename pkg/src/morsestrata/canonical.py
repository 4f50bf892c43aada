"""Canonical forms and automorphism groups of Morse programs.

Two programs are equivalent when they differ by a *presentation*: the order in
which the initial circles are listed, the starting point of each cyclic word,
the names of unlabeled critical points, the order of a saddle's two feet and
the actual slot numbers.  The canonical program is the presentation whose key
is lexicographically smallest.  The key is built level by level, so choices
that lose at some level are dropped immediately; the surviving choices at the
end are exactly the automorphisms of the class.
"""
from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass
from itertools import permutations, product

from .levelgraph import reading_order
from .partitions import OrderedPartition
from .program import (
    Mark,
    MorseProgram,
    Trace,
    execute,
    require_valid,
)


@dataclass(frozen=True)
class CanonicalClass:
    canonical_program: MorseProgram
    class_id: str
    s_value: int
    partition: OrderedPartition

    @property
    def q(self) -> int:
        return self.canonical_program.q

    @property
    def dim(self) -> int:
        return self.s_value + 2 * self.q

    def __lt__(self, other):
        return self.class_id < other.class_id


@dataclass(frozen=True)
class Relabeling:
    """How the marks of an input program map onto its canonical program."""

    saddles: dict[int, int]  # input saddle -> canonical saddle
    marks: dict[Mark, Mark]  # input mark -> canonical mark
    arcs: tuple[int, ...]  # input arc index -> canonical arc index


@dataclass(frozen=True)
class Automorphism:
    saddles: tuple[int, ...]  # saddles[j - 1] = image of saddle j
    arcs: tuple[int, ...]  # arcs[i] = image of arc i

    @property
    def is_identity(self) -> bool:
        return all(v == i + 1 for i, v in enumerate(self.saddles)) and all(
            v == i for i, v in enumerate(self.arcs)
        )

    def compose(self, other: "Automorphism") -> "Automorphism":
        """``self`` after ``other``."""
        return Automorphism(
            tuple(self.saddles[other.saddles[j] - 1] for j in range(len(self.saddles))),
            tuple(self.arcs[other.arcs[i]] for i in range(len(self.arcs))),
        )

    def inverse(self) -> "Automorphism":
        sad = [0] * len(self.saddles)
        for j, v in enumerate(self.saddles):
            sad[v - 1] = j + 1
        arc = [0] * len(self.arcs)
        for i, v in enumerate(self.arcs):
            arc[v] = i
        return Automorphism(tuple(sad), tuple(arc))

    def order(self) -> int:
        g, n = self, 1
        while not g.is_identity:
            g, n = self.compose(g), n + 1
        return n


@dataclass(frozen=True)
class AutomorphismGroup:
    class_id: str
    elements: tuple[Automorphism, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def identity(self) -> Automorphism:
        return next(g for g in self.elements if g.is_identity)

    def __contains__(self, g) -> bool:
        return g in self.elements

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


# -- presentations --------------------------------------------------------


@dataclass
class _State:
    order: list[int]  # strand index per circle of the current family
    min_order: list[int]
    saddle_map: dict[int, int]
    next_free: int
    mark_pos: dict[Mark, tuple[int, int, int]]  # mark -> (level, circle, slot)


def _rotations(word, chooser):
    n = len(word)
    return [word[r:] + word[:r] for r in chooser(n)]


def _advance(tr: Trace, prog: MorseProgram, k: int, st: _State, rotated: dict[int, tuple]):
    """Apply rotation choices at level ``k``; return (level key, next state)."""
    q_hat = prog.labels.labeled_saddles
    smap = dict(st.saddle_map)
    nxt = st.next_free
    mark_pos = dict(st.mark_pos)
    key = []
    pos_in_level = {}
    for c, strand in enumerate(st.order):
        w = rotated.get(strand, ())
        row = []
        for slot, m in enumerate(w):
            j = m[0]
            if j not in smap:
                if j <= q_hat:
                    smap[j] = j
                else:
                    smap[j] = nxt
                    nxt += 1
            row.append(smap[j])
            mark_pos[m] = (k, c, slot)
            pos_in_level[m] = (c, slot)
        key.append(tuple(row))
    # new family order by the indexing rule
    keyed = []
    for c, strand in enumerate(st.order):
        if strand not in rotated:
            keyed.append(((c, 0), strand))
    for nc in tr.levels[k].new_circles:
        if nc.source is None:
            new_strand = tr.arc_strand[nc.arcs[0]]
            keyed.append((min(pos_in_level[m] for m in nc.arcs), new_strand))
    keyed.sort()
    new_state = _State([s for _, s in keyed], st.min_order, smap, nxt, mark_pos)
    return tuple(key), new_state


def _label_key(ids, n_labeled):
    return tuple(i if i <= n_labeled else 0 for i in ids)


def _search(prog: MorseProgram, tr: Trace):
    """Return (best key, surviving states)."""
    lab = prog.labels
    p = len(prog.minima)
    mins = {idx: tr.strands[idx].birth[0] for idx in range(p)}
    labeled = sorted((i for i in range(p) if mins[i] <= lab.labeled_minima), key=lambda i: mins[i])
    unlabeled = [i for i in range(p) if mins[i] > lab.labeled_minima]
    states = []
    for perm in permutations(unlabeled):
        order = list(perm) + labeled  # unlabeled (key 0) sort first
        states.append(_State(order, order, {}, lab.labeled_saddles + 1, {}))
    min_key = _label_key([mins[i] for i in states[0].order], lab.labeled_minima)
    key = [min_key]
    for k in range(prog.partition.s):
        best = None
        survivors = []
        for st in states:
            dying = [s for s in st.order if tr.strands[s].death_level == k]
            choices = [_rotations(tr.strands[s].death, range) for s in dying]
            for combo in product(*choices):
                lk, ns = _advance(tr, prog, k, st, dict(zip(dying, combo)))
                if best is None or lk < best:
                    best, survivors = lk, [ns]
                elif lk == best:
                    survivors.append(ns)
        key.append(best)
        states = survivors
    best = None
    survivors = []
    for st in states:
        ck = _label_key([tr.strands[s].death[0] for s in st.order], lab.labeled_maxima)
        if best is None or ck < best:
            best, survivors = ck, [st]
        elif ck == best:
            survivors.append(st)
    key.append(best)
    return tuple(key), survivors


def _build(prog: MorseProgram, tr: Trace, st: _State, min_ids=None, cap_ids=None, slots=None):
    """Materialize the program seen through presentation ``st``."""
    lab = prog.labels
    sig = prog.signature
    if min_ids is None:
        min_ids = list(range(lab.labeled_minima + 1, sig.p + 1))
    if cap_ids is None:
        cap_ids = list(range(lab.labeled_maxima + 1, sig.r + 1))
    min_iter, cap_iter = iter(min_ids), iter(cap_ids)
    minima = []
    for s in st.min_order:
        m = tr.strands[s].birth[0]
        minima.append(m if m <= lab.labeled_minima else next(min_iter))
    caps = []
    for s in st.order:
        m = tr.strands[s].death[0]
        caps.append(m if m <= lab.labeled_maxima else next(cap_iter))
    positions: dict[int, list] = {}
    mark_map = {}
    for m, (k, c, slot) in st.mark_pos.items():
        j = st.saddle_map[m[0]]
        positions.setdefault(j, []).append(((c, slot), m))
    moves = []
    for j in range(1, sig.q + 1):
        pair = sorted(positions[j])
        if slots is not None and slots.get(j):
            pair.reverse()
        for foot, (_, m) in enumerate(pair):
            mark_map[m] = (j, foot)
        moves.append(tuple(pos for pos, _ in pair))
    blocks = []
    for k in range(prog.partition.s):
        blocks.append(tuple(st.saddle_map[j] for j in prog.partition.blocks[k]))
    out = MorseProgram(sig, lab, OrderedPartition(tuple(blocks)), tuple(minima), tuple(moves), tuple(caps))
    return out, mark_map


def _digest(key) -> str:
    return hashlib.sha256(json.dumps(key, separators=(",", ":")).encode()).hexdigest()[:16]


def _arc_indices(prog: MorseProgram) -> dict[Mark, int]:
    return {m: i for i, m in enumerate(reading_order(execute(prog)))}


def canonical_form_with_map(prog: MorseProgram) -> tuple[CanonicalClass, Relabeling]:
    require_valid(prog)
    tr = execute(prog)
    key, states = _search(prog, tr)
    canon, mark_map = _build(prog, tr, states[0])
    cls = CanonicalClass(canon, _digest(key), canon.partition.s, canon.partition)
    in_idx = _arc_indices(prog)
    out_idx = _arc_indices(canon)
    arcs = [0] * len(in_idx)
    for m, i in in_idx.items():
        arcs[i] = out_idx[mark_map[m]]
    return cls, Relabeling(dict(states[0].saddle_map), mark_map, tuple(arcs))


def canonical_form(prog: MorseProgram) -> CanonicalClass:
    return canonical_form_with_map(prog)[0]


def automorphism_group(cls: CanonicalClass) -> AutomorphismGroup:
    prog = cls.canonical_program
    tr = execute(prog)
    _, states = _search(prog, tr)
    idx = _arc_indices(prog)
    elements = set()
    for st in states:
        image, mark_map = _build(prog, tr, st)
        if image != prog:
            continue  # cannot happen for a canonical program; guards against misuse
        sad = tuple(st.saddle_map[j] for j in range(1, prog.q + 1))
        arcs = [0] * len(idx)
        for m, i in idx.items():
            arcs[i] = idx[mark_map[m]]
        elements.add(Automorphism(sad, tuple(arcs)))
    ident = Automorphism(tuple(range(1, prog.q + 1)), tuple(range(len(idx))))
    ordered = [ident] + sorted(elements - {ident}, key=lambda g: (g.saddles, g.arcs))
    return AutomorphismGroup(cls.class_id, tuple(ordered))


def random_representative(prog: MorseProgram, rng: random.Random) -> tuple[MorseProgram, dict[int, int]]:
    """A random program equivalent to ``prog`` and the saddle renaming used."""
    require_valid(prog)
    tr = execute(prog)
    lab = prog.labels
    order = list(range(len(prog.minima)))
    rng.shuffle(order)
    q_unl = list(range(lab.labeled_saddles + 1, prog.q + 1))
    st = _State(order, order, {}, lab.labeled_saddles + 1, {})
    for k in range(prog.partition.s):
        dying = [s for s in st.order if tr.strands[s].death_level == k]
        rot = {}
        for s in dying:
            w = tr.strands[s].death
            r = rng.randrange(len(w))
            rot[s] = w[r:] + w[:r]
        _, st = _advance(tr, prog, k, st, rot)
    # scramble names of unlabeled points and the order of feet
    perm = q_unl[:]
    rng.shuffle(perm)
    rename = dict(zip(q_unl, perm))
    st.saddle_map = {j: rename.get(v, v) for j, v in st.saddle_map.items()}
    mins = list(range(lab.labeled_minima + 1, prog.signature.p + 1))
    caps = list(range(lab.labeled_maxima + 1, prog.signature.r + 1))
    rng.shuffle(mins)
    rng.shuffle(caps)
    flips = {j: rng.random() < 0.5 for j in range(1, prog.q + 1)}
    out, _ = _build(prog, tr, st, mins, caps, flips)
    # spread the slot numbers; only their cyclic order matters
    spread = []
    for mv in out.moves:
        spread.append(tuple((c, 3 * slot + 1) for c, slot in mv))
    out = MorseProgram(out.signature, out.labels, out.partition, out.minima, tuple(spread), out.caps)
    return out, dict(st.saddle_map)
