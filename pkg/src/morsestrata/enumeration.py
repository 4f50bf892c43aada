"""Exhaustive generation of classes, level refinement and the adjacency map delta."""
from __future__ import annotations

import hashlib
import json
import logging
import os
import threading
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations, permutations
from pathlib import Path

from .canonical import CanonicalClass, canonical_form, canonical_form_with_map
from .errors import BudgetExceeded, CacheCorrupted, NotARefinement
from .partitions import OrderedPartition, all_ordered_partitions
from .program import (
    LabelSpec,
    Mark,
    MorseProgram,
    SurfaceSignature,
    execute,
    partner,
    require_valid,
    surgery,
    validate_program,
)

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 5_000_000


@dataclass(frozen=True)
class EnumerationQuery:
    signature: SurfaceSignature
    labels: LabelSpec
    s: int | None = None  # keep classes with exactly this many saddle levels
    shape: tuple[int, ...] | None = None  # keep classes with these block sizes
    genus: int | None = None

    def __post_init__(self):
        q = self.signature.q
        if self.s is not None and not 1 <= self.s <= q:
            raise ValueError(f"s filter {self.s} outside 1..{q}")
        if self.shape is not None and (sum(self.shape) != q or min(self.shape) < 1):
            raise ValueError(f"shape {self.shape} is not a composition of {q}")
        bad = self.labels.violations(self.signature)
        if bad:
            raise ValueError("; ".join(bad))

    def digest(self) -> str:
        doc = {
            "signature": [self.signature.p, self.signature.q, self.signature.r],
            "labels": self.labels.to_dict(),
            "s": self.s,
            "shape": list(self.shape) if self.shape else None,
            "genus": self.genus,
        }
        return hashlib.sha256(json.dumps(doc, sort_keys=True).encode()).hexdigest()[:16]

    def admits(self, part: OrderedPartition) -> bool:
        if self.s is not None and part.s != self.s:
            return False
        if self.shape is not None and part.shape() != tuple(self.shape):
            return False
        return True


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0
        self._lock = threading.Lock()

    def spend(self, n=1):
        with self._lock:
            self.used += n
            if self.limit is not None and self.used > self.limit:
                raise BudgetExceeded(self.limit)


def _search_partitions(query: EnumerationQuery) -> list[OrderedPartition]:
    """Level structures to try; unlabeled saddles are read in increasing order."""
    q = query.signature.q
    q_hat = query.labels.labeled_saddles
    out = []
    for part in all_ordered_partitions(q):
        if not query.admits(part):
            continue
        unl = [x for b in part.blocks for x in b if x > q_hat]
        if unl == sorted(unl):
            out.append(part)
    return out


def _insertions(words, marks):
    """All ways to insert ``marks`` one by one into the cyclic words."""
    if not marks:
        yield words
        return
    m, rest = marks[0], marks[1:]
    for c, w in enumerate(words):
        for g in range(max(len(w), 1)):
            nw = list(words)
            nw[c] = w[: g + 1] + (m,) + w[g + 1 :] if w else (m,)
            yield from _insertions(nw, rest)


def _cap_assignments(r, r_hat):
    for pos in permutations(range(r), r_hat):
        caps = [0] * r
        for lab, i in enumerate(pos, start=1):
            caps[i] = lab
        nxt = r_hat + 1
        for i in range(r):
            if not caps[i]:
                caps[i] = nxt
                nxt += 1
        yield tuple(caps)


def _classes_for_partition(query, part, budget) -> dict[str, CanonicalClass]:
    sig, labels = query.signature, query.labels
    found: dict[str, CanonicalClass] = {}
    blocks = part.blocks

    def rec(k, n, moves):
        if k == len(blocks):
            if n != sig.r:
                return
            for caps in _cap_assignments(sig.r, labels.labeled_maxima):
                budget.spend()
                prog = MorseProgram(
                    sig, labels, part, tuple(range(1, sig.p + 1)),
                    tuple(moves[j] for j in range(1, sig.q + 1)), caps,
                )
                if not validate_program(prog).ok:
                    continue
                cls = canonical_form(prog)
                if query.genus is not None and sig.genus != query.genus:
                    continue
                found.setdefault(cls.class_id, cls)
            return
        marks = [(j, f) for j in blocks[k] for f in (0, 1)]
        remaining = sum(len(b) for b in blocks[k + 1 :])
        for words in _insertions([()] * n, marks):
            budget.spend()
            n_new = len(surgery(words, lambda x: True))
            if abs(n_new - sig.r) > remaining or (n_new + remaining - sig.r) % 2:
                continue
            mv = dict(moves)
            pos = {m: (c, i) for c, w in enumerate(words) for i, m in enumerate(w)}
            for j in blocks[k]:
                mv[j] = (pos[(j, 0)], pos[(j, 1)])
            rec(k + 1, n_new, mv)

    rec(0, sig.p, {})
    return found


def enumerate_classes(
    query: EnumerationQuery, budget: int | None = DEFAULT_BUDGET, workers: int = 1
) -> list[CanonicalClass]:
    """All classes for the query, sorted by class id.

    Raises BudgetExceeded instead of returning a truncated list.
    """
    sig = query.signature
    if not sig.is_closed_orientable:
        log.warning("odd Euler characteristic or chi > 2 for %s: no closed oriented surface", sig)
        return []
    if query.genus is not None and sig.genus != query.genus:
        return []
    parts = _search_partitions(query)
    b = _Budget(budget)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(lambda pt: _classes_for_partition(query, pt, b), parts))
    else:
        results = [_classes_for_partition(query, pt, b) for pt in parts]
    merged: dict[str, CanonicalClass] = {}
    for res in results:
        for cid, cls in res.items():
            merged.setdefault(cid, cls)
    return [merged[cid] for cid in sorted(merged)]


def count_by_saddle_levels(
    query: EnumerationQuery, budget: int | None = DEFAULT_BUDGET, workers: int = 1
) -> dict[int, int]:
    hist = Counter(cls.s_value for cls in enumerate_classes(query, budget, workers))
    return dict(sorted(hist.items()))


# -- refinement -----------------------------------------------------------


def _refine(prog: MorseProgram, finer: OrderedPartition):
    """Re-level ``prog`` under ``finer``.

    Returns the refined program and, for every mark, the coarse arcs (as a
    Counter of coarse starting marks) traversed by the fine arc leaving it.
    """
    runs = finer.split_map(prog.partition)
    tr = execute(prog)
    family = list(range(len(prog.minima)))  # coarse circle index of each fine circle
    fine_pos: dict[Mark, tuple[int, int]] = {}
    walks: dict[Mark, Counter] = {}
    tagged_partner = lambda x: ("m", partner(x[1]))
    for k, run in enumerate(runs):
        coarse_words = tr.levels[k].words
        words = []
        for c in family:
            w = coarse_words[c]
            words.append(tuple(x for m in w for x in (("m", m), ("t", m))) if w else (("p", c),))
        for sub in run:
            sub_set = set(sub)
            active = lambda x, ss=sub_set: x[0] == "m" and x[1][0] in ss
            for f, w in enumerate(words):
                idx = [i for i, x in enumerate(w) if active(x)]
                for slot, i in enumerate(idx):
                    m = w[i][1]
                    fine_pos[m] = (f, slot)
                    nxt = idx[(slot + 1) % len(idx)]
                    stop = nxt if nxt > i else nxt + len(w)
                    walks[m] = Counter(
                        w[t % len(w)][1] for t in range(i + 1, stop) if w[t % len(w)][0] == "t"
                    )
            words = [nc.content for nc in surgery(words, active, tagged_partner)]
        # match fine circles with the coarse family above level k
        by_tokens = {}
        for i, nc in enumerate(tr.levels[k].new_circles):
            toks = frozenset([("p", nc.source)]) if nc.source is not None else frozenset(("t", m) for m in nc.arcs)
            by_tokens[toks] = i
        family = [by_tokens[frozenset(w)] for w in words]
    moves = tuple((fine_pos[(j, 0)], fine_pos[(j, 1)]) for j in range(1, prog.q + 1))
    caps = tuple(prog.caps[c] for c in family)
    fine = MorseProgram(prog.signature, prog.labels, finer, prog.minima, moves, caps)
    return fine, walks


def refine_order(prog: MorseProgram, finer: OrderedPartition) -> MorseProgram:
    require_valid(prog)
    if not finer.is_refinement_of(prog.partition):
        raise NotARefinement(f"{finer} is not a refinement of {prog.partition}")
    return _refine(prog, finer)[0]


def delta(cls: CanonicalClass, finer: OrderedPartition) -> CanonicalClass:
    if not finer.is_refinement_of(cls.partition):
        raise NotARefinement(f"{finer} is not a refinement of {cls.partition}")
    return canonical_form(refine_order(cls.canonical_program, finer))


def delta_with_map(cls: CanonicalClass, finer: OrderedPartition):
    """``delta`` plus the relabeling of the refined program and its arc walks."""
    if not finer.is_refinement_of(cls.partition):
        raise NotARefinement(f"{finer} is not a refinement of {cls.partition}")
    fine, walks = _refine(cls.canonical_program, finer)
    target, relabel = canonical_form_with_map(fine)
    return target, relabel, walks


# -- cache ----------------------------------------------------------------

CACHE_FORMAT = "morsestrata.classes"


def _class_record(cls: CanonicalClass) -> dict:
    return {"class_id": cls.class_id, "program": cls.canonical_program.to_dict()}


def save_classes(path: os.PathLike, query: EnumerationQuery, classes) -> None:
    doc = {
        "format": CACHE_FORMAT,
        "version": 1,
        "query": query.digest(),
        "classes": [_class_record(c) for c in classes],
    }
    body = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    Path(path).write_text(body)


def load_classes(path: os.PathLike, query: EnumerationQuery) -> list[CanonicalClass]:
    """Read a cache file, re-deriving every class id to validate the content."""
    doc = json.loads(Path(path).read_text())
    if doc.get("format") != CACHE_FORMAT or doc.get("query") != query.digest():
        raise CacheCorrupted(f"{path}: not a cache file for query {query.digest()}")
    out = []
    for rec in doc["classes"]:
        prog = MorseProgram.from_dict(rec["program"])
        cls = canonical_form(prog)
        if cls.class_id != rec["class_id"] or cls.canonical_program != prog:
            raise CacheCorrupted(f"{path}: digest mismatch for class {rec['class_id']}")
        out.append(cls)
    return out


def cached_enumeration(
    query: EnumerationQuery,
    cache_dir: os.PathLike | None,
    budget: int | None = DEFAULT_BUDGET,
    workers: int = 1,
    use_cache: bool = True,
) -> list[CanonicalClass]:
    if cache_dir is None or not use_cache:
        return enumerate_classes(query, budget, workers)
    path = Path(cache_dir) / f"classes-{query.digest()}.json"
    if path.exists():
        return load_classes(path, query)
    classes = enumerate_classes(query, budget, workers)
    Path(cache_dir).mkdir(parents=True, exist_ok=True)
    save_classes(path, query, classes)
    return classes
