"""Leveled surgery programs: the combinatorial encoding of a Morse function class.

A program starts with ``p`` oriented circles (one per local minimum), performs
the saddle surgeries level by level, and caps the ``r`` surviving circles with
local maxima.  At each level every saddle puts two *marks* (feet) on the
current circle family; a position is ``(circle index, slot)`` and the cyclic
order of marks on a circle is the order of their slots.

Circle families are indexed by a fixed rule so that positions are meaningful:
after a level, every new circle gets the key ``(c, j)`` minimised over its
arcs, where ``c`` is the old circle and ``j`` the index of the arc's starting
mark in that circle's word; an unmarked circle keeps key ``(c, 0)``.  The new
family is sorted by key.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

from .errors import GenusNegative, InvalidProgram, NonOrientableOrInvalid
from .partitions import OrderedPartition

FORMAT_NAME = "morsestrata.program"
FORMAT_VERSION = 1

Mark = tuple[int, int]  # (saddle, foot)
Position = tuple[int, int]  # (circle, slot)


def partner(mark: Mark) -> Mark:
    return (mark[0], 1 - mark[1])


@dataclass(frozen=True)
class SurfaceSignature:
    p: int
    q: int
    r: int

    @property
    def euler_char(self) -> int:
        return self.p - self.q + self.r

    @property
    def genus(self) -> int:
        chi = self.euler_char
        if chi % 2:
            raise NonOrientableOrInvalid(f"odd Euler characteristic {chi}")
        if chi > 2:
            raise GenusNegative(f"Euler characteristic {chi} > 2")
        return (2 - chi) // 2

    @property
    def is_closed_orientable(self) -> bool:
        chi = self.euler_char
        return min(self.p, self.q, self.r) >= 1 and chi % 2 == 0 and chi <= 2


@dataclass(frozen=True)
class LabelSpec:
    """Counts of labeled and fixed critical points.

    The first ``labeled_minima`` minima (ids ``1..p^``) carry labels, and the
    first ``fixed_minima`` of those are fixed; likewise for saddles and maxima.
    """

    labeled_minima: int = 0
    labeled_saddles: int = 0
    labeled_maxima: int = 0
    fixed_minima: int = 0
    fixed_saddles: int = 0
    fixed_maxima: int = 0

    @classmethod
    def all(cls, sig: SurfaceSignature, fixed: bool = False) -> "LabelSpec":
        f = (sig.p, sig.q, sig.r) if fixed else (0, 0, 0)
        return cls(sig.p, sig.q, sig.r, *f)

    @classmethod
    def none(cls) -> "LabelSpec":
        return cls()

    @property
    def total_labeled(self) -> int:
        return self.labeled_minima + self.labeled_saddles + self.labeled_maxima

    @property
    def total_fixed(self) -> int:
        return self.fixed_minima + self.fixed_saddles + self.fixed_maxima

    def violations(self, sig: SurfaceSignature) -> list[str]:
        out = []
        for name, fixed, labeled, total in (
            ("minima", self.fixed_minima, self.labeled_minima, sig.p),
            ("saddles", self.fixed_saddles, self.labeled_saddles, sig.q),
            ("maxima", self.fixed_maxima, self.labeled_maxima, sig.r),
        ):
            if not 0 <= fixed <= labeled <= total:
                out.append(f"label counts for {name} violate 0 <= fixed <= labeled <= total")
        return out

    def satisfies_main_condition(self, sig: SurfaceSignature) -> bool:
        return self.total_labeled > sig.euler_char

    def sphere_regime(self, sig: SurfaceSignature) -> bool:
        """Hypothesis ``p*+q*+r* <= chi+1 <= p^+q^+r^`` on the sphere."""
        return sig.euler_char == 2 and self.total_fixed <= 3 <= self.total_labeled

    def to_dict(self) -> dict:
        return {
            "labeled": [self.labeled_minima, self.labeled_saddles, self.labeled_maxima],
            "fixed": [self.fixed_minima, self.fixed_saddles, self.fixed_maxima],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "LabelSpec":
        return cls(*d["labeled"], *d["fixed"])


@dataclass(frozen=True)
class MorseProgram:
    signature: SurfaceSignature
    labels: LabelSpec
    partition: OrderedPartition
    minima: tuple[int, ...]
    moves: tuple[tuple[Position, Position], ...]
    caps: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "minima", tuple(self.minima))
        object.__setattr__(self, "caps", tuple(self.caps))
        object.__setattr__(
            self, "moves", tuple(tuple(tuple(pos) for pos in mv) for mv in self.moves)
        )

    @property
    def q(self) -> int:
        return len(self.moves)

    def position(self, mark: Mark) -> Position:
        return self.moves[mark[0] - 1][mark[1]]

    def level_words(self, k: int, family_size: int) -> list[tuple[Mark, ...]]:
        """Cyclic mark words on each circle of the family current at level ``k``."""
        slots: list[list[tuple[int, Mark]]] = [[] for _ in range(family_size)]
        for j in self.partition.blocks[k]:
            for foot in (0, 1):
                c, slot = self.moves[j - 1][foot]
                slots[c].append((slot, (j, foot)))
        return [tuple(m for _, m in sorted(w)) for w in slots]

    # -- serialization -------------------------------------------------
    def to_dict(self) -> dict:
        trace = execute(self)
        return {
            "format": FORMAT_NAME,
            "version": FORMAT_VERSION,
            "signature": {"p": self.signature.p, "q": self.signature.q, "r": self.signature.r},
            "labels": self.labels.to_dict(),
            "partition": self.partition.to_list(),
            "minima": list(self.minima),
            "circles": [[[list(m) for m in w] for w in lv.words] for lv in trace.levels],
            "moves": {str(j + 1): [list(pos) for pos in mv] for j, mv in enumerate(self.moves)},
            "caps": list(self.caps),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> "MorseProgram":
        if d.get("format") != FORMAT_NAME or d.get("version") != FORMAT_VERSION:
            raise ValueError(f"unsupported program document {d.get('format')!r} v{d.get('version')!r}")
        sig = SurfaceSignature(**d["signature"])
        moves = d["moves"]
        prog = cls(
            signature=sig,
            labels=LabelSpec.from_dict(d["labels"]),
            partition=OrderedPartition(tuple(tuple(b) for b in d["partition"])),
            minima=tuple(d["minima"]),
            moves=tuple(tuple(tuple(pos) for pos in moves[str(j)]) for j in range(1, len(moves) + 1)),
            caps=tuple(d["caps"]),
        )
        if "circles" in d:
            got = [[[list(m) for m in w] for w in lv.words] for lv in execute(prog).levels]
            if got != d["circles"]:
                raise ValueError("circles field disagrees with moves")
        return prog

    @classmethod
    def from_json(cls, text: str) -> "MorseProgram":
        return cls.from_dict(json.loads(text))


# -- execution -----------------------------------------------------------


@dataclass
class NewCircle:
    """A circle of the family produced by one surgery step."""

    key: tuple[int, int]
    source: int | None  # old index when the circle passed through untouched
    arcs: tuple[Hashable, ...]  # active marks whose arcs make up the circle, in cyclic order
    content: tuple[Hashable, ...]  # rider items carried along, in cyclic order


def surgery(
    words: Sequence[Sequence[Hashable]],
    is_active: Callable[[Hashable], bool],
    partner_of: Callable[[Hashable], Hashable] = partner,
) -> list[NewCircle]:
    """Oriented band surgery at the active marks of ``words``.

    Each active mark starts an arc running to the next active mark of its
    circle; the arc leaving the band at ``m`` continues after the band at
    ``partner(next(m))``.  Non-active items ride along on the arc they sit on.
    Returns the new family sorted by the indexing rule of the module docstring.
    """
    out: list[NewCircle] = []
    succ = {}
    riders = {}
    key_of = {}
    for c, word in enumerate(words):
        act = [i for i, x in enumerate(word) if is_active(x)]
        if not act:
            out.append(NewCircle((c, 0), c, (), tuple(word)))
            continue
        n = len(word)
        for j, i in enumerate(act):
            m = word[i]
            i_next = act[(j + 1) % len(act)]
            stop = i_next if i_next > i else i_next + n
            riders[m] = tuple(word[t % n] for t in range(i + 1, stop))
            succ[m] = partner_of(word[i_next])
            key_of[m] = (c, j)
    seen = set()
    for m in sorted(succ, key=lambda x: key_of[x]):
        if m in seen:
            continue
        cyc = [m]
        seen.add(m)
        x = succ[m]
        while x != m:
            cyc.append(x)
            seen.add(x)
            x = succ[x]
        content = tuple(it for a in cyc for it in riders[a])
        out.append(NewCircle(key_of[m], None, tuple(cyc), content))
    out.sort(key=lambda nc: nc.key)
    return out


@dataclass
class Strand:
    """A regular circle between two critical levels (an edge of the Reeb graph)."""

    birth_level: int  # -1 for a minimum
    birth: tuple  # (min_id,) or cyclic tuple of arcs (marks) of the birth level
    death_level: int = -1  # s for a cap
    death: tuple = ()  # (max_id,) or cyclic word of marks at the death level


@dataclass
class LevelTrace:
    family: list[int]  # strand index per circle
    words: list[tuple[Mark, ...]]
    new_circles: list[NewCircle]


@dataclass
class Trace:
    levels: list[LevelTrace] = field(default_factory=list)
    strands: list[Strand] = field(default_factory=list)
    final_family: list[int] = field(default_factory=list)
    mark_strand: dict = field(default_factory=dict)  # mark -> strand it sits on
    arc_strand: dict = field(default_factory=dict)  # mark -> strand its arc joins above the level


def execute(prog: MorseProgram) -> Trace:
    """Run the program; raises InvalidProgram if positions do not resolve."""
    problems = _structure_violations(prog)
    if problems:
        raise InvalidProgram(problems)
    tr = Trace()
    for m in prog.minima:
        tr.strands.append(Strand(-1, (m,)))
    family = list(range(len(prog.minima)))
    for k in range(prog.partition.s):
        words = prog.level_words(k, len(family))
        new = surgery(words, lambda x: True)
        new_family = []
        for c, w in enumerate(words):
            if w:
                st = tr.strands[family[c]]
                st.death_level, st.death = k, w
                for m in w:
                    tr.mark_strand[m] = family[c]
        for nc in new:
            if nc.source is not None:
                new_family.append(family[nc.source])
            else:
                tr.strands.append(Strand(k, nc.arcs))
                idx = len(tr.strands) - 1
                for m in nc.arcs:
                    tr.arc_strand[m] = idx
                new_family.append(idx)
        tr.levels.append(LevelTrace(list(family), words, new))
        family = new_family
    for c, idx in enumerate(family):
        if c < len(prog.caps):
            st = tr.strands[idx]
            st.death_level, st.death = prog.partition.s, (prog.caps[c],)
    tr.final_family = family
    return tr


def _structure_violations(prog: MorseProgram) -> list[str]:
    """Position-level problems that make execution impossible."""
    out = []
    q = len(prog.moves)
    try:
        if prog.partition.q != q:
            out.append(f"partition covers {prog.partition.q} saddles but {q} moves are given")
            return out
    except AttributeError:
        return ["partition missing"]
    family_size = len(prog.minima)
    if family_size == 0:
        return ["no initial circles"]
    for k, block in enumerate(prog.partition.blocks):
        used = {}
        for j in block:
            mv = prog.moves[j - 1]
            if len(mv) != 2:
                out.append(f"saddle {j}: attachment datum needs exactly two positions")
                continue
            if mv[0] == mv[1]:
                out.append(f"saddle {j}: the two marks coincide")
            for pos in mv:
                c = pos[0]
                if not 0 <= c < family_size:
                    out.append(f"saddle {j}: position {pos} refers to missing circle at level {k + 1}")
                if pos in used and used[pos] != j:
                    out.append(f"level marks not disjoint: saddles {used[pos]} and {j} share position {pos}")
                used.setdefault(pos, j)
        if out:
            return out
        words = prog.level_words(k, family_size)
        family_size = len(surgery(words, lambda x: True))
    return out


# -- validation ----------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def validate_program(prog: MorseProgram) -> ValidationReport:
    out = list(_structure_violations(prog))
    sig = prog.signature
    if len(prog.minima) != sig.p:
        out.append(f"minimum count mismatch: {len(prog.minima)} circles for p={sig.p}")
    if sorted(prog.minima) != list(range(1, len(prog.minima) + 1)):
        out.append("minimum identifiers must be 1..p, each once")
    if len(prog.moves) != sig.q:
        out.append(f"saddle count mismatch: {len(prog.moves)} moves for q={sig.q}")
    out.extend(prog.labels.violations(sig))
    if out:
        return ValidationReport(tuple(out))
    tr = execute(prog)
    if len(tr.final_family) != len(prog.caps):
        out.append(
            f"cap count mismatch: {len(tr.final_family)} circles remain but {len(prog.caps)} caps given"
        )
    if len(prog.caps) != sig.r:
        out.append(f"maximum count mismatch: {len(prog.caps)} caps for r={sig.r}")
    if sorted(prog.caps) != list(range(1, len(prog.caps) + 1)):
        out.append("maximum identifiers must be 1..r, each once")
    if not out and not _connected(prog, tr):
        out.append("disconnected trace")
    if not out and not sig.is_closed_orientable:
        out.append(f"signature {sig} is not that of a closed oriented surface")
    return ValidationReport(tuple(out))


def require_valid(prog: MorseProgram) -> None:
    rep = validate_program(prog)
    if not rep.ok:
        raise InvalidProgram(rep.violations)


def _connected(prog: MorseProgram, tr: Trace) -> bool:
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        parent[find(a)] = find(b)

    for i in range(len(tr.strands)):
        find(("strand", i))
    for m, st in tr.mark_strand.items():
        union(("saddle", m[0]), ("strand", st))
    for m, st in tr.arc_strand.items():
        union(("saddle", m[0]), ("strand", st))
    return len({find(x) for x in list(parent)}) == 1


def surface_signature(prog: MorseProgram) -> SurfaceSignature:
    """Counts ``(p, q, r)`` read off the executed program, with genus checks."""
    tr = execute(prog)
    sig = SurfaceSignature(len(prog.minima), len(prog.moves), len(tr.final_family))
    sig.genus  # raises on odd or too large Euler characteristic
    return sig


def program_from_words(
    labels: LabelSpec,
    partition: OrderedPartition,
    minima: Sequence[int],
    level_words: Iterable[Sequence[Sequence[int]]],
    caps: Sequence[int],
) -> MorseProgram:
    """Build a program from per-level cyclic words of saddle ids.

    ``level_words[k][c]`` lists the saddle ids met going around circle ``c`` of
    the family current at level ``k``; each saddle of the level occurs twice in
    total.  Handy for writing programs by hand.
    """
    moves: dict[int, list[Position]] = {}
    for words in level_words:
        for c, w in enumerate(words):
            for slot, j in enumerate(w):
                moves.setdefault(j, []).append((c, slot))
    q = len(moves)
    mv = tuple(tuple(moves[j]) for j in range(1, q + 1))
    sig = SurfaceSignature(len(minima), q, len(caps))
    return MorseProgram(sig, labels, partition, tuple(minima), mv, tuple(caps))
