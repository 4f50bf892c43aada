"""Ordered set partitions of the saddle set and their refinement order."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import NotARefinement


@dataclass(frozen=True, order=True)
class OrderedPartition:
    """Ordered partition ``(J_1, ..., J_s)`` of ``{1, ..., q}``.

    Blocks are stored as sorted tuples; the order of the blocks is the level
    order (lowest level first).
    """

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if not blocks:
            raise ValueError("an ordered partition needs at least one block")
        seen = [x for b in blocks for x in b]
        if any(len(b) == 0 for b in blocks):
            raise ValueError("empty block in ordered partition")
        if sorted(seen) != list(range(1, len(seen) + 1)):
            raise ValueError(f"blocks {blocks} do not partition 1..{len(seen)}")

    @classmethod
    def of(cls, *blocks: Iterable[int]) -> "OrderedPartition":
        return cls(tuple(tuple(b) for b in blocks))

    @classmethod
    def single(cls, q: int) -> "OrderedPartition":
        return cls((tuple(range(1, q + 1)),))

    @property
    def s(self) -> int:
        return len(self.blocks)

    @property
    def q(self) -> int:
        return sum(len(b) for b in self.blocks)

    def level_of(self, saddle: int) -> int:
        for k, b in enumerate(self.blocks):
            if saddle in b:
                return k
        raise KeyError(saddle)

    def shape(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def is_refinement_of(self, coarse: "OrderedPartition") -> bool:
        """True iff ``self`` is obtained from ``coarse`` by splitting blocks in place."""
        if self.q != coarse.q:
            return False
        k = 0
        acc: set[int] = set()
        for b in self.blocks:
            if k >= coarse.s or not set(b) <= set(coarse.blocks[k]):
                return False
            acc |= set(b)
            if acc == set(coarse.blocks[k]):
                k += 1
                acc = set()
        return k == coarse.s and not acc

    def split_map(self, coarse: "OrderedPartition") -> list[list[tuple[int, ...]]]:
        """For each block of ``coarse``, the consecutive run of fine blocks splitting it."""
        if not self.is_refinement_of(coarse):
            raise NotARefinement(f"{self} is not a refinement of {coarse}")
        runs: list[list[tuple[int, ...]]] = [[] for _ in coarse.blocks]
        k = 0
        acc: set[int] = set()
        for b in self.blocks:
            runs[k].append(b)
            acc |= set(b)
            if acc == set(coarse.blocks[k]):
                k += 1
                acc = set()
        return runs

    def refinements(self) -> Iterator["OrderedPartition"]:
        """All ``J'`` with ``J' <= self`` (including ``self``), in a fixed order."""
        per_block = [list(ordered_partitions(b)) for b in self.blocks]
        for choice in product(*per_block):
            yield OrderedPartition(tuple(sb for split in choice for sb in split))

    def proper_refinements(self) -> Iterator["OrderedPartition"]:
        for j in self.refinements():
            if j != self:
                yield j

    def rename(self, mapping: Mapping[int, int]) -> "OrderedPartition":
        return OrderedPartition(tuple(tuple(mapping[x] for x in b) for b in self.blocks))

    def to_list(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]

    def __str__(self):
        return "(" + ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + ")"


def ordered_partitions(items: Sequence[int]) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Ordered set partitions of ``items`` as tuples of sorted blocks.

    The count for ``n`` items is the Fubini number (1, 1, 3, 13, 75, ...).
    """
    items = tuple(sorted(items))
    n = len(items)
    if n == 0:
        yield ()
        return
    # choose the first block as a non-empty subset, recurse on the rest
    for mask in range(1, 1 << n):
        first = tuple(items[i] for i in range(n) if mask >> i & 1)
        rest = tuple(items[i] for i in range(n) if not mask >> i & 1)
        for tail in ordered_partitions(rest):
            yield (first,) + tail


def all_ordered_partitions(q: int, s: int | None = None) -> list[OrderedPartition]:
    out = [OrderedPartition(bl) for bl in ordered_partitions(range(1, q + 1))]
    if s is not None:
        out = [j for j in out if j.s == s]
    return sorted(out)
