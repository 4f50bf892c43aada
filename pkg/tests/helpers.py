"""Shared fixtures for the test suite: random programs and frozen counts."""
import random

from morsestrata.partitions import OrderedPartition
from morsestrata.program import LabelSpec, MorseProgram, SurfaceSignature, surgery, validate_program

# s-histograms of the all-labeled and unlabeled class counts, produced by the
# brute-force oracle in tests/oracle.py and frozen here as regression fixtures.
FROZEN_LABELED = {
    (2, 1, 1): {1: 1},
    (1, 1, 2): {1: 1},
    (1, 2, 3): {1: 6, 2: 6},
    (2, 2, 2): {1: 10, 2: 10},
    (3, 2, 1): {1: 6, 2: 6},
    (1, 2, 1): {1: 1, 2: 2},
}
FROZEN_UNLABELED = {
    (2, 1, 1): {1: 1},
    (1, 1, 2): {1: 1},
    (1, 2, 3): {1: 1, 2: 1},
    (2, 2, 2): {1: 2, 2: 2},
    (3, 2, 1): {1: 1, 2: 1},
    (1, 2, 1): {1: 1, 2: 1},
}
# q=3 counts from the enumerator alone (too slow for the oracle in the suite)
FROZEN_Q3 = {
    (2, 3, 1): ({1: 20, 2: 42, 3: 30}, {1: 3, 2: 6, 3: 3}),
    (1, 3, 2): ({1: 20, 2: 42, 3: 30}, {1: 3, 2: 6, 3: 3}),
}
SPHERE_CASES = [(2, 1, 1), (1, 1, 2), (1, 2, 3), (2, 2, 2), (3, 2, 1)]


def random_partition(rng, q):
    items = list(range(1, q + 1))
    rng.shuffle(items)
    cuts = sorted(rng.sample(range(1, q), rng.randint(0, q - 1))) if q > 1 else []
    bounds = [0, *cuts, q]
    return OrderedPartition.of(*[items[a:b] for a, b in zip(bounds, bounds[1:])])


def random_program(rng: random.Random, q=None, p=None, labels=None) -> MorseProgram:
    """A uniformly scrambled valid program with q <= 4 saddles (rejection sampling)."""
    while True:
        qq = q or rng.randint(1, 4)
        pp = p or rng.randint(1, 3)
        part = random_partition(rng, qq)
        moves = {}
        family = pp
        for block in part.blocks:
            words = [[] for _ in range(family)]
            for j in block:
                for foot in (0, 1):
                    w = words[rng.randrange(family)]
                    w.insert(rng.randint(0, len(w)), (j, foot))
            for c, w in enumerate(words):
                for slot, m in enumerate(w):
                    moves[m] = (c, slot)
            family = len(surgery([tuple(w) for w in words], lambda x: True))
        mv = tuple((moves[(j, 0)], moves[(j, 1)]) for j in range(1, qq + 1))
        sig = SurfaceSignature(pp, qq, family)
        lab = labels(sig) if labels else LabelSpec.all(sig)
        prog = MorseProgram(sig, lab, part, tuple(range(1, pp + 1)), mv, tuple(range(1, family + 1)))
        if validate_program(prog).ok:
            return prog


def closed_program(partition, minima, level_words, labels=None):
    """Program from hand-written words with as many caps as circles remain."""
    from morsestrata.program import execute, program_from_words

    lab = LabelSpec.none()
    prog = program_from_words(lab, partition, minima, level_words, [1])
    r = len(execute(prog).final_family)
    prog = program_from_words(lab, partition, minima, level_words, list(range(1, r + 1)))
    if labels is not None:
        prog = MorseProgram(prog.signature, labels(prog.signature), prog.partition, prog.minima, prog.moves, prog.caps)
    return prog
