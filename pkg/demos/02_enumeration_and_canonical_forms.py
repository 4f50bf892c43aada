# Enumerating equivalence classes and their symmetries.
import random

from morsestrata import *

sig = SurfaceSignature(2, 2, 2)
labeled = EnumerationQuery(sig, LabelSpec.all(sig))
unlabeled = EnumerationQuery(sig, LabelSpec.none())

count_by_saddle_levels(labeled)     # {1: 10, 2: 10}
count_by_saddle_levels(unlabeled)   # {1: 2, 2: 2}

classes = enumerate_classes(unlabeled)
for c in classes:
    print(c.class_id, c.partition, "dim", c.dim, "|Aut| =", automorphism_group(c).order)

# Scrambling a presentation (circle order, rotations, names) keeps the class.
rng = random.Random(0)
c = classes[0]
rep, renaming = random_representative(c.canonical_program, rng)
canonical_form(rep).class_id == c.class_id

# The symmetric merge of two unlabeled minima: the group swaps the two loops
# while fixing the only saddle.
(merge,) = enumerate_classes(EnumerationQuery(SurfaceSignature(2, 1, 1), LabelSpec.none()))
for g in automorphism_group(merge):
    print(g.saddles, g.arcs)

# Pulling two same-level saddles apart: delta sends a class to the class of
# the perturbed function.
one_level = [c for c in classes if c.s_value == 1]
for c in one_level:
    for j in c.partition.proper_refinements():
        print(c.class_id, j, "->", delta(c, j).class_id)

# Results can be cached on disk; cached files are re-verified on load.
import tempfile

with tempfile.TemporaryDirectory() as d:
    cached_enumeration(labeled, d)
    cached_enumeration(labeled, d) == enumerate_classes(labeled)
