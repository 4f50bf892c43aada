# A walk through surgery programs and their level graphs.
from morsestrata import *

# Two minima (circles 0 and 1) merged by a single saddle, then capped.
# Each level lists, per circle, the saddles met going around it.
merge = program_from_words(LabelSpec.none(), OrderedPartition.single(1), [1, 2], [[[1], [1]]], [1])
validate_program(merge)        # empty report
surface_signature(merge)       # (2, 1, 1): a sphere, chi = 2

# A figure-eight: one circle split by one saddle. Giving one cap is wrong,
# the validator says so.
bad = program_from_words(LabelSpec.none(), OrderedPartition.single(1), [1], [[[1, 1]]], [1])
print(validate_program(bad).violations)

split = program_from_words(LabelSpec.none(), OrderedPartition.single(1), [1], [[[1, 1]]], [1, 2])
g = extract_level_graph(split)
print(g.vertices, [(e.source, e.target) for e in g.edges])   # one vertex, two loops

# A torus: split, then merge the two halves back at a higher level.
torus = program_from_words(
    LabelSpec.none(), OrderedPartition.of([1], [2]), [1], [[[1, 1]], [[2], [2]]], [1]
)
print(surface_signature(torus), surface_signature(torus).genus)
g = extract_level_graph(torus)
print(g.degree_histogram())   # every saddle has degree 4
for k in range(torus.partition.s):
    print("level", k, [(e.source, e.target) for e in g.edges_at_level(k)])

# Programs serialize to versioned JSON; loading re-checks the circle words.
text = torus.to_json()
MorseProgram.from_json(text) == torus
