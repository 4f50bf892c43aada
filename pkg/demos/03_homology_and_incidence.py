# Relative first homology of a class and the incidence maps between charts.
from morsestrata import *

sig = SurfaceSignature(1, 2, 3)
classes = enumerate_classes(EnumerationQuery(sig, LabelSpec.all(sig)))
c1 = next(c for c in classes if c.s_value == 1)
c2 = next(c for c in classes if c.s_value == 2)

cx = build_cell_complex(c1.canonical_program)
cx.boundary_squared_zero(), cx.euler_char     # (True, 2)

# rank 2q, and for a one-level class the arcs are a basis
rank1, cert1 = relative_h1(cx)
print(rank1, cert1.determinant)

# For two levels the regular circle between them is an annulus. Its two
# boundary walks are homologous, so the arcs satisfy a relation: still rank
# 2q, but determinant 0.
rank2, cert2 = relative_h1(build_cell_complex(c2.canonical_program))
print(rank2, cert2.determinant, cert2.arc_relations())

# Incidence: target arcs as walks in source arcs.  Non-negative entries keep
# positive periods positive.
j = next(iter(c1.partition.proper_refinements()))
inc = incidence_matrix(c1, j)
print(inc.to_csv())
print("saddle map", inc.saddles, "determinant", inc.determinant)

# Smith normal form is available on its own.
d, p, q = smith_normal_form([[2, 4], [6, 8]])
print(d)
