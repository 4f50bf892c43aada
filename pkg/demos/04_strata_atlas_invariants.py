# The stratification poset, chart coordinates and the Euler characteristic.
import random
from fractions import Fraction

from morsestrata import *

sig = SurfaceSignature(2, 2, 2)
classes = enumerate_classes(EnumerationQuery(sig, LabelSpec.all(sig)))
poset = build_poset(classes)
print(poset.kind, len(poset.nodes), "strata", len(poset.edges), "edges")
print(poset.dimension_csv())
filtration(poset, 3)      # empty
filtration(poset, 2)      # the 6-dimensional strata

# A point of a one-level chart, pushed into a neighbouring two-level chart.
c = next(c for c in classes if c.s_value == 1)
pt = make_point(c, [Fraction(-1, 3), Fraction(1, 4)], [1, 1, 1, 1])
for target_id in poset.successors(c.class_id):
    try:
        print(transition(pt, poset.nodes[target_id]).to_json())
    except NotAdjacent:
        pass      # the point sits over a different refinement

# Consistency run over all charts.
print(atlas_check(classes, samples=20, seed=7))

# Invariants
euler_characteristic(classes, q=2)          # -10
qp = q_polynomial(poset, StratumHomotopyPlugin.contractible())
print(qp, dimension_vanishing_check(qp, 2))
print(morse_smale_check([1, 0, 1], qp).to_dict()["passed"])
diffeomorphism_homotopy_type(sig, LabelSpec.all(sig, fixed=True))
