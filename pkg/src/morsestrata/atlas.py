"""Chart coordinates ``(class, saddle values, edge periods)`` and their transitions."""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .canonical import Automorphism, AutomorphismGroup, CanonicalClass, automorphism_group
from .enumeration import delta
from .errors import (
    CocycleError,
    ConeViolation,
    ForeignElement,
    InconsistentPeriods,
    NonPositivePeriod,
    NotAdjacent,
    NotInStar,
    ValueOutOfRange,
)
from .homology import EdgeBasisCertificate, Incidence, class_certificate, incidence_matrix
from .partitions import OrderedPartition


@dataclass(frozen=True)
class AtlasPoint:
    chart: CanonicalClass
    saddle_values: tuple[Fraction, ...]
    edge_periods: tuple[Fraction, ...]

    def coords(self):
        return (self.saddle_values, self.edge_periods)

    def to_dict(self) -> dict:
        enc = lambda x: f"{x.numerator}/{x.denominator}"
        return {
            "chart": self.chart.class_id,
            "saddle_values": [enc(x) for x in self.saddle_values],
            "edge_periods": [enc(x) for x in self.edge_periods],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str, charts: dict[str, CanonicalClass]) -> "AtlasPoint":
        d = json.loads(text)
        return make_point(charts[d["chart"]], d["saddle_values"], d["edge_periods"])


@lru_cache(maxsize=None)
def _group(chart: CanonicalClass) -> AutomorphismGroup:
    return automorphism_group(chart)


@lru_cache(maxsize=None)
def _cert(chart: CanonicalClass) -> EdgeBasisCertificate:
    return class_certificate(chart)


@lru_cache(maxsize=None)
def _relations(chart: CanonicalClass):
    return tuple(tuple(r) for r in _cert(chart).arc_relations())


@lru_cache(maxsize=None)
def _incidence(chart: CanonicalClass, finer: OrderedPartition) -> Incidence:
    return incidence_matrix(chart, finer)


@lru_cache(maxsize=None)
def _delta_id(chart: CanonicalClass, finer: OrderedPartition) -> str:
    return delta(chart, finer).class_id


def induced_partition(values) -> OrderedPartition:
    """Group saddles by equal value, groups ordered by increasing value."""
    groups: dict[Fraction, list[int]] = {}
    for j, v in enumerate(values, start=1):
        groups.setdefault(Fraction(v), []).append(j)
    return OrderedPartition(tuple(tuple(groups[v]) for v in sorted(groups)))


def make_point(chart: CanonicalClass, saddle_values, edge_periods) -> AtlasPoint:
    c = tuple(Fraction(x) for x in saddle_values)
    u = tuple(Fraction(x) for x in edge_periods)
    q = chart.q
    if len(c) != q or len(u) != 2 * q:
        raise ValueError(f"need {q} saddle values and {2 * q} periods, got {len(c)} and {len(u)}")
    bad = [j + 1 for j, x in enumerate(c) if not -1 < x < 1]
    if bad:
        raise ValueOutOfRange(f"saddle values of {bad} outside (-1, 1)")
    if not induced_partition(c).is_refinement_of(chart.partition):
        raise NotInStar(f"{induced_partition(c)} does not refine {chart.partition}")
    if any(x <= 0 for x in u):
        raise NonPositivePeriod(f"periods must be positive, got {[str(x) for x in u]}")
    for rel in _relations(chart):
        if sum(r * x for r, x in zip(rel, u)) != 0:
            raise InconsistentPeriods(f"periods violate arc relation {list(rel)}")
    return AtlasPoint(chart, c, u)


def act(g: Automorphism, point: AtlasPoint) -> AtlasPoint:
    if g not in _group(point.chart):
        raise ForeignElement(f"{g} is not an automorphism of {point.chart.class_id}")
    c = [None] * len(point.saddle_values)
    for j, x in enumerate(point.saddle_values):
        c[g.saddles[j] - 1] = x
    u = [None] * len(point.edge_periods)
    for i, x in enumerate(point.edge_periods):
        u[g.arcs[i]] = x
    return AtlasPoint(point.chart, tuple(c), tuple(u))


def canonicalize_point(point: AtlasPoint) -> AtlasPoint:
    return min((act(g, point) for g in _group(point.chart)), key=AtlasPoint.coords)


def stabilizer(point: AtlasPoint) -> list[Automorphism]:
    """Nontrivial automorphisms fixing the point (freeness counterexamples)."""
    return [g for g in _group(point.chart) if not g.is_identity and act(g, point) == point]


def _push(point: AtlasPoint, inc: Incidence) -> AtlasPoint:
    c = [None] * len(point.saddle_values)
    for j, x in enumerate(point.saddle_values):
        c[inc.saddles[j] - 1] = x
    u = tuple(sum(m * x for m, x in zip(row, point.edge_periods)) for row in inc.matrix)
    if any(x <= 0 for x in u):
        raise ConeViolation(f"transition to {inc.target.class_id} gave periods {u}")
    return AtlasPoint(inc.target, tuple(c), u)


def witnesses(point: AtlasPoint, target: CanonicalClass) -> list[OrderedPartition]:
    jc = induced_partition(point.saddle_values)
    return [
        j
        for j in point.chart.partition.refinements()
        if jc.is_refinement_of(j) and _delta_id(point.chart, j) == target.class_id
    ]


def transition(point: AtlasPoint, target: CanonicalClass) -> AtlasPoint:
    ws = witnesses(point, target)
    if not ws:
        raise NotAdjacent(f"{target.class_id} is not reachable from {point.chart.class_id} at this point")
    ws.sort(key=lambda j: (j.s, j.blocks))
    images = [canonicalize_point(_push(point, _incidence(point.chart, j))) for j in ws]
    if any(im != images[0] for im in images[1:]):
        raise CocycleError(f"witnesses {[str(j) for j in ws]} disagree on the image")
    return images[0]


# -- sampling and consistency runs ------------------------------------------


def random_saddle_values(partition: OrderedPartition, rng: random.Random, den: int = 997):
    """Values in (-1, 1) whose induced partition is exactly ``partition``."""
    cuts = sorted(rng.sample(range(-den + 1, den), partition.s))
    vals = [Fraction(0)] * partition.q
    for k, b in enumerate(partition.blocks):
        for j in b:
            vals[j - 1] = Fraction(cuts[k], den)
    return tuple(vals)


def random_periods(chart: CanonicalClass, rng: random.Random, tries: int = 200_000):
    """Positive arc periods consistent with the arc relations of the chart."""
    cert = _cert(chart)
    if cert.is_basis:
        return tuple(Fraction(rng.randint(1, 1000), rng.randint(1, 50)) for _ in range(2 * chart.q))
    rows = [list(r) for r in cert.matrix]
    for _ in range(tries):
        w = [Fraction(rng.randint(-40, 40), rng.randint(1, 9)) for _ in rows]
        u = tuple(sum(w[b] * rows[b][i] for b in range(len(rows))) for i in range(2 * chart.q))
        if all(x > 0 for x in u):
            return u
    raise RuntimeError(f"no positive period vector found for {chart.class_id}")


def random_point(chart: CanonicalClass, rng: random.Random, level_order: OrderedPartition | None = None):
    if level_order is None:
        refs = list(chart.partition.refinements())
        level_order = refs[rng.randrange(len(refs))]
    return make_point(chart, random_saddle_values(level_order, rng), random_periods(chart, rng))


@dataclass
class AtlasReport:
    points: int = 0
    transitions: int = 0
    cocycle_checks: int = 0
    cocycle_failures: int = 0
    cone_violations: int = 0
    not_adjacent: int = 0
    fixed_points: int = 0  # sampled points with a nontrivial stabilizer
    symmetric_fixed_points: int = 0  # constructed symmetric points with a nontrivial stabilizer

    def to_dict(self):
        return dict(self.__dict__)


def atlas_check(classes, samples: int, seed: int) -> AtlasReport:
    """Cocycle and cone checks on random points of every chart.

    For each point with level order ``J''`` refining the chart's order, the
    direct transition to ``delta(chart, J'')`` is compared with every two-step
    route through an intermediate ``J'``.
    """
    rng = random.Random(seed)
    rep = AtlasReport()
    by_id = {c.class_id: c for c in classes}
    for chart in sorted(classes, key=lambda c: c.class_id):
        refs = list(chart.partition.refinements())
        for _ in range(samples):
            j2 = refs[rng.randrange(len(refs))]
            pt = random_point(chart, rng, j2)
            rep.points += 1
            if stabilizer(pt):
                rep.fixed_points += 1
            try:
                final = by_id[_delta_id(chart, j2)]
                direct = transition(pt, final)
                rep.transitions += 1
                for j1 in refs:
                    if not j2.is_refinement_of(j1):
                        continue
                    mid = by_id[_delta_id(chart, j1)]
                    step = transition(transition(pt, mid), final)
                    rep.transitions += 2
                    rep.cocycle_checks += 1
                    if step != direct:
                        rep.cocycle_failures += 1
            except ConeViolation:
                rep.cone_violations += 1
            except (NotAdjacent, CocycleError):
                rep.cocycle_failures += 1
        # symmetric points: equal periods and equal saddle values where allowed
        if len(_group(chart)) > 1:
            c = tuple(Fraction(0) for _ in range(chart.q)) if chart.s_value == 1 else None
            if c is not None and _cert(chart).is_basis:
                pt = make_point(chart, c, [1] * (2 * chart.q))
                if stabilizer(pt):
                    rep.symmetric_fixed_points += 1
    return rep
