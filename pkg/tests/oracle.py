"""Independent brute-force oracle for class enumeration.

Nothing here uses the package's canonical forms or surgery code.  Programs are
generated by assigning every mark to a circle and ordering each circle in all
ways; classes are found by pairwise isomorphism of an intrinsic coloured graph
(no presentation choices in it), tested with networkx's VF2 matcher.
"""
from collections import Counter
from itertools import permutations, product

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher


def ordered_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    n = len(items)
    for mask in range(1, 1 << n):
        first = [items[i] for i in range(n) if mask >> i & 1]
        rest = [items[i] for i in range(n) if not mask >> i & 1]
        for tail in ordered_partitions(rest):
            yield [first] + tail


def simulate(p, blocks, words_per_level):
    """Run a program given as per-level lists of circle words of marks (j, foot).

    Returns (strands, final family) where a strand is a dict with its birth and
    death data; None if a level does not fit the family.
    """
    strands = [{"birth": ("min", i + 1), "death": None} for i in range(p)]
    family = list(range(p))
    for k, words in enumerate(words_per_level):
        if len(words) != len(family):
            return None
        nxt, where = {}, {}
        for c, w in enumerate(words):
            for i, m in enumerate(w):
                nxt[m] = w[(i + 1) % len(w)]
                where[m] = (c, i)
            if w:
                strands[family[c]]["death"] = ("level", k, tuple(w))
        # arc leaving m continues after the partner of the next mark
        succ = {m: (nxt[m][0], 1 - nxt[m][1]) for m in nxt}
        new, seen = [], set()
        for m in sorted(succ, key=lambda x: where[x]):
            if m in seen:
                continue
            cyc, x = [], m
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = succ[x]
            new.append((min(where[a] for a in cyc), ("born", tuple(cyc))))
        for c, w in enumerate(words):
            if not w:
                new.append(((c, 0), ("pass", family[c])))
        new.sort()
        family = []
        for _, item in new:
            if item[0] == "pass":
                family.append(item[1])
            else:
                strands.append({"birth": ("level", k, item[1]), "death": None})
                family.append(len(strands) - 1)
    return strands, family


def intrinsic_graph(p, q, r, labels, blocks, words_per_level, caps):
    """Coloured digraph of the program; labels = (p^, q^, r^)."""
    sim = simulate(p, blocks, words_per_level)
    if sim is None:
        return None
    strands, family = sim
    if len(family) != r:
        return None
    lp, lq, lr = labels
    g = nx.DiGraph()
    level = {j: k for k, b in enumerate(blocks) for j in b}
    for j in range(1, q + 1):
        g.add_node(("s", j), kind="saddle", label=j if j <= lq else 0, level=level[j])
    for i, st in enumerate(strands):
        g.add_node(("c", i), kind="strand", label=0, level=-2)
        if st["birth"][0] == "min":
            mid = st["birth"][1]
            g.add_node(("min", mid), kind="min", label=mid if mid <= lp else 0, level=-1)
            g.add_edge(("min", mid), ("c", i), t="born")
        else:
            for m in st["birth"][2]:
                g.add_edge(("m", m), ("c", i), t="up")
    for c, i in enumerate(family):
        mx = caps[c]
        g.add_node(("max", mx), kind="max", label=mx if mx <= lr else 0, level=-1)
        g.add_edge(("c", i), ("max", mx), t="cap")
    for k, words in enumerate(words_per_level):
        for c, w in enumerate(words):
            for i, m in enumerate(w):
                g.add_node(("m", m), kind="mark", label=0, level=k)
                g.add_edge(("m", m), ("s", m[0]), t="of")
                g.add_edge(("m", m), ("m", w[(i + 1) % len(w)]), t="next")
    # the strand a mark sits on
    for i, st in enumerate(strands):
        if st["death"] and st["death"][0] == "level":
            for m in st["death"][2]:
                g.add_edge(("m", m), ("c", i), t="on")
    if not nx.is_weakly_connected(g):
        return None
    return g


def _level_words(n, marks):
    """Assign marks to circles and order every circle in all ways."""
    for assign in product(range(n), repeat=len(marks)):
        groups = [[m for m, a in zip(marks, assign) if a == c] for c in range(n)]
        for orders in product(*[list(permutations(gr)) for gr in groups]):
            yield [tuple(o) for o in orders]


def raw_programs(p, q, r, labels):
    lq = labels[1]
    for blocks in ordered_partitions(range(1, q + 1)):
        unl = [x for b in blocks for x in b if x > lq]
        if unl != sorted(unl):
            continue  # equivalent by renaming unlabeled saddles

        def rec(k, n, acc):
            if k == len(blocks):
                yield list(acc)
                return
            marks = [(j, f) for j in sorted(blocks[k]) for f in (0, 1)]
            for words in _level_words(n, marks):
                sim = simulate(p, blocks[: k + 1], acc + [words])
                if sim is None:
                    continue
                yield from rec(k + 1, len(sim[1]), acc + [words])

        for wl in rec(0, p, []):
            for caps in permutations(range(1, r + 1)):
                yield blocks, wl, caps


def _match(a, b):
    nm = lambda x, y: x["kind"] == y["kind"] and x["label"] == y["label"] and x["level"] == y["level"]
    em = lambda x, y: x["t"] == y["t"]
    return DiGraphMatcher(a, b, node_match=nm, edge_match=em).is_isomorphic()


def _invariant(g):
    return (
        tuple(sorted(Counter((d["kind"], d["label"], d["level"]) for _, d in g.nodes(data=True)).items())),
        tuple(sorted(Counter(d["t"] for *_, d in g.edges(data=True)).items())),
    )


def oracle_classes(p, q, r, labels):
    """List of (s, representative graph) for all classes, by pairwise isomorphism."""
    reps = {}
    for blocks, wl, caps in raw_programs(p, q, r, labels):
        g = intrinsic_graph(p, q, r, labels, blocks, wl, caps)
        if g is None:
            continue
        bucket = reps.setdefault((len(blocks), _invariant(g)), [])
        if not any(_match(g, h) for h in bucket):
            bucket.append(g)
    return [(key[0], g) for key, gs in reps.items() for g in gs]


def oracle_histogram(p, q, r, labels):
    return dict(sorted(Counter(s for s, _ in oracle_classes(p, q, r, labels)).items()))
