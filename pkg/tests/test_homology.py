import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from helpers import random_program
from morsestrata.canonical import automorphism_group
from morsestrata.enumeration import EnumerationQuery, enumerate_classes
from morsestrata.homology import build_cell_complex, class_certificate, incidence_matrix, relative_h1
from morsestrata.linalg import determinant, matmul, nullspace, rank, smith_normal_form
from morsestrata.program import LabelSpec, SurfaceSignature


def classes(p, q, r, labeled=True):
    sig = SurfaceSignature(p, q, r)
    return enumerate_classes(EnumerationQuery(sig, LabelSpec.all(sig) if labeled else LabelSpec.none()))


matrices = st.integers(1, 5).flatmap(
    lambda n: st.integers(1, 5).flatmap(
        lambda m: st.lists(st.lists(st.integers(-6, 6), min_size=m, max_size=m), min_size=n, max_size=n)
    )
)


@given(matrices)
def test_smith_normal_form_against_sympy(a):
    d, p, q = smith_normal_form(a)
    assert matmul(matmul(p, a), q) == d
    assert abs(determinant(p)) == 1 and abs(determinant(q)) == 1
    ours = [abs(d[i][i]) for i in range(min(len(a), len(a[0]))) if d[i][i]]
    for i in range(len(ours) - 1):
        assert ours[i + 1] % ours[i] == 0
    ref = sympy_snf(sympy.Matrix(a), domain=sympy.ZZ)
    theirs = [abs(int(ref[i, i])) for i in range(min(ref.shape)) if ref[i, i]]
    assert ours == theirs
    assert rank(a) == sympy.Matrix(a).rank()


@given(matrices)
def test_nullspace(a):
    for v in nullspace(a):
        assert all(sum(x * y for x, y in zip(row, v)) == 0 for row in a)
    assert len(nullspace(a)) == len(a[0]) - rank(a)


@given(st.integers(1, 6).flatmap(lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant(a):
    assert determinant(a) == sympy.Matrix(a).det()


def test_complexes_of_random_programs():
    rng = random.Random(9)
    for _ in range(150):
        prog = random_program(rng)
        cx = build_cell_complex(prog)
        sig = prog.signature
        assert cx.boundary_squared_zero()
        assert cx.euler_char == sig.p - sig.q + sig.r
        assert len(cx.deleted) == sig.p + sig.r and cx.n_vertices == sig.q
        assert cx.euler_char - len(cx.deleted) == -sig.q
        rk, cert = relative_h1(cx)
        assert rk == 2 * sig.q and cert.torsion == ()
        # independent rank over the rationals
        kept = [c for c in range(len(cx.two_cells)) if c not in cx.deleted]
        sub = sympy.Matrix([[cx.d2[i][c] for c in kept] for i in range(len(cx.one_cells))]) if kept else None
        assert len(cx.one_cells) - (sub.rank() if sub is not None else 0) == 2 * sig.q


def test_certificate_kills_boundaries():
    rng = random.Random(4)
    for _ in range(60):
        cx = build_cell_complex(random_program(rng))
        _, cert = relative_h1(cx)
        for c in range(len(cx.two_cells)):
            if c in cx.deleted:
                continue
            col = [cx.d2[i][c] for i in range(len(cx.one_cells))]
            assert all(sum(r[i] * col[i] for i in range(len(col))) == 0 for r in cert.projection)


def test_sphere_q1():
    for sig in [(2, 1, 1), (1, 1, 2)]:
        for c in classes(*sig):
            assert build_cell_complex(c.canonical_program).euler_char == 2
            cert = class_certificate(c)
            assert len(cert.matrix) == 2 and cert.is_basis


def test_torus_rank():
    for c in classes(1, 2, 1):
        rk, _ = relative_h1(build_cell_complex(c.canonical_program))
        assert rk == 4


@pytest.mark.parametrize("sig", [(1, 2, 3), (2, 2, 2), (3, 2, 1), (1, 2, 1), (2, 3, 1)])
def test_arc_basis_iff_one_level(sig):
    # the arcs span relative H_1 only when no regular circle runs between
    # two saddle levels; otherwise each such circle adds a relation
    for c in classes(*sig):
        cert = class_certificate(c)
        assert cert.is_basis == (c.s_value == 1)
        n_rel = len(cert.arc_relations())
        assert (n_rel == 0) == (c.s_value == 1)


# -- incidence -------------------------------------------------------------


def test_identity_incidence():
    for c in classes(2, 2, 2):
        inc = incidence_matrix(c, c.partition)
        n = 2 * c.q
        assert inc.matrix == tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        assert inc.saddles == tuple(range(1, c.q + 1)) and inc.is_unimodular


@pytest.mark.parametrize("sig", [(1, 2, 3), (2, 2, 2), (1, 2, 1), (2, 3, 1)])
def test_incidence_cone_positive_and_saddle_bijection(sig):
    rng = random.Random(1)
    for c in classes(*sig):
        for j in c.partition.proper_refinements():
            inc = incidence_matrix(c, j)
            assert all(x >= 0 for row in inc.matrix for x in row)
            assert all(any(row) for row in inc.matrix)
            assert sorted(inc.saddles) == list(range(1, c.q + 1))
            renamed = j.rename({a: inc.saddles[a - 1] for a in range(1, c.q + 1)})
            assert renamed == inc.target.partition
            for _ in range(100):
                u = [Fraction(rng.randint(1, 100), rng.randint(1, 9)) for _ in range(2 * c.q)]
                assert all(sum(m * x for m, x in zip(row, u)) > 0 for row in inc.matrix)


def test_incidence_exports():
    c = next(c for c in classes(1, 2, 3) if c.s_value == 1)
    j = next(iter(c.partition.proper_refinements()))
    inc = incidence_matrix(c, j)
    assert inc.to_csv().count("\n") == 5
    assert '"matrix"' in inc.to_json()


def _compose(a, b):
    """Incidence a then b as (matrix, saddles)."""
    mat = matmul([list(r) for r in b.matrix], [list(r) for r in a.matrix])
    sad = tuple(b.saddles[a.saddles[j] - 1] for j in range(len(a.saddles)))
    return mat, sad


def test_triple_refinement_consistency():
    from morsestrata.partitions import OrderedPartition

    for c in classes(2, 3, 1, labeled=False):
        if c.s_value != 1:
            continue
        mid = OrderedPartition.of([1], [2, 3])
        fine = OrderedPartition.of([1], [2], [3])
        a = incidence_matrix(c, mid)
        b = incidence_matrix(a.target, fine.rename({x: a.saddles[x - 1] for x in range(1, 4)}))
        direct = incidence_matrix(c, fine)
        assert b.target == direct.target
        mat, sad = _compose(a, b)
        grp = automorphism_group(direct.target)
        ok = any(
            all(list(direct.matrix[g.arcs[i]]) == mat[i] for i in range(len(mat)))
            and all(g.saddles[sad[j] - 1] == direct.saddles[j] for j in range(3))
            for g in grp
        )
        assert ok
