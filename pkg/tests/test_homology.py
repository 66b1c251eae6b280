"""Smith normal form, GF(2) kernels and first homology."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from trinorm.homology import (smith_normal_form, gf2_rank, gf2_kernel_basis,
                              first_homology, seifert_homology)
from trinorm.triangulation import TriangulationError
from trinorm import build


def test_smith_normal_form_small():
    diag, rank = smith_normal_form([[2, 4], [6, 8]], 2, 2)
    assert rank == 2
    assert diag[0] == 2 and diag[1] == 4 and diag[1] % diag[0] == 0

    diag, rank = smith_normal_form([[1, 0], [0, 0]], 2, 2)
    assert (diag[0], rank) == (1, 1)


def test_smith_transform_consistency():
    mat = [[6, 4, 2], [4, 4, 4], [2, 4, 6]]
    diag, rank, u = smith_normal_form(mat, 3, 3, want_row_transform=True)
    # U must be unimodular
    det = (u[0][0] * (u[1][1] * u[2][2] - u[1][2] * u[2][1])
           - u[0][1] * (u[1][0] * u[2][2] - u[1][2] * u[2][0])
           + u[0][2] * (u[1][0] * u[2][1] - u[1][1] * u[2][0]))
    assert det in (1, -1)


def test_gf2_kernel():
    rows = [0b011, 0b110]
    basis = gf2_kernel_basis(rows, 3)
    assert len(basis) == 1
    vec = basis[0]
    for row in rows:
        assert bin(row & vec).count("1") % 2 == 0
    assert gf2_rank(rows) == 2


def test_lens_homology():
    for (p, q, w, order) in ((1, 2, 2, 4), (1, 2, 1, 5), (1, 2, 3, 1),
                             (1, 3, 3, 5), (1, 3, 1, 7)):
        tri, _, _ = build.lens_space(p, q, fold_weight=w)
        h = first_homology(tri)
        assert h.betti == 0 and h.order == order


def test_twisted_loop_homology():
    h = first_homology(build.layered_loop(4, twisted=True))
    assert h.invariant_factors == (2, 2) and h.z2_rank == 2
    h = first_homology(build.layered_loop(5, twisted=True))
    assert h.invariant_factors == (4,) and h.z2_rank == 1


def test_homology_requires_closed():
    tri, _ = build.lst(1, 2)
    with pytest.raises(TriangulationError):
        first_homology(tri)


def test_seifert_presentation_oracle():
    # quaternionic: |H1| = 4 regardless of k
    for k in (4, 6, 8):
        h = seifert_homology(((1, -1), (2, 1), (2, 1), (k, 1)))
        assert h.order == 4 and h.betti == 0
    h = seifert_homology(((1, 1), (3, 1), (3, 1), (3, 1)))
    assert h.order == 54 and h.z2_rank == 1


def test_meridian_oracle_matches_replay():
    for (p, q) in ((1, 2), (1, 5), (3, 4), (4, 7), (5, 8)):
        tri, meta = build.lst(p, q)
        assert build.meridian_weight_oracle(tri) == meta.edge_weights


def test_homology_invariant_under_relabelling():
    from trinorm.perm import ALL_PERMS
    from trinorm.triangulation import Triangulation
    import random
    rng = random.Random(3)
    tri, _, _ = build.lens_space(2, 5)
    h0 = first_homology(tri)
    n = tri.tet_count
    order = list(range(n))
    rng.shuffle(order)
    perms = [rng.choice(ALL_PERMS) for _ in range(n)]
    rows = [[None] * 4 for _ in range(n)]
    for t in range(n):
        for f in range(4):
            g = tri.gluing(t, f)
            if g is None:
                rows[order[t]][perms[t][f]] = None
            else:
                u, pi = g
                rows[order[t]][perms[t][f]] = (
                    order[u], perms[u] * pi * perms[t].inverse())
    h1 = first_homology(Triangulation(rows))
    assert (h0.invariant_factors, h0.betti, h0.z2_rank) == \
        (h1.invariant_factors, h1.betti, h1.z2_rank)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_smith_normal_form_properties(m, n, data):
    mat = [[data.draw(st.integers(-9, 9)) for _ in range(n)] for _ in range(m)]
    diag, rank = smith_normal_form([row[:] for row in mat], m, n)
    # divisibility chain over the nonzero entries
    nonzero = [d for d in diag if d]
    assert len(nonzero) == rank
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0
    # rank agrees with exact rational elimination
    work = [[Fraction(x) for x in row] for row in mat]
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if work[i][col]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        for i in range(m):
            if i != r and work[i][col]:
                f = work[i][col] / work[r][col]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        r += 1
    assert rank == r
    # unimodular transforms preserve |det| for square matrices
    if m == n:
        det = _det(mat)
        prod = 1
        for d in diag:
            prod *= d
        assert abs(det) == prod


def _det(mat):
    n = len(mat)
    work = [[Fraction(x) for x in row] for row in mat]
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if work[i][col]), None)
        if piv is None:
            return 0
        if piv != col:
            work[col], work[piv] = work[piv], work[col]
            det = -det
        det *= work[col][col]
        for i in range(col + 1, n):
            f = work[i][col] / work[col][col]
            work[i] = [a - f * b for a, b in zip(work[i], work[col])]
    return int(det)
