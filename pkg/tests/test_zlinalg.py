import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from gbundles import zlinalg
from gbundles.zlinalg import det, matmul, smith_normal_form


def check_snf(m, rows, cols):
    snf = smith_normal_form(m, cols)
    assert matmul(matmul(snf.U, m, inner=rows, cols=cols), snf.V, inner=cols, cols=cols) == snf.D
    assert abs(det(snf.U)) == 1
    assert abs(det(snf.V)) == 1
    assert matmul(snf.U, snf.U_inv) == zlinalg.identity(rows)
    for i in range(rows):
        for j in range(cols):
            if i != j:
                assert snf.D[i][j] == 0
    diag = snf.diagonal
    assert all(x >= 0 for x in diag)
    nz = [x for x in diag if x]
    assert diag[: len(nz)] == nz, "zeros must trail"
    for a, b in zip(nz, nz[1:]):
        assert b % a == 0
    return snf


def test_snf_identity():
    snf = check_snf([[1, 0], [0, 1]], 2, 2)
    assert snf.D == [[1, 0], [0, 1]]


def test_snf_2x2_against_gcd_and_det():
    m = [[2, 4], [6, 8]]
    d1 = math.gcd(*[x for row in m for x in row])
    d2 = abs(det(m)) // d1
    assert (d1, d2) == (2, 4)
    assert check_snf(m, 2, 2).diagonal == [d1, d2]


def test_snf_zero_and_empty():
    assert check_snf([[0, 0, 0], [0, 0, 0]], 2, 3).D == [[0, 0, 0], [0, 0, 0]]
    snf = smith_normal_form([], 3)
    assert snf.V == zlinalg.identity(3)
    snf = smith_normal_form([[], []])
    assert snf.U == zlinalg.identity(2)


def test_snf_deterministic():
    m = [[3, 5, 7], [2, 4, 6], [9, 1, 1]]
    assert smith_normal_form(m) == smith_normal_form(m)


def test_snf_big_entries():
    big = 10**40 + 7
    snf = check_snf([[big, 3], [5, big]], 2, 2)
    assert snf.diagonal[0] * snf.diagonal[1] == abs(big * big - 15)


matrices = st.integers(1, 8).flatmap(
    lambda r: st.integers(1, 8).flatmap(
        lambda c: st.lists(st.lists(st.integers(-20, 20), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_snf_properties(m):
    check_snf(m, len(m), len(m[0]))


def test_cokernel_examples():
    ck = zlinalg.cokernel([[2]])
    assert (ck.torsion, ck.free_rank) == ((2,), 0)
    ck = zlinalg.cokernel([[], []])
    assert (ck.torsion, ck.free_rank) == ((), 2)
    ck = zlinalg.cokernel([[2, 0], [0, 3]])
    assert (ck.torsion, ck.free_rank) == ((6,), 0)


def _project(ck, v):
    raw = zlinalg.matvec(ck.projection, v)
    return tuple(x % f for x, f in zip(raw, ck.torsion)) + tuple(raw[len(ck.torsion):])


@settings(max_examples=100, deadline=None)
@given(matrices, st.data())
def test_cokernel_projection_kills_exactly_the_span(m, data):
    rows, cols = len(m), len(m[0])
    ck = zlinalg.cokernel(m)
    for j in range(cols):
        assert not any(_project(ck, [row[j] for row in m]))
    # section property
    for k in range(len(ck.torsion) + ck.free_rank):
        e = [0] * (len(ck.torsion) + ck.free_rank)
        e[k] = 1
        assert list(_project(ck, [row[k] for row in ck.lift])) == e
    v = data.draw(st.lists(st.integers(-30, 30), min_size=rows, max_size=rows))
    w = data.draw(st.lists(st.integers(-30, 30), min_size=rows, max_size=rows))
    diff = [a - b for a, b in zip(v, w)]
    assert (_project(ck, v) == _project(ck, w)) == zlinalg.in_column_span(m, diff)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_cokernel_order_is_abs_det(m):
    d = det(m)
    ck = zlinalg.cokernel(m)
    if d == 0:
        assert ck.free_rank > 0
    else:
        assert ck.free_rank == 0
        assert math.prod(ck.torsion) == abs(d)


def test_kernel_basis_examples():
    k = zlinalg.kernel_basis([[1, 1]])
    assert len(k[0]) == 1
    assert sorted([k[0][0], k[1][0]]) == [-1, 1]
    assert zlinalg.kernel_basis([[1, 0], [0, 1]]) == [[], []]
    k = zlinalg.kernel_basis([[0, 0]])
    assert len(k[0]) == 2 and abs(det(k)) == 1


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_kernel_basis_is_saturated(m):
    cols = len(m[0])
    k = zlinalg.kernel_basis(m)
    n = len(k[0]) if k else 0
    for j in range(n):
        assert not any(zlinalg.matvec(m, [row[j] for row in k]))
    # saturation: small kernel vectors found by search lie in the integer span of the basis
    for v in itertools.product(range(-1, 2), repeat=min(cols, 4)):
        v = list(v) + [0] * (cols - len(v))
        if not any(zlinalg.matvec(m, v)):
            assert zlinalg.in_column_span(k if n else [[] for _ in range(cols)], v)


def test_in_column_span_examples():
    assert zlinalg.in_column_span([[2]], [4])
    assert not zlinalg.in_column_span([[2]], [3])
    assert not zlinalg.in_column_span([[0, 2], [2, 0]], [1, 1])
    with pytest.raises(ValueError):
        zlinalg.in_column_span([[2]], [1, 2])


def test_solve():
    assert zlinalg.solve([[2, 0], [0, 3]], [4, 9]) == [2, 3]
    assert zlinalg.solve([[2]], [3]) is None
