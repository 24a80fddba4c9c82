import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from topocrystal.linalg import (bareiss_det, in_column_lattice, integer_inverse, ldl, lower_frame,
                                mat_mul, smith_normal_form, transpose)


def leibniz_det(m):
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        term = (-1) ** inv
        for i in range(n):
            term *= m[i][perm[i]]
        total += term
    return total


square = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=200, deadline=None)
@given(square)
def test_det_matches_leibniz(m):
    assert bareiss_det(m) == leibniz_det(m)


@settings(max_examples=200, deadline=None)
@given(square)
def test_adjugate(m):
    n = len(m)
    if leibniz_det(m) == 0:
        with pytest.raises(ValueError):
            integer_inverse(m)
        return
    det, adj = integer_inverse(m)
    assert det == leibniz_det(m)
    assert mat_mul(m, adj) == [[det if i == j else 0 for j in range(n)] for i in range(n)]


def test_empty_determinant():
    assert bareiss_det([]) == 1


def test_snf_examples():
    assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == [1, 1, 1]
    assert smith_normal_form([[2, 1], [1, 2]]) == [1, 3]
    assert smith_normal_form([[2, 0], [0, 4]]) == [2, 4]
    assert smith_normal_form([[2, 0], [0, 3]]) == [1, 6]
    assert smith_normal_form([[0, 0], [0, 0]]) == []


@settings(max_examples=200, deadline=None)
@given(square)
def test_snf_divisibility_and_product(m):
    f = smith_normal_form(m)
    assert all(b % a == 0 for a, b in zip(f, f[1:]))
    assert all(x > 0 for x in f)
    det = bareiss_det(m)
    if det:
        assert len(f) == len(m)
        prod = 1
        for x in f:
            prod *= x
        assert prod == abs(det)


def test_snf_gcd_of_entries():
    rng = random.Random(3)
    from math import gcd
    for _ in range(100):
        m = [[rng.randint(-9, 9) for _ in range(3)] for _ in range(2)]
        f = smith_normal_form(m)
        g = 0
        for row in m:
            for x in row:
                g = gcd(g, x)
        assert (f[0] if f else 0) == g


def test_column_lattice_membership():
    m = [[2, 0], [0, 3]]
    assert in_column_lattice(m, [4, 9])
    assert not in_column_lattice(m, [1, 0])
    assert in_column_lattice([[2, 1], [1, 2]], [3, 3])
    assert not in_column_lattice([[2, 1], [1, 2]], [1, 0])


def test_column_lattice_brute_force():
    rng = random.Random(9)
    for _ in range(60):
        m = [[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)]
        reach = {(m[0][0] * a + m[0][1] * b, m[1][0] * a + m[1][1] * b)
                 for a in range(-30, 31) for b in range(-30, 31)}
        for v in itertools.product(range(-3, 4), repeat=2):
            if v in reach:
                assert in_column_lattice(m, list(v))
        # negatives only where the brute-force box is certainly complete
        if bareiss_det(m) in (1, -1):
            assert all(in_column_lattice(m, list(v)) for v in itertools.product(range(-3, 4), repeat=2))


def test_ldl_and_frame():
    g = [[2, 1], [1, 2]]
    low, diag = ldl(g)
    assert diag == [Fraction(2), Fraction(3, 2)]
    n = len(g)
    rebuilt = [[sum(low[i][k] * diag[k] * low[j][k] for k in range(n)) for j in range(n)] for i in range(n)]
    assert rebuilt == g
    frame = lower_frame(g)
    mtm = mat_mul(transpose(frame), frame)
    assert all(abs(mtm[i][j] - g[i][j]) < 1e-12 for i in range(2) for j in range(2))
    assert frame[0][1] == 0
