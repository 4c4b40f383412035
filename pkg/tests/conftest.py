import math
from fractions import Fraction
from itertools import combinations, permutations

import numpy as np
import pytest
from hypothesis import strategies as st

from torusperiods.realstruct import make_real_structure
from torusperiods.torus import make_torus

SQRT3_2 = math.sqrt(3) / 2


def perm_sign(p):
    sign = 1
    p = list(p)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


def leibniz_det(rows):
    """Determinant by the permutation expansion; exact for ints and Fractions."""
    n = len(rows)
    if n == 0:
        return 1
    total = 0
    for p in permutations(range(n)):
        term = perm_sign(p)
        for i in range(n):
            term *= rows[i][p[i]]
        total += term
    return total


def determinantal_divisors_factors(A):
    """Invariant factors from gcds of k x k minors: d_k = D_k / D_{k-1}."""
    A = [[int(v) for v in row] for row in A]
    m = len(A)
    n = len(A[0]) if m else 0
    D = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = math.gcd(g, leibniz_det([[A[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        D.append(g)
    return tuple(D[k] // D[k - 1] for k in range(1, len(D)))


def gram_det(cols):
    """det(B^T B) for an integer matrix with columns B, exactly."""
    B = [[Fraction(int(v)) for v in row] for row in np.asarray(cols).tolist()]
    k = len(B[0]) if B else 0
    G = [[sum(B[r][i] * B[r][j] for r in range(len(B))) for j in range(k)] for i in range(k)]
    return leibniz_det(G)


def int_matrices(max_dim=8, max_entry=9, min_dim=0):
    return st.integers(min_dim, max_dim).flatmap(
        lambda m: st.integers(min_dim, max_dim).flatmap(
            lambda n: st.lists(
                st.lists(st.integers(-max_entry, max_entry), min_size=n, max_size=n),
                min_size=m,
                max_size=m,
            ).map(lambda rows, m=m, n=n: np.array(rows, dtype=object).reshape(m, n))
        )
    )


@pytest.fixture
def square_torus():
    return make_torus(1, np.eye(2))


@pytest.fixture
def hex_torus():
    return make_torus(1, [[1.0, 0.5], [0.0, SQRT3_2]])


@pytest.fixture
def square_rs(square_torus):
    return make_real_structure(square_torus, [[1, 0], [0, -1]])


@pytest.fixture
def hex_rs(hex_torus):
    return make_real_structure(hex_torus, [[1, 1], [0, -1]])
