"""Exact integer linear algebra over Z.

Integer matrices are numpy arrays of dtype ``object`` holding Python ints,
so every operation is exact and arbitrary precision. Arrays returned by
this module are marked read-only; empty shapes (0 rows or 0 columns) are
legal everywhere.

Conventions:

* Hermite normal form is column style: ``H = A @ U`` with ``U`` unimodular,
  pivots positive, entries left of a pivot reduced into ``[0, pivot)`` and
  zero columns on the right.
* Smith normal form is ``U @ A @ V = S`` with nonnegative diagonal
  ``d1 | d2 | ...`` and zeros trailing.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence, Tuple

import numpy as np

from .errors import NotUnimodular, RankMismatch, SubNotContained

__all__ = [
    "FiniteAbelianGroup",
    "as_integer_matrix",
    "identity",
    "xgcd",
    "hermite_normal_form",
    "smith_normal_form",
    "invariant_factors",
    "kernel_basis",
    "column_span_basis",
    "rank",
    "determinant",
    "cokernel",
    "finite_quotient",
    "unimodular_inverse",
]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Finite abelian group Z/d1 x ... x Z/dk with d1 | d2 | ... and each di >= 2."""

    invariant_factors: Tuple[int, ...] = ()

    def __post_init__(self):
        factors = tuple(int(d) for d in self.invariant_factors)
        if any(d < 2 for d in factors):
            raise ValueError(f"invariant factors must be >= 2, got {factors}")
        if any(b % a for a, b in zip(factors, factors[1:])):
            raise ValueError(f"invariant factors must form a divisibility chain, got {factors}")
        object.__setattr__(self, "invariant_factors", factors)

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    def __repr__(self):
        if not self.invariant_factors:
            return "FiniteAbelianGroup(trivial)"
        return "FiniteAbelianGroup(" + " x ".join(f"Z/{d}" for d in self.invariant_factors) + ")"


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def as_integer_matrix(data, shape: Tuple[int, int] | None = None) -> np.ndarray:
    """Convert nested sequences or an array to a read-only object matrix of Python ints.

    ``shape`` is only needed to give empty matrices a definite shape, e.g.
    ``as_integer_matrix([], (3, 0))``.
    """
    if isinstance(data, np.ndarray) and data.dtype == object and data.ndim == 2:
        arr = data.copy()
    else:
        arr = np.array(data, dtype=object)
    if shape is not None:
        arr = arr.reshape(shape)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-d integer matrix, got {arr.ndim} dimensions")
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        iv = int(v)
        if iv != v:
            raise ValueError(f"non-integer entry {v!r} at {idx}")
        out[idx] = iv
    return _freeze(out)


def identity(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    # np.zeros(dtype=object) fills with int 0, which is what we want
    return _freeze(out)


def _work(a: np.ndarray) -> np.ndarray:
    """Writable object copy."""
    return np.array(as_integer_matrix(a), dtype=object, copy=True)


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hermite_normal_form(A) -> Tuple[np.ndarray, np.ndarray]:
    """Column-style Hermite normal form.

    Returns:
        ``(H, U)`` with ``H = A @ U`` and ``U`` unimodular.
    """
    H = _work(A)
    m, n = H.shape
    U = np.array(identity(n), copy=True)
    col = 0
    for i in range(m):
        if col == n:
            break
        for j in range(col + 1, n):
            b = H[i, j]
            if b == 0:
                continue
            a = H[i, col]
            g, x, y = xgcd(a, b)
            # [[x, -b/g], [y, a/g]] has determinant 1
            p, q = -b // g, a // g
            hc, hj = H[:, col].copy(), H[:, j].copy()
            H[:, col], H[:, j] = x * hc + y * hj, p * hc + q * hj
            uc, uj = U[:, col].copy(), U[:, j].copy()
            U[:, col], U[:, j] = x * uc + y * uj, p * uc + q * uj
        pivot = H[i, col]
        if pivot == 0:
            continue
        if pivot < 0:
            H[:, col] = -H[:, col]
            U[:, col] = -U[:, col]
            pivot = -pivot
        for k in range(col):
            q = H[i, k] // pivot
            if q:
                H[:, k] = H[:, k] - q * H[:, col]
                U[:, k] = U[:, k] - q * U[:, col]
        col += 1
    return _freeze(H), _freeze(U)


def smith_normal_form(A) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Smith normal form ``U @ A @ V = S``.

    Returns:
        ``(S, U, V)``; ``S`` has the shape of ``A`` with diagonal
        ``d1 | d2 | ... >= 0`` (zeros last), ``U`` and ``V`` unimodular.
    """
    S = _work(A)
    m, n = S.shape
    U = np.array(identity(m), copy=True)
    V = np.array(identity(n), copy=True)

    def move_to_pivot(t, cells):
        _, i, j = min((abs(S[i, j]), i, j) for i, j in cells if S[i, j] != 0)
        if i != t:
            S[[t, i]] = S[[i, t]]
            U[[t, i]] = U[[i, t]]
        if j != t:
            S[:, [t, j]] = S[:, [j, t]]
            V[:, [t, j]] = V[:, [j, t]]

    for t in range(min(m, n)):
        block = [(i, j) for i in range(t, m) for j in range(t, n)]
        if all(S[i, j] == 0 for i, j in block):
            break
        move_to_pivot(t, block)
        while True:
            p = S[t, t]
            clean = True
            for i in range(t + 1, m):
                q = S[i, t] // p
                if q:
                    S[i] = S[i] - q * S[t]
                    U[i] = U[i] - q * U[t]
                clean &= S[i, t] == 0
            for j in range(t + 1, n):
                q = S[t, j] // p
                if q:
                    S[:, j] = S[:, j] - q * S[:, t]
                    V[:, j] = V[:, j] - q * V[:, t]
                clean &= S[t, j] == 0
            if not clean:
                cross = [(i, t) for i in range(t, m)] + [(t, j) for j in range(t + 1, n)]
                move_to_pivot(t, cross)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if S[i, j] % p),
                None,
            )
            if bad is None:
                break
            # pull the offending row into row t; the next pass leaves a smaller remainder
            S[t] = S[t] + S[bad]
            U[t] = U[t] + U[bad]
        if S[t, t] < 0:
            S[t] = -S[t]
            U[t] = -U[t]
    return _freeze(S), _freeze(U), _freeze(V)


def invariant_factors(A) -> Tuple[int, ...]:
    """Nonzero diagonal of the Smith normal form, in divisibility order."""
    S = smith_normal_form(A)[0]
    return tuple(S[i, i] for i in range(min(S.shape)) if S[i, i] != 0)


def rank(A) -> int:
    H = hermite_normal_form(A)[0]
    return sum(1 for j in range(H.shape[1]) if any(H[:, j] != 0))


def column_span_basis(A) -> np.ndarray:
    """HNF-canonical Z-basis of the lattice spanned by the columns of ``A``."""
    H = hermite_normal_form(A)[0]
    r = sum(1 for j in range(H.shape[1]) if any(H[:, j] != 0))
    return _freeze(np.array(H[:, :r], copy=True))


def kernel_basis(A) -> np.ndarray:
    """HNF-canonical Z-basis (as columns) of ``{v : A @ v = 0}``.

    The kernel of an integer matrix is saturated, so the returned columns
    generate every integer solution. An injective map yields an ``n x 0``
    matrix.
    """
    A = as_integer_matrix(A)
    H, U = hermite_normal_form(A)
    r = sum(1 for j in range(H.shape[1]) if any(H[:, j] != 0))
    return column_span_basis(U[:, r:])


def determinant(A) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    M = _work(A)
    n, m = M.shape
    if n != m:
        raise ValueError(f"determinant of a non-square {n}x{m} matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k, k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i, k] != 0), None)
            if swap is None:
                return 0
            M[[k, swap]] = M[[swap, k]]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i, j] = (M[i, j] * M[k, k] - M[i, k] * M[k, j]) // prev
        prev = M[k, k]
    return sign * M[n - 1, n - 1] if n else 1


def cokernel(A, n: int | None = None) -> Tuple[int, FiniteAbelianGroup]:
    """Structure of ``Z^n / (column span of A)`` as (free rank, torsion).

    ``n`` defaults to the row count of ``A``; pass it explicitly only to
    describe an empty column set.
    """
    if n is not None and np.size(A) == 0:
        A = as_integer_matrix(np.zeros((n, 0), dtype=object))
    A = as_integer_matrix(A)
    factors = invariant_factors(A)
    return A.shape[0] - len(factors), FiniteAbelianGroup(tuple(d for d in factors if d >= 2))


def finite_quotient(sub, sup) -> FiniteAbelianGroup:
    """The finite group (span sup) / (span sub).

    Both arguments are matrices whose columns are lattice generators; they
    must have full column rank and the same number of columns, and every
    column of ``sub`` must lie in the span of ``sup``.

    Raises:
        RankMismatch: ranks differ or a matrix is not of full column rank.
        SubNotContained: some generator of ``sub`` is outside ``span(sup)``.
    """
    sub, sup = as_integer_matrix(sub), as_integer_matrix(sup)
    if sub.shape[0] != sup.shape[0]:
        raise RankMismatch(f"ambient dimensions differ: {sub.shape[0]} vs {sup.shape[0]}")
    k = sup.shape[1]
    if sub.shape[1] != k or rank(sub) != sub.shape[1] or rank(sup) != k:
        raise RankMismatch(
            f"need equal full column ranks, got sub {sub.shape[1]} columns of rank {rank(sub)}"
            f" and sup {k} columns of rank {rank(sup)}"
        )
    S, U, V = smith_normal_form(sup)
    Y = U.dot(sub)
    if any(Y[i, j] != 0 for i in range(k, Y.shape[0]) for j in range(k)):
        raise SubNotContained("sub does not lie in the real span of sup")
    for i in range(k):
        if any(Y[i, j] % S[i, i] for j in range(k)):
            raise SubNotContained("sub does not lie in the integer span of sup")
    Y = np.array(Y[:k], copy=True)
    for i in range(k):
        Y[i] = Y[i] // S[i, i]
    coords = V.dot(Y)
    return FiniteAbelianGroup(tuple(d for d in invariant_factors(coords) if d >= 2))


def unimodular_inverse(U) -> np.ndarray:
    """Exact inverse of a unimodular matrix."""
    U = as_integer_matrix(U)
    n, m = U.shape
    if n != m or determinant(U) not in (1, -1):
        raise NotUnimodular(f"matrix of shape {U.shape} is not unimodular")
    # U @ W = HNF(U) = I
    return hermite_normal_form(U)[1]


def is_unimodular(U) -> bool:
    U = as_integer_matrix(U)
    return U.shape[0] == U.shape[1] and determinant(U) in (1, -1)


def columns(vectors: Iterable[Sequence[int]], n: int) -> np.ndarray:
    """Stack integer vectors of length ``n`` as matrix columns."""
    vecs = [list(v) for v in vectors]
    if not vecs:
        return as_integer_matrix(np.zeros((n, 0), dtype=object))
    return as_integer_matrix(np.array(vecs, dtype=object).T)
