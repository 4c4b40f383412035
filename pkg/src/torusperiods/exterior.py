"""Constant-coefficient alternating forms on R^(2g) with complex coefficients.

A form of degree k is a sparse map from strictly increasing k-tuples of
0-based real coordinate positions to scalars. Coefficients are combined
with ``+`` and ``*`` only, so ints, Fractions, sympy numbers and complex
floats all work; integer inputs stay exact.

Real coordinates of C^g are identified with R^(2g) through a
:class:`CoordinateConvention`. The default is the interleaved ordering
``(x1, y1, x2, y2, ...)``, whose standard orientation
``dx1 ^ dy1 ^ ... ^ dxg ^ dyg`` is the complex orientation. With it,
``integrate_top`` of ``dz1..dzg ^ dzbar1..dzbarg`` over ``M Z^(2g)`` is
``(-1)^(g(g-1)/2) (-2i)^g det M``. The blocked ordering
``(x1, ..., xg, y1, ..., yg)`` is also available; the integral of a top
form does not depend on the choice but ``det M`` does, by the sign of the
reordering permutation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Mapping, Tuple

import numpy as np

from .errors import DegreeMismatch, DimensionMismatch, IndexOutOfRange, SingularMatrix

__all__ = [
    "CoordinateConvention",
    "AlternatingForm",
    "zero_form",
    "unit_form",
    "basis_dx",
    "basis_dz",
    "basis_dzbar",
    "wedge",
    "wedge_all",
    "pullback",
    "integrate_top",
    "realify",
    "complexify_vector",
]

Index = Tuple[int, ...]


@dataclass(frozen=True)
class CoordinateConvention:
    """Identification of C^g with R^(2g), z_n = x_n + i y_n.

    ``ordering`` is ``"interleaved"`` for ``(x1, y1, ..., xg, yg)`` or
    ``"blocked"`` for ``(x1, ..., xg, y1, ..., yg)``.
    """

    g: int
    ordering: str = "interleaved"

    def __post_init__(self):
        if self.g < 1:
            raise ValueError(f"g must be >= 1, got {self.g}")
        if self.ordering not in ("interleaved", "blocked"):
            raise ValueError(f"unknown ordering {self.ordering!r}")

    def x_index(self, n: int) -> int:
        """0-based position of x_n (n is 1-based)."""
        return 2 * (n - 1) if self.ordering == "interleaved" else n - 1

    def y_index(self, n: int) -> int:
        return 2 * (n - 1) + 1 if self.ordering == "interleaved" else self.g + n - 1

    @cached_property
    def J(self) -> np.ndarray:
        """Real matrix of multiplication by i."""
        J = np.zeros((2 * self.g, 2 * self.g))
        for n in range(1, self.g + 1):
            x, y = self.x_index(n), self.y_index(n)
            J[y, x] = 1.0
            J[x, y] = -1.0
        J.flags.writeable = False
        return J


@dataclass(frozen=True)
class AlternatingForm:
    """Alternating form sum_I coeffs[I] dx^I on R^ambient_dim."""

    ambient_dim: int
    degree: int
    coeffs: Mapping[Index, object] = field(default_factory=dict)

    def __post_init__(self):
        clean: Dict[Index, object] = {}
        for idx, c in self.coeffs.items():
            idx = tuple(int(i) for i in idx)
            if len(idx) != self.degree:
                raise DegreeMismatch(f"index {idx} does not have {self.degree} entries")
            if any(a >= b for a, b in zip(idx, idx[1:])):
                raise ValueError(f"index {idx} is not strictly increasing")
            if idx and not (0 <= idx[0] and idx[-1] < self.ambient_dim):
                raise IndexOutOfRange(f"index {idx} outside 0..{self.ambient_dim - 1}")
            if c != 0:
                clean[idx] = c
        object.__setattr__(self, "coeffs", clean)

    def __getitem__(self, idx: Index):
        return self.coeffs.get(tuple(idx), 0)

    def __add__(self, other: "AlternatingForm") -> "AlternatingForm":
        _check_same(self, other)
        if self.degree != other.degree:
            raise DegreeMismatch(f"cannot add degrees {self.degree} and {other.degree}")
        out = dict(self.coeffs)
        for idx, c in other.coeffs.items():
            out[idx] = out.get(idx, 0) + c
        return AlternatingForm(self.ambient_dim, self.degree, out)

    def scale(self, s) -> "AlternatingForm":
        return AlternatingForm(
            self.ambient_dim, self.degree, {idx: s * c for idx, c in self.coeffs.items()}
        )

    def __rmul__(self, s):
        return self.scale(s)

    def __xor__(self, other: "AlternatingForm") -> "AlternatingForm":
        return wedge(self, other)

    def is_zero(self) -> bool:
        return not self.coeffs

    def top_coefficient(self):
        """Coefficient of dx_0 ^ ... ^ dx_{n-1}; requires degree == ambient_dim."""
        if self.degree != self.ambient_dim:
            raise DegreeMismatch(f"degree {self.degree} form is not top degree on R^{self.ambient_dim}")
        return self[tuple(range(self.ambient_dim))]

    def conjugate(self) -> "AlternatingForm":
        return AlternatingForm(
            self.ambient_dim,
            self.degree,
            {idx: c.conjugate() for idx, c in self.coeffs.items()},
        )


def _check_same(a: AlternatingForm, b: AlternatingForm):
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim} differ")


def zero_form(ambient_dim: int, degree: int) -> AlternatingForm:
    return AlternatingForm(ambient_dim, degree, {})


def unit_form(ambient_dim: int) -> AlternatingForm:
    """The degree-0 form 1."""
    return AlternatingForm(ambient_dim, 0, {(): 1})


def basis_dx(ambient_dim: int, position: int) -> AlternatingForm:
    return AlternatingForm(ambient_dim, 1, {(position,): 1})


def _check_n(convention: CoordinateConvention, n: int):
    if not 1 <= n <= convention.g:
        raise IndexOutOfRange(f"complex coordinate index {n} outside 1..{convention.g}")


def basis_dz(convention: CoordinateConvention, n: int) -> AlternatingForm:
    """dz_n = dx_n + i dy_n (n is 1-based)."""
    _check_n(convention, n)
    return AlternatingForm(
        2 * convention.g, 1, {(convention.x_index(n),): 1, (convention.y_index(n),): 1j}
    )


def basis_dzbar(convention: CoordinateConvention, n: int) -> AlternatingForm:
    """dzbar_n = dx_n - i dy_n (n is 1-based)."""
    _check_n(convention, n)
    return AlternatingForm(
        2 * convention.g, 1, {(convention.x_index(n),): 1, (convention.y_index(n),): -1j}
    )


def _merge_sign(I: Index, J: Index) -> int:
    inversions = sum(1 for i in I for j in J if i > j)
    return -1 if inversions % 2 else 1


def wedge(a: AlternatingForm, b: AlternatingForm) -> AlternatingForm:
    """Exterior product a ^ b."""
    _check_same(a, b)
    k = a.degree + b.degree
    out: Dict[Index, object] = {}
    if k <= a.ambient_dim:
        for I, ca in a.coeffs.items():
            sI = set(I)
            for J, cb in b.coeffs.items():
                if sI.intersection(J):
                    continue
                K = tuple(sorted(I + J))
                term = ca * cb if _merge_sign(I, J) > 0 else -(ca * cb)
                out[K] = out.get(K, 0) + term
    return AlternatingForm(a.ambient_dim, k, out)


def wedge_all(forms, ambient_dim: int | None = None) -> AlternatingForm:
    forms = list(forms)
    if not forms:
        if ambient_dim is None:
            raise ValueError("ambient_dim is required for an empty product")
        return unit_form(ambient_dim)
    out = forms[0]
    for f in forms[1:]:
        out = wedge(out, f)
    return out


def pullback(a: AlternatingForm, L) -> AlternatingForm:
    """Pull ``a`` back along the linear map ``L``.

    ``(L* a)(v1, ..., vk) = a(L v1, ..., L vk)``. ``L`` has shape
    ``(a.ambient_dim, d)``; the result lives on R^d. For square ``L`` and a
    top form this multiplies the coefficient by ``det L``.
    """
    L = np.asarray(L)
    if L.dtype.kind in "iub":
        L = L.astype(object)
    if L.ndim != 2 or L.shape[0] != a.ambient_dim:
        raise DimensionMismatch(f"map of shape {L.shape} cannot pull back forms on R^{a.ambient_dim}")
    d = L.shape[1]
    # L* dx_i is row i of L
    rows = [
        AlternatingForm(d, 1, {(j,): L[i, j] for j in range(d) if L[i, j] != 0})
        for i in range(a.ambient_dim)
    ]
    out = zero_form(d, a.degree)
    for I, c in a.coeffs.items():
        term = wedge_all([rows[i] for i in I], ambient_dim=d)
        out = out + term.scale(c)
    return out


def integrate_top(a: AlternatingForm, M):
    """Integral of a top-degree form over the fundamental domain of ``M Z^n``.

    The domain is parametrized by ``t -> M t`` on the unit cube with its
    standard orientation, so the result is the standard top coefficient
    times the signed ``det M``.

    Raises:
        DegreeMismatch: ``a`` is not of top degree.
        SingularMatrix: ``M`` is (numerically) singular.
    """
    if a.degree != a.ambient_dim:
        raise DegreeMismatch(f"degree {a.degree} form cannot be integrated over R^{a.ambient_dim}")
    M = np.asarray(M, dtype=float)
    if M.shape != (a.ambient_dim, a.ambient_dim):
        raise DimensionMismatch(f"period matrix of shape {M.shape} on R^{a.ambient_dim}")
    det = float(np.linalg.det(M)) if M.size else 1.0
    hadamard = float(np.prod(np.linalg.norm(M, axis=0))) if M.size else 1.0
    if not np.isfinite(det) or abs(det) <= 1e-14 * hadamard:
        raise SingularMatrix(f"det M = {det!r} is numerically zero")
    return a.top_coefficient() * det


def realify(T, convention: CoordinateConvention | None = None) -> np.ndarray:
    """Real 2g x 2g matrix of the complex linear map ``T`` in the given convention.

    For ``T = X + iY`` the blocked form is ``[[X, -Y], [Y, X]]``; the
    interleaved form places the 2x2 block ``[[Re t, -Im t], [Im t, Re t]]``
    for each entry ``t``. Either way the result commutes with ``J``.
    """
    T = np.atleast_2d(np.asarray(T, dtype=complex))
    g = T.shape[0]
    if T.shape != (g, g):
        raise DimensionMismatch(f"expected a square complex matrix, got {T.shape}")
    conv = convention or CoordinateConvention(g)
    R = np.zeros((2 * g, 2 * g))
    for j in range(g):
        for k in range(g):
            t = T[j, k]
            xj, yj = conv.x_index(j + 1), conv.y_index(j + 1)
            xk, yk = conv.x_index(k + 1), conv.y_index(k + 1)
            R[xj, xk], R[xj, yk] = t.real, -t.imag
            R[yj, xk], R[yj, yk] = t.imag, t.real
    return R


def complexify_vector(v, convention: CoordinateConvention | None = None) -> np.ndarray:
    """Standard complex coordinates of real vectors (columns of ``v``)."""
    v = np.asarray(v, dtype=float)
    g = v.shape[0] // 2
    conv = convention or CoordinateConvention(g)
    xs = [conv.x_index(n) for n in range(1, g + 1)]
    ys = [conv.y_index(n) for n in range(1, g + 1)]
    return v[xs] + 1j * v[ys]
