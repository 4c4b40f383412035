"""Complex tori C^g / M Z^(2g), their duals, and the hermitian period metric.

A torus is given by a real 2g x 2g period matrix ``M`` whose columns are
lattice generators in the real coordinates fixed by
``CoordinateConvention(g)`` (interleaved, see :mod:`torusperiods.exterior`).
The dual torus has period matrix ``(M^T)^-1``.

Top holomorphic forms are stored as a single coefficient ``lam`` meaning
``lam dz1 ^ ... ^ dzg`` in the torus's own standard coordinates. Forms on
different tori are only related through :func:`duality_transport` or
:func:`reparametrize`.

Norms use ``|det M|``; the duality transport uses the signed ``det M``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import pi
from typing import List, Tuple, Union

import numpy as np

from . import intlat
from .errors import DimensionMismatch, NotUnimodular, SingularMatrix, SingularPeriodMatrix
from .exterior import (
    AlternatingForm,
    CoordinateConvention,
    basis_dz,
    basis_dzbar,
    integrate_top,
    realify,
    wedge,
    wedge_all,
)
from .report import CheckRecord, close_check

__all__ = [
    "DEFAULT_TOL",
    "ComplexTorus",
    "HodgeForm",
    "NormalizationConstant",
    "make_torus",
    "dual_torus",
    "faltings_norm_sq",
    "faltings_norm_sq_oracle",
    "duality_transport",
    "transport_sign",
    "serre_pairing",
    "reparametrize",
    "rebase_lattice",
    "holomorphic_top_form",
    "verify_hermitian_duality",
]

DEFAULT_TOL = 1e-9
# smallest over largest singular value of M below this is treated as singular;
# the ratio is the same for M and (M^T)^-1, so duals of valid tori stay valid
DEGENERATE_RATIO = 1e-12


@dataclass(frozen=True, eq=False)
class ComplexTorus:
    """The torus R^(2g) / M Z^(2g) with its complex structure from C^g."""

    g: int
    M: np.ndarray
    tol: float = DEFAULT_TOL
    det: float = field(init=False)

    def __post_init__(self):
        if self.g < 1:
            raise DimensionMismatch(f"g must be >= 1, got {self.g}")
        M = np.array(self.M, dtype=float)
        if M.shape != (2 * self.g, 2 * self.g):
            raise DimensionMismatch(f"period matrix must be {2 * self.g}x{2 * self.g}, got {M.shape}")
        if not np.all(np.isfinite(M)):
            raise SingularPeriodMatrix("period matrix has non-finite entries")
        if not self.tol > 0:
            raise ValueError(f"tolerance must be positive, got {self.tol}")
        sv = np.linalg.svd(M, compute_uv=False)
        if not sv[-1] > DEGENERATE_RATIO * sv[0]:
            raise SingularPeriodMatrix(f"period matrix is degenerate: singular values {sv[0]:.3e} .. {sv[-1]:.3e}")
        det = float(np.linalg.det(M))
        M.flags.writeable = False
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "det", det)

    @property
    def convention(self) -> CoordinateConvention:
        return CoordinateConvention(self.g)

    def __repr__(self):
        return f"ComplexTorus(g={self.g}, det={self.det:.6g})"


@dataclass(frozen=True)
class HodgeForm:
    """The top form ``lam dz1 ^ ... ^ dzg`` on a torus of dimension ``g``."""

    lam: complex
    g: int

    def __post_init__(self):
        object.__setattr__(self, "lam", complex(self.lam))


@dataclass(frozen=True)
class NormalizationConstant:
    """Positive constant C(g) in ||w||^2 = C(g) |int w ^ conj(w)|."""

    value: float = 1.0

    def __post_init__(self):
        if not self.value > 0:
            raise ValueError(f"normalization constant must be positive, got {self.value}")


NormLike = Union[NormalizationConstant, float]


def _c(C: NormLike) -> float:
    return C.value if isinstance(C, NormalizationConstant) else NormalizationConstant(float(C)).value


def _check_form(T: ComplexTorus, omega: HodgeForm):
    if omega.g != T.g:
        raise DimensionMismatch(f"form of dimension {omega.g} on a torus of dimension {T.g}")


def make_torus(g: int, M, tol: float = DEFAULT_TOL) -> ComplexTorus:
    """Validated torus C^g / M Z^(2g).

    Raises:
        DimensionMismatch: ``M`` is not 2g x 2g.
        SingularPeriodMatrix: ``M`` is numerically singular.
    """
    return ComplexTorus(g, M, tol)


def dual_torus(T: ComplexTorus) -> ComplexTorus:
    return ComplexTorus(T.g, np.linalg.inv(T.M.T), T.tol)


def faltings_norm_sq(T: ComplexTorus, omega: HodgeForm, C: NormLike = 1.0) -> float:
    """Closed form ``|lam|^2 C(g) 2^g |det M|``."""
    _check_form(T, omega)
    return abs(omega.lam) ** 2 * _c(C) * 2**T.g * abs(T.det)


def holomorphic_top_form(g: int, lam=1, conjugate: bool = False) -> AlternatingForm:
    """``lam dz1 ^ ... ^ dzg`` (or ``lam dzbar1 ^ ... ^ dzbarg``) on R^(2g)."""
    conv = CoordinateConvention(g)
    basis = basis_dzbar if conjugate else basis_dz
    return wedge_all([basis(conv, n) for n in range(1, g + 1)]).scale(lam)


def faltings_norm_sq_oracle(T: ComplexTorus, omega: HodgeForm, C: NormLike = 1.0) -> float:
    """``C(g) |int_T w ^ conj(w)|`` evaluated symbolically through the exterior algebra."""
    _check_form(T, omega)
    w = holomorphic_top_form(T.g, omega.lam)
    return _c(C) * abs(integrate_top(wedge(w, w.conjugate()), T.M))


def transport_sign(g: int) -> int:
    """(-1)^(g(g+1)/2)."""
    return -1 if (g * (g + 1) // 2) % 2 else 1


def duality_transport(T: ComplexTorus, omega: HodgeForm) -> HodgeForm:
    """Image on the dual torus: ``dz1..dzg -> (-1)^(g(g+1)/2) det M dz*1..dz*g``."""
    _check_form(T, omega)
    return HodgeForm(omega.lam * transport_sign(T.g) * T.det, T.g)


def serre_pairing(T: ComplexTorus, omega: HodgeForm, eta_bar_coeff) -> complex:
    """``(2 pi i)^-g int_T w ^ eta`` with ``eta = eta_bar_coeff pi^g dzbar1 ^ ... ^ dzbarg``.

    Evaluated by symbolic wedge expansion and :func:`integrate_top`; for
    ``lam = eta_bar_coeff = 1`` it equals ``(-1)^(g(g+1)/2) det M``.
    """
    _check_form(T, omega)
    g = T.g
    w = holomorphic_top_form(g, omega.lam)
    eta = holomorphic_top_form(g, complex(eta_bar_coeff) * pi**g, conjugate=True)
    return complex(integrate_top(wedge(w, eta), T.M) / (2j * pi) ** g)


def reparametrize(T: ComplexTorus, G) -> Tuple[ComplexTorus, complex]:
    """Change complex coordinates by ``z' = G z``.

    Returns:
        The torus with period matrix ``realify(G) M`` and the factor
        ``det(G)^-1`` by which Hodge form coefficients transform.
    """
    G = np.atleast_2d(np.asarray(G, dtype=complex))
    if G.shape != (T.g, T.g):
        raise DimensionMismatch(f"coordinate change must be {T.g}x{T.g}, got {G.shape}")
    d = complex(np.linalg.det(G))
    if d == 0 or abs(d) < 1e-14 * float(np.linalg.norm(G, 2)) ** T.g:
        raise SingularMatrix(f"coordinate change has det {d}")
    return ComplexTorus(T.g, realify(G) @ T.M, T.tol), 1 / d


def rebase_lattice(T: ComplexTorus, U) -> ComplexTorus:
    """Torus with lattice basis ``M U`` for unimodular integer ``U``."""
    U = intlat.as_integer_matrix(U)
    if U.shape != (2 * T.g, 2 * T.g) or not intlat.is_unimodular(U):
        raise NotUnimodular(f"{U.shape} integer matrix is not a unimodular change of lattice basis")
    return ComplexTorus(T.g, T.M @ U.astype(float), T.tol)


def verify_hermitian_duality(
    T: ComplexTorus, omega: HodgeForm, C: NormLike = 1.0, oracle: bool = True
) -> List[CheckRecord]:
    """Hermitian metric is preserved by the duality; optional exterior-algebra cross-checks."""
    B = dual_torus(T)
    records = [
        close_check(
            "faltings_duality",
            faltings_norm_sq(T, omega, C),
            faltings_norm_sq(B, duality_transport(T, omega), C),
            T.tol,
        )
    ]
    if oracle:
        records.append(
            close_check("faltings_oracle", faltings_norm_sq(T, omega, C), faltings_norm_sq_oracle(T, omega, C), T.tol)
        )
        records.append(
            close_check(
                "faltings_oracle_dual",
                faltings_norm_sq(B, duality_transport(T, omega), C),
                faltings_norm_sq_oracle(B, duality_transport(T, omega), C),
                T.tol,
            )
        )
        records.append(
            close_check(
                "serre_pairing_sign",
                serre_pairing(T, HodgeForm(1, T.g), 1),
                transport_sign(T.g) * T.det,
                T.tol,
            )
        )
    return records
