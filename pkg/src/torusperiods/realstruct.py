"""Real structures on complex tori and the real period metric.

A real structure is an integer involution ``C`` of the lattice Z^(2g)
whose real extension ``S = M C M^-1`` is antilinear (``SJ = -JS``). The
component group of the real locus is computed at lattice level as the
Tate cohomology group

    H^1 = ker(C + 1) / im(C - 1),

and the real period of ``lam dz1 ^ ... ^ dzg`` is
``|lam det A_z| * #components`` where the columns of ``A_z`` are the
complex coordinates of a basis of the fixed lattice ``ker(C - 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np
from scipy.stats import ortho_group, unitary_group

from . import intlat
from .errors import (
    DegenerateFixedLattice,
    DimensionMismatch,
    InvalidCounts,
    NotAntilinear,
    NotInvolution,
    WrongFixedRank,
)
from .exterior import CoordinateConvention, complexify_vector, pullback, realify
from .report import CheckRecord, close_check, exact_check
from .torus import (
    DEFAULT_TOL,
    ComplexTorus,
    HodgeForm,
    dual_torus,
    duality_transport,
    holomorphic_top_form,
    make_torus,
    rebase_lattice,
    reparametrize,
)

__all__ = [
    "RealStructure",
    "DetQReport",
    "make_real_structure",
    "fixed_lattice",
    "tate_cohomology",
    "component_count",
    "dual_real_structure",
    "index_formula_check",
    "real_period",
    "real_period_oracle",
    "bsd_norm",
    "det_q_relation_check",
    "verify_real_duality",
    "random_real_torus",
    "rebase_real_structure",
    "reparametrize_real_structure",
]


@dataclass(frozen=True, eq=False)
class RealStructure:
    """Antiholomorphic involution of ``torus`` given by the lattice matrix ``C``."""

    torus: ComplexTorus
    C: np.ndarray
    S: np.ndarray = field(init=False)

    def __post_init__(self):
        T = self.torus
        n = 2 * T.g
        C = intlat.as_integer_matrix(self.C)
        if C.shape != (n, n):
            raise DimensionMismatch(f"conjugation must be {n}x{n}, got {C.shape}")
        I = intlat.identity(n)
        if not np.array_equal(C.dot(C), I):
            raise NotInvolution("C @ C is not the identity")
        # exact checks first: a holomorphic involution fails here before the float test
        fixed_rank = intlat.kernel_basis(C - I).shape[1]
        if fixed_rank != T.g:
            raise WrongFixedRank(f"rank of ker(C - 1) is {fixed_rank}, expected g = {T.g}")
        S = T.M @ C.astype(float) @ np.linalg.inv(T.M)
        J = T.convention.J
        defect = np.linalg.norm(S @ J + J @ S, np.inf)
        if defect > T.tol * np.linalg.norm(S, np.inf):
            raise NotAntilinear(f"||SJ + JS|| = {defect:.3e} exceeds tolerance")
        S.flags.writeable = False
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "S", S)

    @property
    def g(self) -> int:
        return self.torus.g

    def __repr__(self):
        return f"RealStructure(g={self.g}, C={self.C.tolist()})"


def make_real_structure(T: ComplexTorus, C) -> RealStructure:
    """Validate ``C`` as a real structure on ``T``.

    Raises:
        NotInvolution: ``C @ C != I``.
        WrongFixedRank: ``ker(C - 1)`` does not have rank g.
        NotAntilinear: ``S J + J S`` is not zero within tolerance.
    """
    return RealStructure(T, C)


def fixed_lattice(rs: RealStructure, sign: int = 1) -> np.ndarray:
    """HNF-canonical basis (columns) of ``ker(C - sign)``."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    n = 2 * rs.g
    return intlat.kernel_basis(rs.C - sign * intlat.identity(n))


def tate_cohomology(rs: RealStructure) -> intlat.FiniteAbelianGroup:
    """``ker(C + 1) / (C - 1) Z^(2g)``."""
    n = 2 * rs.g
    image = intlat.column_span_basis(rs.C - intlat.identity(n))
    return intlat.finite_quotient(image, fixed_lattice(rs, -1))


def component_count(rs: RealStructure) -> int:
    """Number of connected components of the real locus."""
    return tate_cohomology(rs).order


def dual_real_structure(rs: RealStructure) -> RealStructure:
    """Conjugation ``-C^T`` on the dual torus."""
    return RealStructure(dual_torus(rs.torus), -rs.C.T)


def index_formula_check(rs: RealStructure) -> Tuple[int, bool]:
    """Index of ``ker(C - 1) + ker(C + 1)`` in the lattice, and whether it equals 2^g / #components."""
    n = 2 * rs.g
    both = np.concatenate([fixed_lattice(rs, 1), fixed_lattice(rs, -1)], axis=1)
    index = intlat.finite_quotient(both, intlat.identity(n)).order
    return index, index * component_count(rs) == 2**rs.g


def _z_basis(rs: RealStructure, sign: int = 1) -> np.ndarray:
    K = fixed_lattice(rs, sign).astype(float)
    return complexify_vector(rs.torus.M @ K, rs.torus.convention)


def _checked_z_basis(rs: RealStructure) -> Tuple[np.ndarray, complex]:
    A_z = _z_basis(rs, 1)
    det = complex(np.linalg.det(A_z))
    hadamard = float(np.prod(np.linalg.norm(A_z, axis=0)))
    if abs(det) <= rs.torus.tol * hadamard:
        raise DegenerateFixedLattice("fixed lattice does not span C^g over C")
    return A_z, det


def real_period(rs: RealStructure, omega: HodgeForm) -> float:
    """Integral of ``|lam dz1 ^ ... ^ dzg|`` over the real locus."""
    if omega.g != rs.g:
        raise DimensionMismatch(f"form of dimension {omega.g} on a torus of dimension {rs.g}")
    _, det = _checked_z_basis(rs)
    return abs(omega.lam * det) * component_count(rs)


bsd_norm = real_period


def real_period_oracle(rs: RealStructure, omega: HodgeForm) -> float:
    """Real period by pulling the form back to the identity component.

    The identity component is parametrized by ``t -> M K t`` on the unit
    cube, ``K`` a basis of the fixed lattice; the pulled-back top form on
    R^g integrates to its coefficient.
    """
    if omega.g != rs.g:
        raise DimensionMismatch(f"form of dimension {omega.g} on a torus of dimension {rs.g}")
    _checked_z_basis(rs)
    param = rs.torus.M @ fixed_lattice(rs, 1).astype(float)
    pulled = pullback(holomorphic_top_form(rs.g, omega.lam), param)
    return abs(pulled.top_coefficient()) * component_count(rs)


@dataclass(frozen=True)
class DetQReport:
    """``det Q`` against ``(2^g / #components) det M~``; compared in absolute value."""

    lhs: float
    rhs: float
    holds: bool
    det_m_tilde: float
    components: int


def det_q_relation_check(rs: RealStructure) -> DetQReport:
    """Imaginary part ``Q`` of the anti-invariant basis in fixed-lattice coordinates.

    With ``w = P + iQ`` expressing a basis of ``ker(C + 1)`` in the complex
    coordinates given by the fixed-lattice basis, and ``M~`` the period
    matrix rewritten in those coordinates, ``|det Q| = 2^g / #components *
    |det M~|``. Signed values are reported; the signs depend on basis
    orientation.
    """
    A_z, det_z = _checked_z_basis(rs)
    W = np.linalg.solve(A_z, _z_basis(rs, -1))
    lhs = float(np.linalg.det(W.imag))
    count = component_count(rs)
    det_m_tilde = rs.torus.det / abs(det_z) ** 2
    rhs = 2**rs.g / count * det_m_tilde
    holds = abs(abs(lhs) - abs(rhs)) <= rs.torus.tol * abs(rhs)
    return DetQReport(lhs, rhs, bool(holds), det_m_tilde, count)


def verify_real_duality(rs: RealStructure, omega: HodgeForm, oracle: bool = True) -> List[CheckRecord]:
    """Component counts and real periods agree on a torus and its dual.

    Failures are returned as records, never raised.
    """
    tol = rs.torus.tol
    dual = dual_real_structure(rs)
    omega_dual = duality_transport(rs.torus, omega)
    count = component_count(rs)
    index, _ = index_formula_check(rs)
    dq = det_q_relation_check(rs)
    records = [
        exact_check("component_duality", count, component_count(dual)),
        exact_check("index_formula", index, 2**rs.g // count),
        close_check("det_q_relation", abs(dq.lhs), abs(dq.rhs), tol),
        close_check("bsd_duality", bsd_norm(rs, omega), bsd_norm(dual, omega_dual), tol),
    ]
    if oracle:
        records.append(close_check("real_period_oracle", real_period(rs, omega), real_period_oracle(rs, omega), tol))
        records.append(
            close_check(
                "real_period_oracle_dual", real_period(dual, omega_dual), real_period_oracle(dual, omega_dual), tol
            )
        )
    return records


def rebase_real_structure(rs: RealStructure, U) -> RealStructure:
    """Same real structure in the lattice basis ``M U``: ``C -> U^-1 C U``."""
    T = rebase_lattice(rs.torus, U)
    U = intlat.as_integer_matrix(U)
    return RealStructure(T, intlat.unimodular_inverse(U).dot(rs.C).dot(U))


def reparametrize_real_structure(rs: RealStructure, G) -> Tuple[RealStructure, complex]:
    """Same real structure after ``z' = G z``; returns the Hodge coefficient factor too."""
    T, factor = reparametrize(rs.torus, G)
    return RealStructure(T, rs.C), factor


# generated period matrices are kept far better conditioned than the
# torus degeneracy threshold requires
GENERATOR_MAX_COND = 1e4


def _random_unimodular(n: int, rng: np.random.Generator) -> np.ndarray:
    """Product of n random unit shears and a column permutation."""
    U = np.array(intlat.identity(n), copy=True)
    for _ in range(n if n > 1 else 0):
        i, j = rng.choice(n, size=2, replace=False)
        U[:, i] = U[:, i] + int(rng.choice([-1, 1])) * U[:, j]
    return intlat.as_integer_matrix(U[:, rng.permutation(n)])


def _random_scaled_orthogonal(g: int, rng: np.random.Generator, complex_entries: bool = False):
    """Haar orthogonal (or unitary) matrix with columns scaled into [0.5, 2]."""
    scale = rng.uniform(0.5, 2.0, size=g)
    if complex_entries:
        Q = unitary_group.rvs(g, random_state=rng) if g > 1 else np.exp(2j * np.pi * rng.random()) * np.eye(1)
    else:
        Q = ortho_group.rvs(g, random_state=rng) if g > 1 else rng.choice([-1.0, 1.0]) * np.eye(1)
    return Q * scale


def random_real_torus(
    g: int, a: int, b: int, r: int, seed: int, tol: float = DEFAULT_TOL
) -> Tuple[ComplexTorus, RealStructure]:
    """Random torus with real structure of Z[C2]-type (a trivial, b sign, r regular summands).

    ``C`` is a random unimodular conjugate of the block involution
    ``diag(1^a, (-1)^b, [[0,1],[1,0]]^r)``; the complex structure is
    assembled from a random isomorphism between the real +1 and -1
    eigenspaces of ``C``, followed by a random complex coordinate change.
    The result has ``2^b`` real components. Deterministic in its arguments.

    Raises:
        InvalidCounts: unless a, b, r >= 0 and a + r = b + r = g.
    """
    if min(a, b, r) < 0 or a + r != g or b + r != g or g < 1:
        raise InvalidCounts(f"need a, b, r >= 0 with a + r = b + r = g >= 1, got g={g} a={a} b={b} r={r}")
    rng = np.random.default_rng(seed)
    n = 2 * g
    C0 = np.zeros((n, n), dtype=object)
    for i in range(a):
        C0[i, i] = 1
    for i in range(a, a + b):
        C0[i, i] = -1
    for k in range(r):
        i = a + b + 2 * k
        C0[i, i + 1] = C0[i + 1, i] = 1
    conv = CoordinateConvention(g)
    I = intlat.identity(n)
    while True:
        W = _random_unimodular(n, rng)
        C = intlat.as_integer_matrix(W.dot(C0).dot(intlat.unimodular_inverse(W)))
        plus = intlat.kernel_basis(C - I).astype(float)
        minus = intlat.kernel_basis(C + I).astype(float)
        phi = _random_scaled_orthogonal(g, rng)
        # B sends standard real coordinates to lattice coordinates; J' = B J B^-1
        # swaps the two eigenspaces of C, so it anticommutes with C
        B = np.zeros((n, n))
        for k in range(g):
            B[:, conv.x_index(k + 1)] = plus[:, k]
            B[:, conv.y_index(k + 1)] = minus @ phi[:, k]
        G = _random_scaled_orthogonal(g, rng, complex_entries=True)
        M = realify(G, conv) @ np.linalg.inv(B)
        if np.linalg.cond(M) < GENERATOR_MAX_COND:
            break
    T = make_torus(g, M, tol)
    return T, RealStructure(T, C)
