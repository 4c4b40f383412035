"""Acceptance suite: each test is one criterion and prints a single PASS/FAIL line.

Run alone with ``pytest -m acceptance -s`` (the lines are printed even without ``-s``).
"""

import time
from itertools import product

import numpy as np
import pytest

from conftest import SQRT3_2, leibniz_det
from torusperiods import intlat
from torusperiods.realstruct import (
    _random_unimodular,
    bsd_norm,
    component_count,
    det_q_relation_check,
    dual_real_structure,
    index_formula_check,
    make_real_structure,
    random_real_torus,
    real_period,
    rebase_real_structure,
    reparametrize_real_structure,
)
from torusperiods.report import relative_error
from torusperiods.torus import (
    HodgeForm,
    dual_torus,
    duality_transport,
    faltings_norm_sq,
    faltings_norm_sq_oracle,
    make_torus,
    rebase_lattice,
    reparametrize,
    serre_pairing,
)

pytestmark = pytest.mark.acceptance

REL = 1e-9


def uniform_torus(g, rng):
    """M with entries uniform in [-3, 3], redrawn while |det M| < 0.1."""
    while True:
        M = rng.uniform(-3.0, 3.0, size=(2 * g, 2 * g))
        if abs(np.linalg.det(M)) >= 0.1:
            return make_torus(g, M)


def random_form(g, rng):
    return HodgeForm(complex(*rng.normal(size=2)), g)


def splits(g):
    """Every valid (a, b, r) with a + r = b + r = g."""
    return [(g - r, g - r, r) for r in range(g + 1)]


class Criterion:
    def __init__(self, name, capsys):
        self.name, self.capsys = name, capsys
        self.failures = []
        self.worst = 0.0
        self.start = time.perf_counter()

    def rel(self, what, lhs, rhs):
        err = relative_error(lhs, rhs)
        self.worst = max(self.worst, err)
        if not err <= REL:
            self.failures.append(f"{what}: {lhs!r} vs {rhs!r} (rel {err:.3g})")

    def exact(self, what, ok, detail=""):
        if not ok:
            self.failures.append(f"{what} {detail}".strip())

    def finish(self, cases):
        elapsed = time.perf_counter() - self.start
        status = "PASS" if not self.failures else "FAIL"
        line = f"{status} {self.name}: {cases} cases, worst rel err {self.worst:.2e}, {elapsed:.1f}s"
        if self.failures:
            line += f"; {len(self.failures)} failures, first: {self.failures[0]}"
        with self.capsys.disabled():
            print("\n" + line)
        assert not self.failures, line


def test_ac1_faltings_duality(capsys):
    crit = Criterion("AC1 Faltings duality", capsys)
    cases = 0
    for g in (1, 2, 3, 4):
        rng = np.random.default_rng(1000 + g)
        for _ in range(200):
            T, w = uniform_torus(g, rng), random_form(g, rng)
            lhs = faltings_norm_sq(T, w)
            crit.rel(f"g={g} duality", lhs, faltings_norm_sq(dual_torus(T), duality_transport(T, w)))
            if g <= 3:
                crit.rel(f"g={g} oracle", lhs, faltings_norm_sq_oracle(T, w))
            cases += 1
    crit.finish(cases)


def test_ac2_serre_pairing_sign(capsys):
    crit = Criterion("AC2 Serre pairing sign", capsys)
    cases = 0
    for g in (1, 2, 3):
        rng = np.random.default_rng(2000 + g)
        for _ in range(100):
            T = uniform_torus(g, rng)
            crit.rel(f"g={g}", serre_pairing(T, HodgeForm(1, g), 1), (-1) ** (g * (g + 1) // 2) * T.det)
            cases += 1
    crit.finish(cases)


def test_ac3_elliptic_fixtures(capsys):
    crit = Criterion("AC3 elliptic fixtures", capsys)
    square = make_real_structure(make_torus(1, np.eye(2)), [[1, 0], [0, -1]])
    hexagonal = make_real_structure(make_torus(1, [[1.0, 0.5], [0.0, SQRT3_2]]), [[1, 1], [0, -1]])
    for label, rs, components, period in (("square", square, 2, 1.0 * 2), ("hexagonal", hexagonal, 1, 1.0)):
        count = component_count(rs)
        crit.exact(f"{label} components", count == components, f"got {count}")
        crit.rel(f"{label} real period", real_period(rs, HodgeForm(1, 1)), period)
        index, holds = index_formula_check(rs)
        crit.exact(f"{label} index formula", holds and index * count == 2, f"index {index}")
    crit.finish(2)


def test_ac4_real_duality(capsys):
    crit = Criterion("AC4 real duality", capsys)
    cases = 0
    for g in (1, 2, 3):
        rng = np.random.default_rng(4000 + g)
        options = splits(g)
        for k in range(100):
            a, b, r = options[k % len(options)]
            _, rs = random_real_torus(g, a, b, r, seed=int(rng.integers(2**32)))
            w = random_form(g, rng)
            dual = dual_real_structure(rs)
            count, dual_count = component_count(rs), component_count(dual)
            crit.exact(f"g={g} {(a, b, r)} components", count == dual_count == 2**b, f"{count}, {dual_count}")
            crit.rel(f"g={g} bsd", bsd_norm(rs, w), bsd_norm(dual, duality_transport(rs.torus, w)))
            dq = det_q_relation_check(rs)
            crit.rel(f"g={g} det Q", abs(dq.lhs), abs(dq.rhs))
            cases += 1
    crit.finish(cases)


def test_ac5_exact_algebra(capsys):
    crit = Criterion("AC5 exact algebra", capsys)
    rng = np.random.default_rng(5000)
    for k in range(1000):
        m, n = (int(x) for x in rng.integers(1, 9, size=2))
        if k % 4 == 0:
            n = m  # keep a healthy share of square cases for the cokernel check
        A = np.array(rng.integers(-9, 10, size=(m, n)).tolist(), dtype=object)
        H, U = intlat.hermite_normal_form(A)
        crit.exact("HNF A U = H", (A.dot(U) == H).all())
        crit.exact("HNF U unimodular", intlat.determinant(U) in (1, -1))
        crit.exact("HNF shape", _is_hnf(H))
        S, P, Q = intlat.smith_normal_form(A)
        crit.exact("SNF P A Q = S", (P.dot(A).dot(Q) == S).all())
        crit.exact("SNF unimodular", intlat.determinant(P) in (1, -1) and intlat.determinant(Q) in (1, -1))
        crit.exact("SNF shape", _is_snf(S))
        if m == n:
            d = intlat.determinant(A)
            if m <= 4:
                crit.exact("Bareiss vs Leibniz", d == leibniz_det(A.tolist()))
            if d:
                free, torsion = intlat.cokernel(A)
                crit.exact("cokernel order", free == 0 and torsion.order == abs(d), f"{torsion} vs {d}")
    crit.finish(1000)


def _is_hnf(H):
    m, n = H.shape
    col = 0
    for i in range(m):
        if col < n and H[i, col] != 0:
            if H[i, col] <= 0 or any(H[i, j] != 0 for j in range(col + 1, n)):
                return False
            if any(not 0 <= H[i, k] < H[i, col] for k in range(col)):
                return False
            col += 1
        elif any(H[i, j] != 0 for j in range(col, n)):
            return False
    return True


def _is_snf(S):
    d = [S[i, i] for i in range(min(S.shape))]
    off = all(S[i, j] == 0 for i, j in product(range(S.shape[0]), range(S.shape[1])) if i != j)
    chain = all((b % a == 0) if a else b == 0 for a, b in zip(d, d[1:]))
    return off and all(x >= 0 for x in d) and chain


def test_ac6_invariance(capsys):
    crit = Criterion("AC6 invariance", capsys)
    rng = np.random.default_rng(6000)
    for k in range(100):
        g = 1 + k % 3
        a, b, r = splits(g)[k % (g + 1)]
        T, rs = random_real_torus(g, a, b, r, seed=int(rng.integers(2**32)))
        w = random_form(g, rng)
        U = _random_unimodular(2 * g, rng)
        crit.rel("rebase faltings", faltings_norm_sq(rebase_lattice(T, U), w), faltings_norm_sq(T, w))
        crit.rel("rebase bsd", bsd_norm(rebase_real_structure(rs, U), w), bsd_norm(rs, w))
    for k in range(100):
        g = 1 + k % 3
        a, b, r = splits(g)[k % (g + 1)]
        T, rs = random_real_torus(g, a, b, r, seed=int(rng.integers(2**32)))
        w = random_form(g, rng)
        G = rng.normal(size=(g, g)) + 1j * rng.normal(size=(g, g))
        T2, factor = reparametrize(T, G)
        moved_form = HodgeForm(w.lam * factor, g)
        crit.rel("reparametrize faltings", faltings_norm_sq(T2, moved_form), faltings_norm_sq(T, w))
        rs2, _ = reparametrize_real_structure(rs, G)
        crit.rel("reparametrize bsd", bsd_norm(rs2, moved_form), bsd_norm(rs, w))
    crit.finish(200)
