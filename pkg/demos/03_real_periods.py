"""
Real points, components and real periods
========================================

A real structure is an integer involution C of the lattice that acts
antilinearly on C^g. Its real points form a compact real torus with some
number of connected components, and integrating |omega| over them gives
the real period.

We start with the two classical elliptic curves and then generate a
random genus-3 example with a prescribed decomposition of the lattice.
"""

import numpy as np

from torusperiods import (
    HodgeForm,
    component_count,
    det_q_relation_check,
    dual_real_structure,
    duality_transport,
    index_formula_check,
    make_real_structure,
    make_torus,
    random_real_torus,
    real_period,
)

# The square lattice Z[i] with complex conjugation: two real circles.
square = make_real_structure(make_torus(1, np.eye(2)), [[1, 0], [0, -1]])
# The hexagonal lattice with conjugation tau -> 1 - tau: a single circle.
hexagonal = make_real_structure(
    make_torus(1, [[1.0, 0.5], [0.0, np.sqrt(3) / 2]]), [[1, 1], [0, -1]]
)

for name, rs in (("square", square), ("hexagonal", hexagonal)):
    index, holds = index_formula_check(rs)
    print(
        f"{name:>9}: components {component_count(rs)}, real period {real_period(rs, HodgeForm(1, 1)):.6g}, "
        f"index {index} (index * components = 2^g: {holds})"
    )

# A random genus-3 torus whose lattice splits as two trivial summands, two
# sign summands and one regular summand. The component count is 2^b.
T, rs = random_real_torus(3, a=2, b=2, r=1, seed=11)
print("\nC =\n", rs.C)
print("components:", component_count(rs))

# The dual torus carries the real structure -C^T; its components and its
# real period (with the transported form) agree with the original.
omega = HodgeForm(1, 3)
dual = dual_real_structure(rs)
print("dual components:", component_count(dual))
print(f"real period {real_period(rs, omega):.15g}")
print(f"dual period {real_period(dual, duality_transport(T, omega)):.15g}")

# The imaginary part of the anti-invariant periods, written in the basis of
# invariant ones, has a determinant fixed by the component count.
report = det_q_relation_check(rs)
print(f"det Q = {report.lhs:.12g}, predicted {report.rhs:.12g}, holds: {report.holds}")
