"""
Hermitian norms on a torus and its dual
=======================================

A complex torus C^g / M Z^(2g) is described by its real period matrix M,
whose columns are lattice generators written in real coordinates
(x1, y1, x2, y2, ...). The dual torus has period matrix (M^T)^-1.

The top holomorphic form lam dz1 ^ ... ^ dzg has a hermitian norm, and
duality carries forms across with an explicit coefficient. This script
checks that the norm survives the trip, by a closed formula and by
integrating in the exterior algebra.
"""

import numpy as np

from torusperiods import (
    HodgeForm,
    dual_torus,
    duality_transport,
    faltings_norm_sq,
    faltings_norm_sq_oracle,
    make_torus,
    serre_pairing,
)

rng = np.random.default_rng(2)

# A generic genus-2 torus.
g = 2
T = make_torus(g, rng.uniform(-3, 3, size=(2 * g, 2 * g)))
omega = HodgeForm(0.7 - 1.2j, g)
print("det M =", T.det)

# Closed form and exterior-algebra integration of omega ^ conj(omega).
closed = faltings_norm_sq(T, omega)
integrated = faltings_norm_sq_oracle(T, omega)
print(f"norm^2 closed form {closed:.15g}, integrated {integrated:.15g}")

# Move to the dual torus, transporting the form as well.
D = dual_torus(T)
omega_dual = duality_transport(T, omega)
print("transported coefficient:", omega_dual.lam)
print(f"norm^2 on the dual       {faltings_norm_sq(D, omega_dual):.15g}")

# The transport coefficient comes from pairing dz with its conjugate.
# In interleaved coordinates that pairing is (-1)^(g(g+1)/2) det M.
print("pairing:", serre_pairing(T, HodgeForm(1, g), 1))
print("sign * det M:", (-1) ** (g * (g + 1) // 2) * T.det)

# Duality is an involution up to floating point.
back = dual_torus(D).M
print("max |M'' - M| =", np.max(np.abs(back - T.M)))
