"""
Exact lattice algebra
=====================

Integer matrices are stored as numpy object arrays of Python ints, so
nothing ever overflows or rounds. This script walks through the normal
forms that every later computation rests on.
"""

import numpy as np

from torusperiods import intlat

# A small integer matrix. Its columns span a sublattice of Z^3.
A = intlat.as_integer_matrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
print("A =\n", A)

# Hermite normal form: H = A U with U unimodular. H is the canonical basis
# of the column span, so two matrices span the same lattice exactly when
# their Hermite forms agree.
H, U = intlat.hermite_normal_form(A)
print("H =\n", H)
assert (A.dot(U) == H).all()

# Smith normal form: P A Q = S with a divisibility chain on the diagonal.
# The diagonal is the structure of the cokernel Z^3 / A Z^3.
S, P, Q = intlat.smith_normal_form(A)
print("S =\n", S)
free, torsion = intlat.cokernel(A)
print("cokernel: free rank", free, "torsion", torsion.invariant_factors, "order", torsion.order)
print("|det A| =", abs(intlat.determinant(A)))

# The same machinery measures how far a sublattice sits inside another.
# Here diag(2, 3) inside the standard lattice gives a cyclic group of order 6.
sub = intlat.as_integer_matrix([[2, 0], [0, 3]])
print("Z^2 / sub =", intlat.finite_quotient(sub, intlat.identity(2)).invariant_factors)

# Integer kernels come back saturated and in Hermite form, which makes them
# reproducible bases rather than arbitrary ones.
print("kernel of [1 1 1]:\n", intlat.kernel_basis(intlat.as_integer_matrix([[1, 1, 1]])))

# Big entries stay exact.
big = intlat.as_integer_matrix([[10**30, 0], [0, 10**20]])
print("invariant factors of a huge diagonal:", intlat.invariant_factors(big))
