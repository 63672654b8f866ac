# Harmonic analysis on a commutative finite hypergroup
#
# Characters are the multiplicative functions alpha with alpha(e) = 1 and
# alpha(xbar) = conj(alpha(x)); they diagonalize the convolution.  The Haar
# weights and the Plancherel weights make the Fourier transform an isometry.

import numpy as np

import hyperscheme as hs

label = np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
scheme = hs.verify_scheme(hs.RelationPartition(3, 2, label))
h = hs.from_scheme(scheme)

table = hs.characters(h)
print("characters (rows):")
print(table.chars.real)                # (1, 1) and (1, -1/2)
print("Plancherel weights:", table.plancherel)   # (1/3, 2/3)

# Fourier transform and inversion: f_hat(alpha) = sum f(x) conj(alpha) omega
f = np.array([0.0, 1.0])               # indicator of the edge relation
f_hat = hs.fourier(f, table)
print("\nfourier(1_{edge}) =", f_hat.real)       # (2, -1)
back = hs.plancherel_invert(f_hat, table)
print("inverted back:", back.real)

# Bochner: f is positive definite iff its character expansion is nonnegative.
# Characters themselves are PD; the sign function (1, -1) is not.
ok, mu = hs.positive_definite_check(h, table.chars[1], table)
print("\ncharacter is positive definite:", ok, " coefficients:", mu.real)
ok, mu = hs.positive_definite_check(h, [1.0, -1.0], table)
print("(1, -1) positive definite:", ok, " coefficients:", mu.real)

# For scheme-derived hypergroups the dual carries its own hypergroup
# structure: products of characters expand with nonnegative coefficients.
coeffs = hs.dual_convolution(h, table, 1, 1)
print("\nalpha *^ alpha =", coeffs.real, "(both coefficients nonnegative)")

# The cyclic group Z4 as a scheme: its characters are the classical DFT rows
# and the dual convolution is the group law of the dual group.
z4 = np.array([[(i + j) % 4 for j in range(4)] for i in range(4)])
_, z4_scheme = hs.from_double_cosets(z4, [0])
hz4 = hs.from_scheme(z4_scheme)
t4 = hs.characters(hz4)
print("\nZ4 character table:")
print(np.round(t4.chars, 6))
print("chi_1 *^ chi_1 =", np.round(hs.dual_convolution(hz4, t4, 1, 1).real, 9))
