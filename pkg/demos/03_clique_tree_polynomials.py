# The clique-tree graph family Gamma(a, b) and its orthogonal polynomials
#
# Gamma(a, b) is the distance-transitive graph in which every vertex lies in
# a cliques of size b; Gamma(2, 2) is the two-sided path, Gamma(a, 2) the
# a-regular tree.  Spheres around a vertex index a polynomial hypergroup:
# delta_m * delta_n = sum_k g(m, n; k) delta_k with exact rational g's, and
# the polynomials P_n linearize the same product over a real interval.

import math
from fractions import Fraction

import numpy as np

import hyperscheme as hs

params = hs.DTParams(a=3, b=2)          # the 3-regular tree

# Exact linearization coefficients: each product is a probability measure
# supported on |m - n| .. m + n with the right parity gaps.
print("g(1, 1):", hs.g_coeffs(1, 1, params))
print("g(2, 3):", hs.g_coeffs(2, 3, params))
hg = hs.PolyHypergroup(params)
mu = hg.convolve({1: Fraction(1)}, {2: Fraction(1)})
print("delta_1 * delta_2 =", mu, " mass:", sum(mu.values()))

# Sphere sizes are the Haar weights of the hypergroup.
print("\nhaar weights:", [hs.haar_weight(n, params) for n in range(6)])
ball = hs.build_ball(params, 5)
print("sphere sizes in a radius-5 ball:", ball.sphere_sizes())

# The polynomials: recurrence and closed form agree, and the two special
# points s1 (P_n = 1) and s0 (P_n = (1-b)^{-n}) pin the normalization.
s0, s1 = hs.special_points(params)
print("\nspecial points s0 =", s0, " s1 =", s1)
z = 1.7
x = (z + 1 / z) / 2
for n in (3, 10, 25):
    v_rec = hs.poly_eval(n, x, params)
    v_cf = hs.closed_form_eval(n, z, params)
    print(f"P_{n}({x:.4f}): recurrence {v_rec:.6e}  closed form {v_cf:.6e}")

# Product formula: P_m P_n = sum_k g(m, n; k) P_k pointwise.
print("\nproduct formula residual (m=7, n=9, x=0.41):",
      hs.product_formula_residual(7, 9, 0.41, params))

# Orthogonality: integrating P_m P_n against the spectral measure gives
# delta_{mn} / haar(n).  For b > a the measure carries an atom at s0.
for (m, n) in ((0, 0), (2, 2), (1, 3)):
    val = hs.ortho_measure_integrate(
        lambda t: hs.poly_eval(m, t, params) * hs.poly_eval(n, t, params),
        params)
    want = 1.0 / hs.haar_weight(n, params) if m == n else 0.0
    print(f"<P_{m}, P_{n}> = {val:.3e}   expected {want:.3e}")

# Positive definiteness: x -> P_{d(u,v)}(x) is a PSD kernel on the ball
# exactly when x lies in [s0, s1]; just outside it fails already at radius 1.
for x in (0.0, s1, s1 + 0.2):
    print(f"min Gram eigenvalue at x = {x:+.4f}:",
          f"{hs.gram_min_eig(x, ball):.3e}")
print("radius-1 ball at s1 + 0.2:",
      f"{hs.gram_min_eig(s1 + 0.2, hs.build_ball(params, 1)):.3e}")
