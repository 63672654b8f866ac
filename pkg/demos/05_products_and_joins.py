# Building new hypergroups and schemes: direct products and joins
#
# The direct product convolves coordinatewise.  The join glues two
# hypergroups at their identities: the elements of the second sit "inside"
# and the non-identity elements of the first sit "outside", with the
# identity mass of an outside product spread over the inside Haar measure.

from fractions import Fraction

import numpy as np

import hyperscheme as hs

label = np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
k3 = hs.verify_scheme(hs.RelationPartition(3, 2, label))
h = hs.from_scheme(k3)

# Direct product: K3 x K3 has four classes with valencies 1, 2, 2, 4.
prod = hs.direct_product(h, h)
print("product order:", prod.n, " valid:", hs.verify_hypergroup(prod).ok)
pi = hs.ProductIndex(2, 2)
i = pi.flat(1, 1)
print("delta_(1,1) * delta_(1,1) =", prod.conv[i][i])

gs = hs.canonical_generalized(k3)
prod_s = hs.direct_product_scheme(gs, gs)
hs.verify_generalized(prod_s)
print("product scheme: points =", prod_s.omega_x.size,
      " rigid:", hs.finite_rigidity_check(prod_s))

# Join: K3 v K3.  The index set is {e} u D2' u D1' with 3 classes; the
# outside-outside product delta_out * delta_out spreads mass 1/6 onto the
# identity, 1/3 onto the inside class, 1/2 back outside.
joined = hs.join(h, h)
print("\njoin order:", joined.n, " valid:", hs.verify_hypergroup(joined).ok)
ji = hs.JoinIndex(2, 2, 0)
out = ji.from_first(1)
print("delta_out * delta_out =", joined.conv[out][out])
left, _, _ = hs.haar(joined)
print("join Haar weights:", left)       # (1, 2, 6)

# The join scheme realizes this on 9 points with kernels
# I (x) K2_h for inside classes and K1_h (x) omega2 for outside ones.
joined_s = hs.join_scheme(gs, gs)
hs.verify_generalized(joined_s)
print("join scheme: points =", joined_s.omega_x.size,
      " classes =", len(joined_s.kernels))

# Translation identity T2 for the join: with the join-normalized class
# weights (1/3, 2/3, 2) the weighted kernel sum reproduces omega_X exactly.
wD = np.array([Fraction(1, 3), Fraction(2, 3), Fraction(2)], dtype=object)
total = sum(float(wD[k]) * joined_s.kernels[k] for k in range(3))
print("T2 residual:", np.abs(total - joined_s.omega_x[None, :]).max())
