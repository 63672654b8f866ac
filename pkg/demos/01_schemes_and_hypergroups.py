# Association schemes and their hypergroups
#
# An association scheme partitions X x X into relations R_0 (the diagonal),
# R_1, ... such that the composition counts p_{i,j}^k depend only on the
# relation of the endpoints.  Renormalizing the relation counts turns the
# labels into a finite hypergroup: a convolution of point measures whose
# products are probability measures.

import numpy as np

import hyperscheme as hs

# The complete graph K3: relation 0 is the diagonal, relation 1 "adjacent".
label = np.array([[0, 1, 1],
                  [1, 0, 1],
                  [1, 1, 0]])
partition = hs.RelationPartition(n_points=3, n_relations=2, label=label)
scheme = hs.verify_scheme(partition)
print("intersection numbers p[i,j,k]:")
print(scheme.p)
print("valencies:", scheme.valency)          # (1, 2): each point has 2 neighbors

# The same scheme arises from double cosets.  Take the symmetric group S3
# and the two-element subgroup generated by a transposition: the three
# cosets form K3 and the two double cosets are its relations.
perms = [(0, 1, 2), (1, 0, 2), (2, 1, 0), (0, 2, 1), (1, 2, 0), (2, 0, 1)]
compose = lambda p, q: tuple(p[q[i]] for i in range(3))
table = np.array([[perms.index(compose(p, q)) for q in perms] for p in perms])
coset_of, coset_scheme = hs.from_double_cosets(table, subgroup=[0, 1])
print("\nS3 // <(12)>: points =", coset_scheme.n_points,
      " relations =", coset_scheme.n_relations)

# The hypergroup of the scheme: delta_1 * delta_1 = 1/2 delta_0 + 1/2 delta_1,
# reflecting that a 2-step walk along edges of a triangle returns home half
# the time.  Everything is exact rational arithmetic.
h = hs.from_scheme(scheme)
print("\ndelta_1 * delta_1 =", h.conv[1][1])
left, right, unimodular = hs.haar(h)
print("Haar weights:", left, " unimodular:", unimodular)

# Generalized schemes relax the kernels from A_i / valency to arbitrary
# stochastic families -- but in the finite case rigidity bites: the only
# family passing the axioms is the canonical one.
gs = hs.canonical_generalized(scheme)
ptilde = hs.verify_generalized(gs)
print("\ncanonical kernel family accepted, p~[1,1] =", ptilde[1, 1])
print("rigidity (kernels are A_i / valency):", hs.finite_rigidity_check(gs))
print("translation properties (T1, T2):",
      hs.translation_property_check(scheme))
