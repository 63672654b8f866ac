"""Direct products and joins of finite hypergroups and of finite generalized
scheme kernel families.

Index layouts are fixed for reproducible files: products are row-major over
(i1, i2); joins list the compact factor D2 first and then D1 without its
identity e1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .hypergroup import FiniteHypergroup, _freeze, haar
from .scheme import GeneralizedScheme, RelationPartition


@dataclass(frozen=True)
class ProductIndex:
    """Row-major bijection between pairs (i1, i2) and flat indices."""

    n1: int
    n2: int

    def flat(self, i1: int, i2: int) -> int:
        return i1 * self.n2 + i2

    def pair(self, idx: int) -> tuple:
        return divmod(idx, self.n2)

    @property
    def size(self) -> int:
        return self.n1 * self.n2


@dataclass(frozen=True)
class JoinIndex:
    """Flat layout of (D1 without e1) after D2; the join identity is e2."""

    n1: int
    n2: int
    e1: int

    def from_second(self, j: int) -> int:
        return j

    def from_first(self, i: int) -> int:
        if i == self.e1:
            raise ValueError("e1 is merged into the compact factor")
        return self.n2 + (i if i < self.e1 else i - 1)

    def decompose(self, idx: int) -> tuple:
        """Returns ('second', j) for the D2 block, ('first', i) otherwise."""
        if idx < self.n2:
            return "second", idx
        i = idx - self.n2
        return "first", i if i < self.e1 else i + 1

    @property
    def size(self) -> int:
        return self.n2 + self.n1 - 1


def direct_product(h1: FiniteHypergroup, h2: FiniteHypergroup) -> FiniteHypergroup:
    """Tensor-product convolution c[(i1,i2)][(j1,j2)][(k1,k2)] = c1 c2."""
    pi = ProductIndex(h1.n, h2.n)
    n = pi.size
    exact = h1.is_exact and h2.is_exact
    zero = Fraction(0) if exact else 0.0
    conv = [[[zero] * n for _ in range(n)] for _ in range(n)]
    for i1 in range(h1.n):
        for j1 in range(h1.n):
            for k1 in range(h1.n):
                c1 = h1.conv[i1][j1][k1]
                if not c1:
                    continue
                for i2 in range(h2.n):
                    for j2 in range(h2.n):
                        for k2 in range(h2.n):
                            c2 = h2.conv[i2][j2][k2]
                            if c2:
                                conv[pi.flat(i1, i2)][pi.flat(j1, j2)][
                                    pi.flat(k1, k2)] = c1 * c2
    involution = np.array([pi.flat(int(h1.involution[i1]), int(h2.involution[i2]))
                           for i1 in range(h1.n) for i2 in range(h2.n)])
    return FiniteHypergroup(
        n=n, conv=_freeze(conv), identity=pi.flat(h1.identity, h2.identity),
        involution=involution,
        scheme_derived=h1.scheme_derived and h2.scheme_derived)


def direct_product_scheme(gs1: GeneralizedScheme,
                          gs2: GeneralizedScheme) -> GeneralizedScheme:
    """Kernels K_{(h1,h2)} = K_{h1} (x) K_{h2} on X1 x X2."""
    p1, p2 = gs1.partition, gs2.partition
    px = ProductIndex(p1.n_points, p2.n_points)
    pd = ProductIndex(p1.n_relations, p2.n_relations)
    label = p1.label[:, None, :, None] * pd.n2 + p2.label[None, :, None, :]
    label = label.reshape(px.size, px.size)
    partition = RelationPartition(n_points=px.size, n_relations=pd.size,
                                  label=label)
    kernels = np.stack([np.kron(gs1.kernels[h1], gs2.kernels[h2])
                        for h1 in range(pd.n1) for h2 in range(pd.n2)])
    omega_x = np.kron(gs1.omega_x, gs2.omega_x)
    return GeneralizedScheme(partition=partition, kernels=kernels,
                             omega_x=omega_x)


def join(h1: FiniteHypergroup, h2: FiniteHypergroup) -> FiniteHypergroup:
    """Join of a discrete factor h1 with a compact factor h2.

    Identity is e2; within the D2 block convolution is *2, within the D1
    block it is *1 with the e1-mass spread over the normalized Haar weights
    of h2, and mixed pairs collapse onto the D1 element.
    """
    ji = JoinIndex(h1.n, h2.n, h1.identity)
    n = ji.size
    left2, _, _ = haar(h2)
    exact = h1.is_exact and h2.is_exact
    total2 = sum(left2)
    omega2 = [w / total2 for w in left2] if exact else \
        [float(w) / float(total2) for w in left2]
    zero = Fraction(0) if exact else 0.0
    one = Fraction(1) if exact else 1.0
    conv = [[[zero] * n for _ in range(n)] for _ in range(n)]

    for x in range(n):
        tx, ix = ji.decompose(x)
        for y in range(n):
            ty, iy = ji.decompose(y)
            row = conv[x][y]
            if tx == "second" and ty == "second":
                for k2 in range(h2.n):
                    row[ji.from_second(k2)] = h2.conv[ix][iy][k2]
            elif tx == "first" and ty == "first":
                masses = h1.conv[ix][iy]
                for k1 in range(h1.n):
                    if k1 != h1.identity and masses[k1]:
                        row[ji.from_first(k1)] = masses[k1]
                e_mass = masses[h1.identity]
                if e_mass:
                    for k2 in range(h2.n):
                        row[ji.from_second(k2)] = e_mass * omega2[k2]
            elif tx == "first":
                row[x] = one
            else:
                row[y] = one

    involution = np.empty(n, dtype=np.int64)
    for k2 in range(h2.n):
        involution[ji.from_second(k2)] = ji.from_second(int(h2.involution[k2]))
    for k1 in range(h1.n):
        if k1 != h1.identity:
            involution[ji.from_first(k1)] = ji.from_first(int(h1.involution[k1]))
    return FiniteHypergroup(
        n=n, conv=_freeze(conv), identity=ji.from_second(h2.identity),
        involution=involution,
        scheme_derived=h1.scheme_derived and h2.scheme_derived)


def join_scheme(gs1: GeneralizedScheme, gs2: GeneralizedScheme) -> GeneralizedScheme:
    """Join of kernel families on X = X1 x X2.

    Relations follow the JoinIndex layout; kernels are delta-preserving in
    the first coordinate for h in D2 and spread the second coordinate over
    the normalized point weights of the second factor for h in D1 - {e1}.
    """
    p1, p2 = gs1.partition, gs2.partition
    e1 = p1.identity_relation
    ji = JoinIndex(p1.n_relations, p2.n_relations, e1)
    px = ProductIndex(p1.n_points, p2.n_points)
    wx2 = gs2.omega_x / gs2.omega_x.sum()

    same1 = np.eye(p1.n_points, dtype=bool)
    lab2_mapped = np.vectorize(ji.from_second)(p2.label)
    lab1_mapped = np.where(p1.label == e1, 0,
                           np.vectorize(lambda i: ji.from_first(i)
                                        if i != e1 else 0)(p1.label))
    label = np.where(same1[:, None, :, None],
                     lab2_mapped[None, :, None, :],
                     lab1_mapped[:, None, :, None])
    label = np.broadcast_to(
        label, (p1.n_points, p2.n_points, p1.n_points, p2.n_points))
    label = label.reshape(px.size, px.size)
    partition = RelationPartition(n_points=px.size, n_relations=ji.size,
                                  label=label)

    eye1 = np.eye(p1.n_points)
    spread2 = np.tile(wx2, (p2.n_points, 1))
    kernels = np.empty((ji.size, px.size, px.size))
    for h2 in range(p2.n_relations):
        kernels[ji.from_second(h2)] = np.kron(eye1, gs2.kernels[h2])
    for h1 in range(p1.n_relations):
        if h1 != e1:
            kernels[ji.from_first(h1)] = np.kron(gs1.kernels[h1], spread2)
    omega_x = np.kron(gs1.omega_x, wx2)
    return GeneralizedScheme(partition=partition, kernels=kernels,
                             omega_x=omega_x)
