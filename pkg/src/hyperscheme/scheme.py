"""Finite association schemes: verification, double-coset construction,
generalized (kernel-deformed) schemes, rigidity and translation checks.

All counting data (intersection numbers, valencies) is exact integer/rational
arithmetic.  User-supplied stochastic kernels are floats and compared with an
absolute tolerance of 1e-9.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

KERNEL_TOL = 1e-9


class AxiomViolation(Exception):
    """A partition / kernel family fails one of the scheme axioms.

    axiom_id identifies the failed axiom; witness holds the indices that
    exhibit the failure (contents depend on the axiom).
    """

    def __init__(self, axiom_id: str, witness=None, message: str = ""):
        self.axiom_id = axiom_id
        self.witness = witness
        super().__init__(message or f"axiom {axiom_id} violated, witness {witness}")


class NotAGroup(Exception):
    pass


class NotASubgroup(Exception):
    pass


class NotUnimodular(Exception):
    pass


@dataclass(frozen=True)
class RelationPartition:
    """A labeling of X x X by relation indices.

    label[x, y] = i means (x, y) lies in relation i.  Index 0 is reserved
    for the identity relation (the diagonal); constructors relabel inputs
    that use a different convention.
    """

    n_points: int
    n_relations: int
    label: np.ndarray
    identity_relation: int = 0

    def __post_init__(self):
        lab = np.asarray(self.label, dtype=np.int64)
        if lab.shape != (self.n_points, self.n_points):
            raise ValueError(f"label matrix must be {self.n_points}x{self.n_points}")
        if lab.min() < 0 or lab.max() >= self.n_relations:
            raise ValueError("relation index out of range")
        object.__setattr__(self, "label", lab)
        lab.setflags(write=False)

    def adjacency(self, i: int) -> np.ndarray:
        return (self.label == i).astype(np.int64)


@dataclass(frozen=True)
class AssociationScheme:
    """A verified finite association scheme.

    p[i, j, k] are the intersection numbers, valency[i] = p[i, inv(i), e].
    Instances are produced by verify_scheme and never built raw.
    """

    partition: RelationPartition
    involution: np.ndarray
    p: np.ndarray
    valency: np.ndarray

    @property
    def n_relations(self) -> int:
        return self.partition.n_relations

    @property
    def n_points(self) -> int:
        return self.partition.n_points

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.p, self.p.transpose(1, 0, 2)))

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.involution, np.arange(self.n_relations)))

    def is_unimodular(self) -> bool:
        return bool(np.array_equal(self.valency, self.valency[self.involution]))

    def stochastic_matrix(self, i: int) -> np.ndarray:
        """Renormalized adjacency A_i / valency_i (float)."""
        return self.partition.adjacency(i) / float(self.valency[i])


@dataclass(frozen=True)
class GeneralizedScheme:
    """A partition together with a family of stochastic kernels S_i and a
    positive point weight omega_x satisfying the adjoint relation."""

    partition: RelationPartition
    kernels: np.ndarray  # shape (n_relations, n_points, n_points)
    omega_x: np.ndarray  # shape (n_points,)
    involution: np.ndarray | None = None

    def __post_init__(self):
        k = np.asarray(self.kernels, dtype=float)
        w = np.asarray(self.omega_x, dtype=float)
        n, d = self.partition.n_points, self.partition.n_relations
        if k.shape != (d, n, n):
            raise ValueError(f"kernels must have shape ({d}, {n}, {n})")
        if w.shape != (n,):
            raise ValueError(f"omega_x must have shape ({n},)")
        object.__setattr__(self, "kernels", k)
        object.__setattr__(self, "omega_x", w)


def _recover_involution(partition: RelationPartition) -> np.ndarray:
    """Derive i -> bar(i) from label(y,x) at one representative per relation,
    then verify it holds globally."""
    lab = partition.label
    d = partition.n_relations
    inv = np.full(d, -1, dtype=np.int64)
    for i in range(d):
        xs, ys = np.nonzero(lab == i)
        if xs.size == 0:
            raise AxiomViolation("relation-empty", (i,), f"relation {i} never occurs")
        inv[i] = lab[ys[0], xs[0]]
    if not np.array_equal(lab.T, inv[lab]):
        bad = np.argwhere(lab.T != inv[lab])[0]
        raise AxiomViolation("involution", tuple(int(v) for v in bad),
                             "transpose labeling is not a relabeling by an involution")
    if not np.array_equal(inv[inv], np.arange(d)):
        raise AxiomViolation("involution", None, "relation map is not an involution")
    return inv


def verify_scheme(partition: RelationPartition) -> AssociationScheme:
    """Check the association scheme axioms and compute p-tensor and valencies.

    Raises AxiomViolation (with axiom id and witness) if the partition is not
    a scheme.
    """
    lab = partition.label
    n, d = partition.n_points, partition.n_relations
    e = partition.identity_relation

    diag = np.diag(lab)
    if not np.all(diag == e):
        x = int(np.nonzero(diag != e)[0][0])
        raise AxiomViolation("diagonal", (x, x), "label(x,x) != identity relation")
    off = lab == e
    np.fill_diagonal(off, False)
    if off.any():
        x, y = map(int, np.argwhere(off)[0])
        raise AxiomViolation("diagonal", (x, y), "identity relation off the diagonal")

    inv = _recover_involution(partition)

    adj = np.stack([partition.adjacency(i) for i in range(d)])
    p = np.zeros((d, d, d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            prod = adj[i] @ adj[j]
            for k in range(d):
                mask = lab == k
                vals = prod[mask]
                v0 = vals[0]
                if not np.all(vals == v0):
                    xs, ys = np.nonzero(mask)
                    bad = int(np.nonzero(vals != v0)[0][0])
                    witness = (i, j, k, int(xs[0]), int(ys[0]),
                               int(xs[bad]), int(ys[bad]))
                    raise AxiomViolation(
                        "counting", witness,
                        f"p_({i},{j})^{k} is not constant: "
                        f"{int(v0)} at ({xs[0]},{ys[0]}) vs {int(vals[bad])} "
                        f"at ({xs[bad]},{ys[bad]})")
                p[i, j, k] = v0

    valency = np.array([p[i, inv[i], e] for i in range(d)], dtype=np.int64)
    return AssociationScheme(partition=partition, involution=inv, p=p, valency=valency)


def _verify_group_table(cayley: np.ndarray) -> int:
    """Check a multiplication table is a group; return the identity index."""
    t = np.asarray(cayley, dtype=np.int64)
    n = t.shape[0]
    if t.shape != (n, n) or t.min() < 0 or t.max() >= n:
        raise NotAGroup("table is not square over valid indices")
    ident = None
    for g in range(n):
        if np.array_equal(t[g], np.arange(n)) and np.array_equal(t[:, g], np.arange(n)):
            ident = g
            break
    if ident is None:
        raise NotAGroup("no identity element")
    for g in range(n):
        if ident not in t[g]:
            raise NotAGroup(f"element {g} has no inverse")
    # exhaustive associativity scan; fine at desk scale
    for g in range(n):
        if not np.array_equal(t[t[g]], t[g][t]):
            raise NotAGroup(f"associativity fails involving element {g}")
    return ident


def from_double_cosets(cayley: np.ndarray, subgroup) -> tuple[np.ndarray, AssociationScheme]:
    """Scheme of the coset space G/H with relations the double cosets HgH.

    Returns (coset_of: array mapping group elements to coset indices, scheme).
    """
    t = np.asarray(cayley, dtype=np.int64)
    n = t.shape[0]
    ident = _verify_group_table(t)
    H = sorted(set(int(h) for h in subgroup))
    if ident not in H:
        raise NotASubgroup("identity not in subgroup")
    inverse = np.empty(n, dtype=np.int64)
    for g in range(n):
        inverse[g] = int(np.nonzero(t[g] == ident)[0][0])
    for h1 in H:
        if inverse[h1] not in H:
            raise NotASubgroup(f"{h1} has inverse outside the subset")
        for h2 in H:
            if t[h1, h2] not in H:
                raise NotASubgroup(f"{h1}*{h2} leaves the subset")

    # left cosets gH
    coset_of = np.full(n, -1, dtype=np.int64)
    reps = []
    for g in range(n):
        if coset_of[g] < 0:
            idx = len(reps)
            reps.append(g)
            for h in H:
                coset_of[t[g, h]] = idx
    n_cosets = len(reps)

    # double cosets HgH, relabeled so the coset of the identity gets index 0
    dcoset_of = np.full(n, -1, dtype=np.int64)
    n_dcosets = 0
    for g in [ident] + [g for g in range(n) if g != ident]:
        if dcoset_of[g] < 0:
            idx = n_dcosets
            n_dcosets += 1
            for h1 in H:
                for h2 in H:
                    dcoset_of[t[t[h1, g], h2]] = idx

    lab = np.empty((n_cosets, n_cosets), dtype=np.int64)
    for x, gx in enumerate(reps):
        for y, gy in enumerate(reps):
            lab[x, y] = dcoset_of[t[inverse[gx], gy]]
    partition = RelationPartition(n_points=n_cosets, n_relations=n_dcosets, label=lab)
    return coset_of, verify_scheme(partition)


def canonical_generalized(scheme: AssociationScheme) -> GeneralizedScheme:
    """The canonical kernel family S_i = A_i / valency_i with counting omega_x."""
    if not scheme.is_unimodular():
        raise NotUnimodular("canonical kernels need a unimodular scheme")
    kernels = np.stack([scheme.stochastic_matrix(i)
                        for i in range(scheme.n_relations)])
    return GeneralizedScheme(partition=scheme.partition, kernels=kernels,
                             omega_x=np.ones(scheme.n_points),
                             involution=scheme.involution.copy())


def verify_generalized(gs: GeneralizedScheme, tol: float = KERNEL_TOL) -> np.ndarray:
    """Check the generalized-scheme axioms; return the deformed tensor p~.

    Axiom ids follow the five conditions of the definition: (1) constant
    counting on the partition, (2) support matching, (3) nonnegative span
    closure, (4) identity kernel, (5) adjoint relation.
    """
    part = gs.partition
    n, d = part.n_points, part.n_relations
    e = part.identity_relation
    lab = part.label
    S = gs.kernels

    # (1) underlying partition is a scheme (checked explicitly; see Remark 4.6
    # style open question -- never assumed)
    scheme = verify_scheme(part)

    # (2) support condition and row-stochasticity
    for i in range(d):
        pos = S[i] > tol
        want = lab == i
        if not np.array_equal(pos, want):
            x, y = map(int, np.argwhere(pos != want)[0])
            raise AxiomViolation("2", (i, x, y),
                                 f"support of kernel {i} does not match relation {i}")
        rows = S[i].sum(axis=1)
        if np.abs(rows - 1.0).max() > 1e-8:
            x = int(np.argmax(np.abs(rows - 1.0)))
            raise AxiomViolation("2", (i, x), f"kernel {i} row {x} not stochastic")
        if S[i].min() < -tol:
            x, y = map(int, np.argwhere(S[i] < -tol)[0])
            raise AxiomViolation("2", (i, x, y), "negative kernel entry")

    # (4) identity kernel
    if np.abs(S[e] - np.eye(n)).max() > tol:
        raise AxiomViolation("4", (e,), "identity kernel is not the identity matrix")

    # (5) adjoint relation, recovering the involution from the partition
    inv = scheme.involution
    w = gs.omega_x
    if w.min() <= 0:
        raise AxiomViolation("5", None, "omega_x must be strictly positive")
    for i in range(d):
        lhs = w[:, None] * S[inv[i]]            # omega(y) * S_bar(i)(y, x)
        rhs = (w[:, None] * S[i]).T             # omega(x) * S_i(x, y), transposed
        if np.abs(lhs - rhs).max() > tol * max(1.0, w.max()):
            y, x = map(int, np.argwhere(np.abs(lhs - rhs) > tol * max(1.0, w.max()))[0])
            raise AxiomViolation("5", (i, x, y), "adjoint relation fails")

    # (3) span closure: read each coefficient off one representative entry,
    # then verify the whole matrix identity
    ptilde = np.zeros((d, d, d))
    for i in range(d):
        for j in range(d):
            prod = S[i] @ S[j]
            recon = np.zeros((n, n))
            for k in range(d):
                mask = lab == k
                sk = np.where(mask, S[k], 0.0)
                if not mask.any():
                    continue
                flat = np.argmax(np.where(mask, S[k], -np.inf))
                x, y = np.unravel_index(flat, (n, n))
                coeff = prod[x, y] / S[k][x, y]
                if coeff < -tol:
                    raise AxiomViolation("3", (i, j, k), "negative span coefficient")
                coeff = max(coeff, 0.0)
                ptilde[i, j, k] = coeff
                recon += coeff * sk
            if np.abs(prod - recon).max() > 1e-8:
                x, y = map(int, np.argwhere(np.abs(prod - recon) > 1e-8)[0])
                raise AxiomViolation("3", (i, j, int(lab[x, y]), x, y),
                                     "kernel product leaves the span of the family")
    return ptilde


def finite_rigidity_check(gs: GeneralizedScheme, tol: float = KERNEL_TOL) -> bool:
    """True iff every kernel equals the renormalized adjacency of its relation.

    The finite rigidity theorem predicts this holds for every input accepted
    by verify_generalized.
    """
    scheme = verify_scheme(gs.partition)
    for i in range(gs.partition.n_relations):
        if np.abs(gs.kernels[i] - scheme.stochastic_matrix(i)).max() > 1e-8:
            return False
    return True


def translation_property_check(scheme: AssociationScheme) -> tuple[bool, bool]:
    """Check the two translation properties on a unimodular scheme.

    T1: for all h, x and indicators f = 1_{r}, f_h(pi(x,.)) == T_h(f(pi(x,.)))
    exactly, with the hypergroup convolution on the label side.
    T2: sum_h valency_h * S_h(x, .) is the counting-measure row for all x.
    Both computed in exact rational arithmetic.
    """
    if not scheme.is_unimodular():
        raise NotUnimodular("translation properties are defined for unimodular schemes")
    d = scheme.n_relations
    lab = scheme.partition.label
    inv = scheme.involution
    p = scheme.p
    w = scheme.valency

    # T1 reduces to (1/w_h) p_{r, bar h}^{label(x,y)} == (delta_label * delta_h)({r})
    # == (w_r / (w_label w_h)) p_{label, h}^{r}; both sides exact rationals.
    t1 = True
    for h in range(d):
        for r in range(d):
            for k in range(d):  # k = label(x, y)
                lhs = Fraction(int(p[r, inv[h], k]), int(w[h]))
                rhs = Fraction(int(w[r]) * int(p[k, h, r]), int(w[k]) * int(w[h]))
                if lhs != rhs:
                    t1 = False

    # T2: sum_h w_h * A_h / w_h = sum_h A_h = all-ones matrix
    total = np.zeros_like(lab)
    for h in range(d):
        total = total + scheme.partition.adjacency(h)
    t2 = bool(np.all(total == 1))
    return t1, t2
