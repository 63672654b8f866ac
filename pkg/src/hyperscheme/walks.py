"""Discrete-time random walks: convolution powers on finite or polynomial
hypergroups, Monte Carlo walks driven by kernel families, and verification
that projecting a kernel walk yields the hypergroup walk.

Randomness comes from counter-based Philox streams; trial t uses the stream
seeded by seed + t, so results are reproducible and order-independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .dtgraph import Ball, DeformedKernels, PolyHypergroup
from .hypergroup import FiniteHypergroup
from .scheme import GeneralizedScheme


class SupportCap(Exception):
    pass


class WalkWouldExitBall(Exception):
    pass


class ParameterMismatch(Exception):
    pass


@dataclass(frozen=True)
class StepDistribution:
    """Probability weights over hypergroup elements (dict index -> mass)."""

    weights: dict

    def __post_init__(self):
        w = dict(self.weights)
        if any(float(v) < 0 for v in w.values()):
            raise ValueError("negative step probability")
        if abs(float(sum(w.values())) - 1.0) > 1e-12:
            raise ValueError("step probabilities must sum to 1")
        object.__setattr__(self, "weights", w)

    @property
    def max_support(self) -> int:
        return max(self.weights)


@dataclass(frozen=True)
class WalkResult:
    empirical: dict  # final state -> relative frequency
    trials: int
    steps: int
    seed: int
    start: int


def convolution_power(hg, mu: StepDistribution, t: int,
                      support_cap: int = 10_000) -> dict:
    """t-fold convolution power of mu; exact when mu and hg are exact.

    hg is a FiniteHypergroup or a PolyHypergroup; the result is a dict
    element -> mass.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    if isinstance(hg, PolyHypergroup):
        if t * mu.max_support > support_cap:
            raise SupportCap(f"support would exceed {support_cap}")
        convolve = hg.convolve
        identity = hg.identity
    elif isinstance(hg, FiniteHypergroup):
        def convolve(p, q):
            pv = [p.get(i, 0) for i in range(hg.n)]
            qv = [q.get(i, 0) for i in range(hg.n)]
            out = hg.convolve(pv, qv)
            return {i: v for i, v in enumerate(out) if v != 0}
        identity = hg.identity
    else:
        raise TypeError("unsupported hypergroup type")
    one = Fraction(1) if all(
        isinstance(v, (Fraction, int)) for v in mu.weights.values()) else 1.0
    dist = {identity: one}
    for _ in range(t):
        dist = convolve(dist, mu.weights)
    return dist


@dataclass
class KernelFamily:
    """Uniform view of the walk drivers: stochastic matrices indexed by
    labels, a point-to-label projection from a start point, and validity
    masks for rows that may be stepped from."""

    matrices: dict           # label -> (n, n) ndarray
    labels: np.ndarray       # (n, n) relation labels
    valid: dict              # label -> boolean row mask

    @classmethod
    def from_generalized(cls, gs: GeneralizedScheme) -> "KernelFamily":
        n = gs.partition.n_points
        mats = {i: gs.kernels[i] for i in range(gs.partition.n_relations)}
        valid = {i: np.ones(n, dtype=bool) for i in mats}
        return cls(matrices=mats, labels=gs.partition.label, valid=valid)

    @classmethod
    def from_ball(cls, ball: Ball) -> "KernelFamily":
        """Uniform sphere kernels on a ball; rows are valid while the full
        sphere stays inside the ball."""
        D = ball.dist_matrix
        depths = np.array([ball.depth(v) for v in range(ball.n)])
        mats, valid = {}, {}
        for h in range(ball.radius + 1):
            K = (D == h).astype(float)
            sums = K.sum(axis=1, keepdims=True)
            mats[h] = np.divide(K, sums, out=np.zeros_like(K), where=sums > 0)
            valid[h] = depths <= ball.radius - h
        mats[0] = np.eye(ball.n)
        return cls(matrices=mats, labels=D, valid=valid)

    @classmethod
    def from_deformed(cls, dk: DeformedKernels) -> "KernelFamily":
        return cls(matrices=dict(dk.kernels), labels=dk.ball.dist_matrix,
                   valid=dict(dk.valid))

    def support_labels(self, mu: StepDistribution) -> list:
        return sorted(h for h, m in mu.weights.items() if float(m) > 0)


def _as_family(kernels) -> KernelFamily:
    if isinstance(kernels, KernelFamily):
        return kernels
    if isinstance(kernels, GeneralizedScheme):
        return KernelFamily.from_generalized(kernels)
    if isinstance(kernels, Ball):
        return KernelFamily.from_ball(kernels)
    if isinstance(kernels, DeformedKernels):
        return KernelFamily.from_deformed(kernels)
    raise TypeError("unsupported kernel source")


def _check_reachable(fam: KernelFamily, mu: StepDistribution, start: int,
                     steps: int):
    """Refuse configurations whose walk could step from an invalid row."""
    if all(fam.valid[h].all() for h in fam.valid):
        return
    # on a ball: reachable depth grows by at most max_support per step
    reach = np.zeros(fam.labels.shape[0], dtype=bool)
    reach[start] = True
    for _ in range(steps):
        for h, m in mu.weights.items():
            if float(m) > 0 and not fam.valid[h][reach].all():
                raise WalkWouldExitBall(
                    "a reachable state lacks a full kernel row; enlarge the "
                    "ball or shorten the walk")
        nxt = reach.copy()
        for h, m in mu.weights.items():
            if float(m) > 0:
                nxt |= (fam.matrices[h][reach] > 0).any(axis=0)
        reach = nxt


def simulate_walk(kernels, mu: StepDistribution, steps: int, trials: int,
                  seed: int, start: int = 0) -> WalkResult:
    """Monte Carlo walk: per step sample a label h ~ mu, then a successor
    from the h-kernel row at the current state."""
    fam = _as_family(kernels)
    _check_reachable(fam, mu, start, steps)
    labels = fam.support_labels(mu)
    mu_cum = np.cumsum([float(mu.weights[h]) for h in labels])
    row_cum = {h: np.cumsum(fam.matrices[h], axis=1) for h in labels}
    counts: dict = {}
    for trial in range(trials):
        rng = np.random.Generator(np.random.Philox(seed + trial))
        u = rng.random(2 * steps)
        x = start
        for s in range(steps):
            h = labels[min(int(np.searchsorted(mu_cum, u[2 * s])),
                           len(labels) - 1)] if len(labels) > 1 else labels[0]
            row = row_cum[h][x]
            x = min(int(np.searchsorted(row, u[2 * s + 1])), row.size - 1)
        counts[x] = counts.get(x, 0) + 1
    empirical = {x: c / trials for x, c in counts.items()}
    return WalkResult(empirical=empirical, trials=trials, steps=steps,
                      seed=seed, start=start)


def propagate_and_project(kernels, mu: StepDistribution, steps: int,
                          start: int = 0) -> dict:
    """Deterministic form of the projection: push the point mass at start
    through the mu-mixture of kernels, then project states to labels."""
    fam = _as_family(kernels)
    _check_reachable(fam, mu, start, steps)
    n = fam.labels.shape[0]
    step_matrix = sum(float(m) * fam.matrices[h]
                      for h, m in mu.weights.items() if float(m) > 0)
    dist = np.zeros(n)
    dist[start] = 1.0
    for _ in range(steps):
        dist = dist @ step_matrix
    projected: dict = {}
    for y in range(n):
        if dist[y] > 0:
            k = int(fam.labels[start, y])
            projected[k] = projected.get(k, 0.0) + dist[y]
    return projected


def tv_distance(p: dict, q: dict) -> float:
    keys = set(p) | set(q)
    return 0.5 * sum(abs(float(p.get(k, 0)) - float(q.get(k, 0))) for k in keys)


def projection_check(walk: WalkResult, kernels, hg, mu: StepDistribution,
                     steps: int, start: int | None = None) -> float:
    """Compare the projected walk with the hypergroup convolution power.

    Returns the TV distance between the projected empirical law and
    convolution_power(hg, mu, steps).  The exact projected law from matrix
    propagation must agree with the convolution power to within 1e-10 (the
    deterministic form of the projection theorem); a mismatch raises.
    """
    if start is None:
        start = walk.start
    if steps != walk.steps or start != walk.start:
        raise ParameterMismatch("walk was generated with different parameters")
    fam = _as_family(kernels)
    exact = {k: float(v) for k, v in convolution_power(hg, mu, steps).items()}
    propagated = propagate_and_project(fam, mu, steps, start)
    if tv_distance(exact, propagated) > 1e-10:
        raise ParameterMismatch(
            "matrix propagation disagrees with the convolution power: "
            f"TV = {tv_distance(exact, propagated):.3e}")
    projected_emp: dict = {}
    for x, m in walk.empirical.items():
        k = int(fam.labels[start, x])
        projected_emp[k] = projected_emp.get(k, 0.0) + m
    return tv_distance(projected_emp, exact)
