"""The two-parameter family of distance-transitive clique-tree graphs: exact
polynomial hypergroup on the nonnegative integers, orthogonal-polynomial
evaluators, orthogonality measure, finite balls with the exact graph metric,
positive-definiteness tests, and boundary-ray deformations.

Graph(a, b) is the infinite graph in which every vertex lies in a complete
graphs of size b, glued in a tree-like fashion; a, b >= 2.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
import scipy.linalg

DEFAULT_BALL_CAP = 200_000


class DomainError(Exception):
    pass


class QuadratureFailure(Exception):
    pass


class BallTooLarge(Exception):
    pass


class NonUniqueMinimizer(Exception):
    pass


class UnsupportedParams(Exception):
    pass


@dataclass(frozen=True)
class DTParams:
    a: int
    b: int

    def __post_init__(self):
        if self.a < 2 or self.b < 2:
            raise DomainError("parameters must satisfy a, b >= 2")


def haar_weight(n: int, params: DTParams) -> int:
    """Haar weight: 1 at n=0, a(a-1)^{n-1}(b-1)^n for n >= 1 (= sphere size)."""
    a, b = params.a, params.b
    return 1 if n == 0 else a * (a - 1) ** (n - 1) * (b - 1) ** n


def g_coeffs(m: int, n: int, params: DTParams) -> dict:
    """Exact linearization coefficients of delta_m * delta_n.

    Supported on [|m-n|, m+n] with the same parity pattern as the distance
    distribution of two spheres; nonnegative rationals summing to 1.
    """
    a, b = params.a, params.b
    if m == 0 or n == 0:
        return {m + n: Fraction(1)}
    mn = min(m, n)
    lo = abs(m - n)
    g = {
        m + n: Fraction(a - 1, a),
        lo: Fraction(1, a * (a - 1) ** (mn - 1) * (b - 1) ** mn),
    }
    if b > 2:
        for k in range(mn):
            g[lo + 2 * k + 1] = Fraction(
                b - 2, a * (a - 1) ** (mn - k - 1) * (b - 1) ** (mn - k))
    if a > 2:
        for k in range(mn - 1):
            g[lo + 2 * k + 2] = Fraction(
                a - 2, a * (a - 1) ** (mn - k - 1) * (b - 1) ** (mn - k - 1))
    return g


def poly_eval(n: int, x, params: DTParams):
    """P_n(x) by the three-term recurrence; P_0 = 1 and
    P_1(x) = (2/a) sqrt((a-1)/(b-1)) x + (b-2)/(a(b-1))."""
    a, b = params.a, params.b
    if n < 0:
        raise DomainError("n must be nonnegative")
    p1 = (2.0 / a) * math.sqrt((a - 1) / (b - 1)) * x + (b - 2) / (a * (b - 1))
    if n == 0:
        return 1.0
    prev, cur = 1.0, p1
    # P_1 P_k = P_{k-1}/(a(b-1)) + (b-2)/(a(b-1)) P_k + (a-1)/a P_{k+1}
    for _ in range(n - 1):
        nxt = (a / (a - 1)) * (
            p1 * cur - (b - 2) / (a * (b - 1)) * cur - prev / (a * (b - 1)))
        prev, cur = cur, nxt
    return cur


def closed_form_eval(n: int, z: complex, params: DTParams) -> complex:
    """P_n((z + 1/z)/2) = (c(z) z^n + c(1/z) z^{-n}) / ((a-1)(b-1))^{n/2}."""
    a, b = params.a, params.b
    z = complex(z)
    if abs(z) < 1e-300 or abs(z - 1) < 1e-12 or abs(z + 1) < 1e-12:
        raise DomainError("z must avoid 0 and +/-1")

    def cfun(w):
        return ((a - 1) * w - 1 / w
                + (b - 2) * math.sqrt(a - 1) / math.sqrt(b - 1)) / (a * (w - 1 / w))

    return (cfun(z) * z ** n + cfun(1 / z) * z ** (-n)) / ((a - 1) * (b - 1)) ** (n / 2)


def special_points(params: DTParams):
    """(s0, s1): P_n(s1) = 1 and P_n(s0) = (1-b)^{-n} for all n."""
    a, b = params.a, params.b
    r = 2.0 * math.sqrt((a - 1) * (b - 1))
    return (2 - a - b) / r, (a * b - a - b + 2) / r


def product_formula_residual(m: int, n: int, x: float, params: DTParams) -> float:
    """|P_m(x) P_n(x) - sum_k g_{m,n,k} P_k(x)|."""
    lhs = poly_eval(m, x, params) * poly_eval(n, x, params)
    rhs = sum(float(c) * poly_eval(k, x, params)
              for k, c in g_coeffs(m, n, params).items())
    return abs(lhs - rhs)


def ortho_measure_integrate(f, params: DTParams, tol: float = 1e-10,
                            max_nodes: int = 1 << 14) -> float:
    """Integral of f against the normalized orthogonality measure.

    Absolutely continuous part (a/2pi) sqrt(1-x^2)/((s1-x)(x-s0)) dx on
    [-1,1], evaluated with Gauss-Legendre after x = cos(theta) (which
    removes the inverse-square-root endpoint behavior), plus an atom of
    mass (b-a)/b at s0 when b > a.
    """
    a, b = params.a, params.b
    s0, s1 = special_points(params)

    def integrand(theta):
        x = np.cos(theta)
        return f(x) * (a / (2 * np.pi)) * np.sin(theta) ** 2 / ((s1 - x) * (x - s0))

    prev = None
    n = 64
    while n <= max_nodes:
        nodes, weights = np.polynomial.legendre.leggauss(n)
        theta = (nodes + 1) * (np.pi / 2)
        val = float(np.sum(weights * integrand(theta)) * (np.pi / 2))
        if prev is not None and abs(val - prev) <= tol * max(1.0, abs(val)):
            if b > a:
                val += (b - a) / b * f(s0)
            return val
        prev = val
        n *= 2
    raise QuadratureFailure(f"no convergence with up to {max_nodes} nodes")


class PolyHypergroup:
    """The polynomial hypergroup on N_0 attached to Graph(a, b), with lazy
    exact coefficients, plus its positive-semicharacter deformations.

    Undeformed instances carry exact Fractions; a deformation at x0 >= 1
    rescales by alpha0(h) = P_h(x0) and works in doubles.
    """

    def __init__(self, params: DTParams, x0: float | None = None):
        self.params = params
        self.x0 = x0
        self._g_cache: dict = {}
        if x0 is not None:
            self._alpha = lru_cache(maxsize=None)(
                lambda h: poly_eval(h, x0, params))

    @property
    def identity(self) -> int:
        return 0

    def alpha0(self, h: int) -> float:
        return 1.0 if self.x0 is None else self._alpha(h)

    def haar(self, n: int):
        w = haar_weight(n, self.params)
        return w if self.x0 is None else self.alpha0(n) ** 2 * w

    def g(self, m: int, n: int) -> dict:
        if (m, n) not in self._g_cache:
            base = g_coeffs(m, n, self.params)
            if self.x0 is not None:
                am, an = self.alpha0(m), self.alpha0(n)
                base = {k: self.alpha0(k) / (am * an) * float(c)
                        for k, c in base.items()}
            self._g_cache[(m, n)] = base
        return self._g_cache[(m, n)]

    def convolve(self, mu: dict, nu: dict) -> dict:
        out: dict = {}
        for m, cm in mu.items():
            for n, cn in nu.items():
                for k, g in self.g(m, n).items():
                    out[k] = out.get(k, 0) + cm * cn * g
        return {k: v for k, v in out.items() if v != 0}

    def deform(self, x0: float) -> "PolyHypergroup":
        if self.x0 is not None:
            raise DomainError("already deformed")
        return PolyHypergroup(self.params, x0=x0)


def deformation_point(c: float, params: DTParams) -> float:
    """x_c = (e^c sqrt((a-1)(b-1)) + e^{-c}/sqrt((a-1)(b-1)))/2, in [1, inf)."""
    q = math.exp(c) * math.sqrt((params.a - 1) * (params.b - 1))
    return 0.5 * (q + 1.0 / q)


def _word_distance(u: tuple, v: tuple) -> int:
    """Graph distance of two step-words: residual lengths after the common
    prefix, minus 1 when the first divergent steps land in the same clique."""
    l = 0
    top = min(len(u), len(v))
    while l < top and u[l] == v[l]:
        l += 1
    ru, rv = len(u) - l, len(v) - l
    d = ru + rv
    if ru and rv and u[l][0] == v[l][0]:
        d -= 1
    return d


def ball_size(params: DTParams, R: int) -> int:
    return 1 + sum(haar_weight(h, params) for h in range(1, R + 1))


@dataclass
class Ball:
    """Radius-R ball of Graph(a, b) rooted at the empty word.

    Vertices are step-words: the first step picks (clique, slot) from
    {1..a} x {1..b-1}, later steps from {1..a-1} x {1..b-1} (the arrival
    clique is excluded and re-indexed away).
    """

    params: DTParams
    radius: int
    vertices: list
    index: dict = field(repr=False)
    _dist: np.ndarray = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def root(self) -> int:
        return 0

    def depth(self, i: int) -> int:
        return len(self.vertices[i])

    def dist(self, i: int, j: int) -> int:
        return _word_distance(self.vertices[i], self.vertices[j])

    @property
    def dist_matrix(self) -> np.ndarray:
        if self._dist is None:
            n = self.n
            words = self.vertices
            D = np.zeros((n, n), dtype=np.int32)
            for i in range(n):
                wi = words[i]
                for j in range(i + 1, n):
                    D[i, j] = D[j, i] = _word_distance(wi, words[j])
            self._dist = D
        return self._dist

    @property
    def adjacency(self) -> np.ndarray:
        return (self.dist_matrix == 1)

    def sphere_sizes(self) -> list:
        counts = [0] * (self.radius + 1)
        for w in self.vertices:
            counts[len(w)] += 1
        return counts

    def bfs_distances(self, start: int) -> np.ndarray:
        """Shortest-path distances from start over the ball's edges."""
        n = self.n
        adj = self.adjacency
        dist = np.full(n, -1, dtype=np.int32)
        dist[start] = 0
        frontier = [start]
        d = 0
        while frontier:
            d += 1
            mask = adj[frontier].any(axis=0) & (dist < 0)
            frontier = np.flatnonzero(mask).tolist()
            dist[frontier] = d
        return dist


def build_ball(params: DTParams, R: int, cap: int | None = None) -> Ball:
    """Enumerate all step-words of length <= R; errors above the vertex cap
    (default 200000, override with HYPERSCHEME_BALL_CAP)."""
    if R < 0:
        raise DomainError("radius must be nonnegative")
    if cap is None:
        cap = int(os.environ.get("HYPERSCHEME_BALL_CAP", DEFAULT_BALL_CAP))
    size = ball_size(params, R)
    if size > cap:
        raise BallTooLarge(f"ball has {size} vertices, cap is {cap}")
    a, b = params.a, params.b
    first = [(i, j) for i in range(1, a + 1) for j in range(1, b)]
    later = [(i, j) for i in range(1, a) for j in range(1, b)]
    vertices = [()]
    layer = [()]
    for h in range(1, R + 1):
        steps = first if h == 1 else later
        layer = [w + (s,) for w in layer for s in steps]
        vertices.extend(layer)
    return Ball(params=params, radius=R, vertices=vertices,
                index={w: i for i, w in enumerate(vertices)})


def gram_min_eig(x: float, ball: Ball) -> float:
    """Minimum eigenvalue of the kernel matrix M_{uv} = P_{d(u,v)}(x)."""
    D = ball.dist_matrix
    pvals = np.array([poly_eval(h, x, ball.params)
                      for h in range(int(D.max()) + 1)])
    M = pvals[D]
    return float(scipy.linalg.eigh(M, eigvals_only=True,
                                   subset_by_index=[0, 0])[0])


@dataclass
class BoundaryRay:
    """The boundary ray through the all-(1,1) words, with the horocycle index
    d(v, B) = min_n d(v, v_n) - n precomputed for every ball vertex.

    The minimizing ray index must be unique; a tie (possible for b > 2)
    raises NonUniqueMinimizer instead of guessing a tie-break.
    """

    ball: Ball
    horocycle: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.horocycle is None:
            self.horocycle = np.array(
                [self._scan(w) for w in self.ball.vertices], dtype=np.int64)

    @staticmethod
    def ray_vertex(n: int) -> tuple:
        return ((1, 1),) * n

    def _scan(self, w: tuple) -> int:
        hi = self.ball.radius + len(w) + 1
        dists = [_word_distance(w, self.ray_vertex(n)) for n in range(hi + 1)]
        best = min(dists)
        hits = [n for n, d in enumerate(dists) if d == best]
        if len(hits) != 1:
            raise NonUniqueMinimizer(
                f"vertex {w}: ray indices {hits} all realize d = {best}")
        n0 = hits[0]
        return dists[n0] - n0


@dataclass
class DeformedKernels:
    """Boundary-deformed sphere kernels on a ball.

    kernels[h] is an n x n matrix whose row x is
    e^{c (d(y,B) - d(x,B))} / (P_h(x_c) w_h) on the distance-h pairs; only
    rows flagged in valid[h] (full sphere inside the ball) are meaningful,
    the rest are zero and counted in skipped[h].
    """

    ball: Ball
    ray: BoundaryRay
    c: float
    x_c: float
    kernels: dict
    valid: dict
    skipped: dict
    max_row_sum_error: float

    def composition_residual(self, i: int, j: int) -> float:
        """Max row error of K_i K_j - sum_k gtilde_{i,j,k} K_k over rows
        whose radius-(i+j) sphere lies inside the ball."""
        R = self.ball.radius
        if i + j > R:
            raise DomainError("i + j exceeds the ball radius")
        depths = np.array([self.ball.depth(v) for v in range(self.ball.n)])
        rows = depths <= R - (i + j)
        hg = PolyHypergroup(self.ball.params, x0=self.x_c)
        lhs = self.kernels[i] @ self.kernels[j]
        rhs = sum(g * self.kernels[k] for k, g in hg.g(i, j).items())
        return float(np.abs((lhs - rhs)[rows]).max())


def deform_ball_kernels(ball: Ball, ray: BoundaryRay, c: float) -> DeformedKernels:
    """Deformed kernel family K_h for h = 0..R on interior-valid rows."""
    params = ball.params
    x_c = deformation_point(c, params)
    n, R = ball.n, ball.radius
    D = ball.dist_matrix
    dB = ray.horocycle.astype(float)
    depths = np.array([ball.depth(v) for v in range(n)])
    phi = np.exp(c * dB)

    kernels = {0: np.eye(n)}
    valid = {0: np.ones(n, dtype=bool)}
    skipped = {0: 0}
    worst = 0.0
    for h in range(1, R + 1):
        ok = depths <= R - h
        norm = poly_eval(h, x_c, params) * haar_weight(h, params)
        K = np.where(D == h, np.outer(1.0 / phi, phi) / norm, 0.0)
        K[~ok] = 0.0
        sums = K[ok].sum(axis=1)
        worst = max(worst, float(np.abs(sums - 1.0).max()) if ok.any() else 0.0)
        kernels[h] = K
        valid[h] = ok
        skipped[h] = int((~ok).sum())
    return DeformedKernels(ball=ball, ray=ray, c=c, x_c=x_c, kernels=kernels,
                           valid=valid, skipped=skipped,
                           max_row_sum_error=worst)


def pushforward_vs_haar(params: DTParams, c: float):
    """Compare the root-pushforward of the deformed invariant measure with
    the Haar weight of the deformed hypergroup at n = 1 (tree case b = 2).

    Returns (pf1, haar1): pf1 = e^{-2c} + (a-1) e^{2c} and
    haar1 = ((a-1) e^{2c} + 1)^2 / (a e^{2c}); they differ whenever c != 0,
    which is exactly the failure of the translation properties.
    """
    if params.b != 2:
        raise UnsupportedParams("closed forms are stated for the tree case b = 2")
    a = params.a
    pf1 = math.exp(-2 * c) + (a - 1) * math.exp(2 * c)
    haar1 = ((a - 1) * math.exp(2 * c) + 1) ** 2 / (a * math.exp(2 * c))

    # independent recomputations: from a small ball, and from the deformed
    # hypergroup's Haar weight
    ball = build_ball(params, 2)
    ray = BoundaryRay(ball)
    dB = ray.horocycle
    pf1_ball = sum(math.exp(2 * c * dB[v]) for v in range(ball.n)
                   if ball.depth(v) == 1)
    x_c = deformation_point(c, params)
    hg = PolyHypergroup(params, x0=x_c)
    haar1_hg = 1.0 / hg.g(1, 1)[0]
    if abs(pf1_ball - pf1) > 1e-10 or abs(haar1_hg - haar1) > 1e-10:
        raise AssertionError("closed forms disagree with direct recomputation")
    return pf1, haar1
