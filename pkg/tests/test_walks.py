"""Convolution powers, Monte Carlo walks, and the projection property."""

from fractions import Fraction

import numpy as np
import pytest

import hyperscheme as hs


def test_step_distribution_validation():
    with pytest.raises(ValueError):
        hs.StepDistribution({0: 0.5, 1: 0.6})
    with pytest.raises(ValueError):
        hs.StepDistribution({0: -0.1, 1: 1.1})


def test_convolution_power_identity(k3_hypergroup):
    mu = hs.StepDistribution({1: Fraction(1)})
    assert hs.convolution_power(k3_hypergroup, mu, 0) == {0: Fraction(1)}


def test_convolution_power_k3(k3_hypergroup):
    mu = hs.StepDistribution({1: Fraction(1)})
    assert hs.convolution_power(k3_hypergroup, mu, 2) == {
        0: Fraction(1, 2), 1: Fraction(1, 2)}


def test_convolution_power_chebyshev():
    hg = hs.PolyHypergroup(hs.DTParams(2, 2))
    mu = hs.StepDistribution({1: Fraction(1)})
    assert hs.convolution_power(hg, mu, 4) == {
        0: Fraction(3, 8), 2: Fraction(1, 2), 4: Fraction(1, 8)}


def test_convolution_power_semigroup(k3_hypergroup):
    hg = hs.PolyHypergroup(hs.DTParams(3, 2))
    mu = hs.StepDistribution({0: Fraction(1, 4), 1: Fraction(3, 4)})
    for h in (k3_hypergroup, hg):
        p5 = hs.convolution_power(h, mu, 5)
        p2 = hs.convolution_power(h, mu, 2)
        p3 = hs.convolution_power(h, mu, 3)
        if isinstance(h, hs.PolyHypergroup):
            combined = h.convolve(p2, p3)
        else:
            flat2 = [p2.get(i, 0) for i in range(h.n)]
            flat3 = [p3.get(i, 0) for i in range(h.n)]
            combined = {i: v for i, v in enumerate(h.convolve(flat2, flat3))
                        if v != 0}
        assert combined == p5


def test_support_cap():
    hg = hs.PolyHypergroup(hs.DTParams(3, 2))
    mu = hs.StepDistribution({5: Fraction(1)})
    with pytest.raises(hs.SupportCap):
        hs.convolution_power(hg, mu, 10_000)


def test_simulate_walk_zero_steps(k3_scheme):
    gs = hs.canonical_generalized(k3_scheme)
    mu = hs.StepDistribution({1: 1})
    walk = hs.simulate_walk(gs, mu, steps=0, trials=100, seed=1)
    assert walk.empirical == {0: 1.0}


def test_simulate_walk_deterministic_seed(k3_scheme):
    gs = hs.canonical_generalized(k3_scheme)
    mu = hs.StepDistribution({1: 1})
    w1 = hs.simulate_walk(gs, mu, steps=2, trials=500, seed=7)
    w2 = hs.simulate_walk(gs, mu, steps=2, trials=500, seed=7)
    assert w1.empirical == w2.empirical


def test_simulate_walk_k3_one_step(k3_scheme):
    gs = hs.canonical_generalized(k3_scheme)
    mu = hs.StepDistribution({1: 1})
    walk = hs.simulate_walk(gs, mu, steps=1, trials=100_000, seed=42)
    assert abs(walk.empirical.get(1, 0) - 0.5) < 0.01
    assert abs(walk.empirical.get(2, 0) - 0.5) < 0.01
    assert walk.empirical.get(0, 0) == 0


def test_projection_matrix_propagation_k3(k3_scheme, k3_hypergroup):
    gs = hs.canonical_generalized(k3_scheme)
    fam = hs.KernelFamily.from_generalized(gs)
    mu = hs.StepDistribution({1: 1})
    projected = hs.propagate_and_project(fam, mu, 3)
    exact = {k: float(v)
             for k, v in hs.convolution_power(k3_hypergroup, mu, 3).items()}
    assert hs.tv_distance(projected, exact) < 1e-12


def test_projection_check_zero_steps(k3_scheme, k3_hypergroup):
    gs = hs.canonical_generalized(k3_scheme)
    mu = hs.StepDistribution({1: 1})
    walk = hs.simulate_walk(gs, mu, steps=0, trials=100, seed=1)
    assert hs.projection_check(walk, gs, k3_hypergroup, mu, 0) == 0.0


def test_projection_check_mismatch(k3_scheme, k3_hypergroup):
    gs = hs.canonical_generalized(k3_scheme)
    mu = hs.StepDistribution({1: 1})
    walk = hs.simulate_walk(gs, mu, steps=2, trials=100, seed=1)
    with pytest.raises(hs.ParameterMismatch):
        hs.projection_check(walk, gs, k3_hypergroup, mu, 3)


def test_walk_would_exit_ball():
    ball = hs.build_ball(hs.DTParams(3, 2), 4)
    fam = hs.KernelFamily.from_ball(ball)
    mu = hs.StepDistribution({1: 1})
    with pytest.raises(hs.WalkWouldExitBall):
        hs.simulate_walk(fam, mu, steps=5, trials=10, seed=0)
    # steps within the radius are fine
    hs.simulate_walk(fam, mu, steps=4, trials=10, seed=0)


def test_omega_invariance(k3_scheme, z4_scheme):
    """omega_X as a row vector is fixed by every kernel of a verified
    generalized scheme."""
    for scheme in (k3_scheme, z4_scheme):
        gs = hs.canonical_generalized(scheme)
        for i in range(scheme.n_relations):
            assert np.abs(gs.omega_x @ gs.kernels[i] - gs.omega_x).max() < 1e-12


def test_ball_projection_small():
    params = hs.DTParams(3, 2)
    ball = hs.build_ball(params, 5)
    fam = hs.KernelFamily.from_ball(ball)
    hg = hs.PolyHypergroup(params)
    mu = hs.StepDistribution({1: Fraction(1)})
    projected = hs.propagate_and_project(fam, mu, 5)
    exact = {k: float(v) for k, v in hs.convolution_power(hg, mu, 5).items()}
    assert hs.tv_distance(projected, exact) < 1e-12
