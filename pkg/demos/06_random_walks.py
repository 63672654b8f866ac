# Random walks and the projection theorem
#
# A walk on a ball of Gamma(a, b) driven by distance-h kernels projects,
# under d(root, .), onto the hypergroup walk on sphere indices: propagating
# the kernel matrices and then projecting equals taking exact convolution
# powers of the step distribution.  Monte Carlo simulation agrees in total
# variation.

from fractions import Fraction

import hyperscheme as hs

params = hs.DTParams(3, 2)
ball = hs.build_ball(params, 8)
print("ball:", ball.n, "vertices")

mu = hs.StepDistribution({1: Fraction(1)})     # one graph step at a time
hg = hs.PolyHypergroup(params)
fam = hs.KernelFamily.from_ball(ball)

# Exact convolution powers stay rational.
for t in range(5):
    print(f"mu^*{t} =", dict(hs.convolution_power(hg, mu, t)))

# Matrix propagation on the ball, projected to distance from the root,
# matches the convolution power to machine precision.
steps = 6
projected = hs.propagate_and_project(fam, mu, steps)
exact = {k: float(v) for k, v in hs.convolution_power(hg, mu, steps).items()}
print(f"\npropagate-and-project TV at {steps} steps:",
      hs.tv_distance(projected, exact))

# Monte Carlo: simulate trajectories, project the empirical law.
walk = hs.simulate_walk(fam, mu, steps=steps, trials=50_000, seed=7)
tv = hs.projection_check(walk, fam, hg, mu, steps=steps)
print(f"Monte Carlo TV ({walk.trials} trials):", round(tv, 5))

# The same theorem holds for the boundary-deformed walk.
ray = hs.BoundaryRay(ball)
dk = hs.deform_ball_kernels(ball, ray, 0.3)
fam_d = hs.KernelFamily.from_deformed(dk)
hg_d = hs.PolyHypergroup(params, x0=dk.x_c)
projected = hs.propagate_and_project(fam_d, mu, steps)
exact = {k: float(v) for k, v in
         hs.convolution_power(hg_d, mu, steps).items()}
print("\ndeformed propagate-and-project TV:",
      hs.tv_distance(projected, exact))
walk_d = hs.simulate_walk(fam_d, mu, steps=steps, trials=50_000, seed=7)
print("deformed Monte Carlo TV:",
      round(hs.projection_check(walk_d, fam_d, hg_d, mu, steps=steps), 5))

# A walk that could leave the ball is refused up front rather than silently
# truncated at the boundary.
try:
    hs.simulate_walk(fam, mu, steps=9, trials=10, seed=0)
except hs.WalkWouldExitBall as exc:
    print("\nsteps = 9 on a radius-8 ball:", exc)
