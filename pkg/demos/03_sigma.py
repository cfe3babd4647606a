# Stabilization probability: exhaustive on small rings, Monte Carlo on large ones.
from rbca.stability import RuleDistribution, estimate_sigma, exact_sigma, wall_bound

for n in (3, 4, 5):
    e = exact_sigma(n, range(16))
    print(f"sigma_{n} = {e.exact} = {e.estimate:.6f}")

uniform = RuleDistribution.uniform()
for n in (25, 50, 100):
    e = estimate_sigma(n, uniform, 2000, seed=0)
    print(f"sigma_{n} ~ {e.estimate:.4f} +- {e.ci95:.4f}")

# walls (rules 0 and 15) make the ring forget its size quickly
print("size dependence bound at n=100:", wall_bound(uniform.wall_mass, 100))

# a few supports with closed forms
for s in ({12}, {3}, {3, 12}):
    print(s, [str(exact_sigma(n, s).exact) for n in range(3, 9)])
