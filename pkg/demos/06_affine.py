# Affine rules scramble the centre cell into independent fair coin flips.
from rbca import engine
from rbca.stability import (RuleDistribution, affine_cylinder_test, exact_cone_distribution,
                            zero_sigma_decay_check)

print(engine.sample_cone(RuleDistribution.uniform_on({3, 6, 9, 12}), 8, seed=0))

law = exact_cone_distribution({3, 6, 9, 12}, 2)
print("exact law of X_0(0..2):", sorted(set(law.values())))

for s in ({3, 6, 9, 12}, {0}):
    r = affine_cylinder_test(s, 8, 100_000, seed=2024)
    print(sorted(s), f"chi2={r.statistic:.1f} p={r.pvalue:.3g} rejected={r.rejected}")

r = engine.flip_propagation_check({3, 6, 9, 12}, 10, 10_000, seed=0)
print("flips propagate:", r.passed)

# P(X_0 constant on [T/2, T]) shrinks with T for supports where sigma_* = 0
for s in ({6}, {2, 10}, {0}):
    d = zero_sigma_decay_check(s, (4, 8, 16, 32), 4000, seed=1)
    print(sorted(s), [round(p, 4) for p in d.probabilities])
