# Absorbing blocks: only the centre cell is shielded from the boundary.
from rbca import blocks as B

v = B.analyze_block(B.BlockSpec.single((2, 2, 11, 2), (0, 1, 1, 0), center=2))
print(v.describe())

fam = B.ABSORBING_WITNESSES[frozenset({2, 6})]
v = B.analyze_family(fam)
print(len(fam.b_states), "family members, stable cells", v.stable_cells())
print("recurrence times", sorted(set(B.member_recurrence(fam).values())))

for s in ({2, 3}, {2, 11}):
    spec = B.ABSORBING_WITNESSES[frozenset(s)]
    print(sorted(s), B.analyze_block(spec).describe())

print(B.search_absorbing({2, 3}, 6, True, limit=1))
