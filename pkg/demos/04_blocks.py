# Impermeable blocks: segments whose evolution ignores the outside world.
from rbca import blocks as B

v = B.analyze_block(B.BlockSpec.single((2, 9, 9, 2), B.parse_word("0010")))
print(v.describe())
for layer in v.layers:
    print("  layer", [B.unpack_word(s, 4) for s in layer])

for support, phi, b in B.TABLE2:
    print(sorted(support), B.analyze_block(B.BlockSpec.single(phi, b)).describe())

# search finds the smallest witnesses; some supports have none
print(B.search_impermeable({2, 9}, 4, limit=3))
print(B.search_impermeable({2, 3, 11}, 6, limit=1))

col = B.minimal_impermeable_supports()
print(len(col.g_sets), "minimal supports,", len(col.g_tilde), "up to symmetry")
print("maximal supports without blocks:", [sorted(b) for b in col.b_sets])
print("dichotomy holds:", B.dichotomy_check(col.g_sets, col.b_sets).passed)
