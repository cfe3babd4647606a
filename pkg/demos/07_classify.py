# Which supports give a positive infinite-lattice stabilization probability?
from collections import Counter

from rbca import blocks as B, rules as R

for s in ({6, 9}, {2, 10}, {2, 3}, {2, 6}, {0}, range(16)):
    print(sorted(s), "->", B.theorem1_classify(s).describe())

tally = Counter(B.theorem1_classify(R.from_mask(m)).status for m in range(1, 1 << 16))
print({k.value: v for k, v in tally.items()})
