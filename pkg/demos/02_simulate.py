# One random ring: run to its cycle, look at the stable cells, save a diagram.
import os
import tempfile

import numpy as np

from rbca import engine, pbm
from rbca.stability import RuleDistribution

n = 64
rng = np.random.default_rng(1)
rules = RuleDistribution.uniform().sample(rng, n)
x = engine.RingConfiguration.from_cells(rng.integers(0, 2, n))
rv = engine.RuleVector(tuple(int(j) for j in rules))

s = engine.run_until_cycle(x, rv)
print("preperiod", s.preperiod, "period", s.period)
print("stable cells:", s.stable_string())
print("fraction stable: %.3f" % s.stable_fraction)

rows = engine.space_time(x, rv, 48)
for row in rows[:12]:
    print("".join(".#"[v] for v in row))

out = os.path.join(tempfile.gettempdir(), "rbca_ring.pbm")
pbm.write_pbm(out, rows, comment="random ring, seed 1")
print("wrote", out, pbm.read_pbm(out).shape)

# rule 6 on a ring of size 2^p dies out by time n
r6 = engine.RuleVector.uniform(6, 8)
print(engine.space_time(engine.RingConfiguration.from_string("10110010"), r6, 8))
