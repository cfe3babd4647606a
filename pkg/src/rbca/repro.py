"""Reproduction suites, one per acceptance criterion.

Each suite returns a :class:`SuiteResult` whose ``lines`` are a
human-readable account of what was checked.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import blocks as B
from . import engine
from .engine import RingConfiguration, RuleVector
from .stability import (RuleDistribution, affine_cylinder_test, estimate_sigma, exact_sigma,
                        rule6_checks, shift_pattern_check, wall_bound_check)

SIGMA100_REFERENCE = 0.678058
# exhaustive n = 6 value under uniform rules, computed by this package
SIGMA6_EXACT = Fraction(5688581, 1 << 23)


@dataclass
class SuiteResult:
    name: str
    criterion: int
    passed: bool = True
    lines: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def check(self, ok: bool, message: str) -> bool:
        self.lines.append(("ok   " if ok else "FAIL ") + message)
        self.passed &= bool(ok)
        return ok

    def note(self, message: str) -> None:
        self.lines.append("note " + message)


def table2() -> SuiteResult:
    res = SuiteResult("table2", 1)
    for support, phi, b in B.TABLE2:
        v = B.analyze_block(B.BlockSpec.single(phi, b))
        res.check(v.kind is B.BlockKind.IMPERMEABLE, f"{{{','.join(map(str, sorted(support)))}}} {v.describe()}")
    v = B.analyze_block(B.BlockSpec.single((2, 9, 9, 2), (0, 0, 1, 0)))
    res.check(v.period == 1 and all(v.stable), "(2,9,9,2)/(0,0,1,0): period 1, all cells stable")
    v = B.analyze_block(B.BlockSpec.single((5, 3), (0, 0)))
    res.check(v.kind is B.BlockKind.IMPERMEABLE and v.period == 2, "(5,3)/(0,0): period 2")
    return res


def gsets() -> SuiteResult:
    res = SuiteResult("gsets", 2)
    col = B.minimal_impermeable_supports(k_max=3, p_max=4)
    res.check(set(col.g_sets) == set(B.G_SETS), f"reconstructed {len(col.g_sets)} minimal supports, "
              f"equal to the listed 30")
    res.check(len(col.g_tilde) == 12, f"{len(col.g_tilde)} symmetry classes")
    for s in col.g_tilde:
        res.note(f"{{{','.join(map(str, sorted(s)))}}}: {col.witnesses[s].describe()}")
    return res


def dichotomy() -> SuiteResult:
    res = SuiteResult("dichotomy", 3)
    d = B.dichotomy_check(B.G_SETS, B.B_SETS)
    res.check(d.passed, f"all 65536 supports: {len(d.neither)} in neither, {len(d.both)} in both")
    return res


def bsets(p_max: int = 6) -> SuiteResult:
    res = SuiteResult("bsets", 4)
    subsets = set()
    for b in B.B_SETS:
        for k in range(1, len(b) + 1):
            subsets.update(frozenset(c) for c in itertools.combinations(sorted(b), k))
    offenders = [s for s in sorted(subsets, key=sorted) if B.search_impermeable(s, p_max, limit=1)]
    res.check(not offenders, f"{len(subsets)} subsets of B members: no impermeable block up to p={p_max}")
    return res


def absorbing() -> SuiteResult:
    res = SuiteResult("absorbing", 5)
    v = B.analyze_block(B.BlockSpec.single((2, 2, 11, 2), (0, 1, 1, 0), 2))
    res.check(v.kind is B.BlockKind.ABSORBING and v.center_value_period == 4,
              f"(2,2,11,2)/(0,1,1,0) c=2: {v.kind.value}, center period {v.center_value_period}")
    hits = [w for w in B.search_absorbing({2, 3}, 3) if w.phi == (2, 2, 3)]
    res.check(bool(hits), f"(2,2,3) absorbing at p=3: {len(hits)} b-words, first {hits[0].describe() if hits else '-'}")
    fam = B.ABSORBING_WITNESSES[frozenset({2, 6})]
    v = B.analyze_family(fam)
    rec = B.member_recurrence(fam)
    res.check(v.kind is B.BlockKind.ABSORBING and {4, 7} <= set(v.stable_cells()),
              f"{{2,6}} family of {len(fam.b_states)}: stable cells {v.stable_cells()}")
    res.check(set(rec.values()) == {4, 8}, f"member recurrence times {sorted(set(rec.values()))}")
    for support, spec in ((frozenset({2, 3}), B.ABSORBING_WITNESSES[frozenset({2, 3})]),
                          (frozenset({2, 11}), B.ABSORBING_WITNESSES[frozenset({2, 11})])):
        v = B.analyze_block(spec)
        res.check(v.kind is B.BlockKind.ABSORBING and v.center_constant,
                  f"{{{','.join(map(str, sorted(support)))}}} p={spec.p} c={spec.center}: constant center")
    return res


def sigma6() -> SuiteResult:
    res = SuiteResult("sigma6", 6)
    e = exact_sigma(6, range(16))
    res.check(0.67 <= e.estimate <= 0.69, f"exact sigma_6 = {e.exact} = {e.estimate:.6f}")
    res.check(e.exact == SIGMA6_EXACT, f"matches recorded constant {SIGMA6_EXACT}")
    return res


def sigma100(samples: int = 20000, seed: int = 42, workers: int = 1) -> SuiteResult:
    res = SuiteResult("sigma100", 7)
    e = estimate_sigma(100, RuleDistribution.uniform(), samples, seed=seed, workers=workers)
    res.check(samples >= 20000, f"{samples} replicas")
    res.check(e.covers(SIGMA100_REFERENCE), f"estimate {e.estimate:.6f} +- {e.ci95:.6f} covers {SIGMA100_REFERENCE}")
    res.check(e.ci95 <= 0.003, f"half-width {e.ci95:.6f} <= 0.003")
    return res


def closed_forms() -> SuiteResult:
    res = SuiteResult("closed", 8)
    for n in range(3, 13):
        v = exact_sigma(n, {12}).exact
        res.check(v == Fraction(2, 1 << n), f"{{12}} n={n}: {v}")
    for n in range(3, 14, 2):
        v = exact_sigma(n, {3}).exact
        res.check(v == 0, f"{{3}} n={n}: {v}")
    for n in range(3, 13):
        v = exact_sigma(n, {3, 12}).exact
        res.check(v <= Fraction(2, 1 << n), f"{{3,12}} n={n}: {v} <= 2^-{n - 1}")
    for n in range(4, 14, 2):
        v = exact_sigma(n, {3}).exact
        halved = Fraction(1, 1 << (n // 2))
        direct = Fraction(2, 1 << n)
        which = "2^-(n-1)" if v == direct else "2^-(n/2)" if v == halved else "neither"
        res.note(f"{{3}} n={n}: enumerated {v}; 2^-(n/2)={halved}, 2^-(n-1)={direct}; matches {which}")
    return res


def rule6() -> SuiteResult:
    res = SuiteResult("rule6", 9)
    r = rule6_checks(4)
    for n, ok in r.absorbed.items():
        res.check(ok, f"n={n}: every initial configuration is all-zero at t={n}")
    for n, frac in r.flip_fraction.items():
        res.check(frac == Fraction(1, 2), f"n={n}: P(X_0(n-1) != X_0(n)) = {frac}")
    for (n, m), ok in r.identity.items():
        res.check(ok, f"n={n}, m={m}: X_0(n+2^m-2) = X_-2^m(0) + X_2^m(0)")
    return res


def affine(samples: int = 100_000, seed: int = 2024) -> SuiteResult:
    res = SuiteResult("affine", 10)
    rep = affine_cylinder_test({3, 6, 9, 12}, 8, samples, seed=seed)
    res.check(rep.pvalue >= 0.001, f"{{3,6,9,12}} T=8: chi2={rep.statistic:.1f}, p={rep.pvalue:.4f}")
    res.check(rep.shifted_pvalue >= 0.001, f"shifted window: chi2={rep.shifted_statistic:.1f}, "
              f"p={rep.shifted_pvalue:.4f}")
    neg = affine_cylinder_test({0}, 8, samples, seed=seed + 1)
    res.check(neg.rejected, f"{{0}} control rejected: p={neg.pvalue:.3g}")
    return res


def shift101() -> SuiteResult:
    res = SuiteResult("shift101", 11)
    r = shift_pattern_check({2}, 12, 24)
    res.check(r.passed, f"{{2}} n=12, all {r.checked} initials, t=1..24: {r.violations} 1*1 patterns")
    r = shift_pattern_check({2, 10}, 200, 200, samples=100, seed=7)
    res.check(r.passed, f"{{2,10}} n=200, {r.checked} rings: {r.violations} runs of three 1's")
    return res


def walls(samples: int = 4000, seed: int = 11, workers: int = 1) -> SuiteResult:
    res = SuiteResult("walls", 12)
    rep = wall_bound_check(RuleDistribution.uniform(), (50, 100, 200), samples, seed=seed,
                           workers=workers)
    for n, e in rep.estimates.items():
        res.check(e.estimate >= 1 / 8, f"sigma_{n} = {e.estimate:.5f} +- {e.ci95:.5f} >= 1/8")
    for (a, b), (gap, allowed) in rep.gaps.items():
        res.check(gap <= allowed, f"|sigma_{a} - sigma_{b}| = {gap:.5f} <= {allowed:.5f}")
    return res


def oracle(random_cases: int = 10_000, cycle_cases: int = 1000, seed: int = 5) -> SuiteResult:
    res = SuiteResult("oracle", 13)
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(random_cases):
        n = int(rng.integers(2, 21))
        cells = [int(v) for v in rng.integers(0, 2, n)]
        rv = [int(v) for v in rng.integers(0, 16, n)]
        got = engine.step(RingConfiguration.from_cells(cells), RuleVector(rv))
        bad += list(got.cells()) != engine.step_reference(cells, rv)
    res.check(bad == 0, f"{random_cases} random instances, n <= 20: {bad} mismatches")
    bad = total = 0
    for n in range(2, 9):
        for _ in range(8):
            rv = [int(v) for v in rng.integers(0, 16, n)]
            fast = engine.step_many(engine.all_configurations(n), rv)
            for s in range(1 << n):
                cells = [(s >> i) & 1 for i in range(n)]
                bad += engine.pack(engine.step_reference(cells, rv)) != int(fast[s])
                total += 1
    res.check(bad == 0, f"exhaustive n <= 8 over {total} (rules, config) pairs: {bad} mismatches")
    bad = 0
    for _ in range(cycle_cases):
        n = int(rng.integers(3, 25))
        rv = RuleVector(tuple(int(v) for v in rng.integers(0, 16, n)))
        x = RingConfiguration(n, int(rng.integers(0, 1 << n)))
        a = engine.run_until_cycle(x, rv, method="hash")
        b = engine.run_until_cycle(x, rv, method="brent")
        bad += (a.preperiod, a.period, a.stable_mask, a.stabilization_time) != \
               (b.preperiod, b.period, b.stable_mask, b.stabilization_time)
    res.check(bad == 0, f"{cycle_cases} cycle searches, hash vs constant memory: {bad} mismatches")
    return res


SUITES = {
    "table2": table2,
    "gsets": gsets,
    "dichotomy": dichotomy,
    "bsets": bsets,
    "absorbing": absorbing,
    "sigma6": sigma6,
    "sigma100": sigma100,
    "closed": closed_forms,
    "rule6": rule6,
    "affine": affine,
    "shift101": shift101,
    "walls": walls,
    "oracle": oracle,
}


def run_suite(name: str, **kwargs) -> SuiteResult:
    try:
        fn = SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    t0 = time.perf_counter()
    res = fn(**kwargs)
    res.seconds = time.perf_counter() - t0
    return res
