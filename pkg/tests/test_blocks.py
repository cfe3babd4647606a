import itertools

import numpy as np
import pytest

from rbca import blocks as B
from rbca import engine, rules as R
from rbca.blocks import BlockKind, BlockSpec


def _embedded_runs(spec, word, steps, seed, trials=2, pad=5):
    """Block cells (and all cells) of rings whose outside part is random."""
    rng = np.random.default_rng(seed)
    p = spec.p
    n = p + 2 * pad
    out = []
    for _ in range(trials):
        rules = [int(j) for j in rng.integers(0, 16, n)]
        cells = [int(v) for v in rng.integers(0, 2, n)]
        rules[pad:pad + p] = spec.phi
        cells[pad:pad + p] = word
        rows = engine.space_time(engine.RingConfiguration.from_cells(cells),
                                 engine.RuleVector(tuple(rules)), steps)
        out.append(rows[:, pad:pad + p])
    return out


@pytest.mark.parametrize("row", B.TABLE2, ids=lambda r: ",".join(map(str, sorted(r[0]))))
def test_table2_rows_are_impermeable(row):
    support, phi, b = row
    assert set(phi) == support
    v = B.analyze_block(BlockSpec.single(phi, b))
    assert v.kind is BlockKind.IMPERMEABLE


def test_worked_examples():
    v = B.analyze_block(BlockSpec.single((2, 9, 9, 2), B.parse_word("0010")))
    assert v.period == 1 and all(v.stable)
    assert v.describe() == "phi=(2,9,9,2) b=(0,0,1,0) kind=impermeable period=1 stable=1111"
    v = B.analyze_block(BlockSpec.single((5, 3), (0, 0)))
    assert v.kind is BlockKind.IMPERMEABLE and v.period == 2


@pytest.mark.parametrize("row", B.TABLE2)
def test_impermeable_blocks_ignore_the_outside(row):
    _, phi, b = row
    spec = BlockSpec.single(phi, b)
    v = B.analyze_block(spec)
    for seed in range(5):
        runs = _embedded_runs(spec, b, 30, seed, trials=3)
        for t in range(31):
            k = t if t < len(v.layers) else v.preperiod + (t - v.preperiod) % v.period
            (expect,) = v.layers[k]
            for r in runs:
                assert B.pack_word(r[t]) == expect


def test_absorbing_example():
    v = B.analyze_block(BlockSpec.single((2, 2, 11, 2), (0, 1, 1, 0), 2))
    assert v.kind is BlockKind.ABSORBING
    assert v.center_value_period == 4 and not v.center_constant


def test_absorbing_blocks_fix_the_centre():
    for spec in [BlockSpec.single((2, 2, 11, 2), (0, 1, 1, 0), 2),
                 B.ABSORBING_WITNESSES[frozenset({2, 3})],
                 B.ABSORBING_WITNESSES[frozenset({2, 11})]]:
        (word,) = spec.words()
        c = spec.center - 1
        for seed in range(6):
            runs = _embedded_runs(spec, word, 40, seed, trials=3)
            assert all(np.array_equal(r[:, c], runs[0][:, c]) for r in runs)


def test_family_member_states_survive_the_outside():
    fam = B.ABSORBING_WITNESSES[frozenset({2, 6})]
    assert len(fam.b_states) == 9
    v = B.analyze_family(fam)
    assert v.kind is BlockKind.ABSORBING
    assert v.stable_cells() == [4, 7]
    members = {B.pack_word(w) for w in fam.b_states}
    rec = B.member_recurrence(fam)
    assert set(rec.values()) == {4, 8}
    for w, t in rec.items():
        for r in _embedded_runs(fam, w, t, seed=sum(w), trials=4):
            assert B.pack_word(r[t]) in members
            assert set(r[:, 3]) == {w[3]} and set(r[:, 6]) == {w[6]}


def test_family_pattern_and_forbid():
    fam = BlockSpec.family((2, 6, 2, 6), "0??1", ["xy=11"])
    assert fam.words() == [(0, 0, 0, 1), (0, 0, 1, 1), (0, 1, 0, 1)]
    with pytest.raises(ValueError):
        BlockSpec.family((2, 6), "0?", ["q=1"])


def test_spec_validation():
    with pytest.raises(ValueError):
        BlockSpec.single((2, 3), (0, 1, 1))
    with pytest.raises(ValueError):
        BlockSpec.single((2, 16), (0, 1))
    with pytest.raises(ValueError):
        BlockSpec.single((2, 3), (0, 1), center=3)
    assert B.parse_word("0010") == (0, 0, 1, 0)


@pytest.mark.parametrize("g", ["M", "R", "MR"])
def test_symmetry_covariance(g):
    rng = np.random.default_rng(len(g))
    for _ in range(60):
        p = int(rng.integers(2, 6))
        spec = BlockSpec.single(tuple(int(j) for j in rng.integers(0, 16, p)),
                                tuple(int(v) for v in rng.integers(0, 2, p)))
        a = B.analyze_block(spec)
        b = B.analyze_block(spec.transformed(g))
        assert a.kind == b.kind and a.period == b.period
        expect = a.stable[::-1] if "R" in g else a.stable
        assert b.stable == expect


def test_fast_search_matches_layer_analysis():
    rng = np.random.default_rng(1)
    for _ in range(4):
        support = sorted(int(j) for j in rng.choice(16, 3, replace=False))
        fast = {(s.phi, s.words()[0]) for s in B.search_impermeable(support, 3)}
        slow = set()
        for p in range(1, 4):
            for phi in itertools.product(support, repeat=p):
                for w in itertools.product((0, 1), repeat=p):
                    if B.analyze_block(BlockSpec.single(phi, w)).kind is BlockKind.IMPERMEABLE:
                        slow.add((phi, w))
        assert fast == slow


def test_search_monotone_in_support():
    for g in B.G_SETS[:12]:
        extra = next(j for j in range(16) if j not in g)
        assert B.search_impermeable(g, 4, limit=1)
        assert B.search_impermeable(g | {extra}, 4, limit=1)


def test_g_sets_are_minimal():
    for g in B.G_SETS:
        for k in range(1, len(g)):
            for sub in itertools.combinations(sorted(g), k):
                assert not B.search_impermeable(sub, 4, limit=1), (g, sub)


def test_b_sets_from_g_sets():
    assert set(B.maximal_avoiders(B.G_SETS)) == set(B.B_SETS)


def test_collections_closed_under_symmetry():
    for coll in (B.G_SETS, B.B_SETS):
        for s in coll:
            assert R.orbit(s) <= set(coll)


def test_dichotomy_needs_every_member():
    assert B.dichotomy_check(B.G_SETS, B.B_SETS).passed
    without_b = [b for b in B.B_SETS if b != {2, 3, 6}]
    d = B.dichotomy_check(B.G_SETS, without_b)
    assert frozenset({2, 3, 6}) in d.neither
    without_g = [g for g in B.G_SETS if g != {0}]
    d = B.dichotomy_check(without_g, B.B_SETS)
    assert frozenset({0}) in d.neither


def test_no_block_for_b_members_small():
    for b in B.B_SETS:
        assert not B.search_impermeable(b, 4, limit=1)


def test_absorbing_search():
    hits = B.search_absorbing({2, 3}, 3)
    assert any(h.phi == (2, 2, 3) for h in hits)
    (w,) = B.search_absorbing({2, 3}, 6, True, limit=1)
    v = B.analyze_block(w)
    assert v.kind is BlockKind.ABSORBING and v.center_constant
    assert not B.search_absorbing({6, 9}, 4, limit=1)


def test_classification_examples():
    assert B.theorem1_classify({6, 9}).describe() == "sigma_star=0 (subset of {3,6,9,12})"
    v = B.theorem1_classify({2, 6})
    assert v.status is B.SigmaStatus.SIGMA_STAR_POSITIVE and "absorbing" in v.evidence
    v = B.theorem1_classify(range(16))
    assert v.status is B.SigmaStatus.SIGMA_STAR_POSITIVE and "in G" in v.evidence
    with pytest.raises(ValueError):
        B.theorem1_classify(set())


def test_classification_covers_every_support():
    zero = 0
    for mask in range(1, 1 << 16):
        s = R.from_mask(mask)
        v = B.theorem1_classify(s)
        in_zero = any(s <= z for z in B.ZERO_SIGMA_SUPPORTS)
        assert (v.status is B.SigmaStatus.SIGMA_STAR_ZERO) == in_zero
        zero += in_zero
        if v.status is B.SigmaStatus.SIGMA_STAR_ZERO:
            assert not any(g <= s for g in B.G_SETS)
    assert zero > 0


def test_classification_witnesses_verify():
    rng = np.random.default_rng(0)
    for mask in rng.integers(1, 1 << 16, 300):
        v = B.theorem1_classify(R.from_mask(int(mask)))
        if v.witness is None:
            continue
        assert set(v.witness.phi) <= v.support
        verdict = B.analyze_block(v.witness)
        if "in G" in v.evidence:
            assert verdict.kind is BlockKind.IMPERMEABLE
        else:
            assert verdict.kind is BlockKind.ABSORBING and verdict.center_constant
