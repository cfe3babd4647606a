from fractions import Fraction

import numpy as np
import pytest

from rbca import stability as S
from rbca.stability import RuleDistribution, parse_distribution


def test_parse_distribution():
    assert parse_distribution("uniform").support == frozenset(range(16))
    d = parse_distribution("uniform-on:3,6,9,12")
    assert d.support == {3, 6, 9, 12} and d.is_uniform_on_support()
    d = parse_distribution("weights:0=0.25,6=0.75")
    assert d.weights[6] == pytest.approx(0.75)
    assert d.describe() == "weights:0=0.25,6=0.75"
    for bad in ("weights:0=0.5,1=0.4", "uniform-on:", "uniform-on:16", "gauss"):
        with pytest.raises(ValueError):
            parse_distribution(bad)


def test_distribution_validation():
    with pytest.raises(ValueError):
        RuleDistribution(tuple([0.1] * 16))
    with pytest.raises(ValueError):
        RuleDistribution.uniform_on([])
    d = RuleDistribution.uniform_on({2, 6})
    assert d.mirror().support == {11, 9}
    assert d.reverse().support == {4, 6}
    assert RuleDistribution.uniform().wall_mass == pytest.approx(1 / 8)


def test_sample_respects_support():
    d = RuleDistribution.uniform_on({2, 10})
    draws = d.sample(np.random.default_rng(0), 1000)
    assert set(np.unique(draws)) == {2, 10}


def test_estimate_deterministic_and_thread_independent():
    d = RuleDistribution.uniform()
    a = S.estimate_sigma(20, d, 200, seed=3)
    b = S.estimate_sigma(20, d, 200, seed=3, workers=2)
    assert a == b
    assert a != S.estimate_sigma(20, d, 200, seed=4)


@pytest.mark.parametrize("n,support", [(5, range(16)), (6, {2, 3, 11}), (7, {3, 12})])
def test_estimate_agrees_with_exact(n, support):
    e = S.exact_sigma(n, support)
    m = S.estimate_sigma(n, RuleDistribution.uniform_on(support), 4000, seed=1)
    assert abs(m.estimate - e.estimate) <= 4 * max(m.stderr, 1e-3)


def test_csv_row():
    e = S.exact_sigma(4, {6})
    assert S.CSV_HEADER.count(",") == e.csv_row().count(",")
    assert e.csv_row().startswith("4,exact,1,")


def test_rule6():
    r = S.rule6_checks(4)
    assert r.passed
    assert set(r.flip_fraction) == {5, 9, 17}


def test_wall_bound_formula():
    assert S.wall_bound(1 / 8, 50) == pytest.approx(4 * (7 / 8) ** 25)


def test_wall_check_small():
    rep = S.wall_bound_check(RuleDistribution.uniform(), (20, 30), 300, seed=2)
    assert rep.passed


def test_walls_force_stability():
    rep = S.wall_bound_check(RuleDistribution.uniform_on({0, 15}), (10,), 20, seed=0)
    assert rep.estimates[10].estimate == 1


def test_mixing():
    rep = S.mixing_check(60, RuleDistribution.uniform(), 300, lags=(20, 30), seed=5,
                         threshold=0.01)
    assert rep.passed, rep.covariance
    near = S.mixing_check(60, RuleDistribution.uniform(), 300, lags=(1,), seed=5)
    assert near.covariance[1] > 0.01  # neighbours are strongly correlated
    with pytest.raises(ValueError):
        S.mixing_check(10, RuleDistribution.uniform_on({6}), 5, lags=(2,))


def test_affine_exact_law_is_uniform():
    for support in ({3, 6, 9, 12}, {6}, {3}, {9, 12}):
        law = S.exact_cone_distribution(support, 2)
        assert len(law) == 8 and set(law.values()) == {Fraction(1, 8)}


def test_non_affine_exact_law_is_not_uniform():
    law = S.exact_cone_distribution({0}, 2)
    assert law[(1, 0, 0)] == Fraction(1, 2)
    law = S.exact_cone_distribution({2, 10}, 2)
    assert max(law.values()) > Fraction(1, 8)


def test_affine_sampling_small():
    rep = S.affine_cylinder_test({6}, 4, 20000, seed=3)
    assert not rep.rejected
    assert S.affine_cylinder_test({8}, 4, 20000, seed=3).rejected


def test_shift_patterns():
    assert S.shift_pattern_check({2}, 10, 15).passed
    assert S.shift_pattern_check({2, 10}, 60, 60, samples=20, seed=1).passed
    with pytest.raises(ValueError):
        S.shift_pattern_check({3}, 10, 10)


def test_constancy_envelope():
    assert S.constancy_envelope(8) == 2.0 ** -4
    assert S.constancy_envelope(9) == 2.0 ** -5


@pytest.mark.parametrize("support", [{6}, {2, 10}, {3, 6, 9, 12}])
def test_decay_for_zero_sigma_supports(support):
    rep = S.zero_sigma_decay_check(support, (4, 8, 16, 24), 4000, seed=9)
    assert rep.passed, rep.probabilities


def test_decay_envelope_for_rule6():
    rep = S.zero_sigma_decay_check({6}, (6, 10, 14), 40000, seed=4)
    for t, p, e in zip(rep.horizons, rep.probabilities, rep.stderr):
        assert abs(p - S.constancy_envelope(t)) <= 4 * e + 1e-3


def test_no_decay_with_walls():
    rep = S.zero_sigma_decay_check({0}, (4, 8, 16), 2000, seed=9)
    assert not rep.passed
    assert rep.probabilities[-1] == 1
