import itertools
from fractions import Fraction

import numpy as np
import pytest

from rbca import engine
from rbca.exact import BudgetExceeded, count_stable
from rbca.rules import mirror, reverse
from rbca.stability import exact_sigma


def brute_sigma(n, support):
    """Direct average over every rule vector and initial configuration."""
    total = 0
    vectors = list(itertools.product(sorted(support), repeat=n))
    for rv in vectors:
        rvec = engine.RuleVector(rv)
        for bits in range(1 << n):
            total += engine.run_until_cycle(engine.RingConfiguration(n, bits), rvec,
                                            with_times=False).stable_count
    return Fraction(total, n * len(vectors) << n)


@pytest.mark.parametrize("n,support", [
    (2, range(16)), (3, range(16)), (4, {1, 2, 6, 9, 14}), (5, {2, 3, 11}),
    (4, {6}), (5, {12}), (6, {3}), (5, {0, 7, 10}),
])
def test_matches_brute_force(n, support):
    assert exact_sigma(n, support).exact == brute_sigma(n, support)


def test_known_small_values():
    assert exact_sigma(3, range(16)).exact == Fraction(1267, 2048)
    assert exact_sigma(4, range(16)).exact == Fraction(5633, 8192)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_rotation_reduction_is_exact(n):
    support = {2, 6, 9, 13}
    a = count_stable(n, support, reduce_rotations=True)
    b = count_stable(n, support, reduce_rotations=False)
    assert a == b


def test_symmetry_invariance():
    rng = np.random.default_rng(8)
    for _ in range(6):
        s = {int(j) for j in rng.choice(16, size=3, replace=False)}
        v = exact_sigma(5, s).exact
        assert exact_sigma(5, {mirror(j) for j in s}).exact == v
        assert exact_sigma(5, {reverse(j) for j in s}).exact == v


def test_constant_rules():
    assert exact_sigma(7, {0}).exact == 1
    assert exact_sigma(7, {0, 15}).exact == 1
    assert exact_sigma(8, {6}).exact == 1  # power-of-two rings absorb


def test_dyadic_format():
    e = exact_sigma(8, {12})
    assert e.exact == Fraction(1, 128)
    assert e.dyadic() == "1/2^7"
    assert exact_sigma(5, {3}).dyadic() == "0/2^0"


def test_budget():
    with pytest.raises(BudgetExceeded):
        count_stable(6, range(16), budget=1000)
    with pytest.raises(ValueError):
        count_stable(20, {0})
    with pytest.raises(ValueError):
        count_stable(4, set())
