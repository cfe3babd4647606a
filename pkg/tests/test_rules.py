import itertools

import pytest
from hypothesis import given, strategies as st

from rbca import rules as R
from rbca.rules import AffineForm


def test_table_examples():
    assert R.apply(6, 1, 1) == 0
    assert R.apply(0, 1, 0) == 0
    assert R.apply(11, 1, 0) == 0
    # named rules in the usual Boolean vocabulary
    for x, y in itertools.product((0, 1), repeat=2):
        assert R.apply(1, x, y) == int(not (x or y))
        assert R.apply(6, x, y) == x ^ y
        assert R.apply(8, x, y) == (x & y)
        assert R.apply(14, x, y) == (x | y)
        assert R.apply(12, x, y) == x
        assert R.apply(10, x, y) == y
        assert R.apply(15, x, y) == 1


def test_truth_table_roundtrip():
    for j in range(16):
        t = R.truth_table(j)
        assert R.from_truth_table(*t) == j
        for (x, y), v in zip(((0, 0), (0, 1), (1, 0), (1, 1)), t):
            assert R.apply(j, x, y) == v


def test_invalid_rule():
    with pytest.raises(ValueError):
        R.apply(16, 0, 0)
    with pytest.raises(ValueError):
        R.mirror(-1)


def _perm(cycles):
    p = {j: j for j in range(16)}
    for a, b in cycles:
        p[a], p[b] = b, a
    return p


def test_mirror_permutation():
    expected = _perm([(0, 15), (1, 7), (2, 11), (4, 13), (6, 9), (8, 14)])
    assert {j: R.mirror(j) for j in range(16)} == expected
    assert R.mirror(2) == 11 and R.mirror(3) == 3


def test_reverse_permutation():
    expected = _perm([(2, 4), (3, 5), (10, 12), (11, 13)])
    assert {j: R.reverse(j) for j in range(16)} == expected
    assert R.reverse(2) == 4 and R.reverse(6) == 6


def test_definitions_of_symmetries():
    for j, x, y in itertools.product(range(16), (0, 1), (0, 1)):
        assert R.apply(R.mirror(j), x, y) == 1 - R.apply(j, 1 - x, 1 - y)
        assert R.apply(R.reverse(j), x, y) == R.apply(j, y, x)


def test_group_relations():
    for j in range(16):
        assert R.mirror(R.mirror(j)) == j
        assert R.reverse(R.reverse(j)) == j
        assert R.mirror(R.reverse(j)) == R.reverse(R.mirror(j))


def test_affine_forms():
    assert R.affine_form(6) is AffineForm.X_PLUS_Y
    assert R.affine_form(9) is AffineForm.X_PLUS_Y_PLUS_1
    assert R.affine_form(7) is AffineForm.NOT_AFFINE
    assert R.AFFINE_RULES == {0, 3, 5, 6, 9, 10, 12, 15}
    for j in range(16):
        form = R.affine_form(j)
        if form is AffineForm.NOT_AFFINE:
            continue
        a, b, c = R.AFFINE_COEFFICIENTS[form]
        for x, y in itertools.product((0, 1), repeat=2):
            assert R.apply(j, x, y) == (a * x + b * y + c) % 2


def test_orbit_examples():
    assert R.orbit({6}) == {frozenset({6}), frozenset({9})}
    assert R.orbit({2}) == {frozenset(s) for s in ({2}, {4}, {11}, {13})}
    assert R.orbit({3, 12}) == {frozenset({3, 12}), frozenset({5, 10})}


def test_support_parsing():
    assert R.parse_support("6,9") == {6, 9}
    assert R.format_support({9, 6}) == "6,9"
    assert R.from_mask(R.to_mask({0, 15})) == {0, 15}
    with pytest.raises(ValueError):
        R.parse_support("3,17")


@given(st.integers(min_value=1, max_value=(1 << 16) - 1))
def test_orbit_and_canonical_form(mask):
    s = R.from_mask(mask)
    orb = R.orbit(s)
    assert len(orb) in (1, 2, 4)
    assert s in orb
    canon = R.canonicalize(s)
    assert canon in orb
    assert all(R.canonicalize(t) == canon for t in orb)
    assert R.is_canonical(canon)
