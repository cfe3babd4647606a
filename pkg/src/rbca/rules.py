"""The sixteen two-input Boolean rules and their symmetries.

Rule ``j`` is indexed by its truth table ``t00 t01 t10 t11`` with ``t00`` the
least significant bit: ``j = t00 + 2 t01 + 4 t10 + 8 t11``.  So ``j = 1`` is
NOR (1 only on (0, 0)), ``j = 3`` is ``x + 1`` and ``j = 12`` is ``x``.

Rules are plain ints throughout the package; supports are frozensets of ints.
"""
from __future__ import annotations

import enum
from typing import Iterable

import numpy as np

N_RULES = 16

# TABLE[j, 2*x + y] = phi_j(x, y)
TABLE = np.array(
    [[(j >> k) & 1 for k in range(4)] for j in range(N_RULES)],
    dtype=np.uint8,
)
TABLE.setflags(write=False)


class AffineForm(enum.Enum):
    CONST0 = "0"
    CONST1 = "1"
    X = "x"
    X_PLUS_1 = "x+1"
    Y = "y"
    Y_PLUS_1 = "y+1"
    X_PLUS_Y = "x+y"
    X_PLUS_Y_PLUS_1 = "x+y+1"
    NOT_AFFINE = "no"


_AFFINE = {
    0: AffineForm.CONST0,
    3: AffineForm.X_PLUS_1,
    5: AffineForm.Y_PLUS_1,
    6: AffineForm.X_PLUS_Y,
    9: AffineForm.X_PLUS_Y_PLUS_1,
    10: AffineForm.Y,
    12: AffineForm.X,
    15: AffineForm.CONST1,
}

# (a, b, c): a*x + b*y + c mod 2
AFFINE_COEFFICIENTS = {
    AffineForm.CONST0: (0, 0, 0),
    AffineForm.CONST1: (0, 0, 1),
    AffineForm.X: (1, 0, 0),
    AffineForm.X_PLUS_1: (1, 0, 1),
    AffineForm.Y: (0, 1, 0),
    AffineForm.Y_PLUS_1: (0, 1, 1),
    AffineForm.X_PLUS_Y: (1, 1, 0),
    AffineForm.X_PLUS_Y_PLUS_1: (1, 1, 1),
}

WALLS = frozenset({0, 15})
AFFINE_RULES = frozenset(_AFFINE)


def _check(j: int) -> int:
    if not 0 <= j < N_RULES:
        raise ValueError(f"rule index must be in 0..15, got {j}")
    return j


def apply(j: int, x: int, y: int) -> int:
    """Value of rule ``j`` on the neighbour pair ``(x, y)``."""
    return (_check(j) >> (2 * x + y)) & 1


def truth_table(j: int) -> tuple[int, int, int, int]:
    """``(t00, t01, t10, t11)`` for rule ``j``."""
    return tuple(int(v) for v in TABLE[_check(j)])


def from_truth_table(t00: int, t01: int, t10: int, t11: int) -> int:
    return t00 | (t01 << 1) | (t10 << 2) | (t11 << 3)


def mirror(j: int) -> int:
    """Complement conjugation: ``(M phi)(x, y) = 1 - phi(1 - x, 1 - y)``."""
    t00, t01, t10, t11 = truth_table(j)
    return from_truth_table(1 - t11, 1 - t10, 1 - t01, 1 - t00)


def reverse(j: int) -> int:
    """Space reversal: ``(R phi)(x, y) = phi(y, x)``."""
    t00, t01, t10, t11 = truth_table(j)
    return from_truth_table(t00, t10, t01, t11)


def affine_form(j: int) -> AffineForm:
    return _AFFINE.get(_check(j), AffineForm.NOT_AFFINE)


def format_rules(rules: Iterable[int]) -> str:
    return ",".join(str(int(j)) for j in rules)


# --- supports ---------------------------------------------------------------

Support = frozenset


def support(members: Iterable[int]) -> frozenset[int]:
    return frozenset(_check(int(j)) for j in members)


def to_mask(s: Iterable[int]) -> int:
    mask = 0
    for j in s:
        mask |= 1 << _check(j)
    return mask


def from_mask(mask: int) -> frozenset[int]:
    return frozenset(j for j in range(N_RULES) if (mask >> j) & 1)


def parse_support(text: str) -> frozenset[int]:
    """``"2,3,11"`` -> ``frozenset({2, 3, 11})``."""
    text = text.strip().strip("{}")
    if not text:
        return frozenset()
    return support(int(tok) for tok in text.split(","))


def format_support(s: Iterable[int]) -> str:
    return ",".join(str(j) for j in sorted(s))


# The four group elements as maps on a single rule.
SYMMETRIES = {
    "id": lambda j: j,
    "M": mirror,
    "R": reverse,
    "MR": lambda j: mirror(reverse(j)),
}


def transform_support(s: Iterable[int], element: str) -> frozenset[int]:
    g = SYMMETRIES[element]
    return frozenset(g(j) for j in s)


def orbit(s: Iterable[int]) -> set[frozenset[int]]:
    s = frozenset(s)
    return {transform_support(s, g) for g in SYMMETRIES}


def canonicalize(s: Iterable[int]) -> frozenset[int]:
    """Lexicographically smallest orbit member, comparing sorted index lists."""
    return min(orbit(s), key=sorted)


def is_canonical(s: Iterable[int]) -> bool:
    s = frozenset(s)
    return canonicalize(s) == s
