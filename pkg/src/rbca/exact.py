"""Exhaustive computation of sigma_N for small rings.

Every rule vector over a support and every initial configuration is
enumerated.  For a fixed rule vector the successor map on all ``2^n`` packed
states is built as a table, and the eventual-cycle statistics of all states
are read off by pointer doubling:

* ``F_k = f^(2^k)``; after ``n`` squarings ``F_n(s)`` lies on the cycle of ``s``
  (transients are shorter than ``2^n``);
* ``O_k(s) = OR_{j < 2^k} f^j(s)`` and ``A_k`` (AND) double alongside, so
  ``O_n`` and ``A_n`` evaluated at the cycle point cover a full period.

A cell is stable for ``s`` iff its bit agrees between ``O_n`` and ``A_n`` at
``F_n(s)``.  Rule vectors related by a rotation of the ring have equal totals,
so only necklace representatives are evaluated, weighted by orbit size.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .rules import TABLE

MAX_EXACT_N = 16
DEFAULT_BUDGET = 1 << 31
_CHUNK_ENTRIES = 1 << 22


class BudgetExceeded(RuntimeError):
    def __init__(self, required: int, budget: int):
        super().__init__(f"exhaustive enumeration needs {required} (rule vector, state) "
                         f"pairs, budget is {budget}")
        self.required = required
        self.budget = budget


@dataclass(frozen=True)
class ExactCount:
    n: int
    support: tuple[int, ...]
    stable_cells: int
    rule_vectors: int
    configurations: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.stable_cells, self.n * self.rule_vectors * self.configurations)


def _popcount_table(n: int) -> np.ndarray:
    v = np.arange(1 << n, dtype=np.uint32)
    c = np.zeros_like(v)
    for k in range(n):
        c += (v >> k) & 1
    return c


def _state_dtype(n: int):
    return np.uint8 if n <= 8 else np.uint16


def _necklaces(n: int, base: int, codes: np.ndarray):
    """Filter ``codes`` (rule vectors written in base ``base``) to rotation
    representatives; return ``(reps, orbit_sizes)``."""
    digits = np.stack([(codes // base ** i) % base for i in range(n)], axis=1)
    weights = base ** np.arange(n, dtype=np.int64)
    is_rep = np.ones(len(codes), dtype=bool)
    orbit = np.full(len(codes), n, dtype=np.int64)
    found = np.zeros(len(codes), dtype=bool)
    for k in range(1, n):
        rot = np.roll(digits, k, axis=1) @ weights
        is_rep &= codes <= rot
        hit = (rot == codes) & ~found
        orbit[hit] = k
        found |= hit
    return codes[is_rep], orbit[is_rep]


def successor_tables(rule_vectors: np.ndarray, n: int) -> np.ndarray:
    """``succ[b, s]`` = packed successor of state ``s`` under ``rule_vectors[b]``."""
    dtype = _state_dtype(n)
    states = np.arange(1 << n, dtype=np.int64)
    succ = np.zeros((rule_vectors.shape[0], 1 << n), dtype=dtype)
    for i in range(n):
        left = (states >> ((i - 1) % n)) & 1
        right = (states >> ((i + 1) % n)) & 1
        col = TABLE[rule_vectors[:, i][:, None], (2 * left + right)[None, :]]
        succ |= (col.astype(dtype) << dtype(i))
    return succ


def stable_counts(succ: np.ndarray, n: int) -> np.ndarray:
    """Stable-cell count of every start state, shape like ``succ``."""
    ident = np.broadcast_to(np.arange(succ.shape[1], dtype=succ.dtype), succ.shape)
    f = succ
    o = ident.copy()
    a = ident.copy()
    for _ in range(n):
        o = o | np.take_along_axis(o, f, axis=1)
        a = a & np.take_along_axis(a, f, axis=1)
        f = np.take_along_axis(f, f, axis=1)
    full = succ.dtype.type((1 << n) - 1)
    stable = ~(np.take_along_axis(o, f, axis=1) ^ np.take_along_axis(a, f, axis=1)) & full
    return _popcount_table(n)[stable]


def count_stable(n: int, support: Iterable[int], *, reduce_rotations: bool = True,
                 budget: int = DEFAULT_BUDGET) -> ExactCount:
    """Total number of stable (cell, rule vector, initial state) triples."""
    members = np.array(sorted(set(support)), dtype=np.intp)
    if members.size == 0:
        raise ValueError("support must be nonempty")
    if not 2 <= n <= MAX_EXACT_N:
        raise ValueError(f"exact enumeration supports 2 <= n <= {MAX_EXACT_N}")
    base = len(members)
    n_vectors = base ** n
    required = n_vectors << n
    if required > budget:
        raise BudgetExceeded(required, budget)

    rows_per_chunk = max(1, _CHUNK_ENTRIES >> n)
    # reps shrink by about n, so read raw codes in proportionally larger slabs
    code_chunk = rows_per_chunk * (n if reduce_rotations else 1)
    total = 0
    for start in range(0, n_vectors, code_chunk):
        codes = np.arange(start, min(start + code_chunk, n_vectors), dtype=np.int64)
        if reduce_rotations:
            codes, mult = _necklaces(n, base, codes)
        else:
            mult = np.ones(len(codes), dtype=np.int64)
        for k in range(0, len(codes), rows_per_chunk):
            c = codes[k:k + rows_per_chunk]
            digits = np.stack([(c // base ** i) % base for i in range(n)], axis=1)
            vectors = members[digits]
            per_vector = stable_counts(successor_tables(vectors, n), n).sum(axis=1, dtype=np.int64)
            total += int(per_vector @ mult[k:k + rows_per_chunk])
    return ExactCount(n, tuple(int(j) for j in members), total, n_vectors, 1 << n)
