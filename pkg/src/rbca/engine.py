"""Deterministic evolution of inhomogeneous Boolean cellular automata.

Ring configurations are bit-packed into Python ints (bit ``i`` is cell ``i``),
so one step of an ``n``-cell ring costs a handful of big-int operations
regardless of the rule mix.  The same packed formula also runs on numpy
``uint64`` arrays, which is how many rings of size ``n <= 64`` are stepped at
once.

Cell ``i`` has left neighbour ``i - 1`` and right neighbour ``i + 1`` (mod n)
and updates as ``x_i <- phi_i(x_{i-1}, x_{i+1})``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import rules as _rules
from .rules import TABLE


class CycleNotFound(RuntimeError):
    """The eventual cycle was not reached within ``max_steps``."""


def _check_n(n: int) -> int:
    if n < 2:
        raise ValueError(f"ring size must be at least 2, got {n}")
    return n


@dataclass(frozen=True)
class RingConfiguration:
    n: int
    bits: int

    def __post_init__(self):
        _check_n(self.n)
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError("bits do not fit in n cells")

    @classmethod
    def from_cells(cls, cells: Sequence[int]) -> "RingConfiguration":
        return cls(len(cells), pack(cells))

    @classmethod
    def from_string(cls, text: str) -> "RingConfiguration":
        """``"1000"`` puts a 1 on cell 0 and zeros elsewhere."""
        return cls.from_cells([int(ch) for ch in text.strip()])

    def cells(self) -> np.ndarray:
        return unpack(self.bits, self.n)

    def __getitem__(self, i: int) -> int:
        return (self.bits >> (i % self.n)) & 1

    def __str__(self) -> str:
        return "".join(str(v) for v in self.cells())


def pack(cells: Sequence[int]) -> int:
    arr = np.asarray(cells, dtype=np.uint8)
    if arr.size == 0:
        return 0
    return int.from_bytes(np.packbits(arr, bitorder="little").tobytes(), "little")


def unpack(bits: int, n: int) -> np.ndarray:
    raw = np.frombuffer(bits.to_bytes((n + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].copy()


def rule_masks(rule_vector: Sequence[int]) -> tuple[int, int, int, int]:
    """Per-cell truth-table masks ``(b00, b01, b10, b11)``.

    Bit ``i`` of ``b_xy`` is ``phi_{rules[i]}(x, y)``.
    """
    idx = np.asarray(rule_vector, dtype=np.intp)
    cols = TABLE[idx]
    return tuple(pack(cols[:, k]) for k in range(4))


@dataclass(frozen=True)
class RuleVector:
    rules: tuple[int, ...]
    masks: tuple[int, int, int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        rules = tuple(int(j) for j in self.rules)
        _check_n(len(rules))
        for j in rules:
            if not 0 <= j < 16:
                raise ValueError(f"rule index out of range: {j}")
        object.__setattr__(self, "rules", rules)
        object.__setattr__(self, "masks", rule_masks(rules))

    @classmethod
    def uniform(cls, j: int, n: int) -> "RuleVector":
        return cls((j,) * n)

    @property
    def n(self) -> int:
        return len(self.rules)

    def step_bits(self, bits: int) -> int:
        return advance(bits, self.n, self.masks)

    def __str__(self) -> str:
        return _rules.format_rules(self.rules)


def advance(c, n: int, masks):
    """One synchronous update of packed ring state(s) ``c``.

    Works for Python ints of any width and for numpy unsigned arrays when
    ``n`` fits in the dtype (masks must then share the dtype).
    """
    b00, b01, b10, b11 = masks
    full = (1 << n) - 1
    if isinstance(c, np.ndarray):
        full = c.dtype.type(full)
        one = c.dtype.type(1)
        left = ((c << one) | (c >> c.dtype.type(n - 1))) & full
        right = (c >> one) | ((c & one) << c.dtype.type(n - 1))
    else:
        left = ((c << 1) | (c >> (n - 1))) & full
        right = (c >> 1) | ((c & 1) << (n - 1))
    nl = ~left & full
    nr = ~right & full
    return (nl & nr & b00) | (nl & right & b01) | (left & nr & b10) | (left & right & b11)


def step(config: RingConfiguration, rule_vector: RuleVector) -> RingConfiguration:
    if config.n != rule_vector.n:
        raise ValueError(f"size mismatch: config has {config.n} cells, rules {rule_vector.n}")
    return RingConfiguration(config.n, rule_vector.step_bits(config.bits))


def step_reference(cells: Sequence[int], rule_vector: Sequence[int]) -> list[int]:
    """Unpacked per-cell update; kept deliberately naive as an oracle."""
    n = len(cells)
    if n != len(rule_vector):
        raise ValueError("size mismatch")
    return [
        _rules.apply(rule_vector[i], cells[(i - 1) % n], cells[(i + 1) % n])
        for i in range(n)
    ]


def numpy_masks(rule_vector: Sequence[int], dtype=np.uint64):
    if len(rule_vector) > np.dtype(dtype).itemsize * 8:
        raise ValueError("ring too large for the numpy word size")
    return tuple(dtype(m) for m in rule_masks(rule_vector))


def step_many(states: np.ndarray, rule_vector: Sequence[int]) -> np.ndarray:
    """Step many packed configurations of one ring (``n <= 64``) at once."""
    states = np.asarray(states, dtype=np.uint64)
    return advance(states, len(rule_vector), numpy_masks(rule_vector))


def all_configurations(n: int) -> np.ndarray:
    if n > 30:
        raise ValueError("refusing to enumerate more than 2^30 configurations")
    return np.arange(1 << n, dtype=np.uint64)


def rotate(bits: int, n: int, k: int) -> int:
    """Move cell ``i`` to cell ``i + k`` (mod n)."""
    k %= n
    full = (1 << n) - 1
    return ((bits << k) | (bits >> (n - k))) & full


# --- cycle detection -----------------------------------------------------------


@dataclass(frozen=True)
class CycleSummary:
    n: int
    preperiod: int
    period: int
    stable_mask: int
    cycle_state: int
    stabilization_time: tuple[int | None, ...] | None = None

    @property
    def stable_count(self) -> int:
        return self.stable_mask.bit_count()

    @property
    def stable_fraction(self) -> float:
        return self.stable_count / self.n

    def is_stable(self, i: int) -> bool:
        return bool((self.stable_mask >> i) & 1)

    def stable_string(self) -> str:
        return "".join(str((self.stable_mask >> i) & 1) for i in range(self.n))


def _hash_cycle(f, x0: int, max_steps: int, memory_cap: int):
    seen = {x0: 0}
    history = [x0]
    x = x0
    for t in range(1, max_steps + 1):
        x = f(x)
        t0 = seen.get(x)
        if t0 is not None:
            return t0, t - t0, history
        if len(seen) >= memory_cap:
            return None
        seen[x] = t
        history.append(x)
    raise CycleNotFound(f"no repeated configuration within {max_steps} steps")


def _brent_cycle(f, x0: int, max_steps: int):
    limit = 4 * max_steps + 4
    evals = 1
    power = period = 1
    tortoise, hare = x0, f(x0)
    while tortoise != hare:
        if power == period:
            tortoise = hare
            power *= 2
            period = 0
        hare = f(hare)
        period += 1
        evals += 1
        if evals > limit:
            raise CycleNotFound(f"no repeated configuration within {max_steps} steps")
    tortoise = hare = x0
    for _ in range(period):
        hare = f(hare)
    pre = 0
    while tortoise != hare:
        tortoise = f(tortoise)
        hare = f(hare)
        pre += 1
    if pre + period > max_steps:
        raise CycleNotFound(f"no repeated configuration within {max_steps} steps")
    return pre, period


def default_max_steps(n: int) -> int:
    return 1 << min(n, 20)


def find_cycle(f, x0: int, max_steps: int, *, method: str = "auto",
               memory_cap: int = 1 << 20):
    """``(preperiod, period, history or None)`` of the orbit of ``x0`` under ``f``.

    ``history`` holds the states at times ``0..preperiod+period-1`` when the
    hashing route was used.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    if method not in ("auto", "hash", "brent"):
        raise ValueError(f"unknown cycle method {method!r}")
    if method != "brent":
        cap = max_steps + 1 if method == "hash" else memory_cap
        found = _hash_cycle(f, x0, max_steps, cap)
        if found is not None:
            return found
    pre, period = _brent_cycle(f, x0, max_steps)
    return pre, period, None


def run_until_cycle(config: RingConfiguration, rule_vector: RuleVector,
                    max_steps: int | None = None, *, method: str = "auto",
                    memory_cap: int = 1 << 20, with_times: bool = True) -> CycleSummary:
    """Find the eventual cycle of ``config`` and the cells constant on it.

    ``method`` is ``"hash"`` (remember every configuration), ``"brent"``
    (constant memory) or ``"auto"`` (hash until ``memory_cap`` states are
    stored, then restart with Brent).
    """
    if config.n != rule_vector.n:
        raise ValueError("size mismatch")
    n = config.n
    if max_steps is None:
        max_steps = default_max_steps(n)
    f = rule_vector.step_bits
    pre, period, history = find_cycle(f, config.bits, max_steps,
                                      method=method, memory_cap=memory_cap)

    if history is not None:
        x = history[pre]
    else:
        x = config.bits
        for _ in range(pre):
            x = f(x)
    start = x
    acc_and = acc_or = x
    for _ in range(period - 1):
        x = f(x)
        acc_and &= x
        acc_or |= x
    full = (1 << n) - 1
    stable = ~(acc_and ^ acc_or) & full

    times = None
    if with_times:
        last = [-1] * n
        states = history[:pre] if history is not None else _orbit(f, config.bits, pre)
        for t, y in enumerate(states):
            diff = (y ^ start) & stable
            while diff:
                low = diff & -diff
                last[low.bit_length() - 1] = t
                diff ^= low
        times = tuple(last[i] + 1 if (stable >> i) & 1 else None for i in range(n))
    return CycleSummary(n, pre, period, stable, start, times)


def _orbit(f, x: int, count: int):
    for _ in range(count):
        yield x
        x = f(x)


def space_time(config: RingConfiguration, rule_vector: RuleVector, steps: int) -> np.ndarray:
    """Rows ``0..steps`` of the space-time diagram, shape ``(steps + 1, n)``."""
    rows = np.empty((steps + 1, config.n), dtype=np.uint8)
    x = config.bits
    for t in range(steps + 1):
        rows[t] = unpack(x, config.n)
        x = rule_vector.step_bits(x)
    return rows


# --- infinite-lattice sampling through the light cone ---------------------------


@dataclass(frozen=True)
class ConeTrajectory:
    horizon: int
    values: tuple[int, ...]


def evolve_cone(initial: np.ndarray, rule_block: np.ndarray) -> np.ndarray:
    """Time series of the centre cell of a batch of light-cone windows.

    ``initial`` has shape ``(S, 2T + 1)`` (cells ``-T..T`` at time 0) and
    ``rule_block`` shape ``(S, 2T - 1)`` (rules of cells ``-(T-1)..T-1``).
    Returns ``X_0(0..T)`` with shape ``(S, T + 1)``.
    """
    x = np.asarray(initial, dtype=np.uint8)
    rules = np.asarray(rule_block, dtype=np.intp)
    samples, width = x.shape
    horizon = (width - 1) // 2
    if width != 2 * horizon + 1 or rules.shape != (samples, max(2 * horizon - 1, 0)):
        raise ValueError("window shapes do not match a common horizon")
    out = np.empty((samples, horizon + 1), dtype=np.uint8)
    out[:, 0] = x[:, horizon]
    for t in range(1, horizon + 1):
        # new window covers cells -(T-t)..(T-t); their rules start at offset t-1
        k = 2 * (horizon - t) + 1
        r = rules[:, t - 1:t - 1 + k]
        x = TABLE[r, 2 * x[:, :-2] + x[:, 2:]]
        out[:, t] = x[:, horizon - t]
    return out


def sample_cones(distribution, horizon: int, samples: int, rng: np.random.Generator):
    """Batch of exact samples of ``X_0(0..horizon)`` under the infinite-lattice law."""
    if horizon < 0:
        raise ValueError("horizon must be >= 0")
    initial = rng.integers(0, 2, size=(samples, 2 * horizon + 1), dtype=np.uint8)
    rule_block = distribution.sample(rng, (samples, max(2 * horizon - 1, 0)))
    return evolve_cone(initial, rule_block)


def sample_cone(distribution, horizon: int, seed) -> ConeTrajectory:
    rng = np.random.default_rng(seed)
    values = sample_cones(distribution, horizon, 1, rng)[0]
    return ConeTrajectory(horizon, tuple(int(v) for v in values))


@dataclass(frozen=True)
class FlipReport:
    passed: bool
    horizon: int
    trials: int
    failures: dict[int, int]


def flip_propagation_check(support, horizon: int, trials: int, seed) -> FlipReport:
    """Flip ``X_{-t}(0)`` and check that ``X_0(t)`` flips, for ``t = 1..horizon``.

    Only meaningful for supports inside {3, 6, 9, 12}, where every rule is
    ``x + f(y)``.
    """
    from .stability import RuleDistribution

    s = frozenset(support)
    if not s or not s <= {3, 6, 9, 12}:
        raise ValueError("support must be a nonempty subset of {3, 6, 9, 12}")
    dist = RuleDistribution.uniform_on(s)
    rng = np.random.default_rng(seed)
    failures = {}
    for t in range(1, horizon + 1):
        initial = rng.integers(0, 2, size=(trials, 2 * t + 1), dtype=np.uint8)
        block = dist.sample(rng, (trials, 2 * t - 1))
        flipped = initial.copy()
        flipped[:, 0] ^= 1
        a = evolve_cone(initial, block)[:, t]
        b = evolve_cone(flipped, block)[:, t]
        failures[t] = int(np.count_nonzero(a == b))
    return FlipReport(all(v == 0 for v in failures.values()), horizon, trials, failures)
