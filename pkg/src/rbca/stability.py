"""Stabilization probabilities and the statistical checks built on them.

``estimate_sigma`` averages the stable-cell fraction over independent ring
replicas; by stationarity this has the same mean as the single-cell
indicator but far less variance.  ``exact_sigma`` enumerates small rings.
The remaining functions machine-check individual dynamical facts
(rule 6 on power-of-two rings, wall-driven convergence, affine chaos, the
shift behaviour of supports {2} and {2, 10}).
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from scipy import stats

from . import engine
from .exact import DEFAULT_BUDGET, count_stable
from .rules import N_RULES, WALLS, mirror, reverse

WEIGHT_TOL = 1e-12


@dataclass(frozen=True)
class RuleDistribution:
    weights: tuple[float, ...]

    def __post_init__(self):
        w = tuple(float(v) for v in self.weights)
        if len(w) != N_RULES:
            raise ValueError("need exactly 16 weights")
        if any(v < 0 or not math.isfinite(v) for v in w):
            raise ValueError("weights must be finite and nonnegative")
        if abs(sum(w) - 1.0) > WEIGHT_TOL:
            raise ValueError(f"weights sum to {sum(w)!r}, not 1")
        if not any(v > 0 for v in w):
            raise ValueError("empty support")
        object.__setattr__(self, "weights", w)

    @classmethod
    def uniform(cls) -> "RuleDistribution":
        return cls((1 / N_RULES,) * N_RULES)

    @classmethod
    def uniform_on(cls, support: Iterable[int]) -> "RuleDistribution":
        s = sorted(set(int(j) for j in support))
        if not s:
            raise ValueError("empty support")
        w = [0.0] * N_RULES
        for j in s:
            w[j] = 1 / len(s)
        # absorb rounding so the sum passes the 1e-12 check exactly
        w[s[0]] += 1.0 - sum(w)
        return cls(tuple(w))

    @classmethod
    def point_mass(cls, j: int) -> "RuleDistribution":
        return cls.uniform_on([j])

    @classmethod
    def from_weights(cls, weights: dict[int, float]) -> "RuleDistribution":
        w = [0.0] * N_RULES
        for j, v in weights.items():
            w[int(j)] += float(v)
        return cls(tuple(w))

    @property
    def support(self) -> frozenset[int]:
        return frozenset(j for j, v in enumerate(self.weights) if v > 0)

    @property
    def wall_mass(self) -> float:
        return sum(self.weights[j] for j in WALLS)

    def is_uniform_on_support(self) -> bool:
        s = self.support
        return all(abs(self.weights[j] - 1 / len(s)) <= WEIGHT_TOL for j in s)

    def transformed(self, g) -> "RuleDistribution":
        w = [0.0] * N_RULES
        for j, v in enumerate(self.weights):
            w[g(j)] += v
        return RuleDistribution(tuple(w))

    def mirror(self) -> "RuleDistribution":
        return self.transformed(mirror)

    def reverse(self) -> "RuleDistribution":
        return self.transformed(reverse)

    def sample(self, rng: np.random.Generator, size) -> np.ndarray:
        s = sorted(self.support)
        if len(s) == 1:
            return np.full(size, s[0], dtype=np.intp)
        p = np.array([self.weights[j] for j in s])
        return np.asarray(s, dtype=np.intp)[rng.choice(len(s), size=size, p=p / p.sum())]

    def describe(self) -> str:
        s = sorted(self.support)
        if len(s) == N_RULES and self.is_uniform_on_support():
            return "uniform"
        if self.is_uniform_on_support():
            return "uniform-on:" + ",".join(map(str, s))
        return "weights:" + ",".join(f"{j}={self.weights[j]:.12g}" for j in s)


def parse_distribution(text: str) -> RuleDistribution:
    """Parse ``uniform``, ``uniform-on:J1,J2,...`` or ``weights:J1=w1,...``.

    Explicit weights must sum to 1 within 1e-9; they are then renormalized.
    """
    text = text.strip()
    if text == "uniform":
        return RuleDistribution.uniform()
    kind, _, body = text.partition(":")
    if kind == "uniform-on":
        members = [int(tok) for tok in body.split(",") if tok.strip()]
        if not members or any(not 0 <= j < N_RULES for j in members):
            raise ValueError(f"bad support in {text!r}")
        return RuleDistribution.uniform_on(members)
    if kind == "weights":
        weights: dict[int, float] = {}
        for item in body.split(","):
            j, _, v = item.partition("=")
            j = int(j)
            if not 0 <= j < N_RULES:
                raise ValueError(f"rule index out of range in {text!r}")
            weights[j] = weights.get(j, 0.0) + float(v)
        total = sum(weights.values())
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"weights sum to {total}, not 1")
        return RuleDistribution.from_weights({j: v / total for j, v in weights.items()})
    raise ValueError(f"unrecognized distribution {text!r}")


# --- sigma estimates ------------------------------------------------------------

CSV_HEADER = "n,mode,estimate,stderr,ci95,samples,seed,distribution"


@dataclass(frozen=True)
class SigmaEstimate:
    n: int
    estimate: float
    stderr: float
    ci95: float
    samples: int
    seed: int | None
    mode: str  # "monte-carlo" or "exact"
    distribution: str = ""
    exact: Fraction | None = None

    def csv_row(self) -> str:
        seed = "" if self.seed is None else str(self.seed)
        return (f"{self.n},{self.mode},{self.estimate:.10g},{self.stderr:.6g},"
                f"{self.ci95:.6g},{self.samples},{seed},{self.distribution}")

    def dyadic(self) -> str | None:
        """``p/2^q`` for dyadic exact values (``p`` odd, or ``0``)."""
        if self.exact is None:
            return None
        num, den = self.exact.numerator, self.exact.denominator
        if den & (den - 1):
            return None
        return f"{num}/2^{den.bit_length() - 1}"

    def covers(self, value: float) -> bool:
        return abs(self.estimate - value) <= self.ci95


def _replica_state(n: int, distribution: RuleDistribution, seed: int, index: int):
    rng = np.random.default_rng([seed, index])
    rule_vector = engine.RuleVector(tuple(distribution.sample(rng, n)))
    bits = engine.pack(rng.integers(0, 2, size=n, dtype=np.uint8))
    return engine.RingConfiguration(n, bits), rule_vector


def replica_stable_mask(n: int, distribution: RuleDistribution, seed: int, index: int,
                        max_steps: int | None = None) -> int:
    """Stable-cell mask of replica ``index``; seeded by ``(seed, index)`` alone."""
    config, rule_vector = _replica_state(n, distribution, seed, index)
    return engine.run_until_cycle(config, rule_vector, max_steps, with_times=False).stable_mask


def _replica_counts(args) -> np.ndarray:
    n, distribution, seed, start, stop, max_steps = args
    return np.array([
        replica_stable_mask(n, distribution, seed, i, max_steps).bit_count()
        for i in range(start, stop)
    ], dtype=np.int64)


def default_workers() -> int:
    env = os.environ.get("RBCA_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def stable_counts_mc(n: int, distribution: RuleDistribution, samples: int, seed: int,
                     max_steps: int | None = None, workers: int = 1) -> np.ndarray:
    """Per-replica stable-cell counts, identical for any ``workers``."""
    if workers <= 1 or samples < 2 * workers:
        return _replica_counts((n, distribution, seed, 0, samples, max_steps))
    bounds = np.linspace(0, samples, workers * 4 + 1).astype(int)
    jobs = [(n, distribution, seed, int(a), int(b), max_steps)
            for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_replica_counts, jobs))
    return np.concatenate(parts)


def estimate_sigma(n: int, distribution: RuleDistribution, samples: int,
                   horizon_cap: int | None = None, seed: int = 0,
                   workers: int = 1) -> SigmaEstimate:
    """Monte Carlo sigma_N with a normal-approximation 95% interval."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    counts = stable_counts_mc(n, distribution, samples, seed, horizon_cap, workers)
    frac = counts / n
    mean = float(frac.mean())
    stderr = float(frac.std(ddof=1) / math.sqrt(samples)) if samples > 1 else 0.0
    return SigmaEstimate(n, mean, stderr, 1.96 * stderr, samples, seed, "monte-carlo",
                         distribution.describe())


def exact_sigma(n: int, support: Iterable[int], *, budget: int = DEFAULT_BUDGET,
                reduce_rotations: bool = True) -> SigmaEstimate:
    """Exact sigma_N for rules drawn uniformly from ``support``."""
    s = frozenset(support)
    count = count_stable(n, s, budget=budget, reduce_rotations=reduce_rotations)
    value = count.value
    return SigmaEstimate(n, float(value), 0.0, 0.0, count.rule_vectors * count.configurations,
                         None, "exact", RuleDistribution.uniform_on(s).describe(), value)


# --- rule 6 -----------------------------------------------------------------------


@dataclass
class Rule6Report:
    absorbed: dict[int, bool] = field(default_factory=dict)
    flip_fraction: dict[int, Fraction] = field(default_factory=dict)
    identity: dict[tuple[int, int], bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return (all(self.absorbed.values())
                and all(v == Fraction(1, 2) for v in self.flip_fraction.values())
                and all(self.identity.values()))


def _evolve_many(states: np.ndarray, rule_vector: Sequence[int], steps: int) -> list[np.ndarray]:
    out = [states]
    masks = engine.numpy_masks(rule_vector)
    n = len(rule_vector)
    for _ in range(steps):
        states = engine.advance(states, n, masks)
        out.append(states)
    return out


def rule6_checks(p_max: int = 4, *, identity_n: int = 17, identity_m: int = 3,
                 trials: int = 1000, seed: int = 0) -> Rule6Report:
    """Exhaustive rule-6 facts on small rings.

    (a) n = 2^p: every initial configuration is all-zero by time n.
    (b) n = 2^p + 1 (p >= 2): exactly half of the initial configurations have
        X_0(n-1) != X_0(n).
    (c) X_0(n + 2^m - 2) = X_{-2^m}(0) + X_{2^m}(0) on random initials.
    """
    if p_max > 4:
        raise ValueError("exhaustive mode is limited to p_max <= 4")
    report = Rule6Report()
    for p in range(1, p_max + 1):
        n = 1 << p
        states = engine.all_configurations(n)
        history = _evolve_many(states, [6] * n, n)
        report.absorbed[n] = bool(np.all(history[n] == 0))
    for p in range(2, p_max + 1):
        n = (1 << p) + 1
        history = _evolve_many(engine.all_configurations(n), [6] * n, n)
        a = history[n - 1] & np.uint64(1)
        b = history[n] & np.uint64(1)
        report.flip_fraction[n] = Fraction(int(np.count_nonzero(a != b)), 1 << n)

    n = identity_n
    rng = np.random.default_rng(seed)
    init = np.array([engine.pack(r) for r in rng.integers(0, 2, size=(trials, n))],
                    dtype=np.uint64)
    horizon = n + (1 << identity_m) - 2
    history = _evolve_many(init, [6] * n, horizon)
    for m in range(identity_m + 1):
        t = n + (1 << m) - 2
        lhs = history[t] & np.uint64(1)
        k = (1 << m) % n
        rhs = ((init >> np.uint64((-k) % n)) ^ (init >> np.uint64(k))) & np.uint64(1)
        report.identity[(n, m)] = bool(np.all(lhs == rhs))
    return report


# --- walls and mixing ---------------------------------------------------------------


@dataclass
class WallBoundReport:
    wall_mass: float
    estimates: dict[int, SigmaEstimate]
    gaps: dict[tuple[int, int], tuple[float, float]]  # (|gap|, allowed)
    floor_ok: bool

    @property
    def passed(self) -> bool:
        return self.floor_ok and all(g <= allowed for g, allowed in self.gaps.values())


def wall_bound(wall_mass: float, n: int) -> float:
    """Chamber bound ``4 (1 - w)^(n/2)`` on ``|sigma_n - sigma_*|``."""
    return 4 * (1 - wall_mass) ** (n / 2)


def wall_bound_check(distribution: RuleDistribution, n_list: Sequence[int], samples: int,
                     seed: int = 0, workers: int = 1,
                     estimates: dict[int, SigmaEstimate] | None = None) -> WallBoundReport:
    w = distribution.wall_mass
    if w <= 0:
        raise ValueError("distribution puts no mass on the walls {0, 15}")
    if estimates is None:
        estimates = {n: estimate_sigma(n, distribution, samples, seed=seed + n, workers=workers)
                     for n in n_list}
    gaps = {}
    ns = sorted(estimates)
    for i, a in enumerate(ns):
        for b in ns[i + 1:]:
            ea, eb = estimates[a], estimates[b]
            allowed = wall_bound(w, min(a, b)) + ea.ci95 + eb.ci95
            gaps[(a, b)] = (abs(ea.estimate - eb.estimate), allowed)
    floor_ok = all(e.estimate >= w - 1e-12 for e in estimates.values())
    return WallBoundReport(w, estimates, gaps, floor_ok)


@dataclass
class MixingReport:
    n: int
    samples: int
    mean: float
    covariance: dict[int, float]
    threshold: float
    min_lag: int

    @property
    def passed(self) -> bool:
        return all(abs(c) < self.threshold for lag, c in self.covariance.items()
                   if lag >= self.min_lag)


def stable_indicator_matrix(n: int, distribution: RuleDistribution, samples: int, seed: int,
                            max_steps: int | None = None) -> np.ndarray:
    """``Z[r, i]``: whether cell ``i`` of replica ``r`` stabilizes."""
    z = np.empty((samples, n), dtype=np.uint8)
    for r in range(samples):
        z[r] = engine.unpack(replica_stable_mask(n, distribution, seed, r, max_steps), n)
    return z


def mixing_check(n: int, distribution: RuleDistribution, samples: int, lags: Sequence[int],
                 seed: int = 0, threshold: float = 0.01, min_lag: int | None = None) -> MixingReport:
    """Empirical ``Cov(Z_0, Z_i)`` pooled over ring positions.

    ``samples`` counts rings; each ring contributes ``n`` pairs per lag.
    """
    if distribution.wall_mass <= 0:
        raise ValueError("mixing check needs positive wall mass")
    if lags and max(lags) >= n:
        raise ValueError("lags must be smaller than n")
    z = stable_indicator_matrix(n, distribution, samples, seed).astype(float)
    mean = float(z.mean())
    cov = {int(lag): float((z * np.roll(z, -lag, axis=1)).mean() - mean * mean) for lag in lags}
    if min_lag is None:
        min_lag = max(1, min(lags, default=1))
    return MixingReport(n, samples, mean, cov, threshold, min_lag)


# --- affine chaos -----------------------------------------------------------------------


@dataclass(frozen=True)
class CylinderReport:
    horizon: int
    samples: int
    statistic: float
    pvalue: float
    shifted_statistic: float
    shifted_pvalue: float
    alpha: float

    @property
    def rejected(self) -> bool:
        return self.pvalue < self.alpha or self.shifted_pvalue < self.alpha


def _as_distribution(d) -> RuleDistribution:
    if isinstance(d, RuleDistribution):
        return d
    return RuleDistribution.uniform_on(d)


def _cylinder_codes(values: np.ndarray) -> np.ndarray:
    weights = 1 << np.arange(values.shape[1], dtype=np.int64)
    return values.astype(np.int64) @ weights


def _chisquare_uniform(codes: np.ndarray, k: int):
    counts = np.bincount(codes, minlength=1 << k)
    res = stats.chisquare(counts)
    return float(res.statistic), float(res.pvalue)


def affine_cylinder_test(distribution, horizon: int, samples: int, seed: int = 0,
                         alpha: float = 0.001) -> CylinderReport:
    """Chi-square test that ``X_0(0..T)`` is uniform on ``{0,1}^(T+1)``.

    Also tests the shifted window ``X_0(1..T)``.  Uniformity is what affine
    supports inside {3, 6, 9, 12} produce; other supports serve as controls.
    """
    dist = _as_distribution(distribution)
    rng = np.random.default_rng(seed)
    values = engine.sample_cones(dist, horizon, samples, rng)
    stat, pval = _chisquare_uniform(_cylinder_codes(values), horizon + 1)
    if horizon >= 1:
        sstat, spval = _chisquare_uniform(_cylinder_codes(values[:, 1:]), horizon)
    else:
        sstat, spval = 0.0, 1.0
    return CylinderReport(horizon, samples, stat, pval, sstat, spval, alpha)


def exact_cone_distribution(support: Iterable[int], horizon: int) -> dict[tuple[int, ...], Fraction]:
    """Exact law of ``X_0(0..T)`` under the infinite-lattice measure, rules
    uniform on ``support``, by enumerating every light-cone window."""
    s = sorted(set(support))
    width = 2 * horizon + 1
    n_rules = max(2 * horizon - 1, 0)
    if (1 << width) * len(s) ** n_rules > 1 << 24:
        raise ValueError("window too large to enumerate")
    inits = ((np.arange(1 << width)[:, None] >> np.arange(width)) & 1).astype(np.uint8)
    codes = np.arange(len(s) ** n_rules)
    digits = np.stack([(codes // len(s) ** i) % len(s) for i in range(n_rules)], axis=1) \
        if n_rules else np.zeros((1, 0), dtype=np.intp)
    rule_blocks = np.asarray(s, dtype=np.intp)[digits]
    ii = np.repeat(np.arange(len(inits)), len(rule_blocks))
    rr = np.tile(np.arange(len(rule_blocks)), len(inits))
    series = engine.evolve_cone(inits[ii], rule_blocks[rr])
    total = len(ii)
    keys, counts = np.unique(_cylinder_codes(series), return_counts=True)
    out = {}
    for key, c in zip(keys, counts):
        word = tuple(int((key >> k) & 1) for k in range(horizon + 1))
        out[word] = Fraction(int(c), total)
    return out


# --- supports {2} and {2, 10} ---------------------------------------------------------


@dataclass
class ShiftReport:
    support: frozenset[int]
    n: int
    checked: int
    violations: int
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.violations == 0


def _rot(x, n: int, k: int, full):
    """Numpy/int cyclic shift so that bit i holds cell i + k."""
    k %= n
    if isinstance(x, np.ndarray):
        t = x.dtype.type
        return ((x >> t(k)) | (x << t(n - k))) & t(full) if k else x
    return ((x >> k) | (x << (n - k))) & full if k else x


def shift_pattern_check(support: Iterable[int], n: int, horizon: int, *, samples: int = 100,
                        burn_in: int | None = None, seed: int = 0,
                        initials: np.ndarray | None = None) -> ShiftReport:
    """Pattern checks behind the shift dynamics of supports {2} and {2, 10}.

    {2}: no ``x_j = x_{j+2} = 1`` at any ``t = 1..horizon``, over all initial
    configurations when ``n <= 16`` (or the given ``initials``), else over
    ``samples`` random ones.
    {2, 10}: after ``burn_in`` steps (default ``2 n``) no run of three 1's for
    ``horizon`` further steps, on ``samples`` random rings.
    """
    s = frozenset(support)
    full = (1 << n) - 1
    if s == {2}:
        if initials is not None:
            states = np.asarray(initials, dtype=np.uint64)
        elif n <= 16:
            states = engine.all_configurations(n)
        else:
            rng = np.random.default_rng(seed)
            bits = rng.integers(0, 2, size=(samples, n), dtype=np.uint8)
            states = [engine.pack(b) for b in bits]
        rv = engine.RuleVector.uniform(2, n)
        violations = 0
        if isinstance(states, np.ndarray) and n <= 64:
            masks = engine.numpy_masks(rv.rules)
            for _ in range(horizon):
                states = engine.advance(states, n, masks)
                violations += int(np.count_nonzero(states & _rot(states, n, 2, full)))
            checked = len(states)
        else:
            checked = len(states)
            for x in states:
                for _ in range(horizon):
                    x = rv.step_bits(x)
                    violations += bool(x & _rot(x, n, 2, full))
        return ShiftReport(s, n, checked, violations, "1*1 occurrences after t >= 1")
    if s == {2, 10}:
        burn_in = 2 * n if burn_in is None else burn_in
        dist = RuleDistribution.uniform_on(s)
        violations = 0
        skipped = 0
        for r in range(samples):
            config, rv = _replica_state(n, dist, seed, r)
            if 2 not in rv.rules:
                skipped += 1
                continue
            x = config.bits
            for _ in range(burn_in):
                x = rv.step_bits(x)
            for _ in range(horizon):
                x = rv.step_bits(x)
                violations += bool(x & _rot(x, n, 1, full) & _rot(x, n, -1, full))
        return ShiftReport(s, n, samples - skipped, violations,
                           f"runs of three 1's after burn-in {burn_in}")
    raise ValueError("support must be {2} or {2, 10}")


# --- decay proxy for sigma_* = 0 ---------------------------------------------------------


@dataclass
class DecayReport:
    horizons: list[int]
    probabilities: list[float]
    stderr: list[float]
    threshold: float
    samples: int

    @property
    def monotone(self) -> bool:
        """Non-increasing up to three combined standard errors."""
        return all(b <= a + 3 * math.hypot(ea, eb)
                   for a, b, ea, eb in zip(self.probabilities, self.probabilities[1:],
                                           self.stderr, self.stderr[1:]))

    @property
    def passed(self) -> bool:
        return self.monotone and self.probabilities[-1] <= self.threshold


def constancy_envelope(horizon: int) -> float:
    """P(X_0 constant on [T//2, T]) for an i.i.d. fair-bit series."""
    count = horizon - horizon // 2 + 1
    return 2.0 ** (1 - count)


def zero_sigma_decay_check(distribution, horizons: Sequence[int], samples: int, seed: int = 0,
                           threshold: float = 0.05) -> DecayReport:
    """Estimate ``P_*(X_0 constant on [T/2, T])`` for each ``T`` from one batch of
    cone samples at the largest horizon.  Evidence, not proof, for sigma_* = 0."""
    dist = _as_distribution(distribution)
    horizons = sorted(int(t) for t in horizons)
    rng = np.random.default_rng(seed)
    values = engine.sample_cones(dist, horizons[-1], samples, rng)
    probs, errs = [], []
    for t in horizons:
        window = values[:, t // 2:t + 1]
        const = np.all(window == window[:, :1], axis=1)
        p = float(const.mean())
        probs.append(p)
        errs.append(math.sqrt(max(p * (1 - p), 1 / samples) / samples))
    return DecayReport(horizons, probs, errs, threshold, samples)
