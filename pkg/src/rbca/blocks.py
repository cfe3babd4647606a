"""Impermeable and absorbing blocks under an adversarial boundary.

A block is a run of ``p`` cells with fixed rules ``phi = (j_1, ..., j_p)``
started from one of a set of words ``b``.  The two outside neighbours are
controlled by an adversary that may pick any ``(l, r)`` at every step, so
the block's possible interior states at time ``t`` form a layer set

    R_0 = b_states,   R_{t+1} = { next(s, l, r) : s in R_t, l, r in {0, 1} }.

The sequence of layer sets lives in a finite power set, hence is eventually
periodic.  A block is *impermeable* when every layer is a singleton and
*absorbing* (with centre ``c``, ``1 < c < p``) when the states of every
layer agree at the centre.

Words are bit tuples ``(b_1, ..., b_p)``; internally they are packed with
``b_k`` in bit ``k - 1``.  Cell numbers (centres, stable cells) are 1-based.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import rules as R
from .rules import TABLE

# --- reference collections ------------------------------------------------------

G_SETS = tuple(frozenset(s) for s in (
    {0}, {1}, {7}, {8}, {14}, {15}, {2, 4}, {2, 5}, {2, 9}, {2, 12}, {2, 13},
    {3, 4}, {3, 5}, {3, 10}, {3, 13}, {4, 9}, {4, 10}, {4, 11}, {5, 11},
    {5, 12}, {6, 11}, {6, 13}, {10, 12}, {10, 13}, {11, 12}, {11, 13},
    {2, 6, 10}, {4, 6, 12}, {9, 10, 11}, {9, 12, 13},
))

B_SETS = tuple(frozenset(s) for s in (
    {2, 3, 6}, {2, 3, 11}, {2, 10, 11}, {3, 9, 11}, {4, 5, 6}, {4, 5, 13},
    {4, 12, 13}, {5, 9, 13}, {3, 6, 9, 12}, {5, 6, 9, 10},
))

# (support, phi-block, b-block) rows of the impermeable-block table
TABLE2 = (
    ({0}, (0,), (0,)),
    ({1}, (1, 1, 1), (0, 1, 0)),
    ({8}, (8, 8), (0, 0)),
    ({2, 4}, (2, 4), (0, 0)),
    ({2, 5}, (5, 2), (1, 0)),
    ({2, 9}, (2, 9, 9, 2), (0, 0, 1, 0)),
    ({2, 12}, (2, 12), (0, 0)),
    ({2, 13}, (13, 2), (1, 0)),
    ({3, 5}, (5, 3), (0, 0)),
    ({3, 10}, (10, 3), (0, 0)),
    ({10, 12}, (10, 12), (0, 0)),
    ({2, 6, 10}, (10, 6, 2), (1, 1, 0)),
)

ZERO_SIGMA_SUPPORTS = tuple(frozenset(s) for s in (
    {2, 10}, {10, 11}, {4, 12}, {12, 13}, {3, 6, 9, 12}, {5, 6, 9, 10},
))


class BlockKind(enum.Enum):
    IMPERMEABLE = "impermeable"
    ABSORBING = "absorbing"
    NEITHER = "neither"


class LayerCycleNotFound(RuntimeError):
    pass


def _word(bits: Iterable[int]) -> tuple[int, ...]:
    w = tuple(int(v) for v in bits)
    if any(v not in (0, 1) for v in w):
        raise ValueError(f"not a bit word: {w}")
    return w


def parse_word(text: str) -> tuple[int, ...]:
    """``"0010"`` or ``"0,0,1,0"`` -> ``(0, 0, 1, 0)``."""
    text = text.strip().strip("()")
    return _word(int(ch) for ch in text.replace(",", "").replace(" ", ""))


def pack_word(w: Sequence[int]) -> int:
    return sum(int(v) << k for k, v in enumerate(w))


def unpack_word(x: int, p: int) -> tuple[int, ...]:
    return tuple((x >> k) & 1 for k in range(p))


@dataclass(frozen=True)
class BlockSpec:
    phi: tuple[int, ...]
    b_states: frozenset[tuple[int, ...]]
    center: int | None = None

    def __post_init__(self):
        phi = tuple(int(j) for j in self.phi)
        if not phi:
            raise ValueError("empty phi-block")
        for j in phi:
            R._check(j)
        states = frozenset(_word(w) for w in self.b_states)
        if not states:
            raise ValueError("b_states must be nonempty")
        if any(len(w) != len(phi) for w in states):
            raise ValueError("every b-word must have the block length")
        if self.center is not None and not 1 <= self.center <= len(phi):
            raise ValueError(f"center {self.center} outside 1..{len(phi)}")
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "b_states", states)

    @classmethod
    def single(cls, phi: Sequence[int], b: Sequence[int], center: int | None = None) -> "BlockSpec":
        return cls(tuple(phi), frozenset([tuple(b)]), center)

    @classmethod
    def family(cls, phi: Sequence[int], pattern: str, forbid: Iterable[str] = (),
               center: int | None = None) -> "BlockSpec":
        """Family of words from a pattern with wildcards.

        Wildcards are letters, or ``?`` which take the names x, y, z, w, ... in
        order.  ``forbid`` items like ``"xz=11"`` drop the members whose named
        wildcards take the given values.
        """
        names = iter("xyzwuvstabcdefghijklmnopqr")
        slots: list[tuple[int, str]] = []
        fixed: list[int | None] = []
        for k, ch in enumerate(pattern.strip()):
            if ch in "01":
                fixed.append(int(ch))
            else:
                name = next(names) if ch == "?" else ch
                slots.append((k, name))
                fixed.append(None)
        rules_ = []
        for item in forbid:
            lhs, _, rhs = item.partition("=")
            if len(lhs) != len(rhs) or not lhs:
                raise ValueError(f"bad constraint {item!r}")
            rules_.append((lhs, tuple(int(ch) for ch in rhs)))
        known = {name for _, name in slots}
        for lhs, _ in rules_:
            if set(lhs) - known:
                raise ValueError(f"constraint names unknown wildcard: {lhs!r}")
        states = []
        for values in itertools.product((0, 1), repeat=len(slots)):
            env = {name: v for (_, name), v in zip(slots, values)}
            if any(tuple(env[c] for c in lhs) == rhs for lhs, rhs in rules_):
                continue
            w = list(fixed)
            for (k, _), v in zip(slots, values):
                w[k] = v
            states.append(tuple(w))
        return cls(tuple(phi), frozenset(states), center)

    @property
    def p(self) -> int:
        return len(self.phi)

    def words(self) -> list[tuple[int, ...]]:
        return sorted(self.b_states)

    def mirror(self) -> "BlockSpec":
        """Rules mirrored, words complemented."""
        return BlockSpec(tuple(R.mirror(j) for j in self.phi),
                         frozenset(tuple(1 - v for v in w) for w in self.b_states),
                         self.center)

    def reverse(self) -> "BlockSpec":
        """Block read right to left: rules reversed in order and argument."""
        center = None if self.center is None else self.p + 1 - self.center
        return BlockSpec(tuple(R.reverse(j) for j in reversed(self.phi)),
                         frozenset(tuple(reversed(w)) for w in self.b_states), center)

    def transformed(self, element: str) -> "BlockSpec":
        if element == "id":
            return self
        if element == "M":
            return self.mirror()
        if element == "R":
            return self.reverse()
        if element == "MR":
            return self.reverse().mirror()
        raise ValueError(f"unknown symmetry {element!r}")

    def describe(self) -> str:
        phi = "(" + ",".join(map(str, self.phi)) + ")"
        words = self.words()
        if len(words) == 1:
            b = "(" + ",".join(map(str, words[0])) + ")"
        else:
            b = "{" + " ".join("".join(map(str, w)) for w in words) + "}"
        text = f"phi={phi} b={b}"
        if self.center is not None:
            text += f" c={self.center}"
        return text


class Segment:
    """Packed step of a ``p``-cell block with explicit boundary bits."""

    def __init__(self, phi: Sequence[int]):
        self.p = p = len(phi)
        idx = np.asarray(phi, dtype=np.intp)
        cols = TABLE[idx]
        self.masks = tuple(sum(int(cols[k, xy]) << k for k in range(p)) for xy in range(4))
        self.full = (1 << p) - 1

    def next(self, s: int, l: int, r: int) -> int:
        p, full = self.p, self.full
        left = ((s << 1) | l) & full
        right = (s >> 1) | (r << (p - 1))
        nl, nr = ~left & full, ~right & full
        b00, b01, b10, b11 = self.masks
        return (nl & nr & b00) | (nl & right & b01) | (left & nr & b10) | (left & right & b11)

    def image(self, layer: Iterable[int]) -> frozenset[int]:
        out = set()
        for s in layer:
            for l in (0, 1):
                for r in (0, 1):
                    out.add(self.next(s, l, r))
        return frozenset(out)


@dataclass(frozen=True)
class BlockVerdict:
    spec: BlockSpec
    kind: BlockKind
    preperiod: int
    period: int
    stable: tuple[bool, ...]
    absorbing_cells: tuple[int, ...]
    center: int | None
    center_value_period: int | None
    center_constant: bool
    layers: tuple[frozenset[int], ...]

    def stable_cells(self) -> list[int]:
        return [k + 1 for k, v in enumerate(self.stable) if v]

    def describe(self) -> str:
        stable = "".join("1" if v else "0" for v in self.stable)
        text = f"{self.spec.describe()} kind={self.kind.value} period={self.period} stable={stable}"
        if self.kind is BlockKind.ABSORBING:
            text += f" center={self.center} center_period={self.center_value_period}"
            text += f" center_constant={str(self.center_constant).lower()}"
        return text


def _minimal_period(seq: Sequence[int]) -> int:
    n = len(seq)
    for q in range(1, n + 1):
        if n % q == 0 and all(seq[i] == seq[i % q] for i in range(n)):
            return q
    return n


def layer_sequence(spec: BlockSpec, max_layers: int = 1 << 16):
    """``(layers, preperiod, period)`` of the reachable layer sets."""
    if max_layers < 1:
        raise ValueError("max_layers must be >= 1")
    seg = Segment(spec.phi)
    layer = frozenset(pack_word(w) for w in spec.b_states)
    seen = {layer: 0}
    layers = [layer]
    while True:
        layer = seg.image(layer)
        t = len(layers)
        if layer in seen:
            pre = seen[layer]
            return layers, pre, t - pre
        if t >= max_layers:
            raise LayerCycleNotFound(f"layer sets did not cycle within {max_layers} layers")
        seen[layer] = t
        layers.append(layer)


def _and_or(layer: Iterable[int], full: int) -> tuple[int, int]:
    a, o = full, 0
    for s in layer:
        a &= s
        o |= s
    return a, o


def analyze_block(spec: BlockSpec, max_layers: int = 1 << 16) -> BlockVerdict:
    """Classify a block (or block family) by its reachable layer sets."""
    layers, pre, period = layer_sequence(spec, max_layers)
    p = spec.p
    full = (1 << p) - 1
    agree_all = full
    summaries = []
    for layer in layers:
        a, o = _and_or(layer, full)
        agree_all &= ~(a ^ o) & full
        summaries.append(a)
    cyc = range(pre, pre + period)
    stable_mask = full
    for t in cyc:
        a, o = _and_or(layers[t], full)
        stable_mask &= ~(a ^ o) & ~(a ^ summaries[pre]) & full
    stable = tuple(bool((stable_mask >> k) & 1) for k in range(p))
    absorbing_cells = tuple(k + 1 for k in range(1, p - 1) if (agree_all >> k) & 1)

    impermeable = all(len(layer) == 1 for layer in layers)
    center = spec.center
    if center is None and absorbing_cells:
        constants = [c for c in absorbing_cells if stable[c - 1]]
        center = constants[0] if constants else absorbing_cells[0]
    center_period = None
    center_constant = False
    if center is not None and (agree_all >> (center - 1)) & 1:
        seq = [(summaries[t] >> (center - 1)) & 1 for t in cyc]
        center_period = _minimal_period(seq)
        center_constant = center_period == 1
    if impermeable:
        kind = BlockKind.IMPERMEABLE
    elif center is not None and center in absorbing_cells:
        kind = BlockKind.ABSORBING
    else:
        kind = BlockKind.NEITHER
    if kind is BlockKind.NEITHER:
        center_period, center_constant = None, False
    return BlockVerdict(spec, kind, pre, period, stable, absorbing_cells, center,
                        center_period, center_constant, tuple(layers))


def analyze_family(spec: BlockSpec, max_layers: int = 1 << 16) -> BlockVerdict:
    """Same analysis seeded with a whole word family."""
    return analyze_block(spec, max_layers)


def member_recurrence(spec: BlockSpec, max_steps: int = 1 << 12) -> dict[tuple[int, ...], int]:
    """For each family member, the first ``t >= 1`` at which every state the
    adversary can reach from it is again a family member."""
    seg = Segment(spec.phi)
    family = frozenset(pack_word(w) for w in spec.b_states)
    out = {}
    for w in spec.words():
        layer = frozenset([pack_word(w)])
        for t in range(1, max_steps + 1):
            layer = seg.image(layer)
            if layer <= family:
                out[w] = t
                break
        else:
            raise LayerCycleNotFound(f"member {w} did not recur within {max_steps} steps")
    return out


# --- searches ------------------------------------------------------------------------------

_CHUNK = 1 << 21


def _edge_ok(phi_rows: np.ndarray) -> np.ndarray:
    """Necessary condition: the leftmost rule ignores its left input for some
    right input, and the rightmost rule ignores its right input for some left
    input; a single cell must ignore both."""
    t = TABLE[phi_rows]  # (K, p, 4), index 2x + y
    first, last = t[:, 0], t[:, -1]
    if phi_rows.shape[1] == 1:
        return np.all(first == first[:, :1], axis=1)
    left_ok = (first[:, 0] == first[:, 2]) | (first[:, 1] == first[:, 3])
    right_ok = (last[:, 0] == last[:, 1]) | (last[:, 2] == last[:, 3])
    return left_ok & right_ok


def _block_masks(phi_rows: np.ndarray) -> list[np.ndarray]:
    p = phi_rows.shape[1]
    t = TABLE[phi_rows].astype(np.uint32)  # (K, p, 4)
    shifts = np.arange(p, dtype=np.uint32)
    return [(t[:, :, xy] << shifts).sum(axis=1, dtype=np.uint32)[:, None] for xy in range(4)]


def impermeable_words(phi_rows: np.ndarray) -> np.ndarray:
    """Boolean ``(K, 2^p)``: word ``b`` (packed) is impermeable for block ``k``.

    Impermeable means every state on the boundary-free trajectory of ``b``
    has a successor independent of ``(l, r)``.  Pointer doubling over the
    trajectory map decides this for all words at once.
    """
    k_blocks, p = phi_rows.shape
    full = np.uint32((1 << p) - 1)
    s = np.arange(1 << p, dtype=np.uint32)[None, :]
    b00, b01, b10, b11 = _block_masks(phi_rows)
    nxt = []
    for l in (0, 1):
        for r in (0, 1):
            left = ((s << np.uint32(1)) | np.uint32(l)) & full
            right = (s >> np.uint32(1)) | np.uint32(r << (p - 1))
            nl, nr = ~left & full, ~right & full
            nxt.append((nl & nr & b00) | (nl & right & b01) | (left & nr & b10) | (left & right & b11))
    g = nxt[0]
    bad = (nxt[1] != g) | (nxt[2] != g) | (nxt[3] != g)
    g = g.astype(np.intp)
    for _ in range(p + 1):
        bad = bad | np.take_along_axis(bad, g, axis=1)
        g = np.take_along_axis(g, g, axis=1)
    return ~bad


def _witness_key(spec: BlockSpec):
    return (spec.p, spec.phi, spec.words()[0], spec.center or 0)


def _blocks_over(members: Sequence[int], p: int):
    """All phi-blocks of length ``p`` over ``members`` in lexicographic order,
    as a stream of int arrays."""
    members = np.asarray(sorted(members), dtype=np.intp)
    base = len(members)
    total = base ** p
    rows = max(1, _CHUNK >> p)
    for start in range(0, total, rows):
        codes = np.arange(start, min(start + rows, total), dtype=np.int64)
        digits = np.stack([(codes // base ** (p - 1 - i)) % base for i in range(p)], axis=1)
        yield members[digits]


def search_impermeable(support: Iterable[int], p_max: int, *, p_min: int = 1,
                       limit: int | None = None) -> list[BlockSpec]:
    """Every impermeable (phi-block, b-word) over ``support`` with ``p <= p_max``,
    sorted by length, then phi-block, then word."""
    if p_max < 1:
        raise ValueError("p_max must be >= 1")
    members = sorted(set(support))
    if not members:
        return []
    found: list[BlockSpec] = []
    for p in range(p_min, p_max + 1):
        for phi_rows in _blocks_over(members, p):
            phi_rows = phi_rows[_edge_ok(phi_rows)]
            if len(phi_rows) == 0:
                continue
            ok = impermeable_words(phi_rows)
            ks, words = np.nonzero(ok)
            for k, x in zip(ks, words):
                found.append(BlockSpec.single(tuple(int(j) for j in phi_rows[k]),
                                              unpack_word(int(x), p)))
        if limit is not None and len(found) >= limit:
            break
    found.sort(key=_witness_key)
    return found if limit is None else found[:limit]


def _absorbing_scan(seg: Segment, word: int, max_layers: int):
    """Layer sets from a single word with early exit; returns the interior
    agreement mask over all layers (0 if it died), plus the layers."""
    p, full = seg.p, seg.full
    interior = full & ~1 & ~(1 << (p - 1))
    layer = frozenset([word])
    seen = {layer: 0}
    agree = interior
    layers = [layer]
    while True:
        layer = seg.image(layer)
        a, o = _and_or(layer, full)
        agree &= ~(a ^ o)
        if not agree:
            return 0
        if layer in seen:
            return agree
        if len(layers) >= max_layers:
            raise LayerCycleNotFound("layer sets did not cycle")
        seen[layer] = len(layers)
        layers.append(layer)


def search_absorbing(support: Iterable[int], p_max: int, require_constant_center: bool = False,
                     *, p_min: int = 3, limit: int | None = None,
                     max_layers: int = 1 << 12) -> list[BlockSpec]:
    """Absorbing (phi-block, b-word, centre) witnesses with ``p_min <= p <= p_max``.

    Each (block, word) contributes one witness whose centre is the first
    cell that qualifies (the first constant one when
    ``require_constant_center``).  Impermeable pairs are not reported.
    """
    if p_max < 3:
        raise ValueError("p_max must be >= 3")
    members = sorted(set(support))
    found: list[BlockSpec] = []
    for p in range(max(3, p_min), p_max + 1):
        for phi in itertools.product(members, repeat=p):
            seg = Segment(phi)
            for word in itertools.product((0, 1), repeat=p):
                if not _absorbing_scan(seg, pack_word(word), max_layers):
                    continue
                verdict = analyze_block(BlockSpec.single(phi, word), max_layers)
                if verdict.kind is not BlockKind.ABSORBING:
                    continue
                if require_constant_center:
                    centers = [c for c in verdict.absorbing_cells if verdict.stable[c - 1]]
                    if not centers:
                        continue
                    center = centers[0]
                else:
                    center = verdict.absorbing_cells[0]
                found.append(BlockSpec.single(phi, word, center))
                if limit is not None and len(found) >= limit:
                    return found
    return found


# --- collections ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SupportCollections:
    g_sets: tuple[frozenset[int], ...]
    g_tilde: tuple[frozenset[int], ...]
    b_sets: tuple[frozenset[int], ...]
    witnesses: dict[frozenset[int], BlockSpec]


def _sorted_sets(sets: Iterable[frozenset[int]]) -> tuple[frozenset[int], ...]:
    return tuple(sorted(set(sets), key=lambda s: (len(s), sorted(s))))


def maximal_avoiders(g_sets: Iterable[Iterable[int]]) -> tuple[frozenset[int], ...]:
    """Maximal supports (over all 2^16) containing no member of ``g_sets``."""
    masks = np.arange(1 << 16, dtype=np.int64)
    contains = np.zeros(masks.size, dtype=bool)
    for g in g_sets:
        gm = R.to_mask(g)
        contains |= (masks & gm) == gm
    free = ~contains
    maximal = free.copy()
    for j in range(16):
        bit = 1 << j
        ext = masks | bit
        maximal &= ~(((masks & bit) == 0) & free[ext])
    return _sorted_sets(R.from_mask(int(m)) for m in np.nonzero(maximal)[0])


def minimal_impermeable_supports(k_max: int = 3, p_max: int = 4) -> SupportCollections:
    """Minimal supports of size <= ``k_max`` that admit an impermeable block
    with ``p <= p_max``; ``b_sets`` are the maximal supports avoiding them."""
    if k_max < 1 or p_max < 1:
        raise ValueError("k_max and p_max must be >= 1")
    has: dict[frozenset[int], BlockSpec | None] = {}
    for k in range(1, k_max + 1):
        for combo in itertools.combinations(range(16), k):
            s = frozenset(combo)
            if s in has or not R.is_canonical(s):
                continue
            hits = search_impermeable(s, p_max, limit=1)
            has[s] = hits[0] if hits else None
    witnesses: dict[frozenset[int], BlockSpec] = {}
    positive = set()
    for s, w in has.items():
        if w is None:
            continue
        for g in R.SYMMETRIES:
            image = R.transform_support(s, g)
            positive.add(image)
            witnesses.setdefault(image, w.transformed(g))
    minimal = [s for s in positive
               if not any(t < s for t in positive)]
    g_sets = _sorted_sets(minimal)
    g_tilde = _sorted_sets(R.canonicalize(s) for s in g_sets)
    return SupportCollections(g_sets, g_tilde, maximal_avoiders(g_sets),
                              {s: witnesses[s] for s in g_sets})


@dataclass(frozen=True)
class DichotomyResult:
    passed: bool
    neither: tuple[frozenset[int], ...]
    both: tuple[frozenset[int], ...]


def dichotomy_check(g_sets: Iterable[Iterable[int]], b_sets: Iterable[Iterable[int]]) -> DichotomyResult:
    """Every support contains a ``g_sets`` member xor lies inside a ``b_sets`` member."""
    g_sets, b_sets = list(g_sets), list(b_sets)
    if not g_sets or not b_sets:
        raise ValueError("both collections must be nonempty")
    masks = np.arange(1 << 16, dtype=np.int64)
    contains = np.zeros(masks.size, dtype=bool)
    inside = np.zeros(masks.size, dtype=bool)
    for g in g_sets:
        gm = R.to_mask(g)
        contains |= (masks & gm) == gm
    for b in b_sets:
        inside |= (masks & ~R.to_mask(b)) == 0
    neither = tuple(R.from_mask(int(m)) for m in np.nonzero(~contains & ~inside)[0])
    both = tuple(R.from_mask(int(m)) for m in np.nonzero(contains & inside)[0])
    return DichotomyResult(not neither and not both, neither, both)


# --- classification ------------------------------------------------------------------------------


class SigmaStatus(enum.Enum):
    SIGMA_STAR_ZERO = "sigma_star=0"
    SIGMA_STAR_POSITIVE = "sigma_star>0"


@dataclass(frozen=True)
class ClassificationVerdict:
    support: frozenset[int]
    status: SigmaStatus
    evidence: str
    witness: BlockSpec | None = None

    def describe(self) -> str:
        return f"{self.status.value} ({self.evidence})"


# Constant-centre absorbing witnesses for the supports that avoid G but are
# not covered by the zero-sigma list.
ABSORBING_WITNESSES = {
    frozenset({2, 3}): BlockSpec.single((2, 2, 3, 2, 3, 2, 2, 2, 3), (0, 0, 1, 1, 0, 0, 0, 0, 1), 6),
    frozenset({2, 11}): BlockSpec.single((2, 2, 11, 2, 11, 2, 2, 2, 11, 2),
                                         (0, 1, 1, 0, 0, 0, 0, 1, 1, 0), 6),
    frozenset({2, 6}): BlockSpec.family((2, 2, 2, 6, 6, 6, 2, 2, 2, 6, 6, 6, 2, 2, 2, 2),
                                        "001101010110xyzw", ("xz=11", "yw=11"), center=4),
}

_table2_by_support = {frozenset(s): BlockSpec.single(phi, b) for s, phi, b in TABLE2}


def _g_witness(member: frozenset[int]) -> BlockSpec:
    for g in R.SYMMETRIES:
        base = R.transform_support(member, g)
        if base in _table2_by_support:
            # g is an involution, so it maps the table row back onto member
            return _table2_by_support[base].transformed(g)
    return search_impermeable(member, 4, limit=1)[0]


def theorem1_classify(support: Iterable[int]) -> ClassificationVerdict:
    s = frozenset(support)
    if not s:
        raise ValueError("support must be nonempty")
    for z in ZERO_SIGMA_SUPPORTS:
        if s <= z:
            return ClassificationVerdict(s, SigmaStatus.SIGMA_STAR_ZERO,
                                         f"subset of {{{R.format_support(z)}}}")
    for g in sorted(G_SETS, key=lambda m: (len(m), sorted(m))):
        if g <= s:
            w = _g_witness(g)
            return ClassificationVerdict(
                s, SigmaStatus.SIGMA_STAR_POSITIVE,
                f"contains {{{R.format_support(g)}}} in G: {w.describe()} impermeable", w)
    for base, block in ABSORBING_WITNESSES.items():
        for e in R.SYMMETRIES:
            image = R.transform_support(base, e)
            if image <= s:
                w = block.transformed(e)
                return ClassificationVerdict(
                    s, SigmaStatus.SIGMA_STAR_POSITIVE,
                    f"contains {{{R.format_support(image)}}}: absorbing block "
                    f"{w.describe()} with constant center", w)
    raise RuntimeError(f"support {sorted(s)} is not covered by the classification")
