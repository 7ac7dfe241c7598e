"""
Seeded random corpora for the claim suites.

All randomness goes through numpy's Generator so a seed reproduces the
same vectors on every platform. Values are converted to Python ints before
they reach Dyadic or SparseVec.
"""

from typing import List, Optional, Tuple

import numpy as np

from ..density import IndexSet
from ..dyadic import Dyadic
from ..schedule import Schedule
from ..seqspace import SparseVec


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_dyadic(rng: np.random.Generator, max_bits: int = 8, max_exp: int = 6) -> Dyadic:
    """Non-zero dyadic ±m·2^e with m < 2^max_bits and |e| ≤ max_exp"""
    mantissa = int(rng.integers(1, 2 ** max_bits))
    sign = 1 if rng.random() < 0.5 else -1
    exponent = int(rng.integers(-max_exp, max_exp + 1))
    return Dyadic.of(sign * mantissa, exponent)


def random_vector(rng: np.random.Generator, lo: int, hi: int, max_support: int = 8) -> SparseVec:
    """Non-zero vector supported in [lo, hi) with 1..max_support entries"""
    size = int(rng.integers(1, min(max_support, hi - lo) + 1))
    indices = rng.choice(np.arange(lo, hi), size=size, replace=False)
    return SparseVec.from_mapping({int(k): random_dyadic(rng) for k in indices})


def random_block_vector(rng: np.random.Generator, s: Schedule, l: int, max_support: int = 8) -> SparseVec:
    """Non-zero vector supported in block l"""
    lo, hi = s.block_bounds(l)
    return random_vector(rng, lo, hi, max_support)


def random_top_block_vector(rng: np.random.Generator, s: Schedule, top: int, max_support: int = 8) -> SparseVec:
    """Non-zero vector on [0, b_{top+1}) whose top block is exactly top"""
    lo, hi = s.block_bounds(top)
    head = SparseVec.basis(int(rng.integers(lo, hi)), random_dyadic(rng))
    if max_support == 1:
        return head
    rest = random_vector(rng, 0, hi, max_support - 1)
    combined = head + rest
    return combined if combined.top_block(s) == top else head


def random_pair(
    rng: np.random.Generator,
    limit: int,
    max_support: int = 3,
    changes: Optional[int] = None,
) -> Tuple[SparseVec, SparseVec]:
    """
    (y, x) with supports ≤ max_support in [0, limit) whose difference has at
    most `changes` non-zero coordinates (1..3, random when None).

    Three changes start from y = 0: with y ≠ 0 the first witness step is
    already a multiple of period_of(y), and on SMALL-2 the third coordinate
    then needs block 29 or 30 (gap above 2^31 bits). From y = 0 every
    three-coordinate target in [0, b_2) stays within block 23.
    """
    if changes is None:
        changes = int(rng.integers(1, 4))
    if changes >= 3:
        indices = rng.choice(np.arange(0, limit), size=min(changes, max_support, limit), replace=False)
        x = SparseVec.from_mapping({int(k): random_dyadic(rng, max_bits=4, max_exp=2) for k in indices})
        return SparseVec.zero(), x

    y = random_vector(rng, 0, limit, max_support)
    support = list(y.support)
    x_map = dict(y.entries)
    for _ in range(changes):
        if support and (len(support) >= max_support or rng.random() < 0.5):
            k = support[int(rng.integers(0, len(support)))]
        else:
            k = int(rng.integers(0, limit))
            if k not in x_map:
                support.append(k)
        x_map[k] = random_dyadic(rng, max_bits=4, max_exp=2)
    x = SparseVec.from_mapping(x_map)
    return y, x


def random_index_set(rng: np.random.Generator, horizon: int, density: Optional[float] = None) -> IndexSet:
    """Bernoulli subset of [0, horizon]"""
    p = float(rng.random()) if density is None else density
    mask = rng.random(horizon + 1) < p
    return IndexSet.from_indices([int(i) for i in np.flatnonzero(mask)], horizon)


def sample_indices(rng: np.random.Generator, lo: int, hi: int, count: int) -> List[int]:
    """Sorted sample of distinct indices from [lo, hi)"""
    count = min(count, hi - lo)
    return sorted(int(k) for k in rng.choice(np.arange(lo, hi), size=count, replace=False))
