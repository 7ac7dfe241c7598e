"""
Finite-horizon density functionals for sets of non-negative integers.

For a set A observed on [0, H]:

    profile(N)   = #(A ∩ [0, N]) / (N + 1),           N = 0..H
    lower/upper  = min/max of the profile over a tail window (default N ≥ H/2)
    a_N          = max over windows [k+1, k+N] ⊆ [0, H] of #(A ∩ window)

These are horizon-indexed estimates, not limits. Sets built from arithmetic
progressions carry their structure, and exact_ap_density gives their true
asymptotic density (lower = upper = Banach for such sets).
"""

import bisect
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import MalformedInputError, TooManyProgressionsError

logger = logging.getLogger(__name__)

MAX_PROGRESSIONS = 16

Progression = Tuple[int, int]  # (a, d): {a + j·d : j ≥ 0}


@dataclass(frozen=True)
class IndexSet:
    """Finite set of non-negative integers observed on [0, horizon]"""

    elements: Tuple[int, ...]
    horizon: int
    structure: Optional[Tuple[Progression, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(int(e) for e in self.elements))
        if self.horizon < 0:
            raise MalformedInputError(f"Horizon must be non-negative, got {self.horizon}")
        if any(b <= a for a, b in zip(self.elements, self.elements[1:])):
            raise MalformedInputError("IndexSet elements must be sorted and duplicate-free")
        if self.elements and (self.elements[0] < 0 or self.elements[-1] > self.horizon):
            raise MalformedInputError(
                f"IndexSet elements must lie in [0, {self.horizon}], "
                f"got range [{self.elements[0]}, {self.elements[-1]}]"
            )
        if self.structure is not None:
            structure = tuple((int(a), int(d)) for a, d in self.structure)
            object.__setattr__(self, "structure", structure)
            if self.elements != _progression_elements(structure, self.horizon):
                raise MalformedInputError("IndexSet elements do not match its progression structure")

    @classmethod
    def from_indices(cls, indices: Iterable[int], horizon: Optional[int] = None) -> "IndexSet":
        """Sorted, de-duplicated set; horizon defaults to the largest element"""
        elements = tuple(sorted(set(int(i) for i in indices)))
        if horizon is None:
            horizon = elements[-1] if elements else 0
        return cls(elements, horizon)

    @classmethod
    def from_progressions(cls, progressions: Sequence[Progression], horizon: int) -> "IndexSet":
        """Union of {a + j·d} cut to [0, horizon], keeping the structure"""
        structure = tuple((int(a), int(d)) for a, d in progressions)
        _check_progressions(structure)
        return cls(_progression_elements(structure, horizon), horizon, structure)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, value: int) -> bool:
        i = bisect.bisect_left(self.elements, value)
        return i < len(self.elements) and self.elements[i] == value

    def count_between(self, lo: int, hi: int) -> int:
        """#(A ∩ [lo, hi])"""
        return bisect.bisect_right(self.elements, hi) - bisect.bisect_left(self.elements, lo)

    def is_superset(self, other: "IndexSet") -> bool:
        return set(other.elements) <= set(self.elements)

    def to_json(self) -> dict:
        data = {"elements": list(self.elements), "horizon": self.horizon}
        if self.structure is not None:
            data["structure"] = [list(p) for p in self.structure]
        return data


def _check_progressions(progressions: Sequence[Progression]) -> None:
    for a, d in progressions:
        if a < 0 or d < 1:
            raise MalformedInputError(f"Progression (a={a}, d={d}) needs a ≥ 0 and d ≥ 1")


def _progression_elements(progressions: Sequence[Progression], horizon: int) -> Tuple[int, ...]:
    values = set()
    for a, d in progressions:
        values.update(range(a, horizon + 1, d))
    return tuple(sorted(values))


def density_profile(A: IndexSet) -> List[Fraction]:
    """
    #(A ∩ [0, N]) / (N + 1) for N = 0..H, exact.

    Example:
        >>> density_profile(IndexSet.from_progressions([(0, 3)], 99))[99]
        Fraction(17, 50)
    """
    profile = []
    count = 0
    members = set(A.elements)
    for N in range(A.horizon + 1):
        if N in members:
            count += 1
        profile.append(Fraction(count, N + 1))
    return profile


def empirical_bounds(A: IndexSet, tail_start: Optional[int] = None) -> Tuple[Fraction, Fraction]:
    """
    Empirical (lower, upper) density: min and max of the profile over N ∈ [tail_start, H].

    Args:
        A: Index set
        tail_start: First N of the tail window (default H // 2, discards burn-in)
    """
    tail_start = A.horizon // 2 if tail_start is None else tail_start
    if not 0 <= tail_start <= A.horizon:
        raise MalformedInputError(f"tail_start must lie in [0, {A.horizon}], got {tail_start}")
    tail = density_profile(A)[tail_start:]
    return min(tail), max(tail)


def banach_window(A: IndexSet, N: int) -> Tuple[int, Fraction]:
    """
    a_N = max over k ∈ [-1, H-N] of #(A ∩ [k+1, k+N]), and a_N / N.

    A maximal window can always be slid right until it starts at an element
    (or hits the horizon), so only those starts are tried.

    Example:
        >>> banach_window(IndexSet.from_indices(range(100, 110)), 10)
        (10, Fraction(1, 1))
    """
    if not 1 <= N <= A.horizon + 1:
        raise MalformedInputError(f"Window length must lie in [1, {A.horizon + 1}], got {N}")
    last_start = max(A.horizon - N + 1, 0)
    starts = {0} | {min(a, last_start) for a in A.elements}
    best = max(A.count_between(start, start + N - 1) for start in starts)
    return best, Fraction(best, N)


def banach_profile(A: IndexSet, windows: Iterable[int]) -> List[Tuple[int, int, Fraction]]:
    """(N, a_N, a_N / N) rows for the given window lengths"""
    rows = []
    for N in windows:
        count, ratio = banach_window(A, N)
        rows.append((N, count, ratio))
    return rows


def upper_banach_estimate(A: IndexSet, tail_start: Optional[int] = None) -> Fraction:
    """
    max of a_N / N over window lengths N ∈ [tail_start+1, H+1].

    Uses the same tail as empirical_bounds, so every prefix ratio of the tail
    is one of the windows and upper ≤ estimate holds exactly.
    """
    tail_start = A.horizon // 2 if tail_start is None else tail_start
    if not 0 <= tail_start <= A.horizon:
        raise MalformedInputError(f"tail_start must lie in [0, {A.horizon}], got {tail_start}")
    if not A.elements:
        return Fraction(0)
    return max(ratio for _, _, ratio in banach_profile(A, range(tail_start + 1, A.horizon + 2)))


def _merge_residues(r1: int, m1: int, r2: int, m2: int) -> Optional[Tuple[int, int]]:
    """Solve x ≡ r1 (m1), x ≡ r2 (m2); None when incompatible"""
    g = math.gcd(m1, m2)
    if (r2 - r1) % g:
        return None
    lcm = m1 // g * m2
    # x = r1 + m1·t with m1·t ≡ r2 - r1 (mod m2)
    t = ((r2 - r1) // g * pow(m1 // g, -1, m2 // g)) % (m2 // g) if m2 // g > 1 else 0
    return (r1 + m1 * t) % lcm, lcm


def exact_ap_density(progressions: Sequence[Progression]) -> Fraction:
    """
    Natural density of a union of progressions by inclusion-exclusion.

    Incompatible intersections (empty residue class) prune their whole
    subtree, since adding progressions cannot make them compatible again.

    Raises:
        TooManyProgressionsError: For more than MAX_PROGRESSIONS progressions

    Example:
        >>> exact_ap_density([(0, 4), (0, 6)])
        Fraction(1, 3)
    """
    progressions = [(int(a), int(d)) for a, d in progressions]
    _check_progressions(progressions)
    if len(progressions) > MAX_PROGRESSIONS:
        raise TooManyProgressionsError(
            f"{len(progressions)} progressions exceed the inclusion-exclusion limit of {MAX_PROGRESSIONS}.\n"
            f"Merge progressions with equal step first."
        )

    total = Fraction(0)
    # stack of (next index, residue, modulus, subset size)
    stack = [(0, 0, 1, 0)]
    while stack:
        start, r, m, size = stack.pop()
        for i in range(start, len(progressions)):
            a, d = progressions[i]
            merged = _merge_residues(r, m, a % d, d)
            if merged is None:
                continue
            r2, m2 = merged
            total += Fraction(1 if size % 2 == 0 else -1, m2)
            stack.append((i + 1, r2, m2, size + 1))
    logger.debug(f"exact_ap_density over {len(progressions)} progressions = {total}")
    return total
