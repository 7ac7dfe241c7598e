"""
Block schedules for the operator T.

A schedule fixes the parameters (φ, δ, τ, b, N) of the construction over a
finite prefix of blocks. Block n is the index interval [b_n, b_{n+1}); its
first δ_n indices form the doubling region, and the wrap at b_{n+1}-1 sends
mass to block φ(n) with coefficient 2^-τ_n.

Array layout for a schedule with prefix P:
    phi         φ(0..P)           P+1 entries, φ(0) = 0
    delta       δ_0..δ_P          P+1 entries, δ_0 = 0
    tau         τ_1..τ_P          P entries
    b           b_0..b_{P+1}      P+2 entries, b_0 = 0
    multipliers N_1..N_P          P entries

Conditions checked by validate():
    (1) φ(0) = 0, φ(n) < n, values on [1, P] form an initial segment {0..r}
    (2) δ_n - τ_n strictly increasing
    (3) τ_n ≥ δ_{n-1} + 2(n+1)
    (4) b_{n+1} - b_n = 2·N_n·(b_n - b_{n-1}), N_n ≥ 1
    (5) 2δ_n < b_{n+1} - b_n
    (6) δ_n / (b_{n+1} - b_n) strictly decreasing
and validate_41() checks 2^δ_{n-1}·(b_{n+1}-b_n)·2^{2(n+1)} ≤ 2^τ_n,
needed for the sup-norm and ℓᵖ versions of the block bounds.

Presets:
    canonical   τ_n = 4^{n+1}, δ_n = 2τ_n, b_n - b_{n-1} = 4^{2n+1}
    small-2     τ_n = δ_{n-1} + 2(n+1), δ_n = τ_n + 5·2^n, b_1 = 32, minimal N_n
    small-41    like small-2 plus ⌈log2(b_{n+1}-b_n)⌉ in τ_n, so (41) holds
"""

import bisect
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple

from .errors import MalformedInputError, MalformedScheduleError, PrefixExceededError

logger = logging.getLogger(__name__)

# Upper prefix limits per preset (canonical exponents grow like 4^n)
CANONICAL_MAX_PREFIX = 24
SMALL_MAX_PREFIX = 40

SMALL_FIRST_BLOCK = 32
MAX_MULTIPLIER_SEARCH = 1 << 20


def phi_diagonal(n: int) -> int:
    """
    Triangular enumeration 0 | 0,1 | 0,1,2 | ... shifted by one.

    φ(0) = 0 and φ(m) for m ≥ 1 is the (m-1)-th entry of the concatenated
    rows, so every value recurs infinitely often and φ(m) < m.

    Example:
        >>> [phi_diagonal(n) for n in range(7)]
        [0, 0, 0, 1, 0, 1, 2]
    """
    if n < 0:
        raise MalformedInputError(f"φ is defined on non-negative integers, got {n}")
    if n == 0:
        return 0
    p = n - 1
    row = (math.isqrt(8 * p + 1) - 1) // 2
    return p - row * (row + 1) // 2


def ceil_log2(value: int) -> int:
    """Smallest e ≥ 0 with value ≤ 2^e (value ≥ 1)"""
    return (value - 1).bit_length()


@dataclass(frozen=True)
class ConditionResult:
    """Outcome of one schedule condition"""
    condition: str
    passed: bool
    first_violation: Optional[int] = None
    note: str = ""


@dataclass(frozen=True)
class ConditionReport:
    """Per-condition pass/fail of a schedule check"""
    results: Tuple[ConditionResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def failed(self) -> List[ConditionResult]:
        return [r for r in self.results if not r.passed]

    def get(self, condition: str) -> ConditionResult:
        for result in self.results:
            if result.condition == condition:
                return result
        raise KeyError(condition)

    def summary(self) -> str:
        lines = []
        for r in self.results:
            status = "pass" if r.passed else f"FAIL at n={r.first_violation}"
            lines.append(f"  ({r.condition}) {status}  {r.note}".rstrip())
        return "\n".join(lines)


@dataclass(frozen=True)
class Schedule:
    """
    Parameters (φ, δ, τ, b, N) over blocks 0..prefix.

    Construction only checks shape (lengths, base values); the conditions of
    the construction are checked by validate() so a report can say which one
    failed and where.
    """

    phi: Tuple[int, ...]
    delta: Tuple[int, ...]
    tau: Tuple[int, ...]
    b: Tuple[int, ...]
    multipliers: Tuple[int, ...]
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        for attr in ("phi", "delta", "tau", "b", "multipliers"):
            object.__setattr__(self, attr, tuple(int(v) for v in getattr(self, attr)))

        prefix = len(self.tau)
        if prefix < 1:
            raise MalformedScheduleError("Schedule prefix must be at least 1 (tau is empty)")
        expected = {
            "phi": prefix + 1,
            "delta": prefix + 1,
            "b": prefix + 2,
            "multipliers": prefix,
        }
        for attr, length in expected.items():
            if len(getattr(self, attr)) != length:
                raise MalformedScheduleError(
                    f"Schedule array '{attr}' has {len(getattr(self, attr))} entries, expected {length}.\n"
                    f"With tau of length {prefix}: phi and delta need {prefix + 1}, "
                    f"b needs {prefix + 2}, N needs {prefix}."
                )
        if self.b[0] != 0:
            raise MalformedScheduleError(f"b_0 must be 0, got {self.b[0]}")
        if self.delta[0] != 0:
            raise MalformedScheduleError(f"δ_0 must be 0, got {self.delta[0]}")
        if any(self.b[i + 1] <= self.b[i] for i in range(prefix + 1)):
            raise MalformedScheduleError(f"Block boundaries b must be strictly increasing: {list(self.b)}")
        if any(v < 0 for v in self.phi + self.delta + self.tau):
            raise MalformedScheduleError("phi, delta and tau entries must be non-negative")

    # ------------------------------------------------------------------
    # Lookups
    # ------------------------------------------------------------------

    @property
    def prefix(self) -> int:
        return len(self.tau)

    @property
    def limit(self) -> int:
        """First index beyond the prefix, b_{prefix+1}"""
        return self.b[-1]

    def check_block(self, n: int) -> None:
        if not 0 <= n <= self.prefix:
            raise PrefixExceededError(
                f"Block {n} is outside the schedule prefix (blocks 0..{self.prefix}).\n"
                f"Rebuild the schedule with a larger --prefix."
            )

    def tau_of(self, n: int) -> int:
        """τ_n for n ≥ 1"""
        self.check_block(n)
        if n == 0:
            raise MalformedInputError("τ_0 is not defined (block 0 wraps to -e_0)")
        return self.tau[n - 1]

    def block_length(self, n: int) -> int:
        self.check_block(n)
        return self.b[n + 1] - self.b[n]

    def period(self, n: int) -> int:
        """2(b_{n+1} - b_n), a period of every e_k with k < b_{n+1}"""
        return 2 * self.block_length(n)

    def block_bounds(self, n: int) -> Tuple[int, int]:
        self.check_block(n)
        return self.b[n], self.b[n + 1]

    def doubling_count(self, n: int, lo: int, hi: int) -> int:
        """#([lo, hi) ∩ [0, δ_n)) for block offsets lo ≤ hi"""
        d = self.delta[n]
        return max(0, min(hi, d) - min(lo, d))

    def block_of(self, k: int) -> int:
        return block_of(k, self)


def block_of(k: int, s: Schedule) -> int:
    """
    Block index n with k ∈ [b_n, b_{n+1}).

    Raises:
        PrefixExceededError: If k ≥ b_{prefix+1}

    Example:
        >>> block_of(1454, small_preset("small-2", 5))
        4
    """
    if k < 0:
        raise MalformedInputError(f"Index must be non-negative, got {k}")
    if k >= s.limit:
        raise PrefixExceededError(
            f"Index {k} lies beyond the schedule prefix (b_{s.prefix + 1} = {s.limit}).\n"
            f"Rebuild the schedule with a larger --prefix."
        )
    return bisect.bisect_right(s.b, k) - 1


# ----------------------------------------------------------------------
# Validation
# ----------------------------------------------------------------------

def _first(indices) -> Optional[int]:
    return next(iter(indices), None)


def validate(s: Schedule) -> ConditionReport:
    """
    Check conditions (1)-(6) and monotonicity of δ and τ on the prefix.

    Args:
        s: Schedule (shape already validated at construction)

    Returns:
        ConditionReport with one entry per condition
    """
    P = s.prefix
    lengths = [s.b[n + 1] - s.b[n] for n in range(P + 1)]
    results = []

    # (1) φ(0) = 0, φ(n) < n, initial-segment surjectivity proxy
    bad = [0] if s.phi[0] != 0 else []
    bad += [n for n in range(1, P + 1) if not s.phi[n] < n]
    values = set(s.phi[1:])
    if not bad and values != set(range(max(values) + 1)):
        missing = min(set(range(max(values) + 1)) - values)
        bad = [P]
        note = f"value {missing} has no preimage in φ(1..{P})"
    else:
        note = f"φ(1..{P}) covers {{0..{max(values)}}}"
    results.append(ConditionResult("1", not bad, _first(bad), note))

    # (2) δ_n - τ_n strictly increasing
    gaps = [s.delta[n] - s.tau[n - 1] for n in range(1, P + 1)]
    bad = [n for n in range(2, P + 1) if not gaps[n - 1] > gaps[n - 2]]
    results.append(ConditionResult("2", not bad, _first(bad), "strict increase of δ_n-τ_n on the prefix"))

    # (3) τ_n ≥ δ_{n-1} + 2(n+1)
    bad = [n for n in range(1, P + 1) if s.tau[n - 1] < s.delta[n - 1] + 2 * (n + 1)]
    results.append(ConditionResult("3", not bad, _first(bad)))

    # (4) b_{n+1} - b_n = 2·N_n·(b_n - b_{n-1})
    bad = [
        n for n in range(1, P + 1)
        if s.multipliers[n - 1] < 1 or lengths[n] != 2 * s.multipliers[n - 1] * lengths[n - 1]
    ]
    results.append(ConditionResult("4", not bad, _first(bad)))

    # (5) 2δ_n < b_{n+1} - b_n (n = 0 included)
    bad = [n for n in range(P + 1) if not 2 * s.delta[n] < lengths[n]]
    results.append(ConditionResult("5", not bad, _first(bad)))

    # (6) δ_n / L_n strictly decreasing for n ≥ 1
    ratios = [Fraction(s.delta[n], lengths[n]) for n in range(P + 1)]
    bad = [n for n in range(2, P + 1) if not ratios[n] < ratios[n - 1]]
    results.append(ConditionResult("6", not bad, _first(bad), "strict decrease on the prefix; limit 0 is a generator property"))

    # δ_n, τ_n strictly increasing positive integers
    bad = [n for n in range(1, P + 1) if s.delta[n] <= 0 or s.tau[n - 1] <= 0]
    bad += [n for n in range(2, P + 1) if s.delta[n] <= s.delta[n - 1] or s.tau[n - 1] <= s.tau[n - 2]]
    results.append(ConditionResult("monotone", not bad, min(bad) if bad else None))

    report = ConditionReport(tuple(results))
    if report.ok:
        logger.debug(f"Schedule {s.name or '<custom>'} (prefix {P}) passes conditions (1)-(6)")
    else:
        logger.debug(f"Schedule {s.name or '<custom>'} fails: {[r.condition for r in report.failed()]}")
    return report


def validate_41(s: Schedule) -> ConditionReport:
    """
    Exact check of 2^δ_{n-1}·(b_{n+1}-b_n)·2^{2(n+1)} ≤ 2^τ_n for 1 ≤ n ≤ prefix.

    Example:
        >>> validate_41(canonical(4)).ok
        True
    """
    bad = []
    for n in range(1, s.prefix + 1):
        room = s.tau[n - 1] - s.delta[n - 1] - 2 * (n + 1)
        if room < 0 or ceil_log2(s.b[n + 1] - s.b[n]) > room:
            bad.append(n)
    result = ConditionResult("41", not bad, _first(bad), "required for sup-norm and lp block bounds")
    return ConditionReport((result,))


# ----------------------------------------------------------------------
# Presets
# ----------------------------------------------------------------------

@lru_cache(maxsize=64)
def canonical(prefix: int) -> Schedule:
    """
    τ_n = 4^{n+1}, δ_n = 2τ_n, b_n - b_{n-1} = 4^{2n+1}, φ triangular.

    Example:
        >>> canonical(3).b
        (0, 64, 1088, 17472, 279616)
    """
    _check_prefix(prefix, CANONICAL_MAX_PREFIX, "canonical")
    tau = [4 ** (n + 1) for n in range(1, prefix + 1)]
    delta = [0] + [2 * t for t in tau]
    b = [0]
    for n in range(1, prefix + 2):
        b.append(b[-1] + 4 ** (2 * n + 1))
    multipliers = [(b[n + 1] - b[n]) // (2 * (b[n] - b[n - 1])) for n in range(1, prefix + 1)]
    phi = [phi_diagonal(n) for n in range(prefix + 1)]
    return Schedule(tuple(phi), tuple(delta), tuple(tau), tuple(b), tuple(multipliers), name="canonical")


def _small_recurrence(prefix: int, with_41: bool) -> Tuple[list, list, list, list]:
    """Build τ, δ, b, N by minimal-first multiplier search"""
    tau, delta = [], [0]
    lengths = [SMALL_FIRST_BLOCK]
    multipliers = []
    for n in range(1, prefix + 1):
        for N in range(1, MAX_MULTIPLIER_SEARCH):
            length = 2 * N * lengths[-1]
            t = delta[-1] + 2 * (n + 1) + (ceil_log2(length) if with_41 else 0)
            d = t + 5 * 2 ** n
            if not 2 * d < length:
                continue
            if n >= 2 and not Fraction(d, length) < Fraction(delta[-1], lengths[-1]):
                continue
            break
        else:
            raise MalformedScheduleError(f"No multiplier N_{n} below {MAX_MULTIPLIER_SEARCH} satisfies (5) and (6)")
        tau.append(t)
        delta.append(d)
        lengths.append(length)
        multipliers.append(N)
    b = [0]
    for length in lengths:
        b.append(b[-1] + length)
    return tau, delta, b, multipliers


@lru_cache(maxsize=64)
def small_preset(name: str, prefix: int) -> Schedule:
    """
    Desk-scale schedules: "small-2" (ℓ¹ claims) and "small-41" (also satisfies (41)).

    Example:
        >>> small_preset("small-2", 4).b
        (0, 32, 96, 352, 1376, 5472)
    """
    key = name.lower()
    if key not in ("small-2", "small-41"):
        raise MalformedInputError(f"Unknown small preset '{name}'. Valid: small-2, small-41")
    _check_prefix(prefix, SMALL_MAX_PREFIX, key)
    tau, delta, b, multipliers = _small_recurrence(prefix, with_41=(key == "small-41"))
    phi = [phi_diagonal(n) for n in range(prefix + 1)]
    return Schedule(tuple(phi), tuple(delta), tuple(tau), tuple(b), tuple(multipliers), name=key)


def _check_prefix(prefix: int, maximum: int, name: str) -> None:
    if not isinstance(prefix, int) or not 1 <= prefix <= maximum:
        raise MalformedInputError(f"Prefix for preset '{name}' must be in [1, {maximum}], got {prefix}")


PRESETS: Dict[str, Callable[[int], Schedule]] = {
    "canonical": canonical,
    "small-2": lambda prefix: small_preset("small-2", prefix),
    "small-41": lambda prefix: small_preset("small-41", prefix),
}


def preset(name: str, prefix: int) -> Schedule:
    """Build a named preset schedule"""
    key = name.lower()
    if key not in PRESETS:
        raise MalformedInputError(f"Unknown preset '{name}'. Valid presets: {', '.join(PRESETS)}")
    return PRESETS[key](prefix)


def extend(s: Schedule, prefix: int) -> Schedule:
    """
    Rebuild a preset schedule with a longer prefix.

    Raises:
        MalformedInputError: If the schedule was not built from a preset
    """
    if s.name not in PRESETS:
        raise MalformedInputError(
            "Only preset schedules can be extended; this schedule was loaded from a file.\n"
            "Provide a longer schedule file instead."
        )
    if prefix <= s.prefix:
        return s
    logger.info(f"Extending schedule {s.name} from prefix {s.prefix} to {prefix}")
    return preset(s.name, prefix)
