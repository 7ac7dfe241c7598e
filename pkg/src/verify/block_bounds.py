"""
Block-level norm bounds.

For a vector x and blocks n < l:

    fhc0   sup_j ‖P_n T^j P_l x‖ ≤ ‖X_l‖ / 2^{2(l+1)}
    fhc1   max_{j ≤ b_{l+1}-b_l-δ_l} ‖P_n T^j P_l x‖ ≤ ‖P_l x‖ / 2^{2(l+1)}
    fhc2   #{j ≤ k : ‖P_l T^j P_l x‖ ≥ ‖X_l‖/2} / (k+1)
               ≥ 1 - 2δ_l/(k+1) - 2δ_l/(b_{l+1}-b_l)

Sups over j ≥ 0 become maxima over one period 2(b_{l+1}-b_l) of P_l x.
The block-l part of an orbit evolves on its own (T never maps a lower block
upward), so fhc2 iterates P_l T P_l only. In sup and ℓᵖ norms fhc0 and fhc1
hold under the stronger schedule condition (41), which is checked first.
"""

import bisect
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..dyadic import ZERO, Dyadic, dyadic_sum, pow2
from ..errors import MalformedInputError, ScheduleConditionError
from ..operator_t import OperatorT, operator_for
from ..schedule import Schedule, validate_41
from ..seqspace import L1, NormKind, NormValue, SparseVec, norm, project, weighted_X
from .report import Inequality, WitnessReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExclusionSet:
    """
    Window I_i of block l: the indices whose weighted mass a single orbit
    position j with j mod (b_{l+1}-b_l) = i may lose.

    Empty intervals are dropped, so δ_l = 0 gives no intervals.
    """

    l: int
    i: int
    intervals: Tuple[Tuple[int, int], ...]

    @property
    def length(self) -> int:
        return sum(hi - lo for lo, hi in self.intervals)

    def __contains__(self, m: int) -> bool:
        return any(lo <= m < hi for lo, hi in self.intervals)


def exclusion_set(l: int, i: int, s: Schedule) -> ExclusionSet:
    """
    I_i = [b_{l+1}-i, b_{l+1}-i+δ_l)                 if i ≥ δ_l
          [b_{l+1}-i, b_{l+1}) ∪ [b_l, b_l+δ_l-i)    otherwise
    """
    lo, hi = s.block_bounds(l)
    if not 0 <= i < hi - lo:
        raise MalformedInputError(f"Offset i must lie in [0, {hi - lo}), got {i}")
    d = s.delta[l]
    if i >= d:
        intervals = [(hi - i, hi - i + d)]
    else:
        intervals = [(hi - i, hi), (lo, lo + d - i)]
    return ExclusionSet(l, i, tuple((a, b) for a, b in intervals if a < b))


class _WindowWeights:
    """Σ_{m ∈ I} |X_{l,m}| over intervals via prefix sums on the support"""

    def __init__(self, X: SparseVec):
        self.indices = list(X.support)
        self.prefix = [ZERO]
        for _, c in X:
            self.prefix.append(self.prefix[-1] + abs(c))

    def between(self, lo: int, hi: int) -> Dyadic:
        a = bisect.bisect_left(self.indices, lo)
        b = bisect.bisect_left(self.indices, hi)
        return self.prefix[b] - self.prefix[a]

    def of(self, window: ExclusionSet) -> Dyadic:
        return dyadic_sum(self.between(lo, hi) for lo, hi in window.intervals)


def _require_41(s: Schedule, kind: NormKind) -> None:
    if kind.tag == "l1":
        return
    report = validate_41(s)
    if not report.ok:
        raise ScheduleConditionError(
            f"The {kind} version of this bound needs condition (41), which fails at "
            f"n={report.results[0].first_violation}.\n"
            f"Use --preset small-41 or canonical, or the l1 norm."
        )


def _check_blocks(s: Schedule, n: int, l: int) -> None:
    s.check_block(l)
    if not 0 <= n < l:
        raise MalformedInputError(f"Need 0 ≤ n < l, got n={n}, l={l}")


def phi_chain_length(n: int, l: int, s: Schedule) -> Optional[int]:
    """min{M ≥ 1 : φ^M(l) = n}, None if the chain from l skips n"""
    current, steps = l, 0
    while current > n:
        current = s.phi[current]
        steps += 1
    return steps if current == n else None


def lower_block_profile(
    x: SparseVec,
    l: int,
    steps: int,
    s: Schedule,
    kind: NormKind = L1,
    operator: Optional[OperatorT] = None,
) -> List[Dict[int, NormValue]]:
    """
    ‖P_n T^j P_l x‖ for every n < l and j = 0..steps-1, from one orbit scan.

    Returns:
        One {n: norm} dict per j
    """
    T = operator if operator is not None else operator_for(s)
    current = project(x, l, s)
    bounds = [s.block_bounds(n) for n in range(l)]
    profile = []
    for j in range(steps):
        profile.append({n: norm(current.restrict(lo, hi), kind) for n, (lo, hi) in enumerate(bounds)})
        if j + 1 < steps:
            current = T.apply(current)
    return profile


def fhc0_check(
    x: SparseVec,
    n: int,
    l: int,
    s: Schedule,
    kind: NormKind = L1,
    profile: Optional[List[Dict[int, NormValue]]] = None,
) -> WitnessReport:
    """
    sup_j ‖P_n T^j P_l x‖ ≤ ‖X_l‖ / 2^{2(l+1)}, the sup taken over one period of P_l x.

    Args:
        profile: Precomputed lower_block_profile over a full period (reused by suites)

    Example:
        >>> fhc0_check(SparseVec.basis(32), 0, 1, small_preset("small-2", 3))["sup"]
        Dyadic(1024)
    """
    _check_blocks(s, n, l)
    _require_41(s, kind)
    if profile is None:
        profile = lower_block_profile(x, l, s.period(l), s, kind)
    sup = max((row[n] for row in profile), key=lambda v: v.value, default=NormValue(kind, ZERO))
    bound = norm(weighted_X(x, l, s), kind).scaled(pow2(-2 * (l + 1)))
    chain = phi_chain_length(n, l, s)
    return WitnessReport(
        claim="fhc0",
        objects={"n": n, "l": l, "norm": str(kind), "sup": sup.value, "bound": bound.value,
                 "chain_length": chain if chain is not None else "not in chain"},
        inequalities=(Inequality(f"sup_j ‖P_{n} T^j P_{l} x‖ ≤ ‖X_{l}‖/2^{2 * (l + 1)}", sup, "<=", bound),),
    )


def fhc1_check(
    x: SparseVec,
    n: int,
    l: int,
    s: Schedule,
    kind: NormKind = L1,
    profile: Optional[List[Dict[int, NormValue]]] = None,
) -> WitnessReport:
    """max over j ∈ [0, b_{l+1}-b_l-δ_l] of ‖P_n T^j P_l x‖ ≤ ‖P_l x‖ / 2^{2(l+1)}"""
    _check_blocks(s, n, l)
    _require_41(s, kind)
    steps = s.block_length(l) - s.delta[l] + 1
    if profile is None:
        profile = lower_block_profile(x, l, steps, s, kind)
    window = profile[:steps]
    arg = max(range(len(window)), key=lambda j: window[j][n].value)
    peak = window[arg][n]
    bound = norm(project(x, l, s), kind).scaled(pow2(-2 * (l + 1)))
    return WitnessReport(
        claim="fhc1",
        objects={"n": n, "l": l, "norm": str(kind), "max": peak.value, "argmax": arg,
                 "bound": bound.value, "steps": steps},
        inequalities=(Inequality(f"max_j ‖P_{n} T^j P_{l} x‖ ≤ ‖P_{l} x‖/2^{2 * (l + 1)}", peak, "<=", bound),),
    )


def block_norm_flags(
    x: SparseVec,
    l: int,
    s: Schedule,
    kind: NormKind = L1,
    operator: Optional[OperatorT] = None,
) -> Tuple[List[bool], List[NormValue]]:
    """
    Over one period of P_l x: whether ‖P_l T^j P_l x‖ ≥ ‖X_l‖/2, and the norms.
    """
    T = operator if operator is not None else operator_for(s)
    threshold = norm(weighted_X(x, l, s), kind).scaled(Dyadic.of(1, -1))
    current = project(x, l, s)
    flags, norms = [], []
    for _ in range(s.period(l)):
        value = norm(current, kind)
        norms.append(value)
        flags.append(value >= threshold)
        current = T.block_step(current, l)
    return flags, norms


def count_periodic(flags: Sequence[bool], k: int) -> int:
    """#{j ≤ k : flags[j mod P]} for periodic flags"""
    period = len(flags)
    full, rest = divmod(k + 1, period)
    return full * sum(flags) + sum(flags[:rest])


def fhc2_bound(l: int, k: int, s: Schedule) -> Fraction:
    d = s.delta[l]
    return 1 - Fraction(2 * d, k + 1) - Fraction(2 * d, s.block_length(l))


def exclusion_branch(x: SparseVec, l: int, s: Schedule) -> Tuple[str, Optional[int]]:
    """
    ("light", None) if every window I_i carries less than half of ‖X_l‖₁,
    else ("heavy", i') for the first heavy window.
    """
    X = weighted_X(x, l, s)
    half = norm(X).value.shift(-1)
    weights = _WindowWeights(X)
    for i in range(s.block_length(l)):
        if weights.of(exclusion_set(l, i, s)) >= half:
            return "heavy", i
    return "light", None


def fhc2_fraction(
    x: SparseVec,
    l: int,
    k: int,
    s: Schedule,
    kind: NormKind = L1,
) -> WitnessReport:
    """
    Exact fraction of j ≤ k with ‖P_l T^j P_l x‖ ≥ ‖X_l‖/2, against the fhc2 bound.

    Example:
        >>> fhc2_fraction(SparseVec.basis(32), 1, 127, small_preset("small-2", 3))["fraction"]
        Fraction(51, 64)
    """
    s.check_block(l)
    if k < 0:
        raise MalformedInputError(f"Horizon k must be non-negative, got {k}")
    flags, _ = block_norm_flags(x, l, s, kind)
    count = count_periodic(flags, k)
    fraction = Fraction(count, k + 1)
    bound = fhc2_bound(l, k, s)
    branch, heavy = exclusion_branch(x, l, s)
    return WitnessReport(
        claim="fhc2",
        objects={"l": l, "k": k, "norm": str(kind), "count": count, "fraction": fraction,
                 "bound": bound, "branch": branch, "heavy_window": heavy if heavy is not None else "none"},
        inequalities=(Inequality("fraction ≥ 1 - 2δ_l/(k+1) - 2δ_l/(b_{l+1}-b_l)", fraction, ">=", bound),),
    )


def fhc2_sweep(x: SparseVec, l: int, k_max: int, s: Schedule, kind: NormKind = L1) -> WitnessReport:
    """fhc2 for every k in [0, k_max] from a single orbit scan"""
    s.check_block(l)
    flags, _ = block_norm_flags(x, l, s, kind)
    period = len(flags)
    count = 0
    worst_k, worst_margin, violations = 0, None, 0
    for k in range(k_max + 1):
        count += flags[k % period]
        margin = Fraction(count, k + 1) - fhc2_bound(l, k, s)
        if margin < 0:
            violations += 1
        if worst_margin is None or margin < worst_margin:
            worst_k, worst_margin = k, margin
    return WitnessReport(
        claim="fhc2-sweep",
        objects={"l": l, "k_max": k_max, "norm": str(kind), "worst_k": worst_k, "violations": violations},
        inequalities=(Inequality("min over k of fraction - bound", worst_margin, ">=", 0),),
    )


def exclusion_violations(x: SparseVec, l: int, k: int, s: Schedule) -> List[int]:
    """
    j ≤ k where ‖P_l T^j P_l x‖₁ < ‖X_l‖₁ - Σ_{m ∈ I_{j mod L}} |X_{l,m}|.

    An empirical check of the intermediate window inequality; never used as
    evidence for fhc2 itself.
    """
    s.check_block(l)
    X = weighted_X(x, l, s)
    total = norm(X).value
    weights = _WindowWeights(X)
    length = s.block_length(l)
    _, norms = block_norm_flags(x, l, s)
    period = len(norms)
    violations = []
    for j in range(k + 1):
        rhs = total - weights.of(exclusion_set(l, j % length, s))
        if norms[j % period].value < rhs:
            violations.append(j)
    if violations:
        logger.info(f"exclusion check: {len(violations)} violations in block {l} up to k={k}")
    return violations
