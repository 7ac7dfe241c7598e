"""
Finite-horizon checks behind the absence of distributional chaos.

prelim_scan walks the escalation of block levels l0 < l1 < ... that the
argument uses: at each level it looks for the first j where the mass sent
down from higher blocks exceeds a quarter of ‖X_level‖, and climbs to the
block responsible. When the level reaches the top block of the support the
sum over higher blocks is identically zero, which is the certificate.

cool_certificate counts how often ‖T^j x‖ stays above τ = ‖X_n‖/4 (n the top
block) and compares the exact fraction with the finite fhc2 bound. A pair
(u, v) with x = u - v passing this check cannot have orbit distance below τ
on a set of upper density one, at the horizon checked.
"""

import logging
from fractions import Fraction
from typing import Dict, List, Optional

from ..dyadic import ZERO, Dyadic
from ..errors import ZeroVectorError
from ..operator_t import OperatorT, operator_for
from ..schedule import Schedule
from ..seqspace import L1, NormKind, SparseVec, block_decomposition, norm, weighted_X
from .block_bounds import count_periodic, block_norm_flags, fhc2_bound, lower_block_profile
from .report import Inequality, WitnessReport

logger = logging.getLogger(__name__)

QUARTER = Dyadic.of(1, -2)


def _nonzero(x: SparseVec, what: str) -> None:
    if x.is_zero():
        raise ZeroVectorError(f"{what} is undefined for the zero vector")


def select_l0(x: SparseVec, s: Schedule) -> int:
    """Smallest l with ‖P_l x‖₁ ≥ ‖x‖₁ / 2^{l+1}"""
    total = norm(x).value
    parts = block_decomposition(x, s)
    for l in range(max(parts) + 1):
        part = parts.get(l)
        if part is not None and norm(part).value >= total.shift(-(l + 1)):
            return l
    # unreachable: the block norms sum to ‖x‖₁, so some l qualifies
    return max(parts)


def prelim_scan(x: SparseVec, horizon: int, s: Schedule, operator: Optional[OperatorT] = None) -> WitnessReport:
    """
    Escalation (j_1, l_1), (j_2, l_2), ... up to the horizon, or the top-block certificate.

    Raises:
        ZeroVectorError: For x = 0

    Example:
        >>> prelim_scan(SparseVec.basis(32), 512, small_preset("small-2", 3))["outcome"]
        'certificate'
    """
    _nonzero(x, "prelim_scan")
    T = operator if operator is not None else operator_for(s)
    parts = block_decomposition(x, s)
    top = max(parts)
    total = norm(x)
    l0 = select_l0(x, s)
    X0 = norm(weighted_X(x, l0, s))

    inequalities = [
        Inequality(f"‖P_{l0} x‖ ≥ ‖x‖/2^{l0 + 1}", norm(parts[l0]), ">=", total.scaled(Dyadic.of(1, -(l0 + 1)))),
        Inequality(f"‖X_{l0}‖ > 0", X0.value, ">", ZERO),
    ]
    escalation: List[List[int]] = []
    profiles: Dict[int, list] = {}
    level = l0
    outcome = "certificate"

    while level < top:
        upper = [l for l in parts if l > level]
        for l in upper:
            if l not in profiles:
                steps = min(horizon + 1, s.period(l))
                profiles[l] = lower_block_profile(x, l, steps, s, L1, T)
        X_level = norm(weighted_X(x, level, s))
        threshold = X_level.value * QUARTER

        found = None
        for j in range(horizon + 1):
            mass = sum((profiles[l][j % len(profiles[l])][level].value for l in upper), ZERO)
            if mass > threshold:
                found = j
                break
        if found is None:
            outcome = "horizon-exhausted"
            logger.info(f"prelim_scan: no j ≤ {horizon} exceeds ‖X_{level}‖/4 from higher blocks")
            break

        nxt = next(
            (l for l in sorted(upper)
             if profiles[l][found % len(profiles[l])][level].value > X_level.value.shift(level - l - 2)),
            None,
        )
        if nxt is None:
            # cannot happen when the per-block shares sum to ‖X_level‖/4; keep the heaviest block
            nxt = max(upper, key=lambda l: profiles[l][found % len(profiles[l])][level].value)
        escalation.append([found, nxt])
        L, d = s.block_length(nxt), s.delta[nxt]
        inequalities.append(Inequality(f"j={found} > b_{{{nxt}+1}}-b_{nxt}-δ_{nxt}", found, ">", L - d))
        inequalities.append(Inequality(f"‖X_{nxt}‖ ≥ ‖X_{l0}‖", norm(weighted_X(x, nxt, s)), ">=", X0))
        logger.debug(f"prelim_scan: level {level} → j={found}, l={nxt}")
        level = nxt

    return WitnessReport(
        claim="prelim",
        objects={"l0": l0, "escalation": escalation, "final_level": level, "outcome": outcome, "horizon": horizon},
        inequalities=tuple(inequalities),
        notes=(
            ("sum over blocks above the final level is identically 0",) if outcome == "certificate"
            else (f"threshold not exceeded within horizon {horizon} at level {level}",)
        ),
    )


def cool_certificate(
    x: SparseVec,
    horizon: int,
    s: Schedule,
    kind: NormKind = L1,
    operator: Optional[OperatorT] = None,
) -> WitnessReport:
    """
    #{j ≤ horizon : ‖T^j x‖ ≥ τ}/(horizon+1) ≥ 1 - 2δ_n/(horizon+1) - 2δ_n/(b_{n+1}-b_n), τ = ‖X_n‖/4.

    The orbit of x is periodic with period_of(x), so one period of norms is
    computed and the count is extended exactly.

    Raises:
        ZeroVectorError: For x = 0
    """
    _nonzero(x, "cool_certificate")
    T = operator if operator is not None else operator_for(s)
    n = x.top_block(s)
    tau = norm(weighted_X(x, n, s), kind).scaled(QUARTER)
    period = T.period_of(x)

    flags = []
    below = []
    current = x
    for j in range(min(period, horizon + 1)):
        hit = norm(current, kind) >= tau
        flags.append(hit)
        if not hit:
            below.append(j)
        current = T.apply(current)
    if len(flags) < period:
        count = sum(flags)
    else:
        count = count_periodic(flags, horizon)

    block_flags, _ = block_norm_flags(x, n, s, kind, T)
    block_count = count_periodic(block_flags, horizon)
    fraction = Fraction(count, horizon + 1)
    bound = fhc2_bound(n, horizon, s)
    density_floor = 1 - Fraction(2 * s.delta[n], s.block_length(n))

    return WitnessReport(
        claim="cool",
        objects={
            "n": n,
            "tau": tau.value,
            "norm": str(kind),
            "count": count,
            "fraction": fraction,
            "bound": bound,
            "profile": below,
            "block_count": block_count,
        },
        inequalities=(
            Inequality("fraction ≥ 1 - 2δ_n/(k+1) - 2δ_n/(b_{n+1}-b_n)", fraction, ">=", bound),
            Inequality("count ≥ #{j : ‖P_n T^j P_n x‖ ≥ ‖X_n‖/2}", count, ">=", block_count),
            Inequality("1 - 2δ_n/(b_{n+1}-b_n) > 0", density_floor, ">", 0),
        ),
        notes=(f"profile lists the j < {min(period, horizon + 1)} with ‖T^j x‖ < τ",),
    )


def cool_certificate_pair(
    u: SparseVec,
    v: SparseVec,
    horizon: int,
    s: Schedule,
    kind: NormKind = L1,
) -> WitnessReport:
    """cool_certificate for the orbit difference of a pair, x = u - v"""
    return cool_certificate(u - v, horizon, s, kind)
