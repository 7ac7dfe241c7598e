"""
Constructive hypercyclicity witnesses.

hyp0_witness        single coordinate: z·e_m with T^{lN+M}(z·e_m) close to x_k·e_k
transitivity_witness chains hyp0 over the coordinates of x - y
reiterative_witness  return times k*, k*+d, ..., k*+depth·d of one vector to a ball

Every construction picks the smallest admissible parameters, so outputs are
reproducible, and every claimed distance is recomputed with apply_power.

The exact residuals shrink like 2^-(δ_t-τ_t); adding them to O(1) values
makes mantissas of about that many bits. Constructions whose gap exceeds
LINDYN_MAX_GAP_BITS are refused with ResourceLimitError.
"""

import logging
import math
from fractions import Fraction
from typing import List, Optional, Tuple

from ..config import get_settings
from ..density import IndexSet, banach_window
from ..dyadic import ZERO, Dyadic, Number
from ..errors import MalformedInputError, PrefixTooShortError, ResourceLimitError
from ..operator_t import OperatorT, operator_for
from ..schedule import PRESETS, Schedule, block_of, ceil_log2, preset
from ..schedule import CANONICAL_MAX_PREFIX, SMALL_MAX_PREFIX
from ..seqspace import SparseVec, norm
from .report import Inequality, WitnessReport

logger = logging.getLogger(__name__)


def _positive(eps: Number, name: str) -> Dyadic:
    eps = Dyadic.coerce(eps)
    if not eps > 0:
        raise MalformedInputError(f"{name} must be positive, got {eps}")
    return eps


def minimal_shift(value: Dyadic, eps: Dyadic) -> int:
    """Smallest s ≥ 1 with |value| < eps·2^s"""
    mag = abs(value)
    if mag.is_zero():
        return 1
    s = max(1, mag.magnitude_bits() - eps.magnitude_bits())
    while not mag < eps.shift(s):
        s += 1
    while s > 1 and mag < eps.shift(s - 1):
        s -= 1
    return s


def _needed_block(s: Schedule, n: int, need: int) -> Optional[int]:
    """First t with φ(t) = n and δ_t-τ_t ≥ need in the longest preset of the same name"""
    if s.name not in PRESETS:
        return None
    longest = preset(s.name, CANONICAL_MAX_PREFIX if s.name == "canonical" else SMALL_MAX_PREFIX)
    for t in range(1, longest.prefix + 1):
        if longest.phi[t] == n and longest.delta[t] - longest.tau[t - 1] >= need:
            return t
    return None


def _operator(s: Schedule, operator: Optional[OperatorT]) -> OperatorT:
    return operator if operator is not None else operator_for(s)


def hyp0_witness(
    eps: Number,
    k: int,
    N: int,
    M: int,
    xk: Number,
    s: Schedule,
    operator: Optional[OperatorT] = None,
) -> WitnessReport:
    """
    Find m, z and an exponent lN+M with ‖T^{lN+M}(z·e_m) - x_k·e_k‖₁ < eps and |z| < eps.

    Construction (n = block of k):
        s  smallest s ≥ 1 with |x_k| < eps·2^s
        t  smallest t ≥ 1 with φ(t) = n and δ_t - τ_t ≥ s + N + (b_{n+1} - b_n)
        r  in [0, N) making b_{t+1} - m + k - b_n ≡ M (mod N)
        m  b_t + δ_t - τ_t - s - r
        z  x_k / 2^{s+r+j},  j = #([0, k-b_n) ∩ [0, δ_n))
    The only error term sits at index b_t + k - b_n with size 2^{k-b_n+τ_t-δ_t-j}|x_k|.

    Raises:
        PrefixTooShortError: If no block t of the prefix qualifies
        ResourceLimitError: If δ_t - τ_t exceeds LINDYN_MAX_GAP_BITS

    Example:
        >>> r = hyp0_witness(Dyadic.parse("1/2"), 0, 1, 0, ONE, small_preset("small-2", 5))
        >>> r["m"], r["exponent"], r["z"]
        (1454, 4018, Dyadic(0.25))
    """
    eps = _positive(eps, "eps")
    xk = Dyadic.coerce(xk)
    if N < 1 or not 0 <= M < N:
        raise MalformedInputError(f"Need N ≥ 1 and 0 ≤ M < N, got N={N}, M={M}")
    n = block_of(k, s)
    T = _operator(s, operator)
    target = SparseVec.basis(k, xk)

    if xk.is_zero():
        # T^M(0) = 0 for any m; use m = k
        distance = norm(T.apply_power(SparseVec.zero(), M) - target)
        return WitnessReport(
            claim="hyp0",
            objects={"m": k, "exponent": M, "l": 0, "z": ZERO, "distance": distance.value},
            inequalities=(
                Inequality("|z| < eps", ZERO, "<", eps),
                Inequality("distance < eps", distance.value, "<", eps),
            ),
            notes=("zero target: z = 0",),
        )

    shift = minimal_shift(xk, eps)
    block_len = s.block_length(n)
    need = shift + N + block_len
    t = next(
        (t for t in range(1, s.prefix + 1) if s.phi[t] == n and s.delta[t] - s.tau[t - 1] >= need),
        None,
    )
    if t is None:
        needed = _needed_block(s, n, need)
        raise PrefixTooShortError(
            f"No block t ≤ {s.prefix} has φ(t) = {n} and δ_t - τ_t ≥ {need}.\n"
            + (f"Extend the schedule prefix to at least {needed}." if needed is not None
               else "Extend the schedule prefix."),
            needed_block=needed,
        )
    gap = s.delta[t] - s.tau[t - 1]
    max_gap = get_settings().max_gap_bits
    if gap > max_gap:
        raise ResourceLimitError(
            f"Witness needs block {t} with gap δ_t - τ_t = {gap} bits, above LINDYN_MAX_GAP_BITS={max_gap}.\n"
            f"Use a larger eps, fewer coordinates, or raise the limit."
        )

    start = s.b[t] + gap - shift
    base = s.b[t + 1] - start + k - s.b[n]
    r = (M - base) % N
    m = start - r
    exponent = base + r
    j = min(k - s.b[n], s.delta[n])
    z = xk.shift(-(shift + r + j))
    logger.debug(f"hyp0: k={k} n={n} s={shift} t={t} r={r} m={m} exponent={exponent} j={j}")

    image = T.apply_power(SparseVec.basis(m, z), exponent)
    distance = norm(image - target).value
    residual = abs(xk).shift(k - s.b[n] + s.tau[t - 1] - s.delta[t] - j)

    return WitnessReport(
        claim="hyp0",
        objects={
            "m": m,
            "exponent": exponent,
            "l": (exponent - M) // N,
            "z": z,
            "s": shift,
            "t": t,
            "r": r,
            "j": j,
            "residual": residual,
        },
        inequalities=(
            Inequality("|z| < eps", abs(z), "<", eps),
            Inequality("exponent mod N", exponent % N, "==", M),
            Inequality("‖T^exponent(z e_m) - x_k e_k‖₁ < eps", distance, "<", eps),
            Inequality("distance equals closed-form residual", distance, "==", residual),
        ),
    )


def _eps_split(eps: Dyadic, count: int) -> Dyadic:
    """eps / 2^⌈log2 count⌉ ≤ eps / count, still dyadic"""
    return eps.shift(-ceil_log2(max(count, 1)))


def transitivity_witness(
    y: SparseVec,
    x: SparseVec,
    eps: Number,
    s: Schedule,
    operator: Optional[OperatorT] = None,
) -> WitnessReport:
    """
    Find z and n with ‖z‖₁ < eps, n ≡ 0 mod period_of(y) and ‖T^n(y+z) - x‖₁ < eps.

    The coordinates k of w = x - y are handled in increasing order. Coordinate
    k gets a hyp0 witness with step N_k and residue M_k = E, the exponent built
    so far; N_k is the lcm of period_of(y) and the periods of the earlier e_m,
    times the smallest factor with N_k > E. Later steps are then multiples of
    every earlier period, so earlier terms are unaffected.

    Raises:
        PrefixTooShortError: Propagated from hyp0_witness
    """
    eps = _positive(eps, "eps")
    T = _operator(s, operator)
    w = x - y
    base_period = T.period_of(y)

    if w.is_zero():
        n = base_period
        image = T.apply_power(y, n)
        distance = norm(image - x).value
        return WitnessReport(
            claim="transitivity",
            objects={"z": SparseVec.zero(), "n": n, "coordinates": 0},
            inequalities=(
                Inequality("‖z‖₁ < eps", ZERO, "<", eps),
                Inequality("n mod period_of(y)", n % base_period, "==", 0),
                Inequality("‖T^n(y+z) - x‖₁ < eps", distance, "<", eps),
            ),
            notes=("x = y: z = 0, n = period_of(y)",),
        )

    d = w.max_index
    eps_each = _eps_split(eps, d + 1)
    exponent = 0
    periods = base_period
    z = SparseVec.zero()
    steps: List[Tuple[int, int, int, int]] = []  # (k, m, N_k, exponent)

    for k, wk in w:
        step = periods
        if step <= exponent:
            step *= exponent // step + 1
        witness = hyp0_witness(eps_each, k, step, exponent, wk, s, operator=T)
        if not witness.ok:
            raise ResourceLimitError(f"hyp0 step for coordinate {k} failed its own checks:\n{witness.summary()}")
        m = witness["m"]
        exponent = witness["exponent"]
        z = z + SparseVec.basis(m, witness["z"])
        periods = math.lcm(periods, T.period_of(SparseVec.basis(m)))
        steps.append((k, m, step, exponent))
        logger.debug(f"transitivity: coordinate {k} → m={m} N={step} E={exponent}")

    n = exponent
    image = T.apply_power(y + z, n)
    distance = norm(image - x).value
    z_norm = norm(z).value
    logger.info(f"Transitivity witness: {len(steps)} coordinates, n={n}")

    return WitnessReport(
        claim="transitivity",
        objects={
            "z": z,
            "n": n,
            "coordinates": len(steps),
            "eps_each": eps_each,
            "steps": [list(step) for step in steps],
        },
        inequalities=(
            Inequality("‖z‖₁ < eps", z_norm, "<", eps),
            Inequality("n mod period_of(y)", n % base_period, "==", 0),
            Inequality("‖T^n(y+z) - x‖₁ < eps", distance, "<", eps),
        ),
    )


def reiterative_witness(
    center: SparseVec,
    radius: Number,
    depth: int,
    s: Schedule,
    operator: Optional[OperatorT] = None,
) -> WitnessReport:
    """
    Vector y whose orbit visits the ball B(center, radius) at k*, k*+d, ..., k*+depth·d.

    center is periodic with d = period_of(center); y comes from
    transitivity_witness(0, center, radius / 2^{depth·d}), which is enough
    because ‖T‖ ≤ 2 and T^{l·d} fixes the center.

    Example:
        >>> r = reiterative_witness(SparseVec.basis(0), Dyadic.parse("1/2"), 3, small_preset("small-2", 8))
        >>> r["d"]
        64
    """
    radius = _positive(radius, "radius")
    if depth < 0:
        raise MalformedInputError(f"depth must be non-negative, got {depth}")
    T = _operator(s, operator)
    d = T.period_of(center)
    eps = radius.shift(-depth * d)

    if center.is_zero():
        y, kstar = SparseVec.zero(), 0
        notes = ("zero center: y = 0 is fixed",)
    else:
        inner = transitivity_witness(SparseVec.zero(), center, eps, s, operator=T)
        if not inner.ok:
            raise ResourceLimitError(f"Inner transitivity witness failed its checks:\n{inner.summary()}")
        y, kstar = inner["z"], inner["n"]
        notes = ()

    visits = [kstar + l * d for l in range(depth + 1)]
    inequalities = []
    for visit in visits:
        distance = norm(T.apply_power(y, visit) - center).value
        inequalities.append(Inequality(f"‖T^{visit} y - center‖₁ ≤ radius", distance, "<=", radius))

    hits = IndexSet.from_indices(visits, horizon=visits[-1])
    window = depth * d + 1
    count, ratio = banach_window(hits, window)
    inequalities.append(
        Inequality(f"a_{window}/{window} ≥ (depth+1)/(depth·d+1)", ratio, ">=", Fraction(depth + 1, window))
    )
    # d = 1 (zero center) hits every integer, so ratio = 1/d exactly
    if depth >= 1 and d > 1:
        inequalities.append(Inequality(f"a_{window}/{window} > 1/d", ratio, ">", Fraction(1, d)))

    return WitnessReport(
        claim="reiterative",
        objects={"y": y, "kstar": kstar, "d": d, "eps": eps, "hits": list(hits.elements), "banach_count": count},
        inequalities=tuple(inequalities),
        notes=notes,
    )