"""
Property suites behind `lindyn verify --claim ...`.

Each claim expands into independent cases (a key plus a picklable payload).
Cases run in-process, or on a process pool when workers > 1; results are
sorted by key so the output does not depend on scheduling.

Claims:
    periodicity  T^{2(b_{n+1}-b_n)} e_k = e_k, half-period sign flip in block 0, wrap identity
    oracle       apply_power = apply_power_naive for all j ≤ 2048 on random vectors
    norm         max_k ‖T e_k‖₁ = 2
    fhc0, fhc1   lower-block bounds on random block-l vectors, l ≤ 3
    fhc2         fraction bound for every k ≤ 4·period, l ≤ 2
    cool         cool certificate at horizon 8·period, top block ≤ 2
    hyp0         witness grid over eps, k, N, M, x_k
    transit      transitivity witnesses for random pairs
    reiterate    reiterative witness around e_0 and its Banach window
    density      inclusion-exclusion value and lower ≤ upper ≤ Banach ordering
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple

from tqdm import tqdm

from ..config import get_settings
from ..density import IndexSet, empirical_bounds, exact_ap_density, upper_banach_estimate
from ..dyadic import Dyadic
from ..errors import LabError, MalformedInputError, PrefixTooShortError
from ..operator_t import operator_for
from ..schedule import PRESETS, Schedule, block_of, extend
from ..seqspace import SparseVec
from .block_bounds import fhc0_check, fhc1_check, fhc2_sweep, lower_block_profile
from .corpus import (
    make_rng,
    random_block_vector,
    random_index_set,
    random_pair,
    random_top_block_vector,
    random_vector,
    sample_indices,
)
from .distributional import cool_certificate
from .hypercyclic import hyp0_witness, reiterative_witness, transitivity_witness

logger = logging.getLogger(__name__)

CLAIMS = (
    "periodicity", "oracle", "norm", "fhc0", "fhc1", "fhc2",
    "cool", "hyp0", "transit", "reiterate", "density",
)

DEFAULT_TRIALS = {
    "oracle": 100, "fhc0": 100, "fhc1": 100, "fhc2": 100,
    "cool": 50, "transit": 20, "density": 100,
}

ORACLE_MAX_EXPONENT = 2048
MAX_PREFIX_RETRIES = 6
HALF = Dyadic.of(1, -1)


@dataclass(frozen=True)
class CaseResult:
    """Outcome of one suite case"""
    key: Tuple
    ok: bool
    detail: str = ""


@dataclass
class SuiteResult:
    """All cases of one claim, sorted by key"""
    claim: str
    cases: List[CaseResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.cases)

    @property
    def failures(self) -> List[CaseResult]:
        return [c for c in self.cases if not c.ok]

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        lines = [f"{self.claim}: {status} ({len(self.cases) - len(self.failures)}/{len(self.cases)} cases)"]
        for case in self.failures:
            lines.append(f"  FAILED {case.key}: {case.detail}")
        return "\n".join(lines)


# ----------------------------------------------------------------------
# Helpers
# ----------------------------------------------------------------------

def with_prefix_retry(run: Callable[[Schedule], Any], s: Schedule) -> Any:
    """Run, extending a preset schedule whenever a longer prefix is requested"""
    for _ in range(MAX_PREFIX_RETRIES):
        try:
            return run(s)
        except PrefixTooShortError as e:
            if e.needed_block is None or s.name not in PRESETS or e.needed_block <= s.prefix:
                raise
            s = extend(s, e.needed_block)
    return run(s)


def _report_case(key: Tuple, report) -> CaseResult:
    if report.ok:
        return CaseResult(key, True)
    return CaseResult(key, False, "; ".join(i.render() for i in report.failed()))


def _block_limit(s: Schedule, top: int) -> int:
    """b_{min(top, prefix)+1}"""
    return s.b[min(top, s.prefix) + 1]


# ----------------------------------------------------------------------
# Case runners (module level so they pickle for the process pool)
# ----------------------------------------------------------------------

def _run_periodicity(s: Schedule, payload) -> Tuple[bool, str]:
    kind, value = payload
    T = operator_for(s)
    if kind == "wrap":
        return T.wrap_identity(value), f"wrap identity of block {value}"
    k = value
    e_k = SparseVec.basis(k)
    period = s.period(block_of(k, s))
    if T.apply_power(e_k, period) != e_k:
        return False, f"T^{period} e_{k} != e_{k}"
    if k < s.b[1] and T.apply_power(e_k, s.b[1]) != -e_k:
        return False, f"T^{s.b[1]} e_{k} != -e_{k}"
    return True, ""


def _run_oracle(s: Schedule, v: SparseVec) -> Tuple[bool, str]:
    T = operator_for(s)
    current = v
    for j in range(ORACLE_MAX_EXPONENT + 1):
        if T.apply_power(v, j) != current:
            return False, f"apply_power differs from naive iteration at j={j}"
        current = T.apply(current)
    return True, ""


def _run_norm(s: Schedule, limit: int) -> Tuple[bool, str]:
    best, arg = operator_for(s).basis_norm_max(limit)
    return best == Dyadic.of(2), f"max ‖T e_k‖₁ = {best} at k={arg}"


def _run_fhc0(s: Schedule, payload) -> Tuple[bool, str]:
    l, v = payload
    profile = lower_block_profile(v, l, s.period(l), s)
    details = []
    for n in range(l):
        report = fhc0_check(v, n, l, s, profile=profile)
        if not report.ok:
            details.append(report.summary())
    return not details, "\n".join(details)


def _run_fhc1(s: Schedule, payload) -> Tuple[bool, str]:
    l, v = payload
    profile = lower_block_profile(v, l, s.block_length(l) - s.delta[l] + 1, s)
    details = []
    for n in range(l):
        report = fhc1_check(v, n, l, s, profile=profile)
        if not report.ok:
            details.append(report.summary())
    return not details, "\n".join(details)


def _run_fhc2(s: Schedule, payload) -> Tuple[bool, str]:
    l, v = payload
    report = fhc2_sweep(v, l, 4 * s.period(l), s)
    return report.ok, "" if report.ok else report.summary()


def _run_cool(s: Schedule, v: SparseVec) -> Tuple[bool, str]:
    horizon = 8 * operator_for(s).period_of(v)
    report = cool_certificate(v, horizon, s)
    return report.ok, "" if report.ok else report.summary()


def _run_hyp0(s: Schedule, payload) -> Tuple[bool, str]:
    eps, k, N, M, xk = payload
    report = with_prefix_retry(lambda sched: hyp0_witness(eps, k, N, M, xk, sched), s)
    return report.ok, "" if report.ok else report.summary()


def _run_transit(s: Schedule, payload) -> Tuple[bool, str]:
    y, x, eps = payload
    report = with_prefix_retry(lambda sched: transitivity_witness(y, x, eps, sched), s)
    return report.ok, "" if report.ok else report.summary()


def _run_reiterate(s: Schedule, payload) -> Tuple[bool, str]:
    center, radius, depth = payload
    report = with_prefix_retry(lambda sched: reiterative_witness(center, radius, depth, sched), s)
    return report.ok, "" if report.ok else report.summary()


def _run_density(s: Schedule, payload) -> Tuple[bool, str]:
    kind, value = payload
    if kind == "ap":
        density = exact_ap_density(value)
        return density == Fraction(1, 3), f"exact_ap_density = {density}"
    A: IndexSet = value
    lower, upper = empirical_bounds(A)
    banach = upper_banach_estimate(A)
    ok = 0 <= lower <= upper <= banach
    return ok, f"lower={lower} upper={upper} banach={banach}"


RUNNERS: Dict[str, Callable[[Schedule, Any], Tuple[bool, str]]] = {
    "periodicity": _run_periodicity,
    "oracle": _run_oracle,
    "norm": _run_norm,
    "fhc0": _run_fhc0,
    "fhc1": _run_fhc1,
    "fhc2": _run_fhc2,
    "cool": _run_cool,
    "hyp0": _run_hyp0,
    "transit": _run_transit,
    "reiterate": _run_reiterate,
    "density": _run_density,
}


def _run_case(case: Tuple[str, Tuple, Schedule, Any]) -> CaseResult:
    claim, key, s, payload = case
    try:
        ok, detail = RUNNERS[claim](s, payload)
    except LabError as e:
        return CaseResult(key, False, f"{type(e).__name__}: {e}")
    return CaseResult(key, ok, "" if ok else detail)


# ----------------------------------------------------------------------
# Case generation
# ----------------------------------------------------------------------

def build_cases(claim: str, s: Schedule, seed: int, trials: Optional[int] = None) -> List[Tuple]:
    """
    Deterministic (claim, key, schedule, payload) cases for one claim.

    Args:
        claim: One of CLAIMS
        s: Schedule the cases run on (presets may be extended per case)
        seed: Seed of the random corpus
        trials: Number of random cases (default per claim)
    """
    if claim not in RUNNERS:
        raise MalformedInputError(f"Unknown claim '{claim}'. Valid: {', '.join(CLAIMS)}, all")
    trials = DEFAULT_TRIALS.get(claim, 0) if trials is None else trials
    rng = make_rng(seed)
    cases: List[Tuple] = []

    def add(key, payload):
        cases.append((claim, key, s, payload))

    if claim == "periodicity":
        if s.name == "canonical":
            indices = list(range(s.b[1])) + sample_indices(rng, s.b[1], s.b[2], 20)
        else:
            indices = list(range(_block_limit(s, 2)))
        for k in indices:
            add(("basis", k), ("basis", k))
        for n in range(min(3, s.prefix) + 1):
            add(("wrap", n), ("wrap", n))

    elif claim == "oracle":
        limit = _block_limit(s, 2)
        for i in range(trials):
            add(("vector", i), random_vector(rng, 0, limit, 8))

    elif claim == "norm":
        add(("basis-max",), _block_limit(s, 3))

    elif claim in ("fhc0", "fhc1"):
        if s.prefix >= 1:
            golden = SparseVec.basis(32 if claim == "fhc0" else 95) if s.name == "small-2" else None
            if golden is not None:
                add((1, -1), (1, golden))
        for l in range(1, min(3, s.prefix) + 1):
            for i in range(trials):
                add((l, i), (l, random_block_vector(rng, s, l)))

    elif claim == "fhc2":
        for l in range(0, min(2, s.prefix) + 1):
            for i in range(trials):
                add((l, i), (l, random_block_vector(rng, s, l)))

    elif claim == "cool":
        for i in range(trials):
            top = int(rng.integers(0, min(2, s.prefix) + 1))
            add(("vector", i), random_top_block_vector(rng, s, top))

    elif claim == "hyp0":
        eps_grid = [Dyadic.of(1, -1), Dyadic.of(1, -3), Dyadic.of(1, -6)]
        xk_grid = [Dyadic.of(1), Dyadic.of(-3, -2)]
        for e_i, eps in enumerate(eps_grid):
            for k in (0, 5, 33):
                for N in (1, 2, 64):
                    for M in range(N):
                        for x_i, xk in enumerate(xk_grid):
                            add((e_i, k, N, M, x_i), (eps, k, N, M, xk))

    elif claim == "transit":
        limit = _block_limit(s, 1)
        for i in range(trials):
            # every third pair differs in three coordinates
            y, x = random_pair(rng, limit, changes=1 + i % 3)
            add(("pair", i), (y, x, Dyadic.of(1, -4)))

    elif claim == "reiterate":
        add(("e_0", 3), (SparseVec.basis(0), HALF, 3))

    elif claim == "density":
        add(("ap",), ("ap", ((0, 4), (0, 6))))
        for i in range(trials):
            horizon = int(rng.integers(20, 200))
            add(("set", i), ("set", random_index_set(rng, horizon)))

    return cases


def run_suite(
    claim: str,
    s: Schedule,
    seed: Optional[int] = None,
    trials: Optional[int] = None,
    workers: Optional[int] = None,
    progress: bool = False,
) -> List[SuiteResult]:
    """
    Run one claim suite, or every suite for claim "all".

    Returns:
        One SuiteResult per claim, in CLAIMS order
    """
    settings = get_settings()
    seed = settings.seed if seed is None else seed
    workers = settings.workers if workers is None else workers
    claims = CLAIMS if claim == "all" else (claim,)

    results = []
    for name in claims:
        start = time.time()
        cases = build_cases(name, s, seed, trials)
        logger.info(f"Suite {name}: {len(cases)} cases on {s.name or '<custom>'} prefix {s.prefix}")
        bar = dict(total=len(cases), desc=name, disable=not progress, leave=False)
        if workers > 1 and len(cases) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                chunk = max(1, len(cases) // (4 * workers))
                outcomes = list(tqdm(pool.map(_run_case, cases, chunksize=chunk), **bar))
        else:
            outcomes = [_run_case(case) for case in tqdm(cases, **bar)]
        outcomes.sort(key=lambda c: c.key)
        result = SuiteResult(name, outcomes)
        level = logging.INFO if result.ok else logging.WARNING
        logger.log(level, f"Suite {name}: {'PASS' if result.ok else 'FAIL'} "
                          f"({len(result.failures)} failures, {time.time() - start:.1f}s)")
        results.append(result)
    return results
