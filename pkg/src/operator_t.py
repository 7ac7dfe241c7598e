"""
The operator T on finitely supported sequences.

On block n = [b_n, b_{n+1}) T is a forward weighted shift that wraps:

    k ∈ [b_n, b_n+δ_n)            T e_k = 2 e_{k+1}
    k ∈ [b_n+δ_n, b_{n+1}-1)      T e_k = e_{k+1}
    k = b_{n+1}-1, n ≥ 1          T e_k = 2^-τ_n e_{b_φ(n)} - 2^-δ_n e_{b_n}
    k = b_1-1                     T e_k = -e_0

Fast powers use two facts:
- every e_k with k < b_{n+1} has period 2(b_{n+1}-b_n), so exponents reduce
  modulo the block period;
- inside a block the traversal is closed form: after s steps from offset o
  the coefficient has gained 2^#([o, o+s) ∩ [0, δ_n)).
A wrap spawns one term at b_φ(n) (a lower block, φ(n) < n) and one at b_n
with strictly smaller remaining exponent, so an explicit work queue ordered
by (block, remaining exponent) descending terminates and lets equal terms
merge before they are expanded.

Example:
    >>> T = OperatorT(small_preset("small-2", 5))
    >>> T.apply_power(SparseVec.basis(1454), 4018).render()
    '4*e_0 - 2^-78*e_1376'
"""

import heapq
import logging
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Tuple

from .config import get_settings
from .dyadic import ONE, ZERO, Dyadic, pow2
from .errors import MalformedInputError, ResourceLimitError, ScheduleConditionError
from .schedule import Schedule, block_of, validate
from .seqspace import L1, NormKind, NormValue, SparseVec, accumulate, norm, project

logger = logging.getLogger(__name__)

TWO = Dyadic.of(2)
MINUS_ONE = Dyadic.of(-1)


class OperatorT:
    """
    T for a validated schedule.

    Args:
        schedule: Schedule passing conditions (1)-(6)
        support_cap: Max support of intermediate vectors (default from settings)
        memo_size: Max entries of the basis-power memo (default from settings)

    Raises:
        ScheduleConditionError: If the schedule fails validate()
    """

    def __init__(self, schedule: Schedule, support_cap: Optional[int] = None, memo_size: Optional[int] = None):
        report = validate(schedule)
        if not report.ok:
            raise ScheduleConditionError(
                f"Schedule {schedule.name or '<custom>'} does not satisfy the conditions of the construction:\n"
                f"{report.summary()}"
            )
        settings = get_settings()
        self.schedule = schedule
        self.support_cap = support_cap if support_cap is not None else settings.support_cap
        self.memo_size = memo_size if memo_size is not None else settings.memo_size
        # per-instance memo on (basis index, exponent mod period)
        self._basis_power = lru_cache(maxsize=self.memo_size)(self._basis_power_uncached)
        logger.debug(
            f"OperatorT ready: schedule={schedule.name or '<custom>'} prefix={schedule.prefix} "
            f"support_cap={self.support_cap} memo_size={self.memo_size}"
        )

    # ------------------------------------------------------------------
    # Single step
    # ------------------------------------------------------------------

    def step_image(self, k: int) -> List[Tuple[int, Dyadic]]:
        """T e_k as (index, coefficient) terms"""
        s = self.schedule
        n = block_of(k, s)
        lo, hi = s.b[n], s.b[n + 1]
        if k < hi - 1:
            return [(k + 1, TWO if k - lo < s.delta[n] else ONE)]
        if n == 0:
            return [(0, MINUS_ONE)]
        return [
            (s.b[s.phi[n]], pow2(-s.tau[n - 1])),
            (lo, -pow2(-s.delta[n])),
        ]

    def apply(self, v: SparseVec) -> SparseVec:
        """
        One application of T.

        Raises:
            PrefixExceededError: If supp(v) reaches beyond b_{prefix+1}
        """
        acc: Dict[int, Dyadic] = {}
        for k, c in v:
            for target, w in self.step_image(k):
                accumulate(acc, target, c * w)
        return SparseVec(tuple(sorted(acc.items())))

    def block_step(self, v: SparseVec, n: int) -> SparseVec:
        """P_n T P_n v; block n evolves on its own since T never maps lower blocks upward"""
        return project(self.apply(project(v, n, self.schedule)), n, self.schedule)

    # ------------------------------------------------------------------
    # Powers
    # ------------------------------------------------------------------

    def apply_power_naive(self, v: SparseVec, j: int) -> SparseVec:
        """j-fold application, the reference for apply_power"""
        if j < 0:
            raise MalformedInputError(f"Exponent must be non-negative, got {j}")
        for _ in range(j):
            v = self.apply(v)
        return v

    def apply_power(self, v: SparseVec, j: int) -> SparseVec:
        """
        T^j v for arbitrary-precision j ≥ 0, via period reduction per basis entry.

        Raises:
            PrefixExceededError: If supp(v) reaches beyond the prefix
            ResourceLimitError: If an intermediate support exceeds support_cap
        """
        if j < 0:
            raise MalformedInputError(f"Exponent must be non-negative, got {j}")
        acc: Dict[int, Dyadic] = {}
        for k, c in v:
            r = j % self.schedule.period(block_of(k, self.schedule))
            for target, w in self._basis_power(k, r):
                accumulate(acc, target, c * w)
        if len(acc) > self.support_cap:
            raise ResourceLimitError(f"Support {len(acc)} exceeds LINDYN_SUPPORT_CAP={self.support_cap}")
        return SparseVec(tuple(sorted(acc.items())))

    def cache_info(self):
        return self._basis_power.cache_info()

    def cache_clear(self) -> None:
        self._basis_power.cache_clear()

    def _basis_power_uncached(self, k: int, r: int) -> Tuple[Tuple[int, Dyadic], ...]:
        """T^r e_k for r already reduced modulo the period of k's block"""
        s = self.schedule
        n = block_of(k, s)
        # pending terms keyed (block, offset, remaining) → coefficient
        pending: Dict[Tuple[int, int, int], Dyadic] = {(n, k - s.b[n], r): ONE}
        heap = [(-n, -r, k - s.b[n])]
        result: Dict[int, Dyadic] = {}
        wraps = 0

        def push(block: int, offset: int, remaining: int, coeff: Dyadic) -> None:
            remaining %= s.period(block)
            key = (block, offset, remaining)
            if key in pending:
                total = pending[key] + coeff
                if total.is_zero():
                    del pending[key]  # heap entry is skipped when popped
                else:
                    pending[key] = total
            else:
                pending[key] = coeff
                heapq.heappush(heap, (-block, -remaining, offset))

        while heap:
            neg_block, neg_rem, offset = heapq.heappop(heap)
            block, remaining = -neg_block, -neg_rem
            coeff = pending.pop((block, offset, remaining), None)
            if coeff is None:
                continue
            length = s.b[block + 1] - s.b[block]
            to_wrap = length - 1 - offset
            if remaining <= to_wrap:
                gain = s.doubling_count(block, offset, offset + remaining)
                accumulate(result, s.b[block] + offset + remaining, coeff.shift(gain))
                continue
            # travel to b_{n+1}-1, then wrap
            c = coeff.shift(s.doubling_count(block, offset, length - 1))
            left = remaining - to_wrap - 1
            wraps += 1
            if block == 0:
                push(0, 0, left, -c)
            else:
                push(s.phi[block], 0, left, c.shift(-s.tau[block - 1]))
                push(block, 0, left, -c.shift(-s.delta[block]))
            if len(result) + len(pending) > self.support_cap:
                raise ResourceLimitError(
                    f"T^{r} e_{k}: intermediate support {len(result) + len(pending)} exceeds "
                    f"LINDYN_SUPPORT_CAP={self.support_cap}.\n"
                    f"Raise the cap or use a shorter exponent."
                )

        logger.debug(f"T^{r} e_{k}: {wraps} wraps expanded, support {len(result)}")
        return tuple(sorted(result.items()))

    # ------------------------------------------------------------------
    # Periods and orbits
    # ------------------------------------------------------------------

    def period_of(self, v: SparseVec) -> int:
        """2(b_{n+1}-b_n) for the top block n of supp(v); 1 for the zero vector"""
        n = v.top_block(self.schedule)
        return 1 if n is None else self.schedule.period(n)

    def orbit(self, v: SparseVec, steps: int) -> Iterator[Tuple[int, SparseVec]]:
        """Yield (j, T^j v) for j = 0..steps"""
        current = v
        for j in range(steps + 1):
            yield j, current
            if j < steps:
                current = self.apply(current)

    def orbit_norms(self, v: SparseVec, steps: int, kind: NormKind = L1) -> List[NormValue]:
        """norm(T^j v) for j = 0..steps"""
        return [norm(w, kind) for _, w in self.orbit(v, steps)]

    def basis_norm_max(self, limit: Optional[int] = None) -> Tuple[Dyadic, int]:
        """
        max_k ‖T e_k‖₁ over k < limit and the first maximizing k.

        Returns:
            (maximum, argmax)
        """
        limit = self.schedule.limit if limit is None else limit
        best, arg = ZERO, 0
        for k in range(limit):
            value = norm(self.apply(SparseVec.basis(k))).value
            if value > best:
                best, arg = value, k
        return best, arg

    def wrap_identity(self, n: int) -> bool:
        """
        Check T^{b_{n+1}-b_n} e_{b_n} = 2^{δ_n-τ_n} e_{b_φ(n)} - e_{b_n} (-e_0 for n = 0).
        """
        s = self.schedule
        start = SparseVec.basis(s.b[n])
        image = self.apply_power(start, s.block_length(n))
        if n == 0:
            expected = -start
        else:
            expected = SparseVec.basis(s.b[s.phi[n]], pow2(s.delta[n] - s.tau[n - 1])) - start
        return image == expected


@lru_cache(maxsize=8)
def operator_for(schedule: Schedule) -> OperatorT:
    """Shared OperatorT per schedule so verify calls reuse one memo"""
    return OperatorT(schedule)
