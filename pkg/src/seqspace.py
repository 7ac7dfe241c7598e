"""
Finitely supported sequences with exact dyadic coefficients.

SparseVec is an immutable value: a sorted tuple of (index, coefficient)
pairs with no zero coefficients. Norms are exact; the ℓᵖ norm is carried as
its p-th power inside a NormValue, and NormValues of the same kind compare
exactly without ever taking a root.

Block helpers follow the schedule's partition of indices:
    project(v, n, s)     P_n v, the restriction to [b_n, b_{n+1})
    weighted_X(v, n, s)  X_n, block-n coordinates times 2^max(0, δ_n-(k-b_n))
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

from .dyadic import ONE, ZERO, Dyadic, Number, dyadic_sum
from .errors import MalformedInputError
from .schedule import Schedule, block_of


@dataclass(frozen=True)
class NormKind:
    """ℓ¹, ℓᵖ (p ≥ 1) or sup"""

    tag: str
    p: int = 1

    def __post_init__(self):
        if self.tag not in ("l1", "lp", "sup"):
            raise MalformedInputError(f"Unknown norm '{self.tag}'. Valid: l1, lp, sup")
        if self.tag == "lp" and (not isinstance(self.p, int) or self.p < 1):
            raise MalformedInputError(f"lp norm needs an integer p ≥ 1, got {self.p}")
        if self.tag != "lp" and self.p != 1:
            raise MalformedInputError(f"Exponent p only applies to lp norms, got {self.tag} with p={self.p}")

    @classmethod
    def parse(cls, text: str) -> "NormKind":
        """Accepts l1, sup, lp<p> or l<p> (e.g. lp3, l2)"""
        key = text.strip().lower()
        if key in ("l1", "sup"):
            return cls(key)
        digits = key[2:] if key.startswith("lp") else key[1:] if key.startswith("l") else ""
        if digits.isdigit():
            p = int(digits)
            return cls("l1") if p == 1 else cls("lp", p)
        raise MalformedInputError(f"Cannot parse norm '{text}'. Use l1, sup, lp<p> (e.g. lp2)")

    @property
    def exponent(self) -> int:
        """Power the stored norm value is raised to"""
        return self.p if self.tag == "lp" else 1

    def __str__(self) -> str:
        return f"lp{self.p}" if self.tag == "lp" else self.tag


L1 = NormKind("l1")
SUP = NormKind("sup")


@dataclass(frozen=True)
class NormValue:
    """Exact norm; for lp the stored value is ‖v‖_p^p"""

    kind: NormKind
    value: Dyadic

    def scaled(self, c: Number) -> "NormValue":
        """The NormValue of c·‖v‖ (c ≥ 0), raising c to p for lp"""
        c = Dyadic.coerce(c)
        if c < 0:
            raise MalformedInputError(f"Norm scale must be non-negative, got {c}")
        return NormValue(self.kind, self.value * c ** self.kind.exponent)

    def _check(self, other) -> "NormValue":
        if not isinstance(other, NormValue):
            raise TypeError(f"Cannot compare NormValue with {type(other).__name__}")
        if other.kind != self.kind:
            raise MalformedInputError(f"Cannot compare {self.kind} norm with {other.kind} norm")
        return other

    def __lt__(self, other: "NormValue") -> bool:
        return self.value < self._check(other).value

    def __le__(self, other: "NormValue") -> bool:
        return self.value <= self._check(other).value

    def __gt__(self, other: "NormValue") -> bool:
        return self.value > self._check(other).value

    def __ge__(self, other: "NormValue") -> bool:
        return self.value >= self._check(other).value

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def render(self) -> str:
        if self.kind.tag == "lp":
            return f"({self.value.render()})^(1/{self.kind.p})"
        return self.value.render()

    def __str__(self) -> str:
        return self.render()


def accumulate(acc: Dict[int, Dyadic], k: int, c: Dyadic) -> None:
    total = acc.get(k, ZERO) + c
    if total.is_zero():
        acc.pop(k, None)
    else:
        acc[k] = total


@dataclass(frozen=True)
class SparseVec:
    """Finitely supported sequence Σ x_k e_k"""

    items: Tuple[Tuple[int, Dyadic], ...] = ()

    def __post_init__(self):
        previous = -1
        for k, c in self.items:
            if not isinstance(k, int) or k <= previous:
                raise MalformedInputError(f"SparseVec indices must be increasing non-negative integers, got {k}")
            if not isinstance(c, Dyadic) or c.is_zero():
                raise MalformedInputError(f"SparseVec coefficient at {k} must be a non-zero Dyadic, got {c!r}")
            previous = k

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, Number]) -> "SparseVec":
        """Build from index → coefficient, dropping zeros"""
        items = []
        for k in sorted(mapping):
            if int(k) < 0:
                raise MalformedInputError(f"Index must be non-negative, got {k}")
            c = Dyadic.coerce(mapping[k])
            if not c.is_zero():
                items.append((int(k), c))
        return cls(tuple(items))

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[int, Dyadic]]) -> "SparseVec":
        """Sum possibly repeated (index, coefficient) terms"""
        acc: Dict[int, Dyadic] = {}
        for k, c in terms:
            accumulate(acc, k, c)
        return cls(tuple(sorted(acc.items())))

    @classmethod
    def basis(cls, k: int, coeff: Number = ONE) -> "SparseVec":
        """coeff · e_k"""
        return cls.from_mapping({k: coeff})

    @classmethod
    def zero(cls) -> "SparseVec":
        return cls(())

    # ------------------------------------------------------------------
    # Views
    # ------------------------------------------------------------------

    @cached_property
    def entries(self) -> Dict[int, Dyadic]:
        return dict(self.items)

    def coeff(self, k: int) -> Dyadic:
        return self.entries.get(k, ZERO)

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(k for k, _ in self.items)

    @property
    def max_index(self) -> Optional[int]:
        return self.items[-1][0] if self.items else None

    def is_zero(self) -> bool:
        return not self.items

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[Tuple[int, Dyadic]]:
        return iter(self.items)

    def __bool__(self) -> bool:
        return bool(self.items)

    def restrict(self, lo: int, hi: int) -> "SparseVec":
        """Entries with lo ≤ k < hi"""
        return SparseVec(tuple((k, c) for k, c in self.items if lo <= k < hi))

    def top_block(self, s: Schedule) -> Optional[int]:
        """Largest block meeting the support (None for the zero vector)"""
        return None if self.max_index is None else block_of(self.max_index, s)

    # ------------------------------------------------------------------
    # Linear structure
    # ------------------------------------------------------------------

    def __add__(self, other: "SparseVec") -> "SparseVec":
        if not isinstance(other, SparseVec):
            return NotImplemented
        acc = dict(self.items)
        for k, c in other.items:
            accumulate(acc, k, c)
        return SparseVec(tuple(sorted(acc.items())))

    def __neg__(self) -> "SparseVec":
        return SparseVec(tuple((k, -c) for k, c in self.items))

    def __sub__(self, other: "SparseVec") -> "SparseVec":
        if not isinstance(other, SparseVec):
            return NotImplemented
        return self + (-other)

    def scale(self, c: Number) -> "SparseVec":
        c = Dyadic.coerce(c)
        if c.is_zero():
            return SparseVec.zero()
        return SparseVec(tuple((k, c * x) for k, x in self.items))

    def __rmul__(self, c: Number) -> "SparseVec":
        return self.scale(c)

    # ------------------------------------------------------------------
    # Serialization / display
    # ------------------------------------------------------------------

    def to_json(self) -> dict:
        return {"entries": [[k, c.to_json()] for k, c in self.items]}

    def render(self) -> str:
        """Human-readable form, e.g. "4*e_0 - 2^-78*e_1376" """
        if not self.items:
            return "0"
        parts = []
        for i, (k, c) in enumerate(self.items):
            mag = abs(c)
            if mag == ONE:
                term = f"e_{k}"
            elif mag.mantissa == 1 and mag.exponent < 0:
                term = f"2^{mag.exponent}*e_{k}"
            else:
                term = f"{mag.render()}*e_{k}"
            if i == 0:
                parts.append(f"-{term}" if c.sign < 0 else term)
            else:
                parts.append(f"{'-' if c.sign < 0 else '+'} {term}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"SparseVec({self.render()})"


def norm(v: SparseVec, kind: NormKind = L1) -> NormValue:
    """
    Exact norm of v.

    l1 → Σ|x_k|, sup → max|x_k|, lp → Σ|x_k|^p (stored as the p-th power).

    Example:
        >>> norm(SparseVec.from_mapping({0: 4, 1376: Dyadic.of(-1, -78)}), SUP).value
        Dyadic(4)
    """
    if kind.tag == "l1":
        value = dyadic_sum(abs(c) for _, c in v)
    elif kind.tag == "sup":
        value = max((abs(c) for _, c in v), default=ZERO)
    else:
        value = dyadic_sum(abs(c) ** kind.p for _, c in v)
    return NormValue(kind, value)


def project(v: SparseVec, n: int, s: Schedule) -> SparseVec:
    """P_n v: restriction of v to [b_n, b_{n+1})"""
    lo, hi = s.block_bounds(n)
    return v.restrict(lo, hi)


def weighted_X(v: SparseVec, n: int, s: Schedule) -> SparseVec:
    """
    X_n = Σ_{k ∈ block n} 2^max(0, δ_n-(k-b_n)) x_k e_k.

    Example:
        >>> weighted_X(SparseVec.basis(32), 1, small_preset("small-2", 2))
        SparseVec(16384*e_32)
    """
    lo, hi = s.block_bounds(n)
    d = s.delta[n]
    return SparseVec(tuple(
        (k, c.shift(max(0, d - (k - lo))))
        for k, c in v.items if lo <= k < hi
    ))


def block_decomposition(v: SparseVec, s: Schedule) -> Dict[int, SparseVec]:
    """Non-zero block parts {n: P_n v}"""
    parts: Dict[int, list] = {}
    for k, c in v:
        parts.setdefault(block_of(k, s), []).append((k, c))
    return {n: SparseVec(tuple(items)) for n, items in parts.items()}


VectorLike = Union[SparseVec, Mapping[int, Number]]


def as_vector(value: VectorLike) -> SparseVec:
    """Accept a SparseVec or a plain index → coefficient mapping"""
    if isinstance(value, SparseVec):
        return value
    return SparseVec.from_mapping(value)
