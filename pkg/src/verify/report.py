"""
Result types of the claim checkers.

An Inequality stores both sides exactly and derives `holds` from them, so a
report can never claim more than its numbers show.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Tuple, Union

from ..dyadic import Dyadic
from ..errors import MalformedInputError
from ..seqspace import NormValue, SparseVec

Exact = Union[Dyadic, Fraction, int, NormValue]

RELATIONS = ("<", "<=", "==", ">=", ">")


def _three_way(lhs: Exact, rhs: Exact) -> int:
    if isinstance(lhs, NormValue) or isinstance(rhs, NormValue):
        if not (isinstance(lhs, NormValue) and isinstance(rhs, NormValue)):
            raise MalformedInputError("A norm can only be compared with a norm of the same kind")
        return (lhs > rhs) - (lhs < rhs)
    if isinstance(lhs, Dyadic):
        return lhs.compare(rhs).value
    if isinstance(rhs, Dyadic):
        return -rhs.compare(lhs).value
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    return (lhs > rhs) - (lhs < rhs)


def render_exact(value: Any) -> str:
    """Exact text form of any report value"""
    if isinstance(value, (Dyadic, NormValue, SparseVec)):
        return value.render()
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(render_exact(v) for v in value) + "]"
    return str(value)


@dataclass(frozen=True)
class Inequality:
    """lhs <relation> rhs, evaluated exactly"""

    description: str
    lhs: Exact
    relation: str
    rhs: Exact

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise MalformedInputError(f"Unknown relation '{self.relation}'. Valid: {', '.join(RELATIONS)}")

    @property
    def holds(self) -> bool:
        c = _three_way(self.lhs, self.rhs)
        return {
            "<": c < 0,
            "<=": c <= 0,
            "==": c == 0,
            ">=": c >= 0,
            ">": c > 0,
        }[self.relation]

    def render(self) -> str:
        mark = "ok" if self.holds else "FAILED"
        return f"[{mark}] {self.description}: {render_exact(self.lhs)} {self.relation} {render_exact(self.rhs)}"


@dataclass(frozen=True)
class WitnessReport:
    """
    Constructed objects of a claim plus the inequalities they satisfy.

    objects keeps insertion order (it is what the JSON and the summary show).
    """

    claim: str
    objects: Dict[str, Any] = field(default_factory=dict)
    inequalities: Tuple[Inequality, ...] = ()
    notes: Tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return all(i.holds for i in self.inequalities)

    def __getitem__(self, name: str) -> Any:
        return self.objects[name]

    def failed(self) -> Tuple[Inequality, ...]:
        return tuple(i for i in self.inequalities if not i.holds)

    def summary(self) -> str:
        lines = [f"{self.claim}: {'PASS' if self.ok else 'FAIL'}"]
        for name, value in self.objects.items():
            lines.append(f"  {name} = {render_exact(value)}")
        for inequality in self.inequalities:
            lines.append(f"  {inequality.render()}")
        for note in self.notes:
            lines.append(f"  note: {note}")
        return "\n".join(lines)
