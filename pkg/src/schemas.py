"""
External JSON forms and their converters.

Every file the CLI reads or writes goes through one of these models:

    Dyadic         {"m": "<decimal>", "e": int, "s": -1|0|1}
    Vector         {"entries": [[index, Dyadic | "text"], ...]}
    Schedule       {"phi": [...], "delta": [...], "tau": [...], "b": [...], "N": [...]}
    IndexSet       {"elements": [...], "horizon": H}
    ConditionReport, WitnessReport, SuiteReport (output only)

Vector coefficients may also be written as text ("-3/4", "0.25", "3*2^-80")
in hand-made input files; emitted files always use the Dyadic object form.
"""

from fractions import Fraction
from typing import Any, Dict, List, Literal, Optional, Tuple, Type, TypeVar, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .density import IndexSet
from .dyadic import Dyadic
from .errors import MalformedInputError
from .schedule import ConditionReport, Schedule
from .seqspace import NormValue, SparseVec

M = TypeVar("M", bound=BaseModel)


class DyadicModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    m: str = Field(..., pattern=r"^\d+$", description="Odd mantissa as a decimal string (0 for zero)")
    e: int
    s: Literal[-1, 0, 1]

    def to_domain(self) -> Dyadic:
        return Dyadic.from_json(self.model_dump())


class VectorModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    entries: List[Tuple[int, Union[DyadicModel, str]]] = Field(default_factory=list)

    def to_domain(self) -> SparseVec:
        mapping: Dict[int, Dyadic] = {}
        for k, c in self.entries:
            if k < 0:
                raise MalformedInputError(f"Vector index must be non-negative, got {k}")
            if k in mapping:
                raise MalformedInputError(f"Vector index {k} appears twice")
            mapping[k] = c.to_domain() if isinstance(c, DyadicModel) else Dyadic.parse(c)
        return SparseVec.from_mapping(mapping)


class ScheduleModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    phi: List[int]
    delta: List[int]
    tau: List[int]
    b: List[int]
    N: List[int]
    name: Optional[str] = Field(default=None, description="Informational only; ignored on load")

    def to_domain(self) -> Schedule:
        return Schedule(tuple(self.phi), tuple(self.delta), tuple(self.tau), tuple(self.b), tuple(self.N))


class IndexSetModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    elements: List[int]
    horizon: int = Field(..., ge=0)
    structure: Optional[List[Tuple[int, int]]] = None

    def to_domain(self) -> IndexSet:
        if self.structure is not None:
            return IndexSet(tuple(self.elements), self.horizon, tuple(self.structure))
        return IndexSet(tuple(sorted(set(self.elements))), self.horizon)


class ConditionModel(BaseModel):
    condition: str
    passed: bool
    first_violation: Optional[int] = None
    note: str = ""


class ConditionReportModel(BaseModel):
    ok: bool
    results: List[ConditionModel]


class InequalityModel(BaseModel):
    description: str
    lhs: Any
    relation: str
    rhs: Any
    holds: bool


class WitnessReportModel(BaseModel):
    claim: str
    ok: bool
    objects: Dict[str, Any]
    inequalities: List[InequalityModel]
    notes: List[str] = Field(default_factory=list)


class CaseModel(BaseModel):
    key: List[Any]
    ok: bool
    detail: str = ""


class SuiteModel(BaseModel):
    claim: str
    ok: bool
    cases: List[CaseModel]


class SuiteReportModel(BaseModel):
    ok: bool
    seed: int
    schedule: Optional[str] = None
    prefix: int
    suites: List[SuiteModel]


# ----------------------------------------------------------------------
# Validation helpers
# ----------------------------------------------------------------------

def _format_errors(error: ValidationError) -> str:
    lines = []
    for item in error.errors():
        location = ".".join(str(p) for p in item["loc"]) or "<root>"
        lines.append(f"  {location}: {item['msg']}")
    return "\n".join(lines)


def parse_model(model: Type[M], data: Any, what: str) -> M:
    """
    Validate a parsed document against a model.

    Raises:
        MalformedInputError: With one line per schema violation
    """
    try:
        return model.model_validate(data)
    except ValidationError as e:
        raise MalformedInputError(f"Invalid {what} document:\n{_format_errors(e)}") from e


def load_vector(data: Any) -> SparseVec:
    return parse_model(VectorModel, data, "vector").to_domain()


def load_schedule(data: Any) -> Schedule:
    return parse_model(ScheduleModel, data, "schedule").to_domain()


def load_index_set(data: Any) -> IndexSet:
    return parse_model(IndexSetModel, data, "index set").to_domain()


LOADERS = {
    "vector": load_vector,
    "schedule": load_schedule,
    "indexset": load_index_set,
}


# ----------------------------------------------------------------------
# Output converters
# ----------------------------------------------------------------------

def encode_value(value: Any) -> Any:
    """
    JSON form of a report value, keeping exactness.

    Dyadic scalars (and Fractions with a power-of-two denominator) use the
    Dyadic object form; other rationals become "a/b" strings.
    """
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Dyadic):
        return value.to_json()
    if isinstance(value, Fraction):
        if value.denominator & (value.denominator - 1) == 0:
            return Dyadic.from_fraction(value).to_json()
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, NormValue):
        return {"norm": str(value.kind), "value": value.value.to_json()}
    if isinstance(value, (SparseVec, IndexSet)):
        return value.to_json()
    if isinstance(value, dict):
        return {str(k): encode_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode_value(v) for v in value]
    raise MalformedInputError(f"Cannot encode value of type {type(value).__name__}")


def dump_schedule(s: Schedule) -> dict:
    model = ScheduleModel(
        phi=list(s.phi), delta=list(s.delta), tau=list(s.tau), b=list(s.b), N=list(s.multipliers), name=s.name
    )
    return model.model_dump(exclude_none=True)


def dump_conditions(report: ConditionReport) -> dict:
    return ConditionReportModel(
        ok=report.ok,
        results=[
            ConditionModel(condition=r.condition, passed=r.passed, first_violation=r.first_violation, note=r.note)
            for r in report.results
        ],
    ).model_dump()


def dump_witness(report) -> dict:
    return WitnessReportModel(
        claim=report.claim,
        ok=report.ok,
        objects={name: encode_value(value) for name, value in report.objects.items()},
        inequalities=[
            InequalityModel(
                description=i.description,
                lhs=encode_value(i.lhs),
                relation=i.relation,
                rhs=encode_value(i.rhs),
                holds=i.holds,
            )
            for i in report.inequalities
        ],
        notes=list(report.notes),
    ).model_dump()


def dump_suites(results, seed: int, s: Schedule) -> dict:
    return SuiteReportModel(
        ok=all(r.ok for r in results),
        seed=seed,
        schedule=s.name,
        prefix=s.prefix,
        suites=[
            SuiteModel(
                claim=r.claim,
                ok=r.ok,
                cases=[CaseModel(key=list(c.key), ok=c.ok, detail=c.detail) for c in r.cases],
            )
            for r in results
        ],
    ).model_dump()
