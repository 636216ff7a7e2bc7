"""Pydantic models for parsed sessions and their output records."""

from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class ExprKind(str, Enum):
    NAME = "name"
    INT = "int"
    POLY = "poly"
    FRACTION = "fraction"
    IDEAL = "ideal"
    LIST = "list"
    CALL = "call"


class Expr(BaseModel):
    """Node of a parsed expression.

    ``value`` is the referenced name, the function name of a call, the
    integer literal or the polynomial source text; ``line`` and ``column``
    locate the first character in the session.
    """

    kind: ExprKind
    value: str = ""
    args: List["Expr"] = Field(default_factory=list)
    params: Dict[str, "Expr"] = Field(default_factory=dict)
    line: int = 0
    column: int = 0


Expr.model_rebuild()


class StatementKind(str, Enum):
    RING = "ring"
    IDEAL = "ideal"
    FRAC = "frac"
    CLOSURE = "closure"
    WITNESSES = "witnesses"
    PRINT = "print"
    CHECK_AXIOMS = "check axioms"
    CHECK_CORRESPONDENCE = "check correspondence"
    DECOMPOSE = "decompose"


DECLARATION_KINDS = (
    StatementKind.RING,
    StatementKind.IDEAL,
    StatementKind.FRAC,
    StatementKind.CLOSURE,
    StatementKind.WITNESSES,
)


class RingSpec(BaseModel):
    field: str = "QQ"
    modulus: Optional[int] = None
    variables: List[str]
    relations: List[Expr] = Field(default_factory=list)


class Statement(BaseModel):
    """One declaration or command, with its source text for echoing."""

    kind: StatementKind
    source: str
    line: int
    column: int
    name: Optional[str] = None
    ring: Optional[str] = None  # ring in scope when the statement was parsed
    expr: Optional[Expr] = None
    ring_spec: Optional[RingSpec] = None
    params: Dict[str, Expr] = Field(default_factory=dict)

    @property
    def is_declaration(self) -> bool:
        return self.kind in DECLARATION_KINDS


class Session(BaseModel):
    statements: List[Statement] = Field(default_factory=list)

    @property
    def declarations(self) -> List[Statement]:
        return [s for s in self.statements if s.is_declaration]

    @property
    def commands(self) -> List[Statement]:
        return [s for s in self.statements if not s.is_declaration]

    def __len__(self) -> int:
        return len(self.statements)


class RecordStatus(str, Enum):
    OK = "ok"
    FAILED = "failed"  # a check found a counterexample
    ERROR = "error"


class OutputRecord(BaseModel):
    """Result of one command, serialized one JSON object per command."""

    command: str
    status: RecordStatus = RecordStatus.OK
    exactness: Optional[str] = None
    payload: Dict[str, Any] = Field(default_factory=dict)
    witnesses: Optional[List[Dict[str, Any]]] = None
    seed: int

    def to_json_dict(self) -> Dict[str, Any]:
        data = self.model_dump(mode="json")
        if data["witnesses"] is None:
            del data["witnesses"]
        return data
