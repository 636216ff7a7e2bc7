"""Pydantic models for decomposition, axiom and correspondence reports."""

from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from src.config.settings import CorrespondenceConfig, SampleConfig


class ExactnessKind(str, Enum):
    EXACT = "exact"
    UNDER_APPROXIMATION = "under-approximation"
    SEMI_DECISION = "semi-decision"
    ASSUMED_PRIMARY = "assumed-primary"


class Exactness(BaseModel):
    """How much a result can be trusted."""

    kind: ExactnessKind = ExactnessKind.EXACT
    bound: Optional[int] = None
    components: List[int] = Field(default_factory=list)  # assumed-primary component indices

    @property
    def label(self) -> str:
        if self.kind in (ExactnessKind.UNDER_APPROXIMATION, ExactnessKind.SEMI_DECISION):
            return f"{self.kind.value}({self.bound})" if self.bound is not None else self.kind.value
        if self.kind == ExactnessKind.ASSUMED_PRIMARY:
            return f"assumed-primary components {self.components}"
        return self.kind.value

    @classmethod
    def exact(cls) -> "Exactness":
        return cls()


class ComponentReport(BaseModel):
    """Verification status of one primary component."""

    index: int
    primary: List[str]
    prime: List[str]
    lifted: List[str] = Field(default_factory=list)  # generators with the relations included
    contained: str  # q ⊆ p
    radical: str  # p = rad(q)
    prime_status: str
    primary_status: str


class DecompositionReport(BaseModel):
    """Annotated primary decomposition."""

    ideal: List[str]
    provenance: str
    intersection: str
    verified: bool
    components: List[ComponentReport] = Field(default_factory=list)


class ClassificationReport(BaseModel):
    """Zero-divisor classification of a primary component."""

    index: int
    primary: List[str]
    verdict: str  # all-zero-divisors | contains-regular
    associated_prime: Optional[List[str]] = None
    witness: Optional[str] = None


class StandardizedRadicalReport(BaseModel):
    ideal: List[str]
    result: List[str]
    decomposition: DecompositionReport
    classifications: List[ClassificationReport]
    exactness: Exactness


class AxiomName(str, Enum):
    EXTENSION = "extension"
    ORDER_PRESERVATION = "order-preservation"
    IDEMPOTENCE = "idempotence"
    WEAKLY_PRIME = "weakly-prime"
    STANDARD = "standard"


class VerdictStatus(str, Enum):
    PASSED = "passed"
    FAILED = "failed"
    NOT_REFUTED = "not-refuted"


class AxiomWitness(BaseModel):
    """Replayable counterexample to a closure axiom.

    Ideals are canonical generator strings; ``element`` is the polynomial
    that violates the containment and ``regular`` the non-zerodivisor w
    for the weakly-prime and standard axioms.
    """

    axiom: AxiomName
    ideals: List[List[str]]
    element: str
    regular: Optional[str] = None
    detail: str = ""


class AxiomVerdict(BaseModel):
    axiom: AxiomName
    status: VerdictStatus
    samples: int = 0
    witness: Optional[AxiomWitness] = None
    note: str = ""


class AxiomReport(BaseModel):
    """Per-axiom evidence for one closure operation."""

    closure: str
    ring: str
    config: SampleConfig
    witnesses: List[str] = Field(default_factory=list)
    verdicts: List[AxiomVerdict] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v.status != VerdictStatus.FAILED for v in self.verdicts)

    def verdict(self, axiom: AxiomName) -> AxiomVerdict:
        for v in self.verdicts:
            if v.axiom == axiom:
                return v
        raise KeyError(axiom.value)

    def failures(self) -> List[AxiomVerdict]:
        return [v for v in self.verdicts if v.status == VerdictStatus.FAILED]


class CorrespondenceCheck(BaseModel):
    name: str
    status: VerdictStatus
    samples: int = 0
    witness: Optional[Dict[str, Any]] = None


class CorrespondenceReport(BaseModel):
    """Round-trip, order and divisibility checks between a closure and σ_f of it."""

    closure: str
    ring: str
    config: CorrespondenceConfig
    checks: List[CorrespondenceCheck] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status != VerdictStatus.FAILED for c in self.checks)

    def check(self, name: str) -> CorrespondenceCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)
