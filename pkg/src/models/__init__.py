"""Pydantic models for reports, parsed sessions and output records."""

from src.models.reports import (
    AxiomName,
    AxiomReport,
    AxiomVerdict,
    AxiomWitness,
    CorrespondenceCheck,
    CorrespondenceReport,
    DecompositionReport,
    Exactness,
    ExactnessKind,
    StandardizedRadicalReport,
    VerdictStatus,
)
from src.models.session import (
    Expr,
    ExprKind,
    OutputRecord,
    RecordStatus,
    RingSpec,
    Session,
    Statement,
    StatementKind,
)

__all__ = [
    "AxiomName",
    "AxiomReport",
    "AxiomVerdict",
    "AxiomWitness",
    "CorrespondenceCheck",
    "CorrespondenceReport",
    "DecompositionReport",
    "Exactness",
    "ExactnessKind",
    "Expr",
    "ExprKind",
    "OutputRecord",
    "RecordStatus",
    "RingSpec",
    "Session",
    "StandardizedRadicalReport",
    "Statement",
    "StatementKind",
    "VerdictStatus",
]
