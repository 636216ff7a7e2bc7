"""Executes parsed sessions and produces one output record per command."""

import logging
from dataclasses import asdict
from typing import Any, Dict, List, Optional, Union

from src.algebra.fields import QQ, prime_field
from src.algebra.monomial import monomial_primary_decomposition
from src.algebra.poly import GREVLEX, Polynomial, PolynomialRing
from src.algebra.rings import Ideal, PresentedRing, RingElement, is_regular, radical_member
from src.closures.axioms import check_axioms, replay_witness
from src.closures.closure import (
    ClosureOp,
    WitnessSet,
    construct_builtin,
    finitize,
    standardize_witnessed,
)
from src.closures.semistar import (
    FractionalIdeal,
    RingFraction,
    b_member,
    check_correspondence,
    pi_member,
)
from src.closures.stdrad import (
    StandardizedRadicalResult,
    standardized_radical_report,
    verify_decomposition,
)
from src.config.settings import Settings, get_settings
from src.errors import (
    ArityError,
    ClosureEngineError,
    UndefinedNameError,
    UnsupportedComputationError,
)
from src.models.reports import Exactness, ExactnessKind, VerdictStatus
from src.models.session import (
    Expr,
    ExprKind,
    OutputRecord,
    RecordStatus,
    Session,
    Statement,
    StatementKind,
)
from src.parsers.poly_parser import PolynomialParser

logger = logging.getLogger(__name__)

Value = Union[PresentedRing, Ideal, FractionalIdeal, ClosureOp, WitnessSet]

EXECUTION_ERRORS = (ClosureEngineError, ValueError, ZeroDivisionError)


class SessionExecutor:
    """Runs the statements of a session in order against a name environment."""

    def __init__(self, settings: Optional[Settings] = None):
        """
        Initialize the executor.

        Args:
            settings: Engine settings; defaults to the cached settings
        """
        self.settings = settings or get_settings()
        self.values: Dict[str, Value] = {}
        self.failed: Dict[str, str] = {}  # declarations that raised, by name
        self.notes: List[Exactness] = []
        self.statistics = {
            "declarations": 0,
            "commands": 0,
            "errors": 0,
            "failed_checks": 0,
        }

    def execute(self, session: Session) -> List[OutputRecord]:
        """
        Execute every statement; errors are recorded and execution continues
        unless ``fail_fast`` is set.

        Returns:
            Output records of the commands and of failed declarations
        """
        records: List[OutputRecord] = []
        for statement in session.statements:
            record = self.run_statement(statement)
            if record is None:
                continue
            records.append(record)
            if record.status == RecordStatus.ERROR and self.settings.fail_fast:
                logger.info(f"stopping after error at line {statement.line} (fail-fast)")
                break
        return records

    def run_statement(self, statement: Statement) -> Optional[OutputRecord]:
        self.notes = []
        logger.info(f"line {statement.line}: {statement.source}")
        try:
            if statement.is_declaration:
                self._declare(statement)
                self.statistics["declarations"] += 1
                return None
            self.statistics["commands"] += 1
            return self._command(statement)
        except EXECUTION_ERRORS as e:
            self.statistics["errors"] += 1
            if statement.is_declaration and statement.name:
                self.failed[statement.name] = str(e)
            logger.debug(f"line {statement.line} failed", exc_info=True)
            return self._record(
                statement,
                {"error": type(e).__name__, "message": str(e)},
                status=RecordStatus.ERROR,
                exactness=None,
            )

    def get_statistics(self) -> Dict[str, Any]:
        return dict(self.statistics)

    # Records

    def _record(
        self,
        statement: Statement,
        payload: Dict[str, Any],
        status: RecordStatus = RecordStatus.OK,
        exactness: Optional[str] = "",
        witnesses: Optional[List[Dict[str, Any]]] = None,
    ) -> OutputRecord:
        if exactness == "":
            exactness = self._exactness_label()
        return OutputRecord(
            command=statement.source,
            status=status,
            exactness=exactness,
            payload=payload,
            witnesses=witnesses,
            seed=self.settings.seed,
        )

    def _note(self, exactness: Exactness) -> None:
        if exactness.kind != ExactnessKind.EXACT:
            self.notes.append(exactness)

    def _exactness_label(self) -> str:
        labels: List[str] = []
        for note in self.notes:
            if note.label not in labels:
                labels.append(note.label)
        return "; ".join(labels) if labels else ExactnessKind.EXACT.value

    # Name environment

    def _lookup(self, expr: Expr) -> Value:
        if expr.value in self.failed:
            raise UndefinedNameError(
                f"{expr.value!r} is undefined because its declaration failed: "
                f"{self.failed[expr.value]}",
                expr.line,
                expr.column,
            )
        if expr.value not in self.values:
            raise UndefinedNameError(f"undefined name {expr.value!r}", expr.line, expr.column)
        return self.values[expr.value]

    def _ring(self, statement: Statement) -> PresentedRing:
        if statement.ring is None:
            raise UndefinedNameError("no ring has been declared", statement.line, statement.column)
        ring = self._lookup(Expr(kind=ExprKind.NAME, value=statement.ring, line=statement.line))
        assert isinstance(ring, PresentedRing)
        return ring

    def _declare(self, statement: Statement) -> None:
        assert statement.name is not None
        if statement.kind == StatementKind.RING:
            value: Value = self._ring_value(statement)
        else:
            ring = self._ring(statement)
            assert statement.expr is not None
            if statement.kind == StatementKind.IDEAL:
                value = self._ideal(statement.expr, ring)
            elif statement.kind == StatementKind.FRAC:
                value = self._fractional(statement.expr, ring)
            elif statement.kind == StatementKind.CLOSURE:
                value = self._closure(statement.expr, ring)
            else:
                value = self._witnesses(statement.expr, ring, closed="closed" in statement.params)
        self.values[statement.name] = value
        logger.debug(f"{statement.name} = {value}")

    def _ring_value(self, statement: Statement) -> PresentedRing:
        spec = statement.ring_spec
        assert spec is not None and statement.name is not None
        field = QQ if spec.field == "QQ" else prime_field(spec.modulus or 0)
        base = PolynomialRing(field, tuple(spec.variables), GREVLEX)
        relations = [self._parse_poly(expr, base) for expr in spec.relations]
        return PresentedRing(base, relations, statement.name)

    # Values

    def _parse_poly(self, expr: Expr, base: PolynomialRing) -> Polynomial:
        return PolynomialParser(base, expr.line, expr.column - 1).parse(expr.value)

    def _element(self, expr: Expr, ring: PresentedRing) -> RingElement:
        if expr.kind != ExprKind.POLY:
            raise ArityError("expected a polynomial", expr.line, expr.column)
        return ring.element(self._parse_poly(expr, ring.base))

    def _fraction(self, expr: Expr, ring: PresentedRing) -> RingFraction:
        if expr.kind == ExprKind.FRACTION:
            numerator, denominator = expr.args
            return RingFraction.build(
                ring, self._element(numerator, ring), self._element(denominator, ring)
            )
        return RingFraction.build(ring, self._element(expr, ring))

    def _ideal(self, expr: Expr, ring: PresentedRing) -> Ideal:
        if expr.kind == ExprKind.NAME:
            value = self._lookup(expr)
            if not isinstance(value, Ideal):
                raise ArityError(f"{expr.value!r} is not an ideal", expr.line, expr.column)
            ring.check_same(value.ring)
            return value
        if expr.kind == ExprKind.IDEAL:
            return ring.ideal([self._element(g, ring) for g in expr.args])
        if expr.kind != ExprKind.CALL:
            raise ArityError("expected an ideal", expr.line, expr.column)

        name = expr.value
        if name == "closure":
            c = self._closure(expr.args[0], ring)
            ideal = self._ideal(expr.args[1], ring)
            result = c.apply(ideal)
            self._note(self._closure_exactness(c, ideal, result))
            return result
        if name == "standardized_radical":
            return self._standardized_radical(expr, ring).result
        first = self._ideal(expr.args[0], ring)
        if name == "radical":
            return first.radical()
        if name == "power":
            return first.power(int(expr.args[1].value))
        if name == "colon":
            second = expr.args[1]
            if second.kind == ExprKind.POLY:
                return first.colon(self._element(second, ring))
            return first.colon_ideal(self._ideal(second, ring))
        other = self._ideal(expr.args[1], ring)
        if name == "sum":
            return first.sum(other)
        if name == "product":
            return first.product(other)
        return first.intersect(other)

    def _closure_exactness(self, c: ClosureOp, ideal: Ideal, result: Ideal) -> Exactness:
        """Exactness of c applied to ideal; a witnessed standardization of the
        radical is exact when it meets the standardized radical."""
        exactness = c.is_exact_for(ideal)
        base = c.standardizes
        if exactness.kind == ExactnessKind.EXACT or base is None or base.name != "radical":
            return exactness
        try:
            reference = standardized_radical_report(ideal)
        except (UnsupportedComputationError, ValueError):
            return exactness
        if reference.exactness.kind == ExactnessKind.EXACT and reference.result == result:
            logger.info(f"{c.name} agrees with the standardized radical on {ideal}")
            return Exactness.exact()
        return exactness

    def _standardized_radical(self, expr: Expr, ring: PresentedRing) -> StandardizedRadicalResult:
        ideal = self._ideal(expr.args[0], ring)
        decomposition = None
        if "decomposition" in expr.params:
            components = [
                (self._ideal(pair.args[0], ring), self._ideal(pair.args[1], ring))
                for pair in expr.params["decomposition"].args
            ]
            decomposition = verify_decomposition(ideal, components)
        result = standardized_radical_report(ideal, decomposition)
        self._note(result.exactness)
        return result

    def _fractional(self, expr: Expr, ring: PresentedRing) -> FractionalIdeal:
        if expr.kind == ExprKind.NAME:
            value = self._lookup(expr)
            if isinstance(value, Ideal):
                return FractionalIdeal.build(value)
            if not isinstance(value, FractionalIdeal):
                raise ArityError(f"{expr.value!r} is not a fractional ideal", expr.line, expr.column)
            ring.check_same(value.ring)
            return value
        if expr.kind == ExprKind.CALL and expr.value == "frac":
            numerator = self._ideal(expr.args[0], ring)
            if len(expr.args) == 1:
                return FractionalIdeal.build(numerator)
            return FractionalIdeal.build(numerator, self._element(expr.args[1], ring))
        return FractionalIdeal.build(self._ideal(expr, ring))

    def _closure(self, expr: Expr, ring: PresentedRing) -> ClosureOp:
        if expr.kind == ExprKind.NAME:
            value = self._lookup(expr)
            if not isinstance(value, ClosureOp):
                raise ArityError(f"{expr.value!r} is not a closure", expr.line, expr.column)
            ring.check_same(value.ring)
            return value
        if expr.value == "standardize":
            inner = self._closure(expr.args[0], ring)
            if "witnesses" in expr.params:
                witnesses = self._witnesses(expr.params["witnesses"], ring)
            else:
                witnesses = WitnessSet.default_pool(ring, self.settings.witnesses)
            return standardize_witnessed(inner, witnesses)
        if expr.value == "finitize":
            return finitize(self._closure(expr.args[0], ring))
        e_max = int(expr.params["e_max"].value) if "e_max" in expr.params else None
        return construct_builtin(expr.value, ring, e_max)

    def _witnesses(self, expr: Expr, ring: PresentedRing, closed: bool = False) -> WitnessSet:
        if expr.kind == ExprKind.NAME:
            value = self._lookup(expr)
            if not isinstance(value, WitnessSet):
                raise ArityError(f"{expr.value!r} is not a witness set", expr.line, expr.column)
            ring.check_same(value.ring)
            return value
        elements = [self._element(e, ring) for e in expr.args]
        return WitnessSet.build(ring, elements, closed_under_products=closed)

    # Commands

    def _command(self, statement: Statement) -> OutputRecord:
        ring = self._ring(statement)
        expr = statement.expr
        assert expr is not None
        if statement.kind == StatementKind.PRINT:
            return self._record(statement, self._print(expr, ring))
        if statement.kind == StatementKind.DECOMPOSE:
            ideal = self._ideal(expr, ring)
            if not ideal.is_monomial():
                raise UnsupportedComputationError(
                    f"{ideal} is not monomial; verify a decomposition with "
                    "`standardized_radical(I) with decomposition [...]` instead"
                )
            report = monomial_primary_decomposition(ideal).report()
            return self._record(statement, report.model_dump(mode="json"))
        if statement.kind == StatementKind.CHECK_AXIOMS:
            return self._check_axioms(statement, self._closure(expr, ring), ring)
        return self._check_correspondence(statement, self._closure(expr, ring), ring)

    def _print(self, expr: Expr, ring: PresentedRing) -> Dict[str, Any]:
        if expr.kind == ExprKind.NAME:
            return self._describe(self._lookup(expr))
        if expr.kind == ExprKind.CALL and expr.value == "standardized_radical":
            result = self._standardized_radical(expr, ring)
            payload = {"generators": result.result.generator_strings()}
            payload.update(result.report().model_dump(mode="json", exclude={"exactness"}))
            return payload
        if expr.kind == ExprKind.CALL and expr.value == "member":
            return {"member": self._member(expr, ring)}
        if expr.kind == ExprKind.CALL and expr.value == "radical_member":
            f = self._element(expr.args[0], ring)
            return {"member": radical_member(f, self._ideal(expr.args[1], ring))}
        if expr.kind == ExprKind.CALL and expr.value == "is_regular":
            return {"regular": is_regular(self._element(expr.args[0], ring))}
        if expr.kind == ExprKind.CALL and expr.value == "compare":
            first = self._ideal(expr.args[0], ring)
            relation = first.compare(self._ideal(expr.args[1], ring))
            return {"relation": relation.value}
        return {"generators": self._ideal(expr, ring).generator_strings()}

    def _describe(self, value: Value) -> Dict[str, Any]:
        if isinstance(value, PresentedRing):
            return {"ring": str(value), "domain": value.is_domain}
        if isinstance(value, Ideal):
            return {"generators": value.generator_strings()}
        if isinstance(value, FractionalIdeal):
            return {
                "numerator": value.numerator.generator_strings(),
                "denominator": str(value.denominator),
            }
        if isinstance(value, WitnessSet):
            return {"witnesses": [str(w) for w in value]}
        return {
            "closure": value.name,
            "computable": value.computer is not None,
            "exact_everywhere": value.is_exact_everywhere(),
            "claims": asdict(value.claims),
        }

    def _member(self, expr: Expr, ring: PresentedRing) -> Optional[bool]:
        operator, element, target = expr.args
        is_b = operator.kind == ExprKind.NAME and operator.value == "b" and "b" not in self.values
        fractional = is_b or element.kind == ExprKind.FRACTION or (
            target.kind == ExprKind.NAME and isinstance(self._lookup(target), FractionalIdeal)
        )
        if not fractional:
            c = self._closure(operator, ring)
            ideal = self._ideal(target, ring)
            answer = c.member(self._element(element, ring), ideal)
            if answer is not True:
                self._note(self._semi_decision(c, ideal))
            return answer

        f = self._fraction(element, ring)
        a = self._fractional(target, ring)
        if is_b:
            c = construct_builtin("integral_monomial", ring)
            answer = b_member(f, a)
        else:
            c = self._closure(operator, ring)
            answer = pi_member(c, f, a)
        if answer is not True:
            self._note(self._semi_decision(c, a.numerator.scale(f.denominator)))
        return answer

    def _semi_decision(self, c: ClosureOp, ideal: Ideal) -> Exactness:
        exactness = c.is_exact_for(ideal)
        if exactness.kind == ExactnessKind.EXACT:
            return exactness
        return Exactness(kind=ExactnessKind.SEMI_DECISION, bound=c.capability.bound)

    def _check_axioms(self, statement: Statement, c: ClosureOp, ring: PresentedRing) -> OutputRecord:
        samples = int(statement.params["samples"].value) if "samples" in statement.params else 0
        witnesses = None
        if "witnesses" in statement.params:
            witnesses = self._witnesses(statement.params["witnesses"], ring)
        report = check_axioms(c, self.settings.sample_config(samples), witnesses)
        found = []
        for verdict in report.failures():
            assert verdict.witness is not None
            entry = verdict.witness.model_dump(mode="json")
            entry["replayed"] = replay_witness(c, verdict.witness)
            found.append(entry)
        return self._check_record(statement, report.passed, report.model_dump(mode="json"), found)

    def _check_correspondence(
        self, statement: Statement, c: ClosureOp, ring: PresentedRing
    ) -> OutputRecord:
        samples = int(statement.params["samples"].value) if "samples" in statement.params else 0
        larger = None
        if "larger" in statement.params:
            larger = self._closure(statement.params["larger"], ring)
        report = check_correspondence(c, self.settings.correspondence_config(samples), larger)
        found = [
            {"check": check.name, **(check.witness or {})}
            for check in report.checks
            if check.status == VerdictStatus.FAILED
        ]
        return self._check_record(statement, report.passed, report.model_dump(mode="json"), found)

    def _check_record(
        self,
        statement: Statement,
        passed: bool,
        payload: Dict[str, Any],
        found: List[Dict[str, Any]],
    ) -> OutputRecord:
        if not passed:
            self.statistics["failed_checks"] += 1
        return self._record(
            statement,
            payload,
            status=RecordStatus.OK if passed else RecordStatus.FAILED,
            exactness=None,
            witnesses=found or None,
        )


def execute(session: Session, settings: Optional[Settings] = None) -> List[OutputRecord]:
    """Execute a session with a fresh executor."""
    return SessionExecutor(settings).execute(session)


def exit_status(records: List[OutputRecord]) -> int:
    """0 iff no command errored and no check failed, else 1."""
    return 0 if all(r.status == RecordStatus.OK for r in records) else 1
