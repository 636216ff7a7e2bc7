"""Sampling-based checks of the closure axioms, with replayable witnesses."""

import logging
import random
from typing import Callable, Iterator, List, Optional, Tuple

from src.algebra.poly import monomial_div
from src.algebra.rings import Ideal, PresentedRing, RingElement
from src.closures.closure import ClosureOp, WitnessSet
from src.config.settings import SampleConfig
from src.models.reports import (
    AxiomName,
    AxiomReport,
    AxiomVerdict,
    AxiomWitness,
    ExactnessKind,
    VerdictStatus,
)

logger = logging.getLogger(__name__)

# Returns the violating element, or None when the axiom holds on the input.
Falsifier = Callable[[Ideal], Optional[RingElement]]


def random_monomial_ideal(
    ring: PresentedRing, rng: random.Random, max_generators: int, max_degree: int
) -> Ideal:
    """Monomial ideal with 1..max_generators generators of degree 1..max_degree."""
    gens = []
    for _ in range(rng.randint(1, max_generators)):
        degree = rng.randint(1, max_degree)
        exps = [0] * ring.nvars
        for _ in range(degree):
            exps[rng.randrange(ring.nvars)] += 1
        gens.append(ring.base.monomial(tuple(exps)))
    return ring.ideal(gens)


def sample_universe(ring: PresentedRing, cfg: SampleConfig) -> List[Ideal]:
    """Principal ideals of the variables, then seeded random monomial ideals."""
    rng = random.Random(cfg.seed)
    samples = [ring.ideal([v]) for v in ring.base.gens()]
    while len(samples) < cfg.samples:
        ideal = random_monomial_ideal(ring, rng, cfg.max_generators, cfg.max_degree)
        if not ideal.is_zero() and not ideal.is_unit():
            samples.append(ideal)
    return samples[: cfg.samples]


def _test_elements(ideal: Ideal, extra: Tuple[Ideal, ...] = ()) -> Iterator[RingElement]:
    """Candidate elements for oracle-only operations."""
    ring = ideal.ring
    seen: List[RingElement] = []
    variables = ring.variables_as_elements()
    pool = [ring.one()] + variables + [a * b for a in variables for b in variables]
    for other in (ideal,) + extra:
        pool += other.elements()
    for f in pool:
        if f not in seen:
            seen.append(f)
            yield f


def _closure_elements(c: ClosureOp, ideal: Ideal) -> Iterator[RingElement]:
    """Generators of I^c when computable, else test elements known to lie in I^c."""
    if c.can_apply(ideal):
        yield from c.apply(ideal).elements()
        return
    for f in _test_elements(ideal):
        if c.member(f, ideal):
            yield f


def _extension_falsifier(c: ClosureOp) -> Falsifier:
    def falsify(ideal: Ideal) -> Optional[RingElement]:
        for g in ideal.elements():
            if c.member(g, ideal) is False:
                return g
        return None

    return falsify


def _idempotence_falsifier(c: ClosureOp) -> Falsifier:
    def falsify(ideal: Ideal) -> Optional[RingElement]:
        closed = c.apply(ideal)
        for g in c.apply(closed).elements():
            if not closed.contains(g):
                return g
        return None

    return falsify


def _weakly_prime_falsifier(c: ClosureOp, w: RingElement) -> Falsifier:
    def falsify(ideal: Ideal) -> Optional[RingElement]:
        scaled = ideal.scale(w)
        for g in _closure_elements(c, ideal):
            if c.member(w * g, scaled) is False:
                return g
        return None

    return falsify


def _standard_falsifier(c: ClosureOp, w: RingElement) -> Falsifier:
    def falsify(ideal: Ideal) -> Optional[RingElement]:
        scaled = ideal.scale(w)
        if c.can_apply(scaled):
            candidates = list(c.apply(scaled).colon(w).elements())
        else:
            candidates = [f for f in _test_elements(ideal) if c.member(w * f, scaled)]
        for g in candidates:
            if c.member(g, ideal) is False:
                return g
        return None

    return falsify


def _shrink_candidates(ideal: Ideal) -> Iterator[Ideal]:
    gens = list(ideal.generators)
    if len(gens) > 1:
        for i in range(len(gens)):
            yield ideal.ring.ideal(gens[:i] + gens[i + 1 :])
    for i, g in enumerate(gens):
        if not g.is_monomial() or g.degree() < 2:
            continue
        m = g.leading_monomial()
        for v in range(len(m)):
            if m[v]:
                unit = tuple(1 if j == v else 0 for j in range(len(m)))
                smaller = ideal.ring.base.monomial(monomial_div(m, unit))
                yield ideal.ring.ideal(gens[:i] + [smaller] + gens[i + 1 :])


def shrink(ideal: Ideal, falsify: Falsifier) -> Tuple[Ideal, RingElement]:
    """Greedily drop generators and lower monomial degrees while a counterexample survives."""
    element = falsify(ideal)
    assert element is not None
    improved = True
    while improved:
        improved = False
        for candidate in _shrink_candidates(ideal):
            if candidate.is_zero() or candidate.is_unit():
                continue
            found = falsify(candidate)
            if found is not None:
                logger.debug(f"shrunk witness {ideal} -> {candidate}")
                ideal, element = candidate, found
                improved = True
                break
    return ideal, element


def _single_ideal_verdict(
    axiom: AxiomName,
    samples: List[Ideal],
    falsifiers: List[Tuple[Optional[RingElement], Falsifier]],
) -> AxiomVerdict:
    checked = 0
    for ideal in samples:
        for w, falsify in falsifiers:
            checked += 1
            if falsify(ideal) is None:
                continue
            small, element = shrink(ideal, falsify)
            witness = AxiomWitness(
                axiom=axiom,
                ideals=[small.generator_strings()],
                element=str(element),
                regular=str(w) if w is not None else None,
                detail=f"{element} violates {axiom.value} at I = {small}"
                + (f", w = {w}" if w is not None else ""),
            )
            return AxiomVerdict(axiom=axiom, status=VerdictStatus.FAILED, samples=checked, witness=witness)
    return AxiomVerdict(axiom=axiom, status=VerdictStatus.PASSED, samples=checked)


def _order_verdict(c: ClosureOp, samples: List[Ideal]) -> AxiomVerdict:
    checked = 0
    for i, sub in enumerate(samples):
        ideal = sub.sum(samples[(i + 1) % len(samples)])
        checked += 1
        for g in _closure_elements(c, sub):
            if c.member(g, ideal) is False:
                witness = AxiomWitness(
                    axiom=AxiomName.ORDER_PRESERVATION,
                    ideals=[sub.generator_strings(), ideal.generator_strings()],
                    element=str(g),
                    detail=f"{g} lies in the closure of {sub} but not of {ideal}",
                )
                return AxiomVerdict(
                    axiom=AxiomName.ORDER_PRESERVATION,
                    status=VerdictStatus.FAILED,
                    samples=checked,
                    witness=witness,
                )
    return AxiomVerdict(axiom=AxiomName.ORDER_PRESERVATION, status=VerdictStatus.PASSED, samples=checked)


def _idempotence_verdict(c: ClosureOp, samples: List[Ideal]) -> AxiomVerdict:
    exact = [
        s for s in samples if c.can_apply(s) and c.is_exact_for(s).kind == ExactnessKind.EXACT
    ]
    if len(exact) < len(samples):
        return AxiomVerdict(
            axiom=AxiomName.IDEMPOTENCE,
            status=VerdictStatus.NOT_REFUTED,
            samples=len(exact),
            note="closure is not exactly computable on every sample",
        )
    return _single_ideal_verdict(AxiomName.IDEMPOTENCE, exact, [(None, _idempotence_falsifier(c))])


def check_axioms(
    c: ClosureOp, cfg: SampleConfig, witnesses: Optional[WitnessSet] = None
) -> AxiomReport:
    """
    Test extension, order-preservation, idempotence, weak primality and
    standardness of c on a seeded sample universe.

    Args:
        c: Closure operation
        cfg: Sampling bounds and seed
        witnesses: Regular elements w; defaults to the variables, their
            pairwise products and ``cfg.witnesses``

    Returns:
        AxiomReport whose failed verdicts carry replayable witnesses
    """
    ring = c.ring
    if witnesses is None:
        witnesses = WitnessSet.default_pool(ring, cfg.witnesses)
    samples = sample_universe(ring, cfg)
    logger.info(f"checking axioms of {c.name} on {len(samples)} samples over {ring}")

    verdicts = [
        _single_ideal_verdict(AxiomName.EXTENSION, samples, [(None, _extension_falsifier(c))]),
        _order_verdict(c, samples),
        _idempotence_verdict(c, samples),
        _single_ideal_verdict(
            AxiomName.WEAKLY_PRIME, samples, [(w, _weakly_prime_falsifier(c, w)) for w in witnesses]
        ),
        _single_ideal_verdict(
            AxiomName.STANDARD, samples, [(w, _standard_falsifier(c, w)) for w in witnesses]
        ),
    ]
    report = AxiomReport(
        closure=c.name,
        ring=str(ring),
        config=cfg,
        witnesses=[str(w) for w in witnesses],
        verdicts=verdicts,
    )
    logger.info(
        f"{c.name}: "
        + ", ".join(f"{v.axiom.value}={v.status.value}" for v in report.verdicts)
    )
    return report


def replay_witness(c: ClosureOp, witness: AxiomWitness) -> bool:
    """Re-evaluate a failure witness; True iff the violation reproduces."""
    ring = c.ring
    ideals = [ring.ideal(gens) for gens in witness.ideals]
    element = ring.element(witness.element)
    ideal = ideals[0]
    if witness.axiom == AxiomName.EXTENSION:
        return ideal.contains(element) and c.member(element, ideal) is False
    if witness.axiom == AxiomName.ORDER_PRESERVATION:
        bigger = ideals[1]
        return (
            ideal.is_subset(bigger)
            and c.member(element, ideal) is True
            and c.member(element, bigger) is False
        )
    if witness.axiom == AxiomName.IDEMPOTENCE:
        closed = c.apply(ideal)
        return c.member(element, closed) is True and c.member(element, ideal) is False
    assert witness.regular is not None
    w = ring.element(witness.regular)
    scaled = ideal.scale(w)
    if witness.axiom == AxiomName.WEAKLY_PRIME:
        return c.member(element, ideal) is True and c.member(w * element, scaled) is False
    return c.member(w * element, scaled) is True and c.member(element, ideal) is False
