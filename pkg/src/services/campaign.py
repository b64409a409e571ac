"""
Seeded randomized campaigns.

Instance k of a campaign draws from its own generator seeded with
"seed:k", so the instance stream does not depend on the worker count and
results are always aggregated in index order.

Random polynomials: every exponent (every exponent vector with entry sum
at most max_deg in the bivariate mode) is present independently with
probability 1/2, redrawn until at least two terms are present;
coefficients are uniform integers in [-coeff_range, coeff_range].
"""

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from src.models.schemas import CampaignConfigModel, CampaignMode, CampaignReport, EngineName, PairBoundModel
from src.tropical.bivariate import bivariate_solve, conjecture_probe, random_probe
from src.tropical.errors import InvariantViolation, WitnessViolationError
from src.tropical.nullstellensatz import proof_invariant_report, theorem1_verify
from src.tropical.polynomial import TropPoly, trop_degree
from src.tropical.semiring import format_value
from src.utils.metrics import metrics_collector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CampaignConfig:
    """Parameters of a campaign; the instance stream depends only on these."""

    seed: int
    count: int
    max_s: int = 4
    max_deg: int = 5
    coeff_range: int = 5
    mode: CampaignMode = CampaignMode.UNIVARIATE
    engine: EngineName = EngineName.AUTO
    n_max: int = 3
    budget_factor: int = 10
    probe_samples: int = 1000

    def to_model(self) -> CampaignConfigModel:
        return CampaignConfigModel(
            seed=self.seed,
            count=self.count,
            max_s=self.max_s,
            max_deg=self.max_deg,
            coeff_range=self.coeff_range,
            mode=self.mode,
            engine=self.engine,
            n_max=self.n_max,
        )


def instance_rng(seed: int, index: int) -> random.Random:
    return random.Random(f"{seed}:{index}")


def _random_terms(rng: random.Random, exponents: List[tuple], coeff_range: int) -> Dict[tuple, int]:
    while True:
        present = [e for e in exponents if rng.random() < 0.5]
        if len(present) >= 2:
            break
    return {e: rng.randint(-coeff_range, coeff_range) for e in present}


def random_univariate(rng: random.Random, max_deg: int, coeff_range: int) -> TropPoly:
    exponents = [(k,) for k in range(max_deg + 1)]
    return TropPoly(1, _random_terms(rng, exponents, coeff_range))


def random_bivariate(rng: random.Random, max_deg: int, coeff_range: int) -> TropPoly:
    exponents = [(a, b) for a in range(max_deg + 1) for b in range(max_deg + 1 - a)]
    return TropPoly(2, _random_terms(rng, exponents, coeff_range))


def random_system(config: CampaignConfig, index: int) -> List[TropPoly]:
    """The index-th system of a campaign."""
    rng = instance_rng(config.seed, index)
    s = rng.randint(1, config.max_s)
    make = random_univariate if config.mode is CampaignMode.UNIVARIATE else random_bivariate
    return [make(rng, config.max_deg, config.coeff_range) for _ in range(s)]


@dataclass
class InstanceOutcome:
    """What one campaign instance contributes to the aggregate."""

    index: int
    solvable: bool
    agree: bool = True
    extraction_ok: bool = True
    ratio: Optional[Fraction] = None
    pair_checked: bool = False
    pair_within: bool = False
    proof_checked: bool = False
    proof_violations: Dict[str, int] = field(default_factory=dict)
    advisory_violations: Dict[str, int] = field(default_factory=dict)
    easy_ok: bool = True
    sampler_miss: bool = False
    first_infeasible_N: Optional[int] = None


def run_univariate_instance(config: CampaignConfig, index: int) -> InstanceOutcome:
    """Theorem check, bound statistics and proof checks for one system."""
    system = random_system(config, index)
    report = theorem1_verify(system, config.engine, config.budget_factor)
    outcome = InstanceOutcome(
        index=index,
        solvable=report.direct_solvable,
        agree=report.agree,
        extraction_ok=report.ok or not report.agree,
    )
    if not report.direct_solvable and report.certifying_N is not None:
        outcome.ratio = Fraction(report.certifying_N, report.system_degree)
        if len(system) == 2:
            outcome.pair_checked = True
            outcome.pair_within = report.certifying_N <= trop_degree(system[0]) + trop_degree(system[1])

    if report.witness is not None:
        try:
            proof = proof_invariant_report(system, report.witness, report.N)
        except WitnessViolationError as exc:
            outcome.proof_violations = {"witness": 1}
            logger.error(f"Instance {index}: solver witness rejected: {exc}")
        else:
            outcome.proof_checked = True
            for name, check in proof.checks.items():
                target = outcome.proof_violations if check.strict else outcome.advisory_violations
                target[name] = len(check.violations)
    return outcome


def run_bivariate_instance(config: CampaignConfig, index: int) -> InstanceOutcome:
    """Easy-direction probe and sampler cross-check for one system."""
    system = random_system(config, index)
    zero = bivariate_solve(system)
    outcome = InstanceOutcome(index=index, solvable=zero is not None)
    probe_rng = random.Random(f"{config.seed}:{index}:probe")
    if zero is None and random_probe(system, config.probe_samples, probe_rng) is not None:
        outcome.sampler_miss = True
    try:
        report = conjecture_probe(system, config.n_max, config.engine, config.budget_factor)
        outcome.first_infeasible_N = report.first_infeasible_N
    except InvariantViolation as exc:
        outcome.easy_ok = False
        logger.error(f"Instance {index}: {exc}")
    return outcome


def _run_instance(config: CampaignConfig, index: int) -> InstanceOutcome:
    if config.mode is CampaignMode.UNIVARIATE:
        return run_univariate_instance(config, index)
    return run_bivariate_instance(config, index)


def _aggregate(config: CampaignConfig, outcomes: List[InstanceOutcome]) -> CampaignReport:
    report = CampaignReport(config=config.to_model(), instances=len(outcomes))
    ratios: Dict[Fraction, int] = {}
    pair = PairBoundModel()
    first_infeasible: Dict[Optional[int], int] = {}
    for outcome in outcomes:
        report.solvable += outcome.solvable
        if config.mode is CampaignMode.UNIVARIATE:
            if outcome.agree:
                report.agree += 1
            else:
                report.disagreements.append(outcome.index)
            if not outcome.extraction_ok:
                report.extraction_failures.append(outcome.index)
            if outcome.ratio is not None:
                ratios[outcome.ratio] = ratios.get(outcome.ratio, 0) + 1
            if outcome.pair_checked:
                pair.checked += 1
                pair.within += outcome.pair_within
            report.proof_checked += outcome.proof_checked
            for name, count in outcome.proof_violations.items():
                report.proof_violations[name] = report.proof_violations.get(name, 0) + count
            for name, count in outcome.advisory_violations.items():
                report.advisory_violations[name] = report.advisory_violations.get(name, 0) + count
        else:
            if outcome.easy_ok:
                report.easy_direction_ok += 1
            else:
                report.easy_direction_failures.append(outcome.index)
            if outcome.sampler_miss:
                report.sampler_misses.append(outcome.index)
            if not outcome.solvable:
                key = outcome.first_infeasible_N
                first_infeasible[key] = first_infeasible.get(key, 0) + 1

    report.ratio_distribution = {format_value(r): ratios[r] for r in sorted(ratios)}
    report.max_ratio = format_value(max(ratios)) if ratios else None
    report.pair_bound = pair
    report.first_infeasible_N = {
        ("none" if key is None else str(key)): first_infeasible[key]
        for key in sorted(first_infeasible, key=lambda k: (k is None, k or 0))
    }
    report.ok = not (
        report.disagreements
        or report.extraction_failures
        or any(report.proof_violations.values())
        or report.easy_direction_failures
        or report.sampler_misses
    )
    return report


def run_campaign(config: CampaignConfig, workers: int = 1) -> CampaignReport:
    """
    Run every instance of a campaign and aggregate the outcomes.

    Args:
        config: Campaign parameters
        workers: Worker processes; 1 runs in-process

    Returns:
        The aggregate report, identical for any worker count
    """
    logger.info(
        f"Starting {config.mode.value} campaign of {config.count} instances",
        extra={"seed": config.seed, "workers": workers, "engine": config.engine.value},
    )
    indices = list(range(config.count))
    if workers > 1 and config.count > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_run_instance, [config] * len(indices), indices))
    else:
        outcomes = [_run_instance(config, index) for index in indices]
    metrics_collector.increment_counter("campaign:instances", len(outcomes))

    report = _aggregate(config, outcomes)
    logger.info(
        f"Campaign finished: ok={report.ok}",
        extra={"instances": report.instances, "solvable": report.solvable},
    )
    return report
