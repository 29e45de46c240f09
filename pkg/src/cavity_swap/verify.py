"""
Self-verification suite: propagator vs. oracle, simulation vs. closed forms,
and the published reference numbers.
"""

import logging
import math
from collections.abc import Callable
from typing import Optional

import numpy as np

from cavity_swap.analysis import (
    SweepRange,
    closed_forms,
    fidelity_formula_A,
    magic_cosine,
    peak_useful_probability,
    sweep,
    timing_budget,
)
from cavity_swap.dynamics import JCInteraction, jc_propagate, jc_propagate_oracle
from cavity_swap.models.enums import Encoding, Variant
from cavity_swap.models.params import GT_MAGIC, ProtocolParams
from cavity_swap.models.records import CheckResult, VerificationReport
from cavity_swap.protocol import CAVITY_4, bob_readout, cavity_vacuum_weight, readout_fidelity, run_swap, target_state
from cavity_swap.qstate import StateVector, SubsystemSpec, SystemLayout

logger = logging.getLogger(__name__)

Propagator = Callable[[StateVector, JCInteraction], StateVector]

ORACLE_CAVITY_DIM = 4
ORACLE_TOL = 1e-9
FORMULA_TOL = 1e-9
EXACT_TOL = 1e-12


def random_pair_state(rng: np.random.Generator, cavity_dim: int = ORACLE_CAVITY_DIM) -> StateVector:
    """Random normalized atom ⊗ cavity state with |e, top> left empty."""
    layout = SystemLayout.of(SubsystemSpec.atom("atom"), SubsystemSpec.cavity("cavity", cavity_dim))
    amplitudes = rng.normal(size=layout.total_dimension) + 1j * rng.normal(size=layout.total_dimension)
    amplitudes[layout.to_index((1, cavity_dim - 1))] = 0.0
    return StateVector(layout, amplitudes).normalized()


def oracle_deviation(n_cases: int = 100, seed: int = 0, propagator: Propagator = jc_propagate) -> float:
    """Largest amplitude difference between ``propagator`` and the dense oracle."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_cases):
        state = random_pair_state(rng)
        phase = float(rng.uniform(-4 * np.pi, 4 * np.pi))
        interaction = JCInteraction(atom_label="atom", cavity_label="cavity", phase=phase)
        diff = propagator(state, interaction).amplitudes - jc_propagate_oracle(state, interaction).amplitudes
        worst = max(worst, float(np.max(np.abs(diff))))
    return worst


def _check(name: str, value: float, expected: float, tolerance: float, override: Optional[float]) -> CheckResult:
    result = CheckResult(
        name=name,
        value=value,
        expected=expected,
        deviation=abs(value - expected),
        tolerance=tolerance if override is None else override,
    )
    logger.debug("check %s: value=%.12g expected=%.12g passed=%s", name, value, expected, result.passed)
    return result


def run_verification(
    tolerance: Optional[float] = None,
    *,
    seed: int = 0,
    n_random: int = 100,
    propagator: Propagator = jc_propagate,
) -> VerificationReport:
    """Run every check. ``tolerance`` replaces each check's own tolerance."""
    checks: list[CheckResult] = []

    def add(name: str, value: float, expected: float, tol: float) -> None:
        checks.append(_check(name, value, expected, tol, tolerance))

    add("oracle equivalence (max |Δ amplitude|)", oracle_deviation(n_random, seed, propagator), 0.0, ORACLE_TOL)
    add("cos(√2·7π/4)", magic_cosine(GT_MAGIC), 0.079, 5e-4)

    a = run_swap(ProtocolParams(b=0.6))
    add("atom variant b=0.6: fidelity", a.fidelity, 0.9889, 5e-4)
    add("atom variant b=0.6: useful probability", a.useful_probability, 0.36 * 0.64, 1e-6)
    add("atom variant b=0.6: fidelity vs formula", a.fidelity, fidelity_formula_A(0.6), FORMULA_TOL)

    figure = sweep(Variant.MEASURE_ATOM, SweepRange(start=0.05, stop=0.95, step=0.01), workers=1)
    add("fidelity curve vs formula (max deviation)", max(r.abs_deviation for r in figure), 0.0, FORMULA_TOL)
    add("fidelity curve: min F for b >= 0.25 above 0.9",
        max(0.0, 0.9 - min(r.fidelity for r in figure if r.b >= 0.25)), 0.0, 0.0)

    peak = peak_useful_probability(sweep(Variant.MEASURE_ATOM, SweepRange(start=0.005, stop=0.995, step=0.005),
                                         workers=1))
    add("peak useful probability", peak.useful_probability, 0.25, 1e-4)
    add("peak location b", peak.b, 1 / math.sqrt(2), 5e-3)

    vac = run_swap(ProtocolParams(b=0.2, variant=Variant.MEASURE_CAVITY_VACUUM))
    add("cavity-vacuum variant b=0.2: fidelity", vac.fidelity, 0.96, 1e-6)
    add("cavity-vacuum variant b=0.2: outcome probability", vac.outcome_probability, 0.04, 1e-6)
    add("cavity-vacuum variant b=0.2: useful probability", vac.useful_probability, 0.0384, 1e-6)

    err = run_swap(ProtocolParams(b=0.6, k=0.1))
    f_formula, p_formula = closed_forms(Variant.MEASURE_ATOM, 0.6, 0.1, GT_MAGIC)
    add("error model b=0.6 k=0.1: useful probability", err.useful_probability, 0.24098, 5e-5)
    add("error model b=0.6 k=0.1: fidelity", err.fidelity, 0.98463, 5e-5)
    add("error model: probability vs formula", err.useful_probability, p_formula, FORMULA_TOL)
    add("error model: fidelity vs formula", err.fidelity, f_formula, FORMULA_TOL)

    worst = 0.0
    for b in np.round(np.arange(0.1, 0.95, 0.1), 10):
        for k in (-0.1, 0.0, 0.1):
            for variant in Variant:
                same = run_swap(ProtocolParams(b=b, k=k, variant=variant))
                single = run_swap(ProtocolParams(b=b, k=k, variant=variant, encoding=Encoding.SINGLE))
                worst = max(worst, abs(same.fidelity - single.fidelity),
                            abs(same.useful_probability - single.useful_probability))
    add("encoding equivalence (max deviation)", worst, 0.0, FORMULA_TOL)

    ideal = target_state(ProtocolParams())
    readout = bob_readout(ideal)
    add("readout two-atom fidelity", readout_fidelity(readout), 1.0, EXACT_TOL)
    add("readout cavity 4 vacuum weight", cavity_vacuum_weight(readout, CAVITY_4), 1.0, EXACT_TOL)

    budget = timing_budget(2 * math.pi * 25e3, 3e-2, 1e-3)
    add("interaction time (relative)", budget.interaction_time_s / 3.5e-5, 1.0, 1e-2)
    add("total time (relative)", budget.total_time_s / 3.5e-4, 1.0, 1e-2)
    add("feasible", float(budget.feasible), 1.0, 0.0)

    report = VerificationReport(checks=checks)
    logger.info("verification: %d/%d checks passed", sum(c.passed for c in checks), len(checks))
    return report
