"""
Closed-form evaluators, parameter sweeps and the experimental timing budget.

The closed forms assume the heralded one-excitation branch is balanced,
i.e. cos²(gt) = 1/2 as at gt = 7π/4; away from that family the sweep's
``abs_deviation`` measures how far the simulation drifts from them.
"""

import logging
import math
import os
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from itertools import product
from typing import Optional, Union

from pydantic import BaseModel, ConfigDict, model_validator
from scipy.optimize import brentq

from cavity_swap.errors import InvalidParamsError
from cavity_swap.models.enums import Encoding, Variant
from cavity_swap.models.params import GT_MAGIC, MIN_TRUNCATION, ProtocolParams
from cavity_swap.models.records import SweepRecord, TimingBudget
from cavity_swap.protocol import run_swap

logger = logging.getLogger(__name__)

THREADS_ENV = "CAVITY_SWAP_THREADS"
DEFAULT_BUDGET_FACTOR = 10.0


def _check_b(b: float) -> None:
    if not 0 < b < 1:
        raise InvalidParamsError(f"b must lie in (0, 1), got {b}", {"b": b})


def _check_bk(b: float, k: float) -> None:
    _check_b(b)
    if abs(b * (1 + k)) >= 1:
        raise InvalidParamsError(f"|b(1+k)| must be < 1, got b={b}, k={k}", {"b": b, "k": k})


def magic_cosine(gt: float = GT_MAGIC) -> float:
    """cos(√2 gt): amplitude left on the two-excitation branch."""
    return math.cos(math.sqrt(2) * gt)


def fidelity_formula_A(b: float, gt: float = GT_MAGIC) -> float:
    """F = b² / [b² + (1 - b²) cos²(√2 gt)] for the atom-measurement variant."""
    _check_b(b)
    return b ** 2 / (b ** 2 + (1 - b ** 2) * magic_cosine(gt) ** 2)


def fidelity_formula_B(b: float, k: float = 0.0) -> float:
    """Cavity-vacuum variant with coefficient error k; 1 - b² at k = 0."""
    _check_bk(b, k)
    a, bc = math.sqrt(1 - b ** 2), b * (1 + k)
    ac = math.sqrt(1 - bc ** 2)
    return 0.5 * (a * bc + b * ac) ** 2 / (a ** 2 * bc ** 2 + b ** 2 * ac ** 2 + 2 * b ** 2 * bc ** 2)


def pnew_formula(b: float, k: float = 0.0) -> float:
    """Success probability with coefficient error k; b²(1 - b²) at k = 0."""
    _check_bk(b, k)
    s = (1 + k) ** 2
    return 0.5 * ((1 - b ** 2) * b ** 2 * s + b ** 2 * (1 - b ** 2 * s))


def fnew_formula(b: float, k: float = 0.0, gt: float = GT_MAGIC) -> float:
    """Fidelity of the atom-measurement variant with coefficient error k."""
    _check_bk(b, k)
    s = (1 + k) ** 2
    numerator = 0.5 * (math.sqrt(1 - b ** 2) * b * (1 + k) + b * math.sqrt(1 - b ** 2 * s)) ** 2
    denominator = (
        (1 - b ** 2) * b ** 2 * s
        + b ** 2 * (1 - b ** 2 * s)
        + 2 * (1 - b ** 2) * (1 - b ** 2 * s) * magic_cosine(gt) ** 2
    )
    return numerator / denominator


def closed_forms(variant: Variant, b: float, k: float, gt: float) -> tuple[float, float]:
    """(fidelity, success probability) closed forms for one variant."""
    if variant == Variant.MEASURE_ATOM:
        return fnew_formula(b, k, gt), pnew_formula(b, k)
    return fidelity_formula_B(b, k), pnew_formula(b, k)


def fidelity_crossing(threshold: float = 0.9, gt: float = GT_MAGIC) -> float:
    """Smallest b at which fidelity_formula_A reaches ``threshold``."""
    if not 0 < threshold < 1:
        raise InvalidParamsError(f"threshold must lie in (0, 1), got {threshold}")
    return float(brentq(lambda b: fidelity_formula_A(b, gt) - threshold, 1e-9, 1 - 1e-9, xtol=1e-14))


# ── sweeps ───────────────────────────────────────────────────────────────


class SweepRange(BaseModel):
    """Inclusive arithmetic grid start, start+step, ..., ≤ stop."""

    model_config = ConfigDict(frozen=True)

    start: float
    stop: float
    step: Optional[float] = None

    @model_validator(mode="after")
    def _check(self) -> "SweepRange":
        if self.stop < self.start:
            raise InvalidParamsError(f"range is inverted: start {self.start} > stop {self.stop}")
        if self.step is not None and self.step <= 0:
            raise InvalidParamsError(f"range step must be positive, got {self.step}")
        return self

    def values(self, resolution: Optional[float] = None) -> list[float]:
        step = self.step if self.step is not None else resolution
        if step is None or step <= 0:
            raise InvalidParamsError("a range needs a positive step or sweep resolution")
        count = int(math.floor((self.stop - self.start) / step + 1e-9)) + 1
        return [round(self.start + i * step, 12) for i in range(count)]


AxisSpec = Union[float, SweepRange, Sequence[float]]


def _axis_values(axis: AxisSpec, resolution: Optional[float]) -> list[float]:
    if isinstance(axis, SweepRange):
        return axis.values(resolution)
    if isinstance(axis, (int, float)):
        return [float(axis)]
    return [float(v) for v in axis]


def sweep_workers() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return os.cpu_count() or 1
    try:
        workers = int(raw)
        if workers < 1:
            raise ValueError(raw)
    except ValueError:
        logger.warning("ignoring invalid %s=%r, using 1 worker", THREADS_ENV, raw)
        return 1
    return workers


def sweep_point(variant: Variant, b: float, k: float, gt: float,
                encoding: Encoding = Encoding.SAME, truncation: int = MIN_TRUNCATION) -> SweepRecord:
    result = run_swap(ProtocolParams(b=b, k=k, gt_clare=gt, variant=variant,
                                     encoding=encoding, cavity_truncation=truncation))
    fidelity_formula, probability_formula = closed_forms(variant, b, k, gt)
    return SweepRecord(
        b=b, k=k, gt=gt, variant=variant,
        outcome_probability=result.outcome_probability,
        fidelity=result.fidelity,
        useful_probability=result.useful_probability,
        fidelity_formula=fidelity_formula,
        probability_formula=probability_formula,
        abs_deviation=max(abs(result.fidelity - fidelity_formula),
                          abs(result.useful_probability - probability_formula)),
    )


def sweep(
    variant: Variant,
    b_range: AxisSpec,
    k_range: AxisSpec = 0.0,
    gt_range: AxisSpec = GT_MAGIC,
    resolution: Optional[float] = None,
    *,
    encoding: Encoding = Encoding.SAME,
    truncation: int = MIN_TRUNCATION,
    workers: Optional[int] = None,
) -> list[SweepRecord]:
    """Run the protocol over the b × k × gt grid, b varying slowest.

    Each axis is a constant, an explicit list, or a SweepRange (stepped by
    its own step or ``resolution``). Output order is the grid order whatever
    the worker count.
    """
    grid = list(product(_axis_values(b_range, resolution),
                        _axis_values(k_range, resolution),
                        _axis_values(gt_range, resolution)))
    for b, k, _ in grid:
        _check_bk(b, k)
    if not grid:
        return []
    workers = min(workers or sweep_workers(), len(grid))
    logger.info("sweeping %d points (%s, %s) on %d worker(s)", len(grid), variant, encoding, workers)

    def run(point: tuple[float, float, float]) -> SweepRecord:
        return sweep_point(variant, *point, encoding=encoding, truncation=truncation)

    if workers == 1:
        records = [run(p) for p in grid]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(run, grid))
    logger.debug("sweep finished: %d records", len(records))
    return records


def peak_useful_probability(records: Sequence[SweepRecord]) -> SweepRecord:
    if not records:
        raise InvalidParamsError("no sweep records to search")
    return max(records, key=lambda r: r.useful_probability)


# ── feasibility ──────────────────────────────────────────────────────────


def timing_budget(
    g: float,
    radiative_time_s: float,
    cavity_decay_time_s: float,
    n_interactions: int = 2,
    *,
    gt: float = GT_MAGIC,
    budget_factor: float = DEFAULT_BUDGET_FACTOR,
) -> TimingBudget:
    """Compare the scheme's duration with the atomic and cavity lifetimes.

    One interaction lasts gt / g. The whole scheme (Clare's and Bob's passes,
    atom transit and detection) is budgeted as ``budget_factor`` interaction
    times, independent of ``n_interactions``.
    """
    for name, value in (("g", g), ("radiative_time_s", radiative_time_s),
                        ("cavity_decay_time_s", cavity_decay_time_s), ("gt", gt),
                        ("budget_factor", budget_factor)):
        if not (math.isfinite(value) and value > 0):
            raise InvalidParamsError(f"{name} must be positive, got {value}", {name: value})
    if n_interactions < 1:
        raise InvalidParamsError(f"n_interactions must be >= 1, got {n_interactions}", {"n_interactions": n_interactions})
    interaction = gt / g
    total = budget_factor * interaction
    return TimingBudget(
        g=g,
        gt=gt,
        radiative_time_s=radiative_time_s,
        cavity_decay_time_s=cavity_decay_time_s,
        interaction_time_s=interaction,
        n_interactions=n_interactions,
        budget_factor=budget_factor,
        total_time_s=total,
        feasible=total < min(radiative_time_s, cavity_decay_time_s),
    )
