"""
Result records: sweep rows, timing budgets, branch audits, verification checks.
"""

from pydantic import BaseModel, computed_field

from cavity_swap.models.enums import Variant

SWEEP_COLUMNS = (
    "b", "k", "gt", "variant",
    "outcome_probability", "fidelity", "useful_probability",
    "fidelity_formula", "probability_formula", "abs_deviation",
)


class SweepRecord(BaseModel):
    """One grid point of a parameter sweep: simulation next to closed form."""
    b: float
    k: float
    gt: float
    variant: Variant
    outcome_probability: float
    fidelity: float
    useful_probability: float
    fidelity_formula: float
    probability_formula: float
    abs_deviation: float


class TimingBudget(BaseModel):
    g: float                      # rad/s
    gt: float
    radiative_time_s: float
    cavity_decay_time_s: float
    interaction_time_s: float
    n_interactions: int
    budget_factor: float
    total_time_s: float
    feasible: bool


class BranchRecord(BaseModel):
    """One orthogonal branch of a heralded state, indexed by the non-target subsystems."""
    label: str
    levels: dict[str, int]
    weight: float
    overlap: float


class CheckResult(BaseModel):
    name: str
    value: float
    expected: float
    deviation: float
    tolerance: float

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return self.deviation <= self.tolerance


class VerificationReport(BaseModel):
    checks: list[CheckResult] = []

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)
