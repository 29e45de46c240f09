"""
Labelled tensor-product state vectors.

Atoms are two-level systems (local index 0 = |g>, 1 = |e>); cavities are
Fock-truncated modes (local index n = |n>). The joint basis is row-major over
the subsystem order of a SystemLayout. StateVector values are immutable: every
operation returns a new state.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator, Mapping, Sequence
from functools import reduce
from typing import Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from cavity_swap.errors import (
    DimensionMismatchError,
    LabelCollisionError,
    LabelMismatchError,
    UnknownLabelError,
    UnnormalizedInputError,
    ZeroNormError,
)
from cavity_swap.models.enums import SubsystemKind

logger = logging.getLogger(__name__)

NORM_TOL = 1e-12
INPUT_NORM_TOL = 1e-9
NULL_PROBABILITY = 1e-15
DEFAULT_CAVITY_DIM = 3

ATOM_LEVELS = {"g": 0, "e": 1}
ATOM_NAMES = ("g", "e")

Level = Union[int, str]
LocalState = Union[Level, Sequence[complex], np.ndarray]


class SubsystemSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    label: str
    kind: SubsystemKind
    dimension: int = 2

    @model_validator(mode="after")
    def _check_dimension(self) -> "SubsystemSpec":
        if self.kind == SubsystemKind.ATOM and self.dimension != 2:
            raise DimensionMismatchError(f"atom {self.label!r} must have dimension 2, got {self.dimension}")
        if self.kind == SubsystemKind.CAVITY and self.dimension < 2:
            raise DimensionMismatchError(f"cavity {self.label!r} needs dimension >= 2, got {self.dimension}")
        return self

    @classmethod
    def atom(cls, label: str) -> "SubsystemSpec":
        return cls(label=label, kind=SubsystemKind.ATOM, dimension=2)

    @classmethod
    def cavity(cls, label: str, dimension: int = DEFAULT_CAVITY_DIM) -> "SubsystemSpec":
        return cls(label=label, kind=SubsystemKind.CAVITY, dimension=dimension)

    def local_index(self, level: Level) -> int:
        """Map 'g'/'e' (atoms) or a Fock number to a local basis index."""
        if isinstance(level, str):
            if self.kind != SubsystemKind.ATOM or level not in ATOM_LEVELS:
                raise DimensionMismatchError(f"level {level!r} is not valid for {self.label!r}")
            return ATOM_LEVELS[level]
        index = int(level)
        if not 0 <= index < self.dimension:
            raise DimensionMismatchError(
                f"level {index} out of range for {self.label!r} (dimension {self.dimension})"
            )
        return index

    def level_name(self, index: int) -> str:
        return ATOM_NAMES[index] if self.kind == SubsystemKind.ATOM else str(index)


class SystemLayout(BaseModel):
    """Ordered subsystems spanning a tensor-product space."""

    model_config = ConfigDict(frozen=True)

    subsystems: tuple[SubsystemSpec, ...]

    @model_validator(mode="after")
    def _check_labels(self) -> "SystemLayout":
        labels = [s.label for s in self.subsystems]
        duplicates = sorted({label for label in labels if labels.count(label) > 1})
        if duplicates:
            raise LabelCollisionError(f"duplicate subsystem labels: {duplicates}", {"labels": duplicates})
        return self

    @classmethod
    def of(cls, *subsystems: SubsystemSpec) -> "SystemLayout":
        return cls(subsystems=tuple(subsystems))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(s.label for s in self.subsystems)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(s.dimension for s in self.subsystems)

    @property
    def total_dimension(self) -> int:
        return int(np.prod(self.dims, dtype=np.int64))

    def position(self, label: str) -> int:
        for i, s in enumerate(self.subsystems):
            if s.label == label:
                return i
        raise UnknownLabelError(label)

    def spec(self, label: str) -> SubsystemSpec:
        return self.subsystems[self.position(label)]

    def to_multi_index(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.total_dimension:
            raise DimensionMismatchError(f"index {index} outside [0, {self.total_dimension})")
        return tuple(int(i) for i in np.unravel_index(index, self.dims))

    def to_index(self, multi_index: Sequence[int]) -> int:
        if len(multi_index) != len(self.subsystems):
            raise DimensionMismatchError(
                f"multi-index of length {len(multi_index)} for {len(self.subsystems)} subsystems"
            )
        for i, d in zip(multi_index, self.dims):
            if not 0 <= i < d:
                raise DimensionMismatchError(f"local index {i} outside [0, {d})")
        return int(np.ravel_multi_index(tuple(multi_index), self.dims))

    def concat(self, other: "SystemLayout") -> "SystemLayout":
        clash = sorted(set(self.labels) & set(other.labels))
        if clash:
            raise LabelCollisionError(f"layouts share labels {clash}", {"labels": clash})
        return SystemLayout(subsystems=self.subsystems + other.subsystems)

    def excitations(self, multi_index: Sequence[int]) -> int:
        """Total excitation number: excited atoms plus photons."""
        return int(sum(multi_index))


class StateVector:
    """Complex amplitudes over a layout's joint basis. Immutable."""

    __slots__ = ("layout", "amplitudes")

    def __init__(self, layout: SystemLayout, amplitudes: Union[Sequence[complex], np.ndarray]):
        data = np.array(amplitudes, dtype=np.complex128).reshape(-1)
        if data.shape != (layout.total_dimension,):
            raise DimensionMismatchError(
                f"expected {layout.total_dimension} amplitudes, got {data.size}",
                {"expected": layout.total_dimension, "got": int(data.size)},
            )
        if not np.all(np.isfinite(data)):
            raise DimensionMismatchError("amplitudes must be finite")
        data.flags.writeable = False
        self.layout = layout
        self.amplitudes = data

    def __repr__(self) -> str:
        return f"StateVector(labels={self.layout.labels}, norm={self.norm():.6g})"

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def norm(self) -> float:
        return float(np.sqrt(self.norm_squared()))

    def is_normalized(self, tol: float = INPUT_NORM_TOL) -> bool:
        return abs(self.norm_squared() - 1.0) <= tol

    def normalized(self) -> "StateVector":
        n = self.norm()
        if n == 0.0 or not np.isfinite(n):
            raise ZeroNormError()
        return StateVector(self.layout, self.amplitudes / n)

    def as_tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.layout.dims)

    def amplitude(self, **levels: Level) -> complex:
        """Amplitude of one basis state, e.g. ``state.amplitude(atom1="e", cavity4=0)``."""
        missing = set(self.layout.labels) - set(levels)
        if missing:
            raise DimensionMismatchError(f"levels missing for {sorted(missing)}")
        for label in levels:
            self.layout.position(label)
        multi = [s.local_index(levels[s.label]) for s in self.layout.subsystems]
        return complex(self.amplitudes[self.layout.to_index(multi)])

    def populated(self, tol: float = NULL_PROBABILITY) -> Iterator[tuple[tuple[int, ...], complex]]:
        """Yield (multi-index, amplitude) of every basis state with |amplitude|^2 > tol."""
        for index in np.flatnonzero(np.abs(self.amplitudes) ** 2 > tol):
            yield self.layout.to_multi_index(int(index)), complex(self.amplitudes[index])


def require_normalized(state: StateVector, tol: float = INPUT_NORM_TOL) -> None:
    if not state.is_normalized(tol):
        raise UnnormalizedInputError(state.norm_squared())


def _local_vector(spec: SubsystemSpec, local: LocalState) -> np.ndarray:
    if isinstance(local, (str, int, np.integer)):
        vec = np.zeros(spec.dimension, dtype=np.complex128)
        vec[spec.local_index(local)] = 1.0
        return vec
    vec = np.asarray(local, dtype=np.complex128).reshape(-1)
    if vec.size != spec.dimension:
        raise DimensionMismatchError(
            f"{spec.label!r} expects {spec.dimension} amplitudes, got {vec.size}",
            {"label": spec.label, "expected": spec.dimension, "got": int(vec.size)},
        )
    return vec


def make_state(
    layout: SystemLayout,
    assignments: Union[Mapping[str, LocalState], Sequence[complex], np.ndarray],
) -> StateVector:
    """Build a normalized state.

    ``assignments`` is either a mapping label -> local state (a level such as
    ``"e"`` or ``1``, or a local amplitude vector), giving a product state, or
    an explicit amplitude list over the whole joint basis.
    """
    if isinstance(assignments, Mapping):
        for label in assignments:
            layout.position(label)
        missing = [label for label in layout.labels if label not in assignments]
        if missing:
            raise DimensionMismatchError(f"no local state given for {missing}", {"labels": missing})
        factors = [_local_vector(s, assignments[s.label]) for s in layout.subsystems]
        amplitudes = reduce(np.kron, factors)
    else:
        amplitudes = np.asarray(assignments, dtype=np.complex128)
    return StateVector(layout, amplitudes).normalized()


def from_terms(layout: SystemLayout, terms: Mapping[tuple[Level, ...], complex]) -> StateVector:
    """Normalized superposition of basis states, keyed by per-subsystem levels.

    ``from_terms(pair, {("e", "e"): a, ("g", "g"): b})`` is a|ee> + b|gg>.
    """
    amplitudes = np.zeros(layout.total_dimension, dtype=np.complex128)
    for levels, coefficient in terms.items():
        if len(levels) != len(layout.subsystems):
            raise DimensionMismatchError(f"term {levels!r} does not match {len(layout.subsystems)} subsystems")
        multi = [s.local_index(level) for s, level in zip(layout.subsystems, levels)]
        amplitudes[layout.to_index(multi)] += coefficient
    return StateVector(layout, amplitudes).normalized()


def tensor(left: StateVector, right: StateVector) -> StateVector:
    layout = left.layout.concat(right.layout)
    return StateVector(layout, np.kron(left.amplitudes, right.amplitudes))


def project(state: StateVector, label: str, cell: Sequence[int]) -> StateVector:
    """Unnormalized projection onto local indices ``cell`` of ``label``."""
    axis = state.layout.position(label)
    dim = state.layout.dims[axis]
    keep = np.zeros(dim, dtype=bool)
    for i in cell:
        if not 0 <= i < dim:
            raise DimensionMismatchError(f"index {i} outside [0, {dim}) for {label!r}")
        keep[i] = True
    shape = [1] * len(state.layout.dims)
    shape[axis] = dim
    return StateVector(state.layout, (state.as_tensor() * keep.reshape(shape)).reshape(-1))


class MeasurementSpec(BaseModel):
    """Coarse-grained projective measurement of one subsystem."""

    model_config = ConfigDict(frozen=True)

    target_label: str
    outcome_partition: tuple[tuple[str, frozenset[int]], ...]

    @model_validator(mode="after")
    def _check_disjoint(self) -> "MeasurementSpec":
        seen: set[int] = set()
        names = [name for name, _ in self.outcome_partition]
        repeated = sorted({name for name in names if names.count(name) > 1})
        if repeated:
            raise LabelCollisionError(f"repeated outcome names: {repeated}", {"outcomes": repeated})
        for name, cell in self.outcome_partition:
            if seen & cell:
                raise DimensionMismatchError(f"outcome {name!r} overlaps an earlier outcome")
            seen |= cell
        return self

    @classmethod
    def levels(cls, spec: SubsystemSpec) -> "MeasurementSpec":
        """Resolve every level: {g, e} for atoms, {0, 1, ...} for cavities."""
        return cls(
            target_label=spec.label,
            outcome_partition=tuple((spec.level_name(i), frozenset({i})) for i in range(spec.dimension)),
        )

    @classmethod
    def vacuum_detector(cls, spec: SubsystemSpec) -> "MeasurementSpec":
        """Ordinary photon detector: vacuum vs. any photon."""
        return cls(
            target_label=spec.label,
            outcome_partition=(
                ("vacuum", frozenset({0})),
                ("nonvacuum", frozenset(range(1, spec.dimension))),
            ),
        )

    def cell(self, outcome_name: str) -> frozenset[int]:
        for name, cell in self.outcome_partition:
            if name == outcome_name:
                return cell
        raise LabelMismatchError(f"measurement on {self.target_label!r} has no outcome {outcome_name!r}")

    def check_covers(self, dimension: int) -> None:
        covered = set().union(*(cell for _, cell in self.outcome_partition))
        if covered != set(range(dimension)):
            raise DimensionMismatchError(
                f"partition of {self.target_label!r} must cover 0..{dimension - 1}, covers {sorted(covered)}"
            )


class MeasurementOutcome:
    __slots__ = ("outcome_name", "probability", "post_state")

    def __init__(self, outcome_name: str, probability: float, post_state: Optional[StateVector]):
        self.outcome_name = outcome_name
        self.probability = probability
        self.post_state = post_state

    @property
    def is_null(self) -> bool:
        """True for outcomes too improbable to carry a post-measurement state."""
        return self.post_state is None

    def __repr__(self) -> str:
        return f"MeasurementOutcome(outcome_name={self.outcome_name!r}, probability={self.probability:.6g})"


def measure(state: StateVector, spec: MeasurementSpec) -> list[MeasurementOutcome]:
    """All outcomes of ``spec``, in partition order. Null outcomes are kept, flagged."""
    require_normalized(state)
    target = state.layout.spec(spec.target_label)
    spec.check_covers(target.dimension)
    outcomes = []
    for name, cell in spec.outcome_partition:
        projected = project(state, spec.target_label, sorted(cell))
        probability = projected.norm_squared()
        if probability < NULL_PROBABILITY:
            outcomes.append(MeasurementOutcome(name, probability, None))
        else:
            outcomes.append(MeasurementOutcome(name, probability, projected.normalized()))
    return outcomes


def _target_matrix(state: StateVector, target: StateVector) -> np.ndarray:
    """Reshape ``state`` to (target basis, complementary basis)."""
    positions = []
    for spec in target.layout.subsystems:
        if spec.label not in state.layout.labels:
            raise LabelMismatchError(
                f"target label {spec.label!r} not in state labels {state.layout.labels}",
                {"label": spec.label},
            )
        if state.layout.spec(spec.label) != spec:
            raise LabelMismatchError(f"subsystem {spec.label!r} differs between state and target")
        positions.append(state.layout.position(spec.label))
    moved = np.moveaxis(state.as_tensor(), positions, list(range(len(positions))))
    return moved.reshape(target.layout.total_dimension, -1)


def complementary_layout(state: StateVector, target: StateVector) -> SystemLayout:
    return SystemLayout(subsystems=tuple(s for s in state.layout.subsystems if s.label not in target.layout.labels))


def fidelity_against_pure(state: StateVector, target: StateVector) -> float:
    """<target| rho_sub |target>, summed branch by branch over the complementary basis."""
    require_normalized(state)
    require_normalized(target)
    overlaps = target.amplitudes.conj() @ _target_matrix(state, target)
    return float(np.sum(np.abs(overlaps) ** 2))


def branch_overlaps(state: StateVector, target: StateVector) -> tuple[SystemLayout, np.ndarray, np.ndarray]:
    """Per complementary basis state: (complementary layout, branch weights, target overlaps).

    Works on unnormalized states; overlaps are |<target|branch>|^2 with the
    branch normalized (0 for empty branches).
    """
    matrix = _target_matrix(state, target)
    weights = np.sum(np.abs(matrix) ** 2, axis=0)
    raw = np.abs(target.amplitudes.conj() @ matrix) ** 2
    overlaps = np.divide(raw, weights, out=np.zeros_like(raw), where=weights > NULL_PROBABILITY)
    return complementary_layout(state, target), weights, overlaps


def apply_local_phase(state: StateVector, label: str, phases: Sequence[float]) -> StateVector:
    """Multiply each amplitude by exp(i * phase) of ``label``'s local index."""
    axis = state.layout.position(label)
    dim = state.layout.dims[axis]
    phases = np.asarray(phases, dtype=float).reshape(-1)
    if phases.size != dim:
        raise DimensionMismatchError(f"{label!r} needs {dim} phases, got {phases.size}")
    shape = [1] * len(state.layout.dims)
    shape[axis] = dim
    factors = np.exp(1j * phases).reshape(shape)
    return StateVector(state.layout, (state.as_tensor() * factors).reshape(-1))
