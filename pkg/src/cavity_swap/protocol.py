"""
Entanglement swapping through one resonant atom-cavity interaction.

Alice holds atom 1, Clare holds atom 2 and cavity 3, Bob holds cavity 4.
Atoms (1, 2) and cavities (3, 4) start as two entangled pairs. Clare sends
atom 2 through cavity 3, then measures either atom 2 (heralding |e>) or
cavity 3 with a vacuum/non-vacuum detector (heralding vacuum). The heralded
state leaves atom 1 and cavity 4 close to a maximally entangled state.
"""

from __future__ import annotations

import cmath
import logging
import math
from typing import Any, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict

from cavity_swap.dynamics import JCInteraction, jc_propagate
from cavity_swap.errors import InvalidParamsError, LabelMismatchError
from cavity_swap.models.enums import Encoding, Variant
from cavity_swap.models.params import GT_SWAP, ProtocolParams
from cavity_swap.models.records import BranchRecord
from cavity_swap.qstate import (
    NULL_PROBABILITY,
    MeasurementSpec,
    StateVector,
    SubsystemSpec,
    SystemLayout,
    apply_local_phase,
    branch_overlaps,
    fidelity_against_pure,
    from_terms,
    make_state,
    measure,
    project,
    tensor,
)

logger = logging.getLogger(__name__)

ATOM_1 = "atom1"
ATOM_2 = "atom2"
CAVITY_3 = "cavity3"
CAVITY_4 = "cavity4"
BOB_ATOM = "atomB"

HERALD_OUTCOME = {
    Variant.MEASURE_ATOM: "e",
    Variant.MEASURE_CAVITY_VACUUM: "vacuum",
}


class ProtocolResult(BaseModel):
    """One swap run.

    ``useful_probability`` is the weight of the coincidence branch (atom 2
    excited and cavity 3 empty), the quantity quoted as the success
    probability; ``target_weight`` is outcome_probability × fidelity. The two
    agree whenever that branch is parallel to the target, e.g. for k = 0.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    params: ProtocolParams
    outcome_probability: float
    fidelity: float
    useful_probability: float
    relative_phase: float
    post_state: Optional[StateVector]
    target_state: StateVector
    bob_state: Optional[StateVector] = None
    bob_fidelity: Optional[float] = None

    @property
    def target_weight(self) -> float:
        return self.outcome_probability * self.fidelity

    def summary(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "variant": self.params.variant.value,
            "encoding": self.params.encoding.value,
            "b": self.params.b,
            "k": self.params.k,
            "gt": self.params.gt_clare,
            "outcome_probability": self.outcome_probability,
            "fidelity": self.fidelity,
            "useful_probability": self.useful_probability,
            "target_weight": self.target_weight,
            "relative_phase": self.relative_phase,
        }
        if self.bob_fidelity is not None:
            data["bob_fidelity"] = self.bob_fidelity
        return data


def prepare_initial(params: ProtocolParams) -> StateVector:
    """Atom pair (1, 2) ⊗ cavity pair (3, 4), layout (atom1, atom2, cavity3, cavity4)."""
    a, b = params.a, params.b
    a_c, b_c = params.a_cavity, params.b_cavity
    atoms = SystemLayout.of(SubsystemSpec.atom(ATOM_1), SubsystemSpec.atom(ATOM_2))
    cavities = SystemLayout.of(
        SubsystemSpec.cavity(CAVITY_3, params.cavity_truncation),
        SubsystemSpec.cavity(CAVITY_4, params.cavity_truncation),
    )
    if params.encoding == Encoding.SAME:
        atom_pair = from_terms(atoms, {("e", "e"): a, ("g", "g"): b})
        cavity_pair = from_terms(cavities, {(1, 1): a_c, (0, 0): b_c})
    else:
        atom_pair = from_terms(atoms, {("g", "e"): a, ("e", "g"): b})
        cavity_pair = from_terms(cavities, {(1, 0): a_c, (0, 1): b_c})
    return tensor(atom_pair, cavity_pair)


def target_phase(encoding: Encoding, gt: float) -> float:
    """Relative phase θ of the heralded one-excitation branch, as |e,0> + e^{iθ}|g,1>.

    The same-excitation encoding carries cos(gt) on |e,0> and -i sin(gt) on
    |g,1>; the single-excitation encoding swaps the two.
    """
    on_e0, on_g1 = complex(math.cos(gt)), -1j * math.sin(gt)
    if encoding == Encoding.SINGLE:
        on_e0, on_g1 = on_g1, on_e0
    return cmath.phase(on_g1) - cmath.phase(on_e0)


def bell_pair(first: SubsystemSpec, second: SubsystemSpec, theta: float, levels=((1, 0), (0, 1))) -> StateVector:
    """(|levels[0]> + e^{iθ}|levels[1]>)/√2 on (first, second)."""
    layout = SystemLayout.of(first, second)
    return from_terms(layout, {levels[0]: 1.0, levels[1]: cmath.exp(1j * theta)})


def target_state(params: ProtocolParams) -> StateVector:
    """Maximally entangled (atom 1, cavity 4) state; equals (|e,0> + i|g,1>)/√2 at gt = 7π/4."""
    return bell_pair(
        SubsystemSpec.atom(ATOM_1),
        SubsystemSpec.cavity(CAVITY_4, params.cavity_truncation),
        target_phase(params.encoding, params.gt_clare),
    )


def herald(params: ProtocolParams) -> tuple[MeasurementSpec, str]:
    """Clare's detector and the outcome she keeps."""
    if params.variant == Variant.MEASURE_ATOM:
        spec = MeasurementSpec.levels(SubsystemSpec.atom(ATOM_2))
    else:
        spec = MeasurementSpec.vacuum_detector(SubsystemSpec.cavity(CAVITY_3, params.cavity_truncation))
    return spec, HERALD_OUTCOME[params.variant]


def coincidence_weight(evolved: StateVector) -> float:
    """Probability of finding atom 2 in |e> and cavity 3 empty."""
    return project(project(evolved, ATOM_2, [1]), CAVITY_3, [0]).norm_squared()


def evolve(params: ProtocolParams) -> StateVector:
    return jc_propagate(prepare_initial(params), JCInteraction(atom_label=ATOM_2, cavity_label=CAVITY_3,
                                                               phase=params.gt_clare))


def run_swap(params: ProtocolParams) -> ProtocolResult:
    evolved = evolve(params)
    detector, keep = herald(params)
    outcome = next(o for o in measure(evolved, detector) if o.outcome_name == keep)
    target = target_state(params)

    fidelity = 0.0 if outcome.is_null else fidelity_against_pure(outcome.post_state, target)
    result = ProtocolResult(
        params=params,
        outcome_probability=outcome.probability,
        fidelity=fidelity,
        useful_probability=coincidence_weight(evolved),
        relative_phase=target_phase(params.encoding, params.gt_clare),
        post_state=outcome.post_state,
        target_state=target,
    )
    logger.debug("swap b=%g k=%g gt=%g %s/%s: P=%.6g F=%.6g useful=%.6g",
                 params.b, params.k, params.gt_clare, params.variant, params.encoding,
                 result.outcome_probability, result.fidelity, result.useful_probability)

    if params.bob_readout and not outcome.is_null:
        bob_state = bob_readout(result, params.gt_bob)
        result = result.model_copy(update={
            "bob_state": bob_state,
            "bob_fidelity": readout_fidelity(bob_state, result.relative_phase, params.gt_bob),
        })
    return result


def bob_readout(result: Union[ProtocolResult, StateVector], gt_bob: float = GT_SWAP) -> StateVector:
    """Send a fresh ground-state atom through cavity 4 and return the joint state.

    At gt_bob = π/2 the cavity's single excitation moves onto Bob's atom.
    """
    state = result.post_state if isinstance(result, ProtocolResult) else result
    if state is None:
        raise InvalidParamsError("heralded outcome never occurs; nothing to read out")
    state.layout.position(CAVITY_4)
    bob = make_state(SystemLayout.of(SubsystemSpec.atom(BOB_ATOM)), {BOB_ATOM: "g"})
    return jc_propagate(tensor(state, bob), JCInteraction(atom_label=BOB_ATOM, cavity_label=CAVITY_4, phase=gt_bob))


def readout_target(theta: float = math.pi / 2, gt_bob: float = GT_SWAP) -> StateVector:
    """Two-atom state Bob's readout maps (|e,0> + e^{iθ}|g,1>)/√2 onto; (|eg> + |ge>)/√2 for θ = gt_bob = π/2."""
    phase = theta + cmath.phase(-1j * math.sin(gt_bob))
    return bell_pair(SubsystemSpec.atom(ATOM_1), SubsystemSpec.atom(BOB_ATOM), phase)


def readout_fidelity(state: StateVector, theta: float = math.pi / 2, gt_bob: float = GT_SWAP) -> float:
    return fidelity_against_pure(state, readout_target(theta, gt_bob))


def cavity_vacuum_weight(state: StateVector, label: str = CAVITY_4) -> float:
    return project(state, label, [0]).norm_squared()


def to_standard_form(state: StateVector, theta: float) -> StateVector:
    """Remove the relative phase θ with a local rotation of atom 1's |g> component."""
    return apply_local_phase(state, ATOM_1, [-theta, 0.0])


def exact_branch_decomposition(
    state: StateVector,
    detector: MeasurementSpec,
    target: StateVector,
    outcome: Optional[str] = None,
) -> list[BranchRecord]:
    """Orthogonal branches of a heralded state, one per non-target basis state.

    With ``outcome`` the state is first projected (unnormalized) onto that
    detector cell, so weights are joint probabilities; without it ``state``
    is taken as already heralded. Empty branches are omitted.
    """
    if detector.target_label not in state.layout.labels:
        raise LabelMismatchError(f"detector label {detector.target_label!r} not in state")
    heralded = state if outcome is None else project(state, detector.target_label, sorted(detector.cell(outcome)))
    rest, weights, overlaps = branch_overlaps(heralded, target)
    branches = []
    for j in np.flatnonzero(weights > NULL_PROBABILITY):
        multi = np.unravel_index(int(j), rest.dims) if rest.subsystems else ()
        levels = {s.label: int(i) for s, i in zip(rest.subsystems, multi)}
        label = ", ".join(f"{s.label}={s.level_name(i)}" for s, i in zip(rest.subsystems, levels.values()))
        branches.append(BranchRecord(label=label or "all", levels=levels,
                                     weight=float(weights[j]), overlap=float(overlaps[j])))
    return branches
