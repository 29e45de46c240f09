"""
Resonant Jaynes-Cummings evolution of one atom-cavity pair inside a larger state.

H = g (a S+ + a† S-). Time enters only through the dimensionless phase g·t.
``jc_propagate`` rotates each excitation manifold {|e,n>, |g,n+1>} in closed
form; ``jc_propagate_oracle`` exponentiates the dense Hamiltonian instead and
exists to cross-check it.
"""

import logging
import math
from functools import reduce

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator
from scipy.linalg import eigh

from cavity_swap.errors import InvalidParamsError, LabelMismatchError, TruncationLeakError
from cavity_swap.models.enums import SubsystemKind
from cavity_swap.qstate import StateVector, SystemLayout, require_normalized

logger = logging.getLogger(__name__)

LEAK_TOL = 1e-15

SIGMA_PLUS = np.array([[0, 0], [1, 0]], dtype=np.complex128)  # |e><g|, g = 0, e = 1


class JCInteraction(BaseModel):
    model_config = ConfigDict(frozen=True)

    atom_label: str
    cavity_label: str
    phase: float

    @model_validator(mode="after")
    def _check_phase(self) -> "JCInteraction":
        if not math.isfinite(self.phase):
            raise InvalidParamsError(f"interaction phase must be finite, got {self.phase}")
        return self


def _pair_positions(layout: SystemLayout, interaction: JCInteraction) -> tuple[int, int]:
    atom = layout.position(interaction.atom_label)
    cavity = layout.position(interaction.cavity_label)
    if layout.subsystems[atom].kind != SubsystemKind.ATOM:
        raise LabelMismatchError(f"{interaction.atom_label!r} is not an atom")
    if layout.subsystems[cavity].kind != SubsystemKind.CAVITY:
        raise LabelMismatchError(f"{interaction.cavity_label!r} is not a cavity")
    return atom, cavity


def _pair_tensor(state: StateVector, interaction: JCInteraction) -> tuple[np.ndarray, int, int]:
    """State tensor with (atom, cavity) moved to the first two axes, leak-checked."""
    atom, cavity = _pair_positions(state.layout, interaction)
    pair = np.moveaxis(state.as_tensor(), (atom, cavity), (0, 1))
    top = pair.shape[1] - 1
    leaked = float(np.max(np.abs(pair[1, top]) ** 2, initial=0.0))
    if leaked > LEAK_TOL:
        logger.debug("truncation leak on %s/%s: |e,%d> weight %.3g",
                     interaction.atom_label, interaction.cavity_label, top, leaked)
        raise TruncationLeakError(
            f"|e,{top}> of ({interaction.atom_label}, {interaction.cavity_label}) is populated; "
            f"evolution would leave the {top + 1}-level cavity space",
            {"weight": leaked, "cavity_dimension": top + 1},
        )
    return pair, atom, cavity


def jc_propagate(state: StateVector, interaction: JCInteraction) -> StateVector:
    """Closed-form resonant evolution for phase g·t.

    |e,n>   -> cos(√(n+1)gt)|e,n>   - i sin(√(n+1)gt)|g,n+1>
    |g,n+1> -> cos(√(n+1)gt)|g,n+1> - i sin(√(n+1)gt)|e,n>
    |g,0> is stationary; every other subsystem is a spectator.
    """
    require_normalized(state)
    pair, atom, cavity = _pair_tensor(state, interaction)
    out = pair.copy()
    for n in range(pair.shape[1] - 1):
        rabi = math.sqrt(n + 1) * interaction.phase
        c, s = math.cos(rabi), math.sin(rabi)
        excited, ground = pair[1, n], pair[0, n + 1]
        out[1, n] = c * excited - 1j * s * ground
        out[0, n + 1] = c * ground - 1j * s * excited
    return StateVector(state.layout, np.moveaxis(out, (0, 1), (atom, cavity)).reshape(-1))


def jc_hamiltonian_matrix(layout: SystemLayout, interaction: JCInteraction) -> np.ndarray:
    """Joint-space matrix of a S+ + a† S- (units of g); identity on spectators."""
    atom, cavity = _pair_positions(layout, interaction)
    dim = layout.dims[cavity]
    annihilate = np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1).astype(np.complex128)

    def embed(atom_op: np.ndarray, cavity_op: np.ndarray) -> np.ndarray:
        ops = [np.eye(d, dtype=np.complex128) for d in layout.dims]
        ops[atom] = atom_op
        ops[cavity] = cavity_op
        return reduce(np.kron, ops)

    return embed(SIGMA_PLUS, annihilate) + embed(SIGMA_PLUS.conj().T, annihilate.conj().T)


def jc_unitary(layout: SystemLayout, interaction: JCInteraction) -> np.ndarray:
    """exp(-i·gt·H) by Hermitian diagonalization."""
    energies, vectors = eigh(jc_hamiltonian_matrix(layout, interaction))
    return (vectors * np.exp(-1j * interaction.phase * energies)) @ vectors.conj().T


def jc_propagate_oracle(state: StateVector, interaction: JCInteraction) -> StateVector:
    require_normalized(state)
    _pair_tensor(state, interaction)
    return StateVector(state.layout, jc_unitary(state.layout, interaction) @ state.amplitudes)
