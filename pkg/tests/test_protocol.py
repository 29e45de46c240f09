"""Tests for the swap protocol: both heralding variants, both encodings, Bob's readout."""

import math

import numpy as np
import pytest

from cavity_swap.analysis import fnew_formula, pnew_formula
from cavity_swap.errors import InvalidParamsError, LabelMismatchError, UnknownLabelError
from cavity_swap.models.enums import Encoding, Variant
from cavity_swap.models.params import GT_MAGIC, ProtocolParams
from cavity_swap.protocol import (
    ATOM_1,
    BOB_ATOM,
    CAVITY_4,
    bell_pair,
    bob_readout,
    cavity_vacuum_weight,
    evolve,
    exact_branch_decomposition,
    herald,
    prepare_initial,
    readout_fidelity,
    run_swap,
    target_phase,
    target_state,
    to_standard_form,
)
from cavity_swap.qstate import (
    MeasurementSpec,
    SubsystemSpec,
    SystemLayout,
    fidelity_against_pure,
    make_state,
    measure,
    tensor,
)

COS2_HALF_PHASES = [math.pi / 4, 3 * math.pi / 4, 5 * math.pi / 4, 7 * math.pi / 4]


def magic_cos2() -> float:
    return math.cos(math.sqrt(2) * GT_MAGIC) ** 2


# ── preparation and targets ──────────────────────────────────────────────

class TestPreparation:
    def test_same_excitation_terms(self):
        state = prepare_initial(ProtocolParams(b=0.6))
        assert state.layout.labels == ("atom1", "atom2", "cavity3", "cavity4")
        assert state.amplitude(atom1="e", atom2="e", cavity3=1, cavity4=1) == pytest.approx(0.64)
        assert state.amplitude(atom1="g", atom2="g", cavity3=0, cavity4=0) == pytest.approx(0.36)

    def test_single_excitation_terms(self):
        state = prepare_initial(ProtocolParams(b=0.6, encoding=Encoding.SINGLE))
        assert state.amplitude(atom1="g", atom2="e", cavity3=1, cavity4=0) == pytest.approx(0.64)
        assert state.amplitude(atom1="e", atom2="g", cavity3=0, cavity4=1) == pytest.approx(0.36)

    def test_coefficient_error(self):
        state = prepare_initial(ProtocolParams(b=0.6, k=0.1))
        a_c = math.sqrt(1 - 0.66 ** 2)
        assert state.amplitude(atom1="g", atom2="g", cavity3=0, cavity4=0) == pytest.approx(0.6 * 0.66)
        assert state.amplitude(atom1="e", atom2="e", cavity3=1, cavity4=1) == pytest.approx(0.8 * a_c)

    def test_truncation_sets_cavity_dimension(self):
        state = prepare_initial(ProtocolParams(cavity_truncation=5))
        assert state.layout.dims == (2, 2, 5, 5)

    def test_target_at_magic_phase(self):
        target = target_state(ProtocolParams())
        assert target.amplitude(atom1="e", cavity4=0) == pytest.approx(1 / math.sqrt(2))
        assert target.amplitude(atom1="g", cavity4=1) == pytest.approx(1j / math.sqrt(2))

    def test_target_phase_by_encoding(self):
        assert target_phase(Encoding.SAME, GT_MAGIC) == pytest.approx(math.pi / 2)
        assert target_phase(Encoding.SINGLE, GT_MAGIC) == pytest.approx(-math.pi / 2)

    def test_heralds(self):
        spec, keep = herald(ProtocolParams())
        assert (spec.target_label, keep) == ("atom2", "e")
        spec, keep = herald(ProtocolParams(variant=Variant.MEASURE_CAVITY_VACUUM))
        assert (spec.target_label, keep) == ("cavity3", "vacuum")


# ── measuring atom 2 ─────────────────────────────────────────────────────

class TestMeasureAtom:
    def test_reference_point(self):
        result = run_swap(ProtocolParams(b=0.6))
        assert result.fidelity == pytest.approx(0.9889, abs=5e-4)
        assert result.useful_probability == pytest.approx(0.2304, abs=1e-6)
        assert result.outcome_probability == pytest.approx(0.2304 + 0.4096 * magic_cos2(), abs=1e-12)
        assert result.relative_phase == pytest.approx(math.pi / 2)

    def test_outcome_probability_exceeds_useful(self):
        result = run_swap(ProtocolParams(b=0.6))
        assert result.outcome_probability == pytest.approx(0.23295, abs=1e-5)
        assert result.outcome_probability > result.useful_probability

    @pytest.mark.parametrize("b", np.round(np.arange(0.05, 1.0, 0.05), 10))
    @pytest.mark.parametrize("gt", COS2_HALF_PHASES)
    def test_useful_probability_is_b2a2(self, b, gt):
        result = run_swap(ProtocolParams(b=b, gt_clare=gt))
        assert result.useful_probability == pytest.approx(b ** 2 * (1 - b ** 2), abs=1e-12)
        assert result.target_weight == pytest.approx(result.useful_probability, abs=1e-12)

    def test_error_model_reference(self):
        result = run_swap(ProtocolParams(b=0.6, k=0.1))
        assert result.useful_probability == pytest.approx(0.24098, abs=5e-5)
        assert result.fidelity == pytest.approx(0.98463, abs=5e-5)

    @pytest.mark.parametrize("b", np.round(np.arange(0.1, 0.95, 0.1), 10))
    @pytest.mark.parametrize("k", [-0.2, -0.1, 0.0, 0.1, 0.2])
    def test_error_model_matches_closed_forms(self, b, k):
        if b * (1 + k) >= 1:
            pytest.skip("cavity coefficient out of range")
        result = run_swap(ProtocolParams(b=b, k=k))
        assert result.useful_probability == pytest.approx(pnew_formula(b, k), abs=1e-9)
        assert result.fidelity == pytest.approx(fnew_formula(b, k), abs=1e-9)

    def test_fidelity_above_threshold_for_b_from_quarter(self):
        for b in np.round(np.arange(0.25, 0.96, 0.01), 10):
            assert run_swap(ProtocolParams(b=b)).fidelity > 0.9

    def test_larger_truncation_changes_nothing(self):
        small = run_swap(ProtocolParams(b=0.4, k=0.05))
        large = run_swap(ProtocolParams(b=0.4, k=0.05, cavity_truncation=6))
        assert large.fidelity == pytest.approx(small.fidelity, abs=1e-12)
        assert large.outcome_probability == pytest.approx(small.outcome_probability, abs=1e-12)


# ── measuring cavity 3 ───────────────────────────────────────────────────

class TestMeasureCavityVacuum:
    def test_reference_point(self):
        result = run_swap(ProtocolParams(b=0.2, variant=Variant.MEASURE_CAVITY_VACUUM))
        assert result.fidelity == pytest.approx(0.96, abs=1e-6)
        assert result.outcome_probability == pytest.approx(0.04, abs=1e-6)
        assert result.useful_probability == pytest.approx(0.0384, abs=1e-6)

    @pytest.mark.parametrize("b", np.round(np.arange(0.1, 0.95, 0.1), 10))
    def test_fidelity_and_probability(self, b):
        result = run_swap(ProtocolParams(b=b, variant=Variant.MEASURE_CAVITY_VACUUM))
        assert result.fidelity == pytest.approx(1 - b ** 2, abs=1e-9)
        assert result.outcome_probability == pytest.approx(b ** 2, abs=1e-9)

    def test_vacuum_probability_is_b2_via_measure(self):
        for b in (0.3, 0.5, 0.7):
            params = ProtocolParams(b=b, variant=Variant.MEASURE_CAVITY_VACUUM)
            spec, _ = herald(params)
            vacuum = measure(evolve(params), spec)[0]
            assert vacuum.outcome_name == "vacuum"
            assert vacuum.probability == pytest.approx(b ** 2, abs=1e-12)


# ── encodings ────────────────────────────────────────────────────────────

class TestEncodingEquivalence:
    @pytest.mark.parametrize("variant", list(Variant))
    @pytest.mark.parametrize("b", np.round(np.arange(0.1, 0.95, 0.1), 10))
    @pytest.mark.parametrize("k", [-0.1, 0.0, 0.1])
    def test_same_results(self, variant, b, k):
        same = run_swap(ProtocolParams(b=b, k=k, variant=variant))
        single = run_swap(ProtocolParams(b=b, k=k, variant=variant, encoding=Encoding.SINGLE))
        assert single.fidelity == pytest.approx(same.fidelity, abs=1e-9)
        assert single.useful_probability == pytest.approx(same.useful_probability, abs=1e-9)

    def test_single_excitation_target(self):
        target = target_state(ProtocolParams(encoding=Encoding.SINGLE))
        assert target.amplitude(atom1="e", cavity4=0) == pytest.approx(1 / math.sqrt(2))
        assert target.amplitude(atom1="g", cavity4=1) == pytest.approx(-1j / math.sqrt(2))


# ── branches ─────────────────────────────────────────────────────────────

class TestBranchDecomposition:
    def test_measure_atom_branches(self):
        params = ProtocolParams(b=0.6)
        detector, keep = herald(params)
        branches = exact_branch_decomposition(evolve(params), detector, target_state(params), keep)
        by_label = {b.label: b for b in branches}
        assert set(by_label) == {"atom2=e, cavity3=0", "atom2=e, cavity3=1"}
        assert by_label["atom2=e, cavity3=0"].weight == pytest.approx(0.2304, abs=1e-12)
        assert by_label["atom2=e, cavity3=0"].overlap == pytest.approx(1.0, abs=1e-12)
        assert by_label["atom2=e, cavity3=1"].weight == pytest.approx(0.4096 * magic_cos2(), abs=1e-12)
        assert by_label["atom2=e, cavity3=1"].overlap == pytest.approx(0.0, abs=1e-12)
        assert by_label["atom2=e, cavity3=1"].weight == pytest.approx(0.002548, abs=1e-5)

    def test_cavity_vacuum_branches(self):
        params = ProtocolParams(b=0.2, variant=Variant.MEASURE_CAVITY_VACUUM)
        detector, keep = herald(params)
        branches = exact_branch_decomposition(evolve(params), detector, target_state(params), keep)
        by_label = {b.label: b for b in branches}
        assert by_label["atom2=e, cavity3=0"].weight == pytest.approx(0.0384, abs=1e-12)
        assert by_label["atom2=g, cavity3=0"].weight == pytest.approx(0.0016, abs=1e-12)
        useful = by_label["atom2=e, cavity3=0"].weight
        assert useful / sum(b.weight for b in branches) == pytest.approx(0.96, abs=1e-12)

    def test_heralded_state_weights_sum_to_one(self):
        result = run_swap(ProtocolParams(b=0.5, k=0.1))
        detector, _ = herald(result.params)
        branches = exact_branch_decomposition(result.post_state, detector, result.target_state)
        assert sum(b.weight for b in branches) == pytest.approx(1.0, abs=1e-12)
        assert sum(b.weight * b.overlap for b in branches) == pytest.approx(result.fidelity, abs=1e-12)

    def test_ideal_product_state(self):
        target = target_state(ProtocolParams())
        state = tensor(target, make_state(SystemLayout.of(SubsystemSpec.atom("atom2")), {"atom2": "g"}))
        branches = exact_branch_decomposition(state, MeasurementSpec.levels(SubsystemSpec.atom("atom2")), target)
        assert len(branches) == 1
        assert branches[0].label == "atom2=g"
        assert branches[0].weight == pytest.approx(1.0)
        assert branches[0].overlap == pytest.approx(1.0)

    def test_detector_label_missing(self):
        target = target_state(ProtocolParams())
        with pytest.raises(LabelMismatchError):
            exact_branch_decomposition(target, MeasurementSpec.levels(SubsystemSpec.atom("atom2")), target)


# ── standard form and readout ────────────────────────────────────────────

class TestReadout:
    def test_standard_form(self):
        params = ProtocolParams()
        standard = to_standard_form(target_state(params), target_phase(params.encoding, params.gt_clare))
        plain = bell_pair(SubsystemSpec.atom(ATOM_1), SubsystemSpec.cavity(CAVITY_4), 0.0)
        assert fidelity_against_pure(standard, plain) == pytest.approx(1.0, abs=1e-12)

    def test_ideal_state_maps_to_atom_pair(self):
        readout = bob_readout(target_state(ProtocolParams()))
        assert readout.layout.labels == (ATOM_1, CAVITY_4, BOB_ATOM)
        assert readout_fidelity(readout) == pytest.approx(1.0, abs=1e-12)
        assert cavity_vacuum_weight(readout, CAVITY_4) == pytest.approx(1.0, abs=1e-12)
        assert readout.amplitude(atom1="e", cavity4=0, atomB="g") == pytest.approx(1 / math.sqrt(2))
        assert readout.amplitude(atom1="g", cavity4=0, atomB="e") == pytest.approx(1 / math.sqrt(2))

    def test_run_swap_with_readout(self):
        result = run_swap(ProtocolParams(b=0.6, bob_readout=True))
        assert result.bob_state is not None
        assert result.bob_fidelity == pytest.approx(result.fidelity, abs=1e-12)
        assert "bob_fidelity" in result.summary()

    def test_single_encoding_readout(self):
        result = run_swap(ProtocolParams(b=0.6, encoding=Encoding.SINGLE, bob_readout=True))
        assert result.bob_fidelity == pytest.approx(result.fidelity, abs=1e-12)

    def test_readout_needs_cavity_4(self):
        state = make_state(SystemLayout.of(SubsystemSpec.atom(ATOM_1)), {ATOM_1: "e"})
        with pytest.raises(UnknownLabelError):
            bob_readout(state)

    def test_summary_without_readout(self):
        summary = run_swap(ProtocolParams()).summary()
        assert summary["variant"] == "atom"
        assert summary["target_weight"] == pytest.approx(summary["useful_probability"], abs=1e-12)
        assert "bob_fidelity" not in summary


def test_readout_without_heralded_state():
    result = run_swap(ProtocolParams(b=0.6))
    with pytest.raises(InvalidParamsError):
        bob_readout(result.model_copy(update={"post_state": None}))
