"""
End-to-end checks of the published numbers, driven through the CLI.

Run: pytest tests/integration/ -v
"""

import csv
import io
import json
import math

import pytest
from click.testing import CliRunner

from cavity_swap.cli.main import main


def invoke(*args: str) -> str:
    result = CliRunner().invoke(main, list(args))
    assert result.exit_code == 0, result.output
    return result.stdout


def run_json(*args: str) -> dict:
    return json.loads(invoke("run", *args, "--json"))


class TestPublishedNumbers:
    """Fidelities and probabilities quoted for the two heralding variants."""

    def test_atom_measurement_at_b_06(self):
        data = run_json("--b", "0.6")
        assert data["fidelity"] == pytest.approx(0.9889, abs=5e-4)
        assert data["useful_probability"] == pytest.approx(0.2304, abs=1e-6)
        assert data["relative_phase"] == pytest.approx(math.pi / 2)

    def test_cavity_measurement_at_b_02(self):
        data = run_json("--variant", "cavity-vacuum", "--b", "0.2")
        assert data["fidelity"] == pytest.approx(0.96, abs=1e-6)
        assert data["outcome_probability"] == pytest.approx(0.04, abs=1e-6)
        assert data["useful_probability"] == pytest.approx(0.0384, abs=1e-6)

    def test_coefficient_error(self):
        data = run_json("--b", "0.6", "--k", "0.1")
        assert data["useful_probability"] == pytest.approx(0.24098, abs=5e-5)
        assert data["fidelity"] == pytest.approx(0.98463, abs=5e-5)

    @pytest.mark.parametrize("variant", ["atom", "cavity-vacuum"])
    def test_single_excitation_encoding_agrees(self, variant):
        same = run_json("--b", "0.4", "--k", "0.1", "--variant", variant)
        single = run_json("--b", "0.4", "--k", "0.1", "--variant", variant, "--encoding", "single")
        assert single["fidelity"] == pytest.approx(same["fidelity"], abs=1e-9)
        assert single["useful_probability"] == pytest.approx(same["useful_probability"], abs=1e-9)


class TestFidelityCurve:
    @pytest.fixture(scope="class")
    def rows(self):
        return list(csv.DictReader(io.StringIO(invoke("sweep", "--preset", "figure1"))))

    def test_row_count(self, rows):
        assert len(rows) == 91

    def test_matches_closed_form(self, rows):
        assert max(float(r["abs_deviation"]) for r in rows) < 1e-9

    def test_above_threshold_from_quarter(self, rows):
        assert min(float(r["fidelity"]) for r in rows if float(r["b"]) >= 0.25) > 0.9

    def test_peak_useful_probability(self):
        rows = list(csv.DictReader(io.StringIO(
            invoke("sweep", "--b-start", "0.005", "--b-stop", "0.995", "--b-step", "0.005")
        )))
        peak = max(rows, key=lambda r: float(r["useful_probability"]))
        assert float(peak["useful_probability"]) == pytest.approx(0.25, abs=1e-4)
        assert float(peak["b"]) == pytest.approx(0.7071, abs=5e-3)


def test_timing_budget():
    data = json.loads(invoke("timing", "--json"))
    assert data["interaction_time_s"] == pytest.approx(3.5e-5, rel=1e-2)
    assert data["total_time_s"] == pytest.approx(3.5e-4, rel=1e-2)
    assert data["feasible"] is True


def test_verification_suite():
    report = json.loads(invoke("verify", "--json"))
    assert report["passed"] is True
