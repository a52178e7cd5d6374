"""Tests for extdim.report module."""

import json
from pathlib import Path

import pytest

from extdim.config import RunSettings, SubsetMode
from extdim.fileformat import load_document
from extdim.homological import PdResult
from extdim.report import build_report, render_csv, render_json, render_text

CORPUS_FILES = sorted((Path(__file__).resolve().parents[2] / "corpus").glob("*.alg"))

JSON_KEYS = [
    "algebra",
    "field",
    "dimension",
    "loewy_length",
    "global_dimension",
    "pd_simple",
    "ll_projective",
    "subsets",
    "best",
    "endpoints",
    "annotations",
    "seeds",
    "version",
]


class TestBuildReport:
    """Test the invariants collected for one algebra."""

    def test_a2(self, a2):
        report = build_report(a2)
        assert report.dimension == 3
        assert report.loewy_length == 2
        assert report.global_dimension == PdResult.exactly(1)
        assert report.best_bound == 1
        assert report.endpoints == {"empty": True, "all": True}
        assert report.cutoff_limited == []

    def test_square_zero_exhaustive(self, square_zero_4):
        report = build_report(square_zero_4, RunSettings(subsets=SubsetMode.EXHAUSTIVE))
        assert report.best_bound == 1
        assert len(report.subsets) == 16

    def test_cutoff_limited_warns(self, square_zero_4, caplog_extdim):
        report = build_report(square_zero_4, RunSettings(cutoff=1))
        assert report.cutoff_limited == ["3", "4"]
        assert "not settled within cutoff 1" in caplog_extdim.text

    def test_annotations(self, a2):
        report = build_report(a2, annotations=["hereditary"])
        assert report.annotations == ["hereditary"]
        assert "  Note: hereditary" in render_text(report)


class TestRendering:
    """Test the three output formats."""

    def test_json_key_order(self, a2):
        data = json.loads(render_json(build_report(a2)))
        assert list(data) == JSON_KEYS
        assert data["seeds"] == {"decompose": 0xE3D1}
        assert data["pd_simple"][0] == {"vertex": "1", "kind": "exactly", "value": 1}

    def test_json_is_deterministic(self, a2):
        assert render_json(build_report(a2)) == render_json(build_report(a2))

    def test_timing_only_when_requested(self, a2):
        data = json.loads(render_json(build_report(a2, timing=True)))
        assert list(data)[-1] == "timing"
        assert "Time:" in render_text(build_report(a2, timing=True))
        assert "Time:" not in render_text(build_report(a2))

    def test_csv(self, a2):
        lines = render_csv(build_report(a2)).splitlines()
        assert lines[0] == "vertex,pd_simple,ll_projective"
        assert lines[1].startswith("1,1,")
        assert len(lines) == 3

    def test_text(self, a2):
        text = render_text(build_report(a2))
        assert text.startswith("Algebra linear_n2 over Q, dimension 3")
        assert "S(1)=1, S(2)=0" in text
        assert "Best bound:        1 from {}" in text


@pytest.mark.slow
class TestCorpusDeterminism:
    """Test that reports are byte-identical across runs."""

    @pytest.mark.parametrize("path", CORPUS_FILES, ids=lambda p: p.stem)
    def test_two_runs_agree(self, path):
        first = build_report(load_document(path).algebra)
        second = build_report(load_document(path).algebra)
        assert render_json(first) == render_json(second)
        assert render_csv(first) == render_csv(second)
