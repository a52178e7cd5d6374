"""Tests for extdim.corpus module."""

import pytest

from extdim.config import RunSettings, SubsetMode
from extdim.corpus import (
    BUILTIN_FAMILIES,
    CorpusEntry,
    CorpusError,
    add_entry,
    builtin_algebra,
    builtin_algebra_text,
    discover,
    format_pd,
    load_entry,
    parse_golden,
    run_corpus,
    run_entry,
)
from extdim.field import FieldSpec
from extdim.homological import PdResult

SMALL_ENTRIES = ["a2", "a3", "exterior_2", "square_zero_4"]


class TestParseGolden:
    """Test the golden file syntax."""

    def test_values_and_notes(self):
        text = (
            "# comment\n"
            "\n"
            "loewy_length = 5  # CITED fork family\n"
            "pd S(6) = 3  # DERIVED minimal resolution\n"
            "ll {2, 3} P(1) = 2  # DERIVED\n"
            "note = hereditary  # CITED\n"
        )
        values, notes = parse_golden(text)
        assert [(v.key, v.value, v.tag) for v in values] == [
            ("loewy_length", "5", "CITED"),
            ("pd S(6)", "3", "DERIVED"),
            ("ll {2, 3} P(1)", "2", "DERIVED"),
        ]
        assert values[0].source == "fork family"
        assert values[1].line == 4
        assert notes == ["hereditary [CITED]"]

    def test_missing_tag(self):
        with pytest.raises(CorpusError, match="no provenance tag"):
            parse_golden("dimension = 3\n", "x.golden")

    def test_unknown_tag(self):
        with pytest.raises(CorpusError, match="unknown provenance tag 'GUESSED'"):
            parse_golden("dimension = 3  # GUESSED\n")

    def test_unknown_key(self):
        with pytest.raises(CorpusError, match="unknown golden key 'colour'"):
            parse_golden("colour = red  # CITED\n")

    def test_malformed_line(self):
        with pytest.raises(CorpusError, match="x.golden:1"):
            parse_golden("just words\n", "x.golden")


class TestDiscover:
    """Test corpus discovery."""

    def test_shipped_corpus(self, corpus_dir):
        names = [e.name for e in discover(corpus_dir)]
        assert names == sorted(names)
        assert {"a2", "fork_n5", "fork_n6", "fork_n7", "square_zero_4"} <= set(names)
        assert all(e.golden for e in discover(corpus_dir))

    def test_missing_directory(self, temp_dir):
        with pytest.raises(CorpusError, match="not found"):
            discover(temp_dir / "nowhere")

    def test_orphan_golden(self, temp_dir):
        (temp_dir / "lost.golden").write_text("dimension = 1  # DERIVED\n")
        with pytest.raises(CorpusError, match="lost.golden"):
            discover(temp_dir)

    def test_entry_without_golden(self, temp_dir):
        (temp_dir / "bare.alg").write_text(builtin_algebra_text("linear", 2))
        entry = load_entry(temp_dir / "bare.alg")
        assert entry.golden == []
        assert entry.golden_file.name == "bare.golden"


class TestRunEntry:
    """Test golden comparison."""

    @pytest.mark.parametrize("name", SMALL_ENTRIES)
    def test_small_entries_pass(self, corpus_dir, name):
        result = run_entry(load_entry(corpus_dir / f"{name}.alg"))
        assert result.passed, [str(m) for m in result.mismatches] or result.error

    def test_mismatch(self, temp_dir):
        (temp_dir / "a2.alg").write_text(builtin_algebra_text("linear", 2))
        (temp_dir / "a2.golden").write_text("dimension = 4  # DERIVED\nbound {} = 1  # DERIVED\n")
        result = run_entry(load_entry(temp_dir / "a2.alg"))
        assert not result.passed
        assert [str(m) for m in result.mismatches] == ["dimension: expected 4, got 3"]

    def test_broken_algebra_file(self, temp_dir):
        path = temp_dir / "broken.alg"
        path.write_text("vertices 2\narrow a : 1 -> 9\n")
        result = run_entry(CorpusEntry("broken", path))
        assert not result.passed
        assert result.error is not None

    def test_run_corpus_keeps_order(self, corpus_dir):
        entries = [load_entry(corpus_dir / f"{name}.alg") for name in ("a3", "a2")]
        results = run_corpus(entries, RunSettings(subsets=SubsetMode.EXHAUSTIVE), jobs=2)
        assert [r.name for r in results] == ["a3", "a2"]
        assert all(r.passed for r in results)

    @pytest.mark.slow
    def test_fork_n5(self, corpus_dir):
        result = run_entry(load_entry(corpus_dir / "fork_n5.alg"))
        assert result.passed, [str(m) for m in result.mismatches] or result.error


class TestAddEntry:
    """Test adding algebras to a corpus."""

    def test_add(self, temp_dir):
        path = add_entry(temp_dir, "a4", builtin_algebra_text("linear", 4))
        assert path == temp_dir / "a4.alg"
        assert [e.name for e in discover(temp_dir)] == ["a4"]

    def test_refuses_overwrite(self, temp_dir):
        add_entry(temp_dir, "a4", builtin_algebra_text("linear", 4))
        with pytest.raises(CorpusError, match="already exists"):
            add_entry(temp_dir, "a4", builtin_algebra_text("linear", 4))
        add_entry(temp_dir, "a4", builtin_algebra_text("linear", 3), overwrite=True)
        assert "A3" in (temp_dir / "a4.alg").read_text()

    def test_invalid_name(self, temp_dir):
        with pytest.raises(CorpusError, match="Invalid entry name"):
            add_entry(temp_dir, "../escape", "vertices 1\n")

    def test_text_must_parse(self, temp_dir):
        with pytest.raises(ValueError):
            add_entry(temp_dir, "bad", "vertices 1\narrow x : 1 -> 7\n")
        assert not (temp_dir / "bad.alg").exists()


class TestBuiltins:
    """Test the built-in algebra families."""

    def test_fork_dimensions(self):
        assert builtin_algebra("fork", 6).dimension == 35
        assert builtin_algebra("fork", 7).dimension == 44

    def test_fork_arrow_names(self, fork5):
        ids = [a.id for a in fork5.arrows]
        assert "a5" not in ids
        assert len(ids) == 10

    def test_fork_needs_three(self):
        with pytest.raises(CorpusError, match="n >= 3"):
            builtin_algebra_text("fork", 2)

    def test_exterior(self):
        assert builtin_algebra("exterior", 3).dimension == 8

    def test_field_override(self):
        assert builtin_algebra_text("linear", 2, FieldSpec.prime(3)).splitlines()[1] == "field F 3"

    def test_unknown_family(self):
        with pytest.raises(CorpusError, match="Known families"):
            builtin_algebra_text("kronecker")
        assert "square_zero_4" in BUILTIN_FAMILIES


class TestFormatPd:
    """Test golden spellings of projective dimensions."""

    def test_spellings(self):
        assert format_pd(PdResult.exactly(4)) == "4"
        assert format_pd(PdResult.at_least(40)) == ">=40"
        assert format_pd(PdResult.infinite((0, 1))) == "inf"
