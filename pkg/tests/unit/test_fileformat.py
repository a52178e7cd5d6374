"""Tests for extdim.fileformat module."""

import pytest

from extdim.algebra import AlgebraError
from extdim.field import FieldSpec
from extdim.fileformat import (
    AlgebraSyntaxError,
    format_document,
    format_module,
    load_document,
    parse_algebra,
    parse_document,
)
from extdim.module import projective, simple

KRONECKER = """\
# two parallel arrows
field F 3
vertices top, bottom
arrow a : top -> bottom
arrow b : top -> bottom
"""


class TestParseAlgebra:
    """Test the algebra directives."""

    def test_minimal(self):
        A = parse_algebra("vertices 2\narrow a : 1 -> 2\n")
        assert A.vertices == ("1", "2")
        assert A.field == FieldSpec.rationals()
        assert A.dimension == 3

    def test_named_vertices_and_field(self):
        A = parse_algebra(KRONECKER, "kronecker")
        assert A.vertices == ("top", "bottom")
        assert A.field == FieldSpec.prime(3)
        assert A.name == "kronecker"
        assert A.dimension == 4

    def test_relations_with_coefficients(self):
        text = (
            "vertices 4\narrow a : 1 -> 2\narrow b : 2 -> 4\narrow c : 1 -> 3\narrow d : 3 -> 4\n"
            "relation a.b - 2*c.d\n"
        )
        A = parse_algebra(text)
        assert A.dimension == 9
        assert A.relations[0].terms[1][0] == -2

    def test_fraction_coefficient(self):
        text = (
            "vertices 4\narrow a : 1 -> 2\narrow b : 2 -> 4\narrow c : 1 -> 3\narrow d : 3 -> 4\n"
            "relation 1/2*a.b + c.d\n"
        )
        A = parse_algebra(text)
        assert str(A.relations[0].terms[0][0]) == "1/2"

    def test_comments_and_blank_lines(self):
        A = parse_algebra("# header\n\nvertices 1   # one vertex\n")
        assert A.dimension == 1

    def test_field_override(self):
        doc = parse_document(KRONECKER, field_override=FieldSpec.rationals())
        assert doc.algebra.field == FieldSpec.rationals()


class TestSyntaxErrors:
    """Test error positions and messages."""

    def test_missing_vertices(self):
        with pytest.raises(AlgebraSyntaxError, match="Missing 'vertices'"):
            parse_algebra("field Q\n")

    def test_unknown_directive(self):
        with pytest.raises(AlgebraSyntaxError) as exc:
            parse_algebra("vertices 1\nloop x\n")
        assert exc.value.line == 2
        assert "Unknown directive" in str(exc.value)

    def test_unknown_vertex(self):
        with pytest.raises(AlgebraSyntaxError, match="Unknown vertex '3'"):
            parse_algebra("vertices 2\narrow a : 1 -> 3\n")

    def test_arrow_before_vertices(self):
        with pytest.raises(AlgebraSyntaxError, match="before 'vertices'"):
            parse_algebra("arrow a : 1 -> 2\nvertices 2\n")

    def test_duplicate_arrow(self):
        with pytest.raises(AlgebraSyntaxError, match="Duplicate arrow"):
            parse_algebra("vertices 2\narrow a : 1 -> 2\narrow a : 1 -> 2\n")

    def test_unexpected_character(self):
        with pytest.raises(AlgebraSyntaxError, match="Unexpected character"):
            parse_algebra("vertices 2 !\n")

    def test_bad_field(self):
        with pytest.raises(AlgebraSyntaxError, match="prime"):
            parse_algebra("field F 4\nvertices 1\n")

    def test_unknown_field(self):
        with pytest.raises(AlgebraSyntaxError, match="Unknown field"):
            parse_algebra("field R\nvertices 1\n")

    def test_trailing_input(self):
        with pytest.raises(AlgebraSyntaxError, match="Trailing input"):
            parse_algebra("vertices 2\narrow a : 1 -> 2 3\n")

    def test_syntax_error_is_algebra_error(self):
        with pytest.raises(AlgebraError):
            parse_algebra("vertices\n")

    def test_relation_errors_surface(self):
        with pytest.raises(AlgebraError, match="length < 2"):
            parse_algebra("vertices 2\narrow a : 1 -> 2\nrelation a\n")


class TestModules:
    """Test module literal blocks."""

    def test_one_line_block(self):
        doc = parse_document("vertices 2\narrow a : 1 -> 2\nmodule M { dim = [1,1]; map a = [[1]]; }\n")
        M = doc.modules["M"]
        assert M.dims == (1, 1)
        assert M == projective(doc.algebra, "1")

    def test_multi_line_block(self, a2_file):
        doc = load_document(a2_file)
        assert list(doc.modules) == ["P1", "S2"]
        assert doc.modules["S2"] == simple(doc.algebra, "2")
        assert doc.algebra.name == "a2"

    def test_wrong_dimension_count(self):
        with pytest.raises(AlgebraSyntaxError, match="needs 2 dimensions"):
            parse_document("vertices 2\nmodule M { dim = [1]; }\n")

    def test_wrong_map_shape(self):
        with pytest.raises(AlgebraSyntaxError, match="must be 1x1"):
            parse_document("vertices 2\narrow a : 1 -> 2\nmodule M { dim = [1,1]; map a = [[1, 0]]; }\n")

    def test_unknown_arrow(self):
        with pytest.raises(AlgebraSyntaxError, match="Unknown arrow"):
            parse_document("vertices 2\narrow a : 1 -> 2\nmodule M { dim = [1,1]; map b = [[1]]; }\n")

    def test_missing_dim(self):
        with pytest.raises(AlgebraSyntaxError, match="has no 'dim'"):
            parse_document("vertices 1\nmodule M { }\n")

    def test_relations_must_vanish(self):
        text = (
            "vertices 3\narrow a : 1 -> 2\narrow b : 2 -> 3\nrelation a.b\n"
            "module M { dim = [1,1,1]; map a = [[1]]; map b = [[1]]; }\n"
        )
        with pytest.raises(AlgebraSyntaxError):
            parse_document(text)

    def test_missing_file(self, temp_dir):
        with pytest.raises(FileNotFoundError):
            load_document(temp_dir / "nope.alg")


class TestPrinter:
    """Test the canonical printer."""

    def test_format_module(self, a2):
        text = format_module(projective(a2, "1"))
        assert text == "module P(1) { dim = [1,1]; map a1 = [[1]]; }"

    def test_zero_maps_omitted(self, a2):
        assert format_module(simple(a2, "1"), "S") == "module S { dim = [1,0]; }"

    def test_document_is_stable(self, a2_file):
        doc = load_document(a2_file)
        once = format_document(doc.algebra, doc.modules)
        again = parse_document(once, "a2")
        assert format_document(again.algebra, again.modules) == once

    def test_named_vertices_printed(self):
        A = parse_algebra(KRONECKER)
        text = format_document(A)
        assert "vertices top,bottom" in text
        assert "field F 3" in text
