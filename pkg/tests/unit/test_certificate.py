"""Tests for extdim.certificate module."""

import json
from unittest.mock import patch

import pytest

from extdim.certificate import (
    CertificateFormatError,
    Extension,
    Leaf,
    Summand,
    depth,
    direct_sum_node,
    dumps,
    leaves,
    loads,
    verify_filtration,
)
from extdim.decompose import InconclusiveDecomposition
from extdim.homological import ShortExactSequence
from extdim.module import ModuleMap, Representation, hom_space, projective, simple


def p1_extension(a2):
    """P(1) as the extension of S(1) by S(2)."""
    S1, S2, P1 = simple(a2, "1"), simple(a2, "2"), projective(a2, "1")
    ses = ShortExactSequence(hom_space(S2, P1)[0], hom_space(P1, S1)[0])
    return Extension(P1, ses, Leaf(S2), Leaf(S1))


class TestDepth:
    """Test depth rules for each node kind."""

    def test_leaf(self, a2):
        assert depth(Leaf(simple(a2, "1"))) == 1
        assert depth(Leaf(Representation.zero(a2))) == 0

    def test_extension_adds(self, a2):
        node = p1_extension(a2)
        assert depth(node) == 2
        assert len(leaves(node)) == 2

    def test_direct_sum_takes_max(self, a2):
        node = direct_sum_node([Leaf(simple(a2, "2")), p1_extension(a2)])
        assert depth(node) == 2
        assert node.module.dims == (1, 2)

    def test_summand_keeps_child_depth(self, a2):
        S1 = simple(a2, "1")
        node = Summand(S1, Leaf(S1), ModuleMap.identity(S1), ModuleMap.identity(S1))
        assert depth(node) == 1


class TestVerify:
    """Test certificate verification."""

    def test_extension_verifies(self, a2):
        S1, S2 = simple(a2, "1"), simple(a2, "2")
        result = verify_filtration(p1_extension(a2), [S1, S2], projective(a2, "1"), 2)
        assert result.ok, str(result)
        assert str(result) == "OK (depth 2)"

    def test_depth_exceeds_claim(self, a2):
        S1, S2 = simple(a2, "1"), simple(a2, "2")
        result = verify_filtration(p1_extension(a2), [S1, S2], n=1)
        assert not result.ok
        assert result.path == "root"

    def test_leaf_outside_add(self, a2):
        result = verify_filtration(Leaf(projective(a2, "1")), [simple(a2, "1"), simple(a2, "2")])
        assert not result.ok
        assert result.message == "leaf fails add-membership"
        assert str(result).startswith("FAIL at root")

    def test_wrong_target(self, a2):
        S1, S2 = simple(a2, "1"), simple(a2, "2")
        result = verify_filtration(Leaf(S1), [S1, S2], S2)
        assert not result.ok
        assert "not isomorphic" in result.message

    def test_bad_summand(self, a2):
        S1 = simple(a2, "1")
        zero = ModuleMap.zero(S1, S1)
        result = verify_filtration(Summand(S1, Leaf(S1), zero, zero), S1)
        assert not result.ok
        assert "not the identity" in result.message

    def test_direct_sum(self, a2):
        S1, S2 = simple(a2, "1"), simple(a2, "2")
        assert verify_filtration(direct_sum_node([Leaf(S1), Leaf(S2)]), [S1, S2], n=1).ok

    def test_failure_path_names_the_child(self, a2):
        result = verify_filtration(p1_extension(a2), [simple(a2, "1")])
        assert not result.ok
        assert result.path == "root.left"

    def test_undecided_membership_fails_at_leaf(self, a2):
        S1, S2 = simple(a2, "1"), simple(a2, "2")
        with patch("extdim.certificate.is_in_add", side_effect=InconclusiveDecomposition(S2, 0)):
            result = verify_filtration(p1_extension(a2), [S1, S2])
        assert not result.ok
        assert result.path == "root.left"
        assert result.message.startswith("add-membership undecided")

    def test_undecided_isomorphism_fails_at_root(self, a2):
        S1, S2 = simple(a2, "1"), simple(a2, "2")
        with patch("extdim.certificate.is_isomorphic", side_effect=InconclusiveDecomposition(S1, 0)):
            result = verify_filtration(Leaf(S1), [S1, S2], S2)
        assert not result.ok
        assert result.path == "root"
        assert result.message.startswith("isomorphism undecided")

    def test_mixed_algebras(self, a2, a3):
        with pytest.raises(CertificateFormatError, match="different algebras"):
            verify_filtration(Leaf(simple(a2, "1")), [simple(a3, "1")])


class TestCodec:
    """Test JSON serialization of certificates."""

    def test_dumps_and_loads(self, a2):
        S1, S2 = simple(a2, "1"), simple(a2, "2")
        doc = loads(dumps(p1_extension(a2), [S1, S2]))
        assert doc.claimed_depth == 2
        assert [G.dims for G in doc.generator] == [(1, 0), (0, 1)]
        assert doc.root.module.dims == (1, 1)
        assert verify_filtration(doc.root, doc.generator, n=doc.claimed_depth).ok

    def test_document_layout(self, a2):
        data = json.loads(dumps(p1_extension(a2), [simple(a2, "1")], claimed_depth=5))
        assert data["format"] == "extdim-certificate"
        assert data["version"] == 1
        assert data["claimed_depth"] == 5
        assert data["generator"] == ["m0"]
        assert data["root"]["kind"] == "extension"

    def test_invalid_json(self):
        with pytest.raises(CertificateFormatError, match="Invalid JSON"):
            loads("{not json")

    def test_wrong_format(self):
        with pytest.raises(CertificateFormatError, match="Not an"):
            loads('{"format": "other"}')

    def test_wrong_version(self, a2):
        data = json.loads(dumps(Leaf(simple(a2, "1")), [simple(a2, "1")]))
        data["version"] = 99
        with pytest.raises(CertificateFormatError, match="Unsupported certificate version"):
            loads(json.dumps(data))

    def test_dangling_reference(self, a2):
        data = json.loads(dumps(Leaf(simple(a2, "1")), [simple(a2, "1")]))
        data["root"]["module"] = "m99"
        with pytest.raises(CertificateFormatError, match="Dangling"):
            loads(json.dumps(data))

    def test_unknown_kind(self, a2):
        data = json.loads(dumps(Leaf(simple(a2, "1")), [simple(a2, "1")]))
        data["root"]["kind"] = "braid"
        with pytest.raises(CertificateFormatError, match="unknown node kind"):
            loads(json.dumps(data))

    def test_claimed_depth_must_be_int(self, a2):
        data = json.loads(dumps(Leaf(simple(a2, "1")), [simple(a2, "1")]))
        data["claimed_depth"] = "1"
        with pytest.raises(CertificateFormatError, match="claimed_depth"):
            loads(json.dumps(data))

    def test_bad_matrix_shape(self, a2):
        data = json.loads(dumps(p1_extension(a2), [simple(a2, "1"), simple(a2, "2")]))
        data["root"]["f"] = [[["1", "0"]], [["1"]]]
        with pytest.raises(CertificateFormatError, match="expected"):
            loads(json.dumps(data))

    def test_tampered_matrix_fails_at_node(self, a2):
        S1, S2 = simple(a2, "1"), simple(a2, "2")
        data = json.loads(dumps(p1_extension(a2), [S1, S2]))
        data["root"]["g"][0] = [["0"]]
        doc = loads(json.dumps(data))
        result = verify_filtration(doc.root, doc.generator, n=doc.claimed_depth)
        assert not result.ok
        assert result.path == "root"
        assert "not exact" in result.message
