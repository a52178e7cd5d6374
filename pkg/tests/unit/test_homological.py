"""Tests for extdim.homological module."""

import random

import pytest

from extdim.algebra import Arrow, BoundQuiverAlgebra, Quiver, Relation
from extdim.certificate import depth, verify_filtration
from extdim.decompose import is_isomorphic
from extdim.field import FieldSpec
from extdim.homological import (
    SELF_INJECTIVE,
    ExactnessError,
    PdKind,
    PdResult,
    ShortExactSequence,
    cosyzygy_ses,
    ext1,
    global_dimension,
    injective_envelope,
    max_pd,
    minimal_resolution,
    omega,
    omega_inverse,
    padded_cover,
    pd_table,
    proj_dimension,
    projective_cover,
    random_resolution,
    random_short_exact_sequence,
    resolution_generators,
    resolution_to_filtration,
    rotate_right,
    rotate_ses,
    split_sequence,
    syzygy,
    syzygy_ses,
    transport_split,
)
from extdim.module import (
    ModuleError,
    ModuleMap,
    Representation,
    direct_sum,
    direct_sum_maps,
    hom_space,
    injective,
    is_injective,
    is_projective,
    projective,
    simple,
)


@pytest.fixture(scope="module")
def dual_numbers():
    """k[x]/(x^2): Omega S = S."""
    quiver = Quiver(("1",), (Arrow("x", "1", "1"),))
    return BoundQuiverAlgebra(FieldSpec.rationals(), quiver, [Relation.monomial("x", "x")], "dual")


def a2_sequence(a2):
    """0 -> S(2) -> P(1) -> S(1) -> 0."""
    P1 = projective(a2, "1")
    f = hom_space(simple(a2, "2"), P1)[0]
    g = hom_space(P1, simple(a2, "1"))[0]
    return ShortExactSequence(f, g)


class TestShortExactSequence:
    """Test exactness checks."""

    def test_exact(self, a2):
        assert a2_sequence(a2).is_exact()

    def test_split_sequence(self, a2):
        ses = split_sequence(simple(a2, "1"), simple(a2, "2"))
        assert ses.is_exact()
        assert ses.middle.dims == (1, 1)

    def test_not_exact(self, a2):
        S1 = simple(a2, "1")
        ses = ShortExactSequence(ModuleMap.identity(S1), ModuleMap.identity(S1))
        with pytest.raises(ExactnessError, match="dimensions do not add up"):
            ses.verify()

    def test_middle_terms_must_agree(self, a2):
        with pytest.raises(ModuleError, match="Middle terms"):
            ShortExactSequence(ModuleMap.identity(simple(a2, "1")), ModuleMap.identity(simple(a2, "2")))

    def test_dual(self, a2):
        assert a2_sequence(a2).dual().is_exact()


class TestSyzygies:
    """Test covers, envelopes and (co)syzygies."""

    def test_projective_cover(self, a2):
        cover = projective_cover(simple(a2, "1"))
        assert cover.tops == ("1",)
        assert cover.epi.is_surjective()

    def test_padded_cover_is_still_onto(self, a2):
        cover = padded_cover(simple(a2, "1"), ["1", "2"], random.Random(0))
        assert cover.tops == ("1", "1", "2")
        assert cover.epi.is_surjective()

    def test_injective_envelope(self, a2):
        env = injective_envelope(simple(a2, "2"))
        assert env.module.dims == (1, 1)
        assert env.mono.is_injective()

    def test_omega(self, a2):
        assert omega(simple(a2, "1")) == simple(a2, "2")
        assert omega(projective(a2, "1")).is_zero()

    def test_omega_inverse(self, a2):
        assert omega_inverse(simple(a2, "2")) == simple(a2, "1")

    def test_syzygy_powers(self, square_zero_4):
        S3 = simple(square_zero_4, "3")
        assert syzygy(S3, 0) is S3
        assert syzygy(S3, 3).is_zero() is False
        assert syzygy(S3, 4).is_zero()

    def test_dual_numbers_are_periodic(self, dual_numbers):
        S = simple(dual_numbers, "1")
        assert is_isomorphic(omega(S), S)
        assert is_isomorphic(syzygy(S, -2), S)


class TestProjectiveDimension:
    """Test pd of simples and global dimension."""

    def test_a2(self, a2):
        table = pd_table(a2)
        assert table["1"] == PdResult.exactly(1)
        assert table["2"] == PdResult.exactly(0)
        assert global_dimension(a2) == PdResult.exactly(1)

    def test_square_zero_4(self, square_zero_4):
        table = pd_table(square_zero_4)
        assert [table[v].value for v in square_zero_4.vertices] == [0, 1, 3, 2]
        assert global_dimension(square_zero_4, table=table).value == 3

    def test_fork(self, fork5):
        table = pd_table(fork5)
        expected = {"1": 4, "2": 1, "3": 1, "4": 1, "5": 0, "6": 3, "7": 2, "8": 1, "9": 0, "10": 0, "11": 0}
        assert {v: r.value for v, r in table.items()} == expected

    def test_periodic_witness(self, dual_numbers):
        result = proj_dimension(simple(dual_numbers, "1"))
        assert result.kind is PdKind.INFINITE
        assert result.witness == (0, 1)
        assert str(result) == "inf (Omega^0 ~ Omega^1)"

    def test_self_injective_witness(self, exterior2):
        result = proj_dimension(simple(exterior2, "1"))
        assert result == PdResult.infinite(SELF_INJECTIVE)
        assert global_dimension(exterior2).kind is PdKind.INFINITE

    def test_cutoff(self, square_zero_4):
        result = proj_dimension(simple(square_zero_4, "3"), cutoff=1)
        assert result == PdResult.at_least(1)
        assert str(result) == ">=1"
        assert not result.is_finite

    def test_zero_module(self, a2):
        assert proj_dimension(Representation.zero(a2)) == PdResult.exactly(-1)

    def test_max_pd(self):
        assert max_pd([]) == PdResult.exactly(-1)
        assert max_pd([PdResult.exactly(2), PdResult.at_least(1)]) == PdResult.at_least(1)
        assert max_pd([PdResult.exactly(2), PdResult.infinite((0, 1))]).kind is PdKind.INFINITE

    def test_to_json(self):
        assert PdResult.exactly(3).to_json() == {"kind": "exactly", "value": 3}
        assert PdResult.infinite((1, 2)).to_json() == {"kind": "infinite", "value": None, "witness": [1, 2]}


class TestResolutions:
    """Test minimal and truncated resolutions."""

    def test_complete(self, square_zero_4):
        res = minimal_resolution(simple(square_zero_4, "3"))
        assert res.minimal
        assert res.length == 3
        assert res.verify() is res

    def test_truncated(self, square_zero_4):
        res = minimal_resolution(simple(square_zero_4, "3"), length=1)
        assert not res.minimal
        assert len(res.terms) == 2
        assert res.terms[-1] == omega(simple(square_zero_4, "3"))
        res.verify()

    def test_projective_has_length_zero(self, a3):
        res = minimal_resolution(projective(a3, "1"))
        assert res.length == 0
        assert res.short_exact_pieces() == []

    def test_short_exact_pieces(self, square_zero_4):
        res = minimal_resolution(simple(square_zero_4, "4"))
        pieces = res.short_exact_pieces()
        assert len(pieces) == res.length
        assert all(p.is_exact() for p in pieces)

    def test_cutoff_warning(self, square_zero_4, caplog_extdim):
        res = minimal_resolution(simple(square_zero_4, "3"), cutoff=1)
        assert "truncated" in caplog_extdim.text
        assert not res.minimal

    def test_random_resolution_verifies(self, square_zero_4):
        rng = random.Random(3)
        for _ in range(3):
            random_resolution(square_zero_4, rng, max_dim=6).verify()


class TestExt:
    """Test Ext^1 and its extensions."""

    def test_a2(self, a2):
        S1, S2 = simple(a2, "1"), simple(a2, "2")
        assert ext1(S1, S2).dimension == 1
        assert ext1(S2, S1).dimension == 0
        assert ext1(projective(a2, "1"), S2).dimension == 0

    def test_nonsplit_extension(self, a2):
        group = ext1(simple(a2, "1"), simple(a2, "2"))
        ses = group.extension([1])
        assert is_isomorphic(ses.middle, projective(a2, "1"))
        split = group.split()
        assert is_isomorphic(split.middle, direct_sum([simple(a2, "1"), simple(a2, "2")]))

    def test_coefficient_count(self, a2):
        with pytest.raises(ModuleError, match="Expected 1 coefficients"):
            ext1(simple(a2, "1"), simple(a2, "2")).extension([1, 0])

    def test_square_zero_self_extensions(self, square_zero_4):
        assert ext1(simple(square_zero_4, "2"), simple(square_zero_4, "1")).dimension == 2

    def test_different_algebras(self, a2, a3):
        with pytest.raises(ModuleError):
            ext1(simple(a2, "1"), simple(a3, "1"))


class TestSurgery:
    """Test rotations, horseshoes and split transport."""

    def test_rotate(self, a2):
        left, right = rotate_ses(a2_sequence(a2))
        assert left.is_exact()
        assert right.is_exact()
        assert left.left == simple(a2, "2")
        assert right.right == simple(a2, "1")

    def test_rotate_right_split_pair(self, a2):
        ses, s, r = rotate_right(a2_sequence(a2))
        assert (r @ s).equals(ModuleMap.identity(s.source))
        assert s.target is ses.middle

    def test_horseshoe(self, square_zero_4):
        rng = random.Random(11)
        ses = random_short_exact_sequence(square_zero_4, rng, max_dim=6)
        up, _ = syzygy_ses(ses)
        down, _ = cosyzygy_ses(ses)
        assert up.is_exact()
        assert down.is_exact()

    def test_transport_split(self, a2):
        S1, S2 = simple(a2, "1"), simple(a2, "2")
        _, inj, proj = direct_sum_maps([S1, S2])
        s, r = transport_split(inj[0], proj[0], 1)
        assert s.source == S2
        assert (r @ s).equals(ModuleMap.identity(s.source))


class TestFiltrations:
    """Test resolution certificates."""

    def test_resolution_certificate(self, square_zero_4):
        S3 = simple(square_zero_4, "3")
        res = minimal_resolution(S3)
        generators, node = resolution_to_filtration(res)
        assert len(generators) == len(res.terms)
        result = verify_filtration(node, generators, S3, res.length + 1)
        assert result.ok, str(result)

    def test_truncated_certificate(self, square_zero_4):
        S3 = simple(square_zero_4, "3")
        res = minimal_resolution(S3, length=1)
        generators, node = resolution_to_filtration(res)
        assert depth(node) <= 2
        assert verify_filtration(node, generators, S3, 2).ok

    def test_generators(self, a2):
        res = minimal_resolution(simple(a2, "1"))
        generators = resolution_generators(res)
        assert generators[0] == projective(a2, "1")
        assert generators[1] == simple(a2, "1")


@pytest.mark.slow
class TestHomologicalProperties:
    """Test homological laws on seeded random modules."""

    def test_pd_of_sum_is_max(self, property_algebra, property_seed, random_modules):
        modules = random_modules(property_algebra, property_seed, 40)
        for M, N in zip(modules[::2], modules[1::2]):
            total = proj_dimension(direct_sum([M, N]))
            expected = max_pd([proj_dimension(M), proj_dimension(N)])
            assert (total.kind, total.value) == (expected.kind, expected.value)

    def test_omega_kills_exactly_the_projectives(self, property_algebra, property_seed, random_modules):
        for M in random_modules(property_algebra, property_seed, 40):
            assert omega(M).is_zero() == is_projective(M)
            assert omega_inverse(M).is_zero() == is_injective(M)

    def test_omega_kills_indecomposable_projectives_and_injectives(self, property_algebra):
        for v in property_algebra.vertices:
            assert omega(projective(property_algebra, v)).is_zero()
            assert omega_inverse(injective(property_algebra, v)).is_zero()

    def test_rotations_are_exact(self, property_algebra, property_seed):
        rng = random.Random(property_seed)
        for _ in range(40):
            left, right = rotate_ses(random_short_exact_sequence(property_algebra, rng, max_dim=6))
            assert left.failures() == []
            assert right.failures() == []

    def test_resolutions_become_certificates(self, property_algebra, property_seed):
        rng = random.Random(property_seed)
        for _ in range(10):
            res = random_resolution(property_algebra, rng, max_dim=6)
            generators, node = resolution_to_filtration(res)
            result = verify_filtration(node, generators, res.target, len(res.terms))
            assert result.ok, str(result)
