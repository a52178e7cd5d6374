"""Tests for extdim.decompose module."""

import pytest

from extdim.decompose import (
    decompose,
    factors_through,
    find_isomorphism,
    find_split,
    is_in_add,
    is_indecomposable,
    is_isomorphic,
    isomorphic_indecomposables,
    split_summands,
)
from extdim.module import (
    ModuleMap,
    Representation,
    direct_sum,
    hom_space,
    injective,
    projective,
    regular_module,
    simple,
)


class TestSplitting:
    """Test Krull-Schmidt splitting."""

    def test_regular_module_of_a3(self, a3):
        L = regular_module(a3)
        pieces = split_summands(L)
        assert sorted(p.module.dimension for p in pieces) == [1, 2, 3]
        total = ModuleMap.zero(L, L)
        for p in pieces:
            total = total + p.inclusion @ p.projection
        assert total.equals(ModuleMap.identity(L))

    def test_summand_maps_are_orthogonal(self, a2):
        M = direct_sum([simple(a2, "1"), simple(a2, "2")])
        pieces = split_summands(M)
        assert len(pieces) == 2
        assert (pieces[0].projection @ pieces[1].inclusion).is_zero()
        assert (pieces[0].projection @ pieces[0].inclusion).equals(ModuleMap.identity(pieces[0].module))

    def test_zero_has_no_summands(self, a2):
        assert split_summands(Representation.zero(a2)) == []

    def test_indecomposable(self, a3, exterior2):
        assert is_indecomposable(projective(a3, "1"))
        assert is_indecomposable(regular_module(exterior2))
        assert not is_indecomposable(regular_module(a3))
        assert not is_indecomposable(Representation.zero(a3))

    def test_multiplicities(self, a2):
        S1, S2 = simple(a2, "1"), simple(a2, "2")
        classes = decompose(direct_sum([S1, S2, S1]))
        counts = sorted((X.dims, m) for X, m in classes)
        assert counts == [((0, 1), 1), ((1, 0), 2)]

    def test_square_zero_4_projectives_are_indecomposable(self, square_zero_4):
        assert all(is_indecomposable(projective(square_zero_4, v)) for v in square_zero_4.vertices)


class TestIsomorphism:
    """Test isomorphism tests."""

    def test_sum_order_does_not_matter(self, a2):
        S1, S2 = simple(a2, "1"), simple(a2, "2")
        assert is_isomorphic(direct_sum([S1, S2]), direct_sum([S2, S1]))

    def test_same_dimension_vector_not_isomorphic(self, a2):
        sum_of_simples = direct_sum([simple(a2, "1"), simple(a2, "2")])
        assert not is_isomorphic(projective(a2, "1"), sum_of_simples)
        assert find_isomorphism(projective(a2, "1"), sum_of_simples) is None

    def test_projective_is_injective_in_a2(self, a2):
        assert isomorphic_indecomposables(projective(a2, "1"), injective(a2, "2"))

    def test_different_dimensions(self, a2):
        assert not is_isomorphic(simple(a2, "1"), simple(a2, "2"))

    def test_zero_modules(self, a2):
        Z = Representation.zero(a2)
        assert find_isomorphism(Z, Z) is not None


class TestAdd:
    """Test add-membership and split witnesses."""

    def test_in_add(self, a2):
        S1, S2 = simple(a2, "1"), simple(a2, "2")
        assert is_in_add(direct_sum([S1, S1]), S1)
        assert is_in_add(direct_sum([S2, S1]), [S1, S2])
        assert not is_in_add(projective(a2, "1"), [S1, S2])
        assert is_in_add(Representation.zero(a2), [])

    def test_regular_module_in_add_of_itself(self, square_zero_4):
        L = regular_module(square_zero_4)
        assert is_in_add(projective(square_zero_4, "3"), L)
        assert not is_in_add(simple(square_zero_4, "3"), L)

    def test_factors_through(self, a2):
        P1, S1, S2 = projective(a2, "1"), simple(a2, "1"), simple(a2, "2")
        onto = hom_space(P1, S1)[0]
        assert factors_through(onto, S1)
        assert not factors_through(onto, S2)
        assert factors_through(ModuleMap.zero(P1, S1), S2)

    def test_find_split(self, a2):
        S1, P1 = simple(a2, "1"), projective(a2, "1")
        E = direct_sum([P1, S1])
        split = find_split(S1, E)
        assert split is not None
        s, r = split
        assert (r @ s).equals(ModuleMap.identity(S1))
        assert find_split(S1, P1) is None

    def test_find_split_of_sum(self, a3):
        M = direct_sum([simple(a3, "3"), projective(a3, "2")])
        E = direct_sum([projective(a3, "1"), projective(a3, "2"), simple(a3, "3"), simple(a3, "1")])
        s, r = find_split(M, E)
        assert (r @ s).equals(ModuleMap.identity(M))


def signature(M, seed):
    return sorted((X.dims, m) for X, m in decompose(M, seed=seed))


@pytest.mark.slow
class TestKrullSchmidtStability:
    """Test that decompositions do not depend on the seed."""

    def test_multiset_is_seed_independent(self, property_algebra, property_seed, property_seeds, random_modules):
        for M in random_modules(property_algebra, property_seed, 40):
            first = signature(M, property_seeds[0])
            assert sum(sum(dims) * m for dims, m in first) == M.dimension
            for seed in property_seeds[1:]:
                assert signature(M, seed) == first
