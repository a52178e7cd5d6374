"""Tests for extdim.module module."""

import random

import pytest

from extdim import linalg
from extdim.algebra import AlgebraError
from extdim.module import (
    ModuleError,
    ModuleMap,
    Representation,
    cokernel,
    direct_sum,
    direct_sum_maps,
    generated_submodule,
    hom_space,
    image,
    injective,
    is_injective,
    is_projective,
    is_self_injective,
    kernel,
    lift_through_epi,
    loewy_length,
    map_from_projective,
    projective,
    projective_cover_dimension,
    quotient,
    radical,
    radical_power,
    random_module,
    regular_module,
    semisimple_top,
    simple,
    socle,
    submodule_from_bases,
    top,
    top_dims,
    vertex_components,
)


class TestBasicModules:
    """Test simples, projectives and injectives."""

    def test_simple(self, a2):
        S = simple(a2, "1")
        assert S.dims == (1, 0)
        assert S.name == "S(1)"

    def test_unknown_vertex(self, a2):
        with pytest.raises(AlgebraError, match="Unknown vertex"):
            simple(a2, "7")

    def test_projectives_of_a2(self, a2):
        assert projective(a2, "1").dims == (1, 1)
        assert projective(a2, "2") == simple(a2, "2")

    def test_projective_records_top(self, a3):
        assert projective(a3, "2").projective_tops == ("2",)

    def test_injectives_of_a2(self, a2):
        assert injective(a2, "1") == simple(a2, "1")
        assert injective(a2, "2").dims == (1, 1)

    def test_regular_module(self, square_zero_4):
        L = regular_module(square_zero_4)
        assert L.dimension == 9
        assert L.projective_tops == ("1", "2", "3", "4")

    def test_semisimple_top(self, a3):
        assert semisimple_top(a3).dims == (1, 1, 1)

    def test_zero_module(self, a2):
        Z = Representation.zero(a2)
        assert Z.is_zero()
        assert loewy_length(Z) == 0

    def test_build_rejects_bad_shape(self, a2):
        with pytest.raises(ModuleError, match="needs a 1x1 matrix"):
            Representation.build(a2, [1, 1], {"a1": linalg.zeros(2, 1, a2.field.domain)})

    def test_build_rejects_unknown_arrow(self, a2):
        with pytest.raises(ModuleError, match="Unknown arrows"):
            Representation.build(a2, [1, 1], {"zz": linalg.zeros(1, 1, a2.field.domain)})

    def test_negative_dimension(self, a2):
        with pytest.raises(ModuleError, match="nonnegative"):
            Representation.build(a2, [-1, 0])

    def test_relation_must_vanish(self, exterior2):
        K = exterior2.field.domain
        one = linalg.identity(1, K)
        with pytest.raises(ModuleError, match="does not vanish"):
            Representation.build(exterior2, [1], {"x": one, "y": linalg.zeros(1, 1, K)})

    def test_equality_ignores_names(self, a2):
        assert simple(a2, "1").renamed("other") == simple(a2, "1")

    def test_dual_is_an_involution(self, a3):
        M = projective(a3, "1")
        assert M.dual().dual() is M
        assert M.dual().algebra == a3.opposite()


class TestStructure:
    """Test radicals, socles, tops and Loewy length."""

    def test_radical_of_projective(self, a2):
        assert radical(projective(a2, "1")).module.dims == (0, 1)

    def test_socle(self, a2):
        assert socle(projective(a2, "1")).module.dims == (0, 1)

    def test_top(self, a3):
        assert top(projective(a3, "1")).dims == (1, 0, 0)
        assert top_dims(regular_module(a3)) == (1, 1, 1)

    def test_loewy_length(self, a3, exterior2, fork5):
        assert loewy_length(projective(a3, "1")) == 3
        assert loewy_length(regular_module(exterior2)) == 3
        assert loewy_length(regular_module(fork5)) == 5

    def test_radical_power(self, a3):
        assert radical_power(projective(a3, "1"), 2).module.dims == (0, 0, 1)

    def test_vertex_components(self, a2):
        assert vertex_components(projective(a2, "1"), {"2"}).module.dims == (0, 1)
        assert vertex_components(projective(a2, "1"), {"1"}).is_everything()

    def test_generated_submodule_closes_under_arrows(self, a3):
        P = projective(a3, "1")
        K = a3.field.domain
        gens = [linalg.identity(1, K), linalg.zeros(1, 0, K), linalg.zeros(1, 0, K)]
        assert generated_submodule(P, gens).is_everything()

    def test_unstable_subspace(self, a2):
        P = projective(a2, "1")
        K = a2.field.domain
        with pytest.raises(ModuleError, match="not stable"):
            submodule_from_bases(P, [linalg.identity(1, K), linalg.zeros(1, 0, K)])

    def test_quotient_by_radical(self, a2):
        P = projective(a2, "1")
        Q, proj, sections = quotient(P, radical(P))
        assert Q == simple(a2, "1")
        assert proj.is_surjective()
        assert len(sections) == 2


class TestMaps:
    """Test homomorphisms and their kernels and cokernels."""

    def test_hom_dimensions(self, a2):
        P1, S1, S2 = projective(a2, "1"), simple(a2, "1"), simple(a2, "2")
        assert len(hom_space(P1, S1)) == 1
        assert len(hom_space(S1, P1)) == 0
        assert len(hom_space(S2, P1)) == 1
        assert len(hom_space(P1, P1)) == 1

    def test_hom_over_different_algebras(self, a2, a3):
        with pytest.raises(ModuleError, match="different algebras"):
            hom_space(simple(a2, "1"), simple(a3, "1"))

    def test_non_intertwining_blocks(self, a2):
        S1, P1 = simple(a2, "1"), projective(a2, "1")
        K = a2.field.domain
        with pytest.raises(ModuleError, match="commute"):
            ModuleMap(S1, P1, (linalg.identity(1, K), linalg.zeros(1, 0, K)))

    def test_kernel_and_cokernel(self, a2):
        P1 = projective(a2, "1")
        onto = hom_space(P1, simple(a2, "1"))[0]
        assert onto.is_surjective()
        assert kernel(onto).module == simple(a2, "2")
        into = hom_space(simple(a2, "2"), P1)[0]
        assert into.is_injective()
        assert image(into).module.dims == (0, 1)
        assert cokernel(into)[0] == simple(a2, "1")

    def test_composition_and_inverse(self, a3):
        P = projective(a3, "1")
        ident = ModuleMap.identity(P)
        assert (ident @ ident).equals(ident)
        assert ident.inverse().equals(ident)
        assert ident.rank() == 3

    def test_not_composable(self, a2):
        f = ModuleMap.identity(simple(a2, "1"))
        g = ModuleMap.identity(simple(a2, "2"))
        with pytest.raises(ModuleError, match="not composable"):
            f @ g

    def test_zero_is_not_invertible(self, a2):
        with pytest.raises(ModuleError, match="not invertible"):
            ModuleMap.zero(simple(a2, "1"), simple(a2, "1")).inverse()

    def test_direct_sum_maps(self, a2):
        parts = [simple(a2, "1"), projective(a2, "1")]
        S, inj, proj = direct_sum_maps(parts)
        assert S.dims == (2, 1)
        for k in range(2):
            assert (proj[k] @ inj[k]).equals(ModuleMap.identity(parts[k]))
        assert (proj[0] @ inj[1]).is_zero()

    def test_empty_direct_sum(self, a2):
        assert direct_sum([], a2).is_zero()
        with pytest.raises(ModuleError, match="needs the algebra"):
            direct_sum([])

    def test_lift_through_epi(self, a2):
        P1, S1 = projective(a2, "1"), simple(a2, "1")
        g = hom_space(P1, S1)[0]
        h = lift_through_epi(g, g)
        assert h is not None
        assert (g @ h).equals(g)
        assert lift_through_epi(ModuleMap.identity(S1), g) is None

    def test_map_from_projective_needs_tops(self, a2):
        with pytest.raises(ModuleError, match="projectives"):
            map_from_projective(simple(a2, "1"), simple(a2, "1"), [])

    def test_dual_map(self, a2):
        f = hom_space(projective(a2, "1"), simple(a2, "1"))[0]
        d = f.dual()
        assert d.source == simple(a2, "1").dual()
        assert d.intertwines()


class TestProjectivity:
    """Test projective and injective recognition."""

    def test_is_projective(self, a2):
        assert is_projective(projective(a2, "1"))
        assert not is_projective(simple(a2, "1"))
        assert projective_cover_dimension(simple(a2, "1")) == 2

    def test_is_injective(self, a2):
        assert is_injective(projective(a2, "1"))
        assert not is_injective(simple(a2, "2"))

    def test_self_injective(self, a2, exterior2):
        assert is_self_injective(exterior2)
        assert not is_self_injective(a2)

    def test_random_module_is_seeded(self, square_zero_4):
        first = random_module(square_zero_4, random.Random(5))
        second = random_module(square_zero_4, random.Random(5))
        assert first == second
        assert first.name == "random"
