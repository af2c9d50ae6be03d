import pytest
from hypothesis import given, settings as hypothesis_settings
from hypothesis import strategies as st
from math import comb
from pydantic import ValidationError

from shared.exceptions import IncompatibleRepError, SpecError, UnsupportedGroupError
from shared.models.group_models import (
    ClassDatum,
    FiniteGroup,
    ProductGroup,
    SpecialUnitaryGroup,
    TorusGroup,
    UnitaryGroup,
)
from shared.models.rep_models import (
    DirectSum,
    Dual,
    Exterior,
    ExternalTensor,
    FiniteGiven,
    Regular,
    Std,
    Symmetric,
    Tensor,
    TorusWeights,
)
from services.groups import (
    catalog_load,
    class_order,
    cyclic,
    finite_rep_classes,
    rep_degree,
    rep_dimension,
    torus_restriction,
    validate_pair,
)
from services.lattice import WeightPoly

FIVE = FiniteGroup(
    name="five",
    modulus=5,
    order=5,
    classes=(
        ClassDatum(size=1, exponents=(0, 0)),
        ClassDatum(size=1, exponents=(1, 4)),
        ClassDatum(size=1, exponents=(2, 3)),
        ClassDatum(size=1, exponents=(3, 2)),
        ClassDatum(size=1, exponents=(4, 1)),
    ),
)


def _datum(group: FiniteGroup, index: int):
    return sorted(group.classes[index].exponents)


class TestGroupSpecValidation:
    def test_class_sizes_must_sum_to_order(self):
        with pytest.raises(ValidationError):
            FiniteGroup(modulus=2, order=3, classes=(ClassDatum(size=1, exponents=(0,)),))

    def test_exponents_in_range(self):
        with pytest.raises(ValidationError):
            FiniteGroup(
                modulus=2,
                order=2,
                classes=(ClassDatum(size=1, exponents=(0,)), ClassDatum(size=1, exponents=(2,))),
            )

    def test_single_identity_class(self):
        with pytest.raises(ValidationError):
            FiniteGroup(
                modulus=2,
                order=2,
                classes=(ClassDatum(size=1, exponents=(0,)), ClassDatum(size=1, exponents=(0,))),
            )

    def test_dimensions_agree(self):
        with pytest.raises(ValidationError):
            FiniteGroup(
                modulus=2,
                order=2,
                classes=(ClassDatum(size=1, exponents=(0, 0)), ClassDatum(size=1, exponents=(1,))),
            )

    def test_special_unitary_needs_rank_two(self):
        with pytest.raises(ValidationError):
            SpecialUnitaryGroup(n=1)

    def test_product_needs_two_factors(self):
        with pytest.raises(ValidationError):
            ProductGroup(factors=(UnitaryGroup(n=1),))

    def test_torus_weights_same_rank(self):
        with pytest.raises(ValidationError):
            TorusWeights(weights=((1,), (1, 0)))


class TestDimension:
    def test_atoms(self):
        assert rep_dimension(UnitaryGroup(n=3), Std()) == 3
        assert rep_dimension(TorusGroup(rank=2), TorusWeights(weights=((1, 0), (0, 1), (1, 1)))) == 3
        assert rep_dimension(FIVE, FiniteGiven()) == 2
        assert rep_dimension(FIVE, Regular()) == 5

    def test_functors(self):
        g = UnitaryGroup(n=4)
        assert rep_dimension(g, Dual(of=Std())) == 4
        assert rep_dimension(g, DirectSum(terms=(Std(), Dual(of=Std())))) == 8
        assert rep_dimension(g, Tensor(factors=(Std(), Std(), Std()))) == 64
        assert rep_dimension(g, Exterior(k=2, of=Std())) == 6
        assert rep_dimension(g, Symmetric(k=3, of=Std())) == comb(6, 3)

    def test_zero_dimensional_exterior_rejected(self):
        with pytest.raises(SpecError):
            rep_dimension(UnitaryGroup(n=2), Exterior(k=3, of=Std()))

    def test_nested_zero_dimensional_exterior_rejected(self):
        rep = DirectSum(terms=(Exterior(k=3, of=Std()), Std()))
        with pytest.raises(SpecError) as info:
            rep_dimension(UnitaryGroup(n=2), rep)
        assert info.value.details == {"node": "Λ^3Std", "dimension": 0}

    def test_zero_dimensional_node_under_tensor_rejected(self):
        vanishing = Symmetric(k=2, of=Exterior(k=4, of=Std()))
        rep = Tensor(factors=(Std(), vanishing))
        with pytest.raises(SpecError):
            rep_dimension(UnitaryGroup(n=3), rep)
        with pytest.raises(SpecError):
            torus_restriction(UnitaryGroup(n=3), rep)
        group, _ = catalog_load("binary_tetrahedral")
        with pytest.raises(SpecError):
            finite_rep_classes(group, DirectSum(terms=(FiniteGiven(), Exterior(k=3, of=FiniteGiven()))))

    def test_external_tensor(self):
        g = ProductGroup(factors=(SpecialUnitaryGroup(n=2), cyclic(3)))
        assert rep_dimension(g, ExternalTensor(legs=(Std(), FiniteGiven()))) == 2

    @pytest.mark.parametrize(
        "group, rep",
        [
            (TorusGroup(rank=1), Std()),
            (UnitaryGroup(n=2), TorusWeights(weights=((1, 0),))),
            (TorusGroup(rank=2), TorusWeights(weights=((1,),))),
            (UnitaryGroup(n=2), FiniteGiven()),
            (UnitaryGroup(n=2), Regular()),
            (FIVE, Std()),
            (UnitaryGroup(n=2), ExternalTensor(legs=(Std(), Std()))),
            (ProductGroup(factors=(UnitaryGroup(n=1), UnitaryGroup(n=1))), Std()),
            (
                ProductGroup(factors=(UnitaryGroup(n=1), UnitaryGroup(n=1))),
                ExternalTensor(legs=(Std(), Std(), Std())),
            ),
        ],
    )
    def test_incompatible_atoms(self, group, rep):
        with pytest.raises(IncompatibleRepError):
            validate_pair(group, rep)


class TestTorusRestriction:
    def test_su2_std(self):
        data = torus_restriction(SpecialUnitaryGroup(n=2), Std())
        assert data.weights == WeightPoly.from_weights(2, [(1, 0), (0, 1)])

    def test_u2_determinant(self):
        data = torus_restriction(UnitaryGroup(n=2), Exterior(k=2, of=Std()))
        assert data.weights == WeightPoly(2, {(1, 1): 1})

    def test_u3_symmetric_square(self):
        data = torus_restriction(UnitaryGroup(n=3), Symmetric(k=2, of=Std()))
        assert len(data.weights) == 6
        assert data.dim == 6

    def test_dual_negates(self):
        data = torus_restriction(UnitaryGroup(n=2), Dual(of=Std()))
        assert data.weights == WeightPoly.from_weights(2, [(-1, 0), (0, -1)])

    def test_product_concatenates_lattices(self):
        g = ProductGroup(factors=(TorusGroup(rank=1), UnitaryGroup(n=2)))
        rep = ExternalTensor(legs=(TorusWeights(weights=((2,),)), Std()))
        data = torus_restriction(g, rep)
        assert data.rank == 3
        assert data.weights == WeightPoly.from_weights(3, [(2, 1, 0), (2, 0, 1)])

    def test_finite_group_unsupported(self):
        with pytest.raises(UnsupportedGroupError):
            torus_restriction(FIVE, FiniteGiven())

    @given(
        st.recursive(
            st.just(Std()),
            lambda inner: st.one_of(
                inner.map(lambda r: Dual(of=r)),
                st.lists(inner, min_size=1, max_size=2).map(lambda rs: DirectSum(terms=tuple(rs))),
                st.lists(inner, min_size=1, max_size=2).map(lambda rs: Tensor(factors=tuple(rs))),
                inner.map(lambda r: Exterior(k=1, of=r)),
                inner.map(lambda r: Symmetric(k=2, of=r)),
            ),
            max_leaves=3,
        )
    )
    @hypothesis_settings(max_examples=40, deadline=None)
    def test_weights_sum_to_dimension(self, rep):
        group = UnitaryGroup(n=2)
        assert torus_restriction(group, rep).dim == rep_dimension(group, rep)


class TestDegree:
    def test_std_and_powers(self):
        g = UnitaryGroup(n=3)
        assert rep_degree(g, Std()) == 1
        assert rep_degree(g, Dual(of=Std())) == -1
        assert rep_degree(g, Symmetric(k=2, of=Std())) == 2

    def test_inhomogeneous_rejected(self):
        with pytest.raises(SpecError):
            rep_degree(UnitaryGroup(n=2), DirectSum(terms=(Std(), Dual(of=Std()))))


class TestFiniteClasses:
    def test_given_is_identity(self):
        assert finite_rep_classes(FIVE, FiniteGiven()) is FIVE

    def test_dual_of_self_dual_pair(self):
        derived = finite_rep_classes(FIVE, Dual(of=FiniteGiven()))
        assert _datum(derived, 1) == [1, 4]

    def test_tensor_square(self):
        derived = finite_rep_classes(FIVE, Tensor(factors=(FiniteGiven(), FiniteGiven())))
        assert _datum(derived, 1) == [0, 0, 2, 3]
        assert derived.derived

    def test_exterior_square(self):
        derived = finite_rep_classes(FIVE, Exterior(k=2, of=FiniteGiven()))
        assert all(c.exponents == (0,) for c in derived.classes)

    def test_class_order(self):
        assert class_order(ClassDatum(size=1, exponents=(0, 0)), 12) == 1
        assert class_order(ClassDatum(size=1, exponents=(3, 9)), 12) == 4
        assert class_order(ClassDatum(size=1, exponents=(2, 10)), 12) == 6

    def test_regular_character(self):
        derived = finite_rep_classes(cyclic(4), Regular())
        assert derived.dim == 4
        identity = [c for c in derived.classes if c.is_identity(4)]
        assert len(identity) == 1
        for c in derived.classes:
            if not c.is_identity(4):
                assert abs(c.trace(4)) < 1e-9

    def test_regular_of_derived_data_rejected(self):
        derived = finite_rep_classes(FIVE, Dual(of=FiniteGiven()))
        with pytest.raises(SpecError):
            finite_rep_classes(derived, Regular())
