from math import factorial

import pytest

from shared.exceptions import CellEvaluationError, EvaluationError, UnsupportedGroupError
from shared.models.group_models import (
    ClassDatum,
    FiniteGroup,
    ProductGroup,
    SpecialUnitaryGroup,
    TorusGroup,
    UnitaryGroup,
)
from shared.models.rep_models import (
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
    catalog_entry,
    catalog_load,
    catalog_pairs,
    cyclic,
    finite_subgroup_names,
    torus_restriction,
)
from services.moments import (
    MomentTable,
    cyclotomic_poly,
    finite_invariants,
    mobius,
    moment,
    moment_table,
    torus_invariants,
    weyl_invariants,
    weyl_shifts,
)
from services.moments.cyclotomic import poly_divmod
from tests import oracles

U1 = (TorusGroup(rank=1), TorusWeights(weights=((1,),)))
U3_DIAGONAL = [1, 1, 2, 6, 23, 103, 513, 2761, 15767, 94359, 586590, 3763290, 24792705]


class TestCyclotomic:
    @pytest.mark.parametrize("n, mu", [(1, 1), (2, -1), (4, 0), (6, 1), (30, -1), (12, 0)])
    def test_mobius(self, n, mu):
        assert mobius(n) == mu

    @pytest.mark.parametrize(
        "m, coeffs",
        [
            (1, (-1, 1)),
            (2, (1, 1)),
            (4, (1, 0, 1)),
            (6, (1, -1, 1)),
            (12, (1, 0, -1, 0, 1)),
        ],
    )
    def test_cyclotomic_poly(self, m, coeffs):
        assert cyclotomic_poly(m) == coeffs

    def test_poly_divmod(self):
        quotient, remainder = poly_divmod([-1, 0, 0, 1], [-1, 1])
        assert quotient == [1, 1, 1]
        assert not any(remainder)

    def test_corrupt_class_data_detected(self):
        # sizes sum to the order, but the eigenphases are not a representation
        bogus = FiniteGroup(
            modulus=3,
            order=3,
            classes=(ClassDatum(size=1, exponents=(0,)), ClassDatum(size=2, exponents=(1,))),
        )
        with pytest.raises(EvaluationError):
            finite_invariants(bogus, 1, 0)


class TestTorus:
    @pytest.mark.parametrize("a, b, expected", [(3, 3, 1), (4, 4, 1), (3, 2, 0), (0, 0, 1)])
    def test_u1_weight_one(self, a, b, expected):
        assert moment(*U1, a, b) == expected

    def test_plus_minus_weights(self):
        data = torus_restriction(TorusGroup(rank=1), TorusWeights(weights=((1,), (-1,))))
        assert torus_invariants(data, 1, 1) == 2

    def test_rank_two_standard(self):
        weights = ((1, 0), (0, 1))
        data = torus_restriction(TorusGroup(rank=2), TorusWeights(weights=weights))
        # constant term of ((x + y)(1/x + 1/y))^2
        assert torus_invariants(data, 2, 2) == 6
        assert torus_invariants(data, 2, 2) == oracles.torus_count(weights, 2, 2)
        assert torus_invariants(data, 3, 3) == oracles.torus_count(weights, 3, 3) == 20

    @pytest.mark.parametrize("a, b", [(1, 1), (2, 1), (2, 2), (3, 1), (3, 3)])
    def test_matches_brute_force(self, a, b):
        weights = ((1, 0), (0, 1), (-1, 1))
        group, rep = TorusGroup(rank=2), TorusWeights(weights=weights)
        assert moment(group, rep, a, b) == oracles.torus_count(weights, a, b)


class TestWeyl:
    def test_shifts_cover_symmetric_group(self):
        shifts = weyl_shifts(3)
        assert len(shifts) == 6
        assert sum(sign for sign, _ in shifts) == 0
        assert (1, (0, 0, 0)) in shifts

    @pytest.mark.parametrize("a, expected", [(1, 1), (2, 2), (3, 5), (4, 14)])
    def test_u2_diagonal(self, a, expected):
        assert moment(UnitaryGroup(n=2), Std(), a, a) == expected

    def test_u3_diagonal(self):
        group = UnitaryGroup(n=3)
        assert [moment(group, Std(), a, a) for a in range(len(U3_DIAGONAL))] == U3_DIAGONAL

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_factorial_identity(self, n):
        for a in range(n + 1):
            assert moment(UnitaryGroup(n=n), Std(), a, a) == factorial(a)

    @pytest.mark.parametrize("n", [2, 3])
    def test_young_tableaux_oracle(self, n):
        for a in range(11):
            assert moment(UnitaryGroup(n=n), Std(), a, a) == oracles.unitary_std_diagonal(n, a)

    def test_ballot_oracle(self):
        group = SpecialUnitaryGroup(n=2)
        for total in range(21):
            for a in range(total + 1):
                assert moment(group, Std(), a, total - a) == oracles.su2_std(a, total - a)

    @pytest.mark.parametrize("a, b, expected", [(2, 2, 2), (4, 0, 2), (3, 0, 0)])
    def test_su2_cells(self, a, b, expected):
        assert moment(SpecialUnitaryGroup(n=2), Std(), a, b) == expected

    def test_su3_determinant(self):
        group = SpecialUnitaryGroup(n=3)
        assert moment(group, Std(), 3, 0) == 1
        assert moment(group, Std(), 1, 0) == 0
        assert moment(UnitaryGroup(n=3), Std(), 3, 0) == 0

    def test_unitary_off_diagonal_vanishes(self):
        assert moment(UnitaryGroup(n=2), Std(), 3, 1) == 0

    def test_derived_representation(self):
        group = UnitaryGroup(n=3)
        end_v = Tensor(factors=(Std(), Dual(of=Std())))
        # End(V) = trivial + adjoint
        assert moment(group, end_v, 1, 0) == 1
        assert moment(group, Exterior(k=3, of=Std()), 1, 1) == 1

    def test_rank_bound(self, monkeypatch):
        monkeypatch.setattr("services.moments.evaluators.config.weyl_max_rank", 2)
        data = torus_restriction(UnitaryGroup(n=3), Std())
        with pytest.raises(UnsupportedGroupError):
            weyl_invariants(UnitaryGroup(n=3), data, 1, 1)

    def test_unpruned_path_agrees(self, monkeypatch):
        group = SpecialUnitaryGroup(n=3)
        data = torus_restriction(group, Std())
        pruned = weyl_invariants(group, data, 4, 1)
        monkeypatch.setattr("services.moments.evaluators.config.prune_single_cell", False)
        assert weyl_invariants(group, data, 4, 1) == pruned


class TestFinite:
    @pytest.mark.parametrize("a, b", [(6, 1), (5, 0), (3, 3), (2, 0)])
    def test_cyclic_congruence(self, a, b):
        assert finite_invariants(cyclic(5), a, b) == (1 if (a - b) % 5 == 0 else 0)

    def test_binary_tetrahedral_low_degree(self):
        group, _ = catalog_load("binary_tetrahedral")
        assert finite_invariants(group, 2, 2) == 2

    def test_binary_icosahedral_extra_invariant(self):
        group, _ = catalog_load("binary_icosahedral")
        assert finite_invariants(group, 6, 6) > oracles.su2_std(6, 6)
        assert finite_invariants(group, 5, 5) == oracles.su2_std(5, 5)

    @pytest.mark.parametrize("name", ["binary_tetrahedral", "binary_octahedral", "binary_icosahedral", "binary_dihedral(20)"])
    def test_class_sum_oracle(self, name):
        group, _ = catalog_load(name)
        data = [(c.size, c.exponents) for c in group.classes]
        for a in range(7):
            for b in range(7):
                assert finite_invariants(group, a, b) == oracles.class_sum(data, group.modulus, a, b)

    @pytest.mark.slow
    @pytest.mark.parametrize(
        "name", finite_subgroup_names() + ["cyclic(1)", "cyclic(7)", "cyclic(12)"]
    )
    def test_integral_up_to_degree_24(self, name):
        group, _ = catalog_load(name)
        for a in range(25):
            for b in range(25 - a):
                value = finite_invariants(group, a, b)
                assert isinstance(value, int) and value >= 0, (name, a, b)

    @pytest.mark.parametrize("name, order", [("cyclic(6)", 6), ("binary_dihedral(8)", 8), ("binary_tetrahedral", 24)])
    def test_regular_representation(self, name, order):
        group, _ = catalog_load(name)
        for a, b in [(1, 0), (1, 1), (2, 1), (2, 2)]:
            assert moment(group, Regular(), a, b) == order ** (a + b - 1)


class TestProductRule:
    def test_product_multiplies_legs(self):
        group = ProductGroup(factors=(SpecialUnitaryGroup(n=2), cyclic(3)))
        rep = ExternalTensor(legs=(Std(), FiniteGiven()))
        assert moment(group, rep, 4, 1) == 0
        assert moment(group, rep, 3, 3) == oracles.su2_std(3, 3)

    def test_product_with_torus(self):
        group = ProductGroup(factors=(TorusGroup(rank=1), UnitaryGroup(n=2)))
        rep = ExternalTensor(legs=(TorusWeights(weights=((1,),)), Std()))
        assert moment(group, rep, 2, 2) == 2
        assert moment(group, rep, 2, 1) == 0


class TestMomentTable:
    def test_u1_identity_pattern(self, engine):
        table = engine.moment_table(*U1, 2, 2)
        for a in range(3):
            for b in range(3):
                assert table.get(a, b) == (1 if a == b else 0)

    def test_su2_anti_diagonal(self, engine):
        table = engine.moment_table(SpecialUnitaryGroup(n=2), Std(), 3, 3)
        assert table.get(3, 3) == 5
        for total in range(7):
            values = {table.get(a, total - a) for a in range(4) if 0 <= total - a <= 3}
            assert len(values) == 1

    def test_u2_diagonal(self, engine):
        table = engine.moment_table(UnitaryGroup(n=2), Std(), 4, 4)
        assert [table.diagonal()[a] for a in range(1, 5)] == [1, 2, 5, 14]

    def test_rectangular_table(self, engine):
        table = engine.moment_table(*catalog_load("cyclic(3)"), 5, 2)
        assert len(table.rows()) == 18
        assert table.get(5, 2) == 1
        assert table.get(4, 2) == 0

    def test_zero_table(self, engine):
        table = engine.moment_table(UnitaryGroup(n=2), Std(), 0, 0)
        assert table.rows() == [(0, 0, 1)]

    def test_symmetry_and_bounds(self, engine):
        table = engine.moment_table(*catalog_load("binary_octahedral"), 5, 5)
        assert table.violations() == []
        for a in range(6):
            for b in range(6):
                assert table.get(a, b) == table.get(b, a)

    def test_engine_matches_pure_function(self, engine):
        group, rep = UnitaryGroup(n=3), Std()
        table = engine.moment_table(group, rep, 4, 4)
        for a in range(5):
            for b in range(5):
                assert table.get(a, b) == moment(group, rep, a, b)

    def test_module_level_table(self):
        table = moment_table(SpecialUnitaryGroup(n=2), Std(), 2, 2, max_workers=1)
        assert table.get(2, 2) == 2

    def test_cell_failure_is_wrapped(self, engine, monkeypatch):
        def broken(*args):
            raise EvaluationError("boom")

        monkeypatch.setattr("services.moments.engine._finite_cell", broken)
        with pytest.raises(CellEvaluationError) as info:
            engine.moment_table(*catalog_load("cyclic(4)"), 2, 2)
        assert (info.value.a, info.value.b) == (1, 0)

    def test_unsupported_cell_is_not_wrapped(self, engine, monkeypatch):
        monkeypatch.setattr("services.moments.engine.config.finite_max_degree", 3)
        with pytest.raises(UnsupportedGroupError) as info:
            engine.moment_table(*catalog_load("cyclic(4)"), 2, 2)
        assert not isinstance(info.value, CellEvaluationError)

    def test_violations_reported(self):
        table = MomentTable(group_id="g", rep_id="v", dim=1, amax=1, bmax=1,
                            entries={(0, 0): 1, (0, 1): 2, (1, 0): 3, (1, 1): 1})
        problems = table.violations()
        assert any("exceeds" in p for p in problems)
        assert any("but" in p for p in problems)
        with pytest.raises(EvaluationError):
            table.check_invariants()

    def test_negative_degrees_rejected(self, engine):
        with pytest.raises(ValueError):
            engine.moment(UnitaryGroup(n=2), Std(), -1, 0)


class TestEvaluatorAgreement:
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_u1_weyl_matches_torus(self, k):
        torus = torus_restriction(TorusGroup(rank=1), TorusWeights(weights=((k,),)))
        power = Std() if k == 1 else Symmetric(k=k, of=Std())
        unitary = torus_restriction(UnitaryGroup(n=1), power)
        for a in range(7):
            for b in range(7):
                assert weyl_invariants(UnitaryGroup(n=1), unitary, a, b) == torus_invariants(
                    torus, a, b
                ), (k, a, b)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_unitary_dominated_by_maximal_torus(self, n):
        basis = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        torus = (TorusGroup(rank=n), TorusWeights(weights=basis))
        for a in range(4):
            for b in range(4):
                assert moment(UnitaryGroup(n=n), Std(), a, b) <= moment(*torus, a, b)


class TestSubgroupInequality:
    def test_catalog_pairs(self, shared_engine):
        for sub, parent in catalog_pairs():
            small = catalog_entry(sub)
            big = catalog_entry(parent)
            for a in range(7):
                for b in range(7):
                    assert shared_engine.moment(big.group, big.rep, a, b) <= shared_engine.moment(
                        small.group, small.rep, a, b
                    ), (sub, parent, a, b)
