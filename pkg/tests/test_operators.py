"""Graded operators and the identity suite on the rank-one model."""

from fractions import Fraction

import pytest

from cosym3 import contact, operators
from cosym3.contact import PhiStarTable
from cosym3.exterior import ModelDims, Multivector, wedge
from cosym3.identities import verify_identities
from cosym3.operators import (
    GradedOperator,
    anticommutator,
    commutator,
    full_basis,
    horizontal_basis,
    op_H,
    op_I,
    op_K,
    op_K_s,
    op_L,
    op_Lambda,
    op_Lambda_star,
    op_e,
    op_l,
    op_lambda,
    sector_000,
)

D1 = ModelDims(1)
FULL = full_basis(D1)
HOR = horizontal_basis(D1)


def blade(*idx):
    return Multivector.blade(tuple(idx))


class TestWedgeContractionPairs:
    def test_anticommutator_same_index_is_identity(self):
        result = anticommutator(op_lambda(D1, 1, FULL), op_l(D1, 1, FULL))
        assert result == GradedOperator.identity(FULL)

    def test_anticommutator_mixed_indices_vanishes(self):
        result = anticommutator(op_lambda(D1, 1, FULL), op_l(D1, 2, FULL))
        assert result.is_zero()

    def test_wedge_squares_to_zero(self):
        result = anticommutator(op_l(D1, 1, FULL), op_l(D1, 1, FULL))
        assert result.is_zero()


class TestProjections:
    def test_action_on_blades(self):
        e1 = op_e(D1, 1, FULL)
        eta1 = blade(contact.eta_index(D1, 1))
        assert e1.apply(eta1) == eta1
        assert not e1.apply(blade(0))

    def test_idempotent_and_commuting(self):
        e1, e2 = op_e(D1, 1, FULL), op_e(D1, 2, FULL)
        assert e1.compose(e1) == e1
        assert commutator(e1, e2).is_zero()


class TestSector:
    def test_degree_zero(self):
        assert sector_000(D1, 0) == ((),)

    def test_binomial_dimension(self):
        assert len(sector_000(D1, 2)) == 6

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            sector_000(D1, 5)

    def test_cube_inverse_isomorphisms(self):
        l1, lam1 = op_l(D1, 1, FULL), op_lambda(D1, 1, FULL)
        eta1 = contact.eta_index(D1, 1)
        for k in FULL.degrees():
            for b in FULL.blades(k):
                mv = Multivector.blade(b)
                if eta1 in b:
                    assert l1.apply(lam1.apply(mv)) == mv
                else:
                    assert lam1.apply(l1.apply(mv)) == mv


class TestLefschetzPair:
    def test_star_route_equals_contraction_route(self):
        assert op_Lambda_star(D1, 1, FULL) == op_Lambda(D1, 1, FULL)

    def test_commutes_with_projections(self):
        assert commutator(op_L(D1, 1, FULL), op_e(D1, 2, FULL)).is_zero()

    def test_adjoint_on_xi_gives_twice_rank(self):
        # Direct contraction of the explicit two-form: the value is 2n
        # (matching [L, Lambda] = -H in degree zero), here 2.
        lam = op_Lambda(D1, 1, FULL)
        assert lam.apply(contact.xi_form(D1, 1)) == Multivector.scalar(2)

    def test_adjoint_on_xi_rank_two(self):
        dims = ModelDims(2)
        lam = operators.op_Lambda(dims, 1, full_basis(dims))
        assert lam.apply(contact.xi_form(dims, 1)) == Multivector.scalar(4)

    def test_weight_operator(self):
        H = op_H(D1, HOR)
        assert H.apply(Multivector.scalar(1)) == Multivector.scalar(2)
        assert not H.apply(blade(0, 1))  # weight 2n - k vanishes at k = 2n
        top = Multivector.blade(tuple(range(4)))
        assert H.apply(top) == Fraction(-2) * top

    def test_weight_commutator(self):
        L = op_L(D1, 1, HOR)
        Lam = op_Lambda(D1, 1, HOR)
        H = op_H(D1, HOR)
        assert commutator(L, Lam) == -H


class TestK:
    def test_single_factor_action(self):
        K1 = op_K(D1, 1, HOR)
        assert K1.apply(blade(0)) == blade(1)

    def test_mixed_commutators(self):
        L1 = op_L(D1, 1, HOR)
        Lam2 = op_Lambda(D1, 2, HOR)
        Lam3 = op_Lambda(D1, 3, HOR)
        assert commutator(L1, Lam2) == op_K(D1, 3, HOR)
        assert commutator(L1, Lam3) == -op_K(D1, 2, HOR)

    def test_zeta_x_anticommutators(self):
        # {zeta_s ^ -, i_X_s} = 1 and the four companion identities fixing
        # the contraction signs.
        z, pa, pb, pg = 0, 1, 2, 3

        def wedge_op(slot):
            return GradedOperator.from_function(
                f"w{slot}", 1, FULL, lambda mv: wedge(Multivector.blade((slot,)), mv)
            )

        def contraction_op(slot):
            return GradedOperator.from_function(
                f"c{slot}", -1, FULL, lambda mv: contact.frame_interior(D1, slot, mv)
            )

        assert anticommutator(wedge_op(z), contraction_op(pa)).is_zero()
        assert anticommutator(wedge_op(z), contraction_op(z)) == GradedOperator.identity(FULL)
        assert anticommutator(wedge_op(pb), contraction_op(pg)).is_zero()
        assert (
            anticommutator(wedge_op(pb), contraction_op(pb))
            == GradedOperator.identity(FULL).scale(-1)
        )
        assert anticommutator(wedge_op(pa), contraction_op(z)).is_zero()


class TestSubstitutionOperators:
    def test_zero_substitutions_is_identity(self):
        assert op_K_s(D1, 1, 0, HOR) == GradedOperator.identity(HOR)

    def test_one_substitution_is_k(self):
        assert op_K_s(D1, 1, 1, HOR) == op_K(D1, 1, HOR)

    def test_recursion_on_degree_two(self):
        # K_1 K_{1,1} = 2 K_{1,2} - 2 K_{1,0} on two-forms (k = 2).
        K = op_K(D1, 1, HOR)
        K0 = op_K_s(D1, 1, 0, HOR)
        K1 = op_K_s(D1, 1, 1, HOR)
        K2 = op_K_s(D1, 1, 2, HOR)
        for b in HOR.blades(2):
            mv = Multivector.blade(b)
            lhs = K.apply(K1.apply(mv))
            rhs = Fraction(2) * K2.apply(mv) - Fraction(2) * K0.apply(mv)
            assert lhs == rhs

    def test_top_substitution_is_full_pullback(self):
        I1 = op_I(D1, 1, HOR)
        for k in HOR.degrees():
            top = op_K_s(D1, 1, k, HOR)
            for b in HOR.blades(k):
                mv = Multivector.blade(b)
                assert top.apply(mv) == I1.apply(mv)

    def test_negative_count_rejected(self):
        with pytest.raises(ValueError):
            op_K_s(D1, 1, -1, HOR)


class TestQuaternionAction:
    def test_square_on_one_forms(self):
        I1 = op_I(D1, 1, HOR)
        for b in HOR.blades(1):
            mv = Multivector.blade(b)
            assert I1.apply(I1.apply(mv)) == -mv

    def test_product_rule_apply_first_then_second(self):
        # Doing I_1 and then I_2 realizes I_3 on one-forms; the reverse
        # order flips the sign.
        I1, I2, I3 = (op_I(D1, a, HOR) for a in (1, 2, 3))
        for b in HOR.blades(1):
            mv = Multivector.blade(b)
            assert I2.apply(I1.apply(mv)) == I3.apply(mv)
            assert I1.apply(I2.apply(mv)) == -I3.apply(mv)

    def test_square_on_two_forms(self):
        I1 = op_I(D1, 1, HOR)
        for b in HOR.blades(2):
            mv = Multivector.blade(b)
            assert I1.apply(I1.apply(mv)) == mv


class TestVerifySuite:
    def test_rank_one_all_pass(self):
        reports = verify_identities(1)
        assert len(reports) == 20
        assert [r.name for r in reports] == sorted(r.name for r in reports)
        failed = [r for r in reports if not r.passed]
        assert not failed

    def test_expected_identities_present(self):
        names = {r.name for r in verify_identities(1)}
        required = {
            "anticommutator_lambda_l",
            "anticommutator_nilpotence",
            "eta_projections",
            "cube_isomorphisms",
            "adjoint_via_star_equals_contraction",
            "weight_commutator",
            "mixed_commutators",
            "weight_grading",
            "bracket_closure",
            "substitution_recursion",
            "quaternion_relations",
        }
        assert required <= names

    def test_corrupted_table_fails_with_witness(self):
        table = PhiStarTable.build(D1).with_sign_flip(1, 0)
        reports = verify_identities(1, table)
        failed = [r for r in reports if not r.passed]
        assert failed
        assert all(r.witness is not None for r in failed)

    def test_unsupported_rank_rejected(self):
        with pytest.raises(ValueError):
            verify_identities(9)


class TestGradedOperatorPlumbing:
    def test_shift_mismatch_rejected(self):
        with pytest.raises(ValueError):
            op_l(D1, 1, FULL) + op_lambda(D1, 1, FULL)

    def test_from_function_degree_validation(self):
        with pytest.raises(ValueError):
            GradedOperator.from_function(
                "bad", 0, FULL, lambda mv: wedge(Multivector.blade((0,)), mv)
            )

    def test_first_difference_reports_earliest_degree(self):
        ident = GradedOperator.identity(FULL)
        diff = ident.first_difference(GradedOperator.zero(FULL))
        assert diff is not None
        assert diff[0] == 0

    def test_star_conjugation_requires_full_basis(self):
        with pytest.raises(ValueError):
            op_Lambda_star(D1, 1, HOR)
