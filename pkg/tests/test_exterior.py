"""Exterior algebra core: wedge, contraction, star, pairing, blade order."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cosym3 import contact
from cosym3.exterior import (
    ModelDims,
    Multivector,
    hodge_star,
    interior,
    leading_blade,
    lex_sorted,
    pairing,
    wedge,
)
from helpers import homogeneous, multivectors

D1 = ModelDims(1)
D2 = ModelDims(2)


class TestWedge:
    def test_square_of_one_form_vanishes(self):
        z1 = Multivector.blade((0,))
        assert not wedge(z1, z1)

    def test_transposition_sign(self):
        e1, e2 = Multivector.blade((0,)), Multivector.blade((1,))
        assert wedge(e2, e1) == -wedge(e1, e2)
        assert wedge(e2, e1).coefficient((0, 1)) == -1

    def test_disjoint_ordered_factors(self):
        eta2 = Multivector.blade((contact.eta_index(D1, 2),))
        eta3 = Multivector.blade((contact.eta_index(D1, 3),))
        assert wedge(eta2, eta3) == Multivector.blade((5, 6))

    @given(a=multivectors(), b=multivectors())
    def test_bilinear(self, a, b):
        c = Multivector.blade((2, 4))
        assert wedge(a + b, c) == wedge(a, c) + wedge(b, c)
        assert wedge(c, a + b) == wedge(c, a) + wedge(c, b)

    @given(
        p=st.integers(0, 3),
        q=st.integers(0, 3),
        data=st.data(),
    )
    def test_graded_anticommutative(self, p, q, data):
        a = data.draw(homogeneous(degree=p))
        b = data.draw(homogeneous(degree=q))
        sign = (-1) ** (p * q)
        assert wedge(a, b) == sign * wedge(b, a)

    @given(a=multivectors(max_terms=3), b=multivectors(max_terms=3), c=multivectors(max_terms=3))
    @settings(deadline=None)
    def test_associative(self, a, b, c):
        assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


class TestInterior:
    def test_dual_pairing(self):
        assert interior(0, Multivector.blade((0,))) == Multivector.scalar(1)

    def test_orthogonality(self):
        # zeta_2 exists for n = 2; contracting along the zeta_1 slot kills it.
        zeta2 = Multivector.blade((contact.zeta_index(D2, 2),))
        assert not interior(contact.zeta_index(D2, 1), zeta2)

    def test_antiderivation_sign(self):
        zeta1 = Multivector.blade((contact.zeta_index(D2, 1),))
        zeta2 = Multivector.blade((contact.zeta_index(D2, 2),))
        product = wedge(zeta2, zeta1)
        assert interior(contact.zeta_index(D2, 1), product) == -zeta2

    @given(v=st.integers(0, 6), omega=multivectors())
    def test_nilpotent(self, v, omega):
        assert not interior(v, interior(v, omega))

    @given(
        v=st.integers(0, 6),
        p=st.integers(0, 3),
        data=st.data(),
    )
    def test_leibniz(self, v, p, data):
        a = data.draw(homogeneous(degree=p))
        b = data.draw(multivectors())
        lhs = interior(v, wedge(a, b))
        rhs = wedge(interior(v, a), b) + (-1) ** p * wedge(a, interior(v, b))
        assert lhs == rhs

    @given(v=st.integers(0, 6), w=st.integers(0, 6), omega=multivectors())
    def test_anticommutator_with_wedge(self, v, omega, w):
        slot = Multivector.blade((w,))
        result = interior(v, wedge(slot, omega)) + wedge(slot, interior(v, omega))
        assert result == (omega if v == w else Multivector.zero())


class TestHodgeStar:
    def test_volume_form(self):
        vol = hodge_star(Multivector.scalar(1), D1)
        assert vol == Multivector.blade(tuple(range(7)))

    def test_star_squared_identity_example(self):
        omega = wedge(Multivector.blade((0,)), Multivector.blade((1,)))
        assert hodge_star(hodge_star(omega, D1), D1) == omega

    @pytest.mark.parametrize("dims", [D1, D2])
    def test_star_squared_full_matrix(self, dims):
        from itertools import combinations

        for k in range(dims.dim + 1):
            for blade in combinations(range(dims.dim), k):
                mv = Multivector.blade(blade)
                assert hodge_star(hodge_star(mv, dims), dims) == mv

    def test_star_contraction_identity_exhaustive(self):
        # *(rho ^ *omega) = (-1)^((D-k)(k-1)) i_Y omega over the whole
        # 128-dimensional algebra and every coframe slot, n = 1.
        from itertools import combinations

        D = D1.dim
        for k in range(D + 1):
            sign = (-1) ** ((D - k) * (k - 1))
            for blade in combinations(range(D), k):
                omega = Multivector.blade(blade)
                star_omega = hodge_star(omega, D1)
                for v in range(D):
                    lhs = hodge_star(
                        wedge(Multivector.blade((v,)), star_omega), D1
                    )
                    assert lhs == sign * interior(v, omega)

    def test_rejects_mixed_degree(self):
        mixed = Multivector.scalar(1) + Multivector.blade((0,))
        with pytest.raises(ValueError):
            hodge_star(mixed, D1)


class TestPairing:
    def test_frame_pair_minus_half(self):
        omega = Multivector.blade((0, 1))  # zeta_1 ^ phi_1* zeta_1
        kvec = wedge(Multivector.blade((0,)), Multivector.blade((1,)))
        assert contact.pair_frame(D1, omega, kvec) == Fraction(-1, 2)

    def test_eta_pair_half(self):
        omega = Multivector.blade((5, 6))
        kvec = wedge(Multivector.blade((5,)), Multivector.blade((6,)))
        assert contact.pair_frame(D1, omega, kvec) == Fraction(1, 2)

    def test_dual_basis(self):
        assert contact.pair_frame(D1, Multivector.blade((0,)), Multivector.blade((0,))) == 1

    def test_default_normalization(self):
        blade = Multivector.blade((0, 1, 2))
        assert pairing(blade, blade) == Fraction(1, 6)

    def test_degree_mismatch_rejected(self):
        with pytest.raises(ValueError):
            pairing(Multivector.blade((0,)), Multivector.blade((0, 1)))

    @given(a=homogeneous(degree=2), b=homogeneous(degree=2))
    def test_bilinear_in_first_slot(self, a, b):
        kvec = Multivector.blade((1, 3))
        assert pairing(a + b, kvec) == pairing(a, kvec) + pairing(b, kvec)


class TestLexOrder:
    def test_leading_blade_of_xi(self):
        xi = contact.xi_form(D1, 1)
        assert leading_blade(xi) == (0, 1)

    def test_leading_blade_of_zero(self):
        assert leading_blade(Multivector.zero()) is None

    def test_block_order(self):
        zeta_eta = (contact.zeta_index(D1, 1), contact.eta_index(D1, 1))
        phi_eta = (contact.phi_zeta_index(D1, 1, 1), contact.eta_index(D1, 1))
        assert lex_sorted([phi_eta, zeta_eta]) == [zeta_eta, phi_eta]

    @given(omega=multivectors(), scalar=st.integers(1, 5))
    def test_leading_blade_scale_invariant(self, omega, scalar):
        assert leading_blade(omega) == leading_blade(Fraction(scalar) * omega)
