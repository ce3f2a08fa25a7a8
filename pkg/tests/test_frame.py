import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvops.frame import (
    COSH_SINH2,
    FrameRole,
    ModelPoint,
    R_MIN,
    StructureConstants,
    WarpProfile,
    build_wedge_basis,
    cosh_sinh2_evaluator,
    eval_warp,
    frame_role,
    holomorphic_partner,
    radial_index,
    theta_index,
)
from curvops.jets import Jet2, jexp


class TestHolomorphicPartner:
    def test_pairing_examples(self):
        assert holomorphic_partner(1, 2) == 2
        assert holomorphic_partner(4, 3) == 3
        # the theta/radial pair plays the same role
        for n in (2, 3, 5):
            assert holomorphic_partner(2 * n - 1, n) == 2 * n

    @settings(max_examples=60, deadline=None)
    @given(n=st.integers(2, 8), data=st.data())
    def test_involution(self, n, data):
        i = data.draw(st.integers(1, 2 * n))
        assert holomorphic_partner(holomorphic_partner(i, n), n) == i

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            holomorphic_partner(0, 2)
        with pytest.raises(ValueError):
            holomorphic_partner(5, 2)

    def test_roles(self):
        n = 3
        assert frame_role(1, n) is FrameRole.HORIZONTAL
        assert frame_role(4, n) is FrameRole.HORIZONTAL
        assert frame_role(theta_index(n), n) is FrameRole.THETA
        assert frame_role(radial_index(n), n) is FrameRole.RADIAL


class TestWedgeBasis:
    def test_n2_order(self):
        basis = build_wedge_basis(2)
        assert basis.pairs == ((1, 2), (3, 4), (1, 3), (2, 4), (1, 4), (2, 3))
        assert basis.blocks == ((0, 1), (2, 3), (4, 5))

    def test_n3_first_block(self):
        basis = build_wedge_basis(3)
        assert basis.pairs[:3] == ((1, 2), (3, 4), (5, 6))
        # published ordering of the remaining 2-element blocks
        assert basis.pairs[3:7] == ((1, 3), (2, 4), (1, 4), (2, 3))
        assert basis.pairs[7:11] == ((1, 5), (2, 6), (1, 6), (2, 5))
        assert basis.pairs[11:] == ((3, 5), (4, 6), (3, 6), (4, 5))

    def test_length_formula(self):
        assert len(build_wedge_basis(4)) == 28
        for n in range(2, 9):
            assert len(build_wedge_basis(n)) == 2 * n * n - n

    def test_every_pair_once_and_partition(self):
        for n in (2, 3, 4, 6):
            basis = build_wedge_basis(n)
            assert len(set(basis.pairs)) == len(basis.pairs)
            expected = {(i, j) for i in range(1, 2 * n + 1) for j in range(i + 1, 2 * n + 1)}
            assert set(basis.pairs) == expected
            covered = [k for block in basis.blocks for k in block]
            assert sorted(covered) == list(range(len(basis.pairs)))

    def test_two_blocks_are_partner_pairs(self):
        for n in (2, 3, 5):
            basis = build_wedge_basis(n)
            for b, members in enumerate(basis.blocks[1:], start=1):
                (i, j), (ip, jp) = (basis.pairs[k] for k in members)
                assert {i, ip} in ({i, holomorphic_partner(i, n)},)
                assert holomorphic_partner(i, n) == ip
                assert {holomorphic_partner(j, n)} == {jp}
                assert basis.block_kind(b) in ("horizontal_vertical", "double_horizontal")

    def test_block_lookup(self):
        basis = build_wedge_basis(3)
        assert basis.block_of_pairs((1, 3), (2, 4)) == 1
        assert basis.block_of_pairs((2, 4), (1, 3)) == 1
        with pytest.raises(ValueError):
            basis.block_of_pairs((1, 2), (3, 4))  # holomorphic block, not 2-element

    def test_rejects_small_n(self):
        with pytest.raises(ValueError):
            build_wedge_basis(1)


class TestWarp:
    def test_reference_values_at_zero(self):
        jet = eval_warp(COSH_SINH2, 0.0)
        assert (jet.h, jet.hp, jet.hpp) == (1.0, 0.0, 1.0)
        assert (jet.v, jet.vp, jet.vpp) == (0.0, 2.0, 0.0)

    def test_vpp_identity(self):
        rng = np.random.default_rng(3)
        for r in rng.uniform(R_MIN, 10.0, 50):
            jet = eval_warp(COSH_SINH2, r)
            assert jet.vpp == pytest.approx(4.0 * jet.v, rel=1e-15)

    def test_reference_identities_random_radii(self):
        rng = np.random.default_rng(11)
        for r in rng.uniform(R_MIN, 10.0, 200):
            jet = eval_warp(COSH_SINH2, r)
            assert abs(jet.hpp - jet.h) <= 1e-12 * jet.h
            assert abs(jet.vpp - 4 * jet.v) <= 1e-12 * max(1.0, jet.v)
            assert abs(jet.hp**2 - (jet.h**2 - 1.0)) <= 1e-12 * jet.h**2

    def test_closed_form_matches_jet_arithmetic_bitwise(self):
        profile = WarpProfile.custom(cosh_sinh2_evaluator)
        for r in (R_MIN, 0.7, 1.0, 3.3, 9.0):
            a, b = eval_warp(COSH_SINH2, r), eval_warp(profile, r)
            assert (a.h, a.hp, a.hpp, a.v, a.vp, a.vpp) == (b.h, b.hp, b.hpp, b.v, b.vp, b.vpp)

    def test_jets_match_finite_differences(self):
        # first derivatives: 3-point stencil at the stated step; second
        # derivatives need a wider 5-point stencil to stay under the same
        # absolute tolerance in float64
        r = 1.0
        jet = eval_warp(COSH_SINH2, r)
        e1 = 1e-5

        def fd1(f):
            return (f(r + e1) - f(r - e1)) / (2 * e1)

        assert abs(jet.hp - fd1(math.cosh)) < 1e-8
        assert abs(jet.vp - fd1(lambda x: math.sinh(2 * x))) < 1e-8

        e2 = 1e-3

        def fd2(f):
            return (
                -f(r + 2 * e2) + 16 * f(r + e2) - 30 * f(r) + 16 * f(r - e2) - f(r - 2 * e2)
            ) / (12 * e2 * e2)

        assert abs(jet.hpp - fd2(math.cosh)) < 1e-8
        assert abs(jet.vpp - fd2(lambda x: math.sinh(2 * x))) < 1e-8

    def test_custom_profile_with_exponential_warp(self):
        profile = WarpProfile.custom(lambda rj: (jexp(rj), jexp(rj * 2)), label="exp")
        jet = eval_warp(profile, 0.5)
        assert jet.h == pytest.approx(math.exp(0.5), rel=1e-15)
        assert jet.hp == pytest.approx(math.exp(0.5), rel=1e-15)
        assert jet.v == pytest.approx(math.e, rel=1e-15)
        assert jet.vpp == pytest.approx(4 * math.e, rel=1e-15)

    def test_custom_profile_requires_evaluator(self):
        from curvops.frame import WarpName

        with pytest.raises(ValueError):
            eval_warp(WarpProfile(WarpName.CUSTOM), 1.0)


class TestJet2:
    def test_division_chain(self):
        x = Jet2.variable(2.0)
        y = (x * x + 1.0) / x  # f = x + 1/x, f' = 1 - 1/x^2, f'' = 2/x^3
        assert y.f == pytest.approx(2.5)
        assert y.f1 == pytest.approx(0.75)
        assert y.f2 == pytest.approx(0.25)

    def test_zero_division(self):
        with pytest.raises(ZeroDivisionError):
            Jet2.variable(1.0) / Jet2.const(0.0)


class TestStructureConstants:
    def test_resolution(self):
        assert StructureConstants.resolve(3, None).values == (2.0, 2.0)
        assert StructureConstants.resolve(4, 0).values == (0.0, 0.0, 0.0)
        assert StructureConstants.resolve(3, [1.0, 0.5]).values == (1.0, 0.5)
        with pytest.raises(ValueError):
            StructureConstants.resolve(3, [1.0])

    def test_pair_lookup(self):
        c = StructureConstants((1.0, 0.5))
        assert c.for_odd(1) == 1.0
        assert c.for_odd(3) == 0.5
        with pytest.raises(ValueError):
            c.for_odd(2)
        for i, want in ((1, 1.0), (2, 1.0), (3, 0.5), (4, 0.5)):
            assert c.pair_value(i) == want

    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            StructureConstants((float("nan"),))


class TestModelPoint:
    def test_named_points(self):
        p = ModelPoint.complex_hyperbolic(3, 1.0)
        assert p.c.values == (2.0, 2.0)
        q = ModelPoint.integrable(3, 1.0)
        assert q.c.values == (0.0, 0.0)
        assert p.dim == 6

    def test_radius_floor(self):
        ModelPoint.complex_hyperbolic(2, R_MIN)
        with pytest.raises(ValueError):
            ModelPoint.complex_hyperbolic(2, R_MIN / 2)

    def test_dimension_validation(self):
        with pytest.raises(ValueError):
            ModelPoint.at(1, 1.0)
        with pytest.raises(ValueError):
            ModelPoint(n=3, r=1.0, c=StructureConstants((2.0,)))
