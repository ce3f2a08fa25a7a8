import numpy as np
import pytest

from curvops.frame import ModelPoint, StructureConstants, WarpProfile, eval_warp
from curvops.jets import jexp
from curvops.koszul import (
    bracket_table,
    compare_tensors,
    connection,
    oracle_tensor,
    space_form_tensor,
)
from curvops.tensor import component_table, first_bianchi_residual


class TestBracketTable:
    def test_n2_single_bracket(self):
        table = bracket_table(ModelPoint.at(2, 1.0, 1.5))
        assert table.bracket(1, 2) == {3: 1.5}
        assert table.bracket(2, 1) == {3: -1.5}
        assert table.bracket(1, 3) == {}
        assert table.bracket(3, 4) == {}

    def test_n3_reference_brackets(self):
        table = bracket_table(ModelPoint.complex_hyperbolic(3, 1.0))
        assert table.bracket(1, 2) == {5: 2.0}
        assert table.bracket(3, 4) == {5: 2.0}
        assert table.bracket(1, 3) == {}
        assert table.bracket(2, 4) == {}

    def test_antisymmetry_exact(self):
        table = bracket_table(ModelPoint.at(3, 1.0, [0.7, 1.9]))
        assert np.array_equal(table.coeffs, -np.einsum("jim->ijm", table.coeffs))

    def test_theta_and_radial_central(self):
        table = bracket_table(ModelPoint.at(3, 1.0, [2.0, 2.0]))
        for i in range(1, 7):
            assert table.bracket(i, 5) == {}
            assert table.bracket(i, 6) == {}

    def test_jacobi_identity(self):
        # [[Ei,Ej],Ek] expands through the table itself; theta is central so
        # every double bracket vanishes
        b = bracket_table(ModelPoint.at(4, 1.0, [2.0, 1.0, 0.5])).coeffs
        double = np.einsum("ijm,mkl->ijkl", b, b)
        jacobi = double + np.einsum("jkil->ijkl", double) + np.einsum("kijl->ijkl", double)
        assert np.abs(jacobi).max() == 0.0

    def test_index_range(self):
        table = bracket_table(ModelPoint.at(2, 1.0, 2.0))
        with pytest.raises(ValueError):
            table.bracket(0, 1)


class TestConnection:
    def test_radial_geodesic(self):
        conn = connection(ModelPoint.at(2, 1.3, 1.1))
        for l in range(1, 5):
            assert conn.coefficient(4, 4, l) == 0.0

    def test_radial_shape_operator_term(self):
        # <nabla_{X_i} X_i, d/dr> = -h h' for every horizontal direction
        for point in (ModelPoint.at(2, 0.9, 1.7), ModelPoint.at(3, 2.2, [0.3, 1.1])):
            conn = connection(point)
            jet = eval_warp(point.warp, point.r)
            ra = 2 * point.n
            for i in range(1, 2 * point.n - 1):
                got = conn.coefficient(i, i, ra) * conn.metric_diag[ra - 1]
                assert got == pytest.approx(-jet.h * jet.hp, rel=1e-14)

    def test_hand_derived_coefficients_n2(self):
        c1 = 1.4
        point = ModelPoint.at(2, 1.1, c1)
        jet = eval_warp(point.warp, point.r)
        conn = connection(point)
        h, hp, v, vp = jet.h, jet.hp, jet.v, jet.vp
        assert conn.coefficient(1, 2, 3) == pytest.approx(c1 / 2, rel=1e-14)
        assert conn.coefficient(2, 1, 3) == pytest.approx(-c1 / 2, rel=1e-14)
        assert conn.coefficient(1, 3, 2) == pytest.approx(-c1 * v * v / (8 * h * h), rel=1e-13)
        assert conn.coefficient(1, 4, 1) == pytest.approx(hp / h, rel=1e-14)
        assert conn.coefficient(3, 3, 4) == pytest.approx(-v * vp / 4, rel=1e-14)
        assert conn.coefficient(4, 3, 3) == pytest.approx(vp / v, rel=1e-14)

    def test_torsion_free(self):
        rng = np.random.default_rng(17)
        for _ in range(50):
            n = int(rng.integers(2, 5))
            point = ModelPoint(
                n=n, r=float(rng.uniform(0.3, 6.0)),
                c=StructureConstants(tuple(rng.uniform(0.0, 2.0, n - 1))),
            )
            conn = connection(point)
            assert conn.torsion_residual(bracket_table(point)) < 1e-12

    def test_metric_compatibility(self):
        rng = np.random.default_rng(23)
        for _ in range(25):
            n = int(rng.integers(2, 5))
            point = ModelPoint(
                n=n, r=float(rng.uniform(0.3, 6.0)),
                c=StructureConstants(tuple(rng.uniform(0.0, 2.0, n - 1))),
            )
            scale = float(np.abs(connection(point).metric_diag_r).max())
            assert connection(point).compatibility_residual() < 1e-11 * max(1.0, scale)

    def test_fd_derivative_fallback_agrees_with_jets(self):
        point = ModelPoint.at(3, 1.9, [1.3, 0.7])
        jet_mode = connection(point, "jet")
        fd_mode = connection(point, "fd")
        assert np.abs(jet_mode.gamma_r - fd_mode.gamma_r).max() < 1e-6
        assert np.array_equal(jet_mode.gamma, fd_mode.gamma)

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            connection(ModelPoint.at(2, 1.0, 2.0), "symbolic")


class TestSpaceFormTensor:
    def test_plane_values(self):
        t = space_form_tensor(3)  # horizontal dimension 4
        assert t[0, 1, 0, 1] == -4.0  # holomorphic pair
        assert t[0, 2, 0, 2] == -1.0  # totally real pair
        assert t[0, 1, 2, 3] == -2.0
        assert t[0, 2, 1, 3] == -1.0
        assert t[0, 3, 1, 2] == 1.0


class TestOracle:
    def test_sign_pin_reference_plane(self):
        t = oracle_tensor(ModelPoint.complex_hyperbolic(2, 1.3))
        assert t.component(1, 2, 1, 2) == pytest.approx(-4.0, abs=1e-12)

    def test_matches_closed_form_n2(self):
        point = ModelPoint.complex_hyperbolic(2, 1.0)
        cmp = compare_tensors(component_table(point), oracle_tensor(point))
        assert cmp.max_abs_diff < 1e-10

    def test_matches_closed_form_n3_generic(self):
        point = ModelPoint.at(3, 2.0, [1.3, 0.7])
        cmp = compare_tensors(component_table(point), oracle_tensor(point))
        assert cmp.max_abs_diff < 1e-9

    def test_matches_closed_form_custom_warp(self):
        # general (h, v) layer: an exponential warp exercises the formulas
        # away from the reference profile
        profile = WarpProfile.custom(lambda rj: (jexp(rj * 0.5), jexp(rj)), label="exp")
        point = ModelPoint(n=2, r=1.2, c=StructureConstants((1.1,)), warp=profile)
        cmp = compare_tensors(component_table(point), oracle_tensor(point))
        assert cmp.max_abs_diff < 1e-12

    def test_oracle_bianchi_and_symmetries(self):
        t = oracle_tensor(ModelPoint.at(3, 1.5, [0.9, 1.7]))
        assert first_bianchi_residual(t) < 1e-10
        assert t.component(2, 1, 1, 2) == -t.component(1, 2, 1, 2)
        assert t.component(3, 4, 1, 2) == t.component(1, 2, 3, 4)

    def test_reference_oracle_radius_independent(self):
        a = oracle_tensor(ModelPoint.complex_hyperbolic(3, 1.0))
        b = oracle_tensor(ModelPoint.complex_hyperbolic(3, 5.0))
        keys = set(a.components) | set(b.components)
        assert max(abs(a.component(*k) - b.component(*k)) for k in keys) < 1e-9

    def test_fd_mode_full_tensor(self):
        point = ModelPoint.at(2, 1.4, 0.8)
        cmp = compare_tensors(oracle_tensor(point, "fd"), component_table(point))
        assert cmp.max_abs_diff < 1e-6


class TestCompareTensors:
    def test_identical_tensors(self):
        t = component_table(ModelPoint.complex_hyperbolic(2, 1.0))
        cmp = compare_tensors(t, t)
        assert cmp.max_abs_diff == 0.0
        assert cmp.worst_tuple == (1, 2, 1, 2)

    def test_dimension_mismatch(self):
        a = component_table(ModelPoint.complex_hyperbolic(2, 1.0))
        b = component_table(ModelPoint.complex_hyperbolic(3, 1.0))
        with pytest.raises(ValueError):
            compare_tensors(a, b)

    def test_constant_dependence_shows_in_mixed_terms(self):
        at_two = oracle_tensor(ModelPoint.complex_hyperbolic(2, 1.0))
        at_zero = component_table(ModelPoint.integrable(2, 1.0))
        cmp = compare_tensors(at_two, at_zero)
        assert cmp.max_abs_diff > 0.1
        i, j, k, l = cmp.worst_tuple
        assert (i, j) != (k, l)  # a mixed term carries the difference
