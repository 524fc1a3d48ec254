import math

import numpy as np
import pytest

from ndswarm import (RotationPlane, ViewState, apply_view, plane_rotation,
                     rotate, translate)
from ndswarm.view import orthonormality_drift


class TestPlaneRotation:
    @pytest.mark.parametrize("plane", list(RotationPlane))
    def test_zero_angle_is_identity(self, plane):
        np.testing.assert_array_equal(plane_rotation(plane, 0.0), np.eye(4))

    def test_xy_quarter_turn(self):
        r = plane_rotation(RotationPlane.XY, math.pi / 2)
        np.testing.assert_allclose(r @ [1, 0, 0, 0], [0, 1, 0, 0], atol=1e-15)
        np.testing.assert_allclose(r @ [0, 1, 0, 0], [-1, 0, 0, 0], atol=1e-15)

    def test_zt_entries(self):
        angle = math.pi / 4
        r = plane_rotation(RotationPlane.ZT, angle)
        c, s = math.cos(angle), math.sin(angle)
        expected = np.eye(4)
        expected[2, 2] = c
        expected[3, 3] = c
        expected[2, 3] = -s
        expected[3, 2] = s
        np.testing.assert_array_equal(r, expected)

    def test_inverse_cancels(self):
        rng = np.random.default_rng(20)
        for _ in range(100):
            plane = list(RotationPlane)[rng.integers(0, 6)]
            angle = float(rng.uniform(-10, 10))
            product = plane_rotation(plane, angle) @ plane_rotation(plane,
                                                                    -angle)
            np.testing.assert_allclose(product, np.eye(4), atol=1e-12)


class TestRotate:
    def test_composition_matches_single_rotation(self):
        vs = ViewState()
        vs = rotate(vs, RotationPlane.XY, math.pi / 4)
        vs = rotate(vs, RotationPlane.XY, math.pi / 4)
        np.testing.assert_allclose(
            vs.rotation, plane_rotation(RotationPlane.XY, math.pi / 2),
            atol=1e-12)

    def test_rotation_then_inverse_is_identity(self):
        vs = rotate(ViewState(), RotationPlane.YT, 0.7)
        vs = rotate(vs, RotationPlane.YT, -0.7)
        np.testing.assert_allclose(vs.rotation, np.eye(4), atol=1e-12)

    def test_thousand_random_rotations_stay_orthonormal(self):
        rng = np.random.default_rng(21)
        planes = list(RotationPlane)
        vs = ViewState()
        for _ in range(1000):
            vs = rotate(vs, planes[rng.integers(0, 6)],
                        float(rng.uniform(-math.pi, math.pi)))
        assert orthonormality_drift(vs.rotation) < 1e-9
        assert abs(np.linalg.det(vs.rotation) - 1.0) < 1e-9

    def test_translation_untouched(self):
        vs = translate(ViewState(), [1.0, 2.0, 3.0, 4.0])
        vs = rotate(vs, RotationPlane.XZ, 1.0)
        np.testing.assert_array_equal(vs.translation, [1, 2, 3, 4])


class TestTranslate:
    def test_zero_delta_keeps_state(self):
        vs = ViewState()
        moved = translate(vs, [0.0, 0.0, 0.0, 0.0])
        np.testing.assert_array_equal(moved.translation, vs.translation)
        np.testing.assert_array_equal(moved.rotation, vs.rotation)

    def test_delta_then_inverse(self):
        vs = translate(ViewState(), [1, 0, 0, 0])
        vs = translate(vs, [-1, 0, 0, 0])
        np.testing.assert_array_equal(vs.translation, np.zeros(4))

    def test_additivity(self):
        delta = np.array([0.3, -0.7, 2.0, 0.1])
        twice = translate(translate(ViewState(), delta), delta)
        once = translate(ViewState(), delta * 2)
        np.testing.assert_allclose(twice.translation, once.translation,
                                   atol=1e-15)

    def test_bad_delta_raises(self):
        with pytest.raises(ValueError):
            translate(ViewState(), [1.0, 2.0])


class TestApplyView:
    def test_identity_passthrough(self):
        pts = np.random.default_rng(22).standard_normal((4, 9))
        np.testing.assert_array_equal(apply_view(ViewState(), pts), pts)

    def test_pure_translation(self):
        vs = translate(ViewState(), [1, 0, 0, 0])
        out = apply_view(vs, np.zeros((4, 1)))
        np.testing.assert_array_equal(out[:, 0], [1, 0, 0, 0])

    def test_xt_quarter_turn_sends_x_to_t(self):
        vs = rotate(ViewState(), RotationPlane.XT, math.pi / 2)
        out = apply_view(vs, np.array([[1.0], [0.0], [0.0], [0.0]]))
        np.testing.assert_allclose(out[:, 0], [0, 0, 0, 1], atol=1e-15)

    def test_wrong_row_count_raises(self):
        with pytest.raises(ValueError):
            apply_view(ViewState(), np.zeros((3, 5)))

    def test_rigid_motion_preserves_distances(self):
        rng = np.random.default_rng(23)
        planes = list(RotationPlane)
        for _ in range(50):
            vs = ViewState()
            for _ in range(8):
                vs = rotate(vs, planes[rng.integers(0, 6)],
                            float(rng.uniform(-3, 3)))
            vs = translate(vs, rng.standard_normal(4))
            p, q = rng.standard_normal((4, 1)), rng.standard_normal((4, 1))
            before = np.linalg.norm(p - q)
            after = np.linalg.norm(apply_view(vs, p) - apply_view(vs, q))
            assert abs(before - after) < 1e-9

    def test_homogeneous_path_equivalence(self):
        rng = np.random.default_rng(24)
        vs = translate(rotate(ViewState(), RotationPlane.YZ, 1.1),
                       [0.5, -1.0, 2.0, 0.25])
        pts = rng.standard_normal((4, 20))
        direct = apply_view(vs, pts)
        homogeneous = vs.view_matrix @ np.vstack([pts, np.ones(20)])
        np.testing.assert_allclose(direct, homogeneous[:4], atol=1e-12)
        np.testing.assert_array_equal(vs.view_matrix[4], [0, 0, 0, 0, 1])


class TestViewState:
    def test_serialization_round_trip(self):
        vs = translate(rotate(ViewState(), RotationPlane.XT, 0.4),
                       [1, 2, 3, 4])
        back = ViewState.from_dict(vs.to_dict())
        np.testing.assert_array_equal(back.rotation, vs.rotation)
        np.testing.assert_array_equal(back.translation, vs.translation)

    def test_rejects_non_rotation(self):
        with pytest.raises(ValueError, match="orthogonal"):
            ViewState(rotation=np.eye(4) * 2.0)

    def test_rejects_reflection(self):
        flip = np.eye(4)
        flip[0, 0] = -1.0
        with pytest.raises(ValueError):
            ViewState(rotation=flip)

    def test_immutable_arrays(self):
        vs = ViewState()
        with pytest.raises(ValueError):
            vs.rotation[0, 0] = 2.0
