import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ndswarm import (RotationPlane, SlabConfig, SlabMode, ViewState,
                     filter_visible, rotate, slab_mask, translate)


def cloud(rng, n):
    return rng.standard_normal((4, n)) * 2.0


class TestSlabMask:
    def test_threshold_example(self):
        points = np.zeros((4, 3))
        points[3] = [0.2, -1.6, 1.4]
        mask = slab_mask(points, SlabConfig(threshold=1.5), ViewState())
        assert mask.tolist() == [True, False, True]

    def test_huge_threshold_keeps_everything(self):
        rng = np.random.default_rng(30)
        points = cloud(rng, 50)
        mask = slab_mask(points, SlabConfig(threshold=1e9), ViewState())
        assert mask.all()

    def test_boundary_is_excluded(self):
        points = np.zeros((4, 1))
        points[3, 0] = 1.5
        mask = slab_mask(points, SlabConfig(threshold=1.5), ViewState())
        assert not mask[0]

    def test_monotone_in_threshold_vs_bruteforce(self):
        rng = np.random.default_rng(31)
        points = cloud(rng, 50)
        vs = ViewState()
        narrow = slab_mask(points, SlabConfig(threshold=0.5), vs)
        wide = slab_mask(points, SlabConfig(threshold=1.0), vs)
        assert np.all(wide[narrow])  # kept at 0.5 implies kept at 1.0
        for i in range(50):
            assert narrow[i] == (abs(points[3, i]) < 0.5)
            assert wide[i] == (abs(points[3, i]) < 1.0)

    def test_pre_view_uses_rotation_row(self):
        rng = np.random.default_rng(32)
        vs = rotate(ViewState(), RotationPlane.XT, 0.8)
        spatial = cloud(rng, 40)
        mask = slab_mask(spatial, SlabConfig(threshold=1.0,
                                             mode=SlabMode.PRE_VIEW), vs)
        expected = np.abs(vs.rotation[3] @ spatial) < 1.0
        assert np.array_equal(mask, expected)

    def test_modes_agree_at_zero_translation(self):
        rng = np.random.default_rng(33)
        planes = list(RotationPlane)
        for _ in range(20):
            vs = ViewState()
            for _ in range(6):
                vs = rotate(vs, planes[rng.integers(0, 6)],
                            float(rng.uniform(-3, 3)))
            spatial = cloud(rng, 30)
            viewed = vs.rotation @ spatial
            cfg_post = SlabConfig(threshold=1.2)
            cfg_pre = SlabConfig(threshold=1.2, mode=SlabMode.PRE_VIEW)
            post = slab_mask(viewed, cfg_post, vs)
            pre = slab_mask(spatial, cfg_pre, vs)
            # identical within 1e-12: compare the projections themselves
            np.testing.assert_allclose(np.abs(viewed[3]),
                                       np.abs(vs.rotation[3] @ spatial),
                                       atol=1e-12)
            assert np.array_equal(post, pre)

    def test_xyz_rotations_never_change_post_view_mask(self):
        rng = np.random.default_rng(34)
        spatial = cloud(rng, 60)
        cfg = SlabConfig(threshold=0.9)
        base_vs = translate(ViewState(), rng.standard_normal(4))
        baseline = slab_mask(base_vs.rotation @ spatial
                             + base_vs.translation[:, None], cfg, base_vs)
        for plane in (RotationPlane.XY, RotationPlane.XZ, RotationPlane.YZ):
            vs = rotate(base_vs, plane, float(rng.uniform(-3, 3)))
            viewed = vs.rotation @ spatial + vs.translation[:, None]
            assert np.array_equal(slab_mask(viewed, cfg, vs), baseline)

    def test_wrong_shape_raises(self):
        with pytest.raises(ValueError):
            slab_mask(np.zeros((3, 4)), SlabConfig(), ViewState())

    @given(st.floats(0.01, 5.0), st.floats(0.01, 5.0), st.integers(0, 2 ** 31))
    @settings(max_examples=40, deadline=None)
    def test_monotone_superset_property(self, t_a, t_b, seed):
        lo, hi = sorted((t_a, t_b))
        points = cloud(np.random.default_rng(seed), 25)
        vs = ViewState()
        kept_lo = slab_mask(points, SlabConfig(threshold=lo), vs)
        kept_hi = slab_mask(points, SlabConfig(threshold=hi), vs)
        assert np.all(kept_hi[kept_lo])


class TestSlabConfig:
    @pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, math.nan])
    def test_threshold_must_be_positive_finite(self, bad):
        with pytest.raises(ValueError, match="positive"):
            SlabConfig(threshold=bad)

    def test_defaults(self):
        cfg = SlabConfig()
        assert cfg.threshold == 1.5
        assert cfg.mode is SlabMode.POST_VIEW


class TestFilterVisible:
    def test_all_true_is_identity(self):
        rng = np.random.default_rng(35)
        points = cloud(rng, 5)
        visuals = rng.standard_normal((10, 5))
        labels = tuple("abcde")
        p, v, lab, idx = filter_visible(points, visuals, labels,
                                        np.ones(5, dtype=bool))
        np.testing.assert_array_equal(p, points)
        np.testing.assert_array_equal(v, visuals)
        assert lab == labels
        assert idx.tolist() == [0, 1, 2, 3, 4]

    def test_all_false_yields_empty_frame(self):
        points = np.zeros((4, 3))
        visuals = np.zeros((10, 3))
        p, v, lab, idx = filter_visible(points, visuals, None,
                                        np.zeros(3, dtype=bool))
        assert p.shape == (4, 0)
        assert v.shape == (10, 0)
        assert lab is None and idx.size == 0

    def test_order_and_labels_preserved(self):
        points = np.arange(12, dtype=float).reshape(4, 3)
        visuals = np.arange(30, dtype=float).reshape(10, 3)
        p, v, lab, idx = filter_visible(points, visuals, ("a", "b", "c"),
                                        np.array([True, False, True]))
        assert lab == ("a", "c")
        assert idx.tolist() == [0, 2]
        np.testing.assert_array_equal(p, points[:, [0, 2]])

    def test_length_mismatch_raises(self):
        with pytest.raises(ValueError, match="mismatch"):
            filter_visible(np.zeros((4, 3)), np.zeros((10, 2)), None,
                           np.ones(3, dtype=bool))
        with pytest.raises(ValueError, match="mismatch"):
            filter_visible(np.zeros((4, 3)), np.zeros((10, 3)), ("a",),
                           np.ones(3, dtype=bool))
