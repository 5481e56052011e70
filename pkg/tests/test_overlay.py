import numpy as np
import pytest

from conftest import random_correspondences
from floorpath.costgrid import GridSpec
from floorpath.errors import OverlayError
from floorpath.homography import Homography, estimate, invert, project
from floorpath.overlay import OverlayStyle, marker_positions, render_overlay
from floorpath.planner import Cell, GridPath

SPEC = GridSpec(19, 20, 100)


def blank(h=1900, w=2000):
    return np.zeros((h, w, 3), dtype=np.uint8)


def test_single_cell_disc_centre():
    path = GridPath((Cell(0, 0),))
    out = render_overlay(blank(), path, SPEC, Homography.identity(), OverlayStyle(marker_radius_px=3))
    ys, xs = np.nonzero(out.any(axis=2))
    assert (xs.mean(), ys.mean()) == (50.0, 50.0)
    assert tuple(out[50, 50]) == (0, 255, 0)  # goal drawn last over the start


def test_empty_path_returns_copy():
    frame = np.random.default_rng(0).integers(0, 255, size=(20, 30, 3), dtype=np.uint8)
    out = render_overlay(frame, GridPath(()), SPEC, Homography.identity())
    assert np.array_equal(out, frame) and out is not frame


def test_only_drawn_pixels_change():
    frame = np.full((1900, 2000, 3), 17, dtype=np.uint8)
    path = GridPath(tuple(Cell(r, 10) for r in range(18, 14, -1)))
    style = OverlayStyle(marker_radius_px=1, line_width_px=1)
    out = render_overlay(frame, path, SPEC, Homography.identity(), style)
    changed = np.nonzero((out != frame).any(axis=2))
    # All changes within half a pixel of the vertical centre line x = 1050 plus marker radius.
    assert set(changed[1].tolist()) <= {1049, 1050, 1051}
    assert changed[0].min() >= 1550 - 1 and changed[0].max() <= 1850 + 1
    assert np.array_equal(frame, np.full_like(frame, 17))


def test_start_and_goal_colours():
    path = GridPath((Cell(1, 0), Cell(0, 0)))
    out = render_overlay(blank(300, 300), path, SPEC, Homography.identity())
    assert tuple(out[150, 50]) == (255, 0, 0)
    assert tuple(out[50, 50]) == (0, 255, 0)


def test_marker_positions_follow_inverse_homography(rng):
    for _ in range(20):
        h = estimate(random_correspondences(rng))
        path = GridPath((Cell(18, 10), Cell(17, 10), Cell(17, 11)))
        pts = marker_positions(path, SPEC, h)
        for cell, pt in zip(path.cells, pts):
            ref = project(invert(h), SPEC.cell_center(cell.row, cell.col))
            assert np.max(np.abs(pt - np.array(ref))) <= 0.5


def test_drawn_marker_lies_within_half_pixel():
    corr = random_correspondences(np.random.default_rng(7))
    h = estimate(corr)
    path = GridPath((Cell(9, 9),))
    ref = project(invert(h), SPEC.cell_center(9, 9))
    frame = blank(4000, 4000)
    if not (10 < ref[0] < 3990 and 10 < ref[1] < 3990):
        pytest.skip("marker projects outside the test frame")
    out = render_overlay(frame, path, SPEC, h, OverlayStyle(marker_radius_px=2))
    ys, xs = np.nonzero(out.any(axis=2))
    assert abs(xs.mean() + 0.5 - ref[0]) <= 0.5 and abs(ys.mean() + 0.5 - ref[1]) <= 0.5


def test_clipping_outside_frame():
    path = GridPath((Cell(0, 0), Cell(0, 1)))
    h = Homography(np.array([[1.0, 0, 5000], [0, 1, 5000], [0, 0, 1]]))
    out = render_overlay(blank(50, 50), path, SPEC, h)
    assert not out.any()


def test_bad_inputs():
    with pytest.raises(OverlayError):
        OverlayStyle(marker_radius_px=0)
    with pytest.raises(OverlayError):
        render_overlay(np.zeros((5, 5), np.uint8), GridPath((Cell(0, 0),)), SPEC, Homography.identity())
    singular = Homography(np.array([[1.0, 1, 0], [1, 1, 0], [0, 0, 1]]))
    with pytest.raises(OverlayError):
        render_overlay(blank(5, 5), GridPath((Cell(0, 0),)), SPEC, singular)
