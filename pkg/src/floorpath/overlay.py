"""Draw a planned grid path onto the perspective frame."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from floorpath.costgrid import GridSpec
from floorpath.errors import FloorpathError, OverlayError
from floorpath.homography import Homography, invert, project_points
from floorpath.planner import GridPath


@dataclass(frozen=True)
class OverlayStyle:
    path_color: tuple = (255, 200, 0)
    marker_radius_px: int = 4
    start_color: tuple = (255, 0, 0)
    goal_color: tuple = (0, 255, 0)
    line_width_px: int = 2

    def __post_init__(self):
        if self.marker_radius_px < 1 or self.line_width_px < 1:
            raise OverlayError("marker radius and line width must be >= 1")


def marker_positions(path: GridPath, spec: GridSpec, h: Homography) -> np.ndarray:
    """Perspective-frame (x, y) of each path cell center, shape (N, 2)."""
    if not path.cells:
        return np.zeros((0, 2))
    centers = np.array([spec.cell_center(c.row, c.col) for c in path.cells], dtype=np.float64)
    try:
        return project_points(invert(h), centers)
    except FloorpathError as exc:
        raise OverlayError(str(exc)) from exc


def _disc(frame, x, y, radius, color):
    # A point lands on the pixel that contains it; the disc is centred on that pixel.
    height, width = frame.shape[:2]
    if not (np.isfinite(x) and np.isfinite(y)):
        return
    cx, cy = int(np.floor(x)), int(np.floor(y))
    x0, x1 = max(cx - radius, 0), min(cx + radius + 1, width)
    y0, y1 = max(cy - radius, 0), min(cy + radius + 1, height)
    if x0 >= x1 or y0 >= y1:
        return
    yy, xx = np.mgrid[y0:y1, x0:x1]
    mask = (xx - cx) ** 2 + (yy - cy) ** 2 <= radius * radius
    frame[y0:y1, x0:x1][mask] = color


def _segment(frame, p, q, line_width, color):
    height, width = frame.shape[:2]
    if not (np.all(np.isfinite(p)) and np.all(np.isfinite(q))):
        return
    half = line_width / 2.0
    x0 = max(int(np.floor(min(p[0], q[0]) - half)), 0)
    x1 = min(int(np.ceil(max(p[0], q[0]) + half)) + 1, width)
    y0 = max(int(np.floor(min(p[1], q[1]) - half)), 0)
    y1 = min(int(np.ceil(max(p[1], q[1]) + half)) + 1, height)
    if x0 >= x1 or y0 >= y1:
        return
    yy, xx = np.mgrid[y0:y1, x0:x1]
    px, py = xx + 0.5, yy + 0.5
    d = np.asarray(q, dtype=np.float64) - np.asarray(p, dtype=np.float64)
    length2 = float(d @ d)
    if length2 == 0.0:
        t = np.zeros_like(px)
    else:
        t = np.clip(((px - p[0]) * d[0] + (py - p[1]) * d[1]) / length2, 0.0, 1.0)
    dist2 = (px - (p[0] + t * d[0])) ** 2 + (py - (p[1] + t * d[1])) ** 2
    frame[y0:y1, x0:x1][dist2 <= half * half] = color


def render_overlay(frame: np.ndarray, path: GridPath, spec: GridSpec, h: Homography,
                   style: OverlayStyle | None = None) -> np.ndarray:
    """Return a copy of ``frame`` with the path drawn; the input is not modified."""
    style = style or OverlayStyle()
    frame = np.asarray(frame)
    if frame.ndim != 3 or frame.shape[2] != 3 or frame.dtype != np.uint8:
        raise OverlayError(f"frame must be (H, W, 3) uint8, got {frame.shape} {frame.dtype}")
    out = frame.copy()
    if not path.cells:
        return out
    pts = marker_positions(path, spec, h)
    for p, q in zip(pts, pts[1:]):
        _segment(out, p, q, style.line_width_px, style.path_color)
    for x, y in pts[1:-1]:
        _disc(out, x, y, style.marker_radius_px, style.path_color)
    _disc(out, pts[0][0], pts[0][1], style.marker_radius_px, style.start_color)
    _disc(out, pts[-1][0], pts[-1][1], style.marker_radius_px, style.goal_color)
    return out


_PALETTE = {
    0: (70, 70, 70),      # carpet
    1: (150, 105, 60),    # hardwood
    2: (235, 235, 235),   # obstacle
    255: (0, 0, 0),       # out of view
}


def colorize_labels(labels) -> np.ndarray:
    """Fixed false-color rendering of a label raster, for overlays without a camera frame."""
    lut = np.zeros((256, 3), dtype=np.uint8)
    for cid in range(256):
        lut[cid] = _PALETTE.get(cid, ((cid * 67) % 256, (cid * 151) % 256, (cid * 29) % 256))
    return lut[labels.data]
