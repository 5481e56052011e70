"""Four-point homography estimation, projection and raster warping.

Pixel convention used throughout: pixel ``(col, row)`` covers the continuous
square ``[col, col+1) x [row, row+1)``, so its center is ``(col+0.5, row+0.5)``.
Warps pull values: each destination pixel center is mapped back into the
source and the containing source pixel is sampled. The BEV canvas is metric,
one pixel per millimetre of ground.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from floorpath.errors import DegenerateConfigurationError, HomographyError
from floorpath.raster import BEV, OUT_OF_VIEW_CLASS, CostMap, LabelImage

EPS_W = 1e-12
EPS_DET = 1e-12
# Relative triangle area below which three points count as collinear.
COLLINEAR_TOL = 1e-9

NEAREST = "nearest"
BILINEAR = "bilinear"


@dataclass(frozen=True, eq=False)
class Homography:
    """A 3x3 projective map from the perspective plane to the BEV plane.

    ``origin_at_infinity`` is set when the solved ``m[2][2]`` vanished, in
    which case the matrix is scaled to unit Frobenius norm instead.
    """

    m: np.ndarray
    origin_at_infinity: bool = False

    def __post_init__(self):
        m = np.array(self.m, dtype=np.float64)
        if m.shape != (3, 3) or not np.all(np.isfinite(m)):
            raise HomographyError(f"homography must be a finite 3x3 matrix, got {m!r}")
        m.setflags(write=False)
        object.__setattr__(self, "m", m)

    @classmethod
    def from_matrix(cls, m) -> "Homography":
        """Build a normalized homography from any nonzero 3x3 matrix."""
        m = np.asarray(m, dtype=np.float64)
        if m.shape != (3, 3):
            raise HomographyError(f"expected 3x3 matrix, got shape {m.shape}")
        if abs(m[2, 2]) > EPS_W:
            return cls(m / m[2, 2])
        norm = np.linalg.norm(m)
        if norm == 0:
            raise HomographyError("zero matrix is not a homography")
        return cls(m / norm, origin_at_infinity=True)

    @classmethod
    def identity(cls) -> "Homography":
        return cls(np.eye(3))

    def to_list(self):
        return [float(v) for v in self.m.ravel()]

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.m))


@dataclass(frozen=True, eq=False)
class Correspondences:
    src: np.ndarray
    dst: np.ndarray

    def __post_init__(self):
        src = np.array(self.src, dtype=np.float64)
        dst = np.array(self.dst, dtype=np.float64)
        if src.shape != (4, 2) or dst.shape != (4, 2):
            raise DegenerateConfigurationError(
                f"need exactly 4 point pairs, got src {src.shape} dst {dst.shape}"
            )
        if not (np.all(np.isfinite(src)) and np.all(np.isfinite(dst))):
            raise DegenerateConfigurationError("correspondence coordinates must be finite")
        for name, pts in (("src", src), ("dst", dst)):
            triple = _collinear_triple(pts)
            if triple is not None:
                raise DegenerateConfigurationError(f"{name} points {triple} are collinear")
        src.setflags(write=False)
        dst.setflags(write=False)
        object.__setattr__(self, "src", src)
        object.__setattr__(self, "dst", dst)


def _collinear_triple(pts):
    spread = np.max(np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=-1))
    if spread == 0:
        return (0, 1, 2)
    for i, j, k in itertools.combinations(range(len(pts)), 3):
        a = pts[j] - pts[i]
        b = pts[k] - pts[i]
        if abs(a[0] * b[1] - a[1] * b[0]) <= COLLINEAR_TOL * spread * spread:
            return (i, j, k)
    return None


@dataclass(frozen=True)
class BevCanvas:
    width_mm: int
    height_mm: int
    px_per_mm: int = 1

    def __post_init__(self):
        if self.px_per_mm != 1:
            raise HomographyError("BEV scale is fixed at 1 px per mm")
        if self.width_mm <= 0 or self.height_mm <= 0:
            raise HomographyError(f"BEV canvas must have positive size: {self}")

    @property
    def width(self) -> int:
        return int(self.width_mm)

    @property
    def height(self) -> int:
        return int(self.height_mm)


def _conditioning(pts):
    centroid = pts.mean(axis=0)
    mean_dist = np.mean(np.linalg.norm(pts - centroid, axis=1))
    s = np.sqrt(2.0) / mean_dist
    return np.array([[s, 0, -s * centroid[0]], [0, s, -s * centroid[1]], [0, 0, 1.0]])


def estimate(c: Correspondences) -> Homography:
    """Solve the 8-equation DLT system for the four correspondences.

    Points are conditioned (centroid at origin, mean distance sqrt(2)) before
    the null space is taken from the SVD, then the conditioning is undone.
    """
    t_src = _conditioning(c.src)
    t_dst = _conditioning(c.dst)
    src = c.src @ t_src[:2, :2].T + t_src[:2, 2]
    dst = c.dst @ t_dst[:2, :2].T + t_dst[:2, 2]

    a = np.zeros((8, 9))
    for i, ((x, y), (u, v)) in enumerate(zip(src, dst)):
        a[2 * i] = [x, y, 1, 0, 0, 0, -u * x, -u * y, -u]
        a[2 * i + 1] = [0, 0, 0, x, y, 1, -v * x, -v * y, -v]
    _, s, vt = np.linalg.svd(a)
    if s[-1] <= 1e-12 * s[0]:
        raise DegenerateConfigurationError("correspondence system is rank deficient")
    hn = vt[-1].reshape(3, 3)
    m = np.linalg.solve(t_dst, hn @ t_src)
    h = Homography.from_matrix(m)
    if abs(h.det) <= EPS_DET:
        raise DegenerateConfigurationError("estimated homography is singular")
    return h


def project(h: Homography, p):
    """Map a single point ``(x, y)`` through ``h``."""
    m = h.m
    x, y = float(p[0]), float(p[1])
    w = m[2, 0] * x + m[2, 1] * y + m[2, 2]
    if abs(w) <= EPS_W:
        raise HomographyError(f"point {(x, y)} maps to infinity")
    return ((m[0, 0] * x + m[0, 1] * y + m[0, 2]) / w, (m[1, 0] * x + m[1, 1] * y + m[1, 2]) / w)


def project_points(h: Homography, pts) -> np.ndarray:
    """Vectorized :func:`project` over an (N, 2) array."""
    pts = np.asarray(pts, dtype=np.float64).reshape(-1, 2)
    m = h.m
    x, y = pts[:, 0], pts[:, 1]
    w = m[2, 0] * x + m[2, 1] * y + m[2, 2]
    if np.any(np.abs(w) <= EPS_W):
        raise HomographyError("a point maps to infinity")
    return np.stack(
        [(m[0, 0] * x + m[0, 1] * y + m[0, 2]) / w, (m[1, 0] * x + m[1, 1] * y + m[1, 2]) / w],
        axis=1,
    )


def invert(h: Homography) -> Homography:
    if abs(h.det) <= EPS_DET:
        raise HomographyError(f"homography is singular (det={h.det:.3g})")
    return Homography.from_matrix(np.linalg.inv(h.m))


class RemapTable:
    """Precomputed pull mapping from a destination canvas into a source raster.

    Building the table is the expensive part of a warp; frames that share a
    calibration reuse one table.
    """

    def __init__(self, h: Homography, src_width: int, src_height: int, dst_width: int, dst_height: int):
        self.src_shape = (int(src_height), int(src_width))
        self.dst_shape = (int(dst_height), int(dst_width))
        inv = invert(h).m
        xs = np.arange(dst_width, dtype=np.float64) + 0.5
        ys = np.arange(dst_height, dtype=np.float64) + 0.5
        w = inv[2, 0] * xs[None, :] + inv[2, 1] * ys[:, None] + inv[2, 2]
        finite = np.abs(w) > EPS_W
        w = np.where(finite, w, 1.0)
        sx = (inv[0, 0] * xs[None, :] + inv[0, 1] * ys[:, None] + inv[0, 2]) / w
        sy = (inv[1, 0] * xs[None, :] + inv[1, 1] * ys[:, None] + inv[1, 2]) / w
        fx = np.floor(sx)
        fy = np.floor(sy)
        valid = finite & (fx >= 0) & (fx < src_width) & (fy >= 0) & (fy < src_height)
        self.valid = valid
        self._sx = np.where(valid, sx, 0.5)
        self._sy = np.where(valid, sy, 0.5)
        ix = np.where(valid, fx, 0).astype(np.intp)
        iy = np.where(valid, fy, 0).astype(np.intp)
        self.flat_index = iy * int(src_width) + ix

    def nearest(self, src: np.ndarray, fill) -> np.ndarray:
        self._check(src)
        out = np.take(src.ravel(), self.flat_index)
        out[~self.valid] = fill
        return out

    def bilinear(self, src: np.ndarray, fill) -> np.ndarray:
        self._check(src)
        sh, sw = self.src_shape
        u = self._sx - 0.5
        v = self._sy - 0.5
        x0 = np.floor(u)
        y0 = np.floor(v)
        ax = u - x0
        ay = v - y0
        x0 = x0.astype(np.intp)
        y0 = y0.astype(np.intp)
        x1 = np.clip(x0 + 1, 0, sw - 1)
        y1 = np.clip(y0 + 1, 0, sh - 1)
        x0 = np.clip(x0, 0, sw - 1)
        y0 = np.clip(y0, 0, sh - 1)
        src = src.astype(np.float64)
        top = src[y0, x0] * (1 - ax) + src[y0, x1] * ax
        bottom = src[y1, x0] * (1 - ax) + src[y1, x1] * ax
        out = top * (1 - ay) + bottom * ay
        out[~self.valid] = fill
        return out

    def _check(self, src):
        if src.shape[:2] != self.src_shape:
            raise HomographyError(f"raster shape {src.shape} does not match table source {self.src_shape}")


def warp(src, h: Homography, width: int, height: int, sampling: str = NEAREST, fill=None,
         space: str = BEV, table: RemapTable | None = None):
    """Warp a LabelImage or CostMap through ``h`` onto a ``width`` x ``height`` canvas.

    Out-of-view pixels get ``fill``: class 255 for labels; for cost maps the
    caller must pass the out-of-view cost. Labels only support nearest sampling.
    """
    if sampling not in (NEAREST, BILINEAR):
        raise HomographyError(f"unknown sampling mode {sampling!r}")
    if table is None:
        table = RemapTable(h, src.width, src.height, width, height)
    elif table.dst_shape != (height, width):
        raise HomographyError("remap table does not match requested canvas")
    if isinstance(src, LabelImage):
        if sampling != NEAREST:
            raise HomographyError("label rasters must use nearest sampling")
        fill = OUT_OF_VIEW_CLASS if fill is None else fill
        return LabelImage(table.nearest(src.data, np.uint8(fill)))
    if isinstance(src, CostMap):
        if fill is None:
            raise HomographyError("cost map warp needs an explicit out-of-view fill cost")
        if sampling == NEAREST:
            return CostMap(table.nearest(src.data, float(fill)), space)
        return CostMap(table.bilinear(src.data, float(fill)), space)
    raise HomographyError(f"cannot warp object of type {type(src).__name__}")


def load_calibration(path):
    """Read a calibration JSON into ``(Correspondences, BevCanvas)``."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except FileNotFoundError as exc:
        raise HomographyError(f"calibration file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise HomographyError(f"{path}: invalid JSON: {exc}") from exc
    return calibration_from_dict(doc)


def calibration_from_dict(doc):
    try:
        c = Correspondences(doc["src"], doc["dst"])
        canvas = BevCanvas(int(doc["bev_width_mm"]), int(doc["bev_height_mm"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise HomographyError(f"invalid calibration: {exc!r}") from exc
    return c, canvas


def save_homography_cache(h: Homography, path) -> None:
    """Write the matrix and its inverse at full double precision."""
    doc = {
        "matrix": h.to_list(),
        "inverse": invert(h).to_list(),
        "origin_at_infinity": h.origin_at_infinity,
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")


def load_homography_cache(path) -> Homography:
    try:
        doc = json.loads(Path(path).read_text())
        m = np.array(doc["matrix"], dtype=np.float64).reshape(3, 3)
    except (OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
        raise HomographyError(f"cannot read homography cache {path}: {exc}") from exc
    return Homography(m, origin_at_infinity=bool(doc.get("origin_at_infinity", False)))
