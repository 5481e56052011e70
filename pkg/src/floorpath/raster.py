"""Raster containers, PNG I/O and the floor-area crop."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image

from floorpath.errors import RasterError

PERSPECTIVE = "perspective"
BEV = "bev"

# Fill value for destination pixels the camera never observed.
OUT_OF_VIEW_CLASS = 255


def _frozen(array, dtype):
    out = np.array(array, dtype=dtype, copy=True, order="C")
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class LabelImage:
    """Class-indexed raster, one uint8 class id per pixel, indexed ``data[y, x]``."""

    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data)
        if arr.ndim != 2:
            raise RasterError(f"label image must be 2-D, got shape {arr.shape}")
        if arr.dtype != np.uint8:
            if not np.issubdtype(arr.dtype, np.integer) or arr.size and (arr.min() < 0 or arr.max() > 255):
                raise RasterError(f"label values must fit in uint8, got dtype {arr.dtype}")
        object.__setattr__(self, "data", _frozen(arr, np.uint8))

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    def __eq__(self, other):
        if not isinstance(other, LabelImage):
            return NotImplemented
        return self.data.shape == other.data.shape and bool(np.array_equal(self.data, other.data))


@dataclass(frozen=True, eq=False)
class CostMap:
    """Per-pixel traversal cost raster (float64, finite, >= 0)."""

    data: np.ndarray
    space: str = PERSPECTIVE

    def __post_init__(self):
        arr = np.asarray(self.data, dtype=np.float64)
        if arr.ndim != 2:
            raise RasterError(f"cost map must be 2-D, got shape {arr.shape}")
        if arr.size and (not np.all(np.isfinite(arr)) or arr.min() < 0):
            raise RasterError("cost map values must be finite and >= 0")
        if self.space not in (PERSPECTIVE, BEV):
            raise RasterError(f"unknown space tag {self.space!r}")
        object.__setattr__(self, "data", _frozen(arr, np.float64))

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    def __eq__(self, other):
        if not isinstance(other, CostMap):
            return NotImplemented
        return self.space == other.space and bool(np.array_equal(self.data, other.data))


@dataclass(frozen=True)
class CropRect:
    x: int
    y: int
    width: int
    height: int

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise RasterError(f"crop rectangle must have positive size: {self}")
        if self.x < 0 or self.y < 0:
            raise RasterError(f"crop rectangle origin must be non-negative: {self}")

    def fits(self, width: int, height: int) -> bool:
        return self.x + self.width <= width and self.y + self.height <= height

    @classmethod
    def from_dict(cls, d) -> "CropRect":
        try:
            return cls(int(d["x"]), int(d["y"]), int(d["width"]), int(d["height"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise RasterError(f"invalid crop rectangle {d!r}: {exc}") from exc

    def to_dict(self):
        return {"x": self.x, "y": self.y, "width": self.width, "height": self.height}


def load_label_image(path) -> LabelImage:
    """Read a single-channel 8-bit PNG as class ids.

    Palette images are accepted because their stored indices already are the
    class ids; anything multi-channel or wider than 8 bits is rejected.
    """
    path = Path(path)
    if not path.is_file():
        raise RasterError(f"label image not found: {path}")
    try:
        with Image.open(path) as im:
            mode = im.mode
            if mode not in ("L", "P"):
                raise RasterError(
                    f"{path}: expected single-channel 8-bit image, got mode {mode!r}"
                )
            data = np.array(im, dtype=np.uint8)
    except RasterError:
        raise
    except Exception as exc:
        raise RasterError(f"{path}: cannot decode image: {exc}") from exc
    return LabelImage(data)


def save_label_image(image: LabelImage, path) -> None:
    Image.fromarray(np.ascontiguousarray(image.data)).save(Path(path), format="PNG")


def load_color_frame(path) -> np.ndarray:
    """Read an 8-bit RGB frame as an (H, W, 3) uint8 array."""
    path = Path(path)
    if not path.is_file():
        raise RasterError(f"color frame not found: {path}")
    try:
        with Image.open(path) as im:
            if im.mode != "RGB":
                raise RasterError(f"{path}: expected 8-bit RGB image, got mode {im.mode!r}")
            return np.array(im, dtype=np.uint8)
    except RasterError:
        raise
    except Exception as exc:
        raise RasterError(f"{path}: cannot decode image: {exc}") from exc


def save_color_frame(frame: np.ndarray, path) -> None:
    frame = np.asarray(frame)
    if frame.ndim != 3 or frame.shape[2] != 3 or frame.dtype != np.uint8:
        raise RasterError(f"color frame must be (H, W, 3) uint8, got {frame.shape} {frame.dtype}")
    Image.fromarray(np.ascontiguousarray(frame)).save(Path(path), format="PNG")


def crop(image, rect: CropRect):
    """Cut ``rect`` out of a LabelImage, CostMap or plain array."""
    if isinstance(image, (LabelImage, CostMap)):
        h, w = image.data.shape
    else:
        h, w = np.asarray(image).shape[:2]
    if not rect.fits(w, h):
        raise RasterError(f"crop {rect} exceeds image bounds {w}x{h}")
    ys = slice(rect.y, rect.y + rect.height)
    xs = slice(rect.x, rect.x + rect.width)
    if isinstance(image, LabelImage):
        return LabelImage(image.data[ys, xs])
    if isinstance(image, CostMap):
        return CostMap(image.data[ys, xs], image.space)
    return np.array(np.asarray(image)[ys, xs])
