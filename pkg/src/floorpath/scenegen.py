"""Synthetic labeled scenes with known geometry."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from floorpath.costmap import CARPET, HARDWOOD, OBSTACLE
from floorpath.errors import SceneError
from floorpath.homography import NEAREST, BevCanvas, Homography, invert, warp
from floorpath.raster import LabelImage


@dataclass(frozen=True)
class RectRegion:
    """Axis-aligned rectangle in BEV millimetres, painted with one class id."""

    x: int
    y: int
    width: int
    height: int
    class_id: int

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise SceneError(f"rectangle must have positive size: {self}")
        if not 0 <= self.class_id <= 255:
            raise SceneError(f"class id out of range: {self.class_id}")

    def inside(self, canvas: BevCanvas) -> bool:
        return (self.x >= 0 and self.y >= 0 and self.x + self.width <= canvas.width
                and self.y + self.height <= canvas.height)

    @classmethod
    def from_dict(cls, doc, default_class):
        x, y, w, h = (int(v) for v in doc["rect"])
        return cls(x, y, w, h, int(doc.get("class_id", default_class)))

    def to_dict(self):
        return {"rect": [self.x, self.y, self.width, self.height], "class_id": self.class_id}


@dataclass(frozen=True)
class SceneSpec:
    floor_class: int = CARPET
    obstacles: tuple = ()
    secondary_floor: RectRegion | None = None
    seed: int = 0
    # Extra obstacles drawn from the seeded RNG, in whole grid cells.
    random_obstacles: int = 0
    random_cell_mm: int = 100
    name: str = "scene"
    canvas: BevCanvas = field(default_factory=lambda: BevCanvas(2000, 1900))

    @classmethod
    def from_dict(cls, doc) -> "SceneSpec":
        try:
            secondary = doc.get("secondary_floor")
            return cls(
                floor_class=int(doc.get("floor_class", CARPET)),
                obstacles=tuple(RectRegion.from_dict(o, OBSTACLE) for o in doc.get("obstacles", [])),
                secondary_floor=RectRegion.from_dict(secondary, HARDWOOD) if secondary else None,
                seed=int(doc.get("seed", 0)),
                random_obstacles=int(doc.get("random_obstacles", 0)),
                random_cell_mm=int(doc.get("random_cell_mm", 100)),
                name=str(doc.get("name", "scene")),
                canvas=BevCanvas(int(doc.get("bev_width_mm", 2000)), int(doc.get("bev_height_mm", 1900))),
            )
        except SceneError:
            raise
        except Exception as exc:
            raise SceneError(f"invalid scene spec: {exc!r}") from exc

    def to_dict(self):
        return {
            "name": self.name,
            "floor_class": self.floor_class,
            "obstacles": [o.to_dict() for o in self.obstacles],
            "secondary_floor": self.secondary_floor.to_dict() if self.secondary_floor else None,
            "seed": self.seed,
            "random_obstacles": self.random_obstacles,
            "random_cell_mm": self.random_cell_mm,
            "bev_width_mm": self.canvas.width_mm,
            "bev_height_mm": self.canvas.height_mm,
        }


def load_scene_spec(path) -> SceneSpec:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SceneError(f"cannot read scene spec {path}: {exc}") from exc
    return SceneSpec.from_dict(doc)


def _random_rects(spec: SceneSpec, canvas: BevCanvas):
    rng = np.random.default_rng(spec.seed)
    n = spec.random_cell_mm
    rows, cols = canvas.height // n, canvas.width // n
    rects = []
    for _ in range(spec.random_obstacles):
        h = int(rng.integers(1, 4))
        w = int(rng.integers(1, 5))
        r = int(rng.integers(1, max(2, rows - h)))  # keep the start and goal rows clear
        c = int(rng.integers(0, max(1, cols - w + 1)))
        rects.append(RectRegion(c * n, r * n, w * n, h * n, OBSTACLE))
    return rects


def generate_bev_labels(spec: SceneSpec, canvas: BevCanvas | None = None) -> LabelImage:
    """Paint floor, then the secondary floor, then obstacles."""
    canvas = canvas or spec.canvas
    regions = ([spec.secondary_floor] if spec.secondary_floor else []) + list(spec.obstacles)
    for region in regions:
        if not region.inside(canvas):
            raise SceneError(f"{region} lies outside the {canvas.width}x{canvas.height} mm canvas")
    data = np.full((canvas.height, canvas.width), spec.floor_class, dtype=np.uint8)
    for region in regions + _random_rects(spec, canvas):
        data[region.y:region.y + region.height, region.x:region.x + region.width] = region.class_id
    return LabelImage(data)


def generate_perspective_view(bev_labels: LabelImage, h: Homography, persp_dims) -> LabelImage:
    """Render BEV labels into a ``(width, height)`` perspective frame; ``h`` maps perspective to BEV."""
    width, height = persp_dims
    return warp(bev_labels, invert(h), int(width), int(height), NEAREST)


def fixture_scenes(canvas: BevCanvas | None = None) -> dict:
    """Regression scenes: open floor, single block, fully blocked row, one-cell gap.

    Geometry assumes the default 19x20 grid of 100 mm cells.
    """
    canvas = canvas or BevCanvas(2000, 1900)
    return {
        "no-obstacle": SceneSpec(name="no-obstacle", canvas=canvas),
        "one-obstacle": SceneSpec(
            name="one-obstacle",
            obstacles=(RectRegion(800, 800, 400, 300, OBSTACLE),),
            canvas=canvas,
        ),
        "blocked-row": SceneSpec(
            name="blocked-row",
            obstacles=(RectRegion(0, 900, canvas.width, 100, OBSTACLE),),
            canvas=canvas,
        ),
        "narrow-gap": SceneSpec(
            name="narrow-gap",
            obstacles=(
                RectRegion(0, 900, 1400, 100, OBSTACLE),
                RectRegion(1500, 900, canvas.width - 1500, 100, OBSTACLE),
            ),
            canvas=canvas,
        ),
    }
