"""End-to-end frame processing: crop, warp, cost lookup, pooling, search."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from floorpath.costgrid import CostGrid, GridSpec, pool
from floorpath.costmap import CostConfig, apply_costs, default_cost_config, load_cost_config
from floorpath.errors import ConfigError, FloorpathError
from floorpath.homography import (
    BILINEAR, NEAREST, BevCanvas, Correspondences, Homography, RemapTable,
    calibration_from_dict, estimate, load_calibration,
)
from floorpath.planner import Cell, GridPath, PlanProblem, astar
from floorpath.raster import BEV, PERSPECTIVE, CostMap, CropRect, LabelImage, crop

LABELS_FIRST = "labels"
COSTS_FIRST = "costs"

# Trapezoid on a 640x360 frame that covers the whole 2000x1900 mm BEV canvas.
SYNTHETIC_CALIBRATION = {
    "src": [[100, 350], [540, 350], [420, 100], [220, 100]],
    "dst": [[0, 1900], [2000, 1900], [2000, 0], [0, 0]],
    "bev_width_mm": 2000,
    "bev_height_mm": 1900,
}
SYNTHETIC_FRAME_SIZE = (640, 360)


@dataclass(frozen=True)
class PipelineConfig:
    correspondences: Correspondences
    canvas: BevCanvas
    cost_config: CostConfig = field(default_factory=default_cost_config)
    grid: GridSpec = field(default_factory=GridSpec)
    crop: CropRect | None = None
    start: Cell | None = None
    goal: Cell | None = None
    sampling: str = NEAREST
    warp_order: str = LABELS_FIRST

    def __post_init__(self):
        if self.sampling not in (NEAREST, BILINEAR):
            raise ConfigError(f"unknown sampling mode {self.sampling!r}")
        if self.warp_order not in (LABELS_FIRST, COSTS_FIRST):
            raise ConfigError(f"warp_order must be 'labels' or 'costs', got {self.warp_order!r}")
        if self.sampling == BILINEAR and self.warp_order == LABELS_FIRST:
            raise ConfigError("bilinear sampling needs warp_order 'costs'; labels cannot be blended")
        self.grid.check_fits(self.canvas.width, self.canvas.height)

    @classmethod
    def from_dict(cls, doc, base_dir=None) -> "PipelineConfig":
        base = Path(base_dir) if base_dir is not None else Path(".")
        if not isinstance(doc, dict):
            raise ConfigError("pipeline config must be a JSON object")
        try:
            calib = doc.get("calibration", SYNTHETIC_CALIBRATION)
            if isinstance(calib, str):
                corr, canvas = load_calibration(base / calib)
            else:
                corr, canvas = calibration_from_dict(calib)
            costs = doc.get("costs")
            if costs is None:
                cost_cfg = default_cost_config()
            elif isinstance(costs, str):
                cost_cfg = load_cost_config(base / costs)
            else:
                cost_cfg = CostConfig.from_dict(costs)
            crop_doc = doc.get("crop")
            return cls(
                correspondences=corr,
                canvas=canvas,
                cost_config=cost_cfg,
                grid=GridSpec.from_dict(doc.get("grid", {})),
                crop=CropRect.from_dict(crop_doc) if crop_doc else None,
                start=Cell(*map(int, doc["start"])) if doc.get("start") is not None else None,
                goal=Cell(*map(int, doc["goal"])) if doc.get("goal") is not None else None,
                sampling=doc.get("sampling", NEAREST),
                warp_order=doc.get("warp_order", LABELS_FIRST),
            )
        except FloorpathError:
            raise
        except (TypeError, ValueError, KeyError) as exc:
            raise ConfigError(f"invalid pipeline config: {exc!r}") from exc


def load_pipeline_config(path) -> PipelineConfig:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"{path}: cannot read config: {exc}") from exc
    return PipelineConfig.from_dict(doc, path.parent)


def synthetic_config(**overrides) -> PipelineConfig:
    corr, canvas = calibration_from_dict(SYNTHETIC_CALIBRATION)
    return PipelineConfig(corr, canvas, **overrides)


@dataclass(frozen=True)
class FrameResult:
    bev_costs: CostMap
    grid: CostGrid
    path: GridPath


class Pipeline:
    """Holds one calibration and reuses its remap table across frames."""

    def __init__(self, config: PipelineConfig):
        self.config = config
        self.homography: Homography = estimate(config.correspondences)
        self._tables = {}

    def table(self, width: int, height: int) -> RemapTable:
        key = (width, height)
        if key not in self._tables:
            canvas = self.config.canvas
            self._tables[key] = RemapTable(self.homography, width, height, canvas.width, canvas.height)
        return self._tables[key]

    def bev_costs(self, labels: LabelImage) -> CostMap:
        cfg = self.config
        if cfg.crop is not None:
            labels = crop(labels, cfg.crop)
        table = self.table(labels.width, labels.height)
        if cfg.warp_order == LABELS_FIRST:
            bev = LabelImage(table.nearest(labels.data, np.uint8(255)))
            return apply_costs(bev, cfg.cost_config, BEV)
        costs = apply_costs(labels, cfg.cost_config, PERSPECTIVE)
        fill = cfg.cost_config.out_of_view_cost
        if cfg.sampling == NEAREST:
            return CostMap(table.nearest(costs.data, fill), BEV)
        return CostMap(table.bilinear(costs.data, fill), BEV)

    def problem(self, grid: CostGrid) -> PlanProblem:
        return PlanProblem.default(grid, self.config.start, self.config.goal)

    def run(self, labels: LabelImage) -> FrameResult:
        bev = self.bev_costs(labels)
        grid = pool(bev, self.config.grid)
        return FrameResult(bev, grid, astar(self.problem(grid)))
