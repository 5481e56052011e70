"""Ground-plane path planning from semantically labeled camera frames."""

from floorpath.costgrid import CostGrid, GridSpec, pool
from floorpath.costmap import CostConfig, apply_costs, default_cost_config
from floorpath.evalmetrics import EvalRow, compare_paths, emit_table
from floorpath.homography import BevCanvas, Correspondences, Homography, estimate, invert, project, warp
from floorpath.pipeline import Pipeline, PipelineConfig
from floorpath.planner import Cell, GridPath, PlanProblem, astar, dijkstra, path_step_count
from floorpath.raster import CostMap, CropRect, LabelImage, crop, load_label_image, save_label_image

__version__ = "0.1.0"
