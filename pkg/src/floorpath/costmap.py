"""Class id -> traversal cost lookup."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from floorpath.errors import CostConfigError
from floorpath.raster import OUT_OF_VIEW_CLASS, PERSPECTIVE, CostMap, LabelImage

CARPET = 0
HARDWOOD = 1
OBSTACLE = 2


@dataclass(frozen=True)
class ClassCost:
    name: str
    cost: float


@dataclass(frozen=True)
class CostConfig:
    entries: dict = field(default_factory=dict)
    default_cost: float = 16.0
    out_of_view_cost: float = 64.0

    def __post_init__(self):
        entries = {}
        for class_id, entry in self.entries.items():
            cid = int(class_id)
            if not 0 <= cid <= 255:
                raise CostConfigError(f"class id {class_id!r} is outside 0..255")
            if not isinstance(entry, ClassCost):
                entry = ClassCost(str(entry["name"]), float(entry["cost"]))
            _check_cost(entry.cost, f"class {cid} ({entry.name})")
            entries[cid] = entry
        _check_cost(self.default_cost, "default_cost")
        _check_cost(self.out_of_view_cost, "out_of_view_cost")
        if entries and min(e.cost for e in entries.values()) <= 0:
            raise CostConfigError("minimum class cost must be > 0 for an admissible heuristic")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "default_cost", float(self.default_cost))
        object.__setattr__(self, "out_of_view_cost", float(self.out_of_view_cost))

    @property
    def min_cost(self) -> float:
        return min(e.cost for e in self.entries.values()) if self.entries else self.default_cost

    def class_id(self, name: str) -> int:
        for cid, entry in self.entries.items():
            if entry.name == name:
                return cid
        raise CostConfigError(f"no class named {name!r}")

    def with_cost(self, class_id: int, cost: float) -> "CostConfig":
        entries = dict(self.entries)
        entries[class_id] = ClassCost(entries[class_id].name if class_id in entries else str(class_id), cost)
        return CostConfig(entries, self.default_cost, self.out_of_view_cost)

    def lookup_table(self) -> np.ndarray:
        """256-entry cost per class id."""
        lut = np.full(256, self.default_cost, dtype=np.float64)
        for cid, entry in self.entries.items():
            lut[cid] = entry.cost
        lut[OUT_OF_VIEW_CLASS] = self.out_of_view_cost
        return lut

    @classmethod
    def from_dict(cls, doc) -> "CostConfig":
        try:
            classes = {
                int(k): ClassCost(str(v["name"]), float(v["cost"])) for k, v in doc["classes"].items()
            }
            return cls(
                classes,
                float(doc.get("default_cost", 16.0)),
                float(doc.get("out_of_view_cost", 64.0)),
            )
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise CostConfigError(f"invalid cost config: {exc!r}") from exc

    def to_dict(self):
        return {
            "classes": {str(k): {"name": e.name, "cost": e.cost} for k, e in sorted(self.entries.items())},
            "default_cost": self.default_cost,
            "out_of_view_cost": self.out_of_view_cost,
        }


def _check_cost(value, what):
    if not isinstance(value, (int, float)) or not math.isfinite(value) or value < 0:
        raise CostConfigError(f"{what}: cost must be finite and >= 0, got {value!r}")


def default_cost_config() -> CostConfig:
    # carpet < hardwood << obstacle; obstacles stay finite so a blocked scene still has a path
    return CostConfig(
        {
            CARPET: ClassCost("carpet", 1.0),
            HARDWOOD: ClassCost("hardwood", 4.0),
            OBSTACLE: ClassCost("obstacle", 64.0),
        },
        default_cost=16.0,
        out_of_view_cost=64.0,
    )


def load_cost_config(path) -> CostConfig:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except FileNotFoundError as exc:
        raise CostConfigError(f"cost config not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise CostConfigError(f"{path}: invalid JSON: {exc}") from exc
    return CostConfig.from_dict(doc)


def apply_costs(labels: LabelImage, cfg: CostConfig, space: str = PERSPECTIVE) -> CostMap:
    return CostMap(cfg.lookup_table()[labels.data], space)
