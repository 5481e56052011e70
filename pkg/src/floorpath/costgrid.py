"""Mean-pool a BEV cost map into a coarse grid of metric cells."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from floorpath.errors import GridSpecError
from floorpath.raster import CostMap


@dataclass(frozen=True)
class GridSpec:
    """Grid geometry on the BEV canvas.

    Rows run along the direction of travel (row 0 is the far edge), columns
    run laterally. ``origin`` is the BEV pixel ``(x, y)`` of the top-left corner.
    """

    rows: int = 19
    cols: int = 20
    cell_mm: int = 100
    origin: tuple = (0, 0)

    def __post_init__(self):
        if self.rows <= 0 or self.cols <= 0 or self.cell_mm <= 0:
            raise GridSpecError(f"rows, cols and cell_mm must be positive: {self}")
        object.__setattr__(self, "origin", (int(self.origin[0]), int(self.origin[1])))

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def extent_mm(self):
        """(width, height) of the gridded region in mm."""
        return (self.cols * self.cell_mm, self.rows * self.cell_mm)

    def check_fits(self, width: int, height: int) -> None:
        ox, oy = self.origin
        w, h = self.extent_mm
        if ox < 0 or oy < 0 or ox + w > width or oy + h > height:
            raise GridSpecError(
                f"{self.rows}x{self.cols} grid of {self.cell_mm} mm at origin {self.origin} "
                f"does not fit a {width}x{height} BEV canvas"
            )

    def cell_center(self, row: int, col: int):
        """BEV coordinates (x, y) of a cell center."""
        ox, oy = self.origin
        return (ox + (col + 0.5) * self.cell_mm, oy + (row + 0.5) * self.cell_mm)

    def same_geometry(self, other: "GridSpec") -> bool:
        return (self.rows, self.cols, self.cell_mm) == (other.rows, other.cols, other.cell_mm)

    def to_dict(self):
        return {"rows": self.rows, "cols": self.cols, "cell_mm": self.cell_mm}

    @classmethod
    def from_dict(cls, doc) -> "GridSpec":
        try:
            return cls(
                int(doc.get("rows", 19)),
                int(doc.get("cols", 20)),
                int(doc.get("cell_mm", 100)),
                tuple(doc.get("origin", (0, 0))),
            )
        except (TypeError, ValueError, IndexError) as exc:
            raise GridSpecError(f"invalid grid spec {doc!r}: {exc}") from exc


@dataclass(frozen=True, eq=False)
class CostGrid:
    spec: GridSpec
    cells: np.ndarray

    def __post_init__(self):
        cells = np.array(self.cells, dtype=np.float64)
        if cells.shape != self.spec.shape:
            raise GridSpecError(f"cells shape {cells.shape} does not match spec {self.spec.shape}")
        if not np.all(np.isfinite(cells)) or cells.min() < 0:
            raise GridSpecError("grid costs must be finite and >= 0")
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)

    @classmethod
    def from_array(cls, cells, cell_mm: int = 100) -> "CostGrid":
        cells = np.asarray(cells, dtype=np.float64)
        return cls(GridSpec(cells.shape[0], cells.shape[1], cell_mm), cells)

    def with_cell(self, row: int, col: int, cost: float) -> "CostGrid":
        cells = np.array(self.cells)
        cells[row, col] = cost
        return CostGrid(self.spec, cells)

    def to_dict(self):
        return {
            "rows": self.spec.rows,
            "cols": self.spec.cols,
            "cell_mm": self.spec.cell_mm,
            "cells": [float(v) for v in self.cells.ravel()],
        }


def pool(bev: CostMap, spec: GridSpec) -> CostGrid:
    """Arithmetic mean of each ``cell_mm`` x ``cell_mm`` pixel block."""
    spec.check_fits(bev.width, bev.height)
    ox, oy = spec.origin
    w, h = spec.extent_mm
    region = bev.data[oy:oy + h, ox:ox + w]
    n = spec.cell_mm
    blocks = region.reshape(spec.rows, n, spec.cols, n)
    return CostGrid(spec, blocks.mean(axis=(1, 3)))
