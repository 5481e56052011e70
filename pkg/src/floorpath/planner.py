"""Four-connected grid search over a CostGrid.

Moving into a cell costs that cell's grid value; the start cell is free.
A* uses ``c_min * manhattan`` as its heuristic, which is consistent because
every move costs at least ``c_min``. Ties on f break toward smaller h, then
by successor order North, East, South, West, then first-in-first-out.
"""

from __future__ import annotations

import heapq
import itertools
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from floorpath.costgrid import CostGrid, GridSpec
from floorpath.errors import PlanningError

# North first: row 0 is the far (goal) side of the grid.
MOVES = ((-1, 0), (0, 1), (1, 0), (0, -1))


@dataclass(frozen=True, order=True)
class Cell:
    row: int
    col: int


@dataclass(frozen=True)
class PlanProblem:
    grid: CostGrid
    start: Cell
    goal: Cell

    @classmethod
    def default(cls, grid: CostGrid, start: Cell | None = None, goal: Cell | None = None) -> "PlanProblem":
        """Bottom-center to top-center unless overridden."""
        rows, cols = grid.spec.shape
        start = start if start is not None else Cell(rows - 1, cols // 2)
        goal = goal if goal is not None else Cell(0, cols // 2)
        return cls(grid, start, goal)

    def validate(self):
        rows, cols = self.grid.spec.shape
        for name, cell in (("start", self.start), ("goal", self.goal)):
            if not (0 <= cell.row < rows and 0 <= cell.col < cols):
                raise PlanningError(f"{name} {cell} is outside the {rows}x{cols} grid")
        if self.grid.cells.min() <= 0:
            raise PlanningError("grid costs must be > 0 for heuristic search")


@dataclass(frozen=True)
class GridPath:
    cells: tuple
    total_cost: float = 0.0
    expanded: int = 0

    @property
    def start(self) -> Cell:
        return self.cells[0]

    @property
    def goal(self) -> Cell:
        return self.cells[-1]

    def is_connected(self) -> bool:
        return all(
            abs(a.row - b.row) + abs(a.col - b.col) == 1 for a, b in zip(self.cells, self.cells[1:])
        )


def path_step_count(path: GridPath) -> int:
    return len(path.cells) - 1


def path_cost(grid: CostGrid, cells) -> float:
    total = 0.0
    for c in list(cells)[1:]:
        total += grid.cells[c.row, c.col]
    return total


def _walk_back(parent, goal_index, cols):
    out = []
    idx = goal_index
    while idx != -1:
        out.append(Cell(idx // cols, idx % cols))
        idx = parent[idx]
    out.reverse()
    return tuple(out)


def astar(p: PlanProblem) -> GridPath:
    p.validate()
    grid = p.grid.cells
    rows, cols = grid.shape
    costs = grid.tolist()
    c_min = float(grid.min())
    gr, gc = p.goal.row, p.goal.col

    n = rows * cols
    best = [float("inf")] * n  # best known cost to reach each cell
    parent = [-1] * n
    closed = [False] * n
    counter = itertools.count()

    start = p.start.row * cols + p.start.col
    goal = gr * cols + gc
    best[start] = 0.0
    h0 = c_min * (abs(p.start.row - gr) + abs(p.start.col - gc))
    frontier = [(h0, h0, next(counter), start)]
    expanded = 0

    while frontier:
        _, _, _, idx = heapq.heappop(frontier)
        if closed[idx]:
            continue
        closed[idx] = True
        expanded += 1
        if idx == goal:
            return GridPath(_walk_back(parent, goal, cols), best[goal], expanded)
        r, c = divmod(idx, cols)
        g = best[idx]
        for dr, dc in MOVES:
            nr, nc = r + dr, c + dc
            if not (0 <= nr < rows and 0 <= nc < cols):
                continue
            nidx = nr * cols + nc
            if closed[nidx]:
                continue
            ng = g + costs[nr][nc]
            if ng < best[nidx]:
                best[nidx] = ng
                parent[nidx] = idx
                h = c_min * (abs(nr - gr) + abs(nc - gc))
                heapq.heappush(frontier, (ng + h, h, next(counter), nidx))

    raise PlanningError("goal unreachable")  # cannot happen on a finite grid


def dijkstra(p: PlanProblem) -> GridPath:
    """Uniform-cost search; the reference that A* results are checked against."""
    p.validate()
    rows, cols = p.grid.spec.shape
    grid = p.grid.cells
    dist = {p.start: 0.0}
    came_from = {p.start: None}
    done = set()
    order = itertools.count()
    queue = [(0.0, next(order), p.start)]
    popped = 0

    while queue:
        d, _, cell = heapq.heappop(queue)
        if cell in done:
            continue
        done.add(cell)
        popped += 1
        if cell == p.goal:
            break
        for dr, dc in MOVES:
            nxt = Cell(cell.row + dr, cell.col + dc)
            if not (0 <= nxt.row < rows and 0 <= nxt.col < cols) or nxt in done:
                continue
            nd = d + float(grid[nxt.row, nxt.col])
            if nd < dist.get(nxt, float("inf")):
                dist[nxt] = nd
                came_from[nxt] = cell
                heapq.heappush(queue, (nd, next(order), nxt))
    else:
        raise PlanningError("goal unreachable")

    cells = []
    cur = p.goal
    while cur is not None:
        cells.append(cur)
        cur = came_from[cur]
    return GridPath(tuple(reversed(cells)), dist[p.goal], popped)


def path_to_dict(path: GridPath, spec: GridSpec, scene: str | None = None):
    doc = {
        "grid": spec.to_dict(),
        "start": [path.start.row, path.start.col],
        "goal": [path.goal.row, path.goal.col],
        "path": [[c.row, c.col] for c in path.cells],
        "total_cost": float(path.total_cost),
        "steps": path_step_count(path),
        "expanded": int(path.expanded),
    }
    if scene is not None:
        doc["scene"] = scene
    return doc


def path_from_dict(doc):
    """Parse a path document into ``(GridPath, GridSpec, scene or None)``."""
    try:
        spec = GridSpec.from_dict(doc["grid"])
        cells = tuple(Cell(int(r), int(c)) for r, c in doc["path"])
        path = GridPath(cells, float(doc.get("total_cost", 0.0)), int(doc.get("expanded", 0)))
    except (KeyError, TypeError, ValueError) as exc:
        raise PlanningError(f"invalid path document: {exc!r}") from exc
    if not cells:
        raise PlanningError("path document has no cells")
    if not path.is_connected():
        raise PlanningError("path cells are not 4-adjacent")
    for cell in cells:
        if not (0 <= cell.row < spec.rows and 0 <= cell.col < spec.cols):
            raise PlanningError(f"path cell {cell} lies outside the grid")
    return path, spec, doc.get("scene")


def load_path(path):
    p = Path(path)
    try:
        doc = json.loads(p.read_text())
    except FileNotFoundError as exc:
        raise PlanningError(f"path file not found: {p}") from exc
    except json.JSONDecodeError as exc:
        raise PlanningError(f"{p}: invalid JSON: {exc}") from exc
    return path_from_dict(doc)


def grid_from_costs(costs) -> CostGrid:
    return CostGrid.from_array(np.asarray(costs, dtype=np.float64))
