import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from floorpath.costgrid import CostGrid, GridSpec
from floorpath.errors import EvalError
from floorpath.evalmetrics import EvalRow, compare_paths, emit_table
from floorpath.planner import Cell, GridPath, PlanProblem, astar

TABLE_1 = [
    EvalRow("No objects", 18, 18, 18, 0),
    EvalRow("1 object", 20, 20, 20, 0),
    EvalRow("3 objects", 22, 22, 22, 0),
    EvalRow("5 objects", 22, 22, 22, 0),
    EvalRow("Blocked path", 20, 26, 16, 10),
]


def column(col, rows):
    return GridPath(tuple(Cell(r, col) for r in rows))


def test_identical_paths():
    path = GridPath(tuple(Cell(r, 10) for r in range(18, 7, -1)) + tuple(Cell(8, c) for c in range(11, 22 - 8)))
    n = len(path.cells) - 1
    assert compare_paths(path, path, "x") == EvalRow("x", n, n, n, 0)


def test_disjoint_paths():
    result = column(0, range(24, -1, -1))
    label = column(5, range(24, -1, -1))
    assert compare_paths(result, label) == EvalRow("", 24, 24, 0, 24)


def test_partial_overlap_counts_entered_cells_only():
    # Result goes straight up column 1; label jogs right through column 2 for two rows.
    result = column(1, [3, 2, 1, 0])
    label = GridPath((Cell(3, 1), Cell(3, 2), Cell(2, 2), Cell(1, 2), Cell(1, 1), Cell(0, 1)))
    # Entered cells: (3,2) (2,2) (1,2) miss, (1,1) (0,1) hit.
    assert compare_paths(result, label) == EvalRow("", 3, 5, 2, 3)


def test_mismatched_grids():
    p = column(0, [1, 0])
    with pytest.raises(EvalError):
        compare_paths(p, p, "s", GridSpec(19, 20, 100), GridSpec(19, 20, 50))


def test_empty_table_is_header_only():
    assert emit_table([], "csv") == "Scene,Steps in result,Steps in label,Matching steps,Different steps\n"
    md = emit_table([], "markdown").splitlines()
    assert md[0] == "| Scene | Steps in result | Steps in label | Matching steps | Different steps |"
    assert len(md) == 2


def test_single_csv_line():
    assert emit_table([EvalRow("No objects", 18, 18, 18, 0)], "csv").splitlines()[1] == "No objects,18,18,18,0"


def test_table_one_rendering():
    lines = emit_table(TABLE_1, "csv").splitlines()[1:]
    assert lines == [
        "No objects,18,18,18,0",
        "1 object,20,20,20,0",
        "3 objects,22,22,22,0",
        "5 objects,22,22,22,0",
        "Blocked path,20,26,16,10",
    ]
    md = emit_table(TABLE_1, "markdown").splitlines()
    assert md[-1] == "| Blocked path | 20 | 26 | 16 | 10 |"


def test_unknown_format():
    with pytest.raises(EvalError):
        emit_table([], "html")


@settings(max_examples=80, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_metric_invariants(seed):
    rng = np.random.default_rng(seed)
    costs = rng.choice([1.0, 4.0, 64.0], size=(8, 8))
    a = astar(PlanProblem(CostGrid.from_array(costs), Cell(7, 3), Cell(0, 4)))
    b = astar(PlanProblem(CostGrid.from_array(rng.permutation(costs.ravel()).reshape(8, 8)), Cell(7, 3), Cell(0, 4)))
    row = compare_paths(a, b)
    assert row.different_steps >= 0
    assert row.matching_steps <= min(row.steps_in_result, row.steps_in_label)
    assert row.different_steps == row.steps_in_label - row.matching_steps
    same = compare_paths(a, a)
    assert (same.matching_steps, same.different_steps) == (len(a.cells) - 1, 0)
    if set(a.cells) == set(b.cells):
        assert row.different_steps == 0
