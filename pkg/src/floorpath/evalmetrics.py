"""Planned-vs-annotated path comparison and the four-column report."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from floorpath.costgrid import GridSpec
from floorpath.errors import EvalError
from floorpath.planner import GridPath, path_step_count

HEADER = ("Scene", "Steps in result", "Steps in label", "Matching steps", "Different steps")
CSV = "csv"
MARKDOWN = "markdown"


@dataclass(frozen=True)
class EvalRow:
    scene: str
    steps_in_result: int
    steps_in_label: int
    matching_steps: int
    different_steps: int

    def values(self):
        return (self.scene, self.steps_in_result, self.steps_in_label, self.matching_steps, self.different_steps)


def compare_paths(result: GridPath, label: GridPath, scene: str = "",
                  result_spec: GridSpec | None = None, label_spec: GridSpec | None = None) -> EvalRow:
    """A label move matches when the cell it enters lies anywhere on the result path."""
    if result_spec is not None and label_spec is not None and not result_spec.same_geometry(label_spec):
        raise EvalError(f"scene {scene!r}: result grid {result_spec.to_dict()} != label grid {label_spec.to_dict()}")
    on_result = set(result.cells)
    matching = sum(1 for cell in label.cells[1:] if cell in on_result)
    n_label = path_step_count(label)
    return EvalRow(scene, path_step_count(result), n_label, matching, n_label - matching)


def emit_table(rows, fmt: str = CSV) -> str:
    if fmt == CSV:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(HEADER)
        for row in rows:
            writer.writerow(row.values())
        return buf.getvalue()
    if fmt == MARKDOWN:
        lines = ["| " + " | ".join(HEADER) + " |", "|" + "|".join("---" for _ in HEADER) + "|"]
        lines += ["| " + " | ".join(str(v) for v in row.values()) + " |" for row in rows]
        return "\n".join(lines) + "\n"
    raise EvalError(f"unknown table format {fmt!r}")
