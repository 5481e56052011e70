"""Regenerate the frozen path pairs behind the two published result tables.

Each pair is a planned path and an annotated path on the 19x20 grid, chosen
by exhaustive search over simple detour shapes so that the step, matching and
different counts equal the published rows. Run from the repository root:

    python tests/fixtures/make_paper_tables.py
"""

import itertools
import json
from pathlib import Path

ROWS, COLS = 19, 20
START, GOAL = (18, 10), (0, 10)

TABLES = {
    "log1": [
        ("No objects", 18, 18, 18),
        ("1 object", 20, 20, 20),
        ("3 objects", 22, 22, 22),
        ("5 objects", 22, 22, 22),
        ("Blocked path", 20, 26, 16),
    ],
    "log2": [
        ("No objects", 18, 18, 18),
        ("1 object", 22, 22, 22),
        ("3 objects", 22, 22, 22),
        ("5 objects", 26, 26, 25),
        ("Blocked path", 18, 24, 14),
    ],
}


def trace(corners):
    cells = [corners[0]]
    for (r0, c0), (r1, c1) in zip(corners, corners[1:]):
        r, c = r0, c0
        while (r, c) != (r1, c1):
            r += (r1 > r) - (r1 < r)
            c += (c1 > c) - (c1 < c) if r == r1 else 0
            cells.append((r, c))
    return cells


def detours():
    """Paths that leave the centre column once, with an optional one-cell stair."""
    yield trace([START, GOAL])
    for a, b in itertools.combinations(range(17, 0, -1), 2):
        for d in (-4, -3, -2, -1, 1, 2, 3, 4):
            col = 10 + d
            yield trace([START, (a, 10), (a, col), (b, col), (b, 10), GOAL])
            step = 1 if d > 0 else -1
            if abs(d) > 1 and a - 1 > b:
                yield trace([START, (a, 10), (a, col - step), (a - 1, col - step), (a - 1, col),
                             (b, col), (b, 10), GOAL])


def counts(result, label):
    on_result = set(result)
    matching = sum(1 for cell in label[1:] if cell in on_result)
    return len(result) - 1, len(label) - 1, matching


def find_pair(n_result, n_label, n_match):
    candidates = [p for p in detours() if len(set(p)) == len(p)]
    results = [p for p in candidates if len(p) - 1 == n_result]
    labels = [p for p in candidates if len(p) - 1 == n_label]
    for result in results:
        for label in labels:
            if counts(result, label) == (n_result, n_label, n_match):
                return result, label
    raise SystemExit(f"no pair for {(n_result, n_label, n_match)}")


def path_doc(cells, scene):
    return {
        "scene": scene,
        "grid": {"rows": ROWS, "cols": COLS, "cell_mm": 100},
        "start": list(cells[0]),
        "goal": list(cells[-1]),
        "path": [list(c) for c in cells],
        "steps": len(cells) - 1,
    }


def main():
    root = Path(__file__).parent / "paper_tables"
    for log, rows in TABLES.items():
        for i, (scene, n_result, n_label, n_match) in enumerate(rows, start=1):
            result, label = find_pair(n_result, n_label, n_match)
            stem = f"{i}_{scene.lower().replace(' ', '_')}"
            for kind, cells in (("results", result), ("labels", label)):
                out = root / log / kind
                out.mkdir(parents=True, exist_ok=True)
                (out / f"{stem}.json").write_text(json.dumps(path_doc(cells, scene), indent=2) + "\n")


if __name__ == "__main__":
    main()
