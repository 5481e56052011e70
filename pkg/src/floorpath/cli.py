"""Command line entry point.

Exit codes: 0 success, 1 processing error, 2 usage or configuration error.
"""

from __future__ import annotations

import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import click
import numpy as np

from floorpath import jsonio
from floorpath.costgrid import pool
from floorpath.costmap import apply_costs
from floorpath.errors import FloorpathError
from floorpath.evalmetrics import CSV, MARKDOWN, compare_paths, emit_table
from floorpath.homography import Homography, estimate, load_calibration, save_homography_cache
from floorpath.overlay import colorize_labels, render_overlay
from floorpath.pipeline import (
    SYNTHETIC_FRAME_SIZE, Pipeline, PipelineConfig, load_pipeline_config, synthetic_config,
)
from floorpath.planner import PlanProblem, dijkstra, load_path, path_to_dict
from floorpath.raster import (
    BEV, load_color_frame, load_label_image, save_color_frame, save_label_image,
)
from floorpath.scenegen import (
    fixture_scenes, generate_bev_labels, generate_perspective_view, load_scene_spec,
)

EXIT_OK = 0
EXIT_PROCESSING = 1
EXIT_USAGE = 2


def _fail(exc, code):
    click.echo(f"error: {exc}", err=True)
    sys.exit(code)


def _load_config(path) -> PipelineConfig:
    try:
        return load_pipeline_config(path)
    except FloorpathError as exc:
        _fail(exc, EXIT_USAGE)


def _frame_homography(pipe: Pipeline, frame_shape, label_shape) -> Homography:
    """Homography from the frame the overlay is drawn on to the BEV canvas.

    A frame matching the uncropped label size is shifted by the crop offset.
    """
    crop = pipe.config.crop
    h = pipe.homography
    if crop is not None and frame_shape[:2] == label_shape:
        shift = np.array([[1.0, 0, -crop.x], [0, 1.0, -crop.y], [0, 0, 1.0]])
        return Homography.from_matrix(h.m @ shift)
    return h


def _plan_frame(pipe: Pipeline, label_path, frame_path=None):
    labels = load_label_image(label_path)
    result = pipe.run(labels)
    frame = load_color_frame(frame_path) if frame_path is not None else colorize_labels(labels)
    h = _frame_homography(pipe, frame.shape, labels.data.shape)
    return result, render_overlay(frame, result.path, pipe.config.grid, h)


@click.group()
def main():
    """Plan ground-plane paths from semantically labeled camera frames."""


@main.command()
@click.argument("calib_json", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
def calibrate(calib_json, out_path):
    """Estimate the perspective-to-BEV homography and cache it with its inverse."""
    try:
        corr, _ = load_calibration(calib_json)
        h = estimate(corr)
    except FloorpathError as exc:
        _fail(exc, EXIT_USAGE)
    save_homography_cache(h, out_path)
    click.echo(f"wrote {out_path}")


@main.command()
@click.argument("label_png", type=click.Path(exists=True, dir_okay=False))
@click.option("--config", "config_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.option("--frame", "frame_path", type=click.Path(exists=True, dir_okay=False),
              help="Color frame to draw the overlay on.")
@click.option("--overlay", "overlay_path", type=click.Path(dir_okay=False),
              help="Write the path overlay PNG here.")
def plan(label_png, config_path, out_path, frame_path, overlay_path):
    """Run crop, warp, costs, pooling and A* on one label image."""
    cfg = _load_config(config_path)
    try:
        pipe = Pipeline(cfg)
        if overlay_path:
            result, image = _plan_frame(pipe, label_png, frame_path)
        else:
            result, image = pipe.run(load_label_image(label_png)), None
    except FloorpathError as exc:
        _fail(exc, EXIT_PROCESSING)
    jsonio.write_json(path_to_dict(result.path, cfg.grid), out_path)
    if image is not None:
        save_color_frame(image, overlay_path)
    click.echo(f"steps={len(result.path.cells) - 1} total_cost={result.path.total_cost:.9g}")


def _path_files(directory: Path):
    return {p.stem: p for p in sorted(directory.glob("*.json"))}


@main.command(name="eval")
@click.argument("results_dir", type=click.Path(exists=True, file_okay=False))
@click.option("--labels", "labels_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--format", "fmt", type=click.Choice([CSV, MARKDOWN]), default=CSV, show_default=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), help="Also write the table here.")
def eval_cmd(results_dir, labels_dir, fmt, out_path):
    """Compare planned paths with annotated paths, paired by file name."""
    results = _path_files(Path(results_dir))
    labels = _path_files(Path(labels_dir))
    missing_label = sorted(set(results) - set(labels))
    missing_result = sorted(set(labels) - set(results))
    if missing_label or missing_result:
        for name in missing_label:
            click.echo(f"error: scene {name!r} has no label path", err=True)
        for name in missing_result:
            click.echo(f"error: scene {name!r} has no result path", err=True)
        sys.exit(EXIT_PROCESSING)
    rows = []
    try:
        for name in sorted(results):
            result, rspec, rscene = load_path(results[name])
            label, lspec, lscene = load_path(labels[name])
            rows.append(compare_paths(result, label, lscene or rscene or name, rspec, lspec))
    except FloorpathError as exc:
        _fail(exc, EXIT_PROCESSING)
    table = emit_table(rows, fmt)
    if out_path:
        Path(out_path).write_text(table)
    click.echo(table, nl=False)


def _frame_pairs(frames_dir: Path):
    for label in sorted(frames_dir.glob("*.png")):
        if label.stem.endswith("_rgb"):
            continue
        rgb = label.with_name(f"{label.stem}_rgb.png")
        yield label.stem, label, (rgb if rgb.exists() else None)


@main.command()
@click.option("--frames", "frames_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--config", "config_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--jobs", default=1, show_default=True, type=click.IntRange(min=1))
def batch(frames_dir, config_path, out_dir, jobs):
    """Plan every NNNN.png in a directory (optional NNNN_rgb.png color frames)."""
    cfg = _load_config(config_path)
    try:
        pipe = Pipeline(cfg)
    except FloorpathError as exc:
        _fail(exc, EXIT_USAGE)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    def process(item):
        name, label_path, rgb_path = item
        t0 = time.perf_counter()
        try:
            result, image = _plan_frame(pipe, label_path, rgb_path)
        except FloorpathError as exc:
            return {"frame": name, "status": "error", "error": str(exc)}, time.perf_counter() - t0
        jsonio.write_json(path_to_dict(result.path, cfg.grid), out / f"{name}.json")
        save_color_frame(image, out / f"{name}_overlay.png")
        entry = {
            "frame": name,
            "status": "ok",
            "path": f"{name}.json",
            "overlay": f"{name}_overlay.png",
            "total_cost": result.path.total_cost,
            "steps": len(result.path.cells) - 1,
            "expanded": result.path.expanded,
        }
        return entry, time.perf_counter() - t0

    items = list(_frame_pairs(Path(frames_dir)))
    if jobs == 1:
        done = [process(item) for item in items]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool_:
            done = list(pool_.map(process, items))
    entries = [e for e, _ in done]
    failed = sum(1 for e in entries if e["status"] != "ok")
    jsonio.write_json({"frames": entries, "count": len(entries), "failed": failed}, out / "manifest.json")
    # Wall times live apart from the manifest so that the manifest stays reproducible.
    jsonio.write_json(
        {"frames": [{"frame": e["frame"], "wall_time_s": t} for e, t in done]}, out / "timings.json"
    )
    click.echo(f"processed {len(entries)} frames, {failed} failed")
    if failed:
        sys.exit(EXIT_PROCESSING)


@main.command()
@click.argument("scene_json", required=False, type=click.Path(exists=True, dir_okay=False))
@click.option("--fixture", type=click.Choice(sorted(fixture_scenes())), help="Use a built-in regression scene.")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--size", default=f"{SYNTHETIC_FRAME_SIZE[0]}x{SYNTHETIC_FRAME_SIZE[1]}", show_default=True,
              help="Perspective frame size WxH.")
def gen(scene_json, fixture, out_dir, config_path, size):
    """Write BEV labels, a perspective rendering and the ground-truth path for a scene."""
    if bool(scene_json) == bool(fixture):
        _fail("give exactly one of SCENE_JSON or --fixture", EXIT_USAGE)
    try:
        width, height = (int(v) for v in size.lower().split("x"))
    except ValueError:
        _fail(f"bad --size {size!r}, expected WxH", EXIT_USAGE)
    cfg = _load_config(config_path) if config_path else synthetic_config()
    try:
        spec = load_scene_spec(scene_json) if scene_json else fixture_scenes(cfg.canvas)[fixture]
    except FloorpathError as exc:
        _fail(exc, EXIT_USAGE)
    try:
        pipe = Pipeline(cfg)
        bev = generate_bev_labels(spec, cfg.canvas)
        persp = generate_perspective_view(bev, pipe.homography, (width, height))
        grid = pool(apply_costs(bev, cfg.cost_config, BEV), cfg.grid)
        truth = dijkstra(PlanProblem.default(grid, cfg.start, cfg.goal))
    except FloorpathError as exc:
        _fail(exc, EXIT_PROCESSING)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    save_label_image(bev, out / "bev_labels.png")
    save_label_image(persp, out / "perspective.png")
    jsonio.write_json(path_to_dict(truth, cfg.grid, scene=spec.name), out / "ground_truth.json")
    jsonio.write_json(spec.to_dict(), out / "scene.json")
    click.echo(f"wrote {out}")


if __name__ == "__main__":
    main()
