import itertools

import numpy as np
import pytest

from floorpath.homography import Correspondences
from floorpath.pipeline import Pipeline, synthetic_config


def min_triangle_area(pts):
    best = np.inf
    for i, j, k in itertools.combinations(range(4), 3):
        a, b = pts[j] - pts[i], pts[k] - pts[i]
        best = min(best, abs(a[0] * b[1] - a[1] * b[0]) / 2)
    return best


def random_quad(rng, scale=1000.0, min_area_frac=0.02):
    """Four points with no near-collinear triple."""
    while True:
        pts = rng.uniform(0, scale, size=(4, 2))
        if min_triangle_area(pts) > min_area_frac * scale * scale:
            return pts


def random_correspondences(rng, src_scale=640.0, dst_scale=2000.0):
    return Correspondences(random_quad(rng, src_scale), random_quad(rng, dst_scale))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def synthetic_pipeline():
    return Pipeline(synthetic_config())


_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, title = marker.args
    _CRITERIA[number] = (title, call.excinfo is None, call.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok, duration = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  ({duration:.2f} s)")
