import time

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.data.schemas import Dataset
from app.data.utils import make_dataset
from app.errors import DegenerateIntervalError
from app.hull.convex import gcm_points, gl_set, hull_indices, lcm_points
from app.hull.schemas import PointKind

# зазор, внутри которого точка считается лежащей на хорде
MARGIN = 1e-9


def brute_force_lower_hull(x: np.ndarray, y: np.ndarray) -> tuple[set[int], set[int]]:
    """
    O(n^3) оракул: (точно вершины, точно не вершины).

    Внутренняя точка - вершина нижней оболочки, если она строго ниже
    каждой хорды между точками слева и справа от неё.
    """
    n = x.size
    vertices, others = {0, n - 1}, set()
    for i in range(1, n - 1):
        left, right = np.arange(i), np.arange(i + 1, n)
        j, k = np.meshgrid(left, right, indexing="ij")
        chord = y[j] + (y[k] - y[j]) * (x[i] - x[j]) / (x[k] - x[j])
        gap = chord - y[i]
        if gap.min() > MARGIN:
            vertices.add(i)
        elif gap.min() < -MARGIN:
            others.add(i)
    return vertices, others


def test_two_points():
    d = make_dataset([0.0, 1.0])
    assert gcm_points(d.ecdf, 0.0, 1.0).tolist() == [0.0, 1.0]
    assert lcm_points(d.ecdf, 0.0, 1.0).tolist() == [0.0, 1.0]


def test_gcm_skips_points_above_chord():
    d = make_dataset([0.0, 1.0, 2.0, 10.0])
    assert gcm_points(d.ecdf, 0.0, 10.0).tolist() == [0.0, 10.0]


def test_collinear_points_are_not_vertices():
    # наклоны 0.05, 0.25, 0.25: точка 6 лежит на хорде (5, 7)
    d = make_dataset([0.0, 5.0, 6.0, 7.0])
    assert gcm_points(d.ecdf, 0.0, 7.0).tolist() == [0.0, 5.0, 7.0]

    # наклоны 0.25, 0.25, 0.03125: точка 1 лежит на хорде (0, 2)
    d = make_dataset([0.0, 1.0, 2.0, 10.0])
    assert lcm_points(d.ecdf, 0.0, 10.0).tolist() == [0.0, 2.0, 10.0]


def test_lcm_mirror_example():
    d = make_dataset([0.0, 8.0, 9.0, 10.0])
    assert lcm_points(d.ecdf, 0.0, 10.0).tolist() == [0.0, 10.0]


def test_gl_set():
    gl = gl_set(make_dataset([0.0, 1.0, 2.0, 10.0]).ecdf)
    assert [(p.x, p.kind) for p in gl.points] == [
        (0.0, PointKind.BOTH),
        (2.0, PointKind.LCM),
        (10.0, PointKind.BOTH),
    ]
    assert gl.max_g == 0.0
    assert gl.min_l == 2.0
    assert gl.points[1].f == pytest.approx(0.75)


def test_gl_set_two_points():
    gl = gl_set(make_dataset([0.0, 1.0]).ecdf)
    assert [p.kind for p in gl.points] == [PointKind.BOTH, PointKind.BOTH]


def test_degenerate_interval():
    d = make_dataset([0.0, 1.0, 2.0])
    with pytest.raises(DegenerateIntervalError):
        gcm_points(d.ecdf, 0.5, 1.5)
    with pytest.raises(DegenerateIntervalError):
        gl_set(make_dataset([3.0, 3.0]).ecdf)


def test_sub_range_hull():
    d = make_dataset([0.0, 1.0, 2.0, 10.0, 11.0])
    assert gcm_points(d.ecdf, 1.0, 10.0).tolist() == [1.0, 10.0]


datasets = st.lists(
    st.tuples(st.integers(min_value=-1000, max_value=1000), st.integers(min_value=1, max_value=5)),
    min_size=2,
    max_size=50,
    unique_by=lambda pair: pair[0],
)


@settings(derandomize=True, max_examples=1000, deadline=None)
@given(datasets)
def test_hull_matches_brute_force(pairs):
    pairs = sorted(pairs)
    d = Dataset(values=[float(v) for v, _ in pairs], weights=[w for _, w in pairs])
    x, f = d.values, d.ecdf.cum

    for y, points in ((f, gcm_points(d.ecdf, d.lo, d.hi)), (-f, lcm_points(d.ecdf, d.lo, d.hi))):
        vertices, others = brute_force_lower_hull(x, y)
        found = set(np.searchsorted(x, points).tolist())
        assert vertices <= found
        assert not (others & found)


@settings(derandomize=True, max_examples=200)
@given(datasets)
def test_hulls_bound_the_ecdf(pairs):
    pairs = sorted(pairs)
    d = Dataset(values=[float(v) for v, _ in pairs], weights=[w for _, w in pairs])
    f = d.ecdf.cum

    gcm = gcm_points(d.ecdf, d.lo, d.hi)
    assert np.all(np.interp(d.values, gcm, d.ecdf(gcm)) <= f + 1e-12)
    lcm = lcm_points(d.ecdf, d.lo, d.hi)
    assert np.all(np.interp(d.values, lcm, d.ecdf(lcm)) >= f - 1e-12)


def test_mirror_duality(rng):
    values = np.sort(rng.normal(0, 1, 300))
    d = make_dataset(values)
    mirrored = make_dataset(-values)

    gcm_of_mirror = gcm_points(mirrored.ecdf, mirrored.lo, mirrored.hi)
    lcm_of_original = lcm_points(d.ecdf, d.lo, d.hi)
    assert np.array_equal(gcm_of_mirror, np.sort(-lcm_of_original))


def monotone_chain_lower(x: np.ndarray, y: np.ndarray) -> list[int]:
    """Нижняя оболочка обходом Эндрю: точка остаётся, только если поворот строго левый."""
    hull: list[int] = []
    for i in range(x.size):
        while len(hull) >= 2:
            o, a = hull[-2], hull[-1]
            cross = (x[a] - x[o]) * (y[i] - y[o]) - (y[a] - y[o]) * (x[i] - x[o])
            if cross > 0:
                break
            hull.pop()
        hull.append(i)
    return hull


def test_hull_indices_match_monotone_chain(rng):
    x = np.sort(rng.uniform(0, 100, 2000))
    y = np.cumsum(rng.integers(1, 10, x.size)).astype(np.float64)
    y /= y[-1]
    assert hull_indices(x, y, convex=True).tolist() == monotone_chain_lower(x, y)
    assert hull_indices(x, y, convex=False).tolist() == monotone_chain_lower(x, -y)


def test_hull_indices_need_two_points():
    with pytest.raises(DegenerateIntervalError):
        hull_indices(np.array([1.0]), np.array([1.0]))


def _hull_seconds(n: int) -> float:
    values = np.sort(np.random.default_rng(7).normal(0, 1, n))
    d = make_dataset(values)
    started = time.perf_counter()
    gcm_points(d.ecdf, d.lo, d.hi)
    lcm_points(d.ecdf, d.lo, d.hi)
    return time.perf_counter() - started


@pytest.mark.slow
def test_hull_time_grows_linearly():
    # наклон log(время) / log(n) при удвоении n меньше 1.3
    small = min(_hull_seconds(1_000_000) for _ in range(3))
    large = min(_hull_seconds(2_000_000) for _ in range(3))
    assert large / small < 2**1.3
