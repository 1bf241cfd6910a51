"""Benchmark suites over random simple polygons, emitted as CSV rows.

Every suite derives its instance seeds from one suite seed, times only the
solver call, and writes rows in a fixed order whether or not instances run
in parallel.
"""

from __future__ import annotations

import csv
import io
import logging
import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields

import numpy as np

from .cont import solve_cont
from .gonzalez import farthest_first
from .geometry import perimeter_length
from .ilp import DEFAULT_NODE_BUDGET, solve_ilp_perimeter, solve_ilp_region
from .instances import InstanceSpec, random_simple_polygon
from .sampling import grid_for, sample_perimeter, sample_region

log = logging.getLogger(__name__)

SUITES = ("cont", "ilp-perimeter", "ilp-region", "gain")
COLUMNS = ("suite", "seed", "n_vertices", "method", "N", "grid_m", "grid_n", "k",
           "wall_time_ms", "radius", "gain_percent")


@dataclass(frozen=True)
class BenchRecord:
    suite: str
    seed: int
    n_vertices: int
    method: str
    N: int | None
    grid_m: int | None
    grid_n: int | None
    k: int
    wall_time_ms: float | None
    radius: float | None
    gain_percent: float | None = None

    def __post_init__(self):
        if self.wall_time_ms is not None and self.wall_time_ms < 0:
            raise ValueError("negative wall time")
        if self.radius is not None and self.radius < 0:
            raise ValueError("negative radius")


def optimality_gain(r_baseline: float, r_method: float) -> float:
    """Percentage of the baseline radius saved by the method."""
    if not r_baseline > 0:
        raise ValueError("baseline radius must be positive")
    return (r_baseline - r_method) / r_baseline * 100.0


@dataclass(frozen=True)
class SuiteConfig:
    instances: int
    n_vertices: int = 200
    sizes: tuple = ()  # N for cont, grid size GS for the ILP suites
    ks: tuple = ()
    # gain suite only
    cont_N: int = 2000
    perimeter_grid: int = 50
    region_grid: int = 20
    methods: tuple = ("cont", "ilp-perimeter", "ilp-region")
    node_budget: int = DEFAULT_NODE_BUDGET


DESK = {
    "cont": SuiteConfig(10, sizes=(500, 1000), ks=(5, 10, 20, 50)),
    "ilp-perimeter": SuiteConfig(3, sizes=(20, 30), ks=(10, 15, 20)),
    "ilp-region": SuiteConfig(3, sizes=(10, 15), ks=(10, 15, 20)),
    "gain": SuiteConfig(10, ks=(10,), methods=("cont", "ilp-perimeter")),
}

FULL = {
    "cont": SuiteConfig(100, sizes=(500, 800, 1000, 1500, 2000), ks=(5, 10, 20, 30, 50, 100)),
    "ilp-perimeter": SuiteConfig(10, sizes=(50, 100, 200, 300, 400), ks=(10, 15, 20, 30, 50, 100)),
    "ilp-region": SuiteConfig(10, sizes=(20, 30, 40, 50, 80), ks=(10, 15, 20, 30, 50, 100)),
    "gain": SuiteConfig(10, ks=(5, 10, 20, 30, 50, 100), perimeter_grid=200, region_grid=40),
}


def instance_seeds(suite_seed: int, count: int) -> list:
    return [int(s) for s in np.random.SeedSequence(suite_seed).generate_state(count, dtype=np.uint32)]


def _timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    return out, (time.perf_counter() - t0) * 1000.0


def _grid_side(poly, gs):
    x0, y0, x1, y1 = poly.bounds()
    return max(x1 - x0, y1 - y0) / gs


def _cont_samples(poly, n):
    # N = ceil(len / 2eps) pins eps for a target sample count.
    return sample_perimeter(poly, perimeter_length(poly) / (2 * n))


def _run(fn, base, **fields_):
    """Run one cell; failures become a row without timing or radius."""
    try:
        dep, ms = _timed(fn)
        return BenchRecord(**base, **fields_, wall_time_ms=ms, radius=dep.radius), dep
    except Exception as exc:  # reported per row, the suite continues
        log.warning("%s seed=%s k=%s failed: %s", base["suite"], base["seed"], base["k"], exc)
        return BenchRecord(**base, **fields_, wall_time_ms=None, radius=None), None


def _instance_rows(task):
    suite, seed, cfg = task
    poly = random_simple_polygon(InstanceSpec(cfg.n_vertices, seed))
    rows = []
    for size in cfg.sizes or (None,):
        for k in cfg.ks:
            base = {"suite": suite, "seed": seed, "n_vertices": cfg.n_vertices, "k": k}
            if suite == "cont":
                s = _cont_samples(poly, size)
                rows.append(_run(lambda: solve_cont(poly, k, s.epsilon, samples=s), base,
                                 method="cont", N=len(s), grid_m=None, grid_n=None)[0])
            elif suite == "ilp-perimeter":
                eps = _grid_side(poly, size)
                s, g = sample_perimeter(poly, eps), grid_for(poly, eps)
                rows.append(_run(
                    lambda: solve_ilp_perimeter(poly, k, eps, node_budget=cfg.node_budget, samples=s),
                    base, method="ilp-perimeter", N=len(s), grid_m=g.rows, grid_n=g.cols)[0])
            elif suite == "ilp-region":
                eps = _grid_side(poly, size)
                s, g = sample_region(poly, eps)
                rows.append(_run(
                    lambda: solve_ilp_region(poly, k, eps, node_budget=cfg.node_budget, samples=s),
                    base, method="ilp-region", N=len(s), grid_m=g.rows, grid_n=g.cols)[0])
            else:
                rows.extend(_gain_rows(poly, k, cfg, base))
    return rows


def _gain_rows(poly, k, cfg, base):
    """Baseline and method on identical samples; gain on the method row."""
    rows = []
    for method in cfg.methods:
        if method == "cont":
            s = _cont_samples(poly, cfg.cont_N)
            g = None
            solve = lambda: solve_cont(poly, k, s.epsilon, samples=s)  # noqa: E731
        elif method == "ilp-perimeter":
            eps = _grid_side(poly, cfg.perimeter_grid)
            s, g = sample_perimeter(poly, eps), grid_for(poly, eps)
            solve = lambda: solve_ilp_perimeter(poly, k, eps, node_budget=cfg.node_budget, samples=s)  # noqa: E731
        elif method == "ilp-region":
            eps = _grid_side(poly, cfg.region_grid)
            s, g = sample_region(poly, eps)
            solve = lambda: solve_ilp_region(poly, k, eps, node_budget=cfg.node_budget, samples=s)  # noqa: E731
        else:
            raise ValueError(f"unknown gain method {method!r}")
        shape = {"N": len(s), "grid_m": g.rows if g else None, "grid_n": g.cols if g else None}
        ref, ref_dep = _run(lambda: farthest_first(s, k), base, method=f"gonzalez/{method}", **shape)
        rec, dep = _run(solve, base, method=method, **shape)
        if ref_dep is not None and dep is not None and ref_dep.radius > 0:
            rec = BenchRecord(**{**asdict(rec), "gain_percent": optimality_gain(ref_dep.radius, dep.radius)})
        rows += [ref, rec]
    return rows


def run_suite(suite: str, config: SuiteConfig | None = None, seed: int = 0, jobs: int = 1,
              full: bool = False) -> list:
    """All rows of one suite, ordered by instance then cell."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    cfg = config or (FULL if full else DESK)[suite]
    tasks = [(suite, s, cfg) for s in instance_seeds(seed, cfg.instances)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            chunks = list(pool.map(_instance_rows, tasks))
    else:
        chunks = [_instance_rows(t) for t in tasks]
    return [r for chunk in chunks for r in chunk]


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(round(v, 9))
    return str(v)


def write_csv(records, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in records:
        w.writerow([_fmt(getattr(r, c)) for c in COLUMNS])


def to_csv(records) -> str:
    buf = io.StringIO()
    write_csv(records, buf)
    return buf.getvalue()


def read_csv(fh) -> list:
    reader = csv.DictReader(fh)
    if tuple(reader.fieldnames or ()) != COLUMNS:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    types = {f.name: f.type for f in fields(BenchRecord)}
    out = []
    for row in reader:
        vals = {}
        for c in COLUMNS:
            v = row[c]
            if v == "":
                vals[c] = None
            elif c in ("suite", "method"):
                vals[c] = v
            elif "int" in str(types[c]):
                vals[c] = int(v)
            else:
                vals[c] = float(v)
        out.append(BenchRecord(**vals))
    return out


def summarize(records) -> list:
    """Per (suite, method, size, k) cell: count, mean time, stddev/mean, mean radius and gain.

    ``size`` is N for sample-only methods and the larger grid dimension
    (the requested grid size) otherwise.
    """
    cells = {}
    for r in records:
        size = r.N if r.grid_m is None else max(r.grid_m, r.grid_n)
        cells.setdefault((r.suite, r.method, size, r.k), []).append(r)
    out = []
    for key, rs in cells.items():
        ok = [r for r in rs if r.wall_time_ms is not None]
        times = [r.wall_time_ms for r in ok]
        gains = [r.gain_percent for r in ok if r.gain_percent is not None]
        mean_t = statistics.fmean(times) if times else math.nan
        sd = statistics.pstdev(times) if len(times) > 1 else 0.0
        out.append({
            "suite": key[0], "method": key[1], "size": key[2], "k": key[3],
            "count": len(rs), "failed": len(rs) - len(ok),
            "mean_time_ms": mean_t,
            "normalized_std": sd / mean_t if times and mean_t > 0 else math.nan,
            "mean_radius": statistics.fmean(r.radius for r in ok) if ok else math.nan,
            "mean_gain_percent": statistics.fmean(gains) if gains else None,
        })
    return out
