"""CSV writers/readers for traces, particles and histograms.

Floats are written with 17 significant digits so reading them back is
exact. Files are UTF-8 with LF line endings and a header row.
"""
from __future__ import annotations

import csv
import math
from pathlib import Path

import numpy as np

from .diagnostics import ConvergenceTrace, TracePoint
from .errors import InvalidInputError
from .kernels import kernel_density
from .model import PosteriorSummary

TRACE_COLUMNS = ("iteration", "epsilon", "mean", "variance", "sim_calls",
                 "acceptance_rate", "reference_variance")
PARTICLE_COLUMNS = ("index", "value", "weight", "distance")
HISTOGRAM_COLUMNS = ("bin_lo", "bin_hi", "count", "density", "oracle_density")


def fmt(x) -> str:
    return f"{float(x):.17g}"


def _writer(fh):
    return csv.writer(fh, lineterminator="\n")


def write_trace_csv(path, trace: ConvergenceTrace):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = _writer(fh)
        w.writerow(TRACE_COLUMNS)
        for p in trace.points:
            w.writerow([p.iteration, fmt(p.epsilon), fmt(p.mean), fmt(p.variance),
                        p.sim_calls, fmt(p.acceptance_rate), fmt(trace.reference_variance)])


def read_trace_csv(path) -> ConvergenceTrace:
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or tuple(rows[0]) != TRACE_COLUMNS:
        raise InvalidInputError(f"{path}: not a trace CSV (header {rows[0] if rows else None})")
    points, ref = [], math.nan
    for r in rows[1:]:
        points.append(TracePoint(int(r[0]), float(r[2]), float(r[3]), float(r[1]),
                                 int(r[4]), float(r[5])))
        ref = float(r[6])
    return ConvergenceTrace(tuple(points), ref)


def write_particles_csv(path, values, weights=None, distances=None):
    values = np.asarray(values, dtype=float)
    n = values.size
    weights = np.full(n, 1.0 / n) if weights is None else np.asarray(weights, dtype=float)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = _writer(fh)
        w.writerow(PARTICLE_COLUMNS)
        for i in range(n):
            d = "" if distances is None else fmt(distances[i])
            w.writerow([i, fmt(values[i]), fmt(weights[i]), d])


def read_particles_csv(path) -> np.ndarray:
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.DictReader(fh))
    return np.array([float(r["value"]) for r in rows])


def histogram_rows(values, oracle: PosteriorSummary, bins=50):
    values = np.asarray(values, dtype=float)
    lo, hi = values.min(), values.max()
    if lo == hi:
        lo, hi = lo - 0.5, hi + 0.5
    counts, edges = np.histogram(values, bins=bins, range=(lo, hi))
    dens = counts / (values.size * np.diff(edges))
    mids = 0.5 * (edges[:-1] + edges[1:])
    ref = kernel_density(mids, oracle.mean, oracle.variance)
    return list(zip(edges[:-1], edges[1:], counts, dens, np.atleast_1d(ref)))


def write_histogram_csv(path, values, oracle: PosteriorSummary, bins=50):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = _writer(fh)
        w.writerow(HISTOGRAM_COLUMNS)
        for a, b, c, d, r in histogram_rows(values, oracle, bins):
            w.writerow([fmt(a), fmt(b), int(c), fmt(d), fmt(r)])


def write_histogram_svg(path, values, oracle: PosteriorSummary, bins=50, title=None):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    # fixed salt and no date keep the SVG byte-stable between runs
    matplotlib.rcParams["svg.hashsalt"] = "abcprc"

    values = np.asarray(values, dtype=float)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.hist(values, bins=bins, density=True, alpha=0.6, label="particles")
    lo = min(values.min(), oracle.mean - 4 * oracle.sd)
    hi = max(values.max(), oracle.mean + 4 * oracle.sd)
    xs = np.linspace(lo, hi, 400)
    ax.plot(xs, kernel_density(xs, oracle.mean, oracle.variance), "k-", label="exact posterior")
    ax.set_xlabel("theta")
    ax.set_ylabel("density")
    if title:
        ax.set_title(title)
    ax.legend()
    fig.savefig(Path(path), format="svg", metadata={"Date": None})
    plt.close(fig)
