"""Render game-length distributions to files: CSV, JSON, and PNG figures.

Each figure shows the length histogram for one n with the matched Gaussian
(same mean and standard deviation) overlaid; when several n are requested a
combined moments.csv compares their 4th/6th-moment misfit.
"""

from __future__ import annotations

import json
import os
from typing import Iterable

from .simulation import LengthDistribution, run_distribution


def write_histogram_csv(dist: LengthDistribution, path: str) -> None:
    with open(path, "w") as fh:
        fh.write("length,count\n")
        for length in sorted(dist.histogram):
            fh.write(f"{length},{dist.histogram[length]}\n")


def write_moments_csv(dists: Iterable[LengthDistribution], path: str) -> None:
    with open(path, "w") as fh:
        fh.write("n,trials,mean,stddev,d2,d4,d6\n")
        for d in dists:
            g = d.gaussian_diffs or {"d2": "", "d4": "", "d6": ""}
            fh.write(
                f"{d.n},{d.trials},{d.mean},{d.stddev},{g['d2']},{g['d4']},{g['d6']}\n"
            )


def render_histogram_figure(dist: LengthDistribution, path: str) -> None:
    """Histogram bars plus the matched Gaussian curve, written to path."""
    import matplotlib

    matplotlib.use("Agg")
    import math

    import matplotlib.pyplot as plt

    lengths = sorted(dist.histogram)
    counts = [dist.histogram[x] for x in lengths]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.bar(lengths, counts, width=0.9, color="#7390b8", label="observed")
    if dist.stddev > 0:
        lo, hi = min(lengths) - 1, max(lengths) + 1
        xs = [lo + k * (hi - lo) / 400 for k in range(401)]
        norm = dist.trials / (dist.stddev * math.sqrt(2 * math.pi))
        ys = [norm * math.exp(-((x - dist.mean) ** 2) / (2 * dist.stddev**2)) for x in xs]
        ax.plot(xs, ys, color="#b8434e", linewidth=2, label="matched Gaussian")
    ax.set_xlabel("game length (moves)")
    ax.set_ylabel(f"games out of {dist.trials}")
    ax.set_title(f"Random game lengths on n = {dist.n}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def run_report(ns: list[int], trials: int, seed: int, out_dir: str) -> list[str]:
    """Simulate each n and write per-n CSV/JSON/PNG plus a combined moments CSV."""
    os.makedirs(out_dir, exist_ok=True)
    written: list[str] = []
    dists = []
    for n in ns:
        dist = run_distribution(n, trials, seed)
        dists.append(dist)
        base = os.path.join(out_dir, f"lengths_n{n}")
        write_histogram_csv(dist, base + ".csv")
        written.append(base + ".csv")
        with open(base + ".json", "w") as fh:
            json.dump(dist.to_json_dict(), fh, sort_keys=True, indent=2)
        written.append(base + ".json")
        render_histogram_figure(dist, base + ".png")
        written.append(base + ".png")
    moments_path = os.path.join(out_dir, "moments.csv")
    write_moments_csv(dists, moments_path)
    written.append(moments_path)
    return written
