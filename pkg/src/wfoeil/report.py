"""Scaling report: compile the star sentence for growing instance counts
and record automaton size and wall time, as CSV plus a rendered figure.
"""

import csv
import os
import time

from . import architectures
from .system import instantiate
from .translate import translate_wfoeil


def star_scaling(r_values=(2, 3, 4, 5), weights=None, semiring=None,
                 max_states=None, max_edges=None):
    rows = []
    for n in r_values:
        system, phi = architectures.generate("star", weights, semiring=semiring)
        view = instantiate(system, (n,))
        t0 = time.perf_counter()
        kwargs = {}
        if max_states is not None:
            kwargs["max_states"] = max_states
        if max_edges is not None:
            kwargs["max_edges"] = max_edges
        wfa = translate_wfoeil(view, phi, **kwargs)
        dt = time.perf_counter() - t0
        st = wfa.stats()
        rows.append({"r": n, "states": st["states"],
                     "transitions": st["transitions"], "seconds": round(dt, 3)})
    return rows


def write_csv(rows, path):
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=["r", "states", "transitions", "seconds"])
        writer.writeheader()
        writer.writerows(rows)


def write_figure(rows, path):
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    rs = [row["r"] for row in rows]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.5))
    ax1.plot(rs, [row["states"] for row in rows], "o-", label="states")
    ax1.plot(rs, [row["transitions"] for row in rows], "s-", label="transitions")
    ax1.set_xlabel("instances")
    ax1.set_ylabel("count")
    ax1.set_yscale("log")
    ax1.set_xticks(rs)
    ax1.legend()
    ax1.set_title("star: automaton size")
    ax2.plot(rs, [row["seconds"] for row in rows], "o-", color="tab:red")
    ax2.set_xlabel("instances")
    ax2.set_ylabel("seconds")
    ax2.set_xticks(rs)
    ax2.set_title("star: compile time")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def run_report(out_dir, r_values=(2, 3, 4, 5), weights=None, semiring=None):
    os.makedirs(out_dir, exist_ok=True)
    rows = star_scaling(r_values, weights, semiring=semiring)
    csv_path = os.path.join(out_dir, "scaling.csv")
    png_path = os.path.join(out_dir, "scaling.png")
    write_csv(rows, csv_path)
    write_figure(rows, png_path)
    return rows, csv_path, png_path
