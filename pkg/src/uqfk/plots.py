"""Matplotlib figure rendering for the CLI report paths.

Figures are written to files next to the delimited outputs (CSV/DOT); no
interactive backend is used.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

_CLASS_ORDER = ["TwoSided11", "Finite1N", "HighestWeight1Inf",
                "LowestWeightInf1", "DenseInfInf"]
_CLASS_COLORS = {
    "TwoSided11": "#1b9e77",
    "Finite1N": "#d95f02",
    "HighestWeight1Inf": "#7570b3",
    "LowestWeightInf1": "#e7298a",
    "DenseInfInf": "#bdbdbd",
}


def render_sweep_figure(rows, path, m: int, title: str = ""):
    """Grid of spectrum classes over (q-exponent of beta, root index).

    ``rows`` are dicts with integer fields ``exp`` and ``root`` plus the
    class string in ``cls``.
    """
    if not rows:
        raise ValueError("no rows to plot")
    exps = sorted({r["exp"] for r in rows})
    roots = sorted({r["root"] for r in rows})
    exp_at = {e: i for i, e in enumerate(exps)}
    root_at = {k: i for i, k in enumerate(roots)}
    grid = [[len(_CLASS_ORDER)] * len(exps) for _ in roots]
    for r in rows:
        kind = r["cls"].split("(")[0]
        grid[root_at[r["root"]]][exp_at[r["exp"]]] = _CLASS_ORDER.index(kind)

    from matplotlib.colors import ListedColormap
    cmap = ListedColormap([_CLASS_COLORS[k] for k in _CLASS_ORDER] + ["#ffffff"])
    fig, ax = plt.subplots(figsize=(max(4, 0.7 * len(exps)),
                                    max(2.5, 0.6 * len(roots) + 1.2)))
    ax.imshow(grid, cmap=cmap, vmin=0, vmax=len(_CLASS_ORDER),
              aspect="auto", origin="lower")
    ax.set_xticks(range(len(exps)), [str(e) for e in exps])
    ax.set_yticks(range(len(roots)), ["z^%d" % k for k in roots])
    ax.set_xlabel("e  (beta = z^k q^e)")
    ax.set_ylabel("root of unity factor")
    ax.set_title(title or "spectrum classes, m=%d" % m)
    handles = [plt.Rectangle((0, 0), 1, 1, color=_CLASS_COLORS[k])
               for k in _CLASS_ORDER]
    ax.legend(handles, _CLASS_ORDER, loc="upper left",
              bbox_to_anchor=(1.02, 1.0), fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_lattice_figure(lattice, path, title: str = ""):
    """Layered drawing of the submodule lattice (y = divisor degree)."""
    levels = {}
    for idx, node in enumerate(lattice.nodes):
        levels.setdefault(node.degree, []).append(idx)
    coords = {}
    for deg, members in levels.items():
        for col, idx in enumerate(sorted(members)):
            x = col - (len(members) - 1) / 2.0
            coords[idx] = (x, -deg)
    fig, ax = plt.subplots(figsize=(max(4, 1.9 * max(len(v) for v in levels.values())),
                                    1.2 * len(levels) + 1))
    for up, low in lattice.edges:
        x1, y1 = coords[up]
        x2, y2 = coords[low]
        ax.plot([x1, x2], [y1, y2], color="#888888", lw=1, zorder=1)
    for idx, node in enumerate(lattice.nodes):
        x, y = coords[idx]
        bold = (lattice.unique_maximal == idx)
        ax.scatter([x], [y], s=120, zorder=2,
                   color="#d95f02" if bold else "#1f77b4")
        ax.annotate(node.label, (x, y), textcoords="offset points",
                    xytext=(0, 9), ha="center", fontsize=8,
                    fontweight="bold" if bold else "normal")
    ax.set_axis_off()
    ax.set_title(title or "submodule lattice of %s" % lattice.module.g)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
