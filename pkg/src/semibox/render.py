"""Figure and text rendering of egg-boxes, bipartite graphs, partitions and
chain reports.  Figures render through the Agg backend straight to files."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .flower import BipartiteGraph, Partition
from .green import GreenStructure, eggbox_data


def eggbox_ascii(green: GreenStructure) -> str:
    """One grid per D-class, group H-classes starred."""
    lines = []
    for box in eggbox_data(green):
        lines.append(
            f"== {box['label']}  "
            f"({len(box['r_keys'])} R x {len(box['l_keys'])} L, {box['class_size']} elements)"
        )
        for r_key, row in zip(box["r_keys"], box["grid"]):
            cells = "".join(
                f"[{'*' if cell['group'] else ' '}{cell['size']}]" for cell in row
            )
            lines.append(f"  {cells}  {r_key}")
        lines.append("  columns: " + " ".join(box["l_keys"]))
    return "\n".join(lines) + "\n"


def _save(fig, path: str):
    fig.savefig(path, dpi=100)
    plt.close(fig)
    return path


def eggbox_figure(green: GreenStructure, path: str, title: str = "") -> str:
    boxes = eggbox_data(green)
    fig, axes = plt.subplots(
        len(boxes),
        1,
        figsize=(6, 2.2 * len(boxes)),
        squeeze=False,
    )
    for ax, box in zip(axes[:, 0], boxes):
        rows, cols = len(box["r_keys"]), len(box["l_keys"])
        for i, row in enumerate(box["grid"]):
            for j, cell in enumerate(row):
                color = "#8fd18f" if cell["group"] else "#f0f0f0"
                ax.add_patch(
                    plt.Rectangle((j, rows - 1 - i), 1, 1, facecolor=color, edgecolor="k")
                )
                ax.text(
                    j + 0.5,
                    rows - 0.5 - i,
                    str(cell["size"]),
                    ha="center",
                    va="center",
                    fontsize=8,
                )
        ax.set_xlim(0, cols)
        ax.set_ylim(0, rows)
        ax.set_xticks([])
        ax.set_yticks([])
        ax.set_title(box["label"], fontsize=9)
        ax.set_aspect("equal")
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    return _save(fig, path)


def bipartite_figure(graph: BipartiteGraph, path: str, title: str = "") -> str:
    fig, ax = plt.subplots(figsize=(5, max(2.0, 0.4 * max(len(graph.left), len(graph.right)))))
    for i, j in sorted(graph.edges):
        ax.plot([0, 1], [-i, -j], color="#777777", lw=1, zorder=1)
    for i, lab in enumerate(graph.left):
        ax.scatter([0], [-i], marker="s", s=120, color="#4477aa", zorder=2)
        ax.text(-0.05, -i, str(lab), ha="right", va="center", fontsize=7)
    for j, lab in enumerate(graph.right):
        ax.scatter([1], [-j], marker="o", s=120, color="#aa4444", zorder=2)
        ax.text(1.05, -j, str(lab), ha="left", va="center", fontsize=7)
    ax.set_xlim(-0.7, 1.7)
    ax.axis("off")
    if title:
        ax.set_title(title, fontsize=9)
    fig.tight_layout()
    return _save(fig, path)


def partition_figure(partition: Partition, a_sets, b_sets, path: str, title: str = "") -> str:
    """Membership matrix: the part assignment row, then one row per set."""
    m = partition.m
    rows = 1 + len(a_sets) + len(b_sets)
    mat = np.full((rows, m), np.nan)
    mat[0] = [partition.assignment[x] for x in range(m)]
    labels = ["parts"]
    for k, s in enumerate(list(a_sets) + list(b_sets)):
        for x in s:
            mat[1 + k, x] = partition.assignment[x]
        labels.append(f"A{k + 1}" if k < len(a_sets) else f"B{k + 1 - len(a_sets)}")
    fig, ax = plt.subplots(figsize=(max(4, m * 0.25), 0.5 * rows + 1))
    ax.imshow(mat, aspect="auto", cmap="tab20", interpolation="nearest")
    ax.set_yticks(range(rows))
    ax.set_yticklabels(labels, fontsize=7)
    ax.set_xlabel("ground set (0-based)", fontsize=7)
    if title:
        ax.set_title(title, fontsize=9)
    fig.tight_layout()
    return _save(fig, path)


def chain_figure(report: dict, path: str) -> str:
    """Digits of stage size and ideal-chain length per depth (log10 scale)."""
    depths = [s["depth"] for s in report["stages"]]
    size_digits = [len(s["size"]) for s in report["stages"]]
    chain_digits = [len(s["ideal_chain_length"]) for s in report["stages"]]
    fig, ax = plt.subplots(figsize=(5, 3))
    ax.plot(depths, size_digits, "o-", label="stage size (digits)")
    ax.plot(depths, chain_digits, "s--", label="ideal-chain length (digits)")
    ax.set_xlabel("depth")
    ax.set_ylabel("decimal digits")
    ax.set_title(f"{report['kind']}-tower over n={report['n']}", fontsize=9)
    ax.legend(fontsize=7)
    fig.tight_layout()
    return _save(fig, path)
