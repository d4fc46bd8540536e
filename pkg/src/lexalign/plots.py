"""Matplotlib renderings of run artifacts, written next to the data files."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .evaluation import EvalReport  # noqa: E402
from .projection import ProjectionRow  # noqa: E402


def plot_projection(rows: list[ProjectionRow], path: str | Path) -> None:
    """Scatter the 2-D pair projection, one color per language.

    Rows come ordered source-half then target-half, so matching offsets are
    joined by faint segments to show pair alignment.
    """
    langs = list(dict.fromkeys(r[1] for r in rows))
    fig, ax = plt.subplots(figsize=(7, 6))
    half = len(rows) // 2
    if len(rows) % 2 == 0 and len(langs) == 2:
        for k in range(half):
            ax.plot(
                [rows[k][2], rows[half + k][2]],
                [rows[k][3], rows[half + k][3]],
                color="0.8", linewidth=0.6, zorder=1,
            )
    for lang, marker in zip(langs, ("o", "x", "s", "^")):
        pts = [(r[2], r[3]) for r in rows if r[1] == lang]
        ax.scatter(*zip(*pts), s=18, marker=marker, label=lang, zorder=2)
    ax.set_xlabel("pc1")
    ax.set_ylabel("pc2")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_loss_curves(
    points: list[tuple[int, float, float, float]], path: str | Path
) -> None:
    """Discriminator/generator losses plus the orthogonality error."""
    steps = [p[0] for p in points]
    fig, ax = plt.subplots(figsize=(8, 5))
    ax.plot(steps, [p[1] for p in points], label="discriminator loss")
    ax.plot(steps, [p[2] for p in points], label="generator loss")
    ax.set_xlabel("step")
    ax.set_ylabel("loss")
    ax2 = ax.twinx()
    ax2.plot(steps, [p[3] for p in points], color="0.5", linewidth=0.8,
             label="orthogonality error")
    ax2.set_ylabel("orthogonality error")
    lines, labels = ax.get_legend_handles_labels()
    lines2, labels2 = ax2.get_legend_handles_labels()
    ax.legend(lines + lines2, labels + labels2, loc="upper right")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_precision(reports: list[EvalReport], path: str | Path) -> None:
    """Grouped bars of P@N per method, one panel per direction."""
    directions = list(dict.fromkeys(r.direction for r in reports))
    methods = list(dict.fromkeys(r.method_tag for r in reports))
    ns = sorted({n for r in reports for n in r.p_at})
    fig, axes = plt.subplots(
        1, len(directions), figsize=(5 * len(directions), 4), squeeze=False
    )
    width = 0.8 / max(1, len(methods))
    for col, direction in enumerate(directions):
        ax = axes[0][col]
        for mi, method in enumerate(methods):
            report = next(
                (r for r in reports
                 if r.method_tag == method and r.direction == direction),
                None,
            )
            if report is None:
                continue
            xs = [i + mi * width for i in range(len(ns))]
            ax.bar(xs, [report.p_at[n] for n in ns], width=width, label=method)
        ax.set_xticks([i + width * (len(methods) - 1) / 2 for i in range(len(ns))])
        ax.set_xticklabels([f"P@{n}" for n in ns])
        ax.set_ylim(0, 100)
        ax.set_title(direction)
        if col == 0:
            ax.set_ylabel("accuracy (%)")
    axes[0][0].legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
