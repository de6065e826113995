"""Figure rendering for report artifacts.

Report-producing CLI commands accept a --figures directory and drop PNG
renders next to the JSON output: triangulation drawings on a planar
projection of the point configuration, the secondary-fan adjacency graph,
and the chamber sign-vector table.  Figures are illustrative; nothing in
the exact pipeline depends on them.
"""

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def _planar_coords(cfg):
    """A 2-D projection of the columns inside their affine hyperplane."""
    pts = np.array([[float(x) for x in cfg.column(i)] for i in range(1, cfg.N + 1)])
    center = pts.mean(axis=0)
    shifted = pts - center
    _, _, vt = np.linalg.svd(shifted, full_matrices=False)
    return shifted @ vt[:2].T


def render_triangulation(cfg, tri, path, title=None):
    """Draw one triangulation: configuration points plus simplex edges."""
    xy = _planar_coords(cfg)
    fig, ax = plt.subplots(figsize=(4, 4))
    drawn = set()
    for simp in tri.maximal:
        for a in simp:
            for b in simp:
                if a < b and (a, b) not in drawn and tri.is_simplex((a, b)):
                    drawn.add((a, b))
                    ax.plot([xy[a - 1, 0], xy[b - 1, 0]],
                            [xy[a - 1, 1], xy[b - 1, 1]], "k-", lw=1.2)
    ax.plot(xy[:, 0], xy[:, 1], "o", color="tab:blue", ms=7, zorder=3)
    for i in range(cfg.N):
        ax.annotate(f"a{i + 1}", xy[i], textcoords="offset points",
                    xytext=(6, 5), fontsize=9)
    ax.set_aspect("equal")
    ax.set_axis_off()
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_adjacency(labels, edges, path):
    """Adjacency graph of the secondary fan on a circular layout."""
    k = len(labels)
    angles = [2 * math.pi * t / k for t in range(k)]
    xs = [math.cos(a) for a in angles]
    ys = [math.sin(a) for a in angles]
    fig, ax = plt.subplots(figsize=(5, 5))
    for i, j in edges:
        ax.plot([xs[i], xs[j]], [ys[i], ys[j]], "-", color="0.6", lw=1.0, zorder=1)
    ax.plot(xs, ys, "o", color="tab:orange", ms=16, zorder=2)
    for i, lab in enumerate(labels):
        ax.annotate(lab, (xs[i], ys[i]), ha="center", va="center",
                    fontsize=8, zorder=3)
    ax.set_aspect("equal")
    ax.set_axis_off()
    ax.set_title("secondary fan adjacency")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_sign_vectors(signs, path):
    """Sign-vector table as a +/- matrix image."""
    mat = np.array([list(s) for s in signs], dtype=float)
    fig, ax = plt.subplots(figsize=(4, max(3, 0.18 * len(signs))))
    ax.imshow(mat, cmap="RdBu", vmin=-1.4, vmax=1.4, aspect="auto")
    ax.set_xticks(range(mat.shape[1]), [f"s{j + 1}" for j in range(mat.shape[1])])
    ax.set_yticks(range(0, mat.shape[0], max(1, mat.shape[0] // 14)))
    ax.set_title(f"{len(signs)} chamber sign vectors")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
