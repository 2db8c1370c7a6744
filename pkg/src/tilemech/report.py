"""Figure rendering for boards and benchmark reports.

matplotlib is imported lazily with the Agg backend so the interpreter and
service never pay for it.
"""

from __future__ import annotations

from pathlib import Path

from .model import BoardState, COLOR_HEX, Grid


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=True)
    import matplotlib.pyplot as plt

    return plt


def _draw_grid(ax, grid: Grid, title: str) -> None:
    from matplotlib.colors import BoundaryNorm, ListedColormap

    cmap = ListedColormap([COLOR_HEX[i] for i in range(1, 10)])
    norm = BoundaryNorm([i + 0.5 for i in range(0, 10)], cmap.N)
    rows = [grid.tiles[y * grid.width : (y + 1) * grid.width] for y in range(grid.height)]
    ax.imshow(rows, cmap=cmap, norm=norm, interpolation="nearest")
    ax.set_title(title, fontsize=10)
    ax.set_xticks([x - 0.5 for x in range(grid.width + 1)], minor=True)
    ax.set_yticks([y - 0.5 for y in range(grid.height + 1)], minor=True)
    ax.grid(which="minor", color="white", linewidth=1.2)
    ax.tick_params(which="both", bottom=False, left=False, labelbottom=False, labelleft=False)


def render_board(board: BoardState, path: str | Path, title: str | None = None) -> Path:
    """Render playground and memory side by side to an image file."""
    plt = _pyplot()
    fig, (ax_play, ax_mem) = plt.subplots(
        1, 2, figsize=(7.5, 5.2), gridspec_kw={"width_ratios": (10, 3)}
    )
    _draw_grid(ax_play, board.playground, "playground")
    _draw_grid(ax_mem, board.memory, "memory")
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render_bench(batch_rates: list[float], path: str | Path, title: str = "clicks per second") -> Path:
    """Plot per-batch click throughput."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.plot(range(1, len(batch_rates) + 1), batch_rates, marker="o")
    ax.set_xlabel("batch")
    ax.set_ylabel("clicks/s")
    ax.set_ylim(bottom=0)
    ax.grid(True, alpha=0.4)
    ax.set_title(title)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
