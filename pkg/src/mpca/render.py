"""Space-time diagrams of CA evolution: text, PGM, and matplotlib figures.

Time runs downward, one row per step, so each column is the sequence read
vertically at that cell.
"""

from __future__ import annotations

import io
from pathlib import Path

from .automata import CaState, RuleVector, evolve

ON, OFF = "#", "."


def evolution_rows(d: RuleVector, s0: CaState, steps: int) -> list[tuple[int, ...]]:
    if steps < 1:
        raise ValueError("steps must be >= 1")
    return [s.bits for s in evolve(d, s0, steps)]


def render_ascii(d: RuleVector, s0: CaState, steps: int) -> str:
    rows = evolution_rows(d, s0, steps)
    return "".join("".join(ON if b else OFF for b in row) + "\n" for row in rows)


def render_pgm(d: RuleVector, s0: CaState, steps: int) -> str:
    """Plain (P2) graymap with maxval 1; live cells are black (0)."""
    rows = evolution_rows(d, s0, steps)
    out = io.StringIO()
    out.write(f"P2\n{d.length} {steps}\n1\n")
    for row in rows:
        out.write(" ".join("0" if b else "1" for b in row) + "\n")
    return out.getvalue()


def render_figure(d: RuleVector, s0: CaState, steps: int, path: str | Path, title: str | None = None):
    """Draw 1s as diamonds on a cell-by-time grid and save to ``path``.

    The output format follows the file suffix (png, pdf, svg, ...).
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    rows = evolution_rows(d, s0, steps)
    xs = [k + 1 for row in rows for k, b in enumerate(row) if b]
    ys = [t for t, row in enumerate(rows) for b in row if b]

    width = max(3.0, 0.25 * d.length + 1.0)
    height = max(3.0, 0.18 * steps + 1.0)
    fig, ax = plt.subplots(figsize=(width, height))
    ax.scatter(xs, ys, marker="D", s=22, color="black", linewidths=0)
    ax.set_xlim(0.5, d.length + 0.5)
    ax.set_ylim(steps - 0.5, -0.5)
    ax.set_xticks(range(1, d.length + 1))
    ax.tick_params(axis="x", labelsize=6)
    ax.set_xlabel("cell")
    ax.set_ylabel("time")
    ax.set_title(title or f"CA {d.hex()} from {s0.hex()}", fontsize=9)
    fig.tight_layout()
    # fixed metadata keeps repeated renders byte-identical
    meta = {"Software": None} if str(path).lower().endswith(".png") else None
    fig.savefig(path, dpi=100, metadata=meta)
    plt.close(fig)
    return Path(path)
