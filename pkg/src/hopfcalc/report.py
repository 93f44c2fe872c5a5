"""Tabular and graphical output for the partition-counting table."""

from __future__ import annotations

import csv
import io

TABLE_FIELDS = ("n", "bell", "stirling", "diagrams", "sum_mult")


def _cells(row: dict) -> list[str]:
    return [
        str(row["n"]),
        str(row["bell"]),
        " ".join(map(str, row["stirling"])),
        str(row.get("diagrams", "")),
        str(row.get("sum_mult", "")),
    ]


def table_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TABLE_FIELDS)
    for r in rows:
        w.writerow(_cells(r))
    return buf.getvalue().rstrip("\n")


def table_text(rows: list[dict]) -> str:
    cells = [list(TABLE_FIELDS)] + [_cells(r) for r in rows]
    widths = [max(len(c[i]) for c in cells) for i in range(len(TABLE_FIELDS))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(line, widths)).rstrip() for line in cells)


def plot_table(rows: list[dict], path: str) -> str:
    """Bell numbers, diagram classes and B(n)^2 on a log scale, saved to ``path``."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ns = [r["n"] for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.semilogy(ns, [r["bell"] for r in rows], "o-", label="B(n) set partitions")
    with_diagrams = [r for r in rows if "diagrams" in r]
    if with_diagrams:
        ax.semilogy([r["n"] for r in with_diagrams], [r["diagrams"] for r in with_diagrams],
                    "s-", label="diagram classes")
        ax.semilogy([r["n"] for r in with_diagrams], [r["sum_mult"] for r in with_diagrams],
                    "^--", label="sum of mult = B(n)^2")
    ax.set_xlabel("n")
    ax.set_ylabel("count")
    ax.set_xticks(ns)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    # fixed metadata keeps repeated runs byte-identical
    fig.savefig(path, metadata={"Software": None} if str(path).endswith(".png") else None)
    plt.close(fig)
    return path
