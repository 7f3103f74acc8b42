"""Text and figure output for count results."""
from __future__ import annotations

from itertools import groupby
from pathlib import Path
from typing import Sequence

from .coloring import CountResult


def result_block(r: CountResult) -> str:
    """``key=value`` lines; colorings, when listed, one ``coloring=`` line each."""
    lines = [f"link={r.link}", f"structure={r.structure}", f"count={r.count}"]
    if r.colorings is not None:
        arcs = r.colorings[0].arcs if r.colorings else ()
        lines.append("arcs=" + ",".join(arcs))
        lines += ["coloring=" + ",".join(map(str, c.values)) for c in r.colorings]
    return "\n".join(lines) + "\n"


def sort_rows(rows: Sequence[tuple[str, int]]) -> list[tuple[str, int]]:
    return sorted(rows, key=lambda row: (row[1], row[0]))


def count_table(rows: Sequence[tuple[str, int]], structure: str) -> str:
    """Links sharing a count on one row, rows ordered by count."""
    grouped = [(count, [name for name, _ in grp])
               for count, grp in groupby(sort_rows(rows), key=lambda row: row[1])]
    left = [", ".join(names) for _, names in grouped]
    head = "L"
    width = max([len(head)] + [len(s) for s in left])
    col = f"#Col_X(L), X={structure}"
    rule = "-" * (width + 3 + len(col))
    out = [f"{head.ljust(width)} | {col}", rule]
    out += [f"{names.ljust(width)} | {count}" for names, (count, _) in zip(left, grouped)]
    return "\n".join(out) + "\n"


def count_chart(rows: Sequence[tuple[str, int]], structure: str, path: str | Path) -> Path:
    """Bar chart of counts per link, same order as the table."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    rows = sort_rows(rows)
    names = [name for name, _ in rows]
    counts = [count for _, count in rows]
    fig, ax = plt.subplots(figsize=(max(4.0, 0.6 * len(rows) + 1.5), 3.5))
    ax.bar(range(len(rows)), counts, color="#4c72b0")
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels(names, rotation=45, ha="right")
    ax.set_ylabel("colorings")
    ax.set_title(f"coloring counts by {structure}")
    for i, c in enumerate(counts):
        ax.annotate(str(c), (i, c), ha="center", va="bottom", fontsize=8)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, metadata={"Software": None} if path.suffix == ".png" else None)
    plt.close(fig)
    return path
