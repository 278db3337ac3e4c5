"""Cost tables, figure data and text reports for the CLI.

The bench path writes the delimited tables as CSV and renders the
matching matplotlib figures to PNG files next to them.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path

from .fileio import atomic_write_text, resolve_path
from .hiding import RecoveryTrace
from .matrix import op_count_with_storage, optimal_storage

__all__ = [
    "storage_table_rows",
    "storage_curve_rows",
    "scaling_rows",
    "write_csv",
    "render_storage_curves",
    "render_scaling",
    "bench_files",
    "format_trace",
]

CURVE_KS = (53, 113, 159)


def storage_table_rows(ks) -> list[dict]:
    """Per-exponent costs for fixed storage 2 and 3 and for the optimum."""
    rows = []
    for k in ks:
        plan = optimal_storage(k)
        rows.append(
            {
                "k": k,
                "ops_s2": op_count_with_storage(k, 2) if k >= 3 else "",
                "ops_s3": op_count_with_storage(k, 3) if k >= 4 else "",
                "x_opt": plan.x_s,
                "ops_opt": plan.predicted_ops,
            }
        )
    return rows


def storage_curve_rows(ks=CURVE_KS, x_max: int = 40) -> list[dict]:
    rows = []
    for k in ks:
        for x in range(1, min(x_max, k - 1) + 1):
            rows.append({"k": k, "x_s": x, "ops": op_count_with_storage(k, x)})
    return rows


def scaling_rows(k_max: int = 200) -> list[dict]:
    return [
        {
            "k": k,
            "ops_no_storage": k - 1,
            "ops_optimal": optimal_storage(k).predicted_ops,
        }
        for k in range(2, k_max + 1)
    ]


def write_csv(path: str | Path, rows: list[dict]) -> Path:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
    writer.writeheader()
    writer.writerows(rows)
    return atomic_write_text(path, buf.getvalue())


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_storage_curves(path: str | Path, rows: list[dict]) -> Path:
    """Cost versus storage size, one curve per exponent."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ks = sorted({r["k"] for r in rows})
    for k in ks:
        xs = [r["x_s"] for r in rows if r["k"] == k]
        ys = [r["ops"] for r in rows if r["k"] == k]
        ax.plot(xs, ys, marker="o", markersize=3, label=f"k = {k}")
    ax.set_xlabel("stored powers $x_s$")
    ax.set_ylabel("matrix products")
    ax.set_title("Cost of $M^k$ against storage size")
    ax.legend()
    ax.grid(True, alpha=0.3)
    target = resolve_path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(target, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return target


def render_scaling(path: str | Path, rows: list[dict]) -> Path:
    """Optimal-storage cost against the plain k-1 chain."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ks = [r["k"] for r in rows]
    ax.plot(ks, [r["ops_no_storage"] for r in rows], "--", label="no storage (k-1)")
    ax.plot(ks, [r["ops_optimal"] for r in rows], "-", label="optimal storage")
    ax.set_xlabel("exponent k")
    ax.set_ylabel("matrix products")
    ax.set_title("Power cost with and without stored products")
    ax.legend()
    ax.grid(True, alpha=0.3)
    target = resolve_path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(target, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return target


def bench_files(out_dir: str | Path, ks, k_max: int = 200, plots: bool = True) -> list[Path]:
    """Write the bench CSVs and, unless disabled, the PNG figures."""
    out = Path(out_dir)
    written = []
    written.append(write_csv(out / "storage_table.csv", storage_table_rows(ks)))
    curves = storage_curve_rows()
    written.append(write_csv(out / "storage_curves.csv", curves))
    scaling = scaling_rows(k_max)
    written.append(write_csv(out / "storage_scaling.csv", scaling))
    if plots:
        written.append(render_storage_curves(out / "storage_curves.png", curves))
        written.append(render_scaling(out / "storage_scaling.png", scaling))
    return written


def format_trace(trace: RecoveryTrace) -> str:
    """Recovery walk as an aligned text table, one row per quotient step."""
    lines = [f"{'step':>4}  {'exponent':>10}  {'quotient':>8}  {'ops':>4}"]
    for i, step in enumerate(trace.steps, start=1):
        lines.append(
            f"{i:>4}  {step.exponent:>10}  {step.quotient:>8}  {step.ops:>4}"
        )
    lines.append(f"total operations: {trace.total_ops}")
    return "\n".join(lines)
