"""Report rendering: delimited output plus matplotlib figures.

The CLI's report path can emit, next to the JSON lines on stdout, a
``reports.csv`` and one PNG per report into an output directory, plus a
combined summary figure when there is more than one report.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .harness.reports import ExperimentReport, RATE_AT_LEAST, RATE_AT_MOST

_CSV_FIELDS = [
    "name", "trials", "successes", "rate", "ci_halfwidth", "z",
    "analytic_bound", "bound_direction", "verdict",
]


def write_reports_csv(reports: list[ExperimentReport], path: Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=_CSV_FIELDS)
        writer.writeheader()
        for r in reports:
            doc = {k: v for k, v in r.to_json().items() if k in _CSV_FIELDS}
            writer.writerow(doc)


def _slug(name: str) -> str:
    slug = "".join(c if c.isalnum() or c in "-_" else "-" for c in name)
    while "--" in slug:
        slug = slug.replace("--", "-")
    return slug.strip("-")


def render_report_figure(report: ExperimentReport, path: Path) -> None:
    """One report as a single bar with its interval and analytic bound."""
    fig, ax = plt.subplots(figsize=(4.2, 3.2))
    ax.bar([0], [report.rate], width=0.45, color="#4878a8",
           yerr=[report.ci_halfwidth], capsize=6, label="empirical")
    if report.analytic_bound is not None:
        style = {"color": "#b5442c", "linestyle": "--", "linewidth": 1.4}
        label = {
            RATE_AT_LEAST: "analytic lower bound",
            RATE_AT_MOST: "analytic upper bound",
        }.get(report.bound_direction, "bound")
        ax.axhline(report.analytic_bound, label=label, **style)
    ax.set_xticks([0])
    ax.set_xticklabels([report.name], fontsize=8)
    ax.set_ylabel("rate")
    ax.set_title(f"{report.trials} trials - {report.verdict}", fontsize=9)
    ax.legend(fontsize=7, loc="best")
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def render_summary_figure(reports: list[ExperimentReport], path: Path) -> None:
    """All reports side by side: rate with interval, bound ticks overlaid."""
    fig, ax = plt.subplots(figsize=(max(4.5, 1.1 * len(reports) + 2), 3.6))
    xs = range(len(reports))
    ax.bar(xs, [r.rate for r in reports], width=0.55, color="#4878a8",
           yerr=[r.ci_halfwidth for r in reports], capsize=4)
    for i, r in enumerate(reports):
        if r.analytic_bound is not None:
            ax.hlines(r.analytic_bound, i - 0.35, i + 0.35,
                      color="#b5442c", linestyle="--", linewidth=1.3)
    ax.set_xticks(list(xs))
    ax.set_xticklabels([r.name for r in reports], rotation=30,
                       ha="right", fontsize=7)
    ax.set_ylabel("rate")
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def emit_artifacts(reports: list[ExperimentReport], out_dir: str | Path) -> list[Path]:
    """Write the delimited table and the figures; returns created paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    created = []
    csv_path = out / "reports.csv"
    write_reports_csv(reports, csv_path)
    created.append(csv_path)
    for r in reports:
        png = out / f"{_slug(r.name)}.png"
        render_report_figure(r, png)
        created.append(png)
    if len(reports) > 1:
        summary = out / "summary.png"
        render_summary_figure(reports, summary)
        created.append(summary)
    return created
