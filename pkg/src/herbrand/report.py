"""Write verification sweeps to disk: a CSV of trials and a PNG figure per claim."""

from __future__ import annotations

import csv
import math
from collections import Counter
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .verify import VerificationReport  # noqa: E402

TITLES = {
    "oracle": "structural #H^1 vs enumeration",
    "prop2": "order-2 prediction of #H^1",
    "prop21": "Herbrand quotient vs orbit product",
    "remark": "index formula vs #H^1",
    "prop33": "fundamental unit norms",
    "thm32": "S-unit Herbrand quotient, two routes",
    "ex23": "#H^1 of the ring of integers",
}


def write_csv(report: VerificationReport, path: Path) -> Path:
    fields: list[str] = []
    for row in report.rows:
        fields += [k for k in row if k not in fields]
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(report.rows)
    return path


def _log2(values):
    return [math.log2(v) if v > 0 else float("nan") for v in values]


def _agreement_panel(ax, report: VerificationReport) -> None:
    exp = _log2([float(r["expected"]) for r in report.rows])
    obs = _log2([float(r["observed"]) for r in report.rows])
    ax.scatter(exp, obs, s=12, alpha=0.6, color="tab:blue", edgecolors="none")
    finite = [v for v in exp + obs if v == v]
    if finite:
        lo, hi = min(finite) - 0.5, max(finite) + 0.5
        ax.plot([lo, hi], [lo, hi], color="0.4", lw=0.8, ls="--")
    ax.set_xlabel("log2 expected")
    ax.set_ylabel("log2 observed")


def _histogram_panel(ax, report: VerificationReport) -> None:
    counts = Counter(str(r["observed"]) for r in report.rows)
    keys = sorted(counts, key=lambda k: float(k))
    ax.bar(range(len(keys)), [counts[k] for k in keys], color="tab:gray")
    ax.set_xticks(range(len(keys)))
    ax.set_xticklabels(keys, rotation=45, fontsize=8)
    ax.set_xlabel("observed value")
    ax.set_ylabel("trials")


def _prop33_panel(ax, report: VerificationReport) -> None:
    ds = [r["D"] for r in report.rows]
    minus = [r["unit_norm"] == -1 for r in report.rows]
    running, hits = [], 0
    for i, m in enumerate(minus, 1):
        hits += m
        running.append(hits / i)
    ax.plot(ds, running, color="tab:red", lw=1)
    ax.set_xlabel("D")
    ax.set_ylabel("fraction with N(eps) = -1")
    ax.set_ylim(0, 1)


def render_figure(report: VerificationReport, path: Path) -> Path:
    fig, (left, right) = plt.subplots(1, 2, figsize=(9, 3.6))
    _agreement_panel(left, report)
    if report.claim == "prop33":
        _prop33_panel(right, report)
    else:
        _histogram_panel(right, report)
    status = "pass" if report.ok else f"{len(report.failures)} failures"
    fig.suptitle(f"{report.claim.upper()}: {TITLES.get(report.claim, '')} "
                 f"({report.trials} trials, {status})", fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def write_report(report: VerificationReport, directory: str | Path) -> list[Path]:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    return [write_csv(report, out / f"{report.claim}.csv"),
            render_figure(report, out / f"{report.claim}.png")]
