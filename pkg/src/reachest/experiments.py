"""Replicated simulation experiments and report emission.

Replicate RNG streams derive from (master seed, model tag, n, replicate),
so every run is bit-reproducible and reports are byte-identical for a
given configuration.
"""

from __future__ import annotations

import csv
import json
import math
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .bias import bias_corrected_reach
from .estimator import epsilon_nn, estimate_reach
from .models import ManifoldModel, analytic_frames, parse_model
from .tangent import default_neighbor_count, local_pca_frames, tangent_error, tangent_reach

SD_DEFINITION = "sample standard deviation (ddof=1)"


@dataclass(frozen=True)
class ExperimentConfig:
    models: tuple[str, ...]
    ns: tuple[int, ...]
    replicates: int = 100
    estimators: tuple[str, ...] = ("plain",)
    eps_rule: str = "nn"
    eps_c: float = 1.0
    master_seed: int = 0
    split_fraction: float = 0.5
    delta_c: float = 1.0

    def __post_init__(self):
        if self.replicates < 1:
            raise ValueError("replicate count must be >= 1")
        if self.eps_rule not in ("nn",):
            raise ValueError(f"unknown epsilon rule {self.eps_rule!r}")
        if not self.models or not self.ns:
            raise ValueError("models and sample sizes must be nonempty")


@dataclass
class SeriesEntry:
    model: str
    n: int
    estimator: str
    values: list[float] = field(default_factory=list)

    def mean(self) -> float:
        return float(np.mean(self.values))

    def median(self) -> float:
        return float(np.median(self.values))

    def sd(self) -> float:
        return float(np.std(self.values, ddof=1)) if len(self.values) > 1 else 0.0


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    entries: list[SeriesEntry] = field(default_factory=list)
    wall_clock: float = 0.0
    warnings_count: int = 0
    sd_definition: str = SD_DEFINITION

    def entry(self, model: str, n: int, estimator: str) -> SeriesEntry:
        for e in self.entries:
            if (e.model, e.n, e.estimator) == (model, n, estimator):
                return e
        e = SeriesEntry(model, n, estimator)
        self.entries.append(e)
        return e

    def summary_rows(self) -> list[tuple]:
        return [
            (e.model, e.n, e.estimator, e.mean(), e.median(), e.sd()) for e in self.entries
        ]

    def to_json(self) -> str:
        payload = {
            "config": asdict(self.config),
            "entries": [asdict(e) for e in self.entries],
            "wall_clock": self.wall_clock,
            "warnings_count": self.warnings_count,
            "sd_definition": self.sd_definition,
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentReport":
        payload = json.loads(text)
        cfg = payload["config"]
        for key in ("models", "ns", "estimators"):
            cfg[key] = tuple(cfg[key])
        report = cls(
            config=ExperimentConfig(**cfg),
            wall_clock=payload["wall_clock"],
            warnings_count=payload["warnings_count"],
            sd_definition=payload["sd_definition"],
        )
        for e in payload["entries"]:
            report.entries.append(SeriesEntry(**e))
        return report


def _model_tag(model_id: str) -> int:
    # stable small integer for RNG stream separation
    return sum(ord(c) * (i + 1) for i, c in enumerate(model_id)) % 1_000_003


def run_table1(config: ExperimentConfig) -> ExperimentReport:
    """Plain estimator on ring models over a grid of sample sizes."""
    t0 = time.perf_counter()
    report = ExperimentReport(config=config)
    for model_id in config.models:
        model = parse_model(model_id)
        tag = _model_tag(model_id)
        for n in config.ns:
            values = report.entry(model_id, n, "plain")
            eps_series = report.entry(model_id, n, "epsilon")
            for rep in range(config.replicates):
                cloud = model.sample(n, [config.master_seed, tag, n, rep])
                eps = config.eps_c * epsilon_nn(cloud)
                result = estimate_reach(cloud, eps)
                values.values.append(result.value)
                eps_series.values.append(eps)
                report.warnings_count += len(result.warnings)
    report.wall_clock = time.perf_counter() - t0
    return report


def run_ellipse_comparison(config: ExperimentConfig) -> ExperimentReport:
    """Tangent-PCA, plain and bias-corrected estimators on the half-ellipse,
    plus the tangent projection error against the analytic tangents."""
    t0 = time.perf_counter()
    report = ExperimentReport(config=config)
    for model_id in config.models:
        model = parse_model(model_id)
        if model.tangent_at is None or model.intrinsic_dim is None:
            raise ValueError(f"model {model_id} lacks tangent oracle required here")
        tag = _model_tag(model_id)
        for n in config.ns:
            for rep in range(config.replicates):
                seed = [config.master_seed, tag, n, rep]
                cloud = model.sample(n, seed)
                d_prime = model.intrinsic_dim
                frames = local_pca_frames(cloud, d_prime, default_neighbor_count(n, d_prime))
                delta = config.delta_c * math.log(n) / n
                report.entry(model_id, n, "tangent-pca").values.append(
                    tangent_reach(cloud, frames, delta)
                )
                report.entry(model_id, n, "tangent-error").values.append(
                    tangent_error(analytic_frames(cloud, model), frames)
                )
                plain = estimate_reach(cloud, config.eps_c * epsilon_nn(cloud))
                report.entry(model_id, n, "plain").values.append(plain.value)
                report.warnings_count += len(plain.warnings)
                corrected = bias_corrected_reach(
                    cloud,
                    fraction=config.split_fraction,
                    seed=seed + [1],
                )
                report.entry(model_id, n, "bias-corrected").values.append(corrected.value)
                report.warnings_count += len(corrected.warnings)
    report.wall_clock = time.perf_counter() - t0
    return report


def _fmt(x: float) -> str:
    return "inf" if math.isinf(x) else repr(float(x))


def emit_report(report: ExperimentReport, out_dir, formats=("csv", "json", "svg")) -> list[Path]:
    """Writes raw/summary CSV, a JSON dump and per-(model, n) SVG boxplots."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    if "csv" in formats:
        raw = out_dir / "replicates.csv"
        with open(raw, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["model", "n", "estimator", "replicate", "value"])
            for e in report.entries:
                for rep, value in enumerate(e.values):
                    writer.writerow([e.model, e.n, e.estimator, rep, _fmt(value)])
        summary = out_dir / "summary.csv"
        with open(summary, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["model", "n", "estimator", "mean", "median", "sd"])
            for model, n, estimator, mean, median, sd in report.summary_rows():
                writer.writerow([model, n, estimator, _fmt(mean), _fmt(median), _fmt(sd)])
        written += [raw, summary]
    if "json" in formats:
        path = out_dir / "report.json"
        path.write_text(report.to_json())
        written.append(path)
    if "svg" in formats:
        groups: dict[tuple[str, int], dict[str, list[float]]] = {}
        for e in report.entries:
            if e.estimator in ("epsilon", "tangent-error"):
                continue
            groups.setdefault((e.model, e.n), {})[e.estimator] = e.values
        for (model, n), series in groups.items():
            safe = model.replace(":", "_").replace("=", "")
            path = out_dir / f"boxplot_{safe}_n{n}.svg"
            svg_boxplot(series, path, title=f"{model}, n={n}")
            written.append(path)
    return written


def boxplot_stats(values) -> dict:
    """Tukey convention: quartiles by linear interpolation, whiskers at the
    most extreme data within 1.5 IQR of the box."""
    arr = np.asarray([v for v in values if math.isfinite(v)], dtype=float)
    if arr.size == 0:
        raise ValueError("no finite values to plot")
    q1, q2, q3 = (float(q) for q in np.quantile(arr, [0.25, 0.5, 0.75]))
    iqr = q3 - q1
    in_lo = arr[arr >= q1 - 1.5 * iqr]
    in_hi = arr[arr <= q3 + 1.5 * iqr]
    lo = float(in_lo.min())
    hi = float(in_hi.max())
    fliers = sorted(float(v) for v in arr[(arr < lo) | (arr > hi)])
    return {"q1": q1, "median": q2, "q3": q3, "lo": lo, "hi": hi, "fliers": fliers}


def svg_boxplot(series: dict[str, list], path, title: str = "", width=520, height=360) -> None:
    """Minimal deterministic SVG boxplot, one box per labelled series."""
    stats = {label: boxplot_stats(vals) for label, vals in series.items()}
    values = [v for s in stats.values() for v in (s["lo"], s["hi"], *s["fliers"])]
    vmin, vmax = min(values), max(values)
    if vmax == vmin:
        vmax = vmin + 1.0
    pad = 0.08 * (vmax - vmin)
    vmin, vmax = vmin - pad, vmax + pad
    top, bottom, left = 34.0, height - 30.0, 58.0

    def y(v: float) -> float:
        return bottom - (v - vmin) / (vmax - vmin) * (bottom - top)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="monospace" font-size="11">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="18" text-anchor="middle">{title}</text>',
    ]
    for tick in np.linspace(vmin + pad, vmax - pad, 5):
        ty = y(float(tick))
        parts.append(f'<line x1="{left:.1f}" y1="{ty:.2f}" x2="{width - 16}" y2="{ty:.2f}" stroke="#ddd"/>')
        parts.append(f'<text x="{left - 6:.1f}" y="{ty + 4:.2f}" text-anchor="end">{tick:.4g}</text>')
    slot = (width - 16 - left) / max(len(stats), 1)
    for k, (label, s) in enumerate(stats.items()):
        cx = left + (k + 0.5) * slot
        half = min(34.0, slot * 0.28)
        parts += [
            f'<line x1="{cx:.2f}" y1="{y(s["lo"]):.2f}" x2="{cx:.2f}" y2="{y(s["q1"]):.2f}" stroke="black"/>',
            f'<line x1="{cx:.2f}" y1="{y(s["q3"]):.2f}" x2="{cx:.2f}" y2="{y(s["hi"]):.2f}" stroke="black"/>',
            f'<line x1="{cx - half * 0.6:.2f}" y1="{y(s["lo"]):.2f}" x2="{cx + half * 0.6:.2f}" y2="{y(s["lo"]):.2f}" stroke="black"/>',
            f'<line x1="{cx - half * 0.6:.2f}" y1="{y(s["hi"]):.2f}" x2="{cx + half * 0.6:.2f}" y2="{y(s["hi"]):.2f}" stroke="black"/>',
            f'<rect x="{cx - half:.2f}" y="{y(s["q3"]):.2f}" width="{2 * half:.2f}" '
            f'height="{y(s["q1"]) - y(s["q3"]):.2f}" fill="#cfe2ff" stroke="black"/>',
            f'<line x1="{cx - half:.2f}" y1="{y(s["median"]):.2f}" x2="{cx + half:.2f}" y2="{y(s["median"]):.2f}" stroke="black" stroke-width="1.6"/>',
            f'<text x="{cx:.2f}" y="{bottom + 16:.1f}" text-anchor="middle">{label}</text>',
        ]
        for flier in s["fliers"]:
            parts.append(f'<circle cx="{cx:.2f}" cy="{y(flier):.2f}" r="2.2" fill="none" stroke="black"/>')
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts))
