import csv
import math
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from reachest.experiments import (
    ExperimentConfig,
    ExperimentReport,
    boxplot_stats,
    emit_report,
    run_ellipse_comparison,
    run_table1,
    svg_boxplot,
)

from oracles import quantile_type7


@pytest.fixture(scope="module")
def small_table1():
    config = ExperimentConfig(models=("annulus:r=0.5",), ns=(60, 80), replicates=3, master_seed=5)
    return run_table1(config)


@pytest.fixture(scope="module")
def small_ellipse():
    config = ExperimentConfig(
        models=("half-ellipse",),
        ns=(60,),
        replicates=2,
        estimators=("tangent-pca", "plain", "bias-corrected"),
        master_seed=7,
    )
    return run_ellipse_comparison(config)


def test_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig(models=(), ns=(10,))
    with pytest.raises(ValueError):
        ExperimentConfig(models=("circle",), ns=(10,), replicates=0)
    with pytest.raises(ValueError):
        ExperimentConfig(models=("circle",), ns=(10,), eps_rule="magic")


def test_run_table1_shape_and_determinism(small_table1):
    entries = {(e.model, e.n, e.estimator): e for e in small_table1.entries}
    assert set(entries) == {
        ("annulus:r=0.5", n, kind) for n in (60, 80) for kind in ("plain", "epsilon")
    }
    for e in entries.values():
        assert len(e.values) == 3
    again = run_table1(small_table1.config)
    for e1, e2 in zip(small_table1.entries, again.entries):
        assert e1.values == e2.values  # bit-reproducible replicate streams


def test_replicates_differ_within_series(small_table1):
    e = small_table1.entry("annulus:r=0.5", 60, "epsilon")
    assert len(set(e.values)) > 1


def test_series_statistics():
    from reachest.experiments import SeriesEntry

    e = SeriesEntry("m", 10, "plain", [1.0, 2.0, 4.0])
    assert e.mean() == pytest.approx(7.0 / 3.0)
    assert e.median() == 2.0
    assert e.sd() == pytest.approx(np.std([1, 2, 4], ddof=1))
    assert SeriesEntry("m", 10, "plain", [3.0]).sd() == 0.0


def test_run_ellipse_records_all_series(small_ellipse):
    kinds = {e.estimator for e in small_ellipse.entries}
    assert kinds == {"tangent-pca", "tangent-error", "plain", "bias-corrected"}
    for e in small_ellipse.entries:
        assert len(e.values) == 2
        assert all(v > 0 for v in e.values)
    err = small_ellipse.entry("half-ellipse", 60, "tangent-error")
    assert all(v <= 2.0 for v in err.values)  # operator norm of projections


def test_report_json_roundtrip(small_table1):
    again = ExperimentReport.from_json(small_table1.to_json())
    assert again.config == small_table1.config
    assert [e.values for e in again.entries] == [e.values for e in small_table1.entries]
    assert again.sd_definition == small_table1.sd_definition


def test_emit_report_files(small_table1, tmp_path):
    written = emit_report(small_table1, tmp_path)
    names = {p.name for p in written}
    assert {"replicates.csv", "summary.csv", "report.json"} <= names
    assert any(n.startswith("boxplot_annulus_r0.5_n60") for n in names)

    with open(tmp_path / "replicates.csv") as fh:
        rows = list(csv.DictReader(fh))
    got = [
        float(r["value"])
        for r in rows
        if (r["model"], r["n"], r["estimator"]) == ("annulus:r=0.5", "60", "plain")
    ]
    assert got == small_table1.entry("annulus:r=0.5", 60, "plain").values

    with open(tmp_path / "summary.csv") as fh:
        srows = {(r["model"], r["n"], r["estimator"]): r for r in csv.DictReader(fh)}
    e = small_table1.entry("annulus:r=0.5", 80, "plain")
    row = srows[("annulus:r=0.5", "80", "plain")]
    assert float(row["mean"]) == pytest.approx(e.mean())
    assert float(row["sd"]) == pytest.approx(e.sd())


def test_emit_report_infinite_values(tmp_path):
    report = ExperimentReport(config=ExperimentConfig(models=("circle",), ns=(5,)))
    report.entry("circle", 5, "plain").values.extend([1.0, math.inf])
    paths = emit_report(report, tmp_path, formats=("csv",))
    text = (tmp_path / "replicates.csv").read_text()
    assert "inf" in text
    assert len(paths) == 2


def test_boxplot_stats_against_quantile_oracle():
    rng = np.random.default_rng(41)
    values = rng.normal(size=200).tolist() + [9.0, -9.0]  # force fliers
    s = boxplot_stats(values)
    for key, q in (("q1", 0.25), ("median", 0.5), ("q3", 0.75)):
        assert s[key] == pytest.approx(quantile_type7(values, q), abs=1e-12)
    iqr = s["q3"] - s["q1"]
    inside = [v for v in values if s["q1"] - 1.5 * iqr <= v <= s["q3"] + 1.5 * iqr]
    assert s["lo"] == min(inside)
    assert s["hi"] == max(inside)
    assert 9.0 in s["fliers"] and -9.0 in s["fliers"]
    assert all(v < s["lo"] or v > s["hi"] for v in s["fliers"])


def test_boxplot_stats_skips_nonfinite():
    s = boxplot_stats([1.0, 2.0, 3.0, math.inf])
    assert s["hi"] == 3.0
    with pytest.raises(ValueError):
        boxplot_stats([math.inf])


def test_svg_boxplot_well_formed_and_deterministic(tmp_path):
    series = {"a": [1.0, 2.0, 3.0, 4.0], "b": [2.0, 2.5, 3.0, 8.0]}
    p1 = tmp_path / "one.svg"
    p2 = tmp_path / "two.svg"
    svg_boxplot(series, p1, title="demo")
    svg_boxplot(series, p2, title="demo")
    assert p1.read_bytes() == p2.read_bytes()
    root = ET.fromstring(p1.read_text())
    assert root.tag.endswith("svg")
    texts = [el.text for el in root.iter() if el.tag.endswith("text")]
    assert "demo" in texts and "a" in texts and "b" in texts
    circles = [el for el in root.iter() if el.tag.endswith("circle")]
    assert len(circles) == 1  # the 8.0 flier


def test_model_tag_stability():
    from reachest.experiments import _model_tag

    assert _model_tag("annulus:r=0.5") == _model_tag("annulus:r=0.5")
    assert _model_tag("annulus:r=0.5") != _model_tag("annulus:r=0.25")
