"""Command-line interface.

Exit codes: 0 success, 1 configuration error, 2 estimation failure.
"""

from __future__ import annotations

import json
import math
import sys

import click

from .bias import WARN_UNCORRECTED, bias_corrected_reach
from .estimator import EpsilonTheoryParams, epsilon_nn, epsilon_theory, estimate_reach
from .experiments import ExperimentConfig, emit_report, run_ellipse_comparison, run_table1
from .graph import build_graph
from .io import load_cloud, save_cloud
from .models import parse_model

CONFIG_ERROR = 1
ESTIMATION_ERROR = 2


class EstimationFailure(click.ClickException):
    exit_code = ESTIMATION_ERROR


@click.group()
def cli():
    """Reach estimation from point samples via graph geodesics."""


@cli.command()
@click.option("--model", required=True, help='Model id, e.g. "annulus:r=0.25", "circle:R=1", "half-ellipse".')
@click.option("--n", type=int, required=True, help="Sample size.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True, help="Output file (.csv or .rkpc).")
def sample(model, n, seed, out):
    """Draw a seeded sample from a model and write it to a file."""
    cloud = parse_model(model).sample(n, seed)
    save_cloud(cloud, out)
    click.echo(f"wrote {n} points to {out}")


@cli.command()
@click.argument("cloud_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--eps-rule", type=click.Choice(["nn", "theory", "fixed"]), default="nn", show_default=True)
@click.option("--eps", type=float, default=None, help="Fixed epsilon (with --eps-rule fixed).")
@click.option("--eps-c", type=float, default=1.0, show_default=True, help="Multiplier for the chosen rule.")
@click.option("--theory-d", type=int, default=2, show_default=True, help="Dimension exponent for the theory rule.")
@click.option("--theory-eta", type=float, default=1.0, show_default=True)
@click.option("--bias-correct", is_flag=True, help="Apply the split-sample bias correction.")
@click.option("--split", type=float, default=0.5, show_default=True, help="Split fraction for --bias-correct.")
@click.option("--seed", type=int, default=0, show_default=True, help="Split seed for --bias-correct.")
@click.option("--dump-graph", type=click.Path(dir_okay=False), default=None, help="Debug edge-list CSV.")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="JSON output path (default stdout).")
def estimate(cloud_file, eps_rule, eps, eps_c, theory_d, theory_eta, bias_correct, split, seed, dump_graph, out):
    """Estimate the reach of a single point cloud loaded from a file."""
    cloud = load_cloud(cloud_file)
    if eps_rule == "fixed":
        if eps is None or eps <= 0:
            raise click.UsageError("--eps-rule fixed requires a positive --eps")
        epsilon = eps
    elif eps_rule == "theory":
        params = EpsilonTheoryParams(c=eps_c * (2.0 / theory_eta) ** (1.0 / theory_d) * 1.01, eta=theory_eta, d=theory_d)
        epsilon = epsilon_theory(len(cloud), params)
    else:
        epsilon = eps_c * epsilon_nn(cloud)
    if dump_graph:
        build_graph(cloud, epsilon).to_edge_csv(dump_graph)
    if bias_correct:
        result = bias_corrected_reach(cloud, fraction=split, seed=seed)
        if WARN_UNCORRECTED in result.warnings:
            raise EstimationFailure("bias correction undefined: first-half estimate is infinite")
        payload = result.to_dict()
    else:
        payload = estimate_reach(cloud, epsilon).to_dict()
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


@cli.command()
@click.option("--r", "radii", type=float, multiple=True, default=(0.25, 0.5), show_default=True)
@click.option("--n", "ns", type=int, multiple=True, default=(500, 750, 1000, 1250, 1500), show_default=True)
@click.option("--reps", type=int, default=100, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--eps-c", type=float, default=1.0, show_default=True)
@click.option("--out", type=click.Path(file_okay=False), required=True)
def table1(radii, ns, reps, seed, eps_c, out):
    """Replicated ring-model study: mean/median/sd of the plain estimator."""
    config = ExperimentConfig(
        models=tuple(f"annulus:r={r:g}" for r in radii),
        ns=tuple(ns),
        replicates=reps,
        eps_c=eps_c,
        master_seed=seed,
    )
    report = run_table1(config)
    written = emit_report(report, out)
    click.echo(f"wrote {', '.join(str(p) for p in written)} ({report.wall_clock:.1f}s)")


@cli.command()
@click.option("--n", "ns", type=int, multiple=True, default=(400, 600), show_default=True)
@click.option("--reps", type=int, default=100, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--split", type=float, default=0.5, show_default=True)
@click.option("--delta-c", type=float, default=1.0, show_default=True)
@click.option("--eps-c", type=float, default=1.0, show_default=True)
@click.option("--out", type=click.Path(file_okay=False), required=True)
def ellipse(ns, reps, seed, split, delta_c, eps_c, out):
    """Half-ellipse comparison of tangent-PCA, plain and bias-corrected estimators."""
    config = ExperimentConfig(
        models=("half-ellipse",),
        ns=tuple(ns),
        replicates=reps,
        estimators=("tangent-pca", "plain", "bias-corrected"),
        eps_c=eps_c,
        master_seed=seed,
        split_fraction=split,
        delta_c=delta_c,
    )
    report = run_ellipse_comparison(config)
    written = emit_report(report, out)
    click.echo(f"wrote {', '.join(str(p) for p in written)} ({report.wall_clock:.1f}s)")


def main(argv=None):
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.UsageError as exc:
        exc.show()
        sys.exit(CONFIG_ERROR)
    except EstimationFailure as exc:
        exc.show()
        sys.exit(ESTIMATION_ERROR)
    except click.ClickException as exc:
        exc.show()
        sys.exit(CONFIG_ERROR)
    except (ValueError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(CONFIG_ERROR)
    sys.exit(0)


if __name__ == "__main__":
    main()
