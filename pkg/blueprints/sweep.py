"""Blueprint for the sweep command."""

import click
from flask import Blueprint, current_app

from blueprints.common import handle_errors, merge_options
from services.export_service import emit
from services.sweep_service import build_sweep_config, run_sweep

sweep_bp = Blueprint("sweep", __name__, cli_group=None)

MEASURE_CHOICES = ["fidelity", "mi-ab", "mi-abc", "negativity", "all"]


@sweep_bp.cli.command("sweep")
@click.option("--state", type=click.Choice(["ghz", "w"], case_sensitive=False))
@click.option(
    "--measure", "measures", multiple=True, type=click.Choice(MEASURE_CHOICES),
    help="Repeatable; defaults to all measures.",
)
@click.option("--gamma", help="Grid as MIN:MAX:STEP.")
@click.option("--truncation", help="'auto' or a cutoff N.")
@click.option("--tail-tol", type=float)
@click.option("--closed-form", type=click.Choice(["numeric", "printed", "paper", "both"]))
@click.option("--format", "output_format", type=click.Choice(["csv", "json"]))
@click.option("--out", "output_path", help="Output file; stdout when omitted.")
@click.option("--config", "config_path", help="key = value file of sweep options.")
@click.option("--workers", type=int)
@handle_errors
def sweep_command(
    state, measures, gamma, truncation, tail_tol, closed_form, output_format, output_path,
    config_path, workers,
):
    """Evaluate the measures over a grid of expansion rates."""
    options = merge_options(
        config_path,
        state=state,
        measure=measures,
        gamma=gamma,
        truncation=truncation,
        tail_tol=tail_tol,
        closed_form=closed_form,
        format=output_format,
        out=output_path,
        workers=workers,
    )
    cfg = build_sweep_config(options, current_app.config)
    records = run_sweep(
        cfg,
        max_truncation=current_app.config["MAX_TRUNCATION"],
        relaxed_tail_tol=current_app.config["RELAXED_TAIL_TOL"],
        relaxed_gamma=current_app.config["RELAXED_GAMMA"],
    )
    count = emit(records, cfg.format, cfg.output_path)
    current_app.logger.info("Wrote %d records", count)
