"""Blueprint for the negativity threshold command."""

import click
from flask import Blueprint, current_app

from blueprints.common import float_or_default, handle_errors
from models import StateKind
from services.sweep_service import find_threshold

threshold_bp = Blueprint("threshold", __name__, cli_group=None)


@threshold_bp.cli.command("threshold")
@click.option("--state", type=click.Choice(["ghz", "w"], case_sensitive=False), default="w")
@click.option("--tol", type=float, help="Bisection width in gamma.")
@click.option("--tail-tol", type=float)
@handle_errors
def threshold_command(state, tol, tail_tol):
    """Find where the W state's negativity vanishes."""
    report = find_threshold(
        StateKind(state.lower()),
        tol=float_or_default(tol, "THRESHOLD_TOL"),
        bracket=tuple(current_app.config["THRESHOLD_BRACKET"]),
        tail_tol=float_or_default(tail_tol, "TAIL_TOL"),
        max_truncation=current_app.config["MAX_TRUNCATION"],
    )

    click.echo(f"gamma_star: {report.gamma_star:.9f}")
    click.echo(f"reported_value: {report.reported_value:.9f}")
    click.echo(f"sign_change_value: {report.sign_change_value:.9f}")
    for label, gap in report.gaps.items():
        click.echo(f"gap {label}: {gap:.9f}")
