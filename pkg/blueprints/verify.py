"""Blueprint for the channel commands: verification and γ from a mode frequency."""

import click
from flask import Blueprint, current_app

from blueprints.common import EXIT_TOLERANCE, float_or_default, handle_errors
from services.channel_service import gamma_from_frequency, horizon_radius
from services.sweep_service import parse_truncation
from services.verification_service import verify_channel

verify_bp = Blueprint("verify", __name__, cli_group=None)


@verify_bp.cli.command("verify")
@click.option("--gamma", type=float, required=True)
@click.option("--truncation", default="auto", help="'auto' or a cutoff N.")
@click.option("--tail-tol", type=float)
@handle_errors
def verify_command(gamma, truncation, tail_tol):
    """Check completeness, positivity and route equivalence at one gamma."""
    report = verify_channel(
        gamma,
        truncation=parse_truncation(truncation),
        tail_tol=float_or_default(tail_tol, "TAIL_TOL"),
        max_truncation=current_app.config["MAX_TRUNCATION"],
    )

    click.echo(f"gamma: {report.gamma:.12g}")
    click.echo(f"truncation: {report.truncation}")
    click.echo(f"gain: {report.gain:.12g}")
    click.echo(f"tail_bound: {report.tail_bound:.3e}")
    click.echo(f"completeness_defect: {report.completeness_defect:.3e}")
    click.echo(f"full_defect: {report.full_defect:.3e}")
    click.echo(f"choi_min_eigenvalue: {report.choi_min_eigenvalue:.3e}")
    for kind, residuals in report.route_residuals.items():
        for name, value in residuals.items():
            click.echo(f"route {kind} {name}: {value:.3e}")
    for kind, value in report.purity_defects.items():
        click.echo(f"purity_defect {kind}: {value:.3e}")

    for message in report.warnings:
        current_app.logger.warning(message)
        click.echo(f"warning: {message}")
    click.echo(f"warnings: {len(report.warnings)}")

    if not report.passed:
        for message in report.violations:
            click.echo(f"violation: {message}")
        click.get_current_context().exit(EXIT_TOLERANCE)
    click.echo("status: ok")


@verify_bp.cli.command("gamma")
@click.option("--omega", type=float, required=True, help="Mode frequency.")
@click.option("--lambda", "lambda_", type=float, required=True, help="Cosmological constant.")
@handle_errors
def gamma_command(omega, lambda_):
    """Print the expansion rate of a mode and the horizon radius."""
    click.echo(f"a: {horizon_radius(lambda_):.12g}")
    click.echo(f"gamma: {gamma_from_frequency(omega, lambda_):.12g}")
