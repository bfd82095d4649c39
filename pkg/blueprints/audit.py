"""Blueprint for the closed-form audit command."""

import click
from flask import Blueprint, current_app

from blueprints.common import handle_errors
from services.audit_service import build_audit
from services.export_service import format_number
from services.sweep_service import parse_truncation

audit_bp = Blueprint("audit", __name__, cli_group=None)


@audit_bp.cli.command("audit")
@click.option("--gamma", type=float, required=True)
@click.option("--truncation", default="auto", help="'auto' or a cutoff N.")
@handle_errors
def audit_command(gamma, truncation):
    """Compare printed closed forms with the numeric measures."""
    report = build_audit(
        gamma,
        truncation=parse_truncation(truncation),
        tail_tol=current_app.config["TAIL_TOL"],
        max_truncation=current_app.config["MAX_TRUNCATION"],
    )

    click.echo(f"gamma: {report.gamma:.12g}  truncation: {report.truncation}  "
               f"tail_bound: {report.tail_bound:.3e}")
    click.echo("=" * 60)
    for row in report.rows:
        click.echo(f"{row.quantity}")
        click.echo(f"  printed: {format_number(row.printed)}")
        click.echo(f"  numeric: {format_number(row.numeric)}")
        click.echo(f"  abs_diff: {format_number(row.abs_diff)}")
        if row.note:
            click.echo(f"  note: {row.note}")
