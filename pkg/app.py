import logging
import sys

import click
from flask import Flask

from blueprints.common import EXIT_OK, EXIT_USAGE
from config import Config


def create_app(test_config=None):
    """Create and configure the Flask application."""
    app = Flask(__name__)
    app.config.from_object(Config)
    if test_config:
        app.config.update(test_config)

    app.logger.setLevel(app.config["LOG_LEVEL"])

    # Register command blueprints
    from blueprints.audit import audit_bp
    from blueprints.sweep import sweep_bp
    from blueprints.threshold import threshold_bp
    from blueprints.verify import verify_bp

    app.register_blueprint(sweep_bp)
    app.register_blueprint(threshold_bp)
    app.register_blueprint(verify_bp)
    app.register_blueprint(audit_bp)

    return app


def main(argv=None):
    """Run a command and return its exit status.

    Usage errors exit 1, verification failures 2 and I/O failures 3.
    """
    logging.basicConfig(
        level=Config.LOG_LEVEL, format="%(levelname)s %(name)s: %(message)s"
    )
    app = create_app()
    with app.app_context():
        try:
            result = app.cli.main(args=argv, prog_name="horizon", standalone_mode=False)
        except click.UsageError as exc:
            exc.show()
            return EXIT_USAGE
        except click.ClickException as exc:
            exc.show()
            return exc.exit_code
        except click.exceptions.Abort:
            click.echo("Aborted!", err=True)
            return EXIT_USAGE
    return result if isinstance(result, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
