"""Helpers shared by the CLI blueprints."""
import functools

import click
from flask import current_app

from config import read_config_file
from errors import ConfigError, HorizonError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_TOLERANCE = 2
EXIT_IO = 3


class CommandError(click.ClickException):
    exit_code = EXIT_USAGE


def handle_errors(command):
    """Turn domain errors into exit 1 and I/O errors into exit 3."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except HorizonError as exc:
            current_app.logger.debug("Command failed", exc_info=True)
            raise CommandError(str(exc))
        except OSError as exc:
            current_app.logger.error("I/O failure: %s", exc)
            click.echo(f"Error: {exc}", err=True)
            click.get_current_context().exit(EXIT_IO)

    return wrapper


def merge_options(config_path, **flags):
    """Config-file values overridden by the flags that were actually given."""
    options = {}
    if config_path:
        try:
            options.update(read_config_file(config_path))
        except OSError as exc:
            raise ConfigError(f"Cannot read config file {config_path}: {exc}")
    for key, value in flags.items():
        if value is not None and value != ():
            options[key] = value
    return options


def float_or_default(value, key):
    return current_app.config[key] if value is None else value
