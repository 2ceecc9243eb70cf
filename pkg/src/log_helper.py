"""Configures logging for a command line run. Logs only ever go to stderr;
stdout is reserved for command output, which has to stay byte-identical
between runs."""
import logging
import os
import sys


DEFAULT_APPNAME = 'syntop'
"""The identifier used when the APPNAME environment variable is not set"""

LOG_FORMAT = '%(asctime)s {appname} %(levelname)s %(name)s: %(message)s'
"""The format for every record; {appname} is filled in at setup"""


def setup_logging(verbose: bool = False) -> None:
    """Installs a stderr handler on the root logger, replacing any handler a
    previous call installed. The level comes from LOG_LEVEL (default WARNING)
    unless verbose is set, in which case it is DEBUG.
    """
    appname = os.environ.get('APPNAME', DEFAULT_APPNAME)
    level_name = 'DEBUG' if verbose else os.environ.get('LOG_LEVEL', 'WARNING').upper()
    level = logging.getLevelName(level_name)
    if not isinstance(level, int):
        level = logging.WARNING

    root = logging.getLogger()
    for handler in list(root.handlers):
        if getattr(handler, '_syntop', False):
            root.removeHandler(handler)

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT.format(appname=appname)))
    handler._syntop = True
    root.addHandler(handler)
    root.setLevel(level)
