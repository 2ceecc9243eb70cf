"""Contains the options and output helpers shared by every command. Each
command gathers its flags into a RunConfig, prints either text or JSON, and
exits with one of the codes below.
"""
from errors import InputError
from models import RunConfig
from pydantic import BaseModel, ValidationError
from terminaltables import AsciiTable
import click
import json
import typing


EXIT_OK = 0
"""The checked property holds"""

EXIT_FAILED = 1
"""The checked property fails; the output carries the counterexample"""

EXIT_INPUT_ERROR = 2
"""An input could not be read, parsed or validated"""


json_option = click.option(
    '--json', 'json_output', is_flag=True, default=False,
    help='Print machine readable JSON instead of text.')

limit_option = click.option(
    '--limit', type=int, default=None, envvar='SYNTOP_LIMIT', show_default=True,
    help='Stop after this many covers or subdiagrams.')

seed_option = click.option(
    '--seed', type=int, default=0, envvar='SYNTOP_SEED', show_default=True,
    help='Seed for the sampled sieves.')

samples_option = click.option(
    '--samples', type=int, default=200, envvar='SYNTOP_SAMPLES', show_default=True,
    help='Sampled sieves per object for the transitivity axiom.')

literal_option = click.option(
    '--literal-paper', is_flag=True, default=False,
    help='Cover correct objects only by their maximal and cover sieves.')

lax_option = click.option(
    '--lax-cover-compat', is_flag=True, default=False,
    help='Only require matching neighbourhood names between covers.')

max_arrows_option = click.option(
    '--max-arrows', type=int, default=16, envvar='SYNTOP_MAX_ARROWS', show_default=True,
    help='Refuse to enumerate the sieves of an object with more incoming arrows.')

max_product_option = click.option(
    '--max-product', type=int, default=100000, envvar='SYNTOP_MAX_PRODUCT', show_default=True,
    help='Refuse to materialize larger products of sense sets.')

workspace_option = click.option(
    '--workspace', 'workspace_path', required=True, type=str,
    help='A workspace directory or manifest file.')


def run_config(**kwargs) -> RunConfig:
    """Builds the RunConfig of a command from its flags; the group's
    verbosity is filled in from the click context."""
    ctx = click.get_current_context(silent=True)
    if ctx is not None and ctx.obj is not None and 'verbose' not in kwargs:
        kwargs['verbose'] = ctx.obj.get('verbose', False)
    try:
        return RunConfig(**kwargs)
    except ValidationError as exc:
        first = exc.errors()[0]
        raise InputError(first['msg'], location='--' + str(first['loc'][0]).replace('_', '-'))


def to_jsonable(value):
    if isinstance(value, BaseModel):
        return json.loads(value.json())
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: to_jsonable(v) for k, v in value.items()}
    return value


def emit(config: RunConfig, data, text: typing.Union[str, typing.Callable[[], str]]) -> None:
    """Prints data as JSON under --json, text otherwise. text may be a
    callable so text-only formatting is skipped for JSON output."""
    if config.json_output:
        click.echo(json.dumps(to_jsonable(data), indent=2, ensure_ascii=False))
    else:
        click.echo(text() if callable(text) else text)


def table(headers: typing.List[str], rows: typing.List[typing.List[typing.Any]]) -> str:
    return AsciiTable([headers] + [[str(cell) for cell in row] for row in rows]).table


def finish(ok: bool) -> None:
    """Exits with EXIT_OK or EXIT_FAILED"""
    click.get_current_context().exit(EXIT_OK if ok else EXIT_FAILED)


def describe_violations(report) -> str:
    if report.ok:
        return 'ok'
    lines = [f'{len(report.violations)} violation(s)']
    for violation in report.violations:
        ref = f' [{violation.ref}]' if violation.ref else ''
        lines.append(f'  {violation.code}{ref}: {violation.message}')
    return '\n'.join(lines)


def describe_check_report(report) -> str:
    lines = []
    for check in report.checks:
        status = 'pass' if check.passed else 'FAIL'
        lines.append(f'{check.axiom}: {status} ({check.checked} checked)')
        for counterexample in check.counterexamples:
            lines.append(f'  at {counterexample.object}: {counterexample.description}')
    for note in report.notes:
        lines.append(f'note: {note}')
    lines.append('ok' if report.ok else 'failed')
    return '\n'.join(lines)
