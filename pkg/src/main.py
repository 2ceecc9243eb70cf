"""The command line entry point. Run from the src directory:

```
python main.py recognize --string aba --grammar ../fixtures/grammars/g_alt.json
```
"""
from command_helper import EXIT_INPUT_ERROR
from errors import SyntopError
from log_helper import setup_logging
import click
import diagrams.commands
import grammars.commands
import logging
import senses.commands
import sites.commands
import traceback

logger = logging.getLogger('syntop')


class SyntopGroup(click.Group):
    """Maps every SyntopError escaping a command onto exit code 2 with a one
    line diagnostic on stderr"""
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except SyntopError as exc:
            logger.error('%s failed: %s', ctx.invoked_subcommand, exc)
            logger.debug(''.join(traceback.format_exception(None, exc, exc.__traceback__)))
            click.echo(f'error: {exc}', err=True)
            raise click.exceptions.Exit(EXIT_INPUT_ERROR)


@click.group(cls=SyntopGroup)
@click.option('--verbose', is_flag=True, default=False, help='Log at DEBUG to stderr.')
@click.pass_context
def cli(ctx, verbose):
    """Neighbourhood grammars over syntax diagrams, their sites and sheaves of
    senses.

    Exit codes: 0 when the checked property holds, 1 when it fails, 2 on
    input errors.
    """
    setup_logging(verbose)
    ctx.obj = {'verbose': verbose}


cli.add_command(diagrams.commands.validate)
cli.add_command(diagrams.commands.export_dot)
cli.add_command(diagrams.commands.subdiagrams)
cli.add_command(grammars.commands.covers)
cli.add_command(grammars.commands.recognize)
cli.add_command(grammars.commands.alphabet)
cli.add_command(sites.commands.objects)
cli.add_command(sites.commands.hom)
cli.add_command(sites.commands.sieves)
cli.add_command(sites.commands.check_base)
cli.add_command(sites.commands.check_topology)
cli.add_command(senses.commands.sheaf_check)
cli.add_command(senses.commands.classify)
cli.add_command(senses.commands.presheaf_skeleton)


if __name__ == '__main__':
    cli()
