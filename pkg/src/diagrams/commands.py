"""Commands working on single diagrams and input files: validate,
export-dot and subdiagrams"""
from command_helper import (
    describe_violations, emit, finish, json_option, limit_option, run_config, table
)
from errors import InputError
from models import ValidationReport
from grammars import helper as grammar_helper
from senses import helper as sense_helper
from sites import workspace as site_workspace
from . import dot
from . import helper
import click


@click.command('validate')
@click.option('--grammar', 'grammar_path', type=str, help='A grammar file.')
@click.option('--diagram', 'diagram_path', type=str,
              help='A diagram file, validated against the grammar.')
@click.option('--workspace', 'workspace_path', type=str, help='A workspace to load.')
@click.option('--presheaf', 'presheaf_path', type=str,
              help='A presheaf file, validated against the workspace.')
@click.option('--subpresheaf', 'subpresheaf_path', type=str,
              help='A subpresheaf file, validated against the presheaf.')
@json_option
def validate(grammar_path, diagram_path, workspace_path, presheaf_path, subpresheaf_path,
             json_output):
    """Validate input files, listing every violated invariant.

    A grammar is validated on its own, a diagram against a grammar, a
    presheaf against a workspace and a subpresheaf against a presheaf.
    """
    config = run_config(json_output=json_output)
    if presheaf_path or subpresheaf_path:
        if not workspace_path or not presheaf_path:
            raise InputError('validating a presheaf needs --workspace and --presheaf')
        w = site_workspace.load_workspace(workspace_path)
        F = sense_helper.load_presheaf(presheaf_path)
        report = sense_helper.validate_presheaf(F, w)
        if report.ok and subpresheaf_path:
            S = sense_helper.load_subpresheaf(subpresheaf_path)
            report = sense_helper.validate_subpresheaf(F, S, w)
    elif workspace_path:
        site_workspace.load_workspace(workspace_path)
        report = ValidationReport(ok=True)
    elif grammar_path:
        grammar = grammar_helper.load_grammar(grammar_path, check=False)
        report = grammar_helper.validate_grammar(grammar)
        if report.ok and diagram_path:
            diagram = helper.load_diagram(diagram_path)
            report = helper.validate_diagram(
                diagram, grammar.alphabet_model, grammar.sort_set, grammar.shape_condition)
    else:
        raise InputError('nothing to validate; pass --grammar, --workspace or --presheaf')

    emit(config, report, lambda: describe_violations(report))
    finish(report.ok)


@click.command('export-dot')
@click.option('--diagram', 'diagram_path', required=True, type=str, help='A diagram file.')
@click.option('--grammar', 'grammar_path', type=str,
              help='A grammar; with it the chosen cover is drawn as clusters.')
@click.option('--cover', 'cover_index', type=int, default=0, show_default=True,
              help='Which cover to draw.')
@click.option('--output', type=click.Path(dir_okay=False, writable=True),
              help='Write here instead of standard output.')
def export_dot(diagram_path, grammar_path, cover_index, output):
    """Render a diagram, or one of its syntax covers, in the DOT language."""
    diagram = helper.load_diagram(diagram_path)
    if grammar_path:
        grammar = grammar_helper.load_grammar(grammar_path)
        grammar_helper.check_diagram(diagram, grammar, diagram_path)
        covers = grammar_helper.find_covers(diagram, grammar, limit=cover_index + 1)
        if cover_index < 0 or cover_index >= len(covers):
            raise InputError(
                f'diagram {diagram.name} has no cover {cover_index}', path=diagram_path)
        text = dot.cover_to_dot(diagram, covers[cover_index].entries)
    else:
        text = dot.diagram_to_dot(diagram)

    if output:
        with open(output, 'w', encoding='utf-8') as f:
            f.write(text)
    else:
        click.echo(text, nl=False)


@click.command('subdiagrams')
@click.option('--diagram', 'diagram_path', required=True, type=str, help='A diagram file.')
@limit_option
@json_option
def subdiagrams(diagram_path, limit, json_output):
    """List the nonempty connected subdiagrams of a diagram."""
    config = run_config(json_output=json_output, limit=limit)
    diagram = helper.load_diagram(diagram_path)
    found = helper.enumerate_subdiagrams(diagram, config.limit)
    data = [
        {
            'nodes': [v for v, _ in inclusion.nodes],
            'edges': [e for e, _ in inclusion.edges],
            'diagram': sub.canonical()
        }
        for sub, inclusion in found
    ]
    emit(config, data, lambda: '\n'.join(
        [table(['nodes', 'edges', 'labels'], [
            [
                ','.join(item['nodes']),
                ','.join(item['edges']) or '-',
                ''.join(n['label'] for n in item['diagram']['nodes'])
            ]
            for item in data
        ]), f'{len(data)} subdiagram(s)']
    ))
    finish(True)
