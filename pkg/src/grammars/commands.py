"""Commands on grammars: covers, recognize and alphabet"""
from command_helper import emit, finish, json_option, limit_option, run_config
from diagrams import helper as diagram_helper
from . import helper
import click


@click.command('covers')
@click.option('--diagram', 'diagram_path', required=True, type=str, help='A diagram file.')
@click.option('--grammar', 'grammar_path', required=True, type=str, help='A grammar file.')
@limit_option
@json_option
def covers(diagram_path, grammar_path, limit, json_output):
    """List the syntax covers of a diagram, in object id order."""
    config = run_config(json_output=json_output, limit=limit)
    grammar = helper.load_grammar(grammar_path)
    diagram = diagram_helper.load_diagram(diagram_path)
    helper.check_diagram(diagram, grammar, diagram_path)

    found = helper.find_covers(diagram, grammar, config.limit)
    count = helper.cover_count(diagram, grammar)
    uncoverable = helper.uncoverable_nodes(diagram, grammar)
    data = {
        'diagram': diagram.name,
        'correct': count > 0,
        'count': count,
        'covers': [
            {
                'object': f'{diagram.name}#{index}',
                'entries': [
                    {
                        'node': entry.node,
                        'neighbourhood': entry.neighbourhood_name,
                        'embedding': entry.embedding.canonical()
                    }
                    for entry in cover.entries
                ]
            }
            for index, cover in enumerate(found)
        ],
        'uncoverable': uncoverable
    }

    def text():
        lines = [
            f'{item["object"]}: '
            + ', '.join(f'{e["node"]}->{e["neighbourhood"]}' for e in item['entries'])
            for item in data['covers']
        ]
        if len(found) < count:
            lines.append(f'({count - len(found)} more not shown)')
        lines.append(f'covers={count}')
        if uncoverable:
            lines.append('uncoverable nodes: ' + ', '.join(uncoverable))
        return '\n'.join(lines)

    emit(config, data, text)
    finish(count > 0)


@click.command('recognize')
@click.option('--string', 's', required=True, type=str, help='The string to recognize.')
@click.option('--grammar', 'grammar_path', required=True, type=str,
              help='A grammar with the chain shape condition.')
@json_option
def recognize(s, grammar_path, json_output):
    """Decide whether a string, read as a chain diagram, is correct."""
    config = run_config(json_output=json_output)
    grammar = helper.load_grammar(grammar_path)
    result = helper.recognize_string(s, grammar)

    def text():
        if result.correct:
            return f'correct, covers={result.covers}'
        return (
            f'not correct, covers={result.covers}\n'
            f'uncoverable nodes: {", ".join(result.uncoverable)}'
        )

    emit(config, result, text)
    finish(result.correct)


@click.command('alphabet')
@click.option('--grammar', 'grammar_path', required=True, type=str, help='A grammar file.')
@json_option
def alphabet(grammar_path, json_output):
    """List every symbol with its neighbourhood family and occurrences."""
    config = run_config(json_output=json_output)
    grammar = helper.load_grammar(grammar_path)
    usage = helper.symbol_usage(grammar)

    def text():
        lines = [
            f'{item.symbol}: {", ".join(item.family) or "-"} (occurrences={item.occurrences})'
            for item in usage
        ]
        lines.append(f'{len(usage)} symbol(s)')
        return '\n'.join(lines)

    emit(config, {'grammar': grammar.name, 'symbols': [item.dict() for item in usage]}, text)
    finish(True)
