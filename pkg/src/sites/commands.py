"""Commands over workspaces: objects, hom, sieves, check-base and
check-topology"""
from command_helper import (
    describe_check_report, emit, finish, json_option, lax_option, literal_option,
    max_arrows_option, run_config, samples_option, seed_option, table, workspace_option
)
from . import helper
from . import verify
from . import workspace as site_workspace
import click


def open_workspace(path, config):
    return site_workspace.load_workspace(
        path, literal_paper=config.literal_paper, lax_cover_compat=config.lax_cover_compat)


def morphism_data(f) -> dict:
    return {
        'id': f.id,
        'source': f.source.id,
        'target': f.target.id,
        'embedding': f.embedding.canonical()
    }


@click.command('objects')
@workspace_option
@json_option
def objects(workspace_path, json_output):
    """List the objects of a workspace."""
    config = run_config(json_output=json_output)
    w = open_workspace(workspace_path, config)
    data = [
        {
            'id': d.id,
            'kind': d.kind,
            'nodes': len(d.diagram.nodes),
            'edges': len(d.diagram.edges),
            'cover': d.correct.cover.summary() if d.is_correct else None,
            'arrows_in': len(w.into(d))
        }
        for d in w.objects
    ]
    emit(config, data, lambda: table(
        ['object', 'kind', 'nodes', 'edges', 'arrows in', 'cover'],
        [
            [item['id'], item['kind'], item['nodes'], item['edges'], item['arrows_in'],
             item['cover'] or '-']
            for item in data
        ]
    ))
    finish(True)


@click.command('hom')
@workspace_option
@click.option('--source', 'source_id', type=str, help='The domain object id.')
@click.option('--target', 'target_id', required=True, type=str, help='The codomain object id.')
@literal_option
@lax_option
@json_option
def hom(workspace_path, source_id, target_id, literal_paper, lax_cover_compat, json_output):
    """List the arrows from source to target, or every arrow into target
    when no source is given."""
    config = run_config(
        json_output=json_output, literal_paper=literal_paper, lax_cover_compat=lax_cover_compat)
    w = open_workspace(workspace_path, config)
    target = w.object(target_id)
    if source_id is None:
        arrows = helper.all_morphisms_into(target, w)
    else:
        arrows = w.hom(w.object(source_id), target)
    data = [morphism_data(f) for f in arrows]
    emit(config, data, lambda: '\n'.join(
        [f'{item["id"]}  {item["embedding"]}' for item in data] + [f'{len(data)} arrow(s)']
    ))
    finish(True)


@click.command('sieves')
@workspace_option
@click.option('--object', 'object_id', required=True, type=str, help='The object id.')
@click.option('--closed', 'closed_only', is_flag=True, default=False,
              help='Only list the closed sieves.')
@max_arrows_option
@literal_option
@lax_option
@json_option
def sieves(workspace_path, object_id, closed_only, max_arrows, literal_paper, lax_cover_compat,
           json_output):
    """List every sieve on an object, marking covering, closed and
    principal sieves."""
    config = run_config(
        json_output=json_output, max_arrows=max_arrows, literal_paper=literal_paper,
        lax_cover_compat=lax_cover_compat)
    w = open_workspace(workspace_path, config)
    d = w.object(object_id)
    found = helper.all_sieves(d, w, config.max_arrows)
    data = []
    for s in found:
        closed = helper.is_closed(s, w)
        if closed_only and not closed:
            continue
        data.append({
            'arrows': helper.sieve_arrow_ids(s, w),
            'covering': helper.in_topology(s, w),
            'closed': closed,
            'principal': helper.is_principal(s, w)
        })

    def text():
        lines = []
        for item in data:
            flags = [name for name in ('covering', 'closed', 'principal') if item[name]]
            lines.append(
                '{' + ', '.join(item['arrows']) + '}'
                + (f' [{", ".join(flags)}]' if flags else '')
            )
        lines.append(f'{len(data)} sieve(s) on {d.id}')
        return '\n'.join(lines)

    emit(config, {'object': d.id, 'sieves': data}, text)
    finish(True)


@click.command('check-base')
@workspace_option
@lax_option
@json_option
def check_base(workspace_path, lax_cover_compat, json_output):
    """Verify the base axioms exhaustively."""
    config = run_config(json_output=json_output, lax_cover_compat=lax_cover_compat)
    w = open_workspace(workspace_path, config)
    report = verify.verify_base_axioms(w)
    emit(config, report, lambda: describe_check_report(report))
    finish(report.ok)


@click.command('check-topology')
@workspace_option
@samples_option
@seed_option
@max_arrows_option
@literal_option
@lax_option
@json_option
def check_topology(workspace_path, samples, seed, max_arrows, literal_paper, lax_cover_compat,
                   json_output):
    """Verify the topology axioms, sampling sieves for transitivity."""
    config = run_config(
        json_output=json_output, samples=samples, seed=seed, max_arrows=max_arrows,
        literal_paper=literal_paper, lax_cover_compat=lax_cover_compat)
    w = open_workspace(workspace_path, config)
    report = verify.verify_topology_axioms(w, config.samples, config.seed, config.max_arrows)
    emit(config, report, lambda: describe_check_report(report))
    finish(report.ok)
