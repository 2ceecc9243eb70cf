"""Commands over presheaves of senses: sheaf-check, classify and
presheaf-skeleton"""
from command_helper import (
    describe_check_report, emit, finish, json_option, max_product_option, run_config,
    workspace_option
)
from errors import InputError
from sites import helper as site_helper
from sites.commands import open_workspace
from . import helper
from . import models
import click
import json

presheaf_option = click.option(
    '--presheaf', 'presheaf_ref', required=True, type=str,
    help='A presheaf file, or @terminal / @initial.')


def resolve_presheaf(ref: str, w) -> models.Presheaf:
    """Reads the presheaf named on the command line and checks it against the
    workspace"""
    if ref == helper.TERMINAL:
        return helper.terminal_presheaf(w)
    if ref == helper.INITIAL:
        return helper.initial_presheaf(w)
    F = helper.load_presheaf(ref)
    helper.check_presheaf(F, w, ref)
    return F


@click.command('sheaf-check')
@workspace_option
@presheaf_option
@click.option('--equalizer', is_flag=True, default=False,
              help='Also run the equalizer form on every cover sieve and compare.')
@max_product_option
@json_option
def sheaf_check(workspace_path, presheaf_ref, equalizer, max_product, json_output):
    """Check that every sense of a correct diagram is determined by the
    senses on its syntax cover."""
    config = run_config(json_output=json_output, max_product=max_product)
    w = open_workspace(workspace_path, config)
    F = resolve_presheaf(presheaf_ref, w)
    report = helper.sheaf_check_local(F, w)
    data = {'local': report}
    ok = report.ok

    equalizer_reports = []
    if equalizer:
        for d in w.objects:
            if d.is_correct:
                equalizer_reports.append(helper.sheaf_check_equalizer(
                    F, site_helper.cover_sieve(d, w), w, config.max_product))
        data['equalizer'] = equalizer_reports
        data['agree'] = [r.ok for r in equalizer_reports] == [r.ok for r in report.objects]
        ok = ok and data['agree']

    def text():
        lines = []
        for result in report.objects:
            status = 'sheaf' if result.ok else 'NOT a sheaf'
            lines.append(
                f'{result.object}: {status} '
                f'(senses={result.senses}, families={result.families})'
            )
            if result.witness:
                lines.append(f'  {result.witness}')
        for result in equalizer_reports:
            lines.append(
                f'{result.object}: equalizer {"pass" if result.ok else "FAIL"} '
                f'(product={result.product_size}, equalized={result.equalized})'
            )
        if equalizer:
            lines.append('local and equalizer verdicts ' + ('agree' if data['agree'] else 'DIFFER'))
        lines.append('sheaf' if report.ok else 'not a sheaf')
        return '\n'.join(lines)

    emit(config, data, text)
    finish(ok)


@click.command('classify')
@workspace_option
@presheaf_option
@click.option('--subpresheaf', 'subpresheaf_path', required=True, type=str,
              help='A subpresheaf file.')
@click.option('--object', 'object_id', type=str, help='Classify the senses of this object only.')
@click.option('--sense', type=str, help='Classify this sense only; needs --object.')
@json_option
def classify(workspace_path, presheaf_ref, subpresheaf_path, object_id, sense, json_output):
    """Compute classifying sieves of a subpresheaf, or verify the whole
    classifying map when no object is given."""
    config = run_config(json_output=json_output)
    w = open_workspace(workspace_path, config)
    F = resolve_presheaf(presheaf_ref, w)
    S = helper.load_subpresheaf(subpresheaf_path)
    subreport = helper.validate_subpresheaf(F, S, w)
    if not subreport.ok:
        first = subreport.violations[0]
        raise InputError(first.message, path=subpresheaf_path, location=first.ref)

    if object_id is None:
        report = helper.verify_classifier(F, S, w)
        emit(config, report, lambda: '\n'.join([
            f'F is {"" if report.presheaf_is_sheaf else "not "}a sheaf',
            f'S is {"" if report.subpresheaf_is_sheaf else "not "}a sheaf',
            describe_check_report(report)
        ]))
        finish(report.ok)
        return

    d = w.object(object_id)
    senses = [sense] if sense is not None else F.at(d.id)
    results = []
    for x in senses:
        value = helper.classifier_value(F, S, d, x, w)
        results.append(models.ClassifyResult(
            object=d.id,
            sense=x,
            member=S.contains(d.id, x),
            arrows=site_helper.sieve_arrow_ids(value.sieve, w),
            maximal=value.maximal,
            closed=value.closed,
            principal=value.principal
        ))

    def text():
        lines = []
        for result in results:
            flags = [name for name in ('maximal', 'closed', 'principal') if getattr(result, name)]
            lines.append(
                f'{result.object} {result.sense!r}: {{' + ', '.join(result.arrows) + '}'
                + (f' [{", ".join(flags)}]' if flags else '')
            )
        return '\n'.join(lines)

    emit(config, results, text)
    finish(True)


@click.command('presheaf-skeleton')
@workspace_option
@click.option('--presheaf', 'presheaf_path', type=str,
              help='Fill senses and known restrictions from this presheaf file.')
@click.option('--output', type=click.Path(dir_okay=False, writable=True),
              help='Write here instead of standard output.')
def presheaf_skeleton(workspace_path, presheaf_path, output):
    """Print a presheaf template with a slot for every object and morphism
    of the workspace."""
    config = run_config()
    w = open_workspace(workspace_path, config)
    base = helper.load_presheaf(presheaf_path) if presheaf_path else None
    text = json.dumps(helper.presheaf_skeleton(w, base), indent=2, ensure_ascii=False) + '\n'
    if output:
        with open(output, 'w', encoding='utf-8') as f:
            f.write(text)
    else:
        click.echo(text, nl=False)
    finish(True)
