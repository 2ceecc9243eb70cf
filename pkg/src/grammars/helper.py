"""Helper functions for neighbourhood grammars: validation, cover search and
recognition"""
from errors import InputError, PreconditionError, UnknownNodeError, UnknownSymbolError
from models import ValidationReport, Violation
from pydantic import ValidationError
from diagrams import helper as diagram_helper
from diagrams import shapes
from . import models
import collections
import itertools
import logging
import math
import os
import typing

logger = logging.getLogger(__name__)


def _duplicates(items: typing.Iterable[str]) -> typing.List[str]:
    counts = collections.Counter(items)
    return [item for item, count in counts.items() if count > 1]


def validate_grammar(g: models.Grammar) -> ValidationReport:
    """Checks the grammar invariants and validates every neighbourhood
    diagram against the alphabet and sorts without a shape condition.
    Violations about a neighbourhood reference it by name."""
    violations = []
    if not g.alphabet:
        violations.append(Violation(code='empty-alphabet', message='alphabet must not be empty'))
    for symbol in _duplicates(g.alphabet):
        violations.append(Violation(
            code='duplicate-symbol', message=f'symbol {symbol!r} is listed twice', ref=symbol))
    if not g.sorts:
        violations.append(Violation(code='empty-sorts', message='sort set must not be empty'))
    for sort in _duplicates(g.sorts):
        violations.append(Violation(
            code='duplicate-sort', message=f'sort {sort!r} is listed twice', ref=sort))
    if g.shape not in shapes.SHAPE_PREDICATES:
        violations.append(Violation(
            code='unknown-shape', message=f'unknown shape condition {g.shape!r}'))
    for name in _duplicates(n.name for n in g.neighbourhoods):
        violations.append(Violation(
            code='duplicate-neighbourhood',
            message=f'neighbourhood name {name!r} is used twice',
            ref=name
        ))

    alphabet = g.alphabet_model
    sorts = g.sort_set
    no_shape = models.ShapeCondition(kind='none')
    for nbhd in g.neighbourhoods:
        if nbhd.symbol not in alphabet:
            violations.append(Violation(
                code='unknown-symbol',
                message=f'neighbourhood {nbhd.name} is filed under {nbhd.symbol!r}, '
                        'which is not in the alphabet',
                ref=nbhd.name
            ))
        if nbhd.diagram.is_empty:
            violations.append(Violation(
                code='empty-neighbourhood',
                message=f'neighbourhood {nbhd.name} is the empty diagram',
                ref=nbhd.name
            ))
        elif not nbhd.diagram.has_node(nbhd.center):
            violations.append(Violation(
                code='unknown-center',
                message=f'neighbourhood {nbhd.name} has no node {nbhd.center!r}',
                ref=nbhd.name
            ))
        elif nbhd.diagram.label(nbhd.center) != nbhd.symbol:
            violations.append(Violation(
                code='center-label',
                message=(
                    f'neighbourhood {nbhd.name} is filed under {nbhd.symbol!r} '
                    f'but its center is labeled {nbhd.diagram.label(nbhd.center)!r}'
                ),
                ref=nbhd.name
            ))
        report = diagram_helper.validate_diagram(nbhd.diagram, alphabet, sorts, no_shape)
        for violation in report.violations:
            violations.append(Violation(
                code=violation.code,
                message=f'neighbourhood {nbhd.name}: {violation.message}',
                ref=nbhd.name
            ))

    return ValidationReport.from_violations(violations)


def load_grammar(path: str, check: bool = True) -> models.Grammar:
    """Loads a grammar file, naming it after the file stem unless it sets a
    name. With check, a grammar failing validate_grammar raises InputError
    naming its first violation."""
    raw = diagram_helper.load_json(path)
    if not isinstance(raw, dict):
        raise InputError('a grammar must be a JSON object', path=path)
    raw = dict(raw)
    raw.setdefault('name', os.path.splitext(os.path.basename(path))[0])
    try:
        grammar = models.Grammar.parse_obj(raw)
    except ValidationError as exc:
        raise diagram_helper.input_error_from_validation(exc, path)
    if check:
        report = validate_grammar(grammar)
        if not report.ok:
            first = report.violations[0]
            raise InputError(first.message, path=path, location=first.ref)
    logger.debug(
        'loaded grammar %s: %s symbols, %s neighbourhoods',
        grammar.name, len(grammar.alphabet), len(grammar.neighbourhoods)
    )
    return grammar


def check_diagram(d: models.Diagram, g: models.Grammar, path: str = None) -> None:
    """Raises InputError unless d is valid under g's alphabet, sorts and
    shape condition."""
    report = diagram_helper.validate_diagram(d, g.alphabet_model, g.sort_set, g.shape_condition)
    if not report.ok:
        first = report.violations[0]
        raise InputError(first.message, path=path, location=first.ref)


def candidate_entries(
        d: models.Diagram, v: str, g: models.Grammar) -> typing.List[models.CoverEntry]:
    """Every star-saturated occurrence of a neighbourhood of v's symbol
    centered at v: neighbourhoods in family order, embeddings in enumeration
    order."""
    if not d.has_node(v):
        raise UnknownNodeError(d.name, v)
    result = []
    for nbhd in g.families.get(d.label(v), []):
        for emb in diagram_helper.iter_embeddings(nbhd.diagram, d, fixed={nbhd.center: v}):
            if diagram_helper.is_star_saturated(emb, nbhd.center):
                result.append(models.CoverEntry(
                    node=v, neighbourhood_name=nbhd.name, embedding=emb, neighbourhood=nbhd))
    return result


def candidate_table(
        d: models.Diagram,
        g: models.Grammar) -> typing.List[typing.Tuple[str, typing.List[models.CoverEntry]]]:
    """The candidate entries of every node, in node id order"""
    return [(v, candidate_entries(d, v, g)) for v in d.index().node_order]


def find_covers(
        d: models.Diagram,
        g: models.Grammar,
        limit: typing.Optional[int] = None) -> typing.List[models.SyntaxCover]:
    """Every syntax cover of d, indexed by position in the product of the
    candidate lists over nodes in id order. At most limit are returned."""
    table = candidate_table(d, g)
    product = itertools.product(*(entries for _, entries in table))
    if limit is not None:
        product = itertools.islice(product, limit)
    covers = [models.SyntaxCover(entries=tuple(choice)) for choice in product]
    logger.debug('%s: %s covers found (limit %s)', d.name, len(covers), limit)
    return covers


def cover_count(d: models.Diagram, g: models.Grammar) -> int:
    """The number of syntax covers, without building them"""
    return math.prod(len(entries) for _, entries in candidate_table(d, g))


def is_correct(d: models.Diagram, g: models.Grammar) -> bool:
    return all(entries for _, entries in candidate_table(d, g))


def uncoverable_nodes(d: models.Diagram, g: models.Grammar) -> typing.List[str]:
    """The nodes without any cover candidate, in id order"""
    return [v for v, entries in candidate_table(d, g) if not entries]


def recognize_string(s: str, g: models.Grammar) -> models.RecognitionResult:
    """Encodes s as a chain and decides whether it is correct under g"""
    if g.shape != 'chain':
        raise PreconditionError(f'recognizing strings needs a chain grammar, not {g.shape!r}')
    for symbol in s:
        if symbol not in g.alphabet:
            raise UnknownSymbolError(symbol)
    chain = diagram_helper.encode_chain(s)
    table = candidate_table(chain, g)
    count = math.prod(len(entries) for _, entries in table)
    return models.RecognitionResult(
        string=s,
        correct=count > 0,
        covers=count,
        uncoverable=[v for v, entries in table if not entries]
    )


def symbol_usage(g: models.Grammar) -> typing.List[models.SymbolUsage]:
    """The family and occurrence count of every symbol, in alphabet order.
    A symbol no neighbourhood mentions can label no node of a correct
    diagram."""
    families = g.families
    result = []
    for point in diagram_helper.alphabet_diagrams(g.alphabet_model):
        symbol = point.nodes[0].label
        occurrences = sum(
            len(diagram_helper.enumerate_embeddings(point, nbhd.diagram))
            for nbhd in g.neighbourhoods
        )
        result.append(models.SymbolUsage(
            symbol=symbol,
            family=[nbhd.name for nbhd in families[symbol]],
            occurrences=occurrences
        ))
    return result
