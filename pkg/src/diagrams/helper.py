"""Helper functions for syntax diagrams: validation, embedding enumeration
and composition, stars, and the chain codec."""
from errors import (
    CompositionError, InputError, NotAChainError, PreconditionError, UnknownNodeError
)
from models import ValidationReport, Violation
from pydantic import ValidationError
from . import models
from . import shapes
from .models import id_key
import collections
import itertools
import json
import logging
import networkx as nx
from networkx.algorithms import isomorphism
import os
import typing

logger = logging.getLogger(__name__)

CHAIN_SORT = 'next'
"""The sort of the edges encode_chain builds"""


def load_json(path: str):
    """Reads a UTF-8 JSON file, raising InputError if it cannot be read or
    parsed."""
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except OSError as exc:
        raise InputError(f'cannot read file ({exc.strerror})', path=path)
    except json.JSONDecodeError as exc:
        raise InputError(f'invalid JSON ({exc.msg})', path=path, location=f'line {exc.lineno}')


def input_error_from_validation(exc: ValidationError, path: str) -> InputError:
    """Converts the first pydantic error into an InputError naming its
    location as a dotted path."""
    first = exc.errors()[0]
    location = '.'.join(str(part) for part in first['loc'] if part != '__root__')
    return InputError(first['msg'], path=path, location=location)


def parse_diagram(raw, name: str, path: str = None) -> models.Diagram:
    """Builds a Diagram from parsed JSON, defaulting its name"""
    if not isinstance(raw, dict):
        raise InputError('a diagram must be a JSON object', path=path)
    raw = dict(raw)
    raw.setdefault('name', name)
    try:
        return models.Diagram.parse_obj(raw)
    except ValidationError as exc:
        raise input_error_from_validation(exc, path)


def load_diagram(path: str) -> models.Diagram:
    """Loads a diagram file. The diagram is named after the file stem unless
    the file sets a name."""
    stem = os.path.splitext(os.path.basename(path))[0]
    return parse_diagram(load_json(path), stem, path)


def diagram_graph(diagram: models.Diagram) -> nx.MultiGraph:
    """The underlying undirected multigraph, skipping dangling edges"""
    graph = nx.MultiGraph()
    index = diagram.index()
    graph.add_nodes_from(index.node_order)
    for edge_id in index.edge_order:
        edge = index.edges[edge_id]
        if edge.a in index.labels and edge.b in index.labels:
            graph.add_edge(edge.a, edge.b, key=edge_id)
    return graph


def validate_diagram(
        d: models.Diagram,
        alphabet: models.Alphabet,
        sorts: models.SortSet,
        cond: models.ShapeCondition) -> ValidationReport:
    """Checks every diagram invariant, the labels and sorts, and the shape
    condition. Never raises; each violation names the offending id."""
    violations = []

    seen = set()
    for node in d.nodes:
        if node.id in seen:
            violations.append(Violation(
                code='duplicate-node', message=f'duplicate node id {node.id}', ref=node.id))
        seen.add(node.id)
        if node.label not in alphabet:
            violations.append(Violation(
                code='unknown-label',
                message=f'node {node.id} is labeled {node.label!r}, which is not in the alphabet',
                ref=node.id
            ))

    seen_edges = set()
    dangling = False
    for edge in d.edges:
        if edge.id in seen_edges:
            violations.append(Violation(
                code='duplicate-edge', message=f'duplicate edge id {edge.id}', ref=edge.id))
        seen_edges.add(edge.id)
        for end in (edge.a, edge.b):
            if end not in seen:
                dangling = True
                violations.append(Violation(
                    code='dangling-edge',
                    message=f'edge {edge.id} references unknown node {end}',
                    ref=edge.id
                ))
        if edge.sort not in sorts:
            violations.append(Violation(
                code='unknown-sort',
                message=f'edge {edge.id} has sort {edge.sort!r}, which is not a known sort',
                ref=edge.id
            ))

    if d.nodes:
        graph = diagram_graph(d)
        if not nx.is_connected(graph):
            components = sorted(
                (sorted(c, key=id_key) for c in nx.connected_components(graph)),
                key=lambda c: id_key(c[0])
            )
            violations.append(Violation(
                code='not-connected',
                message=f'not connected ({len(components)} components)',
                ref=components[1][0]
            ))
    elif d.edges:
        violations.append(Violation(
            code='not-connected', message='edges without nodes', ref=d.edges[0].id))

    structural = not violations or all(
        v.code in ('unknown-label', 'unknown-sort') for v in violations
    )
    if structural and not dangling:
        problems = shapes.shape_problems(d, cond)
        if problems is None:
            violations.append(Violation(
                code='unknown-shape', message=f'unknown shape condition {cond.kind!r}'))
        else:
            for problem in problems:
                violations.append(Violation(code='shape', message=f'{cond.kind}: {problem}'))

    return ValidationReport.from_violations(violations)


def _slot_key(edge: models.Edge, a: str, b: str) -> tuple:
    """The key an image edge must have when the edge's endpoints map to a and
    b. Undirected edges forget orientation."""
    if edge.directed:
        return (True, edge.sort, a, b)
    return (False, edge.sort) + tuple(sorted((a, b)))


def _slots(diagram: models.Diagram) -> typing.Dict[tuple, typing.List[str]]:
    slots = collections.defaultdict(list)
    index = diagram.index()
    for edge_id in index.edge_order:
        edge = index.edges[edge_id]
        slots[_slot_key(edge, edge.a, edge.b)].append(edge_id)
    return slots


def skeleton(
        diagram: models.Diagram,
        pins: typing.Optional[typing.Dict[str, str]] = None) -> nx.DiGraph:
    """The simple digraph the node search runs on. Each node carries its
    label, a count of its loops by direction and sort, and the target node it
    is pinned to, if any. Adjacent nodes get an arc both ways; the arc u -> v
    counts the edges between them as seen from u: `out` and `in` for
    directed edges leaving and entering u, `both` for undirected ones."""
    index = diagram.index()
    pins = pins or {}
    graph = nx.DiGraph()
    for v in index.node_order:
        graph.add_node(
            v, id=v, label=index.labels[v], loops=collections.Counter(), pin=pins.get(v))
    for edge_id in index.edge_order:
        edge = index.edges[edge_id]
        if edge.a == edge.b:
            graph.nodes[edge.a]['loops'][(edge.directed, edge.sort)] += 1
            continue
        for tail, head in ((edge.a, edge.b), (edge.b, edge.a)):
            if not graph.has_edge(tail, head):
                graph.add_edge(tail, head, slots=collections.Counter())
            if not edge.directed:
                kind = 'both'
            else:
                kind = 'out' if tail == edge.a else 'in'
            graph[tail][head]['slots'][(kind, edge.sort)] += 1
    return graph


def _holds(big: collections.Counter, small: collections.Counter) -> bool:
    return all(big[key] >= count for key, count in small.items())


def _node_fits(target: dict, source: dict) -> bool:
    return (
        target['label'] == source['label']
        and source['pin'] in (None, target['id'])
        and _holds(target['loops'], source['loops'])
    )


def _arc_fits(target: dict, source: dict) -> bool:
    return _holds(target['slots'], source['slots'])


def iter_embeddings(
        a: models.Diagram,
        b: models.Diagram,
        fixed: typing.Optional[typing.Dict[str, str]] = None
) -> typing.Iterator[models.Embedding]:
    """Yields every embedding of a into b in lexicographic order of the node
    map over a's sorted node ids, then of the edge map over a's sorted edge
    ids. `fixed` pins some source nodes to given target nodes.

    The node maps are the subgraph monomorphisms of a's skeleton into b's
    which keep labels and leave room for every loop and parallel edge. Each
    is then extended to the edges one slot at a time.
    """
    ia = a.index()
    ib = b.index()
    if len(ia.node_order) > len(ib.node_order) or len(ia.edge_order) > len(ib.edge_order):
        return
    slots = _slots(b)

    matcher = isomorphism.DiGraphMatcher(
        skeleton(b), skeleton(a, fixed), node_match=_node_fits, edge_match=_arc_fits)
    node_maps = sorted(
        ({v: w for w, v in mapping.items()} for mapping in matcher.subgraph_monomorphisms_iter()),
        key=lambda node_map: tuple(id_key(node_map[v]) for v in ia.node_order)
    )

    def edge_maps(node_map, pos: int, edge_map: typing.List[typing.Tuple[str, str]], taken: set):
        if pos == len(ia.edge_order):
            yield models.Embedding(
                source=a,
                target=b,
                nodes=tuple((v, node_map[v]) for v in ia.node_order),
                edges=tuple(edge_map)
            )
            return
        edge_id = ia.edge_order[pos]
        edge = ia.edges[edge_id]
        for image in slots.get(_slot_key(edge, node_map[edge.a], node_map[edge.b]), ()):
            if image in taken:
                continue
            taken.add(image)
            edge_map.append((edge_id, image))
            yield from edge_maps(node_map, pos + 1, edge_map, taken)
            edge_map.pop()
            taken.discard(image)

    for node_map in node_maps:
        yield from edge_maps(node_map, 0, [], set())


def enumerate_embeddings(
        a: models.Diagram,
        b: models.Diagram,
        fixed: typing.Optional[typing.Dict[str, str]] = None) -> typing.List[models.Embedding]:
    """All embeddings of a into b, in the deterministic order of
    iter_embeddings. The identity comes first when a is b."""
    return list(iter_embeddings(a, b, fixed))


def identity_embedding(d: models.Diagram) -> models.Embedding:
    index = d.index()
    return models.Embedding(
        source=d,
        target=d,
        nodes=tuple((v, v) for v in index.node_order),
        edges=tuple((e, e) for e in index.edge_order)
    )


def _same_diagram(x: models.Diagram, y: models.Diagram) -> bool:
    return x is y or x.canonical() == y.canonical()


def compose_embeddings(f: models.Embedding, g: models.Embedding) -> models.Embedding:
    """f after g. Requires the target of g to be the source of f."""
    if not _same_diagram(g.target, f.source):
        if g.target.name == f.source.name:
            raise CompositionError(
                f'cannot compose: two different diagrams are named {f.source.name!r}')
        raise CompositionError(
            f'cannot compose: target of g is {g.target.name!r} '
            f'but source of f is {f.source.name!r}'
        )
    f_nodes = f.node_map
    f_edges = f.edge_map
    return models.Embedding(
        source=g.source,
        target=f.target,
        nodes=tuple((v, f_nodes[w]) for v, w in g.nodes),
        edges=tuple((e, f_edges[x]) for e, x in g.edges)
    )


def embedding_violations(e: models.Embedding) -> typing.List[str]:
    """Checks an embedding against the Embedding invariants structurally and
    returns what is wrong with it."""
    problems = []
    src = e.source.index()
    tgt = e.target.index()
    node_map = e.node_map
    edge_map = e.edge_map
    if set(node_map) != set(src.labels):
        problems.append('node map is not total')
    if len(set(node_map.values())) != len(node_map):
        problems.append('node map is not injective')
    if set(edge_map) != set(src.edges):
        problems.append('edge map is not total')
    if len(set(edge_map.values())) != len(edge_map):
        problems.append('edge map is not injective')
    for v, w in node_map.items():
        if w not in tgt.labels:
            problems.append(f'node {v} maps outside the target')
        elif src.labels.get(v) != tgt.labels[w]:
            problems.append(f'node {v} changes label')
    for edge_id, image_id in edge_map.items():
        edge = src.edges.get(edge_id)
        image = tgt.edges.get(image_id)
        if edge is None or image is None:
            problems.append(f'edge {edge_id} maps outside the target')
            continue
        if edge.sort != image.sort or edge.directed != image.directed:
            problems.append(f'edge {edge_id} changes sort or direction')
            continue
        a, b = node_map.get(edge.a), node_map.get(edge.b)
        if edge.directed:
            if (image.a, image.b) != (a, b):
                problems.append(f'edge {edge_id} changes endpoints')
        elif sorted((image.a, image.b)) != sorted((a, b)):
            problems.append(f'edge {edge_id} changes endpoints')
    return problems


def star(d: models.Diagram, v: str) -> typing.FrozenSet[str]:
    """The edges incident to v; a loop is counted once."""
    index = d.index()
    if v not in index.incident:
        raise UnknownNodeError(d.name, v)
    return frozenset(index.incident[v])


def is_star_saturated(e: models.Embedding, center: str) -> bool:
    """True if the edge map restricted to the star of center is a bijection
    onto the star of center's image."""
    image_center = e.node_map.get(center)
    if image_center is None:
        raise UnknownNodeError(e.source.name, center)
    source_star = star(e.source, center)
    target_star = star(e.target, image_center)
    edge_map = e.edge_map
    image = {edge_map[edge_id] for edge_id in source_star}
    return len(image) == len(source_star) and image == target_star


def one_node_diagram(symbol: str, name: str = None) -> models.Diagram:
    """The diagram with a single node labeled symbol and no edges"""
    return models.Diagram(name=name or symbol, nodes=[models.Node(id='1', label=symbol)])


def alphabet_diagrams(alphabet: models.Alphabet) -> typing.List[models.Diagram]:
    """One one-node diagram per symbol, in alphabet order"""
    return [one_node_diagram(symbol) for symbol in alphabet.symbols]


def encode_chain(s: str, name: str = None) -> models.Diagram:
    """Builds the chain diagram of a nonempty string: nodes 1..n labeled by
    the symbols, and directed `next` edges e1..e(n-1) from node i to i+1.
    Every character is one symbol."""
    if not s:
        raise PreconditionError('cannot encode the empty string as a chain')
    return models.Diagram(
        name=name or s,
        nodes=[models.Node(id=str(i + 1), label=symbol) for i, symbol in enumerate(s)],
        edges=[
            models.Edge(id=f'e{i + 1}', a=str(i + 1), b=str(i + 2), sort=CHAIN_SORT, directed=True)
            for i in range(len(s) - 1)
        ]
    )


def decode_chain(d: models.Diagram) -> str:
    """Reads the string back off a nonempty chain diagram"""
    if not d.nodes:
        raise NotAChainError(['the empty diagram encodes no string'])
    problems = shapes.chain_problems(d)
    if problems:
        raise NotAChainError(problems)
    index = d.index()
    if len(index.node_order) == 1:
        return index.labels[index.node_order[0]]
    successor = {}
    has_predecessor = set()
    for edge in d.edges:
        successor[edge.a] = edge.b
        has_predecessor.add(edge.b)
    current = next(v for v in index.node_order if v not in has_predecessor)
    symbols = [index.labels[current]]
    while current in successor:
        current = successor[current]
        symbols.append(index.labels[current])
    return ''.join(symbols)


def induced_subdiagram(
        d: models.Diagram,
        node_ids: typing.Iterable[str],
        edge_ids: typing.Optional[typing.Iterable[str]] = None,
        name: str = None) -> typing.Tuple[models.Diagram, models.Embedding]:
    """The subdiagram on the given nodes, with the given edges (default: every
    edge between them), together with its inclusion into d. Ids are kept."""
    index = d.index()
    keep = set(node_ids)
    for v in keep:
        if v not in index.labels:
            raise UnknownNodeError(d.name, v)
    if edge_ids is None:
        edge_ids = [
            e for e in index.edge_order
            if index.edges[e].a in keep and index.edges[e].b in keep
        ]
    edge_ids = sorted(set(edge_ids), key=id_key)
    node_order = [v for v in index.node_order if v in keep]
    sub = models.Diagram(
        name=name or f'{d.name}[{",".join(node_order)}]',
        nodes=[models.Node(id=v, label=index.labels[v]) for v in node_order],
        edges=[index.edges[e].copy() for e in edge_ids]
    )
    inclusion = models.Embedding(
        source=sub,
        target=d,
        nodes=tuple((v, v) for v in node_order),
        edges=tuple((e, e) for e in edge_ids)
    )
    return sub, inclusion


def enumerate_subdiagrams(
        d: models.Diagram,
        limit: typing.Optional[int] = None
) -> typing.List[typing.Tuple[models.Diagram, models.Embedding]]:
    """Every nonempty connected subdiagram of d with its inclusion, ordered by
    node count, then node ids, then edge count, then edge ids. At most limit
    are returned."""
    index = d.index()
    result = []
    for size in range(1, len(index.node_order) + 1):
        for node_ids in itertools.combinations(index.node_order, size):
            keep = set(node_ids)
            between = [
                e for e in index.edge_order
                if index.edges[e].a in keep and index.edges[e].b in keep
            ]
            for edge_count in range(len(between) + 1):
                for edge_ids in itertools.combinations(between, edge_count):
                    sub, inclusion = induced_subdiagram(d, node_ids, edge_ids)
                    if nx.is_connected(diagram_graph(sub)):
                        result.append((sub, inclusion))
                        if limit is not None and len(result) >= limit:
                            return result
    return result
