"""The global shape conditions a diagram category may impose. Every condition
is a predicate returning the list of reasons the diagram is rejected; an
empty list means the diagram is accepted.

Further conditions are registered by name:

```
@register_shape('cycle')
def cycle_problems(diagram):
    ...
```
"""
from . import models
import networkx as nx
import typing


ShapePredicate = typing.Callable[[models.Diagram], typing.List[str]]

SHAPE_PREDICATES: typing.Dict[str, ShapePredicate] = {}
"""Maps a ShapeCondition kind to its predicate"""


def register_shape(name: str):
    """Decorator registering a shape predicate under the given kind"""
    def decorator(fn: ShapePredicate) -> ShapePredicate:
        SHAPE_PREDICATES[name] = fn
        return fn
    return decorator


def shape_problems(
        diagram: models.Diagram,
        cond: models.ShapeCondition) -> typing.Optional[typing.List[str]]:
    """Evaluates the condition on the diagram, returning None if the kind is
    not registered."""
    predicate = SHAPE_PREDICATES.get(cond.kind)
    if predicate is None:
        return None
    return predicate(diagram)


def to_multidigraph(diagram: models.Diagram) -> nx.MultiDiGraph:
    """The diagram as a networkx multidigraph, edges keyed by edge id and
    oriented a to b. Edges with a dangling endpoint are skipped."""
    graph = nx.MultiDiGraph()
    index = diagram.index()
    graph.add_nodes_from(index.node_order)
    for edge_id in index.edge_order:
        edge = index.edges[edge_id]
        if edge.a in index.labels and edge.b in index.labels:
            graph.add_edge(edge.a, edge.b, key=edge_id, sort=edge.sort)
    return graph


@register_shape('none')
def no_problems(diagram: models.Diagram) -> typing.List[str]:
    return []


@register_shape('chain')
def chain_problems(diagram: models.Diagram) -> typing.List[str]:
    """A chain is empty, a single node without edges, or a directed path of
    one fixed sort."""
    if not diagram.nodes:
        return [] if not diagram.edges else ['edges without nodes']
    if len(diagram.nodes) == 1 and not diagram.edges:
        return []

    problems = []
    if any(not e.directed for e in diagram.edges):
        problems.append('chain edges must be directed')
    sorts = sorted({e.sort for e in diagram.edges})
    if len(sorts) != 1:
        problems.append(f'chain edges must share one sort, found {sorts}')

    graph = to_multidigraph(diagram)
    starts = [v for v in graph if graph.in_degree(v) == 0 and graph.out_degree(v) == 1]
    ends = [v for v in graph if graph.in_degree(v) == 1 and graph.out_degree(v) == 0]
    if len(starts) != 1:
        problems.append(f'expected exactly one start node, found {len(starts)}')
    if len(ends) != 1:
        problems.append(f'expected exactly one end node, found {len(ends)}')
    for v in graph:
        if v in starts or v in ends:
            continue
        if graph.in_degree(v) != 1 or graph.out_degree(v) != 1:
            problems.append(
                f'node {v} has in-degree {graph.in_degree(v)} '
                f'and out-degree {graph.out_degree(v)}'
            )
    if not problems and not nx.is_weakly_connected(graph):
        problems.append('chain is not a single path')
    return problems


@register_shape('rooted-tree')
def rooted_tree_problems(diagram: models.Diagram) -> typing.List[str]:
    """A rooted tree is empty, a single node, or a directed arborescence:
    one root, every other node reached by exactly one edge."""
    if not diagram.nodes:
        return [] if not diagram.edges else ['edges without nodes']
    if any(not e.directed for e in diagram.edges):
        return ['tree edges must be directed']
    graph = to_multidigraph(diagram)
    if len(diagram.nodes) == 1:
        return [] if not diagram.edges else ['a single node tree has no edges']
    if graph.number_of_edges() != graph.number_of_nodes() - 1:
        return ['a tree has exactly one edge fewer than it has nodes']
    if not nx.is_arborescence(nx.DiGraph(graph)):
        return ['not an arborescence']
    return []
