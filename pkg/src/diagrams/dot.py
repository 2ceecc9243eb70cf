"""Renders diagrams and syntax covers in the DOT language"""
from jinja2 import Environment, StrictUndefined
from . import models
import json
import typing


DIAGRAM_TEMPLATE = '''\
{{ kind }} {{ name | q }} {
  node [shape=circle];
{%- for node in nodes %}
  {{ node.id | q }} [label={{ node.label | q }}];
{%- endfor %}
{%- for e in edges %}
  {{ e.a | q }} {{ connector }} {{ e.b | q }} [label={{ e.sort | q }}, dir={{ e | dir }}];
{%- endfor %}
{%- for cluster in clusters %}
  subgraph {{ ('cluster_' ~ loop.index) | q }} {
    label={{ cluster.label | q }};
    style=dashed;
{%- for node in cluster.nodes %}
    {{ node.id | q }} [label={{ node.label | q }}{% if node.center %}, peripheries=2{% endif %}];
{%- endfor %}
{%- for e in cluster.edges %}
    {{ e.a | q }} {{ connector }} {{ e.b | q }} [label={{ e.sort | q }}, dir={{ e | dir }}];
{%- endfor %}
  }
{%- endfor %}
}
'''


def quote(value: str) -> str:
    """A DOT double-quoted string. JSON string escaping is a valid subset of
    the DOT escapes for quotes and backslashes."""
    return json.dumps(str(value), ensure_ascii=False)


def direction(edge) -> str:
    directed = edge['directed'] if isinstance(edge, dict) else edge.directed
    return 'forward' if directed else 'none'


_environment = Environment(undefined=StrictUndefined, keep_trailing_newline=True, autoescape=False)
_environment.filters['q'] = quote
_environment.filters['dir'] = direction
_template = _environment.from_string(DIAGRAM_TEMPLATE)


def _edges(diagram: models.Diagram) -> typing.List[models.Edge]:
    index = diagram.index()
    return [index.edges[e] for e in index.edge_order]


def _nodes(diagram: models.Diagram) -> typing.List[models.Node]:
    index = diagram.index()
    return [models.Node(id=v, label=index.labels[v]) for v in index.node_order]


def diagram_to_dot(diagram: models.Diagram) -> str:
    """Node labels are the symbols, edge labels the sorts; directed edges get
    an arrowhead. Always rendered as a digraph so mixed diagrams work."""
    return _template.render(
        kind='digraph',
        connector='->',
        name=diagram.name or 'diagram',
        nodes=_nodes(diagram),
        edges=_edges(diagram),
        clusters=[]
    )


def cover_to_dot(diagram: models.Diagram, entries: typing.Sequence) -> str:
    """The diagram followed by one cluster per cover entry holding a copy of
    the neighbourhood's image. Copies are named `<node>@<covered node>` so
    overlapping images stay apart; the copy of the center is doubled."""
    clusters = []
    for entry in entries:
        node_map = entry.embedding.node_map
        edge_map = entry.embedding.edge_map
        index = diagram.index()
        center_image = node_map[entry.neighbourhood.center]

        def copy(v: str) -> str:
            return f'{v}@{entry.node}'

        clusters.append({
            'label': f'{entry.neighbourhood_name} at {entry.node}',
            'nodes': [
                {'id': copy(w), 'label': index.labels[w], 'center': w == center_image}
                for _, w in entry.embedding.nodes
            ],
            'edges': [
                {
                    'a': copy(index.edges[edge_map[e]].a),
                    'b': copy(index.edges[edge_map[e]].b),
                    'sort': index.edges[edge_map[e]].sort,
                    'directed': index.edges[edge_map[e]].directed
                }
                for e, _ in entry.embedding.edges
            ]
        })
    return _template.render(
        kind='digraph',
        connector='->',
        name=diagram.name or 'diagram',
        nodes=_nodes(diagram),
        edges=_edges(diagram),
        clusters=clusters
    )
