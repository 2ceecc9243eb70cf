"""Contains the syntax diagram models and the embeddings between them"""
from dataclasses import dataclass, field
from pydantic import BaseModel, PrivateAttr, validator
import re
import typing


def id_key(ident: str) -> tuple:
    """The sort key used for every id in this package. Runs of digits compare
    numerically, so node 10 sorts after node 9. Ids the runs cannot tell
    apart, such as 01 and 1, fall back to plain string order."""
    parts = tuple(
        (0, int(part), '') if part.isdigit() else (1, 0, part)
        for part in re.split(r'(\d+)', ident) if part != ''
    )
    return parts, ident


class Alphabet(BaseModel):
    """The finite ordered set of symbols nodes may be labeled with.

    Attributes:
    - `symbols (list[str])`: The symbols, nonempty strings, no duplicates
    """
    symbols: typing.List[str]

    @validator('symbols')
    def nonempty_unique(cls, v):
        if not v:
            raise ValueError('alphabet must not be empty')
        if any(not s for s in v):
            raise ValueError('symbols must be nonempty strings')
        if len(set(v)) != len(v):
            raise ValueError('alphabet contains duplicate symbols')
        return v

    def __contains__(self, symbol):
        return symbol in self.symbols


class SortSet(BaseModel):
    """The finite ordered set of edge sorts.

    Attributes:
    - `sorts (list[str])`: The sort names, no duplicates
    """
    sorts: typing.List[str]

    @validator('sorts')
    def nonempty_unique(cls, v):
        if not v:
            raise ValueError('sort set must not be empty')
        if len(set(v)) != len(v):
            raise ValueError('sort set contains duplicate sorts')
        return v

    def __contains__(self, sort):
        return sort in self.sorts


class ShapeCondition(BaseModel):
    """A global condition on the shape of diagrams. `none` and `chain` are
    built in; any other kind names a predicate registered with
    diagrams.shapes.register_shape.
    """
    kind: str = 'none'


class Node(BaseModel):
    id: str
    label: str


class Edge(BaseModel):
    """An edge (rib) of a diagram. Undirected edges ignore the order of a and
    b; directed edges run from a to b.
    """
    id: str
    a: str
    b: str
    sort: str
    directed: bool = False


class DiagramIndex:
    """Lookup tables over a diagram, built once on first use.

    Attributes:
    - `labels (dict[str, str])`: node id to symbol
    - `edges (dict[str, Edge])`: edge id to edge
    - `node_order (list[str])`: node ids in id order
    - `edge_order (list[str])`: edge ids in id order
    - `incident (dict[str, list[str]])`: node id to incident edge ids in id
      order; a loop is listed once
    """
    def __init__(self, diagram: 'Diagram'):
        self.labels = {n.id: n.label for n in diagram.nodes}
        self.edges = {e.id: e for e in diagram.edges}
        self.node_order = sorted(self.labels, key=id_key)
        self.edge_order = sorted(self.edges, key=id_key)
        self.incident = {node_id: [] for node_id in self.node_order}
        for edge_id in self.edge_order:
            edge = self.edges[edge_id]
            for end in {edge.a, edge.b}:
                if end in self.incident:
                    self.incident[end].append(edge_id)


class Diagram(BaseModel):
    """A syntax diagram: a connected labeled multigraph, or the empty diagram.
    Loops and parallel edges are permitted. Instances are not modified after
    they are built.

    Attributes:
    - `name (str)`: The diagram's name, used in object ids; loaders default
      it to the file stem
    - `nodes (list[Node])`: The nodes
    - `edges (list[Edge])`: The edges
    """
    name: str = ''
    nodes: typing.List[Node] = []
    edges: typing.List[Edge] = []

    _index: typing.Optional[DiagramIndex] = PrivateAttr(default=None)

    class Config:
        allow_mutation = False

    def index(self) -> DiagramIndex:
        if self._index is None:
            self._index = DiagramIndex(self)
        return self._index

    @property
    def is_empty(self) -> bool:
        return not self.nodes and not self.edges

    def label(self, node_id: str) -> str:
        return self.index().labels[node_id]

    def has_node(self, node_id: str) -> bool:
        return node_id in self.index().labels

    def canonical(self) -> dict:
        """The canonical serialization: arrays sorted by id."""
        result = {}
        if self.name:
            result['name'] = self.name
        result['nodes'] = [
            n.dict() for n in sorted(self.nodes, key=lambda n: id_key(n.id))
        ]
        result['edges'] = [
            e.dict() for e in sorted(self.edges, key=lambda e: id_key(e.id))
        ]
        return result


@dataclass(frozen=True)
class Embedding:
    """An injective, label and structure preserving inclusion mapping of one
    diagram into another. Equality and hashing only look at the two maps;
    the diagrams are carried along for convenience.

    Attributes:
    - `source (Diagram)`: The included diagram
    - `target (Diagram)`: The diagram it is included in
    - `nodes (tuple[tuple[str, str]])`: The node map as pairs, in source id
      order
    - `edges (tuple[tuple[str, str]])`: The edge map as pairs, in source id
      order
    """
    source: Diagram = field(compare=False, repr=False)
    target: Diagram = field(compare=False, repr=False)
    nodes: typing.Tuple[typing.Tuple[str, str], ...] = ()
    edges: typing.Tuple[typing.Tuple[str, str], ...] = ()

    @property
    def node_map(self) -> typing.Dict[str, str]:
        return dict(self.nodes)

    @property
    def edge_map(self) -> typing.Dict[str, str]:
        return dict(self.edges)

    def canonical(self) -> str:
        """A string which identifies the pair of maps, e.g. `1:1,2:2|e1:e1`"""
        return (
            ','.join(f'{k}:{v}' for k, v in self.nodes)
            + '|'
            + ','.join(f'{k}:{v}' for k, v in self.edges)
        )

    def sort_key(self) -> tuple:
        return (
            tuple(id_key(v) for _, v in self.nodes),
            tuple(id_key(v) for _, v in self.edges)
        )

    def is_identity(self) -> bool:
        return (
            all(k == v for k, v in self.nodes)
            and all(k == v for k, v in self.edges)
            and len(self.nodes) == len(self.target.nodes)
            and len(self.edges) == len(self.target.edges)
        )
