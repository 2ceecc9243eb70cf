"""Contains the neighbourhood grammar models and syntax covers"""
from dataclasses import dataclass, field
from pydantic import BaseModel, validator
from diagrams.models import Alphabet, Diagram, Embedding, ShapeCondition, SortSet
import typing


class Neighbourhood(BaseModel):
    """A diagram with a distinguished center node: one legal local context of
    the center's symbol.

    Attributes:
    - `name (str)`: Unique within the grammar
    - `symbol (str)`: The symbol whose family this neighbourhood belongs to;
      the center must carry it
    - `center (str)`: The id of the center node
    - `diagram (Diagram)`: The neighbourhood diagram
    """
    name: str
    symbol: str
    center: str
    diagram: Diagram

    @validator('name')
    def name_nonempty(cls, v):
        if not v:
            raise ValueError('neighbourhood name must not be empty')
        return v

    @validator('diagram', pre=True)
    def default_diagram_name(cls, v, values):
        if isinstance(v, dict) and not v.get('name') and values.get('name'):
            v = dict(v)
            v['name'] = values['name']
        return v


class Grammar(BaseModel):
    """A neighbourhood grammar: an alphabet, edge sorts, a global shape
    condition and a finite family of neighbourhoods per symbol. The model is
    deliberately permissive; see grammars.helper.validate_grammar for the
    invariants.

    Attributes:
    - `name (str)`: Defaults to the file stem when loaded from a file
    - `alphabet (list[str])`: The symbols, in order
    - `sorts (list[str])`: The edge sorts, in order
    - `shape (str)`: The ShapeCondition kind diagrams must satisfy
    - `neighbourhoods (list[Neighbourhood])`: Every neighbourhood; the family
      of a symbol keeps the order of this list
    """
    name: str = ''
    alphabet: typing.List[str]
    sorts: typing.List[str]
    shape: str = 'none'
    neighbourhoods: typing.List[Neighbourhood] = []

    @property
    def alphabet_model(self) -> Alphabet:
        return Alphabet.construct(symbols=list(self.alphabet))

    @property
    def sort_set(self) -> SortSet:
        return SortSet.construct(sorts=list(self.sorts))

    @property
    def shape_condition(self) -> ShapeCondition:
        return ShapeCondition(kind=self.shape)

    @property
    def families(self) -> typing.Dict[str, typing.List[Neighbourhood]]:
        """Maps every symbol to its family G_a, in neighbourhood order.
        Symbols without neighbourhoods map to an empty list."""
        result = {symbol: [] for symbol in self.alphabet}
        for nbhd in self.neighbourhoods:
            result.setdefault(nbhd.symbol, []).append(nbhd)
        return result

    def neighbourhood(self, name: str) -> typing.Optional[Neighbourhood]:
        for nbhd in self.neighbourhoods:
            if nbhd.name == name:
                return nbhd
        return None


@dataclass(frozen=True)
class CoverEntry:
    """One element of a syntax cover: the neighbourhood occurrence chosen for
    a node. Two embeddings of the same neighbourhood at the same node are
    different entries.

    Attributes:
    - `node (str)`: The covered node
    - `neighbourhood_name (str)`: The name of the neighbourhood
    - `embedding (Embedding)`: neighbourhood diagram -> covered diagram,
      taking the center to node
    - `neighbourhood (Neighbourhood)`: The neighbourhood itself
    """
    node: str
    neighbourhood_name: str
    embedding: Embedding
    neighbourhood: Neighbourhood = field(compare=False, repr=False, default=None)


@dataclass(frozen=True)
class SyntaxCover:
    """A choice of one CoverEntry for every node of a diagram.

    Attributes:
    - `entries (tuple[CoverEntry])`: One entry per node, in node id order
    """
    entries: typing.Tuple[CoverEntry, ...] = ()

    def entry(self, node: str) -> typing.Optional[CoverEntry]:
        for entry in self.entries:
            if entry.node == node:
                return entry
        return None

    def by_node(self) -> typing.Dict[str, CoverEntry]:
        return {entry.node: entry for entry in self.entries}

    def summary(self) -> str:
        """e.g. `1:L_a,2:M_b,3:R_a`"""
        return ','.join(f'{e.node}:{e.neighbourhood_name}' for e in self.entries)


@dataclass(frozen=True)
class CorrectDiagram:
    """A diagram together with one of its syntax covers.

    Attributes:
    - `diagram (Diagram)`: The covered diagram
    - `cover (SyntaxCover)`: The cover
    - `index (int)`: The position of the cover in find_covers order
    """
    diagram: Diagram = field(compare=False, repr=False)
    cover: SyntaxCover
    index: int
    name: str = ''

    @property
    def object_id(self) -> str:
        return f'{self.name or self.diagram.name}#{self.index}'


class RecognitionResult(BaseModel):
    """The outcome of recognizing a string as a chain.

    Attributes:
    - `string (str)`: The recognized string
    - `correct (bool)`: True if the chain admits at least one syntax cover
    - `covers (int)`: How many syntax covers the chain admits
    - `uncoverable (list[str])`: Node ids without any cover candidate
    """
    string: str
    correct: bool
    covers: int
    uncoverable: typing.List[str] = []


class SymbolUsage(BaseModel):
    """How a grammar uses one symbol of its alphabet.

    Attributes:
    - `symbol (str)`: The symbol
    - `family (list[str])`: The names of the neighbourhoods centered on the
      symbol, in grammar order
    - `occurrences (int)`: How many times the one-node diagram of the symbol
      embeds into the grammar's neighbourhoods, centers included
    """
    symbol: str
    family: typing.List[str] = []
    occurrences: int = 0
