"""Contains the objects, morphisms and sieves of the extended category of
correct diagrams, and the workspace manifest"""
from dataclasses import dataclass, field
from pydantic import BaseModel, validator
from diagrams.models import Diagram, Embedding
from grammars.models import CorrectDiagram, Neighbourhood
import hashlib
import typing

NBHD = 'nbhd'
CORRECT = 'correct'

DIGEST_LENGTH = 12
"""How many hex digits of the SHA-256 digest go into a morphism id"""


class SiteOptions(BaseModel):
    """How hom-sets and covering sieves are computed.

    Attributes:
    - `literal_paper (bool)`: A correct object is covered only by its
      maximal sieve and its cover sieve, instead of by every sieve
      containing a base family
    - `lax_cover_compat (bool)`: Morphisms between correct diagrams need only
      preserve the neighbourhood names of the cover, not the cover
      embeddings themselves
    """
    literal_paper: bool = False
    lax_cover_compat: bool = False


class DiagramRef(BaseModel):
    """A diagram listed in a workspace manifest.

    Attributes:
    - `path (str)`: The diagram file, relative to the manifest
    - `covers (list[int], None)`: The cover indices which become objects;
      None for all of them
    """
    path: str
    covers: typing.Optional[typing.List[int]] = None

    @validator('covers')
    def covers_nonnegative(cls, v):
        if v is not None and any(i < 0 for i in v):
            raise ValueError('cover indices must be nonnegative')
        return v


class WorkspaceManifest(BaseModel):
    """The workspace manifest file.

    Attributes:
    - `grammar (str)`: The grammar file, relative to the manifest
    - `diagrams (list[DiagramRef])`: The correct diagrams to include. A plain
      string is accepted for a path with all of its covers
    - `options (SiteOptions)`: Site options; command line flags may turn
      them on
    - `drop_cover_arrows (dict[str, list[str]])`: Maps a correct object id to
      node ids whose cover maps are left out of the object's base cover
      family. Only meant for negative controls
    """
    grammar: str
    diagrams: typing.List[DiagramRef] = []
    options: SiteOptions = SiteOptions()
    drop_cover_arrows: typing.Dict[str, typing.List[str]] = {}

    @validator('diagrams', pre=True, each_item=True)
    def path_shorthand(cls, v):
        if isinstance(v, str):
            return {'path': v}
        return v


@dataclass(frozen=True)
class ExtObject:
    """An object of the extended category: either a neighbourhood diagram of
    the grammar or a correct diagram. A neighbourhood that also admits a
    cover is two different objects. Objects compare by kind and id.

    Attributes:
    - `kind (str)`: `nbhd` or `correct`
    - `id (str)`: `nbhd:<name>` or `<diagram-name>#<cover-index>`
    - `diagram (Diagram)`: The underlying diagram
    - `neighbourhood (Neighbourhood, None)`: Set for neighbourhood objects
    - `correct (CorrectDiagram, None)`: Set for correct objects
    """
    kind: str
    id: str
    diagram: Diagram = field(compare=False, repr=False)
    neighbourhood: typing.Optional[Neighbourhood] = field(compare=False, repr=False, default=None)
    correct: typing.Optional[CorrectDiagram] = field(compare=False, repr=False, default=None)

    @classmethod
    def from_neighbourhood(cls, nbhd: Neighbourhood) -> 'ExtObject':
        return cls(kind=NBHD, id=f'nbhd:{nbhd.name}', diagram=nbhd.diagram, neighbourhood=nbhd)

    @classmethod
    def from_correct(cls, correct: CorrectDiagram) -> 'ExtObject':
        return cls(kind=CORRECT, id=correct.object_id, diagram=correct.diagram, correct=correct)

    @property
    def is_nbhd(self) -> bool:
        return self.kind == NBHD

    @property
    def is_correct(self) -> bool:
        return self.kind == CORRECT


@dataclass(frozen=True)
class Morphism:
    """An arrow of the extended category.

    Attributes:
    - `source (ExtObject)`: The domain
    - `target (ExtObject)`: The codomain
    - `embedding (Embedding)`: The inclusion of the underlying diagrams
    """
    source: ExtObject
    target: ExtObject
    embedding: Embedding

    @property
    def id(self) -> str:
        """`<source-id>-><target-id>@<digest>`, the digest taken over the
        canonical form of the embedding"""
        digest = hashlib.sha256(self.embedding.canonical().encode('utf-8')).hexdigest()
        return f'{self.source.id}->{self.target.id}@{digest[:DIGEST_LENGTH]}'

    def describe(self) -> str:
        return f'{self.id} [{self.embedding.canonical()}]'


@dataclass(frozen=True)
class Sieve:
    """A set of arrows into one object which is closed under precomposition.

    Attributes:
    - `on (ExtObject)`: The object every arrow points to
    - `arrows (frozenset[Morphism])`: The arrows
    """
    on: ExtObject
    arrows: typing.FrozenSet[Morphism] = frozenset()

    def __contains__(self, f: Morphism) -> bool:
        return f in self.arrows

    def __len__(self) -> int:
        return len(self.arrows)

    def issubset(self, other: 'Sieve') -> bool:
        return self.arrows <= other.arrows
