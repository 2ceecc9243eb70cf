"""Builds finite workspaces of the extended category: every neighbourhood of
a grammar plus a list of correct diagrams, closed under correct
subdiagrams."""
from errors import InputError, PreconditionError
from pydantic import ValidationError
from diagrams import helper as diagram_helper
from diagrams.models import Diagram, id_key
from grammars import helper as grammar_helper
from grammars.models import CorrectDiagram, Grammar
from . import helper
from . import models
import itertools
import logging
import networkx as nx
import os
import typing

logger = logging.getLogger(__name__)

MANIFEST_NAME = 'manifest.json'
"""The manifest file looked up when a workspace directory is given"""


class Workspace:
    """A finite set of objects of the extended category with cached hom-sets.

    Attributes:
    - `grammar (Grammar)`: The grammar every object belongs to
    - `objects (list[ExtObject])`: Neighbourhood objects in grammar order,
      then correct objects in the order they were listed
    - `options (SiteOptions)`: How hom-sets and covering sieves are computed
    - `drop_cover_arrows (dict[str, list[str]])`: Cover entries left out of
      base families, by object id
    - `name (str)`: A name for logging and reports
    """
    def __init__(
            self,
            grammar: Grammar,
            objects: typing.List[models.ExtObject],
            options: typing.Optional[models.SiteOptions] = None,
            drop_cover_arrows: typing.Optional[typing.Dict[str, typing.List[str]]] = None,
            name: str = ''):
        self.grammar = grammar
        self.objects = list(objects)
        self.options = options or models.SiteOptions()
        self.drop_cover_arrows = dict(drop_cover_arrows or {})
        self.name = name or grammar.name

        self._by_id = {}
        for obj in self.objects:
            if obj.id in self._by_id:
                raise InputError(f'duplicate object id {obj.id}')
            self._by_id[obj.id] = obj
        self._position = {obj.id: i for i, obj in enumerate(self.objects)}
        for object_id in self.drop_cover_arrows:
            if object_id not in self._by_id or not self._by_id[object_id].is_correct:
                raise InputError(f'drop_cover_arrows names unknown correct object {object_id}')
        self._hom = {}
        self._into = {}
        self._memo = {}

    def object(self, object_id: str) -> models.ExtObject:
        obj = self._by_id.get(object_id)
        if obj is None:
            raise PreconditionError(f'no object {object_id!r} in workspace {self.name}')
        return obj

    def __contains__(self, obj: models.ExtObject) -> bool:
        return self._by_id.get(obj.id) == obj

    def _require(self, obj: models.ExtObject) -> None:
        if obj not in self:
            raise PreconditionError(f'{obj.id} is not an object of workspace {self.name}')

    def hom(self, a: models.ExtObject, b: models.ExtObject) -> typing.List[models.Morphism]:
        key = (a.id, b.id)
        if key not in self._hom:
            self._require(a)
            self._require(b)
            self._hom[key] = helper.hom(a, b, self.options)
        return self._hom[key]

    def into(self, d: models.ExtObject) -> typing.List[models.Morphism]:
        """Every arrow into d, by source object order then embedding order"""
        if d.id not in self._into:
            self._require(d)
            arrows = []
            for obj in self.objects:
                arrows.extend(self.hom(obj, d))
            self._into[d.id] = arrows
        return self._into[d.id]

    def morphisms(self) -> typing.List[models.Morphism]:
        """Every arrow of the workspace, grouped by target in object order"""
        return [f for d in self.objects for f in self.into(d)]

    def morphism(self, morphism_id: str) -> typing.Optional[models.Morphism]:
        for f in self.morphisms():
            if f.id == morphism_id:
                return f
        return None

    def arrow_key(self, f: models.Morphism) -> tuple:
        return (self._position[f.target.id], self._position[f.source.id], f.embedding.sort_key())

    def sorted_arrows(
            self, arrows: typing.Iterable[models.Morphism]) -> typing.List[models.Morphism]:
        return sorted(arrows, key=self.arrow_key)

    def dropped_cover_nodes(self, d: models.ExtObject) -> typing.Set[str]:
        return set(self.drop_cover_arrows.get(d.id, ()))

    def memo(self, key, fn):
        """Caches fn() under key for the lifetime of the workspace"""
        if key not in self._memo:
            self._memo[key] = fn()
        return self._memo[key]


def neighbourhood_objects(grammar: Grammar) -> typing.List[models.ExtObject]:
    return [models.ExtObject.from_neighbourhood(n) for n in grammar.neighbourhoods]


def correct_objects(
        diagram: Diagram,
        grammar: Grammar,
        covers: typing.Optional[typing.List[int]] = None,
        path: str = None) -> typing.List[models.ExtObject]:
    """One object per selected cover of diagram, raising InputError if the
    diagram is not correct or a selected cover does not exist"""
    found = grammar_helper.find_covers(diagram, grammar)
    if not found:
        uncoverable = grammar_helper.uncoverable_nodes(diagram, grammar)
        raise InputError(
            f'diagram {diagram.name} is not correct (uncoverable nodes: {", ".join(uncoverable)})',
            path=path
        )
    indices = range(len(found)) if covers is None else covers
    result = []
    for index in indices:
        if index >= len(found):
            raise InputError(
                f'diagram {diagram.name} has {len(found)} covers, no cover {index}', path=path)
        result.append(models.ExtObject.from_correct(
            CorrectDiagram(diagram=diagram, cover=found[index], index=index)))
    return result


def correct_subdiagrams(
        obj: models.ExtObject,
        grammar: Grammar,
        options: typing.Optional[models.SiteOptions] = None) -> typing.List[models.ExtObject]:
    """The nonempty proper subdiagrams of a correct object, each with every
    cover that makes its inclusion an arrow into obj.

    A neighbourhood sits star-saturated at a node and at the node's image, so
    an inclusion carrying one cover into another keeps every edge at every
    node it hits. Only unions of connected components can qualify, and a
    valid nonempty diagram has exactly one.
    """
    graph = diagram_helper.diagram_graph(obj.diagram)
    components = sorted(
        (sorted(c, key=id_key) for c in nx.connected_components(graph)),
        key=lambda c: id_key(c[0])
    )
    result = []
    for size in range(1, len(components)):
        for chosen in itertools.combinations(components, size):
            nodes = [v for component in chosen for v in component]
            sub, inclusion = diagram_helper.induced_subdiagram(obj.diagram, nodes)
            for index, cover in enumerate(grammar_helper.find_covers(sub, grammar)):
                candidate = models.ExtObject.from_correct(
                    CorrectDiagram(diagram=sub, cover=cover, index=index))
                if any(f.embedding == inclusion for f in helper.hom(candidate, obj, options)):
                    result.append(candidate)
    return result


def build_workspace(
        grammar: Grammar,
        diagrams: typing.List[typing.Tuple[Diagram, typing.Optional[typing.List[int]]]],
        options: typing.Optional[models.SiteOptions] = None,
        drop_cover_arrows: typing.Optional[typing.Dict[str, typing.List[str]]] = None,
        name: str = '') -> Workspace:
    """Builds the workspace of the grammar's neighbourhoods and the listed
    correct diagrams, adding correct subdiagrams until nothing new appears."""
    options = options or models.SiteOptions()
    objects = neighbourhood_objects(grammar)
    seen = {obj.id for obj in objects}
    pending = []
    for diagram, covers in diagrams:
        grammar_helper.check_diagram(diagram, grammar)
        for obj in correct_objects(diagram, grammar, covers):
            if obj.id in seen:
                raise InputError(f'duplicate object id {obj.id}')
            seen.add(obj.id)
            objects.append(obj)
            pending.append(obj)

    while pending:
        obj = pending.pop(0)
        for sub in correct_subdiagrams(obj, grammar, options):
            if sub.id not in seen:
                logger.debug('adding correct subdiagram %s of %s', sub.id, obj.id)
                seen.add(sub.id)
                objects.append(sub)
                pending.append(sub)

    workspace = Workspace(grammar, objects, options, drop_cover_arrows, name)
    logger.info(
        'workspace %s: %s objects (%s neighbourhoods)',
        workspace.name, len(objects), len(grammar.neighbourhoods)
    )
    return workspace


def manifest_path(path: str) -> str:
    if os.path.isdir(path):
        return os.path.join(path, MANIFEST_NAME)
    return path


def load_workspace(
        path: str,
        literal_paper: bool = False,
        lax_cover_compat: bool = False) -> Workspace:
    """Loads a workspace from a manifest file or a directory holding
    manifest.json. Paths in the manifest are relative to it; the flags turn
    the corresponding site options on."""
    path = manifest_path(path)
    raw = diagram_helper.load_json(path)
    try:
        manifest = models.WorkspaceManifest.parse_obj(raw)
    except ValidationError as exc:
        raise diagram_helper.input_error_from_validation(exc, path)

    base = os.path.dirname(path)
    grammar = grammar_helper.load_grammar(os.path.join(base, manifest.grammar))
    diagrams = []
    for ref in manifest.diagrams:
        diagram_path = os.path.join(base, ref.path)
        diagram = diagram_helper.load_diagram(diagram_path)
        grammar_helper.check_diagram(diagram, grammar, diagram_path)
        diagrams.append((diagram, ref.covers))

    options = models.SiteOptions(
        literal_paper=manifest.options.literal_paper or literal_paper,
        lax_cover_compat=manifest.options.lax_cover_compat or lax_cover_compat
    )
    name = os.path.basename(os.path.dirname(os.path.abspath(path)))
    try:
        return build_workspace(grammar, diagrams, options, manifest.drop_cover_arrows, name)
    except InputError as exc:
        if exc.path is None:
            exc.path = path
        raise
