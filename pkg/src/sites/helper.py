"""Helper functions for the extended category: hom-sets, composition, sieves,
the base of covering families and the topology it generates.

Functions taking a workspace expect every object they are given to belong
to it; see sites.workspace.Workspace.
"""
from errors import CompositionError, PreconditionError, SizeBoundError
from diagrams import helper as diagram_helper
from diagrams.models import Embedding
from . import models
import logging
import typing

if typing.TYPE_CHECKING:
    from .workspace import Workspace

logger = logging.getLogger(__name__)


def identity(obj: models.ExtObject) -> models.Morphism:
    return models.Morphism(
        source=obj, target=obj, embedding=diagram_helper.identity_embedding(obj.diagram))


def _cover_compatible(
        a: models.ExtObject,
        b: models.ExtObject,
        emb: Embedding,
        lax: bool) -> bool:
    """True if emb carries a's cover into b's cover: every node keeps its
    neighbourhood and, unless lax, the cover embeddings commute with emb."""
    node_map = emb.node_map
    for entry in a.correct.cover.entries:
        image = b.correct.cover.entry(node_map[entry.node])
        if image.neighbourhood_name != entry.neighbourhood_name:
            return False
        if not lax and image.embedding != diagram_helper.compose_embeddings(emb, entry.embedding):
            return False
    return True


def hom(
        a: models.ExtObject,
        b: models.ExtObject,
        options: typing.Optional[models.SiteOptions] = None) -> typing.List[models.Morphism]:
    """The hom-set from a to b in embedding order.

    - neighbourhood to neighbourhood: the identity, only when a is b
    - correct to neighbourhood: empty
    - neighbourhood to correct: the cover entries of b using a's
      neighbourhood
    - correct to correct: the embeddings compatible with both covers
    """
    options = options or models.SiteOptions()
    if a.is_nbhd and b.is_nbhd:
        return [identity(a)] if a == b else []
    if a.is_correct and b.is_nbhd:
        return []
    if a.is_nbhd:
        arrows = [
            models.Morphism(source=a, target=b, embedding=entry.embedding)
            for entry in b.correct.cover.entries
            if entry.neighbourhood_name == a.neighbourhood.name
        ]
        return sorted(arrows, key=lambda f: f.embedding.sort_key())
    return [
        models.Morphism(source=a, target=b, embedding=emb)
        for emb in diagram_helper.iter_embeddings(a.diagram, b.diagram)
        if _cover_compatible(a, b, emb, options.lax_cover_compat)
    ]


def compose(f: models.Morphism, g: models.Morphism) -> models.Morphism:
    """f after g"""
    if g.target != f.source:
        raise CompositionError(
            f'cannot compose {f.id} after {g.id}: {g.target.id} is not {f.source.id}')
    if f.target.is_nbhd and f.source != f.target:
        raise CompositionError(f'{f.id} is not an arrow of the category')
    return models.Morphism(
        source=g.source,
        target=f.target,
        embedding=diagram_helper.compose_embeddings(f.embedding, g.embedding)
    )


def missing_composites(
        w: 'Workspace') -> typing.List[typing.Tuple[models.Morphism, models.Morphism]]:
    """The composable pairs (f, g) of workspace arrows whose composite f after g
    is not itself an arrow of the workspace. Empty unless an option admits
    arrows that do not compose, such as lax_cover_compat."""
    def build():
        missing = []
        for d in w.objects:
            into = set(w.into(d))
            for f in w.into(d):
                for g in w.into(f.source):
                    if compose(f, g) not in into:
                        missing.append((f, g))
        return missing
    return w.memo(('missing_composites',), build)


def require_category(w: 'Workspace') -> None:
    """Raises PreconditionError unless the arrows of w are closed under
    composition. Sieves and the topology are undefined otherwise."""
    missing = missing_composites(w)
    if missing:
        f, g = missing[0]
        raise PreconditionError(
            f'{f.id} after {g.id} is not an arrow of {w.name}; '
            f'the arrows are not closed under composition'
        )


def all_morphisms_into(d: models.ExtObject, w: 'Workspace') -> typing.List[models.Morphism]:
    """Every arrow of the workspace into d, ordered by source object and then
    by embedding"""
    return w.into(d)


def maximal_sieve(d: models.ExtObject, w: 'Workspace') -> models.Sieve:
    return models.Sieve(on=d, arrows=frozenset(w.into(d)))


def generate_sieve(
        d: models.ExtObject,
        generators: typing.Iterable[models.Morphism],
        w: 'Workspace') -> models.Sieve:
    """The least sieve on d containing the generators"""
    require_category(w)
    queue = list(generators)
    for f in queue:
        if f.target != d:
            raise PreconditionError(f'generator {f.id} does not point to {d.id}')
    arrows = set()
    while queue:
        f = queue.pop()
        if f in arrows:
            continue
        arrows.add(f)
        for g in w.into(f.source):
            composite = compose(f, g)
            if composite not in arrows:
                queue.append(composite)
    return models.Sieve(on=d, arrows=frozenset(arrows))


def cover_family(d: models.ExtObject, w: 'Workspace') -> typing.List[models.Morphism]:
    """The cover maps of a correct object in node order: one arrow from each
    entry's neighbourhood object. Entries the workspace drops are skipped."""
    if not d.is_correct:
        raise PreconditionError(f'{d.id} is not a correct diagram')
    dropped = w.dropped_cover_nodes(d)
    return [
        models.Morphism(
            source=w.object(f'nbhd:{entry.neighbourhood_name}'),
            target=d,
            embedding=entry.embedding
        )
        for entry in d.correct.cover.entries
        if entry.node not in dropped
    ]


def cover_sieve(d: models.ExtObject, w: 'Workspace') -> models.Sieve:
    return w.memo(('cover_sieve', d.id), lambda: generate_sieve(d, cover_family(d, w), w))


def pullback_sieve(h: models.Morphism, s: models.Sieve, w: 'Workspace') -> models.Sieve:
    """The arrows f into the source of h with h after f in s"""
    if s.on != h.target:
        raise PreconditionError(f'{h.id} does not point to {s.on.id}')
    return models.Sieve(
        on=h.source,
        arrows=frozenset(f for f in w.into(h.source) if compose(h, f) in s)
    )


def inverse(f: models.Morphism, w: 'Workspace') -> typing.Optional[models.Morphism]:
    """The two-sided inverse of f within the workspace, if there is one"""
    for g in w.hom(f.target, f.source):
        if compose(g, f) == identity(f.source) and compose(f, g) == identity(f.target):
            return g
    return None


def is_isomorphism(f: models.Morphism, w: 'Workspace') -> bool:
    return inverse(f, w) is not None


def kg_families(
        d: models.ExtObject,
        w: 'Workspace') -> typing.List[typing.Tuple[models.Morphism, ...]]:
    """The base covering families on d: the identity first, then every other
    isomorphism into d on its own, then the cover family of a correct
    object."""
    def build():
        ident = identity(d)
        families = [(ident,)]
        for f in w.into(d):
            if f != ident and is_isomorphism(f, w):
                families.append((f,))
        if d.is_correct:
            families.append(tuple(cover_family(d, w)))
        return families
    return w.memo(('kg_families', d.id), build)


def in_topology(s: models.Sieve, w: 'Workspace') -> bool:
    """Whether s covers its object. By default a sieve covers when it
    contains a base family; with literal_paper only the maximal sieve and
    the cover sieve of a correct object cover."""
    if w.options.literal_paper:
        if s.arrows == maximal_sieve(s.on, w).arrows:
            return True
        return s.on.is_correct and s.arrows == cover_sieve(s.on, w).arrows
    return any(all(f in s for f in family) for family in kg_families(s.on, w))


def is_closed(s: models.Sieve, w: 'Workspace') -> bool:
    """True if s contains every arrow f along which s pulls back to a
    covering sieve"""
    return all(
        f in s or not in_topology(pullback_sieve(f, s, w), w)
        for f in w.into(s.on)
    )


def close_sieve(s: models.Sieve, w: 'Workspace') -> models.Sieve:
    """The least closed sieve containing s"""
    current = s
    while True:
        added = [
            f for f in w.into(current.on)
            if f not in current and in_topology(pullback_sieve(f, current, w), w)
        ]
        if not added:
            return current
        current = generate_sieve(current.on, list(current.arrows) + added, w)


def is_principal(s: models.Sieve, w: 'Workspace') -> bool:
    """True if s is generated by a single one of its arrows"""
    return any(
        generate_sieve(s.on, [f], w).arrows == s.arrows
        for f in w.sorted_arrows(s.arrows)
    )


def precomposite_masks(
        arrows: typing.List[models.Morphism],
        w: 'Workspace') -> typing.List[int]:
    """For each arrow, the bitmask over arrows of its precomposites"""
    position = {f: i for i, f in enumerate(arrows)}
    masks = []
    for f in arrows:
        mask = 0
        for g in w.into(f.source):
            index = position.get(compose(f, g))
            if index is not None:
                mask |= 1 << index
        masks.append(mask)
    return masks


def all_sieves(
        d: models.ExtObject,
        w: 'Workspace',
        max_arrows: int = 16) -> typing.List[models.Sieve]:
    """Every sieve on d, ordered by size and then by the positions of their
    arrows in all_morphisms_into order. Refuses above max_arrows arrows."""
    require_category(w)
    arrows = w.into(d)
    if len(arrows) > max_arrows:
        raise SizeBoundError(f'sieves on {d.id}', len(arrows), max_arrows)
    masks = precomposite_masks(arrows, w)
    closed = []
    for mask in range(1 << len(arrows)):
        members = [i for i in range(len(arrows)) if mask >> i & 1]
        if all(masks[i] & ~mask == 0 for i in members):
            closed.append(members)
    closed.sort(key=lambda members: (len(members), members))
    logger.debug('%s: %s sieves over %s arrows', d.id, len(closed), len(arrows))
    return [
        models.Sieve(on=d, arrows=frozenset(arrows[i] for i in members))
        for members in closed
    ]


def covering_sieves(
        d: models.ExtObject,
        w: 'Workspace',
        max_arrows: int = 16) -> typing.Tuple[typing.List[models.Sieve], bool]:
    """The covering sieves on d and whether the list is complete. Above
    max_arrows only the maximal sieve and the sieves generated by base
    families are returned."""
    try:
        return [s for s in all_sieves(d, w, max_arrows) if in_topology(s, w)], True
    except SizeBoundError:
        logger.info('too many arrows into %s, using generated covering sieves only', d.id)
    result = [maximal_sieve(d, w)]
    for family in kg_families(d, w):
        s = generate_sieve(d, family, w)
        if s not in result and in_topology(s, w):
            result.append(s)
    if w.options.literal_paper and d.is_correct:
        s = cover_sieve(d, w)
        if s not in result:
            result.append(s)
    return result, False


def sieve_arrow_ids(s: models.Sieve, w: 'Workspace') -> typing.List[str]:
    return [f.id for f in w.sorted_arrows(s.arrows)]


def describe_sieve(s: models.Sieve, w: 'Workspace') -> str:
    ids = sieve_arrow_ids(s, w)
    return f'{s.on.id} {{' + ', '.join(ids) + '}'
