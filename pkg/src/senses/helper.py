"""Helper functions for presheaves of senses: validation, matching
families, the sheaf condition in its local and equalizer forms, and the
subobject classifier"""
from errors import InputError, PreconditionError, SizeBoundError
from models import AxiomCheck, Counterexample, ValidationReport, Violation
from pydantic import ValidationError
from diagrams import helper as diagram_helper
from sites import helper as site_helper
from sites.models import ExtObject, Morphism, Sieve
from sites.workspace import Workspace
from . import models
import collections
import itertools
import logging
import os
import typing

logger = logging.getLogger(__name__)

TERMINAL = '@terminal'
INITIAL = '@initial'
"""Presheaf names the command line resolves without reading a file"""


def _file_name(path: str) -> str:
    return os.path.splitext(os.path.basename(path))[0]


def load_presheaf(path: str) -> models.Presheaf:
    raw = diagram_helper.load_json(path)
    if not isinstance(raw, dict):
        raise InputError('a presheaf must be a JSON object', path=path)
    raw = dict(raw)
    raw.setdefault('name', _file_name(path))
    try:
        return models.Presheaf.parse_obj(raw)
    except ValidationError as exc:
        raise diagram_helper.input_error_from_validation(exc, path)


def load_subpresheaf(path: str) -> models.SubPresheaf:
    """Loads a subpresheaf file, a JSON object from object ids to lists of
    senses"""
    raw = diagram_helper.load_json(path)
    if not isinstance(raw, dict):
        raise InputError('a subpresheaf must be a JSON object', path=path)
    try:
        return models.SubPresheaf(name=_file_name(path), members=raw)
    except ValidationError as exc:
        raise diagram_helper.input_error_from_validation(exc, path)


def initial_presheaf(w: Workspace) -> models.Presheaf:
    """No senses anywhere; every restriction is the empty map"""
    return models.Presheaf(
        name=INITIAL,
        senses={d.id: [] for d in w.objects},
        restrictions={f.id: {} for f in w.morphisms()}
    )


def terminal_presheaf(w: Workspace) -> models.Presheaf:
    """Exactly one sense everywhere; every restriction is the unique map"""
    one = models.TERMINAL_SENSE
    return models.Presheaf(
        name=TERMINAL,
        senses={d.id: [one] for d in w.objects},
        restrictions={f.id: {one: one} for f in w.morphisms()}
    )


def validate_presheaf(F: models.Presheaf, w: Workspace) -> ValidationReport:
    """Checks that F is defined on every object and arrow of w, that every
    restriction is a total map between the right sense sets, and the
    identity and composition laws. Every failure is listed."""
    violations = []
    object_ids = {d.id for d in w.objects}
    morphisms = w.morphisms()
    morphism_ids = {f.id for f in morphisms}

    for object_id in F.senses:
        if object_id not in object_ids:
            violations.append(Violation(
                code='unknown-object', message=f'no object {object_id} in the workspace',
                ref=object_id))
    for d in w.objects:
        if d.id not in F.senses:
            violations.append(Violation(
                code='missing-senses', message=f'no senses given for {d.id}', ref=d.id))
            continue
        labels = F.senses[d.id]
        for label in sorted({x for x in labels if labels.count(x) > 1}):
            violations.append(Violation(
                code='duplicate-sense', message=f'{d.id} lists sense {label!r} twice', ref=d.id))

    for morphism_id in F.restrictions:
        if morphism_id not in morphism_ids:
            violations.append(Violation(
                code='unknown-morphism', message=f'no morphism {morphism_id} in the workspace',
                ref=morphism_id))

    total = set()
    for f in morphisms:
        if f.id not in F.restrictions:
            violations.append(Violation(
                code='missing-restriction', message=f'no restriction given for {f.id}', ref=f.id))
            continue
        table = F.restrictions[f.id]
        target_senses = F.at(f.target.id)
        source_senses = set(F.at(f.source.id))
        ok = True
        for x in target_senses:
            if x not in table:
                ok = False
                violations.append(Violation(
                    code='not-total',
                    message=f'restriction along {f.id} has no value for {x!r}', ref=f.id))
            elif table[x] not in source_senses:
                ok = False
                violations.append(Violation(
                    code='bad-value',
                    message=(
                        f'restriction along {f.id} sends {x!r} to {table[x]!r}, '
                        f'which is not a sense of {f.source.id}'
                    ),
                    ref=f.id
                ))
        for x in table:
            if x not in target_senses:
                violations.append(Violation(
                    code='unknown-sense',
                    message=f'restriction along {f.id} maps {x!r}, not a sense of {f.target.id}',
                    ref=f.id
                ))
        if ok:
            total.add(f)

    for d in w.objects:
        ident = site_helper.identity(d)
        if ident not in total:
            continue
        for x in F.at(d.id):
            if F.restrict(ident, x) != x:
                violations.append(Violation(
                    code='identity-law',
                    message=f'identity of {d.id} sends {x!r} to {F.restrict(ident, x)!r}',
                    ref=ident.id
                ))

    for f in morphisms:
        if f not in total:
            continue
        for g in w.into(f.source):
            if g not in total:
                continue
            fg = site_helper.compose(f, g)
            if fg not in total:
                continue
            for x in F.at(f.target.id):
                expected = F.restrict(g, F.restrict(f, x))
                actual = F.restrict(fg, x)
                if actual != expected:
                    violations.append(Violation(
                        code='composition-law',
                        message=(
                            f'restricting {x!r} along {fg.id} gives {actual!r}, but along '
                            f'{f.id} and then {g.id} gives {expected!r}'
                        ),
                        ref=fg.id
                    ))

    return ValidationReport.from_violations(violations)


def check_presheaf(F: models.Presheaf, w: Workspace, path: str = None) -> None:
    """Raises InputError unless F passes validate_presheaf"""
    report = validate_presheaf(F, w)
    if not report.ok:
        first = report.violations[0]
        raise InputError(first.message, path=path, location=first.ref)


def validate_subpresheaf(
        F: models.Presheaf,
        S: models.SubPresheaf,
        w: Workspace) -> ValidationReport:
    """Checks that S picks senses of F only and is closed under every
    restriction"""
    violations = []
    object_ids = {d.id for d in w.objects}
    for object_id, members in S.members.items():
        if object_id not in object_ids:
            violations.append(Violation(
                code='unknown-object', message=f'no object {object_id} in the workspace',
                ref=object_id))
            continue
        for x in members:
            if x not in F.at(object_id):
                violations.append(Violation(
                    code='not-a-sense', message=f'{x!r} is not a sense of {object_id}',
                    ref=object_id))
    for f in w.morphisms():
        for x in S.at(f.target.id):
            y = F.restrict(f, x)
            if not S.contains(f.source.id, y):
                violations.append(Violation(
                    code='not-closed',
                    message=(
                        f'{x!r} is in S({f.target.id}) but restricts along {f.id} '
                        f'to {y!r}, which is not in S({f.source.id})'
                    ),
                    ref=f.id
                ))
    return ValidationReport.from_violations(violations)


def restrict_presheaf(
        F: models.Presheaf,
        S: models.SubPresheaf,
        w: Workspace) -> models.Presheaf:
    """S as a presheaf in its own right, with the restrictions of F"""
    return models.Presheaf(
        name=S.name or f'{F.name}|S',
        senses={d.id: [x for x in F.at(d.id) if S.contains(d.id, x)] for d in w.objects},
        restrictions={
            f.id: {
                x: y for x, y in F.restrictions.get(f.id, {}).items()
                if S.contains(f.target.id, x)
            }
            for f in w.morphisms()
        }
    )


def _constraints(
        arrows: typing.List[Morphism],
        w: Workspace) -> typing.List[typing.List[typing.Tuple[int, Morphism, int]]]:
    """For each position, the compatibility conditions x_(f g) = F(g)(x_f)
    that become checkable once that position is assigned, as (position of
    f, g, position of f g)"""
    position = {f: i for i, f in enumerate(arrows)}
    by_position = [[] for _ in arrows]
    for i, f in enumerate(arrows):
        for g in w.into(f.source):
            j = position.get(site_helper.compose(f, g))
            if j is not None:
                by_position[max(i, j)].append((i, g, j))
    return by_position


def matching_families(
        F: models.Presheaf,
        s: Sieve,
        w: Workspace) -> typing.List[models.MatchingFamily]:
    """Every compatible assignment of senses over the arrows of s. Arrows
    are taken in workspace order and senses in the order F lists them; the
    families come out in the resulting lexicographic order."""
    site_helper.require_category(w)
    arrows = w.sorted_arrows(s.arrows)
    constraints = _constraints(arrows, w)
    choices = [F.at(f.source.id) for f in arrows]
    result = []
    picked: typing.List[str] = []

    def extend(pos: int):
        if pos == len(arrows):
            result.append(models.MatchingFamily(
                sieve=s, assignment=tuple(zip(arrows, picked))))
            return
        for x in choices[pos]:
            picked.append(x)
            if all(picked[j] == F.restrict(g, picked[i]) for i, g, j in constraints[pos]):
                extend(pos + 1)
            picked.pop()

    extend(0)
    return result


def restrict_along(
        F: models.Presheaf,
        x: str,
        arrows: typing.Sequence[Morphism]) -> typing.Tuple[str, ...]:
    """The family x restricts to along the arrows, the map e of the sheaf
    condition"""
    return tuple(F.restrict(f, x) for f in arrows)


def sheaf_check_at(
        F: models.Presheaf,
        d: ExtObject,
        w: Workspace) -> models.SheafObjectResult:
    """Whether every matching family on the cover sieve of d has exactly one
    amalgamation"""
    s = site_helper.cover_sieve(d, w)
    arrows = w.sorted_arrows(s.arrows)
    families = matching_families(F, s, w)
    images = collections.OrderedDict()
    witness = None
    for x in F.at(d.id):
        image = restrict_along(F, x, arrows)
        if image in images and witness is None:
            witness = (
                f'senses {images[image]!r} and {x!r} of {d.id} restrict to the same '
                'family on the cover sieve'
            )
        images.setdefault(image, x)
    injective = len(images) == len(F.at(d.id))
    surjective = True
    for family in families:
        if tuple(x for _, x in family.assignment) not in images:
            surjective = False
            if witness is None:
                witness = f'the matching family {family.describe()} on {d.id} has no amalgamation'
            break
    return models.SheafObjectResult(
        object=d.id,
        senses=len(F.at(d.id)),
        families=len(families),
        injective=injective,
        surjective=surjective,
        witness=witness
    )


def sheaf_check_local(F: models.Presheaf, w: Workspace) -> models.SheafReport:
    """The sheaf condition on the cover sieve of every correct object"""
    results = [sheaf_check_at(F, d, w) for d in w.objects if d.is_correct]
    for result in results:
        if not result.ok:
            logger.info('%s is not a sheaf at %s: %s', F.name, result.object, result.witness)
    return models.SheafReport(
        ok=all(result.ok for result in results),
        presheaf=F.name,
        objects=results
    )


def sheaf_check_equalizer(
        F: models.Presheaf,
        s: Sieve,
        w: Workspace,
        max_product: int = 100000) -> models.EqualizerReport:
    """The sheaf condition on s in equalizer form: build the product of the
    sense sets over the arrows of s, the maps p and a into the product over
    composable pairs, and check that e is injective with image exactly where
    p and a agree."""
    site_helper.require_category(w)
    arrows = w.sorted_arrows(s.arrows)
    factors = [F.at(f.source.id) for f in arrows]
    size = 1
    for factor in factors:
        size *= len(factor)
    if size > max_product:
        raise SizeBoundError(f'the sense product over {s.on.id}', size, max_product)

    pairs = [(f, g) for f in arrows for g in w.into(f.source)]
    position = {f: i for i, f in enumerate(arrows)}

    def p(x: typing.Tuple[str, ...]) -> typing.Tuple[str, ...]:
        return tuple(x[position[site_helper.compose(f, g)]] for f, g in pairs)

    def a(x: typing.Tuple[str, ...]) -> typing.Tuple[str, ...]:
        return tuple(F.restrict(g, x[position[f]]) for f, g in pairs)

    equalizer = {x for x in itertools.product(*factors) if p(x) == a(x)}
    images = {}
    witness = None
    for x in F.at(s.on.id):
        image = restrict_along(F, x, arrows)
        if image in images and witness is None:
            witness = f'senses {images[image]!r} and {x!r} of {s.on.id} have the same image under e'
        images.setdefault(image, x)
    injective = len(images) == len(F.at(s.on.id))
    image_matches = set(images) == equalizer
    if not image_matches and witness is None:
        missing = sorted(equalizer - set(images))
        outside = sorted(set(images) - equalizer)
        if missing:
            witness = f'the equalized family {list(missing[0])} is not in the image of e'
        else:
            witness = f'the image {list(outside[0])} of e is not equalized by p and a'
    return models.EqualizerReport(
        ok=injective and image_matches,
        object=s.on.id,
        arrows=[f.id for f in arrows],
        product_size=size,
        equalized=len(equalizer),
        injective=injective,
        image_matches=image_matches,
        witness=witness
    )


def classify(
        F: models.Presheaf,
        S: models.SubPresheaf,
        d: ExtObject,
        x: str,
        w: Workspace) -> Sieve:
    """The arrows into d along which x restricts into S"""
    site_helper.require_category(w)
    if x not in F.at(d.id):
        raise PreconditionError(f'{x!r} is not a sense of {d.id}')
    return Sieve(
        on=d,
        arrows=frozenset(
            f for f in w.into(d) if S.contains(f.source.id, F.restrict(f, x))
        )
    )


def classifier_value(
        F: models.Presheaf,
        S: models.SubPresheaf,
        d: ExtObject,
        x: str,
        w: Workspace) -> models.ClassifierValue:
    s = classify(F, S, d, x, w)
    return models.ClassifierValue(
        sense=x,
        sieve=s,
        maximal=s.arrows == site_helper.maximal_sieve(d, w).arrows,
        closed=site_helper.is_closed(s, w),
        principal=site_helper.is_principal(s, w)
    )


def is_sieve(s: Sieve, w: Workspace) -> bool:
    """Checks precomposition closure structurally"""
    return all(
        f.target == s.on and all(site_helper.compose(f, g) in s for g in w.into(f.source))
        for f in s.arrows
    )


def verify_classifier(
        F: models.Presheaf,
        S: models.SubPresheaf,
        w: Workspace) -> models.ClassifierReport:
    """Checks the classifying map of S: every value is a sieve, the map is
    natural, S is exactly where the value is maximal, and the values are
    closed when F and S are both sheaves. The closedness check is skipped,
    naming the failing hypothesis, otherwise."""
    sieve_check = AxiomCheck(axiom='sieve')
    naturality = AxiomCheck(axiom='naturality')
    pullback = AxiomCheck(axiom='pullback')
    closed = AxiomCheck(axiom='closed')
    notes = []

    values = {}
    for d in w.objects:
        for x in F.at(d.id):
            values[(d.id, x)] = classify(F, S, d, x, w)

    for (object_id, x), s in values.items():
        sieve_check.checked += 1
        if not is_sieve(s, w):
            sieve_check.counterexamples.append(Counterexample(
                axiom='sieve', object=object_id,
                description=f'the value at {x!r} is not closed under precomposition',
                arrows=site_helper.sieve_arrow_ids(s, w)
            ))

    for h in w.morphisms():
        for x in F.at(h.target.id):
            naturality.checked += 1
            y = F.restrict(h, x)
            left = values[(h.source.id, y)]
            right = site_helper.pullback_sieve(h, values[(h.target.id, x)], w)
            if left.arrows != right.arrows:
                naturality.counterexamples.append(Counterexample(
                    axiom='naturality', object=h.target.id,
                    description=(
                        f'classifying {y!r}, the restriction of {x!r} along {h.id}, differs '
                        f'from pulling back the classifying sieve of {x!r}'
                    ),
                    arrows=[h.id]
                ))

    for d in w.objects:
        pullback.checked += 1
        maximal = site_helper.maximal_sieve(d, w).arrows
        classified = {x for x in F.at(d.id) if values[(d.id, x)].arrows == maximal}
        if classified != set(S.at(d.id)):
            pullback.counterexamples.append(Counterexample(
                axiom='pullback', object=d.id,
                description=(
                    f'senses with maximal classifying sieve {sorted(classified)} differ from '
                    f'S({d.id}) = {sorted(S.at(d.id))}'
                )
            ))

    presheaf_is_sheaf = sheaf_check_local(F, w).ok
    subpresheaf_is_sheaf = sheaf_check_local(restrict_presheaf(F, S, w), w).ok
    if presheaf_is_sheaf and subpresheaf_is_sheaf:
        for (object_id, x), s in values.items():
            closed.checked += 1
            if not site_helper.is_closed(s, w):
                closed.counterexamples.append(Counterexample(
                    axiom='closed', object=object_id,
                    description=f'the classifying sieve of {x!r} is not closed',
                    arrows=site_helper.sieve_arrow_ids(s, w)
                ))
    else:
        failing = []
        if not presheaf_is_sheaf:
            failing.append('F is not a sheaf')
        if not subpresheaf_is_sheaf:
            failing.append('S is not a sheaf')
        notes.append('closedness not checked: ' + ', '.join(failing))
        open_values = [
            object_id for (object_id, _), s in values.items() if not site_helper.is_closed(s, w)
        ]
        if open_values:
            notes.append(f'classifying sieves that are not closed: {len(open_values)}')

    checks = [sieve_check, naturality, pullback, closed]
    for check in checks:
        for counterexample in check.counterexamples:
            logger.info('%s fails at %s: %s', counterexample.axiom, counterexample.object,
                        counterexample.description)
    return models.ClassifierReport(
        ok=all(check.passed for check in checks),
        presheaf_is_sheaf=presheaf_is_sheaf,
        subpresheaf_is_sheaf=subpresheaf_is_sheaf,
        checks=checks,
        notes=notes
    )


def omega_at(d: ExtObject, w: Workspace, max_arrows: int = 16) -> typing.List[Sieve]:
    """Every sieve on d, the classifier of presheaves at d"""
    return site_helper.all_sieves(d, w, max_arrows)


def omega_sheaf_at(d: ExtObject, w: Workspace, max_arrows: int = 16) -> typing.List[Sieve]:
    """The closed sieves on d, the classifier of sheaves at d"""
    return [s for s in omega_at(d, w, max_arrows) if site_helper.is_closed(s, w)]


def presheaf_skeleton(
        w: Workspace,
        base: typing.Optional[models.Presheaf] = None) -> dict:
    """A presheaf file template with a slot for every object and morphism.
    With base, its senses are filled in, identities map every sense to
    itself, other known restriction values are kept and the rest are
    null."""
    senses = collections.OrderedDict()
    for d in w.objects:
        senses[d.id] = list(base.at(d.id)) if base is not None else []
    restrictions = collections.OrderedDict()
    for f in w.morphisms():
        table = collections.OrderedDict()
        for x in senses[f.target.id]:
            if f.source == f.target and f.embedding.is_identity():
                table[x] = x
            else:
                table[x] = base.restrict(f, x) if base is not None else None
        restrictions[f.id] = table
    return {'senses': senses, 'restrictions': restrictions}
