"""Exhaustive and sampled verification of the base axioms and of the
Grothendieck topology axioms over a workspace"""
from models import AxiomCheck, CheckReport, Counterexample
from . import helper
from . import models
from .workspace import Workspace
import itertools
import logging
import random
import typing

logger = logging.getLogger(__name__)


def _family_ids(family: typing.Sequence[models.Morphism], w: Workspace) -> typing.List[str]:
    return [f.id for f in w.sorted_arrows(family)]


def _record(check: AxiomCheck, counterexample: Counterexample) -> None:
    logger.info('%s fails at %s: %s', counterexample.axiom, counterexample.object,
                counterexample.description)
    check.counterexamples.append(counterexample)


def _instance(check: AxiomCheck, description: str) -> None:
    check.checked += 1
    check.instances.append(description)


def check_base_composition(w: Workspace) -> AxiomCheck:
    """Every composite of two composable arrows is an arrow again"""
    check = AxiomCheck(axiom='composition')
    missing = set(helper.missing_composites(w))
    for d in w.objects:
        for f in w.into(d):
            for g in w.into(f.source):
                _instance(check, f'{f.id} after {g.id}')
                if (f, g) in missing:
                    _record(check, Counterexample(
                        axiom='composition',
                        object=d.id,
                        description=(
                            f'{f.id} after {g.id} gives an embedding which is not an arrow '
                            f'from {g.source.id}'
                        ),
                        arrows=[f.id, g.id]
                    ))
    return check


def check_base_identity(w: Workspace) -> AxiomCheck:
    """Every object carries the family made of its identity alone"""
    check = AxiomCheck(axiom='identity')
    for d in w.objects:
        _instance(check, d.id)
        ident = helper.identity(d)
        if not any(tuple(family) == (ident,) for family in helper.kg_families(d, w)):
            _record(check, Counterexample(
                axiom='identity',
                object=d.id,
                description='no base family consists of the identity alone',
                arrows=[ident.id]
            ))
    return check


def check_base_stability(w: Workspace) -> AxiomCheck:
    """For a base family F on A and an arrow g: B -> A, some base family H on
    B has g after h factoring through a member of F for each h in H. Such
    factorisations are exactly the arrows of the sieve F generates."""
    check = AxiomCheck(axiom='stability')
    for a in w.objects:
        for i, family in enumerate(helper.kg_families(a, w)):
            generated = helper.generate_sieve(a, family, w)
            for g in w.into(a):
                _instance(check, f'{a.id} family {i} along {g.id}')
                b = g.source
                found = any(
                    all(helper.compose(g, h) in generated for h in candidate)
                    for candidate in helper.kg_families(b, w)
                )
                if not found:
                    _record(check, Counterexample(
                        axiom='stability',
                        object=a.id,
                        description=(
                            f'no base family on {b.id} factors through the family '
                            f'{{{", ".join(_family_ids(family, w))}}} along {g.id}'
                        ),
                        arrows=_family_ids(family, w) + [g.id]
                    ))
    return check


def check_base_transitivity(w: Workspace) -> AxiomCheck:
    """For a base family {f_i} on A and a base family on the source of each
    f_i, the composites form a base family on A"""
    check = AxiomCheck(axiom='transitivity')
    for a in w.objects:
        families = [frozenset(family) for family in helper.kg_families(a, w)]
        for i, family in enumerate(helper.kg_families(a, w)):
            choices = [list(enumerate(helper.kg_families(f.source, w))) for f in family]
            for picked in itertools.product(*choices):
                picks = ','.join(str(j) for j, _ in picked)
                _instance(check, f'{a.id} family {i} with families ({picks})')
                composites = frozenset(
                    helper.compose(f, h)
                    for f, (_, inner) in zip(family, picked)
                    for h in inner
                )
                if composites not in families:
                    _record(check, Counterexample(
                        axiom='transitivity',
                        object=a.id,
                        description=(
                            f'composing the family {{{", ".join(_family_ids(family, w))}}} '
                            'with base families on its sources gives no base family'
                        ),
                        arrows=_family_ids(composites, w)
                    ))
    return check


def verify_base_axioms(w: Workspace) -> CheckReport:
    """Checks that the arrows compose, then the identity, stability and
    transitivity axioms of a base over every object and arrow of the
    workspace. The base axioms are skipped when composition fails."""
    checks = [check_base_composition(w)]
    notes = []
    if checks[0].passed:
        checks += [check_base_identity(w), check_base_stability(w), check_base_transitivity(w)]
    else:
        notes.append('the arrows are not closed under composition, base axioms skipped')
    report = CheckReport.from_checks(checks, notes)
    logger.info('base axioms on %s: %s', w.name, 'pass' if report.ok else 'fail')
    return report


def sample_sieves(
        d: models.ExtObject,
        w: Workspace,
        samples: int,
        seed: int) -> typing.List[models.Sieve]:
    """samples sieves on d, each generated by a random subset of the arrows
    into d. The generator is seeded by seed and the object id only."""
    arrows = w.into(d)
    rng = random.Random(f'{seed}:{d.id}')
    result = []
    for _ in range(samples):
        chosen = [f for f in arrows if rng.random() < 0.5]
        result.append(helper.generate_sieve(d, chosen, w))
    return result


def transitivity_candidates(
        d: models.ExtObject,
        w: Workspace,
        samples: int,
        seed: int) -> typing.List[models.Sieve]:
    """The maximal sieve, the sieves generated by base families, those
    enlarged by one arrow each, then the sampled sieves. Duplicates are
    dropped, keeping the first occurrence."""
    candidates = [helper.maximal_sieve(d, w)]
    generated = [helper.generate_sieve(d, family, w) for family in helper.kg_families(d, w)]
    candidates.extend(generated)
    if d.is_correct:
        candidates.append(helper.cover_sieve(d, w))
    for s in generated:
        for f in w.into(d):
            if f not in s:
                candidates.append(helper.generate_sieve(d, list(s.arrows) + [f], w))
    candidates.extend(sample_sieves(d, w, samples, seed))

    result = []
    seen = set()
    for s in candidates:
        if s.arrows not in seen:
            seen.add(s.arrows)
            result.append(s)
    return result


def verify_topology_axioms(
        w: Workspace,
        samples: int = 200,
        seed: int = 0,
        max_arrows: int = 16) -> CheckReport:
    """Checks the topology axioms of in_topology on w: the maximal sieve
    covers, covering sieves pull back to covering sieves along every arrow
    (both exhaustively), and a sieve covers whenever it pulls back to
    covering sieves along every arrow of a covering sieve, over a seeded
    sample of candidate sieves per object."""
    helper.require_category(w)
    maximal = AxiomCheck(axiom='maximal')
    stability = AxiomCheck(axiom='stability')
    transitivity = AxiomCheck(axiom='transitivity')
    notes = []

    for d in w.objects:
        _instance(maximal, d.id)
        if not helper.in_topology(helper.maximal_sieve(d, w), w):
            _record(maximal, Counterexample(
                axiom='maximal', object=d.id, description='the maximal sieve does not cover'))

        covering, complete = helper.covering_sieves(d, w, max_arrows)
        if not complete:
            notes.append(
                f'{d.id}: more than {max_arrows} arrows, covering sieves limited to '
                'the maximal sieve and generated base families'
            )

        for k, s in enumerate(covering):
            for h in w.into(d):
                _instance(stability, f'{d.id} covering sieve {k} along {h.id}')
                pulled = helper.pullback_sieve(h, s, w)
                if not helper.in_topology(pulled, w):
                    _record(stability, Counterexample(
                        axiom='stability',
                        object=d.id,
                        description=(
                            f'the covering sieve {helper.describe_sieve(s, w)} pulls back along '
                            f'{h.id} to {helper.describe_sieve(pulled, w)}, which does not cover'
                        ),
                        arrows=helper.sieve_arrow_ids(s, w) + [h.id]
                    ))

        for i, r in enumerate(transitivity_candidates(d, w, samples, seed)):
            for k, s in enumerate(covering):
                _instance(transitivity, f'{d.id} candidate {i} over covering sieve {k}')
                if all(helper.in_topology(helper.pullback_sieve(f, r, w), w) for f in s.arrows):
                    if not helper.in_topology(r, w):
                        _record(transitivity, Counterexample(
                            axiom='transitivity',
                            object=d.id,
                            description=(
                                f'{helper.describe_sieve(r, w)} pulls back to a covering sieve '
                                f'along every arrow of the covering sieve '
                                f'{helper.describe_sieve(s, w)} but does not cover'
                            ),
                            arrows=helper.sieve_arrow_ids(r, w)
                        ))

    notes.append(f'transitivity sampled {samples} sieves per object with seed {seed}')
    if w.options.literal_paper:
        notes.append('covering sieves: maximal and cover sieves only')
    report = CheckReport.from_checks([maximal, stability, transitivity], notes)
    logger.info('topology axioms on %s: %s', w.name, 'pass' if report.ok else 'fail')
    return report
