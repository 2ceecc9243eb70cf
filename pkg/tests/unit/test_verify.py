"""Tests the base and topology verifiers"""
import unittest
import helper
from errors import PreconditionError
from diagrams.models import Diagram, Node
from grammars.models import Grammar, Neighbourhood
from sites import verify
from sites import workspace as site_workspace


def single_object_workspace():
    grammar = Grammar(
        name='g_one',
        alphabet=['a'],
        sorts=['next'],
        shape='none',
        neighbourhoods=[Neighbourhood(
            name='A',
            symbol='a',
            center='1',
            diagram=Diagram(nodes=[Node(id='1', label='a')])
        )]
    )
    return site_workspace.build_workspace(grammar, [])


def check(report, axiom):
    return next(c for c in report.checks if c.axiom == axiom)


class BaseAxiomTests(unittest.TestCase):
    def test_passes(self):
        for name in ('ws_aba', 'ws_alt', 'ws_nbhd_only', 'ws_literal'):
            with self.subTest(workspace=name):
                report = verify.verify_base_axioms(helper.workspace(name))
                self.assertTrue(report.ok)
                self.assertEqual(
                    [c.axiom for c in report.checks],
                    ['composition', 'identity', 'stability', 'transitivity']
                )
                self.assertTrue(all(c.checked > 0 for c in report.checks))
                for c in report.checks:
                    self.assertEqual(len(c.instances), c.checked)
                    self.assertEqual(len(set(c.instances)), c.checked)

    def test_dropped_cover_arrow_breaks_stability(self):
        report = verify.verify_base_axioms(helper.workspace('ws_corrupt'))
        self.assertFalse(report.ok)
        self.assertTrue(check(report, 'identity').passed)
        self.assertTrue(check(report, 'transitivity').passed)
        stability = check(report, 'stability')
        self.assertEqual(len(stability.counterexamples), 1)
        counterexample = stability.counterexamples[0]
        self.assertEqual(counterexample.object, 'D_ABA#0')
        self.assertEqual(counterexample.arrows[-1], 'nbhd:R_a->D_ABA#0@14d6f5b6a3d1')

    def test_single_object(self):
        w = single_object_workspace()
        self.assertEqual([d.id for d in w.objects], ['nbhd:A'])
        self.assertTrue(verify.verify_base_axioms(w).ok)

    def test_instances_name_what_was_checked(self):
        report = verify.verify_base_axioms(helper.workspace('ws_aba'))
        self.assertEqual(
            check(report, 'identity').instances,
            ['nbhd:L_a', 'nbhd:R_a', 'nbhd:M_a', 'nbhd:M_b', 'D_ABA#0']
        )
        self.assertIn(
            'D_ABA#0 family 0 along nbhd:L_a->D_ABA#0@ceb37527d1c8',
            check(report, 'stability').instances
        )

    def test_symmetric_covers(self):
        report = verify.verify_base_axioms(helper.workspace('ws_bab'))
        self.assertTrue(report.ok)
        self.assertEqual(len(report.checks), 4)

    def test_lax_arrows_fail_composition(self):
        report = verify.verify_base_axioms(helper.workspace('ws_bab', lax_cover_compat=True))
        self.assertFalse(report.ok)
        self.assertEqual([c.axiom for c in report.checks], ['composition'])
        counterexample = check(report, 'composition').counterexamples[0]
        self.assertEqual(counterexample.object, 'BAB#0')
        self.assertEqual(counterexample.arrows[1], 'nbhd:N_a->BAB#0@10650e79b356')
        self.assertEqual(
            report.notes, ['the arrows are not closed under composition, base axioms skipped'])


class TopologyAxiomTests(unittest.TestCase):
    def test_passes(self):
        for name in ('ws_aba', 'ws_alt', 'ws_nbhd_only', 'ws_literal'):
            with self.subTest(workspace=name):
                report = verify.verify_topology_axioms(
                    helper.workspace(name), samples=200, seed=0)
                self.assertTrue(report.ok)
                self.assertEqual(
                    [c.axiom for c in report.checks], ['maximal', 'stability', 'transitivity'])
                for c in report.checks:
                    self.assertEqual(len(c.instances), c.checked)
                self.assertIn(
                    'transitivity sampled 200 sieves per object with seed 0', report.notes)

    def test_single_object(self):
        self.assertTrue(verify.verify_topology_axioms(single_object_workspace()).ok)

    def test_lax_arrows_refused(self):
        w = helper.workspace('ws_bab', lax_cover_compat=True)
        with self.assertRaises(PreconditionError) as caught:
            verify.verify_topology_axioms(w, samples=5)
        self.assertIn('not closed under composition', str(caught.exception))

    def test_symmetric_covers(self):
        report = verify.verify_topology_axioms(helper.workspace('ws_bab'), samples=20)
        self.assertTrue(report.ok)

    def test_literal_topology_breaks_transitivity(self):
        w = helper.workspace('ws_literal', literal_paper=True)
        report = verify.verify_topology_axioms(w, samples=50, seed=0)
        self.assertFalse(report.ok)
        self.assertTrue(check(report, 'maximal').passed)
        transitivity = check(report, 'transitivity')
        self.assertFalse(transitivity.passed)
        self.assertEqual(transitivity.counterexamples[0].object, 'D_ABA#0')
        self.assertIn('EMPTY#0->D_ABA#0@cbe5cfdf7c21', transitivity.counterexamples[0].arrows)
        self.assertIn('covering sieves: maximal and cover sieves only', report.notes)

    def test_literal_topology_holds_without_subdiagrams(self):
        w = helper.workspace('ws_alt', literal_paper=True)
        self.assertTrue(verify.verify_topology_axioms(w, samples=50, seed=0).ok)

    def test_deterministic(self):
        first = verify.verify_topology_axioms(helper.workspace('ws_alt'), samples=20, seed=7)
        second = verify.verify_topology_axioms(helper.workspace('ws_alt'), samples=20, seed=7)
        self.assertEqual(first.json(), second.json())

    def test_sampling_is_seeded(self):
        w = helper.workspace('ws_alt')
        d = w.object('D_ABABA#0')
        self.assertEqual(
            verify.sample_sieves(d, w, 10, 3), verify.sample_sieves(d, w, 10, 3))

    def test_size_bound_falls_back(self):
        report = verify.verify_topology_axioms(helper.workspace('ws_alt'), samples=5, max_arrows=4)
        self.assertTrue(report.ok)
        self.assertTrue(any('D_ABABA#0: more than 4 arrows' in note for note in report.notes))


if __name__ == '__main__':
    unittest.main()
