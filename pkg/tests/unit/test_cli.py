"""Tests the command line: output, exit codes and JSON reports"""
import unittest
import helper
import json
from click.testing import CliRunner
from grammars.models import RecognitionResult
from main import cli
from models import CheckReport, ValidationReport

ENV = {'LOG_LEVEL': 'WARNING', 'SYNTOP_SAMPLES': None, 'SYNTOP_SEED': None}


def grammar_path(name='g_alt'):
    return helper.fixture('grammars', f'{name}.json')


def diagram_path(name):
    return helper.fixture('diagrams', f'{name}.json')


def workspace_path(name):
    return helper.fixture('workspaces', name)


def presheaf_path(name):
    return helper.fixture('presheaves', f'{name}.json')


class CliTestCase(unittest.TestCase):
    def setUp(self):
        self.runner = CliRunner()

    def invoke(self, *args):
        return self.runner.invoke(cli, list(args), env=ENV)

    def last_line(self, result):
        return result.output.rstrip('\n').split('\n')[-1]


class RecognizeTests(CliTestCase):
    def test_correct(self):
        result = self.invoke('recognize', '--string', 'aba', '--grammar', grammar_path())
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(result.output, 'correct, covers=1\n')

    def test_not_correct(self):
        result = self.invoke('recognize', '--string', 'ab', '--grammar', grammar_path())
        self.assertEqual(result.exit_code, 1)
        self.assertEqual(result.output, 'not correct, covers=0\nuncoverable nodes: 2\n')

    def test_json(self):
        result = self.invoke(
            'recognize', '--string', 'ababa', '--grammar', grammar_path(), '--json')
        self.assertEqual(result.exit_code, 0)
        parsed = RecognitionResult.parse_obj(json.loads(result.output))
        self.assertTrue(parsed.correct)
        self.assertEqual(parsed.covers, 1)

    def test_broken_grammar(self):
        result = self.invoke('recognize', '--string', 'aba', '--grammar', grammar_path('g_broken'))
        self.assertEqual(result.exit_code, 2)
        self.assertIn('error:', result.output)
        self.assertIn('invalid JSON', result.output)

    def test_unknown_symbol(self):
        result = self.invoke('recognize', '--string', 'abc', '--grammar', grammar_path())
        self.assertEqual(result.exit_code, 2)
        self.assertIn("symbol 'c' is not in the alphabet", result.output)


class CoversTests(CliTestCase):
    def test_ambiguous(self):
        result = self.invoke(
            'covers', '--diagram', diagram_path('d_ababa'), '--grammar', grammar_path('g_amb'))
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(self.last_line(result), 'covers=4')
        self.assertIn('D_ABABA#0: 1->L_a, 2->M_b, 3->M_a, 4->M_b, 5->R_a', result.output)

    def test_limit(self):
        result = self.invoke(
            'covers', '--diagram', diagram_path('d_ababa'), '--grammar', grammar_path('g_amb'),
            '--limit', '1')
        self.assertEqual(result.exit_code, 0)
        self.assertIn('(3 more not shown)', result.output)

    def test_uncoverable(self):
        result = self.invoke('covers', '--diagram', diagram_path('ab'), '--grammar', grammar_path())
        self.assertEqual(result.exit_code, 1)
        self.assertEqual(result.output, 'covers=0\nuncoverable nodes: 2\n')

    def test_invalid_diagram(self):
        result = self.invoke(
            'covers', '--diagram', diagram_path('dangling'), '--grammar', grammar_path())
        self.assertEqual(result.exit_code, 2)

    def test_negative_limit(self):
        result = self.invoke(
            'covers', '--diagram', diagram_path('d_aba'), '--grammar', grammar_path(),
            '--limit', '-1')
        self.assertEqual(result.exit_code, 2)
        self.assertIn('--limit', result.output)


class AlphabetTests(CliTestCase):
    def test_text(self):
        result = self.invoke('alphabet', '--grammar', grammar_path())
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(
            result.output,
            'a: L_a, R_a, M_a (occurrences=5)\n'
            'b: M_b (occurrences=5)\n'
            '2 symbol(s)\n'
        )

    def test_json(self):
        result = self.invoke('alphabet', '--grammar', grammar_path('g_bab'), '--json')
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(json.loads(result.output), {
            'grammar': 'g_bab',
            'symbols': [
                {'symbol': 'a', 'family': ['N_a'], 'occurrences': 2},
                {'symbol': 'b', 'family': ['N_b'], 'occurrences': 3},
            ]
        })


class ValidateTests(CliTestCase):
    def test_valid_grammar(self):
        result = self.invoke('validate', '--grammar', grammar_path())
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(result.output, 'ok\n')

    def test_bad_grammar(self):
        result = self.invoke('validate', '--grammar', grammar_path('g_bad'), '--json')
        self.assertEqual(result.exit_code, 1)
        report = ValidationReport.parse_obj(json.loads(result.output))
        self.assertEqual(
            [v.code for v in report.violations],
            ['center-label', 'unknown-symbol', 'unknown-label']
        )

    def test_diagram(self):
        result = self.invoke(
            'validate', '--grammar', grammar_path(), '--diagram', diagram_path('dangling'))
        self.assertEqual(result.exit_code, 1)
        self.assertIn('dangling-edge [e1]', result.output)

    def test_workspace(self):
        self.assertEqual(
            self.invoke('validate', '--workspace', workspace_path('ws_aba')).exit_code, 0)
        self.assertEqual(
            self.invoke('validate', '--workspace', workspace_path('ws_not_correct')).exit_code, 2)

    def test_presheaf(self):
        result = self.invoke(
            'validate', '--workspace', workspace_path('ws_aba'),
            '--presheaf', presheaf_path('f_alt_missing'))
        self.assertEqual(result.exit_code, 1)
        self.assertIn('missing-restriction', result.output)

    def test_subpresheaf(self):
        result = self.invoke(
            'validate', '--workspace', workspace_path('ws_aba'),
            '--presheaf', presheaf_path('f_alt'), '--subpresheaf', presheaf_path('s_not_closed'))
        self.assertEqual(result.exit_code, 1)
        self.assertIn('not-closed', result.output)

    def test_nothing_to_validate(self):
        self.assertEqual(self.invoke('validate').exit_code, 2)


class DiagramCommandTests(CliTestCase):
    def test_export_dot(self):
        result = self.invoke('export-dot', '--diagram', diagram_path('d_aba'))
        self.assertEqual(result.exit_code, 0)
        self.assertTrue(result.output.startswith('digraph "D_ABA" {'))

    def test_export_cover(self):
        result = self.invoke(
            'export-dot', '--diagram', diagram_path('d_aba'), '--grammar', grammar_path())
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(result.output.count('subgraph'), 3)

    def test_export_missing_cover(self):
        result = self.invoke(
            'export-dot', '--diagram', diagram_path('d_aba'), '--grammar', grammar_path(),
            '--cover', '1')
        self.assertEqual(result.exit_code, 2)

    def test_subdiagrams(self):
        result = self.invoke('subdiagrams', '--diagram', diagram_path('d_aba'))
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(self.last_line(result), '6 subdiagram(s)')


class SiteCommandTests(CliTestCase):
    def test_objects(self):
        result = self.invoke('objects', '--workspace', workspace_path('ws_aba'))
        self.assertEqual(result.exit_code, 0)
        self.assertIn('1:L_a,2:M_b,3:R_a', result.output)

    def test_hom(self):
        result = self.invoke('hom', '--workspace', workspace_path('ws_aba'), '--target', 'D_ABA#0')
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(self.last_line(result), '4 arrow(s)')

        result = self.invoke(
            'hom', '--workspace', workspace_path('ws_aba'),
            '--source', 'nbhd:M_b', '--target', 'D_ABA#0', '--json')
        (arrow,) = json.loads(result.output)
        self.assertEqual(arrow['id'], 'nbhd:M_b->D_ABA#0@10650e79b356')
        self.assertEqual(arrow['embedding'], '1:1,2:2,3:3|e1:e1,e2:e2')

    def test_unknown_object(self):
        result = self.invoke('hom', '--workspace', workspace_path('ws_aba'), '--target', 'X#0')
        self.assertEqual(result.exit_code, 2)

    def test_sieves(self):
        result = self.invoke(
            'sieves', '--workspace', workspace_path('ws_aba'), '--object', 'D_ABA#0')
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(self.last_line(result), '9 sieve(s) on D_ABA#0')
        self.assertEqual(result.output.split('\n')[0], '{} [closed]')

        result = self.invoke(
            'sieves', '--workspace', workspace_path('ws_aba'), '--object', 'D_ABA#0', '--closed')
        self.assertEqual(self.last_line(result), '8 sieve(s) on D_ABA#0')

    def test_sieves_size_bound(self):
        result = self.invoke(
            'sieves', '--workspace', workspace_path('ws_aba'), '--object', 'D_ABA#0',
            '--max-arrows', '3')
        self.assertEqual(result.exit_code, 2)
        self.assertIn('exceeds bound 3', result.output)

    def test_check_base(self):
        result = self.invoke('check-base', '--workspace', workspace_path('ws_alt'))
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(self.last_line(result), 'ok')

        result = self.invoke('check-base', '--workspace', workspace_path('ws_corrupt'), '--json')
        self.assertEqual(result.exit_code, 1)
        report = CheckReport.parse_obj(json.loads(result.output))
        self.assertFalse(report.ok)
        self.assertEqual(
            [c.axiom for c in report.checks if c.counterexamples], ['stability'])

    def test_lax_arrows(self):
        result = self.invoke(
            'check-base', '--workspace', workspace_path('ws_bab'), '--lax-cover-compat')
        self.assertEqual(result.exit_code, 1)
        self.assertIn('composition: FAIL', result.output)
        self.assertEqual(self.last_line(result), 'failed')

        result = self.invoke(
            'check-topology', '--workspace', workspace_path('ws_bab'), '--lax-cover-compat')
        self.assertEqual(result.exit_code, 2)
        self.assertIn('not closed under composition', result.output)

        result = self.invoke('check-base', '--workspace', workspace_path('ws_bab'))
        self.assertEqual(result.exit_code, 0)

    def test_check_topology(self):
        result = self.invoke('check-topology', '--workspace', workspace_path('ws_alt'))
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(self.last_line(result), 'ok')

    def test_literal_topology(self):
        result = self.invoke(
            'check-topology', '--workspace', workspace_path('ws_literal'), '--literal-paper',
            '--samples', '20')
        self.assertEqual(result.exit_code, 1)
        self.assertIn('transitivity: FAIL', result.output)
        self.assertEqual(self.last_line(result), 'failed')

    def test_deterministic(self):
        args = ('check-topology', '--workspace', workspace_path('ws_alt'), '--samples', '30',
                '--seed', '5', '--json')
        first = self.invoke(*args)
        second = self.invoke(*args)
        self.assertEqual(first.exit_code, 0)
        self.assertEqual(first.output, second.output)


class SenseCommandTests(CliTestCase):
    def test_terminal_is_a_sheaf(self):
        result = self.invoke(
            'sheaf-check', '--workspace', workspace_path('ws_aba'), '--presheaf', '@terminal')
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(self.last_line(result), 'sheaf')

    def test_mutant(self):
        result = self.invoke(
            'sheaf-check', '--workspace', workspace_path('ws_aba'),
            '--presheaf', presheaf_path('f_alt_mutant'), '--equalizer')
        self.assertEqual(result.exit_code, 1)
        self.assertIn('local and equalizer verdicts agree', result.output)
        self.assertEqual(self.last_line(result), 'not a sheaf')

    def test_equalizer_json(self):
        result = self.invoke(
            'sheaf-check', '--workspace', workspace_path('ws_aba'),
            '--presheaf', presheaf_path('f_alt'), '--equalizer', '--json')
        self.assertEqual(result.exit_code, 0)
        data = json.loads(result.output)
        self.assertTrue(data['local']['ok'])
        self.assertTrue(data['agree'])
        self.assertEqual(data['equalizer'][0]['product_size'], 2)

    def test_invalid_presheaf(self):
        result = self.invoke(
            'sheaf-check', '--workspace', workspace_path('ws_aba'),
            '--presheaf', presheaf_path('f_alt_missing'))
        self.assertEqual(result.exit_code, 2)
        self.assertIn('no restriction given for', result.output)

    def test_classify_all(self):
        result = self.invoke(
            'classify', '--workspace', workspace_path('ws_aba'), '--presheaf', '@terminal',
            '--subpresheaf', presheaf_path('s_cover'))
        self.assertEqual(result.exit_code, 0)
        lines = result.output.split('\n')
        self.assertEqual(lines[:2], ['F is a sheaf', 'S is not a sheaf'])
        self.assertIn('note: closedness not checked: S is not a sheaf', result.output)

    def test_classify_one(self):
        result = self.invoke(
            'classify', '--workspace', workspace_path('ws_aba'),
            '--presheaf', presheaf_path('f_alt'), '--subpresheaf', presheaf_path('s_alt'),
            '--object', 'D_ABA#0', '--sense', 's2')
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(
            result.output,
            "D_ABA#0 's2': {nbhd:R_a->D_ABA#0@14d6f5b6a3d1, "
            'nbhd:M_b->D_ABA#0@10650e79b356} [closed]\n'
        )

    def test_classify_not_closed(self):
        result = self.invoke(
            'classify', '--workspace', workspace_path('ws_aba'),
            '--presheaf', presheaf_path('f_alt'), '--subpresheaf', presheaf_path('s_not_closed'))
        self.assertEqual(result.exit_code, 2)

    def test_skeleton(self):
        result = self.invoke(
            'presheaf-skeleton', '--workspace', workspace_path('ws_aba'),
            '--presheaf', presheaf_path('f_alt'))
        self.assertEqual(result.exit_code, 0)
        data = json.loads(result.output)
        self.assertEqual(data['senses']['D_ABA#0'], ['s1', 's2'])
        self.assertEqual(
            data['restrictions']['nbhd:L_a->D_ABA#0@ceb37527d1c8'], {'s1': 'l1', 's2': 'l2'})


if __name__ == '__main__':
    unittest.main()
