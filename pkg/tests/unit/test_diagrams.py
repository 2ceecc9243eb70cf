"""Tests diagram validation, embeddings, stars, the chain codec,
subdiagrams and DOT output"""
import unittest
import helper
import itertools
from collections import Counter
from hypothesis import given, settings, strategies as st
from diagrams import dot
from diagrams import helper as diagram_helper
from grammars import helper as grammar_helper
from diagrams.models import Alphabet, Diagram, Edge, Node, ShapeCondition, SortSet, id_key
from errors import (
    CompositionError, InputError, NotAChainError, PreconditionError, UnknownNodeError
)


ALPHABET = Alphabet(symbols=['a', 'b'])
SORTS = SortSet(sorts=['next', 'link'])
CHAIN = ShapeCondition(kind='chain')
NONE = ShapeCondition(kind='none')

FIXTURE_DIAGRAMS = [
    'd_aba', 'd_ababa', 'empty', 'ab', 'disconnected', 'multi', 'multi_small', 'bab', 'twins'
]


def brute_embeddings(a: Diagram, b: Diagram):
    """Every embedding of a into b by trying every injective node map and
    every injective edge map, as canonical strings"""
    ia = a.index()
    ib = b.index()
    result = []
    for images in itertools.permutations(ib.node_order, len(ia.node_order)):
        node_map = dict(zip(ia.node_order, images))
        if any(ia.labels[v] != ib.labels[w] for v, w in node_map.items()):
            continue
        for edge_images in itertools.permutations(ib.edge_order, len(ia.edge_order)):
            fits = True
            for edge_id, image_id in zip(ia.edge_order, edge_images):
                edge = ia.edges[edge_id]
                image = ib.edges[image_id]
                ends = (node_map[edge.a], node_map[edge.b])
                if edge.sort != image.sort or edge.directed != image.directed:
                    fits = False
                elif edge.directed and (image.a, image.b) != ends:
                    fits = False
                elif not edge.directed and sorted((image.a, image.b)) != sorted(ends):
                    fits = False
                if not fits:
                    break
            if fits:
                result.append(
                    ','.join(f'{v}:{node_map[v]}' for v in ia.node_order)
                    + '|'
                    + ','.join(f'{e}:{x}' for e, x in zip(ia.edge_order, edge_images))
                )
    return result


def all_test_diagrams():
    diagrams = [helper.diagram(name) for name in FIXTURE_DIAGRAMS]
    diagrams.extend(n.diagram for n in helper.grammar().neighbourhoods)
    return diagrams


class ValidateDiagramTests(unittest.TestCase):
    def codes(self, report):
        return [v.code for v in report.violations]

    def test_chain_is_valid(self):
        report = diagram_helper.validate_diagram(helper.diagram('d_aba'), ALPHABET, SORTS, CHAIN)
        self.assertTrue(report.ok)
        self.assertEqual(report.violations, [])

    def test_empty_is_valid(self):
        report = diagram_helper.validate_diagram(helper.diagram('empty'), ALPHABET, SORTS, CHAIN)
        self.assertTrue(report.ok)

    def test_disconnected(self):
        report = diagram_helper.validate_diagram(
            helper.diagram('disconnected'), ALPHABET, SORTS, NONE)
        self.assertFalse(report.ok)
        self.assertEqual(self.codes(report), ['not-connected'])
        self.assertEqual(report.violations[0].ref, '2')

    def test_dangling_lists_every_violation(self):
        report = diagram_helper.validate_diagram(
            helper.diagram('dangling'), ALPHABET, SORTS, CHAIN)
        codes = self.codes(report)
        self.assertIn('duplicate-node', codes)
        self.assertIn('unknown-label', codes)
        self.assertIn('dangling-edge', codes)
        self.assertNotIn('shape', codes)
        dangling = [v for v in report.violations if v.code == 'dangling-edge']
        self.assertEqual(dangling[0].ref, 'e1')

    def test_multigraph_without_shape(self):
        report = diagram_helper.validate_diagram(helper.diagram('multi'), ALPHABET, SORTS, NONE)
        self.assertTrue(report.ok)

    def test_multigraph_is_not_a_chain(self):
        report = diagram_helper.validate_diagram(helper.diagram('multi'), ALPHABET, SORTS, CHAIN)
        self.assertFalse(report.ok)
        self.assertEqual(set(self.codes(report)), {'shape'})

    def test_unknown_sort(self):
        report = diagram_helper.validate_diagram(
            helper.diagram('multi'), ALPHABET, SortSet(sorts=['next']), NONE)
        self.assertEqual(self.codes(report), ['unknown-sort', 'unknown-sort'])
        self.assertEqual([v.ref for v in report.violations], ['e3', 'e4'])

    def test_unknown_shape(self):
        report = diagram_helper.validate_diagram(
            helper.diagram('d_aba'), ALPHABET, SORTS, ShapeCondition(kind='cycle'))
        self.assertEqual(self.codes(report), ['unknown-shape'])

    def test_rooted_tree(self):
        cond = ShapeCondition(kind='rooted-tree')
        self.assertTrue(
            diagram_helper.validate_diagram(helper.diagram('d_aba'), ALPHABET, SORTS, cond).ok)
        self.assertFalse(
            diagram_helper.validate_diagram(helper.diagram('multi'), ALPHABET, SORTS, cond).ok)


class LoadDiagramTests(unittest.TestCase):
    def test_name_from_file(self):
        self.assertEqual(helper.diagram('d_aba').name, 'D_ABA')
        self.assertEqual(helper.diagram('multi').name, 'multi')

    def test_missing_file(self):
        with self.assertRaises(InputError) as cm:
            diagram_helper.load_diagram(helper.fixture('diagrams', 'nope.json'))
        self.assertTrue(cm.exception.path.endswith('nope.json'))

    def test_invalid_json(self):
        with self.assertRaises(InputError) as cm:
            diagram_helper.load_diagram(helper.fixture('grammars', 'g_broken.json'))
        self.assertIn('invalid JSON', str(cm.exception))

    def test_not_an_object(self):
        with self.assertRaises(InputError):
            diagram_helper.parse_diagram([], 'x')


class EmbeddingTests(unittest.TestCase):
    def test_matches_brute_force(self):
        diagrams = all_test_diagrams()
        for a in diagrams:
            for b in diagrams:
                with self.subTest(source=a.name, target=b.name):
                    found = [e.canonical() for e in diagram_helper.enumerate_embeddings(a, b)]
                    self.assertEqual(found, brute_embeddings(a, b))

    def test_found_embeddings_are_valid(self):
        diagrams = all_test_diagrams()
        for a in diagrams:
            for b in diagrams:
                for emb in diagram_helper.iter_embeddings(a, b):
                    self.assertEqual(diagram_helper.embedding_violations(emb), [])

    def test_identity_comes_first(self):
        for d in all_test_diagrams():
            with self.subTest(diagram=d.name):
                found = diagram_helper.enumerate_embeddings(d, d)
                self.assertEqual(found[0], diagram_helper.identity_embedding(d))
                self.assertTrue(found[0].is_identity())

    def test_aba_into_ababa(self):
        found = diagram_helper.enumerate_embeddings(
            helper.diagram('d_aba'), helper.diagram('d_ababa'))
        self.assertEqual(
            [e.canonical() for e in found],
            ['1:1,2:2,3:3|e1:e1,e2:e2', '1:3,2:4,3:5|e1:e3,e2:e4']
        )

    def test_parallel_edges_give_automorphisms(self):
        multi = helper.diagram('multi')
        found = diagram_helper.enumerate_embeddings(multi, multi)
        self.assertEqual(len(found), 2)
        self.assertEqual(found[1].edge_map['e1'], 'e2')

    def test_fixed_nodes(self):
        found = diagram_helper.enumerate_embeddings(
            helper.diagram('ab'), helper.diagram('d_ababa'), fixed={'1': '3'})
        self.assertEqual([e.canonical() for e in found], ['1:3,2:4|e1:e3'])

    def test_empty_embeds_once(self):
        empty = helper.diagram('empty')
        for d in all_test_diagrams():
            self.assertEqual(
                [e.canonical() for e in diagram_helper.enumerate_embeddings(empty, d)], ['|'])

    def test_no_embedding_into_smaller(self):
        self.assertEqual(
            diagram_helper.enumerate_embeddings(helper.diagram('d_ababa'), helper.diagram('d_aba')),
            []
        )

    def test_ids_equal_as_numbers(self):
        self.assertEqual(sorted(['10', '1', '9', '01'], key=id_key), ['01', '1', '9', '10'])
        twins = helper.diagram('twins')
        self.assertEqual(twins.index().node_order, ['01', '1'])
        self.assertEqual(
            [e.canonical() for e in diagram_helper.enumerate_embeddings(twins, twins)],
            ['01:01,1:1|e:e', '01:1,1:01|e:e']
        )

    def test_skeleton(self):
        graph = diagram_helper.skeleton(helper.diagram('multi'), {'1': '3'})
        self.assertEqual(graph['1']['2']['slots'], Counter({('both', 'next'): 2}))
        self.assertEqual(graph['2']['3']['slots'], Counter({('out', 'link'): 1}))
        self.assertEqual(graph['3']['2']['slots'], Counter({('in', 'link'): 1}))
        self.assertEqual(graph.nodes['3']['loops'], Counter({(False, 'link'): 1}))
        self.assertEqual(graph.nodes['1']['pin'], '3')
        self.assertIsNone(graph.nodes['2']['pin'])

    def test_long_chains(self):
        long = diagram_helper.encode_chain('ab' * 20 + 'a')
        found = diagram_helper.enumerate_embeddings(diagram_helper.encode_chain('aba'), long)
        self.assertEqual(len(found), 20)
        self.assertEqual(found[-1].canonical(), '1:39,2:40,3:41|e1:e39,e2:e40')
        self.assertEqual(len(diagram_helper.enumerate_embeddings(long, long)), 1)


class CompositionTests(unittest.TestCase):
    def chain_of_embeddings(self):
        """Every composable triple of embeddings along these diagrams"""
        grammar = helper.grammar()
        steps = [
            (grammar.neighbourhood('M_b').diagram, helper.diagram('d_aba')),
            (helper.diagram('d_aba'), helper.diagram('d_ababa')),
            (helper.diagram('d_ababa'), helper.diagram('d_ababa')),
        ]
        return [diagram_helper.enumerate_embeddings(a, b) for a, b in steps]

    def test_identity_laws(self):
        for d in all_test_diagrams():
            ident = diagram_helper.identity_embedding(d)
            for emb in diagram_helper.enumerate_embeddings(d, helper.diagram('d_ababa')):
                self.assertEqual(diagram_helper.compose_embeddings(emb, ident), emb)
            for emb in diagram_helper.enumerate_embeddings(helper.diagram('ab'), d):
                self.assertEqual(diagram_helper.compose_embeddings(ident, emb), emb)

    def test_associative(self):
        first, second, third = self.chain_of_embeddings()
        self.assertTrue(first and second and third)
        for f, g, h in itertools.product(first, second, third):
            left = diagram_helper.compose_embeddings(
                h, diagram_helper.compose_embeddings(g, f))
            right = diagram_helper.compose_embeddings(
                diagram_helper.compose_embeddings(h, g), f)
            self.assertEqual(left, right)

    def test_composite_is_an_embedding(self):
        first, second, _ = self.chain_of_embeddings()
        for f, g in itertools.product(first, second):
            composite = diagram_helper.compose_embeddings(g, f)
            self.assertEqual(diagram_helper.embedding_violations(composite), [])
            self.assertEqual(composite.target.name, 'D_ABABA')

    def test_mismatched_composition(self):
        aba = helper.diagram('d_aba')
        ab = helper.diagram('ab')
        with self.assertRaises(CompositionError):
            diagram_helper.compose_embeddings(
                diagram_helper.identity_embedding(aba), diagram_helper.identity_embedding(ab))

    def test_same_name_different_edges(self):
        nodes = [Node(id=v, label='a') for v in ('1', '2', '3')]
        first = Diagram(name='T', nodes=nodes, edges=[
            Edge(id='e1', a='1', b='2', sort='next', directed=True),
            Edge(id='e2', a='2', b='3', sort='next', directed=True),
        ])
        second = Diagram(name='T', nodes=nodes, edges=[
            Edge(id='e1', a='2', b='3', sort='next', directed=True),
            Edge(id='e2', a='1', b='2', sort='next', directed=True),
        ])
        with self.assertRaises(CompositionError):
            diagram_helper.compose_embeddings(
                diagram_helper.identity_embedding(first),
                diagram_helper.identity_embedding(second)
            )
        self.assertEqual(
            diagram_helper.compose_embeddings(
                diagram_helper.identity_embedding(first),
                diagram_helper.identity_embedding(Diagram.parse_obj(first.dict()))
            ),
            diagram_helper.identity_embedding(first)
        )


class StarTests(unittest.TestCase):
    def test_star(self):
        self.assertEqual(diagram_helper.star(helper.diagram('d_aba'), '2'), {'e1', 'e2'})
        self.assertEqual(diagram_helper.star(helper.diagram('d_aba'), '1'), {'e1'})

    def test_loop_counted_once(self):
        self.assertEqual(diagram_helper.star(helper.diagram('multi'), '3'), {'e3', 'e4', 'e5'})

    def test_unknown_node(self):
        with self.assertRaises(UnknownNodeError):
            diagram_helper.star(helper.diagram('d_aba'), '9')

    def test_saturation(self):
        grammar = helper.grammar()
        aba = helper.diagram('d_aba')
        m_b = grammar.neighbourhood('M_b')
        (emb,) = diagram_helper.enumerate_embeddings(m_b.diagram, aba)
        self.assertTrue(diagram_helper.is_star_saturated(emb, '2'))

        l_a = grammar.neighbourhood('L_a')
        (emb,) = diagram_helper.enumerate_embeddings(l_a.diagram, aba)
        self.assertTrue(diagram_helper.is_star_saturated(emb, '1'))
        self.assertFalse(diagram_helper.is_star_saturated(emb, '2'))

    def test_saturation_needs_a_source_node(self):
        emb = diagram_helper.identity_embedding(helper.diagram('ab'))
        with self.assertRaises(UnknownNodeError):
            diagram_helper.is_star_saturated(emb, '7')


class ChainTests(unittest.TestCase):
    def test_encode(self):
        d = diagram_helper.encode_chain('ababa')
        self.assertEqual([n.label for n in d.nodes], list('ababa'))
        self.assertEqual(len(d.edges), 4)
        self.assertTrue(all(e.directed and e.sort == 'next' for e in d.edges))
        self.assertTrue(
            diagram_helper.validate_diagram(d, ALPHABET, SORTS, CHAIN).ok)

    def test_round_trip_every_short_string(self):
        count = 0
        for length in range(1, 9):
            for symbols in itertools.product('ab', repeat=length):
                s = ''.join(symbols)
                self.assertEqual(diagram_helper.decode_chain(diagram_helper.encode_chain(s)), s)
                count += 1
        self.assertEqual(count, 510)

    @settings(max_examples=100, deadline=None)
    @given(st.text(alphabet='abc', min_size=1, max_size=30))
    def test_round_trip(self, s):
        self.assertEqual(diagram_helper.decode_chain(diagram_helper.encode_chain(s)), s)

    def test_decode_fixture(self):
        self.assertEqual(diagram_helper.decode_chain(helper.diagram('d_ababa')), 'ababa')

    def test_empty_string(self):
        with self.assertRaises(PreconditionError):
            diagram_helper.encode_chain('')

    def test_decode_rejects(self):
        with self.assertRaises(NotAChainError):
            diagram_helper.decode_chain(helper.diagram('multi'))
        with self.assertRaises(NotAChainError):
            diagram_helper.decode_chain(helper.diagram('empty'))


class SubdiagramTests(unittest.TestCase):
    def test_aba(self):
        found = diagram_helper.enumerate_subdiagrams(helper.diagram('d_aba'))
        self.assertEqual(
            [[v for v, _ in inclusion.nodes] for _, inclusion in found],
            [['1'], ['2'], ['3'], ['1', '2'], ['2', '3'], ['1', '2', '3']]
        )
        for sub, inclusion in found:
            self.assertEqual(diagram_helper.embedding_violations(inclusion), [])
            self.assertTrue(sub.name.startswith('D_ABA['))

    def test_limit(self):
        self.assertEqual(len(diagram_helper.enumerate_subdiagrams(helper.diagram('d_aba'), 2)), 2)

    def test_parallel_edges_kept_apart(self):
        found = diagram_helper.enumerate_subdiagrams(helper.diagram('multi_small'))
        edge_sets = [[e for e, _ in inclusion.edges] for _, inclusion in found]
        self.assertIn(['e1'], edge_sets)
        self.assertIn(['e1', 'e2'], edge_sets)

    def test_unknown_node(self):
        with self.assertRaises(UnknownNodeError):
            diagram_helper.induced_subdiagram(helper.diagram('d_aba'), ['4'])


class DotTests(unittest.TestCase):
    def test_diagram(self):
        text = dot.diagram_to_dot(helper.diagram('d_aba'))
        self.assertTrue(text.startswith('digraph "D_ABA" {'))
        self.assertIn('"1" -> "2" [label="next", dir=forward];', text)
        self.assertTrue(text.rstrip().endswith('}'))

    def test_undirected(self):
        text = dot.diagram_to_dot(helper.diagram('multi'))
        self.assertIn('"3" -> "3" [label="link", dir=none];', text)

    def test_cover(self):
        aba = helper.diagram('d_aba')
        (cover,) = grammar_helper.find_covers(aba, helper.grammar())
        text = dot.cover_to_dot(aba, cover.entries)
        self.assertEqual(text.count('subgraph'), 3)
        self.assertIn('label="M_b at 2";', text)
        self.assertIn('"2@2" [label="b", peripheries=2];', text)


if __name__ == '__main__':
    unittest.main()
