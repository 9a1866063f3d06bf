import random
from fractions import Fraction

import pytest

from letterlink import (
    InvalidEdge,
    NotATree,
    Symbol,
    UndefinedReduction,
    canonicalize,
    default_order,
    distinct_reduce,
    enumerate_distinct_vertex_graphs,
    eval_graph,
    eval_symbol,
    extended_pairing,
    graph_of_symbol,
    parse_graph,
    parse_symbol,
    parse_word,
    reduce_at,
    reduce_full,
)
from letterlink.eil import SymbolGraph, _prufer_trees, canonical_form
from letterlink.lie import lyndon_trees_of_multidegree


class TestParse:
    def test_basic(self):
        g = parse_graph("{v1:a, v2:b, v3:a ; v1->v2, v3->v2}")
        assert g.labels["v1"].letter == "a"
        assert g.edges == (("v1", "v2"), ("v3", "v2"))

    def test_homogeneous_edge_rejected(self):
        with pytest.raises(InvalidEdge):
            parse_graph("{v1:a, v2:a ; v1->v2}")

    def test_homogeneous_edge_ambient(self):
        g = parse_graph("{v1:a, v2:a ; v1->v2}", ambient=True)
        assert len(g.edges) == 1

    def test_single_vertex(self):
        g = parse_graph("{v1:a}")
        assert g.edges == ()

    def test_symbol_labels(self):
        g = parse_graph("{v1:(a)b, v2:c ; v1->v2}")
        assert g.labels["v1"].canonical() == "(a)b"

    def test_cycle_rejected(self):
        with pytest.raises(NotATree):
            parse_graph("{v1:a, v2:b ; v1->v2, v2->v1}")

    def test_disconnected_rejected(self):
        with pytest.raises(NotATree):
            parse_graph("{v1:a, v2:b ;}")


class TestReduce:
    def test_reduce_at_middle(self):
        g = parse_graph("{v1:a, v2:b, v3:c; v1->v2, v2->v3}")
        terms = reduce_at(g, "v2")
        assert len(terms) == 2
        results = {(s, str(graph.labels["v1"]), str(graph.labels.get("v3", "")))
                   for s, graph in terms}
        assert (-1, "(b)a", "c") in results
        assert (1, "a", "(b)c") in results

    def test_single_edge(self):
        g = parse_graph("{v1:a, v2:b; v1->v2}")
        ((sign, graph),) = reduce_at(g, "v1")
        assert sign == 1
        assert graph.labels["v2"].canonical() == "(a)b"

    def test_isolated_vertex(self):
        with pytest.raises(UndefinedReduction):
            reduce_at(parse_graph("{v1:a}"), "v1")

    def test_reduce_full_order_ba(self):
        g = parse_graph("{v1:a, v2:b, v3:c; v1->v2, v2->v3}")
        total = reduce_full(g, ["v2", "v1"])
        assert total.terms == {
            "((b)a)c": Fraction(-1),
            "(a)(b)c": Fraction(1),
        }

    def test_reduce_full_order_ac(self):
        g = parse_graph("{v1:a, v2:b, v3:c; v1->v2, v2->v3}")
        total = reduce_full(g, ["v1", "v3"])
        assert total.terms == {"(a)(c)b": Fraction(-1)}

    def test_single_vertex_empty_order(self):
        g = parse_graph("{v1:(a)b}")
        total = reduce_full(g, [])
        assert total.terms == {"(a)b": Fraction(1)}

    def test_undefined_reduction(self):
        # contracting at the middle of b->a->b forces a b--b edge
        g = parse_graph("{v1:b, v2:a, v3:b; v1->v2, v2->v3}")
        with pytest.raises(UndefinedReduction):
            reduce_full(g, ["v2", "v1"])
        # leaf-first orders stay valid on the same graph
        assert len(reduce_full(g, ["v1", "v2"])) == 1


class TestDefaultOrder:
    def test_leaf_order_is_valid(self):
        g = parse_graph("{v1:a, v2:b, v3:c; v1->v2, v2->v3}")
        order = default_order(g)
        assert len(order) == 2
        total = reduce_full(g, order)
        assert len(total) == 1

    def test_star(self):
        g = parse_graph(
            "{v1:a, v2:b, v3:c, v4:d, v5:e; v1->v5, v2->v5, v3->v5, v4->v5}"
        )
        order = default_order(g)
        assert set(order) == {"v1", "v2", "v3", "v4"}

    def test_single_edge(self):
        g = parse_graph("{v1:a, v2:b; v1->v2}")
        assert len(default_order(g)) == 1


class TestGraphOfSymbol:
    @pytest.mark.parametrize("text", ["(a)b", "((a)b)a", "(a)(c)b"])
    def test_round_trip(self, text):
        sym = parse_symbol(text)
        graph, order = graph_of_symbol(sym)
        assert graph.is_eil()
        total = reduce_full(graph, order)
        assert total.terms == {sym.canonical(): Fraction(1)}

    def test_random_round_trips(self):
        rng = random.Random(17)

        def random_symbol(budget, forbid=None):
            letter = rng.choice([g for g in "abcd" if g != forbid])
            if budget <= 0 or rng.random() < 0.3:
                return Symbol(letter)
            kids = []
            left = budget - 1
            for _ in range(rng.randint(1, 3)):
                child = random_symbol(rng.randint(0, left), forbid=letter)
                kids.append(child)
                left -= child.node_count()
                if left <= 0:
                    break
            return Symbol(letter, tuple(kids))

        for _ in range(100):
            sym = random_symbol(5)
            graph, order = graph_of_symbol(sym)
            assert reduce_full(graph, order).terms == {sym.canonical(): Fraction(1)}


class TestCanonical:
    def test_flip_changes_sign(self):
        fwd = parse_graph("{v1:a, v2:b; v1->v2}")
        back = parse_graph("{v1:a, v2:b; v2->v1}")
        e1, s1 = canonicalize(fwd)
        e2, s2 = canonicalize(back)
        assert e1 == e2 and s1 == -s2

    def test_relabeled_isomorphs_agree(self):
        g1 = parse_graph("{v1:a, v2:b, v3:c; v1->v2, v2->v3}")
        g2 = parse_graph("{x:a, y:b, z:c; x->y, y->z}")
        assert canonicalize(g1) == canonicalize(g2)

    def test_double_flip_keeps_sign(self):
        path = parse_graph("{v1:a, v2:b, v3:c; v1->v2, v2->v3}")
        reversed_path = parse_graph("{v1:a, v2:b, v3:c; v2->v1, v3->v2}")
        e1, s1 = canonicalize(path)
        e2, s2 = canonicalize(reversed_path)
        assert e1 == e2 and s1 == s2

    def test_canonical_form_reorients(self):
        g = parse_graph("{v1:a, v2:b; v2->v1}")
        enc, sign, rep = canonical_form(g)
        assert canonicalize(rep) == (enc, 1)


class TestEnumerate:
    def test_pair(self):
        assert len(enumerate_distinct_vertex_graphs({"a": 1, "b": 1})) == 1

    def test_two_a_one_b(self):
        graphs = enumerate_distinct_vertex_graphs({"a": 2, "b": 1})
        assert len(graphs) == 1
        (g,) = graphs
        assert all("b" in (g.labels[t].letter, g.labels[h].letter)
                   for t, h in g.edges)

    def test_four_star(self):
        assert len(enumerate_distinct_vertex_graphs({"a": 4, "b": 1})) == 1

    def test_prufer_counts(self):
        assert len(list(_prufer_trees(4))) == 16
        assert len(list(_prufer_trees(2))) == 1


class TestDistinctReduce:
    def test_already_distinct(self):
        g = parse_graph("{v1:a, v2:b, v3:c; v1->v2, v2->v3}")
        reduced = distinct_reduce(g)
        for t in lyndon_trees_of_multidegree(g.multidegree()):
            assert extended_pairing(reduced, t) == extended_pairing(g, t)

    def test_homogeneous_pair_is_zero_functional(self):
        g = parse_graph("{v1:a, v2:a; v1->v2}", ambient=True)
        reduced = distinct_reduce(g)
        assert len(reduced) == 0

    def test_arnold_relation_functional(self):
        # the three rotations of a length-two path sum to the zero functional
        g1 = parse_graph("{v1:a, v2:b, v3:c; v1->v2, v2->v3}")
        g2 = parse_graph("{v1:a, v2:b, v3:c; v2->v3, v3->v1}")
        g3 = parse_graph("{v1:a, v2:b, v3:c; v1->v2, v3->v1}")
        for t in lyndon_trees_of_multidegree({"a": 1, "b": 1, "c": 1}):
            total = sum(extended_pairing(g, t) for g in (g1, g2, g3))
            assert total == 0

    def test_arnold_relation_random(self):
        rng = random.Random(23)
        done = 0
        while done < 15:
            k = rng.randint(3, 5)
            labels = [rng.choice("abc") for _ in range(k)]
            edges = rng.choice(list(_prufer_trees(k)))
            adjacency = {}
            for u, v in edges:
                adjacency.setdefault(u, []).append(v)
                adjacency.setdefault(v, []).append(u)
            center = next((v for v, ns in adjacency.items() if len(ns) >= 2), None)
            if center is None:
                continue
            done += 1
            x, y = adjacency[center][:2]
            rest = [e for e in edges if set(e) not in ({x, center}, {y, center})]

            def graph_with(extra):
                es = [(f"v{u + 1}", f"v{v + 1}") for u, v in rest] + [
                    (f"v{u + 1}", f"v{v + 1}") for u, v in extra
                ]
                return SymbolGraph.build(
                    {f"v{i + 1}": Symbol(labels[i]) for i in range(k)},
                    es, ambient=True)

            rotations = [
                graph_with([(x, center), (center, y)]),
                graph_with([(center, y), (y, x)]),
                graph_with([(x, center), (y, x)]),
            ]
            for t in lyndon_trees_of_multidegree(rotations[0].multidegree()):
                assert sum(extended_pairing(g, t) for g in rotations) == 0

    def test_antisymmetry_functional(self):
        g = parse_graph("{v1:a, v2:b, v3:a; v1->v2, v2->v3}")
        flipped = parse_graph("{v1:a, v2:b, v3:a; v1->v2, v3->v2}")
        for t in lyndon_trees_of_multidegree({"a": 2, "b": 1}):
            assert extended_pairing(g, t) + extended_pairing(flipped, t) == 0


class TestEvalGraph:
    def test_single_edge(self):
        g = parse_graph("{v1:a, v2:b; v1->v2}")
        assert eval_graph(g, parse_word("a b a^-1 b^-1")) == 1

    def test_path_matches_symbol(self):
        g = parse_graph("{v1:a, v2:b, v3:a; v1->v2, v2->v3}")
        w = parse_word("[a a, [b, a c]]")
        assert eval_graph(g, w) == eval_symbol(parse_symbol("((a)b)a"), w) == 4

    def test_empty_word(self):
        g = parse_graph("{v1:a, v2:b; v1->v2}")
        assert eval_graph(g, parse_word("")) == 0


class TestOrderIndependence:
    def test_all_orders_small_graph(self):
        import itertools

        g = parse_graph("{v1:a, v2:b, v3:c, v4:a; v1->v2, v2->v3, v3->v4}")
        w = parse_word("[[[a,b],c],a]")
        values = set()
        for order in itertools.permutations(g.ids(), 3):
            try:
                total = reduce_full(g, list(order))
            except UndefinedReduction:
                continue
            from letterlink import eval_symbol_sum

            values.add(eval_symbol_sum(total, w))
        assert len(values) == 1
