import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from gramgen import G0, G1, GA, grammar_and_words, left_corner_cyclic
from reference import reference_trees, tree_terms
from travparse.clauses import builtin_program
from travparse.engines import Strategy, parse
from travparse.interpreter import run_program
from travparse.oracle import oracle_parse
from travparse.syntax import read_term
from travparse.terms import Struct, canonicalize, unify
from travparse.trees import Branch, Lex, format_tree, from_term, yield_words

SENTENCE = "the dog chased the cat".split()
EGNF = [Strategy.BU_EGNF, Strategy.LC_EGNF]
COUNTERPARTS = [
    ("naive_td", Strategy.TD),
    ("naive_bu", Strategy.BU_NAIVE),
    ("naive_lc", Strategy.LC_NAIVE),
    ("egnf_bu_improved", Strategy.BU_EGNF),
    ("egnf_lc_improved", Strategy.LC_EGNF),
]


def lex(cat, word):
    return Lex(Struct(cat), Struct(word))


def branch(cat, left, right):
    return Branch(Struct(cat), left, right)


G0_TREE = branch("s", branch("np", lex("det", "the"), lex("n", "dog")),
                 branch("vp", lex("v", "chased"), branch("np", lex("det", "the"), lex("n", "cat"))))


class TestParseExamples:
    def test_g0_sentence(self):
        r = parse(G0, SENTENCE, Strategy.BU_EGNF, root=Struct("s"))
        assert r.trees == (G0_TREE,) and r.complete
        assert tree_terms(r) == reference_trees(G0, SENTENCE, Struct("s"))

    def test_ga_three_words_lc(self):
        r = parse(GA, ["t"] * 3, Strategy.LC_EGNF)
        assert len(r.trees) == 2 and r.complete
        assert tree_terms(r) == reference_trees(GA, ["t"] * 3)

    def test_empty_input(self):
        r = parse(G0, [], Strategy.TD)
        assert r.trees == () and r.complete

    def test_td_loops_on_ga(self):
        small = parse(GA, ["t"], Strategy.TD, budget=20_000)
        big = parse(GA, ["t"], Strategy.TD, budget=100_000)
        assert big.trees == (lex("a", "t"),) and not big.complete
        assert small.trees == big.trees and not small.complete

    def test_g1_tree_building_arguments(self):
        r = parse(G1, ["it", "ran"], Strategy.BU_EGNF)
        assert len(r.trees) == 1 and r.complete
        assert r.trees[0].category == read_term("s(tree(s,tree(np,it),tree(vp,ran)))")

    @pytest.mark.parametrize("strategy", list(Strategy))
    def test_every_strategy_finds_g0_sentence(self, strategy):
        r = parse(G0, SENTENCE, strategy, budget=20_000)
        assert r.trees == (G0_TREE,)

    @pytest.mark.parametrize("strategy", list(Strategy))
    def test_unknown_word(self, strategy):
        assert parse(G0, ["the", "unicorn"], strategy, budget=2_000).trees == ()

    @pytest.mark.parametrize("strategy", list(Strategy))
    @pytest.mark.parametrize("budget", [0, -5, 1.5])
    def test_budget_must_be_positive(self, strategy, budget):
        with pytest.raises(ValueError):
            parse(G0, ["the"], strategy, budget=budget)

    def test_accepts_atom_words(self):
        assert parse(G0, [Struct("the"), Struct("dog")]).trees == parse(G0, ["the", "dog"]).trees

    def test_strategy_names(self):
        assert parse(G0, ["the", "dog"], "lc").trees == parse(G0, ["the", "dog"], Strategy.LC_EGNF).trees


class TestOracle:
    def test_g0_sentence(self):
        assert oracle_parse(G0, SENTENCE, Struct("s")) == [G0_TREE]

    def test_ga_four_words(self):
        assert len(oracle_parse(GA, ["t"] * 4)) == 5

    def test_wrong_order(self):
        assert oracle_parse(G0, ["dog", "the"]) == []

    def test_empty(self):
        assert oracle_parse(G0, []) == []

    @pytest.mark.parametrize("n", range(1, 7))
    def test_ga_catalan(self, n):
        assert len(oracle_parse(GA, ["t"] * n)) == [1, 1, 2, 5, 14, 42][n - 1]

    @settings(max_examples=60, deadline=None)
    @given(grammar_and_words())
    def test_matches_reference(self, gw):
        g, words = gw
        assert tree_terms(oracle_parse(g, words)) == reference_trees(g, words)

    @settings(max_examples=60, deadline=None)
    @given(grammar_and_words(terms=True))
    def test_matches_reference_terms(self, gw):
        g, words = gw
        assert tree_terms(oracle_parse(g, words)) == reference_trees(g, words)


class TestYield:
    def test_lex(self):
        assert yield_words(lex("n", "dog")) == ["dog"]

    def test_branch(self):
        assert yield_words(branch("np", lex("det", "the"), lex("n", "dog"))) == ["the", "dog"]

    def test_sentence(self):
        assert yield_words(oracle_parse(G0, SENTENCE)[0]) == SENTENCE

    def test_text(self):
        assert format_tree(G0_TREE.left) == "node(np,node(det,lf(the)),node(n,lf(dog)))"
        assert from_term(G0_TREE.to_term()) == G0_TREE


class TestLeftRecursion:
    @pytest.mark.parametrize("strategy", [Strategy.BU_NAIVE, Strategy.LC_NAIVE])
    def test_naive_never_completes_but_stabilizes(self, strategy):
        oracle = tree_terms(oracle_parse(GA, ["t"] * 3))
        sets = []
        for budget in (2_000, 4_000, 8_000):
            r = parse(GA, ["t"] * 3, strategy, budget=budget)
            assert not r.complete and r.steps == budget
            sets.append(tree_terms(r))
        assert sets[0] == sets[1] == sets[2] == oracle

    @pytest.mark.parametrize("strategy", EGNF)
    @pytest.mark.parametrize("n", range(1, 6))
    def test_egnf_completes(self, strategy, n):
        r = parse(GA, ["t"] * n, strategy)
        assert r.complete and len(r.trees) == [1, 1, 2, 5, 14][n - 1]


@settings(max_examples=80, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(grammar_and_words(max_len=4))
def test_strategy_equivalence(gw):
    g, words = gw
    expected = reference_trees(g, words)
    for strategy in EGNF:
        r = parse(g, words, strategy)
        assert r.complete and tree_terms(r) == expected
    if not left_corner_cyclic(g):
        td = parse(g, words, Strategy.TD)
        assert td.complete and tree_terms(td) == expected


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(grammar_and_words(terms=True, max_len=4))
def test_strategy_equivalence_terms(gw):
    g, words = gw
    expected = reference_trees(g, words)
    for strategy in EGNF:
        r = parse(g, words, strategy)
        assert r.complete and tree_terms(r) == expected


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(grammar_and_words(max_len=4), st.sampled_from(COUNTERPARTS), st.sampled_from([1, 7, 60, 400]))
def test_engine_matches_interpreter(gw, pair, budget):
    g, words = gw
    name, strategy = pair
    assert parse(g, words, strategy, budget=budget) == run_program(builtin_program(name), g, words, budget=budget)


@pytest.mark.parametrize("name, strategy", COUNTERPARTS)
@pytest.mark.parametrize("g, words", [(G0, SENTENCE), (GA, ["t"] * 3), (G1, ["it", "ran"])])
@pytest.mark.parametrize("budget", [10, 300, 3_000])
def test_engine_matches_interpreter_fixtures(name, strategy, g, words, budget):
    assert parse(g, words, strategy, budget=budget) == run_program(builtin_program(name), g, words, budget=budget)


@settings(max_examples=60, deadline=None)
@given(grammar_and_words(terms=True, max_len=4), st.sampled_from(["c0", "c1(X)", "c1(a)", "c2(X,X)", "c0(b,Y)"]))
def test_root_filtering(gw, root_text):
    g, words = gw
    root = read_term(root_text)
    full = parse(g, words, Strategy.BU_EGNF)
    filtered = parse(g, words, Strategy.BU_EGNF, root=root)
    assert filtered.trees == tuple(t for t in full.trees if unify(t.category, root) is not None)
    assert tree_terms(filtered) == reference_trees(g, words, root)


@settings(max_examples=40, deadline=None)
@given(grammar_and_words(max_len=4))
def test_trees_are_canonical_and_cover_input(gw):
    g, words = gw
    r = parse(g, words, Strategy.LC_EGNF)
    for t in r.trees:
        assert yield_words(t) == list(words)
        assert canonicalize(t.to_term()) == t.to_term()
    assert list(r.trees) == sorted(r.trees, key=str)
