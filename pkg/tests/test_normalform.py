import random

import pytest
from hypothesis import given, settings, strategies as st

from lexorder import cfl, oracle
from lexorder.grammar import EmptyLanguage
from lexorder.normalform import (
    FiniteLanguage,
    compute_components,
    eliminate_left_recursion,
    has_left_recursion,
    normalize,
    remove_epsilon,
    remove_units,
)
from util import A_STAR_B, G, W


def same_language(g, h, n=6):
    return cfl.enumerate_words(g, max_len=n) == cfl.enumerate_words(h, max_len=n)


def test_normal_grammar_is_fixed_point():
    ng = normalize(G(A_STAR_B))
    assert set(ng.grammar.productions) == {("S", ("a", "S")), ("S", ("b",))}
    assert ng.is_recursive("S")
    assert not ng.had_epsilon


def test_left_recursion_removed():
    g = G("S -> S a | b")
    ng = normalize(g)
    assert not has_left_recursion(ng.grammar)
    assert same_language(g, ng.grammar)


def test_finite_language_outcome():
    out = normalize(G("S -> a b"))
    assert isinstance(out, FiniteLanguage)
    assert out.words == (W("ab"),)
    assert normalize(G("S -> eps")).words == ((),)


def test_empty_language():
    with pytest.raises(EmptyLanguage):
        normalize(G("S -> a S"))


def test_epsilon_recorded():
    ng = normalize(G("S -> a S | eps"))
    assert ng.had_epsilon
    assert not cfl.member(ng.grammar, ())


def test_components_single_loop():
    comps = compute_components(G(A_STAR_B))
    assert comps.recursive["S"]
    assert comps.escaping["S"] == (("b",),)


def test_components_dag():
    comps = compute_components(G("S -> A B\nA -> a A | a\nB -> b B | b"))
    assert not comps.recursive["S"]
    assert comps.precedes("A", "S") and comps.precedes("B", "S")
    assert not comps.precedes("A", "B")
    assert not comps.equivalent("A", "B")
    order = comps.topological()
    assert order.index(comps.component_of["A"]) < order.index(comps.component_of["S"])


def test_components_mutual():
    comps = compute_components(G("S -> a T b | c\nT -> c S | d", alphabet="a < b < c < d"))
    assert comps.equivalent("S", "T")
    assert comps.recursive["S"] and comps.recursive["T"]


def test_steps_preserve_language():
    g = G("S -> A S | A\nA -> a | eps | B\nB -> b")
    h, had = remove_epsilon(g)
    assert had and not cfl.member(h, ())
    assert same_language(remove_units(h), h)
    lr = G("S -> S a | T b | c\nT -> S c | a", alphabet="a < b < c")
    fixed = eliminate_left_recursion(lr)
    assert not has_left_recursion(fixed)
    assert same_language(lr, fixed, 7)


@settings(max_examples=80)
@given(st.integers(0, 100_000))
def test_normalize_preserves_language(seed):
    g = oracle.random_grammar(random.Random(seed), max_nts=3, max_rhs=3)
    out = normalize(g)
    original = cfl.enumerate_words(g, max_len=7)
    if isinstance(out, FiniteLanguage):
        assert sorted(out.words, key=g.alphabet.key) == original
        return
    h = out.grammar
    assert not has_left_recursion(h)
    assert not cfl.member(h, ())
    got = cfl.enumerate_words(h, max_len=7)
    assert got == [w for w in original if w] and out.had_epsilon == (() in original)
    infinite = cfl.infinite_symbols(h)
    assert set(h.nonterminals) <= infinite
