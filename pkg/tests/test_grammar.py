import pytest

from lexorder.grammar import (
    DuplicateLetter,
    GrammarSyntaxError,
    OrderedAlphabet,
    UndeclaredSymbol,
    nullable_symbols,
    parse_grammar,
    productive_symbols,
    reachable_symbols,
    reduce_grammar,
    strongly_connected_components,
)
from util import G


def test_parse_simple():
    g = parse_grammar("alphabet: a < b\nstart: S\nS -> a S | b")
    assert g.nonterminals == {"S"}
    assert len(g.productions) == 2
    assert g.rules["S"] == [("a", "S"), ("b",)]


def test_undeclared_symbol():
    with pytest.raises(UndeclaredSymbol):
        parse_grammar("alphabet: a < b\nstart: S\nS -> a T")


def test_duplicate_letter():
    with pytest.raises(DuplicateLetter):
        parse_grammar("alphabet: a < a\nstart: S\nS -> a")


@pytest.mark.parametrize("text", [
    "start: S\nS -> a",
    "alphabet: a < b\nS -> a",
    "alphabet: a < b\nstart: S\nS a",
    "alphabet: a < b\nstart: S\nS -> a | ",
    "alphabet: a < b\nstart: S\nS -> a eps",
    "alphabet: a < eps\nstart: S\nS -> a",
])
def test_syntax_errors(text):
    with pytest.raises(GrammarSyntaxError):
        parse_grammar(text)


def test_syntax_error_position():
    with pytest.raises(GrammarSyntaxError) as info:
        parse_grammar("alphabet: a\nstart: S\nS -> a\nT")
    assert info.value.line == 4


def test_eps_and_comments():
    g = G("S -> a S | eps   # star\n# whole-line comment")
    assert () in g.rules["S"]
    assert nullable_symbols(g) == {"S"}


def test_alphabet_order():
    al = OrderedAlphabet(("b", "a"))
    assert al.less("b", "a")
    assert al.key(("a",)) > al.key(("b", "b"))


def test_roundtrip_text():
    g = G("S -> a S B | eps\nB -> b")
    h = parse_grammar(g.to_text())
    assert (h.start, h.nonterminals, h.productions) == (g.start, g.nonterminals, g.productions)


def test_reduce_drops_useless():
    g = G("S -> a | A\nA -> a A\nC -> b")
    assert productive_symbols(g) == {"S", "C"}
    assert reachable_symbols(g) == {"S", "A"}
    r = reduce_grammar(g)
    assert r.nonterminals == {"S"}
    assert r.productions == (("S", ("a",)),)


def test_scc_order():
    edges = {"S": {"A"}, "A": {"B"}, "B": {"A"}}
    comps = strongly_connected_components(["S", "A", "B"], edges)
    assert [sorted(c) for c in comps] == [["A", "B"], ["S"]]
