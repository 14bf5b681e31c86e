import itertools

from lexorder.automata import DFA, Transducer
from lexorder.grammar import OrderedAlphabet

AB = OrderedAlphabet(("a", "b"))


def even_as():
    return DFA(AB, [{"a": 1, "b": 0}, {"a": 0, "b": 1}], 0, {0})


def ends_in_b():
    return DFA(AB, [{"a": 0, "b": 1}, {"a": 0, "b": 1}], 0, {1})


def test_boolean_operations():
    e, b = even_as(), ends_in_b()
    both, either, neg = e.intersect(b), e.union(b), e.complement()
    for n in range(6):
        for x in itertools.product("ab", repeat=n):
            assert both.accepts(x) == (e.accepts(x) and b.accepts(x))
            assert either.accepts(x) == (e.accepts(x) or b.accepts(x))
            assert neg.accepts(x) != e.accepts(x)
    assert DFA.universal(AB).accepts(("a", "b", "b"))


def test_transducer_translate():
    # doubles every a, drops b, appends "b" when it ends in the start state
    t = Transducer(AB, [{"a": (0, ("a", "a")), "b": (0, ())}], 0, {0: ("b",)})
    assert t.translate(("a", "b", "a")) == ("a", "a", "a", "a", "b")
    assert even_as().as_transducer().translate(("a", "a")) == ("a", "a")
    assert even_as().as_transducer().translate(("a",)) is None
