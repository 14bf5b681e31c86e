"""Normal form used by the limit computations.

After :func:`normalize` the grammar has no left-recursive nonterminal and
every nonterminal is usable and generates an infinite language of nonempty
words.  Nonrecursive nonterminals are kept rather than inlined; the limit
computation treats them like the start symbol.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import cfl
from .grammar import (
    EmptyLanguage,
    Grammar,
    dependency_edges,
    nullable_symbols,
    reduce_grammar,
    strongly_connected_components,
)


@dataclass(frozen=True)
class FiniteLanguage:
    """Outcome of :func:`normalize` for grammars with a finite language."""

    words: tuple

    def __len__(self) -> int:
        return len(self.words)


@dataclass(frozen=True)
class Components:
    component_of: dict
    members: dict  # component id -> tuple of nonterminals
    below: dict  # component id -> frozenset of component ids strictly below it
    recursive: dict
    escaping: dict  # nonterminal -> tuple of escaping right-hand sides

    def precedes(self, y, x) -> bool:
        """``y ≺ x``."""
        return self.component_of[y] in self.below[self.component_of[x]]

    def equivalent(self, x, y) -> bool:
        return self.component_of[x] == self.component_of[y]

    def topological(self) -> list:
        """Component ids, each after every component below it."""
        return sorted(self.members, key=lambda c: len(self.below[c]))


@dataclass(frozen=True)
class NormalizedGrammar:
    grammar: Grammar
    had_epsilon: bool
    components: Components = field(repr=False)

    @property
    def start(self):
        return self.grammar.start

    @property
    def nonterminals(self):
        return self.grammar.nonterminals

    def is_recursive(self, x) -> bool:
        return self.components.recursive[x]


def compute_components(g: Grammar) -> Components:
    edges = dependency_edges(g)
    comps = strongly_connected_components(sorted(g.nonterminals, key=repr), edges)
    component_of = {x: i for i, comp in enumerate(comps) for x in comp}
    members = {i: tuple(comp) for i, comp in enumerate(comps)}
    below: dict = {}
    # Tarjan lists a component after every component it reaches
    for i, comp in enumerate(comps):
        acc = set()
        for x in comp:
            for y in edges.get(x, ()):
                j = component_of[y]
                if j != i:
                    acc.add(j)
                    acc |= below[j]
        below[i] = frozenset(acc)
    recursive = {}
    for x in g.nonterminals:
        c = component_of[x]
        recursive[x] = len(members[c]) > 1 or x in edges.get(x, ())
    escaping = {
        x: tuple(
            rhs for rhs in g.rules[x]
            if all(s not in g.nonterminals or component_of[s] != component_of[x] for s in rhs)
        )
        for x in g.nonterminals
    }
    return Components(component_of, members, below, recursive, escaping)


# --------------------------------------------------------------------------
# pipeline steps


def remove_epsilon(g: Grammar) -> tuple:
    """Language minus the empty word, and whether the empty word was in it."""
    nullable = nullable_symbols(g)
    had = g.start in nullable
    prods = []
    for lhs, rhs in g.productions:
        options = [((s,), ()) if s in nullable else ((s,),) for s in rhs]
        for choice in itertools.product(*options):
            new = tuple(itertools.chain.from_iterable(choice))
            if new:
                prods.append((lhs, new))
    return Grammar.build(g.alphabet, g.start, prods, g.nonterminals), had


def remove_units(g: Grammar) -> Grammar:
    nts = g.nonterminals
    unit = {x: {x} for x in nts}
    changed = True
    while changed:
        changed = False
        for lhs, rhs in g.productions:
            if len(rhs) == 1 and rhs[0] in nts:
                for x in nts:
                    if lhs in unit[x] and rhs[0] not in unit[x]:
                        unit[x].add(rhs[0])
                        changed = True
    prods = []
    for x in sorted(nts, key=repr):
        for y in sorted(unit[x], key=repr):
            for rhs in g.rules[y]:
                if not (len(rhs) == 1 and rhs[0] in nts):
                    prods.append((x, rhs))
    first = [p for p in prods if p[0] == g.start]
    return Grammar.build(g.alphabet, g.start, first + prods, g.nonterminals)


def left_corner_edges(g: Grammar) -> dict:
    """X -> Y when some X-production starts with Y (ε-free grammars)."""
    edges: dict = {}
    for lhs, rhs in g.productions:
        if rhs and rhs[0] in g.nonterminals:
            edges.setdefault(lhs, set()).add(rhs[0])
    return edges


def left_recursive_symbols(g: Grammar) -> set:
    """Nonterminals on a left-corner cycle (ε-free grammars)."""
    edges = left_corner_edges(g)
    out: set = set()
    for comp in strongly_connected_components(sorted(g.nonterminals, key=repr), edges):
        if len(comp) > 1 or comp[0] in edges.get(comp[0], ()):
            out.update(comp)
    return out


def has_left_recursion(g: Grammar) -> bool:
    return bool(left_recursive_symbols(g))


def eliminate_left_recursion(g: Grammar) -> Grammar:
    """Left-corner transform applied to the left-recursive nonterminals only.

    For a left-recursive ``A`` the fresh symbol ``("#lc", A, B)`` derives
    what follows a completed left corner ``B`` of ``A``.  The result stays
    polynomial in size, unlike repeated substitution.  Requires an ε-free
    grammar without unit cycles; the output is ε-free without left recursion.
    """
    rec = left_recursive_symbols(g)
    if not rec:
        return g
    edges = left_corner_edges(g)
    corners: dict = {}  # A -> left-recursive left corners of A, A included
    for a in rec:
        seen = {a}
        stack = [a]
        while stack:
            for y in edges.get(stack.pop(), ()):
                if y in rec and y not in seen:
                    seen.add(y)
                    stack.append(y)
        corners[a] = seen

    def rest(a, b):
        return ("#lc", a, b)

    prods = [(lhs, rhs) for lhs, rhs in g.productions if lhs not in rec]
    for a in sorted(rec, key=repr):
        for b in sorted(corners[a], key=repr):
            for rhs in g.rules[b]:
                head = rhs[0]
                if head not in rec:
                    prods.append((a, rhs + (rest(a, b),)))
                elif head in corners[a]:
                    prods.append((rest(a, head), rhs[1:] + (rest(a, b),)))
        prods.append((rest(a, a), ()))
    nts = set(g.nonterminals) | {lhs for lhs, _ in prods}
    out = reduce_grammar(Grammar.build(g.alphabet, g.start, prods, nts))
    out, _ = remove_epsilon(out)
    return reduce_grammar(out)


def _substitute(g: Grammar, victims: dict) -> Grammar:
    """Replace each occurrence of a victim nonterminal by each of its expansions."""
    prods = []
    for lhs, rhs in g.productions:
        if lhs in victims:
            continue
        options = [victims[s] if s in victims else ((s,),) for s in rhs]
        for choice in itertools.product(*options):
            prods.append((lhs, tuple(itertools.chain.from_iterable(choice))))
    return Grammar.build(g.alphabet, g.start, prods, g.nonterminals - set(victims))


def inline_finite(g: Grammar):
    """Substitute the words of every finite-language nonterminal.

    Returns a FiniteLanguage when the start symbol itself is finite.
    """
    infinite = cfl.infinite_symbols(g)
    finite = {x for x in g.nonterminals if x not in infinite}
    if g.start in finite:
        return FiniteLanguage(tuple(cfl.finite_words(g)))
    if not finite:
        return g
    victims = {x: tuple(cfl.finite_words(g, (x,))) for x in finite}
    return _substitute(g, victims)


def normalize(g: Grammar):
    """Normal form of ``g``, or a :class:`FiniteLanguage` for finite languages.

    Raises EmptyLanguage when ``L(g)`` is empty.
    """
    g = reduce_grammar(g)
    if not g.productions:
        raise EmptyLanguage("grammar generates no words")
    g, had_epsilon = remove_epsilon(g)
    g = reduce_grammar(g)
    if not g.productions:
        return FiniteLanguage(((),))
    g = reduce_grammar(remove_units(g))
    if has_left_recursion(g):
        g = reduce_grammar(eliminate_left_recursion(g))
    inlined = inline_finite(g)
    if isinstance(inlined, FiniteLanguage):
        words = inlined.words
        if had_epsilon:
            words = ((),) + words
        return FiniteLanguage(words)
    g = reduce_grammar(inlined)
    return NormalizedGrammar(g, had_epsilon, compute_components(g))
