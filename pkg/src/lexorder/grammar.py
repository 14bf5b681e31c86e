"""Context-free grammars over linearly ordered alphabets.

A word is a tuple of letters.  Nonterminals are arbitrary hashables: parsed
grammars use identifier strings, while derived grammars such as transducer
images are compacted to small integers.
"""
from __future__ import annotations

import itertools
import re
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, NamedTuple, Sequence

Word = tuple
Symbol = Hashable


class GrammarError(ValueError):
    """Malformed grammar text or inconsistent grammar data."""


class GrammarSyntaxError(GrammarError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class UndeclaredSymbol(GrammarError):
    pass


class DuplicateLetter(GrammarError):
    pass


class EmptyLanguage(ValueError):
    """The grammar generates no word at all."""


@dataclass(frozen=True)
class OrderedAlphabet:
    letters: tuple

    def __post_init__(self):
        if not self.letters:
            raise GrammarError("alphabet must be nonempty")
        seen = set()
        for letter in self.letters:
            if letter in seen:
                raise DuplicateLetter(f"duplicate letter {letter!r}")
            seen.add(letter)

    @cached_property
    def rank(self) -> dict:
        return {letter: i for i, letter in enumerate(self.letters)}

    def __contains__(self, letter) -> bool:
        return letter in self.rank

    def __iter__(self):
        return iter(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def key(self, word: Sequence) -> tuple:
        """Sort key realizing the lexicographic order (prefixes come first)."""
        rank = self.rank
        return tuple(rank[c] for c in word)

    def less(self, a, b) -> bool:
        return self.rank[a] < self.rank[b]


class Production(NamedTuple):
    lhs: Symbol
    rhs: tuple


@dataclass(frozen=True, eq=False)
class Grammar:
    alphabet: OrderedAlphabet
    nonterminals: frozenset
    start: Symbol
    productions: tuple

    def __post_init__(self):
        if self.start not in self.nonterminals:
            raise GrammarError(f"start symbol {self.start!r} is not a nonterminal")
        for lhs, rhs in self.productions:
            if lhs not in self.nonterminals:
                raise GrammarError(f"production lhs {lhs!r} is not a nonterminal")
            for sym in rhs:
                if sym not in self.nonterminals and sym not in self.alphabet:
                    raise UndeclaredSymbol(f"undeclared symbol {sym!r}")

    @classmethod
    def build(cls, alphabet, start, productions: Iterable, nonterminals=()) -> "Grammar":
        """Convenience constructor; deduplicates productions, keeps their order."""
        if not isinstance(alphabet, OrderedAlphabet):
            alphabet = OrderedAlphabet(tuple(alphabet))
        prods = tuple(dict.fromkeys(Production(lhs, tuple(rhs)) for lhs, rhs in productions))
        nts = frozenset(nonterminals) | {p.lhs for p in prods} | {start}
        return cls(alphabet, nts, start, prods)

    @cached_property
    def rules(self) -> dict:
        out = {x: [] for x in self.nonterminals}
        for lhs, rhs in self.productions:
            out[lhs].append(rhs)
        return out

    def is_nonterminal(self, sym) -> bool:
        return sym in self.nonterminals

    @property
    def size(self) -> int:
        """Total right-hand-side length, counting each production at least once."""
        return sum(max(1, len(rhs)) for _, rhs in self.productions)

    def with_start(self, form: Sequence | None = None) -> "Grammar":
        """The same grammar whose start generates the sentential form ``form``."""
        if form is None:
            return self
        form = tuple(form)
        if len(form) == 1 and form[0] in self.nonterminals:
            if form[0] == self.start:
                return self
            return Grammar(self.alphabet, self.nonterminals, form[0], self.productions)
        new = fresh_symbol(self, "start")
        return Grammar(
            self.alphabet,
            self.nonterminals | {new},
            new,
            self.productions + (Production(new, form),),
        )

    def to_text(self) -> str:
        """Render in the line-oriented grammar text format (names are stringified)."""
        names = _display_names(self)
        lines = ["alphabet: " + " < ".join(self.alphabet.letters), f"start: {names[self.start]}"]
        order = [self.start] + [x for x in _first_seen(self) if x != self.start]
        for x in order:
            alts = self.rules.get(x, [])
            if not alts:
                continue
            rendered = [
                " ".join(names.get(s, s) for s in rhs) if rhs else "eps" for rhs in alts
            ]
            lines.append(f"{names[x]} -> " + " | ".join(rendered))
        return "\n".join(lines) + "\n"

    def __str__(self) -> str:
        return self.to_text()


def _first_seen(g: Grammar) -> list:
    seen = dict.fromkeys([g.start])
    for lhs, rhs in g.productions:
        seen.setdefault(lhs)
        for s in rhs:
            if s in g.nonterminals:
                seen.setdefault(s)
    seen.update(dict.fromkeys(sorted(g.nonterminals - set(seen), key=repr)))
    return list(seen)


def _display_names(g: Grammar) -> dict:
    if all(isinstance(x, str) for x in g.nonterminals):
        return {x: x for x in g.nonterminals}
    return {x: f"N{i}" for i, x in enumerate(_first_seen(g))}


def fresh_symbol(g: Grammar, tag: str):
    taken = g.nonterminals
    for k in itertools.count():
        cand = ("#" + tag, k)
        if cand not in taken:
            return cand


def format_word(word: Sequence) -> str:
    if all(isinstance(c, str) and len(c) == 1 for c in word):
        return "".join(word)
    return " ".join(map(str, word))


# --------------------------------------------------------------------------
# text format

_IDENT = re.compile(r"[^\s|#]+")


def parse_grammar(text: str) -> Grammar:
    """Parse the line-oriented grammar format.

    ::

        alphabet: a < b
        start: S
        S -> a S | b      # comment
    """
    header: dict = {}
    raw_rules: list = []  # (lhs, [(rhs tokens with positions)], line)
    lines = text.splitlines()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        col = len(line) - len(line.lstrip()) + 1
        stripped = line.strip()
        if len(header) < 2:
            expected = "alphabet" if not header else "start"
            if not stripped.startswith(expected + ":"):
                raise GrammarSyntaxError(f"expected '{expected}:'", lineno, col)
            header[expected] = (line.split(":", 1)[1], lineno)
            continue
        if "->" not in line:
            raise GrammarSyntaxError("expected 'X -> ...'", lineno, col)
        lhs_part, rhs_part = line.split("->", 1)
        lhs = lhs_part.strip()
        if not lhs or not _IDENT.fullmatch(lhs):
            raise GrammarSyntaxError("bad left-hand side", lineno, col)
        offset = line.index("->") + 3
        alts = []
        pos = 0
        for alt in rhs_part.split("|"):
            tokens = [(m.group(), offset + pos + m.start()) for m in _IDENT.finditer(alt)]
            if not tokens:
                raise GrammarSyntaxError("empty alternative (write 'eps')", lineno, offset + pos)
            alts.append(tokens)
            pos += len(alt) + 1
        raw_rules.append((lhs, alts, lineno))
    if "start" not in header:
        raise GrammarSyntaxError("missing header lines", len(lines) + 1, 1)

    alpha_text, alpha_line = header["alphabet"]
    letters = [t.strip() for t in alpha_text.split("<")]
    if any(not t or not _IDENT.fullmatch(t) for t in letters):
        raise GrammarSyntaxError("bad alphabet declaration", alpha_line, 1)
    if "eps" in letters:
        raise GrammarSyntaxError("'eps' is reserved", alpha_line, 1)
    alphabet = OrderedAlphabet(tuple(letters))

    start_text, start_line = header["start"]
    start = start_text.strip()
    if not _IDENT.fullmatch(start) or start in alphabet:
        raise GrammarSyntaxError("bad start symbol", start_line, 1)

    nonterminals = {lhs for lhs, _, _ in raw_rules}
    for lhs, _, lineno in raw_rules:
        if lhs in alphabet or lhs == "eps":
            raise GrammarSyntaxError(f"letter {lhs!r} used as a nonterminal", lineno, 1)
    if start not in nonterminals:
        raise UndeclaredSymbol(f"start symbol {start!r} has no productions")

    productions = []
    for lhs, alts, lineno in raw_rules:
        for tokens in alts:
            names = [t for t, _ in tokens]
            if names == ["eps"]:
                productions.append((lhs, ()))
                continue
            for name, column in tokens:
                if name == "eps":
                    raise GrammarSyntaxError("'eps' must stand alone", lineno, column)
                if name not in alphabet and name not in nonterminals:
                    raise UndeclaredSymbol(
                        f"line {lineno}, column {column}: undeclared symbol {name!r}"
                    )
            productions.append((lhs, tuple(names)))
    return Grammar.build(alphabet, start, productions, nonterminals)


# --------------------------------------------------------------------------
# fixpoints and clean-up


def nullable_symbols(g: Grammar) -> set:
    nullable: set = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhs in g.productions:
            if lhs not in nullable and all(s in nullable for s in rhs):
                nullable.add(lhs)
                changed = True
    return nullable


def productive_symbols(g: Grammar) -> set:
    prod: set = set()
    changed = True
    nts = g.nonterminals
    while changed:
        changed = False
        for lhs, rhs in g.productions:
            if lhs not in prod and all(s in prod or s not in nts for s in rhs):
                prod.add(lhs)
                changed = True
    return prod


def reachable_symbols(g: Grammar, roots: Iterable | None = None) -> set:
    todo = list(roots) if roots is not None else [g.start]
    seen = set(todo)
    rules = g.rules
    while todo:
        x = todo.pop()
        for rhs in rules.get(x, ()):
            for s in rhs:
                if s in g.nonterminals and s not in seen:
                    seen.add(s)
                    todo.append(s)
    return seen


def reduce_grammar(g: Grammar) -> Grammar:
    """Drop unproductive and unreachable symbols.

    An empty language comes back as a grammar whose start has no productions.
    """
    prod = productive_symbols(g)
    if g.start not in prod:
        return Grammar(g.alphabet, frozenset([g.start]), g.start, ())
    nts = g.nonterminals
    kept = [
        p for p in g.productions
        if p.lhs in prod and all(s in prod or s not in nts for s in p.rhs)
    ]
    g1 = Grammar(g.alphabet, frozenset(prod), g.start, tuple(kept))
    reach = reachable_symbols(g1)
    return Grammar(
        g.alphabet,
        frozenset(reach),
        g.start,
        tuple(p for p in kept if p.lhs in reach),
    )


def compact(g: Grammar) -> Grammar:
    """Rename nonterminals to 0..n-1 (start is 0), dropping unreachable ones."""
    order = [g.start]
    index = {g.start: 0}
    rules = g.rules
    i = 0
    while i < len(order):
        for rhs in rules.get(order[i], ()):
            for s in rhs:
                if s in g.nonterminals and s not in index:
                    index[s] = len(order)
                    order.append(s)
        i += 1
    prods = []
    for x in order:
        for rhs in rules.get(x, ()):
            prods.append(
                Production(index[x], tuple(index[s] if s in index else s for s in rhs))
            )
    return Grammar(g.alphabet, frozenset(range(len(order))), 0, tuple(prods))


def binarize(g: Grammar) -> Grammar:
    """Split right-hand sides longer than two symbols; the language of every
    original nonterminal is unchanged."""
    if all(len(rhs) <= 2 for _, rhs in g.productions):
        return g
    prods = []
    nts = set(g.nonterminals)
    counter = itertools.count()
    for lhs, rhs in g.productions:
        while len(rhs) > 2:
            while True:
                aux = ("#bin", next(counter))
                if aux not in nts:
                    break
            nts.add(aux)
            prods.append(Production(lhs, (rhs[0], aux)))
            lhs, rhs = aux, rhs[1:]
        prods.append(Production(lhs, rhs))
    return Grammar(g.alphabet, frozenset(nts), g.start, tuple(prods))


def strongly_connected_components(nodes: Iterable, edges: dict) -> list:
    """Tarjan's algorithm; components come out in reverse topological order
    (a component is listed after every component it reaches)."""
    index: dict = {}
    low: dict = {}
    stack: list = []
    on_stack: set = set()
    out: list = []
    counter = itertools.count()

    for root in nodes:
        if root in index:
            continue
        work = [(root, iter(edges.get(root, ())))]
        index[root] = low[root] = next(counter)
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if nxt not in index:
                    index[nxt] = low[nxt] = next(counter)
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(edges.get(nxt, ()))))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    x = stack.pop()
                    on_stack.discard(x)
                    comp.append(x)
                    if x == node:
                        break
                out.append(comp)
    return out


def dependency_edges(g: Grammar) -> dict:
    edges = defaultdict(set)
    for lhs, rhs in g.productions:
        for s in rhs:
            if s in g.nonterminals:
                edges[lhs].add(s)
    return edges
