"""Decision procedures and closure constructions for context-free languages.

Every construction returns a reduced, compacted grammar (integer
nonterminals, start ``0``).  Operations take an optional sentential form
``form``; when given, the language in question is ``L(form)`` instead of the
language of the grammar's start symbol.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from typing import Iterable, Sequence

from .automata import DFA, Transducer
from .grammar import (
    Grammar,
    OrderedAlphabet,
    Production,
    binarize,
    compact,
    dependency_edges,
    nullable_symbols,
    productive_symbols,
    reduce_grammar,
    strongly_connected_components,
)

DEFAULT_CAP = 200_000
UNARY = OrderedAlphabet(("a",))


class CapExceeded(RuntimeError):
    """Enumeration produced more words than the configured cap."""


def _prepared(g: Grammar, form) -> Grammar:
    return reduce_grammar(g.with_start(form))


def is_empty(g: Grammar, form: Sequence | None = None) -> bool:
    g = g.with_start(form)
    return g.start not in productive_symbols(g)


def _nonempty_capable(g: Grammar) -> set:
    """Nonterminals deriving at least one nonempty word (g reduced)."""
    out: set = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhs in g.productions:
            if lhs in out:
                continue
            if any(s not in g.nonterminals or s in out for s in rhs):
                out.add(lhs)
                changed = True
    return out


def infinite_symbols(g: Grammar) -> set:
    """Nonterminals of the reduced grammar ``g`` with an infinite language."""
    grow = _nonempty_capable(g)
    edges = dependency_edges(g)
    comps = strongly_connected_components(sorted(g.nonterminals, key=repr), edges)
    comp_of = {x: i for i, comp in enumerate(comps) for x in comp}
    pumping = set()
    for lhs, rhs in g.productions:
        c = comp_of[lhs]
        for i, s in enumerate(rhs):
            if s in g.nonterminals and comp_of[s] == c:
                rest = rhs[:i] + rhs[i + 1:]
                if any(t not in g.nonterminals or t in grow for t in rest):
                    pumping.add(c)
    # components are listed after everything they reach
    infinite_comp: set = set()
    for i, comp in enumerate(comps):
        if i in pumping or any(
            comp_of[y] in infinite_comp for x in comp for y in edges.get(x, ())
        ):
            infinite_comp.add(i)
    return {x for x in g.nonterminals if comp_of[x] in infinite_comp}


def is_finite(g: Grammar, form: Sequence | None = None) -> bool:
    g = _prepared(g, form)
    if not g.productions:
        return True
    return g.start not in infinite_symbols(g)


def _length_table(g: Grammar, max_len: int, cap: int) -> dict:
    """words[X][n] = set of words of length n derivable from X, n <= max_len."""
    bg = binarize(g)
    nts = bg.nonterminals
    table = {x: [set() for _ in range(max_len + 1)] for x in nts}
    total = 0

    def words_of(sym, n):
        if sym in nts:
            return table[sym][n]
        return ((sym,),) if n == 1 else ()

    for n in range(max_len + 1):
        changed = True
        while changed:
            changed = False
            for lhs, rhs in bg.productions:
                bucket = table[lhs][n]
                before = len(bucket)
                if not rhs:
                    if n == 0:
                        bucket.add(())
                elif len(rhs) == 1:
                    bucket.update(words_of(rhs[0], n))
                else:
                    a, b = rhs
                    for i in range(n + 1):
                        left = words_of(a, i)
                        if not left:
                            continue
                        right = words_of(b, n - i)
                        if not right:
                            continue
                        bucket.update(x + y for x in left for y in right)
                if len(bucket) != before:
                    changed = True
                    total += len(bucket) - before
                    if total > cap:
                        raise CapExceeded(f"more than {cap} words while enumerating")
    return table


def enumerate_words(g: Grammar, form: Sequence | None = None, max_len: int = 6,
                    cap: int = DEFAULT_CAP) -> list:
    """``L(form)`` restricted to words of length <= max_len, lexicographically sorted."""
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    g = _prepared(g, form)
    if not g.productions:
        return []
    table = _length_table(g, max_len, cap)
    words = set().union(*table[g.start])
    return sorted(words, key=g.alphabet.key)


def longest_word_length(g: Grammar, form: Sequence | None = None) -> int | None:
    """Exact maximum word length of a finite language (None if empty)."""
    g = _prepared(g, form)
    if not g.productions:
        return None
    if g.start in infinite_symbols(g):
        raise ValueError("language is infinite")
    best: dict = {}
    changed = True
    while changed:
        changed = False
        for lhs, rhs in g.productions:
            total = 0
            for s in rhs:
                if s in g.nonterminals:
                    if s not in best:
                        break
                    total += best[s]
                else:
                    total += 1
            else:
                if total > best.get(lhs, -1):
                    best[lhs] = total
                    changed = True
    return best[g.start]


def finite_words(g: Grammar, form: Sequence | None = None, cap: int = DEFAULT_CAP) -> list:
    """All words of a finite language, sorted; exact (no length cut-off)."""
    n = longest_word_length(g, form)
    if n is None:
        return []
    return enumerate_words(g, form, n, cap)


def shortest_word(g: Grammar, form: Sequence | None = None):
    """Shortest member, ties broken lexicographically; None for the empty language."""
    g = _prepared(g, form)
    if not g.productions:
        return None
    key = g.alphabet.key
    best: dict = {}
    changed = True
    while changed:
        changed = False
        for lhs, rhs in g.productions:
            parts = []
            for s in rhs:
                if s in g.nonterminals:
                    if s not in best:
                        break
                    parts.append(best[s])
                else:
                    parts.append((s,))
            else:
                word = tuple(itertools.chain.from_iterable(parts))
                old = best.get(lhs)
                if old is None or (len(word), key(word)) < (len(old), key(old)):
                    best[lhs] = word
                    changed = True
    return best[g.start]


# --------------------------------------------------------------------------
# image of a CFL under a deterministic sequential transducer (triple construction)


def transducer_image(g: Grammar, machine: Transducer, out_alphabet: OrderedAlphabet,
                     form: Sequence | None = None) -> Grammar:
    """Grammar for ``{machine(x) : x in L(form), machine accepts x}``."""
    g = _prepared(g, form)
    if not g.productions:
        return _empty_grammar(out_alphabet)
    bg = binarize(g)
    nts = bg.nonterminals
    rules = bg.rules
    steps = machine.steps

    # demand-driven relation: ends[(X, p)] = states reachable after reading a word of L(X) from p
    ends: dict = defaultdict(set)
    called = {(bg.start, machine.start)}
    order = [(bg.start, machine.start)]
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(order):
            x, p = order[i]
            i += 1
            acc = ends[(x, p)]
            for rhs in rules[x]:
                cur = {p}
                for sym in rhs:
                    nxt = set()
                    for q in cur:
                        if sym in nts:
                            key = (sym, q)
                            if key not in called:
                                called.add(key)
                                order.append(key)
                                changed = True
                            nxt |= ends[key]
                        else:
                            nxt.add(steps[q][sym][0])
                    cur = nxt
                    if not cur:
                        break
                if not cur <= acc:
                    acc |= cur
                    changed = True

    def piece(sym, p, q):
        if sym in nts:
            return ((p, sym, q),)
        return steps[p][sym][1]

    prods = []
    for (x, p) in order:
        for q in ends[(x, p)]:
            for rhs in rules[x]:
                if not rhs:
                    if q == p:
                        prods.append(Production((p, x, q), ()))
                elif len(rhs) == 1:
                    s = rhs[0]
                    if (s in nts and q in ends[(s, p)]) or (s not in nts and steps[p][s][0] == q):
                        prods.append(Production((p, x, q), piece(s, p, q)))
                else:
                    a, b = rhs
                    mids = ends[(a, p)] if a in nts else {steps[p][a][0]}
                    for r in mids:
                        ok = q in ends[(b, r)] if b in nts else steps[r][b][0] == q
                        if ok:
                            prods.append(Production((p, x, q), piece(a, p, r) + piece(b, r, q)))
    start = ("#image",)
    for f, tail in machine.final_output.items():
        if f in ends[(bg.start, machine.start)]:
            prods.append(Production(start, ((machine.start, bg.start, f),) + tuple(tail)))
    nonterminals = {lhs for lhs, _ in prods} | {start}
    for _, rhs in prods:
        for s in rhs:
            if isinstance(s, tuple):
                nonterminals.add(s)
    out = Grammar(out_alphabet, frozenset(nonterminals), start, tuple(dict.fromkeys(prods)))
    return compact(reduce_grammar(out))


def _empty_grammar(alphabet: OrderedAlphabet) -> Grammar:
    return Grammar(alphabet, frozenset([0]), 0, ())


def intersect_regular(g: Grammar, dfa: DFA, form: Sequence | None = None) -> Grammar:
    """Grammar for ``L(form) ∩ L(dfa)``."""
    return transducer_image(g, dfa.as_transducer(), g.alphabet, form)


def is_contained(g: Grammar, dfa: DFA, form: Sequence | None = None) -> bool:
    """``L(form) ⊆ L(dfa)``."""
    return is_empty(intersect_regular(g, dfa.complement(), form))


def left_quotient(g: Grammar, p: Sequence, form: Sequence | None = None) -> Grammar:
    """Grammar for ``{y : p y in L(form)}``."""
    p = tuple(p)
    n = len(p)
    dead = n + 1
    steps = []
    for i in range(n):
        steps.append({c: ((i + 1, ()) if c == p[i] else (dead, ())) for c in g.alphabet})
    steps.append({c: (n, (c,)) for c in g.alphabet})
    steps.append({c: (dead, ()) for c in g.alphabet})
    machine = Transducer(g.alphabet, steps, 0, {n: ()})
    return transducer_image(g, machine, g.alphabet, form)


def reverse(g: Grammar, form: Sequence | None = None) -> Grammar:
    g = _prepared(g, form)
    prods = [Production(lhs, tuple(reversed(rhs))) for lhs, rhs in g.productions]
    return compact(Grammar(g.alphabet, g.nonterminals, g.start, tuple(prods)))


def leading_power_counter(v: Sequence, alphabet: OrderedAlphabet) -> Transducer:
    """Maps ``x`` to ``a^n`` for the largest ``n`` with ``v^n`` a prefix of ``x``."""
    v = tuple(v)
    n = len(v)
    off = n
    steps = []
    for j in range(n):
        row = {}
        for c in alphabet:
            if c == v[j]:
                row[c] = ((j + 1) % n, ("a",) if j + 1 == n else ())
            else:
                row[c] = (off, ())
        steps.append(row)
    steps.append({c: (off, ()) for c in alphabet})
    return Transducer(alphabet, steps, 0, {q: () for q in range(n + 1)})


def leading_power_stripper(v: Sequence, alphabet: OrderedAlphabet) -> Transducer:
    """Deletes the maximal leading block ``v^k`` and copies the rest."""
    v = tuple(v)
    n = len(v)
    copy = n
    steps = []
    for j in range(n):
        row = {}
        for c in alphabet:
            if c == v[j]:
                row[c] = ((j + 1) % n, ())
            else:
                row[c] = (copy, v[:j] + (c,))
        steps.append(row)
    steps.append({c: (copy, (c,)) for c in alphabet})
    final = {j: v[:j] for j in range(n)}
    final[copy] = ()
    return Transducer(alphabet, steps, 0, final)


def strip_leading_power(g: Grammar, v: Sequence, form: Sequence | None = None) -> Grammar:
    """Unary grammar for ``{a^n : x in L(form), n = max{k : v^k prefix of x}}``."""
    if not v:
        raise ValueError("v must be nonempty")
    return transducer_image(g, leading_power_counter(v, g.alphabet), UNARY, form)


def strip_trailing_power(g: Grammar, v: Sequence, form: Sequence | None = None) -> Grammar:
    """Grammar for the words of ``L(form)`` with their maximal trailing ``v^k`` removed."""
    if not v:
        raise ValueError("v must be nonempty")
    rev = reverse(g, form)
    stripper = leading_power_stripper(tuple(reversed(tuple(v))), g.alphabet)
    return reverse(transducer_image(rev, stripper, g.alphabet))


# --------------------------------------------------------------------------
# grammar combinators


def _rename(g: Grammar, tag) -> tuple:
    mapping = {x: (tag, x) for x in g.nonterminals}
    prods = [
        Production(mapping[lhs], tuple(mapping.get(s, s) for s in rhs))
        for lhs, rhs in g.productions
    ]
    return mapping, prods


def _merge_alphabets(*gs: Grammar) -> OrderedAlphabet:
    first = gs[0].alphabet
    for g in gs[1:]:
        if g.alphabet != first:
            raise ValueError("grammars must share the same alphabet")
    return first


def concat_grammar(*parts) -> Grammar:
    """Grammar for the concatenation of the parts (grammars or words)."""
    grammars = [p for p in parts if isinstance(p, Grammar)]
    alphabet = _merge_alphabets(*grammars)
    prods: list = []
    form: list = []
    nts: set = set()
    for i, part in enumerate(parts):
        if isinstance(part, Grammar):
            mapping, ps = _rename(part, i)
            prods += ps
            nts |= set(mapping.values())
            form.append(mapping[part.start])
        else:
            form.extend(part)
    start = ("#concat",)
    prods.append(Production(start, tuple(form)))
    return compact(Grammar(alphabet, frozenset(nts | {start}), start, tuple(prods)))


def union_grammar(*grammars: Grammar) -> Grammar:
    alphabet = _merge_alphabets(*grammars)
    prods: list = []
    nts: set = set()
    start = ("#union",)
    for i, g in enumerate(grammars):
        mapping, ps = _rename(g, i)
        prods += ps
        nts |= set(mapping.values())
        prods.append(Production(start, (mapping[g.start],)))
    return compact(Grammar(alphabet, frozenset(nts | {start}), start, tuple(prods)))


# --------------------------------------------------------------------------
# incremental Earley recognition of viable prefixes


class PrefixRecognizer:
    """Earley recognizer that answers "is this a prefix of some member?".

    Nullable symbols are handled by advancing over them at prediction time,
    so no completion ever has to look back into the current column.
    """

    def __init__(self, g: Grammar, form: Sequence | None = None):
        g = _prepared(g, form)
        self.grammar = g
        self.rules = g.rules
        self.nullable = nullable_symbols(g)
        self.columns: list = []
        self.prefix: list = []
        if g.productions:
            seeds = [(g.start, rhs, 0, 0) for rhs in self.rules[g.start]]
            self.columns.append(self._close(seeds, 0))
        else:
            self.columns.append(({}, set()))

    def _close(self, seeds: Iterable, k: int):
        items: set = set()
        waiting: dict = defaultdict(list)
        agenda = []
        nts = self.grammar.nonterminals

        def add(item):
            if item not in items:
                items.add(item)
                agenda.append(item)

        for it in seeds:
            add(it)
        while agenda:
            item = agenda.pop()
            lhs, rhs, dot, origin = item
            if dot < len(rhs):
                sym = rhs[dot]
                if sym in nts:
                    waiting[sym].append(item)
                    for r in self.rules[sym]:
                        add((sym, r, 0, k))
                    if sym in self.nullable:
                        add((lhs, rhs, dot + 1, origin))
            else:
                if origin == k:
                    parents = list(waiting.get(lhs, ()))
                else:
                    parents = self.columns[origin][0].get(lhs, ())
                for (plhs, prhs, pdot, porig) in parents:
                    add((plhs, prhs, pdot + 1, porig))
        return dict(waiting), items

    def peek(self, letter):
        """Column after reading ``letter``; empty when the prefix is not viable."""
        k = len(self.columns)
        waiting, items = self.columns[-1]
        seeds = [
            (lhs, rhs, dot + 1, origin)
            for (lhs, rhs, dot, origin) in items
            if dot < len(rhs) and rhs[dot] == letter
        ]
        if not seeds:
            return None
        return self._close(seeds, k)

    def push(self, letter, column=None) -> bool:
        column = column if column is not None else self.peek(letter)
        if column is None:
            return False
        self.columns.append(column)
        self.prefix.append(letter)
        return True

    def viable(self) -> bool:
        return bool(self.columns[-1][1])

    def accepts(self) -> bool:
        start = self.grammar.start
        return any(
            lhs == start and dot == len(rhs) and origin == 0
            for (lhs, rhs, dot, origin) in self.columns[-1][1]
        )

    def extends(self) -> bool:
        """Whether some member has the current prefix as a proper prefix."""
        return any(self.peek(c) is not None for c in self.grammar.alphabet)


def is_viable_prefix(g: Grammar, word: Sequence, form: Sequence | None = None) -> bool:
    rec = PrefixRecognizer(g, form)
    for c in word:
        if not rec.push(c):
            return False
    return rec.viable()


def member(g: Grammar, word: Sequence, form: Sequence | None = None) -> bool:
    rec = PrefixRecognizer(g, form)
    for c in word:
        if not rec.push(c):
            return False
    return rec.accepts()
