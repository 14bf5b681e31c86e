"""Ultimately periodic omega-words ``u v^w`` and the regular languages they cut out."""
from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from math import lcm
from typing import Sequence

from .automata import DFA
from .grammar import OrderedAlphabet, format_word


def primitive_root(word: Sequence) -> tuple:
    """Shortest ``r`` with ``word == r^k``; uses the KMP failure function."""
    word = tuple(word)
    n = len(word)
    if n == 0:
        raise ValueError("empty word has no primitive root")
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and word[i] != word[k]:
            k = fail[k - 1]
        if word[i] == word[k]:
            k += 1
        fail[i] = k
    period = n - fail[-1]
    return word[:period] if n % period == 0 else word


@dataclass(frozen=True)
class UPWord:
    """The omega-word ``u v v v ...``; build through :func:`canonicalize`."""

    u: tuple
    v: tuple

    def __post_init__(self):
        if not self.v:
            raise ValueError("period must be nonempty")

    def letter(self, i: int):
        if i < len(self.u):
            return self.u[i]
        return self.v[(i - len(self.u)) % len(self.v)]

    def prefix(self, n: int) -> tuple:
        return tuple(self.letter(i) for i in range(n))

    def state_of(self, i: int) -> int:
        """Position ``i`` folded onto ``0..|u|+|v|-1``."""
        if i < len(self.u):
            return i
        return len(self.u) + (i - len(self.u)) % len(self.v)

    @property
    def n_positions(self) -> int:
        return len(self.u) + len(self.v)

    def shifted(self, prefix: Sequence) -> "UPWord":
        return canonicalize(tuple(prefix) + self.u, self.v)

    def __str__(self) -> str:
        return f"{format_word(self.u)}({format_word(self.v)})^w"


def canonicalize(u: Sequence, v: Sequence) -> UPWord:
    """Primitive period and shortest preperiod; equal words get equal forms."""
    u = tuple(u)
    v = primitive_root(v)
    while u and u[-1] == v[-1]:
        u = u[:-1]
        v = (v[-1],) + v[:-1]
    return UPWord(u, v)


def parse_upword(text: str) -> UPWord:
    """Inverse of ``str(UPWord)`` for one-character letters: ``ab(ba)^w``."""
    text = text.strip()
    if not text.endswith(")^w") or "(" not in text:
        raise ValueError(f"not an omega-word: {text!r}")
    u, v = text[:-3].split("(", 1)
    return canonicalize(tuple(u), tuple(v))


class Order(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


class WordOrder(enum.Enum):
    LESS_STRICT = "less_strict"
    LESS_PREFIX = "less_prefix"
    GREATER = "greater"


def compare_upwords(w1: UPWord, w2: UPWord, alphabet: OrderedAlphabet) -> Order:
    bound = len(w1.u) + len(w2.u) + 2 * lcm(len(w1.v), len(w2.v))
    rank = alphabet.rank
    for i in range(bound):
        a, b = w1.letter(i), w2.letter(i)
        if a != b:
            return Order.LESS if rank[a] < rank[b] else Order.GREATER
    return Order.EQUAL


def first_mismatch(w1: UPWord, w2: UPWord) -> int | None:
    bound = len(w1.u) + len(w2.u) + 2 * lcm(len(w1.v), len(w2.v))
    for i in range(bound):
        if w1.letter(i) != w2.letter(i):
            return i
    return None


def compare_word_upword(x: Sequence, w: UPWord, alphabet: OrderedAlphabet) -> WordOrder:
    rank = alphabet.rank
    for i, c in enumerate(x):
        d = w.letter(i)
        if c != d:
            return WordOrder.LESS_STRICT if rank[c] < rank[d] else WordOrder.GREATER
    return WordOrder.LESS_PREFIX


def sort_upwords(words, alphabet: OrderedAlphabet) -> list:
    """Sort by the lexicographic order on omega-words."""

    def cmp(a, b):
        r = compare_upwords(a, b, alphabet)
        return -1 if r is Order.LESS else (1 if r is Order.GREATER else 0)

    return sorted(words, key=functools.cmp_to_key(cmp))


def separator(w1: UPWord, w2: UPWord) -> tuple:
    """A finite word ``s`` with ``w1 < s < w2`` (requires ``w1 < w2``)."""
    m = first_mismatch(w1, w2)
    if m is None:
        raise ValueError("equal words have no separator")
    return w2.prefix(m + 1)


# --------------------------------------------------------------------------
# acceptors


def prefix_automaton(w: UPWord, alphabet: OrderedAlphabet) -> DFA:
    """States ``0..|u|+|v|-1`` track the position on ``w``; the last state
    is the absorbing sink.  Every non-sink state accepts."""
    n = w.n_positions
    sink = n
    delta = []
    for i in range(n):
        nxt = w.state_of(i + 1)
        want = w.letter(i)
        delta.append({c: (nxt if c == want else sink) for c in alphabet})
    delta.append({c: sink for c in alphabet})
    return DFA(alphabet, delta, 0, range(n))


def below_language(w: UPWord, alphabet: OrderedAlphabet) -> DFA:
    """Accepts ``{x : x < w}``: prefixes of ``w`` and words that leave it downward."""
    n = w.n_positions
    low, high = n, n + 1
    rank = alphabet.rank
    delta = []
    for i in range(n):
        want = w.letter(i)
        nxt = w.state_of(i + 1)
        row = {}
        for c in alphabet:
            if c == want:
                row[c] = nxt
            else:
                row[c] = low if rank[c] < rank[want] else high
        delta.append(row)
    delta.append({c: low for c in alphabet})
    delta.append({c: high for c in alphabet})
    return DFA(alphabet, delta, 0, set(range(n)) | {low})


def above_language(w: UPWord, alphabet: OrderedAlphabet) -> DFA:
    """``{x : x > w}``; no finite word equals an omega-word."""
    return below_language(w, alphabet).complement()


def below_word(s: Sequence, alphabet: OrderedAlphabet) -> DFA:
    """Accepts ``{x : x < s}`` for the finite word ``s``."""
    s = tuple(s)
    n = len(s)
    low, high = n + 1, n + 2
    rank = alphabet.rank
    delta = []
    for i in range(n):
        delta.append({
            c: (i + 1 if c == s[i] else (low if rank[c] < rank[s[i]] else high))
            for c in alphabet
        })
    delta.append({c: high for c in alphabet})  # state n: x == s
    delta.append({c: low for c in alphabet})
    delta.append({c: high for c in alphabet})
    return DFA(alphabet, delta, 0, set(range(n)) | {low})


def at_least_word(s: Sequence, alphabet: OrderedAlphabet) -> DFA:
    return below_word(s, alphabet).complement()


def above_word(s: Sequence, alphabet: OrderedAlphabet) -> DFA:
    """Accepts ``{x : x > s}``."""
    s = tuple(s)
    return below_word(s, alphabet).union(exact_word(s, alphabet)).complement()


def exact_word(s: Sequence, alphabet: OrderedAlphabet) -> DFA:
    s = tuple(s)
    n = len(s)
    dead = n + 1
    delta = [{c: (i + 1 if c == s[i] else dead) for c in alphabet} for i in range(n)]
    delta.append({c: dead for c in alphabet})
    delta.append({c: dead for c in alphabet})
    return DFA(alphabet, delta, 0, {n})


def power_language(prefix: Sequence, period: Sequence, alphabet: OrderedAlphabet) -> DFA:
    """Accepts ``prefix period*``; use ``prefix + period`` for ``prefix period+``."""
    p, v = tuple(prefix), tuple(period)
    if not v:
        raise ValueError("period must be nonempty")
    # 0..|p|-1 read the prefix, |p|..|p|+|v|-1 cycle through the period
    n = len(p) + len(v)
    dead = n
    delta = []
    for i in range(n):
        if i < len(p):
            want, nxt = p[i], i + 1
        else:
            j = i - len(p)
            want, nxt = v[j], len(p) + (j + 1) % len(v)
        delta.append({c: (nxt if c == want else dead) for c in alphabet})
    delta.append({c: dead for c in alphabet})
    return DFA(alphabet, delta, 0, {len(p)})
