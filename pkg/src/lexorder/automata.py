"""Deterministic automata and sequential transducers over an ordered alphabet."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .grammar import OrderedAlphabet


class DFA:
    """Complete deterministic automaton with integer states ``0..n-1``."""

    __slots__ = ("alphabet", "delta", "start", "finals")

    def __init__(self, alphabet: OrderedAlphabet, delta: Sequence[dict], start: int, finals):
        self.alphabet = alphabet
        self.delta = list(delta)
        self.start = start
        self.finals = frozenset(finals)
        for row in self.delta:
            if set(row) != set(alphabet.letters):
                raise ValueError("DFA must be complete over its alphabet")

    @property
    def n_states(self) -> int:
        return len(self.delta)

    def run(self, word: Sequence, state: int | None = None) -> int:
        q = self.start if state is None else state
        for c in word:
            q = self.delta[q][c]
        return q

    def accepts(self, word: Sequence) -> bool:
        return self.run(word) in self.finals

    def complement(self) -> "DFA":
        return DFA(
            self.alphabet,
            self.delta,
            self.start,
            set(range(self.n_states)) - self.finals,
        )

    def intersect(self, other: "DFA") -> "DFA":
        """Product automaton, restricted to reachable pairs."""
        return self._product(other, lambda a, b: a and b)

    def union(self, other: "DFA") -> "DFA":
        return self._product(other, lambda a, b: a or b)

    def _product(self, other: "DFA", accept) -> "DFA":
        index = {(self.start, other.start): 0}
        order = [(self.start, other.start)]
        delta = []
        i = 0
        while i < len(order):
            p, q = order[i]
            row = {}
            for c in self.alphabet:
                pair = (self.delta[p][c], other.delta[q][c])
                if pair not in index:
                    index[pair] = len(order)
                    order.append(pair)
                row[c] = index[pair]
            delta.append(row)
            i += 1
        finals = {
            k for k, (p, q) in enumerate(order) if accept(p in self.finals, q in other.finals)
        }
        return DFA(self.alphabet, delta, 0, finals)

    def as_transducer(self) -> "Transducer":
        steps = [{c: (q, (c,)) for c, q in row.items()} for row in self.delta]
        return Transducer(self.alphabet, steps, self.start, {f: () for f in self.finals})

    @classmethod
    def universal(cls, alphabet: OrderedAlphabet) -> "DFA":
        return cls(alphabet, [{c: 0 for c in alphabet}], 0, {0})


@dataclass
class Transducer:
    """Deterministic sequential transducer with end-of-input output.

    ``steps[p][c] = (q, out)``: reading ``c`` in state ``p`` moves to ``q``
    and emits the word ``out``.  Inputs ending in a state of ``final_output``
    are accepted and emit that state's trailing word.
    """

    alphabet: OrderedAlphabet
    steps: list
    start: int
    final_output: dict

    @property
    def n_states(self) -> int:
        return len(self.steps)

    def translate(self, word: Sequence):
        """Output for ``word``, or None when the input is rejected."""
        q = self.start
        out: list = []
        for c in word:
            q, emitted = self.steps[q][c]
            out.extend(emitted)
        if q not in self.final_output:
            return None
        out.extend(self.final_output[q])
        return tuple(out)
