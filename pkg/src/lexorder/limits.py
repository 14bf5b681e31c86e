"""Limits and extrema of context-free languages under the lexicographic order.

A limit of ``L`` is an omega-word every finite prefix of which is a proper
prefix of some member of ``L``.  All limits computed here are ultimately
periodic and represented by :class:`~lexorder.omega.UPWord`.

Functions take the grammar first and an optional sentential form ``form``
last; without ``form`` the language of the start symbol is meant.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence, Union

from . import cfl
from .grammar import EmptyLanguage, Grammar, format_word, reduce_grammar
from .normalform import FiniteLanguage, NormalizedGrammar, normalize
from .omega import (
    UPWord,
    above_language,
    below_language,
    canonicalize,
    power_language,
    prefix_automaton,
    primitive_root,
    sort_upwords,
    above_word,
)


class BudgetExceeded(RuntimeError):
    """No verified supremum/infimum was found within the prefix budget."""


class InternalInvariantViolation(AssertionError):
    """A computed result failed its independent re-verification."""


class Max(NamedTuple):
    word: tuple


class Min(NamedTuple):
    word: tuple


class LimitSup(NamedTuple):
    w: UPWord


class LimitInf(NamedTuple):
    w: UPWord


SupResult = Union[Max, LimitSup, Min, LimitInf]


def describe_extremum(result: SupResult) -> str:
    """``"max ab"``, ``"limit_sup b(a)^w"`` and so on."""
    if isinstance(result, (Max, Min)):
        word = format_word(result.word) if result.word else "eps"
        return f"{type(result).__name__.lower()} {word}"
    kind = "limit_sup" if isinstance(result, LimitSup) else "limit_inf"
    return f"{kind} {result.w}"


@dataclass(frozen=True)
class LimitSet:
    """A finite set of canonical limits, or the marker for infinitely many."""

    members: frozenset | None

    @classmethod
    def of(cls, words: Iterable[UPWord]) -> "LimitSet":
        return cls(frozenset(words))

    @property
    def is_infinite(self) -> bool:
        return self.members is None

    def __iter__(self):
        if self.members is None:
            raise ValueError("infinitely many limits")
        return iter(self.members)

    def __len__(self) -> int:
        if self.members is None:
            raise ValueError("infinitely many limits")
        return len(self.members)

    def union(self, other: "LimitSet") -> "LimitSet":
        if self.is_infinite or other.is_infinite:
            return INFINITE
        return LimitSet(self.members | other.members)

    def sorted(self, alphabet) -> list:
        return sort_upwords(self, alphabet)

    def describe(self, alphabet=None) -> str:
        if self.is_infinite:
            return "infinitely many"
        words = sorted(self.members, key=str) if alphabet is None else self.sorted(alphabet)
        return "{" + ", ".join(map(str, words)) + "}"


INFINITE = LimitSet(None)
NO_LIMITS = LimitSet(frozenset())


def _plain(g) -> Grammar:
    return g.grammar if isinstance(g, NormalizedGrammar) else g


def default_budget(g) -> int:
    return 4 * _plain(g).size + 16


# --------------------------------------------------------------------------
# limit membership


def is_limit(g, w: UPWord, form: Sequence | None = None) -> bool:
    """Whether ``w`` is a limit of ``L(form)``.

    ``u v^w`` is a limit iff the quotient by ``u`` contains words starting
    with arbitrarily many copies of ``v``.
    """
    g = _plain(g)
    quotient = cfl.left_quotient(g, w.u, form)
    return not cfl.is_finite(cfl.strip_leading_power(quotient, w.v))


# --------------------------------------------------------------------------
# suprema and infima


def _candidates(prefix: tuple, max_size: int):
    """Ultimately periodic words consistent with all of ``prefix``, smallest first."""
    n = len(prefix)
    seen = set()
    for total in range(1, max_size + 1):
        for lu in range(total):
            lv = total - lu
            if lu + lv > n:
                continue
            if any(prefix[i] != prefix[i + lv] for i in range(lu, n - lv)):
                continue
            v = prefix[lu:lu + lv]
            if primitive_root(v) != v:
                continue
            w = canonicalize(prefix[:lu], v)
            if w not in seen:
                seen.add(w)
                yield w


def _extremum(g, form, budget, upper: bool) -> SupResult:
    g = _plain(g)
    if cfl.is_empty(g, form):
        raise EmptyLanguage("supremum of the empty language")
    budget = default_budget(g) if budget is None else budget
    letters = list(g.alphabet)
    if upper:
        letters.reverse()
    rec = cfl.PrefixRecognizer(g, form)
    for _ in range(budget):
        if not upper and rec.accepts():
            word = tuple(rec.prefix)
            return Min(word)
        for c in letters:
            column = rec.peek(c)
            if column is not None:
                rec.push(c, column)
                break
        else:
            word = tuple(rec.prefix)
            if upper:
                if not rec.accepts() or not cfl.is_empty(
                        cfl.intersect_regular(g, above_word(word, g.alphabet), form)):
                    raise InternalInvariantViolation(f"greedy maximum {word} failed verification")
                return Max(word)
            raise InternalInvariantViolation("greedy infimum reached a dead end")
    prefix = tuple(rec.prefix)
    for w in _candidates(prefix, budget // 2):
        if upper:
            bound = above_language(w, g.alphabet)
        else:
            bound = below_language(w, g.alphabet)
        if cfl.is_empty(cfl.intersect_regular(g, bound, form)) and is_limit(g, w, form):
            return LimitSup(w) if upper else LimitInf(w)
    raise BudgetExceeded(f"no verified {'supremum' if upper else 'infimum'} within budget {budget}")


def compute_sup(g, form: Sequence | None = None, budget: int | None = None) -> SupResult:
    """``Max(m)`` if ``L(form)`` has a largest member, else ``LimitSup(w)``."""
    return _extremum(g, form, budget, upper=True)


def compute_inf(g, form: Sequence | None = None, budget: int | None = None) -> SupResult:
    """``Min(m)`` if ``L(form)`` has a least member, else ``LimitInf(w)``."""
    return _extremum(g, form, budget, upper=False)


def is_prefix_chain(g, form: Sequence | None = None, candidate: UPWord | None = None,
                    budget: int | None = None) -> UPWord | None:
    """An omega-word ``w`` with every member of the infinite ``L(form)`` a prefix of ``w``.

    The supremum is the only possible ``w``; ``candidate`` skips computing it.
    """
    g = _plain(g)
    if candidate is None:
        sup = compute_sup(g, form, budget)
        if isinstance(sup, Max):
            return None
        candidate = sup.w
    if cfl.is_contained(g, prefix_automaton(candidate, g.alphabet), form):
        return candidate
    return None


# --------------------------------------------------------------------------
# pump words


class PumpViolation(NamedTuple):
    source: object
    target: object
    shortest: tuple  # shortest self-return word
    witness: tuple  # a self-return word outside the expected language

    def describe(self) -> str:
        pair = f"{self.source}" if self.source == self.target else f"{self.source}->{self.target}"
        return (f"pump words of {pair} are not powers of one word: "
                f"'{format_word(self.shortest)}' and '{format_word(self.witness)}'")


@dataclass
class PumpWords:
    u: dict = field(default_factory=dict)  # X -> u_X
    uxy: dict = field(default_factory=dict)  # (X, Y) -> u_{X,Y}
    violations: list = field(default_factory=list)

    def violated(self, x) -> bool:
        return any(v.source == x or v.target == x for v in self.violations)


def self_return_grammar(g: Grammar, component: Iterable, source, target) -> Grammar:
    """Grammar for ``{u : source =>+ u target alpha}`` inside one component."""
    comp = set(component)
    entry = ("#ret_in",)
    prods = list(g.productions)
    new_nts = {entry}

    def ret(y):
        return ("#ret", y)

    for y in comp:
        new_nts.add(ret(y))
        for rhs in g.rules[y]:
            for i, s in enumerate(rhs):
                if s in comp:
                    prods.append((ret(y), rhs[:i] + (ret(s),)))
                    if y == source:
                        prods.append((entry, rhs[:i] + (ret(s),)))
    prods.append((ret(target), ()))
    out = Grammar.build(g.alphabet, entry, prods, g.nonterminals | new_nts)
    return reduce_grammar(out)


def _outside_witness(lang: Grammar, dfa) -> tuple:
    return cfl.shortest_word(cfl.intersect_regular(lang, dfa.complement()))


def compute_pump_words(ng: NormalizedGrammar) -> PumpWords:
    g = ng.grammar
    comps = ng.components
    out = PumpWords()
    for cid, members in comps.members.items():
        if not any(comps.recursive[x] for x in members):
            continue
        for x in members:
            lang = self_return_grammar(g, members, x, x)
            shortest = cfl.shortest_word(lang)
            ux = primitive_root(shortest)
            expected = power_language(ux, ux, g.alphabet)
            if cfl.is_contained(lang, expected):
                out.u[x] = ux
                out.uxy[(x, x)] = ()
            else:
                out.violations.append(
                    PumpViolation(x, x, shortest, _outside_witness(lang, expected)))
        for x in members:
            for y in members:
                if x == y or y not in out.u:
                    continue
                lang = self_return_grammar(g, members, x, y)
                shortest = cfl.shortest_word(lang)
                uy = out.u[y]
                found = None
                for cut in range(len(shortest) + 1):
                    if (len(shortest) - cut) % len(uy):
                        continue
                    p = shortest[:cut]
                    if cfl.is_contained(lang, power_language(p, uy, g.alphabet)):
                        found = p
                        break
                if found is None:
                    expected = power_language(shortest[:len(shortest) % len(uy)], uy, g.alphabet)
                    out.violations.append(
                        PumpViolation(x, y, shortest, _outside_witness(lang, expected)))
                else:
                    out.uxy[(x, y)] = found
    return out


# --------------------------------------------------------------------------
# limits of concatenations


def kvomega_set(g, v: Sequence, form: Sequence | None = None) -> LimitSet:
    """The set ``L(form) v^w`` if finite, else INFINITE."""
    g = _plain(g)
    stripped = cfl.strip_trailing_power(g, v, form)
    if not cfl.is_finite(stripped):
        return INFINITE
    return LimitSet.of(canonicalize(u, v) for u in cfl.finite_words(stripped))


def product_limits(g, lim_k: LimitSet, k_form: Sequence, lim_l: LimitSet) -> LimitSet:
    """Limits of ``K L`` from those of ``K = L(k_form)`` and ``L``."""
    if lim_k.is_infinite or lim_l.is_infinite:
        return INFINITE
    k_form = tuple(k_form)
    g = _plain(g)
    letters_only = all(s not in g.nonterminals for s in k_form)
    result = set(lim_k)
    for w in lim_l:
        if letters_only:
            result.add(w.shifted(k_form))
            continue
        part = kvomega_set(g, w.v, k_form + w.u)
        if part.is_infinite:
            return INFINITE
        result |= part.members
    return LimitSet.of(result)


def sentential_limits(g, form: Sequence, memo: dict) -> LimitSet:
    """Limits of ``L(form)`` given the limit sets of its nonterminals."""
    g = _plain(g)
    acc = NO_LIMITS
    for sym in reversed(tuple(form)):
        if sym in g.nonterminals:
            acc = product_limits(g, memo[sym], (sym,), acc)
        else:
            acc = product_limits(g, NO_LIMITS, (sym,), acc)
        if acc.is_infinite:
            return INFINITE
    return acc


class LimitAnalysis(NamedTuple):
    per_symbol: dict
    start: LimitSet
    not_scattered: list  # human-readable evidence
    trace: list


def _component_limits(ng, pump, cid, memo, evidence, trace) -> dict:
    g = ng.grammar
    comps = ng.components
    members = comps.members[cid]
    infinite = {x: INFINITE for x in members}

    bad = [v for v in pump.violations if v.source in members]
    if bad:
        evidence.extend(v.describe() for v in bad)
        return infinite

    # (1) a lower nonterminal with several limits lifts them into this component
    for y in g.nonterminals:
        if comps.component_of[y] in comps.below[cid] and len(memo[y].members or ()) != 1:
            trace.append(f"{members[0]}: lower nonterminal {y} has "
                         f"{memo[y].describe(g.alphabet)} limits")
            return infinite

    result = {}
    rest = []
    for x in members:
        w = canonicalize((), pump.u[x])
        # (2) prefix chains have their supremum as unique limit
        if is_prefix_chain(g, (x,), candidate=w) is not None:
            trace.append(f"{x}: prefix chain of {w}")
            result[x] = LimitSet.of([w])
        else:
            rest.append(x)
    if not rest:
        return result

    in_comp = set(members)
    for x1 in members:
        for rhs in g.rules[x1]:
            idx = [i for i, s in enumerate(rhs) if s in in_comp]
            if not idx:
                continue
            last = idx[-1]
            # (3) a nonterminal after a recursive call yields two distinct limits
            if any(s in g.nonterminals for s in rhs[idx[0] + 1:]):
                trace.append(f"{x1}: nonterminal follows a recursive call")
                return {**infinite, **result}
            # (4) the words before the call must fit the pump words
            x2 = rhs[last]
            alpha = rhs[:last]
            expected = power_language(pump.uxy[(x1, x2)], pump.u[x2], g.alphabet)
            if not cfl.is_contained(g, expected, alpha):
                witness = cfl.shortest_word(
                    cfl.intersect_regular(g, expected.complement(), alpha))
                evidence.append(f"{x1}: prefix {witness} of a call to {x2} "
                                f"does not fit the pump words")
                return {**infinite, **result}

    # (5) escaping alternatives must share the pump limit
    for x1 in members:
        esc = NO_LIMITS
        for rhs in comps.escaping[x1]:
            esc = esc.union(sentential_limits(g, rhs, memo))
            if esc.is_infinite:
                break
        target = canonicalize((), pump.u[x1])
        if esc.is_infinite or any(w != target for w in esc):
            trace.append(f"{x1}: escaping alternatives have limits "
                         f"{esc.describe(g.alphabet)}, pump limit {target}")
            return {**infinite, **result}
    for x in rest:
        result[x] = LimitSet.of([canonicalize((), pump.u[x])])
    return result


def finite_limits(ng: NormalizedGrammar, pump: PumpWords | None = None) -> LimitAnalysis:
    """Limit sets of every nonterminal and of the start symbol."""
    if pump is None:
        pump = compute_pump_words(ng)
    g = ng.grammar
    comps = ng.components
    memo: dict = {}
    evidence: list = []
    trace: list = []
    for cid in comps.topological():
        members = comps.members[cid]
        if not any(comps.recursive[x] for x in members):
            (x,) = members
            acc = NO_LIMITS
            for rhs in g.rules[x]:
                acc = acc.union(sentential_limits(g, rhs, memo))
                if acc.is_infinite:
                    break
            memo[x] = acc
        else:
            memo.update(_component_limits(ng, pump, cid, memo, evidence, trace))
    for x, lims in memo.items():
        if lims.is_infinite:
            continue
        for w in lims:
            if not is_limit(g, w, (x,)):
                raise InternalInvariantViolation(f"{w} reported for {x} but is not a limit")
    return LimitAnalysis(memo, memo[g.start], evidence, trace)


def language_limits(g: Grammar, form: Sequence | None = None) -> LimitSet:
    """``blim(L(form))`` as a finite set, or INFINITE.

    Languages failing the pump-word test count as having infinitely many limits.
    """
    try:
        ng = normalize(g.with_start(form))
    except EmptyLanguage:
        return NO_LIMITS
    if isinstance(ng, FiniteLanguage):
        return NO_LIMITS
    return finite_limits(ng).start
