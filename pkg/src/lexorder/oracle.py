"""Brute-force cross-checks and the shipped grammar corpus.

Everything here works from enumerated words or the Earley recognizer, never
from the transducer constructions that the decision procedures use.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from importlib import resources
from typing import NamedTuple, Sequence

from . import cfl
from .automata import DFA
from .grammar import Grammar, OrderedAlphabet, Production, parse_grammar
from .limits import (
    LimitSet,
    Max,
    Min,
    compute_inf,
    compute_sup,
    describe_extremum,
    is_limit,
    language_limits,
    product_limits,
)
from .omega import UPWord, WordOrder, compare_word_upword
from .order_type import (
    Kind,
    OMEGA,
    NEG_OMEGA,
    Fin,
    OrderType,
    Verdict,
    analyze,
    is_iso,
    normalize_sum,
    _interval,
)

DEFINITION_SLACK = 6


# --------------------------------------------------------------------------
# limits by definition


def _extends_by_search(g: Grammar, prefix: tuple, form=None) -> bool:
    rec = cfl.PrefixRecognizer(g, form)
    for c in prefix:
        if not rec.push(c):
            return False
    return rec.extends()


def check_limit_by_definition(g: Grammar, w: UPWord, depth: int = 12,
                              slack: int = DEFINITION_SLACK, form=None) -> bool:
    """Every prefix of ``w`` up to ``depth`` is a proper prefix of a member.

    Members are enumerated up to ``depth + slack``; a prefix whose witness is
    longer than that is settled by Earley viable-prefix search instead.
    """
    if depth > 16:
        raise ValueError("depth must be at most 16")
    try:
        words = cfl.enumerate_words(g, form, depth + slack)
    except cfl.CapExceeded:
        words = []
    for k in range(depth + 1):
        p = w.prefix(k)
        if any(len(x) > k and x[:k] == p for x in words):
            continue
        if not _extends_by_search(g, p, form):
            return False
    return True


# --------------------------------------------------------------------------
# segment structure


@dataclass
class Report:
    ok: bool = True
    failures: list = field(default_factory=list)
    lines: list = field(default_factory=list)

    def fail(self, message: str) -> None:
        self.ok = False
        self.failures.append(message)
        self.lines.append("FAIL " + message)

    def passed(self, message: str) -> None:
        self.lines.append("ok   " + message)

    def merge(self, other: "Report") -> None:
        self.ok = self.ok and other.ok
        self.failures.extend(other.failures)
        self.lines.extend(other.lines)


def _segment_grammars(g: Grammar, verdict: Verdict) -> list:
    """Each segment of a rank-at-most-one verdict as a grammar over ``g``."""
    nonempty = cfl.intersect_regular(g, _nonempty_words(g))
    out = []
    for seg in verdict.segments:
        dfa = _interval(g.alphabet, seg.lower, seg.upper)
        out.append(nonempty if dfa is None else cfl.intersect_regular(nonempty, dfa))
    return out


def _nonempty_words(g: Grammar):
    return DFA(g.alphabet, [{c: 1 for c in g.alphabet}, {c: 1 for c in g.alphabet}], 0, {1})


def _side(x: tuple, w: UPWord, alphabet) -> str:
    return "above" if compare_word_upword(x, w, alphabet) is WordOrder.GREATER else "below"


def check_segment_monotonicity(g: Grammar, verdict: Verdict, max_len: int = 14) -> Report:
    """Within each half-segment, neighbour counts stop changing.

    Below a limit every member keeps a fixed number of predecessors once
    words of length ``2|x| + |period| + 2`` are included; above a limit the
    same holds for successors.  The window is a heuristic: successors of
    ``a^k c`` in ``{a^n c b^m : m <= n}`` reach length ``2k + 1``.
    """
    report = Report()
    if not verdict.rank_le_1:
        report.fail("verdict is not rank at most one")
        return report
    key = g.alphabet.key
    for seg, lang in zip(verdict.segments, _segment_grammars(g, verdict)):
        w = seg.limit
        words = cfl.enumerate_words(lang, max_len=max_len)
        for side in ("below", "above"):
            part = [x for x in words if _side(x, w, g.alphabet) == side]
            if not part:
                continue
            for x in part:
                start = 2 * len(x) + len(w.v) + 2
                if start > max_len:
                    continue
                counts = set()
                for n in range(start, max_len + 1):
                    if side == "below":
                        counts.add(sum(1 for y in part if len(y) <= n and key(y) < key(x)))
                    else:
                        counts.add(sum(1 for y in part if len(y) <= n and key(y) > key(x)))
                if len(counts) > 1:
                    report.fail(f"segment {w}: neighbour count of {x} {side} the limit "
                                f"changes with length: {sorted(counts)}")
                    return report
        report.passed(f"segment {w} ({seg.order_type}) stable up to length {max_len}")
    return report


def check_counts(g: Grammar, verdict: Verdict, max_len: int = 10) -> Report:
    """Word counts per length agree with the split into segments."""
    report = Report()
    if not verdict.segments:
        size = verdict.order_type.size if verdict.rank_le_1 else None
        got = len(cfl.enumerate_words(g, max_len=max_len))
        longest = cfl.longest_word_length(g) if not cfl.is_empty(g) else 0
        if size is None or (got != size if longest <= max_len else got > size):
            report.fail(f"{got} words up to length {max_len}, order type {verdict.order_type}")
        else:
            report.passed(f"finite language of {size} words")
        return report
    has_eps = cfl.member(g, ())
    segs = _segment_grammars(g, verdict)
    for n in range(max_len + 1):
        total = len(cfl.enumerate_words(g, max_len=n))
        parts = sum(len(cfl.enumerate_words(s, max_len=n)) for s in segs)
        if total != parts + has_eps:
            report.fail(f"length {n}: {total} words but segments give {parts + has_eps}")
            return report
    # finite halves never hold more words than their declared size
    for seg, lang in zip(verdict.segments, segs):
        words = cfl.enumerate_words(lang, max_len=max_len)
        for side, term in (("below", seg.below), ("above", seg.above)):
            if term is None or term.kind is not Kind.FIN:
                continue
            n = sum(1 for x in words if _side(x, seg.limit, g.alphabet) == side)
            if n > term.k:
                report.fail(f"segment {seg.limit}: {n} words {side}, type says {term.k}")
                return report
    report.passed(f"counts agree up to length {max_len}")
    return report


# --------------------------------------------------------------------------
# corpus


class CorpusEntry(NamedTuple):
    name: str
    text: str
    verdict: str
    expectation: str
    provenance: str

    @property
    def grammar(self) -> Grammar:
        return parse_grammar(self.text)

    @property
    def expected_type(self) -> OrderType | None:
        if self.verdict != "rank_le_1":
            return None
        return parse_order_type(self.expectation)


def parse_order_type(text: str) -> OrderType:
    """Inverse of ``str(OrderType)``: ``"-w + 3 + w"``; ``"0"`` is empty."""
    text = text.strip()
    if text == "0":
        return OrderType()
    terms = []
    for part in text.split("+"):
        part = part.strip()
        if part == "w":
            terms.append(OMEGA)
        elif part == "-w":
            terms.append(NEG_OMEGA)
        else:
            terms.append(Fin(int(part)))
    return normalize_sum(terms)


def load_corpus() -> list:
    root = resources.files("lexorder") / "corpus"
    entries = []
    for line in (root / "MANIFEST.tsv").read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        name, filename, verdict, expectation, provenance = line.split("\t")
        text = (root / filename).read_text()
        entries.append(CorpusEntry(name, text, verdict, expectation, provenance))
    return entries


def check_verdict(g: Grammar, verdict: Verdict, depth: int = 12, max_len: int = 10) -> Report:
    """Brute-force checks of a verdict: limits by definition plus the segment checks."""
    report = Report()
    if not verdict.rank_le_1:
        return report
    for w in verdict.limits:
        if not check_limit_by_definition(g, w, depth):
            report.fail(f"{w} fails the limit definition")
    for sub in (check_counts(g, verdict, max_len), check_segment_monotonicity(g, verdict)):
        report.merge(sub)
    return report


def check_grammar(g: Grammar, depth: int = 12, max_len: int = 10) -> Report:
    """Oracle checks for one grammar, including its supremum and infimum."""
    verdict = analyze(g)
    report = check_verdict(g, verdict, depth, max_len)
    if not cfl.is_empty(g):
        for upper, fn in ((True, compute_sup), (False, compute_inf)):
            result = fn(g)
            if check_extremum(g, result, upper):
                report.passed(describe_extremum(result))
            else:
                report.fail(f"{describe_extremum(result)} fails enumeration")
    summary = str(verdict.order_type) if verdict.rank_le_1 else verdict.reason.value
    report.passed(f"verdict {verdict.to_json()['verdict']} {summary}")
    return report


def check_entry(entry: CorpusEntry, depth: int = 12, max_len: int = 10) -> Report:
    report = Report()
    g = entry.grammar
    v = analyze(g)
    got = v.to_json()
    if got["verdict"] != entry.verdict:
        report.fail(f"{entry.name}: verdict {got['verdict']}, expected {entry.verdict}")
        return report
    if v.rank_le_1:
        expected = entry.expected_type
        if not is_iso(v.order_type, expected) or v.order_type != expected:
            report.fail(f"{entry.name}: order type {v.order_type}, expected {expected}")
            return report
        for line in check_verdict(g, v, depth, max_len).failures:
            report.fail(f"{entry.name}: {line}")
    elif got["reason"] != entry.expectation:
        report.fail(f"{entry.name}: reason {got['reason']}, expected {entry.expectation}")
    if report.ok:
        summary = v.order_type if v.rank_le_1 else got["reason"]
        report.passed(f"{entry.name}: {got['verdict']} {summary}")
    return report


# --------------------------------------------------------------------------
# random grammars and limit laws


def random_grammar(rng: random.Random, letters: Sequence = ("a", "b"), max_nts: int = 3,
                   max_rhs: int = 3, cap: int = 20_000) -> Grammar:
    """A small random grammar with a nonempty language, biased toward right-linear rules."""
    alphabet = OrderedAlphabet(tuple(letters))
    while True:
        nts = ["S", "A", "B"][: rng.randint(1, max_nts)]
        prods = []
        for x in nts:
            for _ in range(rng.randint(1, 3)):
                n = rng.randint(0, max_rhs)
                if rng.random() < 0.7:
                    rhs = [rng.choice(letters) for _ in range(max(n - 1, 0))]
                    if n and rng.random() < 0.7:
                        rhs.append(rng.choice(nts))
                    elif n:
                        rhs.append(rng.choice(letters))
                else:
                    rhs = [rng.choice(list(letters) + nts) for _ in range(n)]
                prods.append((x, tuple(rhs)))
        g = Grammar.build(alphabet, "S", prods, nts)
        if cfl.is_empty(g):
            continue
        try:
            cfl.enumerate_words(g, max_len=8, cap=cap)
        except cfl.CapExceeded:
            continue
        return g


def random_word(rng: random.Random, letters: Sequence = ("a", "b"), max_len: int = 2) -> tuple:
    return tuple(rng.choice(letters) for _ in range(rng.randint(0, max_len)))


def _renamed(g: Grammar, tag: str) -> tuple:
    mapping = {x: (tag, x) for x in g.nonterminals}
    prods = [Production(mapping[l], tuple(mapping.get(s, s) for s in r)) for l, r in g.productions]
    return mapping, prods


def product_grammar(k: Grammar, l: Grammar) -> tuple:
    """Grammar for ``L(k) L(l)`` and the nonterminal standing for ``L(k)``."""
    mk, pk = _renamed(k, "K")
    ml, pl = _renamed(l, "L")
    start = ("KL",)
    prods = pk + pl + [Production(start, (mk[k.start], ml[l.start]))]
    nts = frozenset(mk.values()) | frozenset(ml.values()) | {start}
    return Grammar(k.alphabet, nts, start, tuple(prods)), mk[k.start]


def union_of(k: Grammar, l: Grammar) -> Grammar:
    mk, pk = _renamed(k, "K")
    ml, pl = _renamed(l, "L")
    start = ("K|L",)
    prods = pk + pl + [Production(start, (mk[k.start],)), Production(start, (ml[l.start],))]
    nts = frozenset(mk.values()) | frozenset(ml.values()) | {start}
    return Grammar(k.alphabet, nts, start, tuple(prods))


def wrap(g: Grammar, u: tuple, v: tuple) -> Grammar:
    """Grammar for ``u L(g) v``."""
    m, p = _renamed(g, "G")
    start = ("uGv",)
    prods = p + [Production(start, tuple(u) + (m[g.start],) + tuple(v))]
    return Grammar(g.alphabet, frozenset(m.values()) | {start}, start, tuple(prods))


class LawCheck(NamedTuple):
    law: str
    applicable: bool
    ok: bool
    detail: str
    limits: tuple  # every (grammar, limit) pair reported while checking


def _finite(*sets: LimitSet) -> bool:
    return all(not s.is_infinite for s in sets)


def check_union_law(k: Grammar, l: Grammar) -> LawCheck:
    lk, ll = language_limits(k), language_limits(l)
    both = union_of(k, l)
    lu = language_limits(both)
    reported = _reported((k, lk), (l, ll), (both, lu))
    if not _finite(lk, ll, lu):
        ok = lu.is_infinite == (lk.is_infinite or ll.is_infinite)
        return LawCheck("union", False, ok, "infinite side", reported)
    ok = lu.members == lk.members | ll.members
    return LawCheck("union", True, ok, f"{lu.describe()} vs {lk.describe()} + {ll.describe()}",
                    reported)


def check_product_law(k: Grammar, l: Grammar) -> LawCheck:
    lk, ll = language_limits(k), language_limits(l)
    prod, k_sym = product_grammar(k, l)
    direct = language_limits(prod)
    reported = _reported((k, lk), (l, ll), (prod, direct))
    if not _finite(lk, ll):
        return LawCheck("product", False, direct.is_infinite, "infinite factor", reported)
    composed = product_limits(prod, lk, (k_sym,), ll)
    if not _finite(direct, composed):
        ok = direct.is_infinite == composed.is_infinite
        return LawCheck("product", False, ok, "infinite product", reported)
    ok = direct.members == composed.members
    return LawCheck("product", True, ok, f"{direct.describe()} vs {composed.describe()}",
                    reported)


def check_shift_law(g: Grammar, u: tuple, v: tuple) -> LawCheck:
    lg = language_limits(g)
    wrapped = wrap(g, u, v)
    lw = language_limits(wrapped)
    reported = _reported((g, lg), (wrapped, lw))
    if not _finite(lg, lw):
        return LawCheck("shift", False, lg.is_infinite == lw.is_infinite, "infinite", reported)
    shifted = {w.shifted(u) for w in lg}
    return LawCheck("shift", True, lw.members == shifted,
                    f"{lw.describe()} vs shifted {lg.describe()}", reported)


def _reported(*pairs) -> tuple:
    return tuple((g, w) for g, lims in pairs if not lims.is_infinite for w in lims)


def random_law_checks(seed: int, pairs: int = 200) -> list:
    rng = random.Random(seed)
    out = []
    for _ in range(pairs):
        k, l = random_grammar(rng), random_grammar(rng)
        out.append(check_union_law(k, l))
        out.append(check_product_law(k, l))
        out.append(check_shift_law(k, random_word(rng), random_word(rng)))
    return out


def check_extremum(g: Grammar, result, upper: bool, slack: int = 4) -> bool:
    """A Max/Min result is a member and extremal among short enumerated members."""
    if isinstance(result, (Max, Min)):
        m = result.word
        if not cfl.member(g, m):
            return False
        key = g.alphabet.key
        words = cfl.enumerate_words(g, max_len=len(m) + slack)
        return all((key(x) <= key(m)) if upper else (key(x) >= key(m)) for x in words)
    w = result.w
    if not is_limit(g, w):
        return False
    words = cfl.enumerate_words(g, max_len=8)
    for x in words:
        order = compare_word_upword(x, w, g.alphabet)
        if upper and order is WordOrder.GREATER:
            return False
        if not upper and order is not WordOrder.GREATER:
            return False
    return True


def run_corpus(seed: int = 0, pairs: int = 30, depth: int = 12) -> Report:
    """Corpus expectations plus randomized limit laws; deterministic per seed."""
    report = Report()
    for entry in sorted(load_corpus(), key=lambda e: e.name):
        report.merge(check_entry(entry, depth))
    counts = {"union": 0, "product": 0, "shift": 0}
    for check in random_law_checks(seed, pairs):
        if not check.ok:
            report.fail(f"{check.law} law: {check.detail}")
        counts[check.law] += check.applicable
        for g, w in check.limits:
            if not check_limit_by_definition(g, w, depth):
                report.fail(f"{w} is reported but fails the limit definition")
    report.passed("random laws (seed %d, %d pairs): %s" % (
        seed, pairs, ", ".join(f"{k} {v} finite cases" for k, v in counts.items())))
    return report
