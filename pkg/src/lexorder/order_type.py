"""Order types built from 1, omega and -omega, and the rank-at-most-one analysis."""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from . import cfl
from .grammar import EmptyLanguage, Grammar
from .limits import (
    INFINITE,
    NO_LIMITS,
    InternalInvariantViolation,
    LimitSet,
    compute_pump_words,
    finite_limits,
    is_limit,
)
from .normalform import FiniteLanguage, normalize
from .omega import (
    UPWord,
    WordOrder,
    above_language,
    at_least_word,
    below_language,
    below_word,
    compare_word_upword,
    separator,
    sort_upwords,
)


class Kind(enum.Enum):
    FIN = "fin"
    OMEGA = "omega"
    NEG_OMEGA = "neg_omega"


class Term(NamedTuple):
    kind: Kind
    k: int = 0

    def __str__(self) -> str:
        if self.kind is Kind.FIN:
            return str(self.k)
        return "w" if self.kind is Kind.OMEGA else "-w"


def Fin(k: int) -> Term:
    if k <= 0:
        raise ValueError("finite terms must be positive")
    return Term(Kind.FIN, k)


OMEGA = Term(Kind.OMEGA)
NEG_OMEGA = Term(Kind.NEG_OMEGA)


@dataclass(frozen=True)
class OrderType:
    terms: tuple = ()

    def __str__(self) -> str:
        return " + ".join(map(str, self.terms)) if self.terms else "0"

    def __add__(self, other: "OrderType") -> "OrderType":
        return normalize_sum(self.terms + other.terms)

    def to_json(self) -> list:
        return [{"fin": t.k} if t.kind is Kind.FIN else t.kind.value for t in self.terms]

    @classmethod
    def from_json(cls, data: Iterable) -> "OrderType":
        terms = []
        for item in data:
            if isinstance(item, dict):
                terms.append(Fin(int(item["fin"])))
            else:
                terms.append(Term(Kind(item)))
        return cls(tuple(terms))

    @property
    def is_finite(self) -> bool:
        return all(t.kind is Kind.FIN for t in self.terms)

    @property
    def size(self) -> int | None:
        return sum(t.k for t in self.terms) if self.is_finite else None


def normalize_sum(terms: Iterable[Term]) -> OrderType:
    """Merge adjacent finite terms and absorb ``k + w`` into ``w``.

    ``-w + k`` is left alone: the trailing finite block keeps its
    representation even though the sum is isomorphic to ``-w``.
    """
    out: list = []
    for t in terms:
        if t.kind is Kind.FIN and t.k <= 0:
            continue
        if out and out[-1].kind is Kind.FIN:
            if t.kind is Kind.FIN:
                out[-1] = Fin(out[-1].k + t.k)
                continue
            if t.kind is Kind.OMEGA:
                out[-1] = OMEGA
                continue
        out.append(t)
    return OrderType(tuple(out))


def reduced(t: OrderType) -> OrderType:
    """Fully reduced form: additionally ``-w + k`` becomes ``-w``."""
    out: list = []
    for term in normalize_sum(t.terms).terms:
        if term.kind is Kind.FIN and out and out[-1].kind is Kind.NEG_OMEGA:
            continue
        if term.kind is Kind.OMEGA and out and out[-1].kind is Kind.FIN:
            out[-1] = OMEGA
            continue
        out.append(term)
    return OrderType(tuple(out))


def is_iso(t1: OrderType, t2: OrderType) -> bool:
    """Isomorphism of two sums of 1, w and -w."""
    return reduced(t1).terms == reduced(t2).terms


def has_min(t: OrderType) -> bool:
    return bool(t.terms) and t.terms[0].kind is not Kind.NEG_OMEGA


def has_max(t: OrderType) -> bool:
    return bool(t.terms) and t.terms[-1].kind is not Kind.OMEGA


def left_finite(t: OrderType) -> bool:
    """Every element has finitely many predecessors."""
    return all(term.kind is not Kind.NEG_OMEGA for term in t.terms) and all(
        term.kind is Kind.FIN for term in t.terms[:-1])


def right_finite(t: OrderType) -> bool:
    """Every element has finitely many successors."""
    return all(term.kind is not Kind.OMEGA for term in t.terms) and all(
        term.kind is Kind.FIN for term in t.terms[1:])


def pretty(t: OrderType) -> str:
    r = reduced(t)
    if r.terms == (NEG_OMEGA, OMEGA):
        return "zeta"
    return str(r)


# --------------------------------------------------------------------------
# verdicts


class Reason(enum.Enum):
    INFINITELY_MANY_LIMITS = "infinitely_many_limits"
    NOT_SCATTERED = "not_scattered"


@dataclass(frozen=True)
class Segment:
    limit: UPWord
    lower: tuple | None  # segment is at least this word (None: unbounded)
    upper: tuple | None  # segment is below this word
    below: Term | None  # type of the members below the limit, None if there are none
    above: Term | None

    @property
    def order_type(self) -> OrderType:
        return normalize_sum(t for t in (self.below, self.above) if t is not None)


@dataclass
class Verdict:
    order_type: OrderType | None
    reason: Reason | None
    limits: LimitSet
    diagnostics: list = field(default_factory=list)
    segments: list = field(default_factory=list)
    alphabet: object = None

    @property
    def rank_le_1(self) -> bool:
        return self.order_type is not None

    def to_json(self) -> dict:
        if self.limits.is_infinite or self.alphabet is None:
            limits = []
        else:
            limits = [str(w) for w in sort_upwords(self.limits, self.alphabet)]
        return {
            "verdict": "rank_le_1" if self.rank_le_1 else "not_rank_le_1",
            "order_type": self.order_type.to_json() if self.rank_le_1 else None,
            "pretty": str(self.order_type) if self.rank_le_1 else None,
            "limits": limits,
            "reason": None if self.reason is None else self.reason.value,
            "diagnostics": list(self.diagnostics),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


def _half_type(lang: Grammar, infinite: Term) -> Term | None:
    if cfl.is_empty(lang):
        return None
    if cfl.is_finite(lang):
        return Fin(len(cfl.finite_words(lang)))
    return infinite


def segment_halves(seg: Grammar, w: UPWord) -> tuple:
    """Types of the members below and above ``w``, for a language whose only limit is ``w``."""
    alphabet = seg.alphabet
    below = _half_type(cfl.intersect_regular(seg, below_language(w, alphabet)), OMEGA)
    above = _half_type(cfl.intersect_regular(seg, above_language(w, alphabet)), NEG_OMEGA)
    return below, above


def segment_type(seg: Grammar, w: UPWord) -> OrderType:
    """Order type of a language whose only limit is ``w``."""
    return normalize_sum(t for t in segment_halves(seg, w) if t is not None)


def segment_bounds(limits: Sequence[UPWord]) -> list:
    """``(lower, upper)`` finite-word bounds isolating each sorted limit."""
    seps = [separator(a, b) for a, b in zip(limits, limits[1:])]
    lowers = [None] + seps
    uppers = seps + [None]
    return list(zip(lowers, uppers))


def _interval(alphabet, lower, upper):
    dfa = None
    if lower is not None:
        dfa = at_least_word(lower, alphabet)
    if upper is not None:
        b = below_word(upper, alphabet)
        dfa = b if dfa is None else dfa.intersect(b)
    return dfa


def analyze(g: Grammar) -> Verdict:
    """Decide whether ``L(g)`` is scattered of rank at most one and compute its order type."""
    alphabet = g.alphabet
    try:
        ng = normalize(g)
    except EmptyLanguage:
        return Verdict(OrderType(), None, NO_LIMITS, ["empty language"], alphabet=alphabet)
    if isinstance(ng, FiniteLanguage):
        n = len(ng.words)
        return Verdict(normalize_sum([Fin(n)]), None, NO_LIMITS,
                       [f"finite language with {n} words"], alphabet=alphabet)

    diagnostics = []
    pump = compute_pump_words(ng)
    for v in pump.violations:
        diagnostics.append(v.describe())
    if pump.violations:
        return Verdict(None, Reason.NOT_SCATTERED, INFINITE, diagnostics, alphabet=alphabet)

    result = finite_limits(ng, pump)
    diagnostics.extend(result.trace)
    if result.start.is_infinite:
        if result.not_scattered:
            diagnostics.extend(result.not_scattered)
            return Verdict(None, Reason.NOT_SCATTERED, INFINITE, diagnostics, alphabet=alphabet)
        return Verdict(None, Reason.INFINITELY_MANY_LIMITS, INFINITE, diagnostics,
                       alphabet=alphabet)

    limits = sort_upwords(result.start, alphabet)
    if not limits:
        raise InternalInvariantViolation("infinite language reported without limits")
    diagnostics.append("limits: " + ", ".join(map(str, limits)))
    work = ng.grammar
    segments = []
    terms = []
    for w, (lower, upper) in zip(limits, segment_bounds(limits)):
        _check_bounds(w, lower, upper, alphabet)
        dfa = _interval(alphabet, lower, upper)
        seg = work if dfa is None else cfl.intersect_regular(work, dfa)
        _check_segment(seg, w, limits)
        below, above = segment_halves(seg, w)
        segment = Segment(w, lower, upper, below, above)
        segments.append(segment)
        t = segment.order_type
        terms.extend(t.terms)
        diagnostics.append(f"segment around {w}: {t}")
    if ng.had_epsilon:
        terms.insert(0, Fin(1))
    order_type = normalize_sum(terms)
    if reduced(order_type) != order_type:
        diagnostics.append(f"isomorphic to {reduced(order_type)}")
    if pretty(order_type) == "zeta":
        diagnostics.append("order type is zeta")
    return Verdict(order_type, None, result.start, diagnostics, segments, alphabet)


def _check_bounds(w: UPWord, lower, upper, alphabet) -> None:
    if lower is not None and compare_word_upword(lower, w, alphabet) is WordOrder.GREATER:
        raise InternalInvariantViolation(f"separator {lower} is not below {w}")
    if upper is not None and compare_word_upword(upper, w, alphabet) is not WordOrder.GREATER:
        raise InternalInvariantViolation(f"separator {upper} is not above {w}")


def _check_segment(seg: Grammar, w: UPWord, limits: Sequence[UPWord]) -> None:
    for other in limits:
        if is_limit(seg, other) != (other == w):
            raise InternalInvariantViolation(
                f"segment for {w} has wrong limit status for {other}")
