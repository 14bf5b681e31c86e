import random

import pytest

from lexorder import oracle
from lexorder.order_type import analyze
from util import A_STAR_B, ANBM, BB_STAR_A, G, U, ZETA


@pytest.mark.parametrize("rules, word, depth, expected", [
    (A_STAR_B, "(a)^w", 8, True),
    (A_STAR_B, "(b)^w", 2, False),
    (BB_STAR_A, "(b)^w", 6, True),
    ("S -> a S b | a b", "(a)^w", 12, True),
])
def test_limit_by_definition(rules, word, depth, expected):
    assert oracle.check_limit_by_definition(G(rules), U(word), depth) is expected


@pytest.mark.parametrize("rules", [A_STAR_B, BB_STAR_A, ZETA])
def test_monotonicity_examples(rules):
    g = G(rules)
    report = oracle.check_segment_monotonicity(g, analyze(g), 10)
    assert report.ok, report.failures


def test_monotonicity_requires_rank_one():
    g = G(ANBM)
    assert not oracle.check_segment_monotonicity(g, analyze(g)).ok


def test_counts_detect_wrong_verdict():
    g = G(ZETA)
    v = analyze(g)
    assert oracle.check_counts(g, v).ok
    v.segments.pop()
    assert not oracle.check_counts(g, v).ok


def test_parse_order_type():
    assert str(oracle.parse_order_type("-w + 3 + w")) == "-w + w"
    assert str(oracle.parse_order_type("w + 3 + -w")) == "w + 3 + -w"
    assert str(oracle.parse_order_type("0")) == "0"
    assert str(oracle.parse_order_type("2 + w")) == "w"


def test_corpus_loads_with_provenance():
    entries = {e.name: e for e in oracle.load_corpus()}
    assert entries["a-star-b"].expectation == "-w"
    assert entries["rank2-like"].verdict == "not_rank_le_1"
    assert {e.provenance for e in entries.values()} <= {"published", "derived", "trivial"}


@pytest.mark.parametrize("entry", oracle.load_corpus(), ids=lambda e: e.name)
def test_corpus_entry(entry):
    report = oracle.check_entry(entry)
    assert report.ok, report.failures


def test_laws_on_known_pairs():
    k, l = G(A_STAR_B), G(BB_STAR_A)
    for check in (oracle.check_union_law(k, l), oracle.check_product_law(G("S -> a b | b"), k),
                  oracle.check_shift_law(k, ("b",), ("a",))):
        assert check.applicable and check.ok, check.detail
    infinite = oracle.check_product_law(k, l)
    assert not infinite.applicable and infinite.ok


def test_random_grammar_deterministic():
    a = oracle.random_grammar(random.Random(5))
    b = oracle.random_grammar(random.Random(5))
    assert a.productions == b.productions


def test_run_corpus_seed_zero():
    report = oracle.run_corpus(0, pairs=20)
    assert report.ok, report.failures
