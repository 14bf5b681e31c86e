from lexorder.grammar import parse_grammar
from lexorder.omega import parse_upword


def G(rules: str, alphabet: str = "a < b", start: str = "S"):
    return parse_grammar(f"alphabet: {alphabet}\nstart: {start}\n{rules}\n")


def W(text: str) -> tuple:
    return tuple(text)


def U(text: str):
    return parse_upword(text)


A_STAR_B = "S -> a S | b"
BB_STAR_A = "S -> b b S | a"
ZETA = "S -> A | b C\nA -> a A | b\nC -> a C | eps"
DENSE = "S -> a a S | b b S | a b"
ANBM = "S -> a S | B\nB -> b B | b"
